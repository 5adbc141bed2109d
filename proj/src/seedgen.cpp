// Copyright 2026 The Seedguard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "seedguard/seedgen.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "seedguard/ast_util.hpp"
#include "seedguard/frontend.hpp"

namespace seedguard {

namespace {

bool is_literal(const Expr& e) {
  return e.kind == ExprKind::IntLit || e.kind == ExprKind::BoolLit || e.kind == ExprKind::Null;
}

bool is_short_circuit(const Expr& e) {
  return e.kind == ExprKind::Binary && (e.binop == BinOp::And || e.binop == BinOp::Or);
}

// Fresh ids for a copied tree, remembering where each came from.
void renumber(Program& p, Expr& e, Provenance& prov) {
  Origin o;
  o.source = e.id;
  e.id = p.fresh_id();
  prov[e.id] = o;
  for (auto& k : e.kids) renumber(p, k, prov);
}

void renumber(Program& p, std::vector<Stmt>& body, Provenance& prov) {
  for (auto& s : body) {
    Origin o;
    o.source = s.id;
    s.id = p.fresh_id();
    prov[s.id] = o;
    for (auto& e : s.exprs) renumber(p, e, prov);
    renumber(p, s.body, prov);
    renumber(p, s.alt, prov);
  }
}

// ---------------------------------------------------------------------------
// Loop normalization

class LoopPass {
 public:
  LoopPass(Program& p, TempNamer& names) : p_(p), names_(names) {}

  void block(std::vector<Stmt>& b) {
    for (auto& s : b) {
      block(s.body);
      block(s.alt);
      if (s.kind == StmtKind::While && may_crash(s.exprs[0])) rewrite(s);
    }
  }

 private:
  void rewrite(Stmt& loop) {
    const std::string t = names_.next();
    std::vector<Stmt> head = lower(std::move(loop.exprs[0]), t, true);
    head.push_back(make::if_stmt(p_, make::unary(p_, UnOp::Not, make::var(p_, t)), {make::brk(p_)}));
    for (auto& s : loop.body) head.push_back(std::move(s));
    loop.body = std::move(head);
    loop.exprs[0] = make::bool_lit(p_, true);
  }

  // Computes `e` into the boolean `t`. A && or || whose right operand may
  // crash keeps its short-circuit through an explicit if.
  std::vector<Stmt> lower(Expr e, const std::string& t, bool declare) {
    if (is_short_circuit(e) && may_crash(e.kids[1])) {
      const bool conj = e.binop == BinOp::And;
      std::vector<Stmt> out = lower(std::move(e.kids[0]), t, declare);
      std::vector<Stmt> inner = lower(std::move(e.kids[1]), t, false);
      Expr test = conj ? make::var(p_, t) : make::unary(p_, UnOp::Not, make::var(p_, t));
      out.push_back(make::if_stmt(p_, std::move(test), std::move(inner)));
      return out;
    }
    std::vector<Stmt> out;
    if (declare)
      out.push_back(make::var_decl(p_, Type::Bool(), t, std::move(e)));
    else
      out.push_back(make::assign(p_, make::var(p_, t), std::move(e)));
    return out;
  }

  Program& p_;
  TempNamer& names_;
};

// ---------------------------------------------------------------------------
// Call normalization

class CallPass {
 public:
  CallPass(Program& p, TempNamer& names) : p_(p), names_(names) {}

  void block(std::vector<Stmt>& b) {
    std::vector<Stmt> out;
    out.reserve(b.size());
    for (auto& s : b) {
      block(s.body);
      block(s.alt);
      std::vector<Stmt> before;
      switch (s.kind) {
        case StmtKind::VarDecl:
        case StmtKind::ExprStmt:
          at_root(s.exprs[0], before);
          break;
        case StmtKind::Assign:
          assignment(s, before);
          break;
        case StmtKind::Return:
          if (!s.exprs.empty()) flatten(s.exprs[0], before);
          break;
        case StmtKind::If:
          flatten(s.exprs[0], before);
          break;
        default:
          break;
      }
      for (auto& x : before) out.push_back(std::move(x));
      out.push_back(std::move(s));
    }
    b = std::move(out);
  }

 private:
  // Replaces `e` by a temporary holding its value.
  void hoist(Expr& e, std::vector<Stmt>& before) {
    const std::string t = names_.next();
    Type type = e.type;
    Expr v = make::var(p_, t);
    before.push_back(make::var_decl(p_, type, t, std::move(e)));
    e = std::move(v);
  }

  // A call may stay where it is when it is the whole statement; its
  // arguments still move to temporaries.
  void at_root(Expr& e, std::vector<Stmt>& before) {
    if (e.kind == ExprKind::Call)
      arguments(e, before);
    else
      flatten(e, before);
  }

  void arguments(Expr& call, std::vector<Stmt>& before) {
    for (auto& a : call.kids) {
      flatten(a, before);
      if (!is_trivial(a)) hoist(a, before);
    }
  }

  void assignment(Stmt& s, std::vector<Stmt>& before) {
    Expr& lhs = s.exprs[0];
    Expr& rhs = s.exprs[1];
    if (lhs.kind == ExprKind::Var) {
      at_root(rhs, before);
      return;
    }
    if (contains_call(rhs)) {
      // The target's operands are evaluated before the right-hand side.
      for (auto& k : lhs.kids) {
        flatten(k, before);
        if (!is_trivial(k)) hoist(k, before);
      }
      flatten(rhs, before);
    } else {
      operands(lhs.kids, before);
    }
  }

  // Removes every call from `e`, preserving evaluation order.
  void flatten(Expr& e, std::vector<Stmt>& before) {
    if (!contains_call(e)) return;
    if (e.kind == ExprKind::Call) {
      arguments(e, before);
      hoist(e, before);
      return;
    }
    if (is_short_circuit(e) && contains_call(e.kids[1])) {
      const bool conj = e.binop == BinOp::And;
      flatten(e.kids[0], before);
      const std::string t = names_.next();
      before.push_back(make::var_decl(p_, Type::Bool(), t, std::move(e.kids[0])));
      std::vector<Stmt> inner;
      flatten(e.kids[1], inner);
      inner.push_back(make::assign(p_, make::var(p_, t), std::move(e.kids[1])));
      Expr test = conj ? make::var(p_, t) : make::unary(p_, UnOp::Not, make::var(p_, t));
      before.push_back(make::if_stmt(p_, std::move(test), std::move(inner)));
      e = make::var(p_, t);
      return;
    }
    operands(e.kids, before);
  }

  // Operands evaluated before the last call-bearing operand are hoisted
  // too, so the call does not overtake them.
  void operands(std::vector<Expr>& kids, std::vector<Stmt>& before) {
    int last = -1;
    for (std::size_t i = 0; i < kids.size(); ++i)
      if (contains_call(kids[i])) last = static_cast<int>(i);
    for (int i = 0; i <= last; ++i) {
      flatten(kids[i], before);
      if (i < last && !is_trivial(kids[i])) hoist(kids[i], before);
    }
  }

  Program& p_;
  TempNamer& names_;
};

// ---------------------------------------------------------------------------

void strip_block(Program& p, std::vector<Stmt>& b) {
  for (auto& s : b) {
    if (s.kind == StmtKind::Throw) {
      s = make::ret_bool(p, false);
      continue;
    }
    strip_block(p, s.body);
    strip_block(p, s.alt);
  }
}

void booleanize_block(Program& p, std::vector<Stmt>& b) {
  std::vector<Stmt> out;
  out.reserve(b.size());
  for (auto& s : b) {
    if (s.kind == StmtKind::Return) {
      // Literals can neither crash nor have effects, so lifting them would
      // only add noise.
      if (!s.exprs.empty() && !is_literal(s.exprs[0]))
        out.push_back(make::expr_stmt(p, std::move(s.exprs[0])));
      out.push_back(make::ret_bool(p, true));
      continue;
    }
    booleanize_block(p, s.body);
    booleanize_block(p, s.alt);
    out.push_back(std::move(s));
  }
  b = std::move(out);
}

void note_temp(const std::string& n, int& k) {
  if (n.size() < 4 || n.size() > 12 || n.compare(0, 3, "__t") != 0) return;
  if (!std::all_of(n.begin() + 3, n.end(), [](unsigned char c) { return std::isdigit(c); })) return;
  k = std::max(k, std::stoi(n.substr(3)) + 1);
}

}  // namespace

const char* origin_kind_name(OriginKind k) {
  switch (k) {
    case OriginKind::FromSource: return "FromSource";
    case OriginKind::SeedInserted: return "SeedInserted";
    case OriginKind::GuardInserted: return "GuardInserted";
    case OriginKind::WrapInserted: return "WrapInserted";
  }
  return "?";
}

const MethodDef& PreconditionProgram::pre() const {
  const MethodDef* m = program.find_method(method);
  if (!m) throw std::logic_error("precondition method " + method + " is missing");
  return *m;
}

MethodDef& PreconditionProgram::pre() {
  return const_cast<MethodDef&>(static_cast<const PreconditionProgram&>(*this).pre());
}

TempNamer::TempNamer(const MethodDef& m) {
  for (const auto& p : m.params) note_temp(p.name, k_);
  for_each_stmt(m.body, [&](const Stmt& s) {
    if (s.kind == StmtKind::VarDecl) note_temp(s.name, k_);
  });
}

std::string TempNamer::next() { return "__t" + std::to_string(k_++); }

MethodDef normalize_loops(Program& p, const MethodDef& m, TempNamer& names) {
  MethodDef out = m;
  LoopPass(p, names).block(out.body);
  return out;
}

MethodDef normalize_calls(Program& p, const MethodDef& m, TempNamer& names) {
  MethodDef out = m;
  CallPass(p, names).block(out.body);
  return out;
}

MethodDef strip_throws(Program& p, const MethodDef& m) {
  MethodDef out = m;
  strip_block(p, out.body);
  return out;
}

MethodDef booleanize(Program& p, const MethodDef& m) {
  MethodDef out = m;
  booleanize_block(p, out.body);
  if (!always_exits(out.body)) out.body.push_back(make::ret_bool(p, true));
  out.return_type = Type::Bool();
  return out;
}

PreconditionProgram make_seed(const Program& program, std::string_view target) {
  const MethodDef* src = program.find_method(target);
  if (!src) throw ResolveError("unknown target method '" + std::string(target) + "'");

  PreconditionProgram seed;
  seed.target = std::string(target);
  seed.method = seed.target + "_pre";
  if (program.find_method(seed.method))
    throw ResolveError("method " + seed.method + " already exists");
  seed.program = program;
  Program& p = seed.program;

  MethodDef m = *src;
  m.name = seed.method;
  m.id = p.fresh_id();
  seed.provenance[m.id] = Origin{OriginKind::FromSource, src->id, {}, {}, kNoNode};
  renumber(p, m.body, seed.provenance);
  p.methods.push_back(std::move(m));
  resolve(p);

  auto run = [&](auto pass) {
    MethodDef next = pass(p, p.methods.back());
    p.methods.back() = std::move(next);
    resolve(p);
  };
  TempNamer names(p.methods.back());
  run([&](Program& q, const MethodDef& x) { return normalize_loops(q, x, names); });
  run([&](Program& q, const MethodDef& x) { return normalize_calls(q, x, names); });
  // Booleanize first so the false returns replacing throws type-check.
  run([](Program& q, const MethodDef& x) { return booleanize(q, x); });
  run([](Program& q, const MethodDef& x) { return strip_throws(q, x); });

  // Whatever did not come from the source was introduced by the passes.
  Provenance prov;
  const MethodDef& pre = seed.pre();
  prov[pre.id] = seed.provenance[pre.id];
  std::vector<NodeId> ids;
  collect_ids(pre.body, ids);
  for (NodeId id : ids) {
    auto it = seed.provenance.find(id);
    prov[id] = it != seed.provenance.end() ? it->second : Origin{OriginKind::SeedInserted, kNoNode, {}, {}, kNoNode};
  }
  seed.provenance = std::move(prov);
  return seed;
}

std::string print_precondition(const PreconditionProgram& pre) {
  const Program& p = pre.program;
  Program view;
  view.classes = p.classes;
  view.next_id = p.next_id;
  std::vector<int> keep = reachable_methods(p, p.method_index(pre.method));
  for (int i : keep) view.methods.push_back(p.methods[i]);
  return pretty_print(view);
}

nlohmann::json provenance_json(const PreconditionProgram& pre) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& [id, o] : pre.provenance) {
    nlohmann::json j;
    j["node_id"] = id;
    j["origin"] = origin_kind_name(o.kind);
    if (o.kind == OriginKind::FromSource) j["source_id"] = o.source;
    if (o.kind == OriginKind::GuardInserted || o.kind == OriginKind::WrapInserted) {
      j["crash"] = crash_kind_name(o.crash);
      j["guarded_stmt"] = o.target;
      if (o.kind == OriginKind::WrapInserted) j["exception"] = o.exception;
    }
    nodes.push_back(std::move(j));
  }
  return {{"target", pre.target}, {"method", pre.method}, {"nodes", nodes}};
}

}  // namespace seedguard
