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


#include "seedguard/instrumentor.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "seedguard/ast_util.hpp"
#include "seedguard/frontend.hpp"
#include "seedguard/reducer.hpp"
#include "seedguard/serialize.hpp"

namespace seedguard {

namespace {

void mark(const Stmt& s, OriginKind kind, const CrashReport& crash, NodeId target,
          Provenance& prov) {
  Origin o;
  o.kind = kind;
  o.crash = crash.kind;
  o.target = target;
  if (kind == OriginKind::WrapInserted) o.exception = crash.exception_name;
  prov[s.id] = o;
  for (const auto& e : s.exprs) for_each_expr(e, [&](const Expr& x) { prov[x.id] = o; });
  for_each_stmt(s.body, [&](const Stmt& t) { mark(t, kind, crash, target, prov); });
  for_each_stmt(s.alt, [&](const Stmt& t) { mark(t, kind, crash, target, prov); });
}

bool matches_kind(const Expr& e, CrashKind k) {
  switch (k) {
    case CrashKind::NullDeref: return e.kind == ExprKind::Field || e.kind == ExprKind::Index;
    case CrashKind::IndexOutOfBounds: return e.kind == ExprKind::Index;
    case CrashKind::BadCast: return e.kind == ExprKind::Cast;
    case CrashKind::NegativeArraySize: return e.kind == ExprKind::NewArray;
    case CrashKind::DivByZero:
      return e.kind == ExprKind::Binary && (e.binop == BinOp::Div || e.binop == BinOp::Mod);
    case CrashKind::UserThrown: return false;
  }
  return false;
}

// `if (cond) { return false; }` for one crash site.
Stmt guard_for(Program& p, CrashKind k, const Expr& site) {
  Expr cond;
  switch (k) {
    case CrashKind::NullDeref:
      cond = make::binary(p, BinOp::Eq, clone_fresh(p, site.kids[0]), make::null_lit(p));
      break;
    case CrashKind::IndexOutOfBounds: {
      Expr low = make::binary(p, BinOp::Lt, clone_fresh(p, site.kids[1]), make::int_lit(p, 0));
      Expr high = make::binary(p, BinOp::Ge, clone_fresh(p, site.kids[1]),
                               make::field(p, clone_fresh(p, site.kids[0]), "length"));
      cond = make::binary(p, BinOp::Or, std::move(low), std::move(high));
      break;
    }
    case CrashKind::BadCast:
      cond = make::unary(p, UnOp::Not, make::instance_of(p, clone_fresh(p, site.kids[0]), site.name));
      break;
    case CrashKind::NegativeArraySize:
      cond = make::binary(p, BinOp::Lt, clone_fresh(p, site.kids[0]), make::int_lit(p, 0));
      break;
    case CrashKind::DivByZero:
      cond = make::binary(p, BinOp::Eq, clone_fresh(p, site.kids[1]), make::int_lit(p, 0));
      break;
    case CrashKind::UserThrown:
      throw std::logic_error("no guard template for thrown exceptions");
  }
  return make::if_stmt(p, std::move(cond), {make::ret_bool(p, false)});
}

Expr default_value(Program& p, const Type& t) {
  switch (t.kind) {
    case TypeKind::Int: return make::int_lit(p, 0);
    case TypeKind::Bool: return make::bool_lit(p, false);
    default: return make::null_lit(p);
  }
}

NodeId follow(const PreconditionProgram& pre, NodeId id) {
  for (auto it = pre.relocated.find(id); it != pre.relocated.end(); it = pre.relocated.find(id))
    id = it->second;
  return id;
}

bool already_guarded(const PreconditionProgram& pre, NodeId stmt, const CrashReport& crash) {
  const OriginKind want = crash.in_callee ? OriginKind::WrapInserted : OriginKind::GuardInserted;
  for (const auto& [id, o] : pre.provenance) {
    if (o.kind != want || o.target != stmt || o.crash != crash.kind) continue;
    if (!crash.in_callee || o.exception == crash.exception_name) return true;
  }
  return false;
}

Insertion wrap(PreconditionProgram& pre, StmtSlot slot, const CrashReport& crash) {
  Program& p = pre.program;
  Insertion ins;
  std::vector<Stmt>& block = *slot.block;
  Stmt s = std::move(block[slot.index]);
  const NodeId original = s.id;
  std::vector<Stmt> replacement;
  Stmt inner;
  if (s.kind == StmtKind::VarDecl) {
    // A declaration cannot move into the try body without going out of
    // scope, so it is split into a default-initialized declaration and an
    // assignment inside the try.
    Stmt decl = make::var_decl(p, s.decl_type, s.name, default_value(p, s.decl_type));
    mark(decl, OriginKind::WrapInserted, crash, original, pre.provenance);
    inner = make::assign(p, make::var(p, s.name), std::move(s.exprs[0]));
    // The new assignment node is part of the wrap; the call keeps its
    // original provenance.
    pre.provenance[inner.id] = pre.provenance[inner.exprs[0].id] = Origin{
        OriginKind::WrapInserted, kNoNode, crash.kind, crash.exception_name, original};
    pre.provenance.erase(original);
    pre.relocated[original] = inner.id;
    ins.inserted.push_back(decl.id);
    replacement.push_back(std::move(decl));
  } else {
    inner = std::move(s);
  }
  const NodeId inner_id = inner.id;
  Stmt handler = make::ret_bool(p, false);
  mark(handler, OriginKind::WrapInserted, crash, inner_id, pre.provenance);
  std::vector<Stmt> body;
  body.push_back(std::move(inner));
  Stmt t = make::try_catch(p, std::move(body), crash.exception_name, {});
  t.alt.push_back(std::move(handler));
  Origin o{OriginKind::WrapInserted, kNoNode, crash.kind, crash.exception_name, inner_id};
  pre.provenance[t.id] = o;
  // Re-key any older wrap records so repeated wraps of one call are found.
  if (inner_id != original) {
    for (auto& [id, org] : pre.provenance)
      if (org.target == original) org.target = inner_id;
  }
  ins.inserted.push_back(t.id);
  replacement.push_back(std::move(t));
  ins.guarded_stmt = inner_id;
  block.erase(block.begin() + static_cast<long>(slot.index));
  block.insert(block.begin() + static_cast<long>(slot.index),
               std::make_move_iterator(replacement.begin()),
               std::make_move_iterator(replacement.end()));
  return ins;
}

Insertion guard(PreconditionProgram& pre, StmtSlot slot, const CrashReport& crash) {
  Program& p = pre.program;
  const Stmt& s = *slot.get();
  std::vector<Stmt> guards;
  for (const Expr* e : evaluated_exprs(s))
    if (matches_kind(*e, crash.kind)) guards.push_back(guard_for(p, crash.kind, *e));
  if (guards.empty())
    throw NoMatchingExpression("statement " + std::to_string(s.id) + " has no " +
                               crash_kind_name(crash.kind) + " site");
  Insertion ins;
  ins.guarded_stmt = s.id;
  for (const auto& g : guards) {
    mark(g, OriginKind::GuardInserted, crash, s.id, pre.provenance);
    ins.inserted.push_back(g.id);
  }
  // New checks go in front of older checks for the same statement, so the
  // environment that triggered them reaches them first.
  std::vector<Stmt>& block = *slot.block;
  std::size_t at = slot.index;
  while (at > 0) {
    auto it = pre.provenance.find(block[at - 1].id);
    if (it == pre.provenance.end() || it->second.kind != OriginKind::GuardInserted ||
        it->second.target != s.id)
      break;
    --at;
  }
  block.insert(block.begin() + static_cast<long>(at), std::make_move_iterator(guards.begin()),
               std::make_move_iterator(guards.end()));
  return ins;
}

// Position of the faulting node among the statement's evaluated
// expressions; -1 when unknown.
int fault_position(const PreconditionProgram& pre, const CrashReport& c) {
  if (c.in_callee) return -1;
  const Stmt* s = find_stmt(pre.pre().body, follow(pre, c.loc.node_id));
  if (!s) return -1;
  auto order = evaluated_exprs(*s);
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i]->id == c.fault_node) return static_cast<int>(i);
  return -1;
}

using CrashKey = std::tuple<int, NodeId, bool, std::string>;

CrashKey key_of(const CrashReport& c) {
  return {static_cast<int>(c.kind), c.loc.node_id, c.in_callee, c.exception_name};
}

struct Observed {
  CrashReport crash;
  std::size_t env = 0;  // index into the accumulated environments
  int position = -1;    // earliest fault position seen for this key
};

}  // namespace

Insertion apply_checks(PreconditionProgram& pre, const CrashReport& crash) {
  const NodeId id = follow(pre, crash.loc.node_id);
  StmtSlot slot = find_stmt(pre.pre().body, id);
  if (!slot.block)
    throw std::invalid_argument("crash location " + std::to_string(crash.loc.node_id) +
                                " is not a statement of " + pre.method);
  if (already_guarded(pre, id, crash))
    throw AlreadyGuarded(std::string(crash_kind_name(crash.kind)) + " at statement " +
                         std::to_string(id) + " is already guarded");
  Insertion ins = crash.in_callee ? wrap(pre, slot, crash) : guard(pre, slot, crash);
  resolve(pre.program);
  return ins;
}

PreconditionProgram insert_checks(const PreconditionProgram& pre, const CrashReport& crash) {
  PreconditionProgram out = pre;
  apply_checks(out, crash);
  return out;
}

InferenceResult infer(const Program& program, std::string_view target, const GenPolicy& policy,
                      const InferOptions& opts) {
  policy.validate();
  InferenceResult r;
  r.seed = make_seed(program, target);
  PreconditionProgram cur = r.seed;
  const MethodDef& src = *program.find_method(target);

  for (int round = 0; round < opts.max_rounds; ++round) {
    auto fresh = generate_round(program, src, policy, round);
    r.envs.insert(r.envs.end(), std::make_move_iterator(fresh.begin()),
                  std::make_move_iterator(fresh.end()));
    const int mi = cur.program.method_index(cur.method);
    auto outcomes = replay(cur.program, mi, r.envs, opts.exec, opts.mode);
    r.rounds_used = round + 1;

    std::map<CrashKey, std::size_t> index;
    std::vector<Observed> seen;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (!outcomes[i].crashed()) continue;
      const CrashReport& c = outcomes[i].crash;
      const int pos = fault_position(cur, c);
      auto [it, added] = index.emplace(key_of(c), seen.size());
      if (added) {
        seen.push_back({c, i, pos});
      } else if (pos >= 0 && pos < seen[it->second].position) {
        seen[it->second].env = i;
        seen[it->second].position = pos;
        seen[it->second].crash = c;
      }
    }
    if (seen.empty()) {
      r.converged = true;
      break;
    }
    r.crash_rounds.push_back(round);

    // Group by statement, later statements first, so that no guard from
    // this batch sits in front of a crash site before that site is guarded.
    // Within a statement the latest-evaluated site goes first: each
    // insertion prepends, so the final order follows evaluation order.
    std::vector<NodeId> stmt_order;
    std::map<NodeId, std::vector<std::size_t>> by_stmt;
    for (std::size_t i = 0; i < seen.size(); ++i) {
      NodeId s = seen[i].crash.loc.node_id;
      if (!by_stmt.count(s)) stmt_order.push_back(s);
      by_stmt[s].push_back(i);
    }
    std::map<NodeId, int> preorder;
    for_each_stmt(cur.pre().body, [&](const Stmt& st) {
      preorder.emplace(st.id, static_cast<int>(preorder.size()));
    });
    std::stable_sort(stmt_order.begin(), stmt_order.end(),
                     [&](NodeId a, NodeId b) { return preorder[a] > preorder[b]; });
    SourceMap lines;
    pretty_print(cur.program, &lines);
    for (NodeId s : stmt_order) {
      auto& group = by_stmt[s];
      std::stable_sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
        if (seen[a].crash.in_callee != seen[b].crash.in_callee) return !seen[a].crash.in_callee;
        return seen[a].position > seen[b].position;
      });
      for (std::size_t gi : group) {
        const Observed& ob = seen[gi];
        CheckRecord rec;
        rec.kind = ob.crash.kind;
        rec.in_callee = ob.crash.in_callee;
        rec.exception = ob.crash.exception_name;
        rec.round = round;
        rec.loc.node_id = follow(cur, ob.crash.loc.node_id);
        rec.loc.display_line = lines.line(rec.loc.node_id);
        Insertion ins;
        try {
          ins = apply_checks(cur, ob.crash);
        } catch (const AlreadyGuarded& e) {
          throw NonProgress(std::string("round ") + std::to_string(round) + ": " + e.what());
        }
        rec.inserted = ins.inserted;
        r.checks.push_back(std::move(rec));
        if (opts.observer) opts.observer({round, ob.crash, r.envs[ob.env], cur, ins});
      }
    }
  }

  r.unreduced = cur;
  r.precondition = cur;
  if (!r.converged) return r;
  r.regression = to_regression(r.envs, cur.program, cur.method, opts.exec, opts.mode);
  if (opts.reduce) {
    ReductionConstraint rc{r.regression, opts.exec, opts.mode};
    r.precondition = reduce(cur, rc);
  }
  return r;
}

nlohmann::json result_json(const InferenceResult& r) {
  nlohmann::json j;
  j["target"] = r.seed.target;
  j["precondition_method"] = r.seed.method;
  j["converged"] = r.converged;
  j["rounds_used"] = r.rounds_used;
  j["crash_rounds"] = r.crash_rounds;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"kind", crash_kind_name(c.kind)},
                      {"in_callee", c.in_callee},
                      {"exception", c.exception},
                      {"node_id", c.loc.node_id},
                      {"display_line", c.loc.display_line},
                      {"round", c.round},
                      {"inserted", c.inserted}});
  }
  j["checks"] = checks;
  j["environments"] = r.envs.size();
  j["suite_size"] = r.regression.cases.size();
  j["dropped_budget"] = r.regression.dropped_budget;
  j["seed"] = print_precondition(r.seed);
  j["unreduced"] = print_precondition(r.unreduced);
  j["precondition"] = print_precondition(r.precondition);
  return j;
}

}  // namespace seedguard
