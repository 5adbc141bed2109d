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

#include "seedguard/ast_util.hpp"

namespace seedguard {

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  switch (a.kind) {
    case ExprKind::IntLit:
    case ExprKind::BoolLit:
      if (a.value != b.value) return false;
      break;
    case ExprKind::Unary:
      if (a.unop != b.unop) return false;
      break;
    case ExprKind::Binary:
      if (a.binop != b.binop) return false;
      break;
    case ExprKind::NewArray:
      if (!(a.alloc_type == b.alloc_type)) return false;
      break;
    default:
      break;
  }
  if (a.name != b.name) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!structurally_equal(a.kids[i], b.kids[i])) return false;
  return true;
}

bool structurally_equal(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!structurally_equal(a[i], b[i])) return false;
  return true;
}

bool structurally_equal(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.name != b.name || a.has_else != b.has_else ||
      a.exprs.size() != b.exprs.size())
    return false;
  if (a.kind == StmtKind::VarDecl && !(a.decl_type == b.decl_type)) return false;
  for (std::size_t i = 0; i < a.exprs.size(); ++i)
    if (!structurally_equal(a.exprs[i], b.exprs[i])) return false;
  return structurally_equal(a.body, b.body) && structurally_equal(a.alt, b.alt);
}

bool structurally_equal(const MethodDef& a, const MethodDef& b) {
  return a.name == b.name && a.return_type == b.return_type && a.params == b.params &&
         structurally_equal(a.body, b.body);
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.classes.size() != b.classes.size() || a.methods.size() != b.methods.size())
    return false;
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    const auto& x = a.classes[i];
    const auto& y = b.classes[i];
    if (x.name != y.name || x.super != y.super || !(x.fields == y.fields)) return false;
  }
  for (std::size_t i = 0; i < a.methods.size(); ++i)
    if (!structurally_equal(a.methods[i], b.methods[i])) return false;
  return true;
}

std::size_t ast_node_count(const Expr& e) {
  std::size_t n = 1;
  for (const auto& k : e.kids) n += ast_node_count(k);
  return n;
}

std::size_t ast_node_count(const Stmt& s) {
  std::size_t n = 1;
  for (const auto& e : s.exprs) n += ast_node_count(e);
  return n + ast_node_count(s.body) + ast_node_count(s.alt);
}

std::size_t ast_node_count(const std::vector<Stmt>& body) {
  std::size_t n = 0;
  for (const auto& s : body) n += ast_node_count(s);
  return n;
}

std::size_t statement_count(const std::vector<Stmt>& body) {
  std::size_t n = 0;
  for_each_stmt(body, [&](const Stmt&) { ++n; });
  return n;
}

namespace {
void postorder(const Expr& e, std::vector<const Expr*>& out) {
  for (const auto& k : e.kids) postorder(k, out);
  out.push_back(&e);
}
}  // namespace

std::vector<const Expr*> evaluated_exprs(const Stmt& s) {
  std::vector<const Expr*> out;
  switch (s.kind) {
    case StmtKind::Assign: {
      const Expr& lhs = s.exprs[0];
      for (const auto& k : lhs.kids) postorder(k, out);
      postorder(s.exprs[1], out);
      out.push_back(&lhs);
      break;
    }
    case StmtKind::VarDecl:
    case StmtKind::If:
    case StmtKind::While:
    case StmtKind::Return:
    case StmtKind::ExprStmt:
      for (const auto& e : s.exprs) postorder(e, out);
      break;
    default:
      break;
  }
  return out;
}

void for_each_expr(const Expr& e, const std::function<void(const Expr&)>& fn) {
  fn(e);
  for (const auto& k : e.kids) for_each_expr(k, fn);
}

void for_each_stmt(const std::vector<Stmt>& body,
                   const std::function<void(const Stmt&)>& fn) {
  for (const auto& s : body) {
    fn(s);
    for_each_stmt(s.body, fn);
    for_each_stmt(s.alt, fn);
  }
}

void for_each_expr(const std::vector<Stmt>& body,
                   const std::function<void(const Expr&)>& fn) {
  for_each_stmt(body, [&](const Stmt& s) {
    for (const auto& e : s.exprs) for_each_expr(e, fn);
  });
}

void collect_ids(const std::vector<Stmt>& body, std::vector<NodeId>& out) {
  for_each_stmt(body, [&](const Stmt& s) {
    out.push_back(s.id);
    for (const auto& e : s.exprs) for_each_expr(e, [&](const Expr& x) { out.push_back(x.id); });
  });
}

StmtSlot find_stmt(std::vector<Stmt>& body, NodeId id) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i].id == id) return {&body, i};
    if (auto r = find_stmt(body[i].body, id); r.block) return r;
    if (auto r = find_stmt(body[i].alt, id); r.block) return r;
  }
  return {};
}

const Stmt* find_stmt(const std::vector<Stmt>& body, NodeId id) {
  return find_stmt(const_cast<std::vector<Stmt>&>(body), id).get();
}

namespace {
bool has_break(const std::vector<Stmt>& body) {
  // Breaks inside nested loops belong to those loops.
  for (const auto& s : body) {
    if (s.kind == StmtKind::Break) return true;
    if (s.kind == StmtKind::While) continue;
    if (has_break(s.body) || has_break(s.alt)) return true;
  }
  return false;
}

bool stmt_exits(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::Return:
    case StmtKind::Throw: return true;
    case StmtKind::If: return s.has_else && always_exits(s.body) && always_exits(s.alt);
    case StmtKind::TryCatch: return always_exits(s.body) && always_exits(s.alt);
    case StmtKind::Block: return always_exits(s.body);
    case StmtKind::While:
      return s.exprs[0].kind == ExprKind::BoolLit && s.exprs[0].value == 1 &&
             !has_break(s.body);
    default: return false;
  }
}
}  // namespace

bool always_exits(const std::vector<Stmt>& body) {
  for (const auto& s : body)
    if (stmt_exits(s)) return true;
  return false;
}

bool contains_call(const Expr& e) {
  if (e.kind == ExprKind::Call) return true;
  for (const auto& k : e.kids)
    if (contains_call(k)) return true;
  return false;
}

bool may_crash(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Field:
    case ExprKind::Index:
    case ExprKind::Cast:
    case ExprKind::Call:
    case ExprKind::NewArray:
      return true;
    case ExprKind::Binary:
      if (e.binop == BinOp::Div || e.binop == BinOp::Mod) return true;
      break;
    default:
      break;
  }
  for (const auto& k : e.kids)
    if (may_crash(k)) return true;
  return false;
}

bool is_trivial(const Expr& e) {
  return e.kind == ExprKind::Var || e.kind == ExprKind::IntLit ||
         e.kind == ExprKind::BoolLit || e.kind == ExprKind::Null;
}

bool uses_var(const std::vector<Stmt>& body, const std::string& name) {
  bool found = false;
  for_each_expr(body, [&](const Expr& e) {
    if (e.kind == ExprKind::Var && e.name == name) found = true;
  });
  return found;
}

std::vector<int> reachable_methods(const Program& p, int root) {
  std::vector<bool> seen(p.methods.size(), false);
  std::vector<int> work{root};
  seen[root] = true;
  while (!work.empty()) {
    int m = work.back();
    work.pop_back();
    for_each_expr(p.methods[m].body, [&](const Expr& e) {
      if (e.kind == ExprKind::Call && e.method_index >= 0 && !seen[e.method_index]) {
        seen[e.method_index] = true;
        work.push_back(e.method_index);
      }
    });
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace seedguard
