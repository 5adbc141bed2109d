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

#include "seedguard/ast.hpp"

namespace seedguard {

std::string Type::str() const {
  switch (kind) {
    case TypeKind::Void: return "void";
    case TypeKind::Int: return "int";
    case TypeKind::Bool: return "bool";
    case TypeKind::Null: return "null";
    case TypeKind::Class: return cls;
    case TypeKind::Array: return (elem == TypeKind::Int ? "int" : cls) + "[]";
  }
  return "?";
}

const char* op_text(UnOp op) { return op == UnOp::Not ? "!" : "-"; }

const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

const MethodDef* Program::find_method(std::string_view name) const {
  for (const auto& m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

MethodDef* Program::find_method(std::string_view name) {
  for (auto& m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

int Program::method_index(std::string_view name) const {
  for (std::size_t i = 0; i < methods.size(); ++i)
    if (methods[i].name == name) return static_cast<int>(i);
  return -1;
}

const ClassDecl* Program::find_class(std::string_view name) const {
  int i = class_index(name);
  return i < 0 ? nullptr : &classes[i];
}

int Program::class_index(std::string_view name) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].name == name) return static_cast<int>(i);
  return -1;
}

bool Program::is_subclass(int sub, int super) const {
  // Bounded by the class count so an unresolved cycle cannot spin.
  for (std::size_t steps = 0; sub >= 0 && steps <= classes.size(); ++steps) {
    if (sub == super) return true;
    sub = classes[sub].super_index;
  }
  return false;
}

std::vector<int> Program::subclasses_of(int cls) const {
  std::vector<int> out{cls};
  for (int i = 0; i < static_cast<int>(classes.size()); ++i)
    if (i != cls && is_subclass(i, cls)) out.push_back(i);
  return out;
}

namespace make {

namespace {
Expr node(Program& p, ExprKind k) {
  Expr e;
  e.id = p.fresh_id();
  e.kind = k;
  return e;
}
Stmt snode(Program& p, StmtKind k) {
  Stmt s;
  s.id = p.fresh_id();
  s.kind = k;
  return s;
}
}  // namespace

Expr int_lit(Program& p, std::int64_t v) {
  Expr e = node(p, ExprKind::IntLit);
  e.value = v;
  return e;
}

Expr bool_lit(Program& p, bool v) {
  Expr e = node(p, ExprKind::BoolLit);
  e.value = v ? 1 : 0;
  return e;
}

Expr null_lit(Program& p) { return node(p, ExprKind::Null); }

Expr var(Program& p, std::string name) {
  Expr e = node(p, ExprKind::Var);
  e.name = std::move(name);
  return e;
}

Expr unary(Program& p, UnOp op, Expr operand) {
  Expr e = node(p, ExprKind::Unary);
  e.unop = op;
  e.kids.push_back(std::move(operand));
  return e;
}

Expr binary(Program& p, BinOp op, Expr l, Expr r) {
  Expr e = node(p, ExprKind::Binary);
  e.binop = op;
  e.kids.push_back(std::move(l));
  e.kids.push_back(std::move(r));
  return e;
}

Expr field(Program& p, Expr recv, std::string name) {
  Expr e = node(p, ExprKind::Field);
  e.name = std::move(name);
  e.kids.push_back(std::move(recv));
  return e;
}

Expr instance_of(Program& p, Expr operand, std::string cls) {
  Expr e = node(p, ExprKind::InstanceOf);
  e.name = std::move(cls);
  e.kids.push_back(std::move(operand));
  return e;
}

Stmt var_decl(Program& p, Type t, std::string name, Expr init) {
  Stmt s = snode(p, StmtKind::VarDecl);
  s.decl_type = std::move(t);
  s.name = std::move(name);
  s.exprs.push_back(std::move(init));
  return s;
}

Stmt assign(Program& p, Expr lhs, Expr rhs) {
  Stmt s = snode(p, StmtKind::Assign);
  s.exprs.push_back(std::move(lhs));
  s.exprs.push_back(std::move(rhs));
  return s;
}

Stmt expr_stmt(Program& p, Expr e) {
  Stmt s = snode(p, StmtKind::ExprStmt);
  s.exprs.push_back(std::move(e));
  return s;
}

Stmt ret(Program& p, std::optional<Expr> e) {
  Stmt s = snode(p, StmtKind::Return);
  if (e) s.exprs.push_back(std::move(*e));
  return s;
}

Stmt ret_bool(Program& p, bool v) { return ret(p, bool_lit(p, v)); }

Stmt if_stmt(Program& p, Expr cond, std::vector<Stmt> then_body) {
  Stmt s = snode(p, StmtKind::If);
  s.exprs.push_back(std::move(cond));
  s.body = std::move(then_body);
  return s;
}

Stmt while_stmt(Program& p, Expr cond, std::vector<Stmt> body) {
  Stmt s = snode(p, StmtKind::While);
  s.exprs.push_back(std::move(cond));
  s.body = std::move(body);
  return s;
}

Stmt try_catch(Program& p, std::vector<Stmt> body, std::string name,
               std::vector<Stmt> handler) {
  Stmt s = snode(p, StmtKind::TryCatch);
  s.body = std::move(body);
  s.name = std::move(name);
  s.alt = std::move(handler);
  return s;
}

Stmt brk(Program& p) { return snode(p, StmtKind::Break); }

}  // namespace make

Expr clone_fresh(Program& p, const Expr& e) {
  Expr out = e;
  out.id = p.fresh_id();
  for (std::size_t i = 0; i < e.kids.size(); ++i)
    out.kids[i] = clone_fresh(p, e.kids[i]);
  return out;
}

Stmt clone_fresh(Program& p, const Stmt& s) {
  Stmt out = s;
  out.id = p.fresh_id();
  for (std::size_t i = 0; i < s.exprs.size(); ++i)
    out.exprs[i] = clone_fresh(p, s.exprs[i]);
  for (std::size_t i = 0; i < s.body.size(); ++i)
    out.body[i] = clone_fresh(p, s.body[i]);
  for (std::size_t i = 0; i < s.alt.size(); ++i)
    out.alt[i] = clone_fresh(p, s.alt[i]);
  return out;
}

}  // namespace seedguard
