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

// MiniLang abstract syntax. Trees are plain values: copying a Stmt or Expr
// copies the whole subtree, NodeIds included. Code that needs fresh nodes
// goes through Program::fresh_id().

#ifndef SEEDGUARD_AST_HPP_
#define SEEDGUARD_AST_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seedguard {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0;

enum class TypeKind { Void, Int, Bool, Null, Class, Array };

// Array element types are limited to Int and Class, so one level of
// element description is enough.
struct Type {
  TypeKind kind = TypeKind::Void;
  TypeKind elem = TypeKind::Void;  // Array only
  std::string cls;                 // Class name, or element class for Array

  static Type Void() { return {TypeKind::Void, TypeKind::Void, {}}; }
  static Type Int() { return {TypeKind::Int, TypeKind::Void, {}}; }
  static Type Bool() { return {TypeKind::Bool, TypeKind::Void, {}}; }
  static Type NullT() { return {TypeKind::Null, TypeKind::Void, {}}; }
  static Type Class(std::string name) {
    return {TypeKind::Class, TypeKind::Void, std::move(name)};
  }
  static Type IntArray() { return {TypeKind::Array, TypeKind::Int, {}}; }
  static Type ClassArray(std::string name) {
    return {TypeKind::Array, TypeKind::Class, std::move(name)};
  }

  bool is_reference() const {
    return kind == TypeKind::Class || kind == TypeKind::Array ||
           kind == TypeKind::Null;
  }
  Type element() const {
    return elem == TypeKind::Int ? Int() : Class(cls);
  }
  bool operator==(const Type&) const = default;
  std::string str() const;
};

enum class UnOp { Not, Neg };
enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

const char* op_text(UnOp op);
const char* op_text(BinOp op);

enum class ExprKind {
  IntLit,
  BoolLit,
  Null,
  Var,
  Unary,
  Binary,
  Field,      // kids[0].name
  Index,      // kids[0][kids[1]]
  NewObject,  // new name()
  NewArray,   // new alloc_type[kids[0]]
  Cast,       // (name) kids[0]
  InstanceOf, // kids[0] instanceof name
  Call,       // name(kids...)
};

struct Expr {
  NodeId id = kNoNode;
  ExprKind kind = ExprKind::IntLit;
  std::int64_t value = 0;  // IntLit value, BoolLit as 0/1
  std::string name;
  UnOp unop = UnOp::Not;
  BinOp binop = BinOp::Add;
  Type alloc_type;  // NewArray element type
  std::vector<Expr> kids;

  // Filled in by resolve().
  Type type;
  int slot = -1;          // Var
  int field_index = -1;   // Field on a class receiver; -1 for array length
  int method_index = -1;  // Call
  int class_index = -1;   // NewObject, Cast, InstanceOf
};

enum class StmtKind {
  VarDecl,   // decl_type name = exprs[0];
  Assign,    // exprs[0] = exprs[1];
  If,        // if (exprs[0]) body else alt
  While,     // while (exprs[0]) body
  Return,    // return exprs[0]?;
  Throw,     // throw name;
  TryCatch,  // try body catch (name) alt
  ExprStmt,  // exprs[0];
  Block,     // { body }
  Break,
};

struct Stmt {
  NodeId id = kNoNode;
  StmtKind kind = StmtKind::ExprStmt;
  Type decl_type;
  std::string name;
  std::vector<Expr> exprs;
  std::vector<Stmt> body;
  std::vector<Stmt> alt;
  bool has_else = false;

  int slot = -1;  // VarDecl, filled in by resolve()
};

struct Param {
  std::string name;
  Type type;
  bool operator==(const Param&) const = default;
};

struct MethodDef {
  NodeId id = kNoNode;
  std::string name;
  Type return_type;
  std::vector<Param> params;
  std::vector<Stmt> body;

  int num_slots = 0;  // filled in by resolve()
};

struct FieldDecl {
  Type type;
  std::string name;
  bool operator==(const FieldDecl&) const = default;
};

struct ClassDecl {
  std::string name;
  std::optional<std::string> super;
  std::vector<FieldDecl> fields;  // declared here only

  // Filled in by resolve(): inherited fields first, then own.
  std::vector<FieldDecl> all_fields;
  int super_index = -1;
};

class Program {
 public:
  std::vector<ClassDecl> classes;
  std::vector<MethodDef> methods;
  NodeId next_id = 1;

  NodeId fresh_id() { return next_id++; }

  const MethodDef* find_method(std::string_view name) const;
  MethodDef* find_method(std::string_view name);
  int method_index(std::string_view name) const;
  const ClassDecl* find_class(std::string_view name) const;
  int class_index(std::string_view name) const;

  // True when `sub` equals `super` or inherits from it.
  bool is_subclass(int sub, int super) const;
  // Classes assignable to `name`: the class itself then subclasses, in
  // declaration order.
  std::vector<int> subclasses_of(int cls) const;
};

// Canonical exception identifier for the catch-all handler.
inline constexpr const char* kCatchAll = "Exception";

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + msg),
        line(l),
        column(c) {}
};

struct ResolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Convenience constructors used by the transformation passes. Every node
// they return carries a fresh id drawn from `p`.
namespace make {
Expr int_lit(Program& p, std::int64_t v);
Expr bool_lit(Program& p, bool v);
Expr null_lit(Program& p);
Expr var(Program& p, std::string name);
Expr unary(Program& p, UnOp op, Expr e);
Expr binary(Program& p, BinOp op, Expr l, Expr r);
Expr field(Program& p, Expr recv, std::string name);
Expr instance_of(Program& p, Expr e, std::string cls);
Stmt var_decl(Program& p, Type t, std::string name, Expr init);
Stmt assign(Program& p, Expr lhs, Expr rhs);
Stmt expr_stmt(Program& p, Expr e);
Stmt ret(Program& p, std::optional<Expr> e);
Stmt ret_bool(Program& p, bool v);
Stmt if_stmt(Program& p, Expr cond, std::vector<Stmt> then_body);
Stmt while_stmt(Program& p, Expr cond, std::vector<Stmt> body);
Stmt try_catch(Program& p, std::vector<Stmt> body, std::string name,
               std::vector<Stmt> handler);
Stmt brk(Program& p);
}  // namespace make

// Deep copies with every node renumbered from `p`.
Expr clone_fresh(Program& p, const Expr& e);
Stmt clone_fresh(Program& p, const Stmt& s);

}  // namespace seedguard

#endif  // SEEDGUARD_AST_HPP_
