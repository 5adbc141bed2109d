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

#include <functional>
#include <set>
#include <unordered_map>

#include "seedguard/ast_util.hpp"
#include "seedguard/frontend.hpp"

namespace seedguard {

namespace {

[[noreturn]] void error(const std::string& where, const std::string& what) {
  throw ResolveError(where + ": " + what);
}

class MethodResolver {
 public:
  MethodResolver(Program& p, MethodDef& m) : p_(p), m_(m) {}

  void run() {
    where_ = "method " + m_.name;
    scopes_.emplace_back();
    for (const auto& prm : m_.params) {
      check_type(prm.type, false);
      declare(prm.name, prm.type);
    }
    check_type(m_.return_type, true);
    block(m_.body, false);
    scopes_.pop_back();
    m_.num_slots = next_slot_;
    if (m_.return_type.kind != TypeKind::Void && !always_exits(m_.body))
      error(where_, "missing return on some path");
  }

 private:
  struct Binding {
    int slot;
    Type type;
  };
  Program& p_;
  MethodDef& m_;
  std::string where_;
  std::vector<std::unordered_map<std::string, Binding>> scopes_;
  int next_slot_ = 0;
  int loop_depth_ = 0;

  void check_type(const Type& t, bool allow_void) {
    if (t.kind == TypeKind::Void && !allow_void) error(where_, "void is not a value type");
    if ((t.kind == TypeKind::Class ||
         (t.kind == TypeKind::Array && t.elem == TypeKind::Class)) &&
        p_.class_index(t.cls) < 0)
      error(where_, "unknown type '" + t.cls + "'");
  }

  void declare(const std::string& name, const Type& t) {
    for (const auto& sc : scopes_)
      if (sc.count(name)) error(where_, "redeclaration of '" + name + "'");
    scopes_.back()[name] = Binding{next_slot_++, t};
  }

  const Binding* lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  bool assignable(const Type& to, const Type& from) const {
    if (to == from) return true;
    if (from.kind == TypeKind::Null) return to.kind == TypeKind::Class || to.kind == TypeKind::Array;
    if (to.kind == TypeKind::Class && from.kind == TypeKind::Class)
      return p_.is_subclass(p_.class_index(from.cls), p_.class_index(to.cls));
    return false;
  }

  void block(std::vector<Stmt>& b, bool new_scope = true) {
    if (new_scope) scopes_.emplace_back();
    for (auto& s : b) stmt(s);
    if (new_scope) scopes_.pop_back();
  }

  void require(const Expr& e, const Type& t, const char* what) {
    if (!assignable(t, e.type))
      error(where_, std::string(what) + " has type " + e.type.str() + ", expected " + t.str());
  }

  void stmt(Stmt& s) {
    switch (s.kind) {
      case StmtKind::VarDecl: {
        check_type(s.decl_type, false);
        expr(s.exprs[0]);
        require(s.exprs[0], s.decl_type, ("initializer of '" + s.name + "'").c_str());
        declare(s.name, s.decl_type);
        s.slot = lookup(s.name)->slot;
        break;
      }
      case StmtKind::Assign: {
        Expr& lhs = s.exprs[0];
        expr(lhs);
        if (lhs.kind == ExprKind::Field && lhs.field_index < 0)
          error(where_, "array length is not assignable");
        if (lhs.kind != ExprKind::Var && lhs.kind != ExprKind::Field &&
            lhs.kind != ExprKind::Index)
          error(where_, "invalid assignment target");
        expr(s.exprs[1]);
        require(s.exprs[1], lhs.type, "assigned value");
        break;
      }
      case StmtKind::If:
        expr(s.exprs[0]);
        require(s.exprs[0], Type::Bool(), "if condition");
        block(s.body);
        block(s.alt);
        break;
      case StmtKind::While:
        expr(s.exprs[0]);
        require(s.exprs[0], Type::Bool(), "while condition");
        ++loop_depth_;
        block(s.body);
        --loop_depth_;
        break;
      case StmtKind::Return:
        if (m_.return_type.kind == TypeKind::Void) {
          if (!s.exprs.empty()) error(where_, "void method returns a value");
        } else {
          if (s.exprs.empty()) error(where_, "missing return value");
          expr(s.exprs[0]);
          require(s.exprs[0], m_.return_type, "return value");
        }
        break;
      case StmtKind::Throw:
        break;
      case StmtKind::TryCatch:
        block(s.body);
        block(s.alt);
        break;
      case StmtKind::ExprStmt:
        expr(s.exprs[0], true);
        break;
      case StmtKind::Block:
        block(s.body);
        break;
      case StmtKind::Break:
        if (loop_depth_ == 0) error(where_, "break outside of a loop");
        break;
    }
  }

  void expr(Expr& e, bool void_ok = false) {
    for (auto& k : e.kids) expr(k);
    e.slot = e.field_index = e.method_index = e.class_index = -1;
    switch (e.kind) {
      case ExprKind::IntLit: e.type = Type::Int(); break;
      case ExprKind::BoolLit: e.type = Type::Bool(); break;
      case ExprKind::Null: e.type = Type::NullT(); break;
      case ExprKind::Var: {
        const Binding* b = lookup(e.name);
        if (!b) error(where_, "unknown variable '" + e.name + "'");
        e.slot = b->slot;
        e.type = b->type;
        break;
      }
      case ExprKind::Unary:
        if (e.unop == UnOp::Not) {
          require(e.kids[0], Type::Bool(), "operand of !");
          e.type = Type::Bool();
        } else {
          require(e.kids[0], Type::Int(), "operand of unary -");
          e.type = Type::Int();
        }
        break;
      case ExprKind::Binary: {
        const Type& l = e.kids[0].type;
        const Type& r = e.kids[1].type;
        switch (e.binop) {
          case BinOp::Add: case BinOp::Sub: case BinOp::Mul:
          case BinOp::Div: case BinOp::Mod:
            require(e.kids[0], Type::Int(), "arithmetic operand");
            require(e.kids[1], Type::Int(), "arithmetic operand");
            e.type = Type::Int();
            break;
          case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge:
            require(e.kids[0], Type::Int(), "comparison operand");
            require(e.kids[1], Type::Int(), "comparison operand");
            e.type = Type::Bool();
            break;
          case BinOp::Eq: case BinOp::Ne: {
            bool ok = (l.kind == TypeKind::Int && r.kind == TypeKind::Int) ||
                      (l.kind == TypeKind::Bool && r.kind == TypeKind::Bool) ||
                      (l.is_reference() && r.is_reference());
            if (!ok) error(where_, "cannot compare " + l.str() + " with " + r.str());
            e.type = Type::Bool();
            break;
          }
          case BinOp::And: case BinOp::Or:
            require(e.kids[0], Type::Bool(), "logical operand");
            require(e.kids[1], Type::Bool(), "logical operand");
            e.type = Type::Bool();
            break;
        }
        break;
      }
      case ExprKind::Field: {
        const Type& rt = e.kids[0].type;
        if (rt.kind == TypeKind::Array && e.name == "length") {
          e.type = Type::Int();
          break;
        }
        if (rt.kind != TypeKind::Class)
          error(where_, "field access '" + e.name + "' on " + rt.str());
        const ClassDecl& c = p_.classes[p_.class_index(rt.cls)];
        for (std::size_t i = 0; i < c.all_fields.size(); ++i) {
          if (c.all_fields[i].name == e.name) {
            e.field_index = static_cast<int>(i);
            e.type = c.all_fields[i].type;
          }
        }
        if (e.field_index < 0)
          error(where_, "class " + c.name + " has no field '" + e.name + "'");
        break;
      }
      case ExprKind::Index:
        if (e.kids[0].type.kind != TypeKind::Array)
          error(where_, "indexing a non-array of type " + e.kids[0].type.str());
        require(e.kids[1], Type::Int(), "array index");
        e.type = e.kids[0].type.element();
        break;
      case ExprKind::NewObject:
        e.class_index = p_.class_index(e.name);
        if (e.class_index < 0) error(where_, "unknown class '" + e.name + "'");
        e.type = Type::Class(e.name);
        break;
      case ExprKind::NewArray:
        check_type(e.alloc_type.kind == TypeKind::Int ? Type::Int() : e.alloc_type, false);
        require(e.kids[0], Type::Int(), "array length");
        e.type = e.alloc_type.kind == TypeKind::Int ? Type::IntArray()
                                                    : Type::ClassArray(e.alloc_type.cls);
        break;
      case ExprKind::Cast:
      case ExprKind::InstanceOf: {
        e.class_index = p_.class_index(e.name);
        if (e.class_index < 0) error(where_, "unknown class '" + e.name + "'");
        const Type& ot = e.kids[0].type;
        if (ot.kind != TypeKind::Class && ot.kind != TypeKind::Null)
          error(where_, "cast or instanceof applied to " + ot.str());
        e.type = e.kind == ExprKind::Cast ? Type::Class(e.name) : Type::Bool();
        break;
      }
      case ExprKind::Call: {
        e.method_index = p_.method_index(e.name);
        if (e.method_index < 0) error(where_, "unknown method '" + e.name + "'");
        const MethodDef& callee = p_.methods[e.method_index];
        if (callee.params.size() != e.kids.size())
          error(where_, "wrong number of arguments to '" + e.name + "'");
        for (std::size_t i = 0; i < e.kids.size(); ++i)
          require(e.kids[i], callee.params[i].type, "argument");
        e.type = callee.return_type;
        break;
      }
    }
    if (e.type.kind == TypeKind::Void && !void_ok)
      error(where_, "void call '" + e.name + "' used as a value");
  }
};

void resolve_classes(Program& p) {
  std::set<std::string> seen;
  for (const auto& c : p.classes)
    if (!seen.insert(c.name).second) throw ResolveError("duplicate class '" + c.name + "'");
  for (auto& c : p.classes) {
    c.super_index = -1;
    if (c.super) {
      c.super_index = p.class_index(*c.super);
      if (c.super_index < 0)
        throw ResolveError("class " + c.name + ": unknown superclass '" + *c.super + "'");
    }
  }
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    int cur = static_cast<int>(i);
    for (std::size_t steps = 0; cur >= 0; ++steps) {
      if (steps > p.classes.size())
        throw ResolveError("class " + p.classes[i].name + ": inheritance cycle");
      cur = p.classes[cur].super_index;
    }
  }
  // Parents before children so all_fields can be built incrementally.
  std::vector<bool> done(p.classes.size(), false);
  std::function<void(int)> build = [&](int i) {
    if (done[i]) return;
    ClassDecl& c = p.classes[i];
    c.all_fields.clear();
    if (c.super_index >= 0) {
      build(c.super_index);
      c.all_fields = p.classes[c.super_index].all_fields;
    }
    for (const auto& f : c.fields) {
      for (const auto& g : c.all_fields)
        if (g.name == f.name)
          throw ResolveError("class " + c.name + ": duplicate field '" + f.name + "'");
      if (f.type.kind == TypeKind::Void) throw ResolveError("void field");
      if ((f.type.kind == TypeKind::Class ||
           (f.type.kind == TypeKind::Array && f.type.elem == TypeKind::Class)) &&
          p.class_index(f.type.cls) < 0)
        throw ResolveError("class " + c.name + ": unknown type '" + f.type.cls + "'");
      c.all_fields.push_back(f);
    }
    done[i] = true;
  };
  for (std::size_t i = 0; i < p.classes.size(); ++i) build(static_cast<int>(i));
}

}  // namespace

void resolve(Program& p) {
  resolve_classes(p);
  std::set<std::string> seen;
  for (const auto& m : p.methods)
    if (!seen.insert(m.name).second) throw ResolveError("duplicate method '" + m.name + "'");
  for (auto& m : p.methods) MethodResolver(p, m).run();
}

}  // namespace seedguard
