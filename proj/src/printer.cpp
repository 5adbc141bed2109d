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

// Canonical formatting: one statement per line, two-space indent, braces on
// the opening line, a blank line between top-level declarations.

#include <sstream>

#include "seedguard/frontend.hpp"

namespace seedguard {

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Binary:
      switch (e.binop) {
        case BinOp::Or: return 1;
        case BinOp::And: return 2;
        case BinOp::Eq: case BinOp::Ne: return 3;
        case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge: return 4;
        case BinOp::Add: case BinOp::Sub: return 5;
        default: return 6;
      }
    case ExprKind::InstanceOf: return 4;
    case ExprKind::Unary:
    case ExprKind::Cast: return 7;
    case ExprKind::Field:
    case ExprKind::Index: return 8;
    default: return 9;
  }
}

void emit(std::ostream& os, const Expr& e, int min_prec) {
  int prec = precedence(e);
  bool paren = prec < min_prec;
  if (paren) os << '(';
  switch (e.kind) {
    case ExprKind::IntLit: os << e.value; break;
    case ExprKind::BoolLit: os << (e.value ? "true" : "false"); break;
    case ExprKind::Null: os << "null"; break;
    case ExprKind::Var: os << e.name; break;
    case ExprKind::Unary:
      os << op_text(e.unop);
      emit(os, e.kids[0], 7);
      break;
    case ExprKind::Binary:
      emit(os, e.kids[0], prec);
      os << ' ' << op_text(e.binop) << ' ';
      emit(os, e.kids[1], prec + 1);
      break;
    case ExprKind::Field:
      emit(os, e.kids[0], 8);
      os << '.' << e.name;
      break;
    case ExprKind::Index:
      emit(os, e.kids[0], 8);
      os << '[';
      emit(os, e.kids[1], 0);
      os << ']';
      break;
    case ExprKind::NewObject: os << "new " << e.name << "()"; break;
    case ExprKind::NewArray:
      os << "new " << (e.alloc_type.kind == TypeKind::Int ? "int" : e.alloc_type.cls) << '[';
      emit(os, e.kids[0], 0);
      os << ']';
      break;
    case ExprKind::Cast:
      os << '(' << e.name << ") ";
      emit(os, e.kids[0], 7);
      break;
    case ExprKind::InstanceOf:
      emit(os, e.kids[0], 4);
      os << " instanceof " << e.name;
      break;
    case ExprKind::Call:
      os << e.name << '(';
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) os << ", ";
        emit(os, e.kids[i], 0);
      }
      os << ')';
      break;
  }
  if (paren) os << ')';
}

class Printer {
 public:
  explicit Printer(SourceMap* map) : map_(map) {}

  std::string program(const Program& p) {
    bool first = true;
    for (const auto& c : p.classes) {
      if (!first) line("");
      first = false;
      std::string head = "class " + c.name;
      if (c.super) head += " extends " + *c.super;
      line(head + " {");
      for (const auto& f : c.fields) line("  " + f.type.str() + " " + f.name + ";");
      line("}");
    }
    for (const auto& m : p.methods) {
      if (!first) line("");
      first = false;
      method(m);
    }
    return out_.str();
  }

  std::string single(const MethodDef& m) {
    method(m);
    return out_.str();
  }

 private:
  SourceMap* map_;
  std::ostringstream out_;
  int line_no_ = 0;
  int depth_ = 0;

  void line(const std::string& text) {
    ++line_no_;
    for (int i = 0; i < depth_; ++i) out_ << "  ";
    out_ << text << '\n';
  }

  void note(NodeId id) {
    if (!map_) return;
    map_->preorder.push_back(id);
    map_->line_of[id] = line_no_ + 1;
  }

  void note_expr(const Expr& e, int at_line) {
    if (!map_) return;
    map_->preorder.push_back(e.id);
    map_->line_of[e.id] = at_line;
    for (const auto& k : e.kids) note_expr(k, at_line);
  }

  void method(const MethodDef& m) {
    note(m.id);
    std::string head = m.return_type.str() + " " + m.name + "(";
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      if (i) head += ", ";
      head += m.params[i].type.str() + " " + m.params[i].name;
    }
    line(head + ") {");
    block(m.body);
    line("}");
  }

  void block(const std::vector<Stmt>& b) {
    ++depth_;
    for (const auto& s : b) stmt(s);
    --depth_;
  }

  static std::string text(const Expr& e) {
    std::ostringstream os;
    emit(os, e, 0);
    return os.str();
  }

  void stmt(const Stmt& s) {
    note(s.id);
    int here = line_no_ + 1;
    for (const auto& e : s.exprs) note_expr(e, here);
    switch (s.kind) {
      case StmtKind::VarDecl:
        line(s.decl_type.str() + " " + s.name + " = " + text(s.exprs[0]) + ";");
        break;
      case StmtKind::Assign:
        line(text(s.exprs[0]) + " = " + text(s.exprs[1]) + ";");
        break;
      case StmtKind::If:
        line("if (" + text(s.exprs[0]) + ") {");
        block(s.body);
        if (s.has_else) {
          line("} else {");
          block(s.alt);
        }
        line("}");
        break;
      case StmtKind::While:
        line("while (" + text(s.exprs[0]) + ") {");
        block(s.body);
        line("}");
        break;
      case StmtKind::Return:
        line(s.exprs.empty() ? "return;" : "return " + text(s.exprs[0]) + ";");
        break;
      case StmtKind::Throw: line("throw " + s.name + ";"); break;
      case StmtKind::TryCatch:
        line("try {");
        block(s.body);
        line("} catch (" + s.name + ") {");
        block(s.alt);
        line("}");
        break;
      case StmtKind::ExprStmt: line(text(s.exprs[0]) + ";"); break;
      case StmtKind::Block:
        line("{");
        block(s.body);
        line("}");
        break;
      case StmtKind::Break: line("break;"); break;
    }
  }
};

}  // namespace

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  emit(os, e, 0);
  return os.str();
}

std::string pretty_print(const Program& program, SourceMap* map) {
  if (map) *map = SourceMap{};
  return Printer(map).program(program);
}

std::string pretty_print(const Program&, const MethodDef& method) {
  return Printer(nullptr).single(method);
}

}  // namespace seedguard
