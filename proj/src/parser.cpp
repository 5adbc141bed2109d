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

// Lexer and recursive-descent parser for MiniLang. `for` loops are
// desugared to a block holding the initializer and a while loop.

#include <algorithm>
#include <cctype>
#include <functional>
#include <charconv>
#include <set>

#include "seedguard/ast_util.hpp"
#include "seedguard/frontend.hpp"

namespace seedguard {

namespace {

enum class Tok { Ident, Int, Punct, Keyword, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const std::set<std::string, std::less<>> kKeywords = {
    "class", "extends", "int",  "bool",  "void",  "if",         "else",
    "while", "for",     "return", "throw", "try", "catch",      "true",
    "false", "null",    "new",  "instanceof", "break"};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string word(src.substr(i, j - i));
      Tok k = kKeywords.count(word) ? Tok::Keyword : Tok::Ident;
      out.push_back({k, std::move(word), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    static const char* kTwo[] = {"==", "!=", "<=", ">=", "&&", "||"};
    bool matched = false;
    for (const char* two : kTwo) {
      if (src.substr(i, 2) == two) {
        out.push_back({Tok::Punct, two, l, cl});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("{}()[];,.=<>+-*/%!").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Tok::End, "<end of input>", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {
    for (std::size_t i = 0; i + 1 < toks_.size(); ++i)
      if (toks_[i].kind == Tok::Keyword && toks_[i].text == "class" &&
          toks_[i + 1].kind == Tok::Ident)
        class_names_.insert(toks_[i + 1].text);
  }

  Program program() {
    Program p;
    while (is_kw("class")) p.classes.push_back(class_decl());
    while (!at_end()) p.methods.push_back(method_decl());
    if (p.methods.empty()) fail("expected a method declaration");
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string, std::less<>> class_names_;
  NodeId next_ = 1;

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_p(std::string_view t, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == t;
  }
  bool is_kw(std::string_view t, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Keyword && peek(ahead).text == t;
  }
  bool is_class_name(std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && class_names_.count(peek(ahead).text);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " but found '" + peek().text + "'", peek().line,
                     peek().col);
  }
  void expect_p(std::string_view t) {
    if (!is_p(t)) fail("expected '" + std::string(t) + "'");
    ++pos_;
  }
  void expect_kw(std::string_view t) {
    if (!is_kw(t)) fail("expected '" + std::string(t) + "'");
    ++pos_;
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    return toks_[pos_++].text;
  }
  NodeId id() { return next_++; }

  bool starts_type() const {
    return is_kw("int") || is_kw("bool") || is_class_name();
  }

  Type type() {
    const Token& at = peek();
    Type base;
    if (is_kw("int")) {
      ++pos_;
      base = Type::Int();
    } else if (is_kw("bool")) {
      ++pos_;
      base = Type::Bool();
    } else if (peek().kind == Tok::Ident) {
      base = Type::Class(ident());
    } else {
      fail("expected type");
    }
    int dims = 0;
    while (is_p("[") && is_p("]", 1)) {
      pos_ += 2;
      ++dims;
    }
    if (dims == 0) return base;
    if (dims > 1)
      throw ResolveError("line " + std::to_string(at.line) +
                         ": nested array types are not supported");
    if (base.kind == TypeKind::Bool)
      throw ResolveError("line " + std::to_string(at.line) +
                         ": array element type must be int or a class");
    return base.kind == TypeKind::Int ? Type::IntArray()
                                      : Type::ClassArray(base.cls);
  }

  ClassDecl class_decl() {
    expect_kw("class");
    ClassDecl c;
    c.name = ident();
    if (is_kw("extends")) {
      ++pos_;
      c.super = ident();
    }
    expect_p("{");
    while (!is_p("}")) {
      FieldDecl f;
      f.type = type();
      f.name = ident();
      expect_p(";");
      c.fields.push_back(std::move(f));
    }
    expect_p("}");
    return c;
  }

  MethodDef method_decl() {
    MethodDef m;
    m.id = id();
    if (is_kw("void")) {
      ++pos_;
      m.return_type = Type::Void();
    } else {
      m.return_type = type();
    }
    m.name = ident();
    expect_p("(");
    if (!is_p(")")) {
      do {
        Param prm;
        prm.type = type();
        prm.name = ident();
        m.params.push_back(std::move(prm));
      } while (is_p(",") && (++pos_, true));
    }
    expect_p(")");
    m.body = block();
    return m;
  }

  std::vector<Stmt> block() {
    expect_p("{");
    std::vector<Stmt> out;
    while (!is_p("}")) {
      if (at_end()) fail("expected '}'");
      out.push_back(stmt());
    }
    expect_p("}");
    return out;
  }

  // Declaration, assignment or expression statement, without the ';'.
  Stmt simple() {
    bool decl = is_kw("int") || is_kw("bool") ||
                (is_class_name() && (peek(1).kind == Tok::Ident ||
                                     (is_p("[", 1) && is_p("]", 2))));
    Stmt s;
    s.id = id();
    if (decl) {
      s.kind = StmtKind::VarDecl;
      s.decl_type = type();
      s.name = ident();
      expect_p("=");
      s.exprs.push_back(expr());
      return s;
    }
    const Token& at = peek();
    Expr e = expr();
    if (is_p("=")) {
      ++pos_;
      if (e.kind != ExprKind::Var && e.kind != ExprKind::Field &&
          e.kind != ExprKind::Index)
        throw ParseError("invalid assignment target", at.line, at.col);
      s.kind = StmtKind::Assign;
      s.exprs.push_back(std::move(e));
      s.exprs.push_back(expr());
      return s;
    }
    s.kind = StmtKind::ExprStmt;
    s.exprs.push_back(std::move(e));
    return s;
  }

  Stmt stmt() {
    Stmt s;
    if (is_p("{")) {
      s.id = id();
      s.kind = StmtKind::Block;
      s.body = block();
      return s;
    }
    if (is_kw("if")) {
      ++pos_;
      s.id = id();
      s.kind = StmtKind::If;
      expect_p("(");
      s.exprs.push_back(expr());
      expect_p(")");
      s.body = block();
      if (is_kw("else")) {
        ++pos_;
        s.has_else = true;
        if (is_kw("if"))
          s.alt.push_back(stmt());
        else
          s.alt = block();
      }
      return s;
    }
    if (is_kw("while")) {
      ++pos_;
      s.id = id();
      s.kind = StmtKind::While;
      expect_p("(");
      s.exprs.push_back(expr());
      expect_p(")");
      s.body = block();
      return s;
    }
    if (is_kw("for")) {
      ++pos_;
      expect_p("(");
      Stmt outer;
      outer.id = id();
      outer.kind = StmtKind::Block;
      Stmt init = simple();
      expect_p(";");
      Stmt loop;
      loop.id = id();
      loop.kind = StmtKind::While;
      loop.exprs.push_back(expr());
      expect_p(";");
      Stmt update = simple();
      expect_p(")");
      loop.body = block();
      loop.body.push_back(std::move(update));
      outer.body.push_back(std::move(init));
      outer.body.push_back(std::move(loop));
      return outer;
    }
    if (is_kw("return")) {
      ++pos_;
      s.id = id();
      s.kind = StmtKind::Return;
      if (!is_p(";")) s.exprs.push_back(expr());
      expect_p(";");
      return s;
    }
    if (is_kw("throw")) {
      ++pos_;
      s.id = id();
      s.kind = StmtKind::Throw;
      s.name = ident();
      expect_p(";");
      return s;
    }
    if (is_kw("break")) {
      ++pos_;
      s.id = id();
      s.kind = StmtKind::Break;
      expect_p(";");
      return s;
    }
    if (is_kw("try")) {
      ++pos_;
      s.id = id();
      s.kind = StmtKind::TryCatch;
      s.body = block();
      expect_kw("catch");
      expect_p("(");
      s.name = ident();
      expect_p(")");
      s.alt = block();
      return s;
    }
    s = simple();
    expect_p(";");
    return s;
  }

  Expr leaf(ExprKind k) {
    Expr e;
    e.id = id();
    e.kind = k;
    return e;
  }

  Expr expr() { return or_expr(); }

  Expr bin(BinOp op, Expr l, Expr r) {
    Expr e = leaf(ExprKind::Binary);
    e.binop = op;
    e.kids.push_back(std::move(l));
    e.kids.push_back(std::move(r));
    return e;
  }

  Expr or_expr() {
    Expr l = and_expr();
    while (is_p("||")) {
      ++pos_;
      l = bin(BinOp::Or, std::move(l), and_expr());
    }
    return l;
  }
  Expr and_expr() {
    Expr l = eq_expr();
    while (is_p("&&")) {
      ++pos_;
      l = bin(BinOp::And, std::move(l), eq_expr());
    }
    return l;
  }
  Expr eq_expr() {
    Expr l = rel_expr();
    while (is_p("==") || is_p("!=")) {
      BinOp op = is_p("==") ? BinOp::Eq : BinOp::Ne;
      ++pos_;
      l = bin(op, std::move(l), rel_expr());
    }
    return l;
  }
  Expr rel_expr() {
    Expr l = add_expr();
    for (;;) {
      if (is_kw("instanceof")) {
        ++pos_;
        Expr e = leaf(ExprKind::InstanceOf);
        e.name = ident();
        e.kids.push_back(std::move(l));
        l = std::move(e);
        continue;
      }
      BinOp op;
      if (is_p("<")) op = BinOp::Lt;
      else if (is_p("<=")) op = BinOp::Le;
      else if (is_p(">")) op = BinOp::Gt;
      else if (is_p(">=")) op = BinOp::Ge;
      else break;
      ++pos_;
      l = bin(op, std::move(l), add_expr());
    }
    return l;
  }
  Expr add_expr() {
    Expr l = mul_expr();
    while (is_p("+") || is_p("-")) {
      BinOp op = is_p("+") ? BinOp::Add : BinOp::Sub;
      ++pos_;
      l = bin(op, std::move(l), mul_expr());
    }
    return l;
  }
  Expr mul_expr() {
    Expr l = unary();
    while (is_p("*") || is_p("/") || is_p("%")) {
      BinOp op = is_p("*") ? BinOp::Mul : is_p("/") ? BinOp::Div : BinOp::Mod;
      ++pos_;
      l = bin(op, std::move(l), unary());
    }
    return l;
  }
  Expr unary() {
    if (is_p("!") || is_p("-")) {
      Expr e = leaf(ExprKind::Unary);
      e.unop = is_p("!") ? UnOp::Not : UnOp::Neg;
      ++pos_;
      e.kids.push_back(unary());
      return e;
    }
    if (is_p("(") && is_class_name(1) && is_p(")", 2)) {
      Expr e = leaf(ExprKind::Cast);
      ++pos_;
      e.name = ident();
      ++pos_;
      e.kids.push_back(unary());
      return e;
    }
    return postfix();
  }
  Expr postfix() {
    Expr e = primary();
    for (;;) {
      if (is_p(".")) {
        ++pos_;
        Expr f = leaf(ExprKind::Field);
        f.name = ident();
        f.kids.push_back(std::move(e));
        e = std::move(f);
      } else if (is_p("[")) {
        ++pos_;
        Expr ix = leaf(ExprKind::Index);
        ix.kids.push_back(std::move(e));
        ix.kids.push_back(expr());
        expect_p("]");
        e = std::move(ix);
      } else {
        return e;
      }
    }
  }
  Expr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      Expr e = leaf(ExprKind::IntLit);
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(),
                                     e.value);
      if (ec != std::errc()) throw ParseError("integer literal out of range", t.line, t.col);
      ++pos_;
      return e;
    }
    if (is_kw("true") || is_kw("false")) {
      Expr e = leaf(ExprKind::BoolLit);
      e.value = is_kw("true") ? 1 : 0;
      ++pos_;
      return e;
    }
    if (is_kw("null")) {
      ++pos_;
      return leaf(ExprKind::Null);
    }
    if (is_kw("new")) {
      ++pos_;
      if (peek().kind == Tok::Ident && is_p("(", 1)) {
        Expr e = leaf(ExprKind::NewObject);
        e.name = ident();
        expect_p("(");
        expect_p(")");
        return e;
      }
      Expr e = leaf(ExprKind::NewArray);
      if (is_kw("int")) {
        ++pos_;
        e.alloc_type = Type::Int();
      } else if (is_kw("bool")) {
        throw ParseError("array element type must be int or a class", t.line, t.col);
      } else {
        e.alloc_type = Type::Class(ident());
      }
      expect_p("[");
      e.kids.push_back(expr());
      expect_p("]");
      return e;
    }
    if (t.kind == Tok::Ident) {
      if (is_p("(", 1)) {
        Expr e = leaf(ExprKind::Call);
        e.name = ident();
        expect_p("(");
        if (!is_p(")")) {
          do {
            e.kids.push_back(expr());
          } while (is_p(",") && (++pos_, true));
        }
        expect_p(")");
        return e;
      }
      Expr e = leaf(ExprKind::Var);
      e.name = ident();
      return e;
    }
    if (is_p("(")) {
      ++pos_;
      Expr e = expr();
      expect_p(")");
      return e;
    }
    fail("expected expression");
  }
};

void renumber(Program& p, const SourceMap* ids) {
  std::size_t k = 0;
  NodeId next = 1;
  NodeId max_seen = 0;
  auto assign = [&](NodeId& slot) {
    if (ids) {
      if (k >= ids->preorder.size())
        throw ResolveError("source map does not match program shape");
      slot = ids->preorder[k++];
    } else {
      slot = next++;
    }
    max_seen = std::max(max_seen, slot);
  };
  std::function<void(Expr&)> visit_e = [&](Expr& e) {
    assign(e.id);
    for (auto& k2 : e.kids) visit_e(k2);
  };
  std::function<void(std::vector<Stmt>&)> visit_b;
  auto visit_s = [&](Stmt& s) {
    assign(s.id);
    for (auto& e : s.exprs) visit_e(e);
    visit_b(s.body);
    visit_b(s.alt);
  };
  visit_b = [&](std::vector<Stmt>& b) {
    for (auto& s : b) visit_s(s);
  };
  for (auto& m : p.methods) {
    assign(m.id);
    visit_b(m.body);
  }
  if (ids && k != ids->preorder.size())
    throw ResolveError("source map does not match program shape");
  p.next_id = max_seen + 1;
}

}  // namespace

Program parse_unresolved(std::string_view text) {
  Parser parser(lex(text));
  Program p = parser.program();
  renumber(p, nullptr);
  return p;
}

Program parse_program(std::string_view text, const SourceMap* ids) {
  Parser parser(lex(text));
  Program p = parser.program();
  renumber(p, ids);
  resolve(p);
  return p;
}

}  // namespace seedguard
