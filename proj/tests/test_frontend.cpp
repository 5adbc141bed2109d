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


#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "seedguard/ast_util.hpp"
#include "seedguard/frontend.hpp"
#include "seedguard/interpreter.hpp"
#include "support.hpp"

using namespace seedguard;

namespace {

std::vector<NodeId> all_ids(const Program& p) {
  std::vector<NodeId> ids;
  for (const auto& m : p.methods) {
    ids.push_back(m.id);
    collect_ids(m.body, ids);
  }
  return ids;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

// Records the entry frame's expression trace for one statement.
struct ExprTrace : Tracer {
  NodeId stmt = kNoNode;
  std::vector<NodeId> seen;
  void on_stmt(int, NodeId) override {}
  void on_expr(int depth, NodeId s, NodeId e) override {
    if (depth == 0 && s == stmt) seen.push_back(e);
  }
};

}  // namespace

TEST_CASE("identity method parses to a single return of x") {
  Program p = parse_program("int id(int x){ return x; }");
  REQUIRE(p.methods.size() == 1);
  const MethodDef& m = p.methods[0];
  CHECK(m.name == "id");
  REQUIRE(m.body.size() == 1);
  CHECK(m.body[0].kind == StmtKind::Return);
  REQUIRE(m.body[0].exprs.size() == 1);
  CHECK(m.body[0].exprs[0].kind == ExprKind::Var);
  CHECK(m.body[0].exprs[0].name == "x");
  CHECK(m.body[0].exprs[0].type == Type::Int());
}

TEST_CASE("inheritance cycles are rejected") {
  CHECK_THROWS_AS(parse_program("class A extends A {} int f(){ return 0; }"), ResolveError);
  try {
    parse_program("class A extends A {} int f(){ return 0; }");
  } catch (const ResolveError& e) {
    CHECK(std::string(e.what()).find("cycle") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_program("class A extends B {} class B extends A {} int f(){ return 0; }"),
                  ResolveError);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_program("int f() {\n  return 1 +;\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 0);
  }
}

TEST_CASE("resolution failures") {
  CHECK_THROWS_AS(parse_program("int f(){ return y; }"), ResolveError);
  CHECK_THROWS_AS(parse_program("int f(int x){ if (x > 0) { return 1; } }"), ResolveError);
  CHECK_THROWS_AS(parse_program("int f(){ return g(); }"), ResolveError);
  CHECK_THROWS_AS(parse_program("int f(){ return 0; } int f(){ return 1; }"), ResolveError);
  CHECK_THROWS_AS(parse_program("int f(bool b){ return b + 1; }"), ResolveError);
  CHECK_THROWS_AS(parse_program("class A { int x; } int f(A a){ return a.y; }"), ResolveError);
  CHECK_THROWS_AS(parse_program("int f(int x){ return (A) x; }"), ParseError);
  CHECK_THROWS_AS(parse_program("class A {} int f(int x){ A a = (A) x; return 0; }"), ResolveError);
  CHECK_NOTHROW(parse_program("int f(int x){ throw E; }"));
  CHECK_NOTHROW(parse_program("int f(int x){ while (true) { x = x + 1; } }"));
}

TEST_CASE("divrem corpus file declares the sign/magnitude class") {
  Program p = testing::load_corpus("divrem.mpl");
  const ClassDecl* c = p.find_class("BigIntegerLike");
  REQUIRE(c != nullptr);
  REQUIRE(c->fields.size() == 2);
  CHECK(c->fields[0].name == "m_sign");
  CHECK(c->fields[0].type == Type::Int());
  CHECK(c->fields[1].name == "m_magnitude");
  CHECK(c->fields[1].type == Type::IntArray());
  CHECK(p.find_method("divideAndRemainder") != nullptr);
}

TEST_CASE("for loops desugar to while") {
  Program p = parse_program("int f(int n){ int s = 0; for (int i = 0; i < n; i = i + 1) { s = s + i; } return s; }");
  const auto& body = p.methods[0].body;
  REQUIRE(body.size() == 3);
  REQUIRE(body[1].kind == StmtKind::Block);
  REQUIRE(body[1].body.size() == 2);
  CHECK(body[1].body[0].kind == StmtKind::VarDecl);
  CHECK(body[1].body[1].kind == StmtKind::While);
  CHECK(body[1].body[1].body.back().kind == StmtKind::Assign);
  Program q = parse_program(
      "int f(int n){ int s = 0; { int i = 0; while (i < n) { s = s + i; i = i + 1; } } return s; }");
  for (std::int64_t n : {-1, 0, 1, 5}) {
    Environment env{{EnvValue::Int(n)}};
    CHECK(eval_method(p, "f", env) == eval_method(q, "f", env));
  }
}

TEST_CASE("round trip over the corpus preserves structure and ids") {
  for (const auto& path : testing::corpus_files()) {
    CAPTURE(path.filename().string());
    Program p = parse_program(testing::read_text(path));
    SourceMap map;
    std::string text = pretty_print(p, &map);
    Program q = parse_program(text);
    CHECK(structurally_equal(p, q));
    Program r = parse_program(text, &map);
    CHECK(all_ids(r) == all_ids(p));
    CHECK(pretty_print(q) == text);
  }
}

TEST_CASE("ids survive re-parse after a transformation appends nodes") {
  Program p = parse_program("int f(int x){ return x; }");
  MethodDef& m = p.methods[0];
  m.body.insert(m.body.begin(), make::if_stmt(p, make::binary(p, BinOp::Lt, make::var(p, "x"), make::int_lit(p, 0)),
                                              {make::ret(p, make::int_lit(p, 0))}));
  resolve(p);
  SourceMap map;
  std::string text = pretty_print(p, &map);
  Program q = parse_program(text, &map);
  CHECK(all_ids(q) == all_ids(p));
  CHECK(q.next_id == p.next_id);
}

TEST_CASE("nested blocks print one statement per line") {
  Program p = parse_program(
      "int f(int x){ int y = 0; if (x > 0) { while (y < x) { y = y + 1; } } else { y = 2; } return y; }");
  SourceMap map;
  std::string text = pretty_print(p, &map);
  std::set<int> lines;
  std::size_t stmts = 0;
  for_each_stmt(p.methods[0].body, [&](const Stmt& s) {
    ++stmts;
    lines.insert(map.line(s.id));
  });
  CHECK(lines.size() == stmts);
  CHECK(!lines.count(0));
}

TEST_CASE("guard-shaped precondition prints each statement on its own line") {
  Program p = testing::load_corpus("divrem.mpl");
  std::string src = testing::read_text(testing::corpus_dir() / "divrem.mpl");
  Program q = parse_program(src +
                            "bool pre(BigIntegerLike val) { if (val == null) { return false; } "
                            "if (val.m_sign == 0) { return false; } return true; }");
  const MethodDef* m = q.find_method("pre");
  REQUIRE(m != nullptr);
  std::string text = pretty_print(q, *m);
  // signature, two guards of three lines each, return true, closing brace
  CHECK(count_lines(text) == 9);
  CHECK(text ==
        "bool pre(BigIntegerLike val) {\n"
        "  if (val == null) {\n"
        "    return false;\n"
        "  }\n"
        "  if (val.m_sign == 0) {\n"
        "    return false;\n"
        "  }\n"
        "  return true;\n"
        "}\n");
  CHECK(statement_count(m->body) == 5);
}

TEST_CASE("printer parenthesizes by precedence") {
  Program p = parse_program(
      "int f(int a, int b, int c){ int x = (a - b) - c; int y = a - (b - c); int z = -(a + b) * c; "
      "bool w = !(a < b) || (b < c && c < a); return x + y + z; }");
  std::string text = pretty_print(p);
  CHECK(text.find("int x = a - b - c;") != std::string::npos);
  CHECK(text.find("int y = a - (b - c);") != std::string::npos);
  CHECK(text.find("int z = -(a + b) * c;") != std::string::npos);
  CHECK(text.find("bool w = !(a < b) || b < c && c < a;") != std::string::npos);
}

TEST_CASE("ast node counts") {
  Program p = parse_program("int f(){ return 0; } int g(int a, int b){ return a / b; }");
  CHECK(ast_node_count(p.methods[0].body[0]) == 2);
  CHECK(ast_node_count(p.methods[1].body) == 4);
}

TEST_CASE("evaluated_exprs follows the interpreter's evaluation order") {
  Program p = parse_program(
      "class A { int f; } int g(A a, int[] b, int i){ int x = 0; x = a.f + b[i]; return x; }");
  const Stmt& s = p.methods[0].body[1];
  auto order = evaluated_exprs(s);
  std::vector<std::string> shape;
  for (const auto* e : order) shape.push_back(print_expr(*e));
  CHECK(shape == std::vector<std::string>{"a", "a.f", "b", "i", "b[i]", "a.f + b[i]", "x"});

  EnvValue obj = EnvValue::Object("A", {"f"}, {EnvValue::Int(1)});
  Environment env{{obj, EnvValue::Array({EnvValue::Int(2)}), EnvValue::Int(0)}};
  ExprTrace trace;
  trace.stmt = s.id;
  ExecOptions opts;
  opts.tracer = &trace;
  Outcome o = eval_method(p, "g", env, opts);
  CHECK(o.returned());
  CHECK(o.value == 3);
  std::vector<NodeId> expected;
  for (const auto* e : order) expected.push_back(e->id);
  CHECK(trace.seen == expected);
}

TEST_CASE("evaluated_exprs on simple statements") {
  Program p = parse_program("class C {} class D extends C {} int f(C o){ D y = (D) o; return 0; }");
  auto a = evaluated_exprs(p.methods[0].body[0]);
  REQUIRE(a.size() == 2);
  CHECK(a[0]->kind == ExprKind::Var);
  CHECK(a[1]->kind == ExprKind::Cast);
  auto b = evaluated_exprs(p.methods[0].body[1]);
  REQUIRE(b.size() == 1);
  CHECK(b[0]->kind == ExprKind::IntLit);
}

TEST_CASE("structural equality ignores ids") {
  Program a = parse_program("int f(int x){ return x + 1; }");
  Program b = parse_program("class K {} int f(int x){ return x + 1; }");
  CHECK(structurally_equal(a.methods[0], b.methods[0]));
  Program c = parse_program("int f(int x){ return x + 2; }");
  CHECK_FALSE(structurally_equal(a.methods[0], c.methods[0]));
}

TEST_CASE("clone_fresh renumbers every node") {
  Program p = parse_program("int f(int x){ if (x > 0) { return x; } return 0; }");
  Stmt copy = clone_fresh(p, p.methods[0].body[0]);
  CHECK(structurally_equal(copy, p.methods[0].body[0]));
  std::vector<NodeId> before, after;
  collect_ids(p.methods[0].body, before);
  collect_ids({copy}, after);
  for (NodeId id : after) CHECK(std::find(before.begin(), before.end(), id) == before.end());
}
