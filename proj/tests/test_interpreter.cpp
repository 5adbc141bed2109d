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


#include <cstdint>
#include <limits>

#include "doctest.h"
#include "seedguard/frontend.hpp"
#include "seedguard/interpreter.hpp"
#include "support.hpp"

using namespace seedguard;

namespace {

EnvValue big(int sign, std::vector<std::int64_t> mag) {
  std::vector<EnvValue> digits;
  for (auto d : mag) digits.push_back(EnvValue::Int(d));
  return EnvValue::Object("BigIntegerLike", {"m_sign", "m_magnitude"},
                          {EnvValue::Int(sign), EnvValue::Array(digits)});
}

const Stmt& stmt_at(const Program& p, const char* method, std::size_t i) {
  return p.find_method(method)->body.at(i);
}

struct ActiveNode : Tracer {
  NodeId last_stmt = kNoNode;
  void on_stmt(int depth, NodeId s) override {
    if (depth == 0) last_stmt = s;
  }
  void on_expr(int, NodeId, NodeId) override {}
};

}  // namespace

TEST_CASE("divrem: null divisor is a null dereference at the sign test") {
  Program p = testing::load_corpus("divrem.mpl");
  Outcome o = eval_method(p, "divideAndRemainder", {{EnvValue::Int(5), EnvValue::Null()}});
  REQUIRE(o.crashed());
  CHECK(o.crash.kind == CrashKind::NullDeref);
  CHECK(o.crash.loc.node_id == stmt_at(p, "divideAndRemainder", 0).id);
  CHECK_FALSE(o.crash.in_callee);
  CHECK(o.crash.exception_name == "NullPointerException");
  // The faulting node is the field access inside the condition.
  const Expr& cond = stmt_at(p, "divideAndRemainder", 0).exprs[0];
  CHECK(o.crash.fault_node == cond.kids[0].id);
}

TEST_CASE("divrem: zero sign throws ArithmeticException") {
  Program p = testing::load_corpus("divrem.mpl");
  Outcome o = eval_method(p, "divideAndRemainder", {{EnvValue::Int(5), big(0, {1})}});
  REQUIRE(o.crashed());
  CHECK(o.crash.kind == CrashKind::UserThrown);
  CHECK(o.crash.exception_name == "ArithmeticException");
  CHECK_FALSE(o.crash.in_callee);
  Outcome ok = eval_method(p, "divideAndRemainder", {{EnvValue::Int(5), big(1, {3})}});
  CHECK(ok.returned());
  CHECK(ok.is_ref);
}

TEST_CASE("step budget bounds divergent loops") {
  Program p = parse_program("int f(int x){ while (true) { } }");
  Outcome o = eval_method(p, "f", {{EnvValue::Int(0)}});
  CHECK(o.kind == Outcome::Kind::BudgetExceeded);
  ExecOptions small;
  small.budget = 10;
  Program q = parse_program("int g(int n){ int s = 0; while (s < n) { s = s + 1; } return s; }");
  CHECK(eval_method(q, "g", {{EnvValue::Int(3)}}).returned());
  CHECK(eval_method(q, "g", {{EnvValue::Int(100)}}, small).kind == Outcome::Kind::BudgetExceeded);
}

TEST_CASE("unbounded recursion is a budget failure, not a crash") {
  Program p = parse_program("int f(int x){ return f(x + 1); }");
  CHECK(eval_method(p, "f", {{EnvValue::Int(0)}}).kind == Outcome::Kind::BudgetExceeded);
}

TEST_CASE("heap limit is a budget failure") {
  Program p = parse_program("int f(int n){ int[] a = new int[n]; return a.length; }");
  CHECK(eval_method(p, "f", {{EnvValue::Int(1 << 30)}}).kind == Outcome::Kind::BudgetExceeded);
  CHECK(eval_method(p, "f", {{EnvValue::Int(3)}}).value == 3);
}

TEST_CASE("preconditions map onto verdicts") {
  Program p = parse_program("bool p(int x){ return true; } bool q(int x){ return 10 / x > 0; } int r(){ return 1; }");
  CHECK(eval_precondition(p, "p", {{EnvValue::Int(7)}}).verdict == PreVerdict::True);
  CHECK(eval_precondition(p, "q", {{EnvValue::Int(-7)}}).verdict == PreVerdict::False);
  PreOutcome c = eval_precondition(p, "q", {{EnvValue::Int(0)}});
  CHECK(c.verdict == PreVerdict::Crashed);
  CHECK(c.crash.kind == CrashKind::DivByZero);
  CHECK_THROWS_AS(eval_precondition(p, "r", {}), ContractViolation);
}

TEST_CASE("crash semantics table") {
  Program p = parse_program(
      "class A { int v; } class B { int w; } class C extends A { }\n"
      "int idx(int[] a, int i){ return a[i]; }\n"
      "int cast(A x){ C c = (C) x; return 0; }\n"
      "int mod(int a, int b){ return a % b; }\n"
      "int div(int a, int b){ return a / b; }\n"
      "int alloc(int n){ int[] a = new int[n]; return 0; }\n"
      "bool isnull(A x){ return x instanceof A; }\n");
  EnvValue arr = EnvValue::Array({EnvValue::Int(1), EnvValue::Int(2)});
  auto kind = [&](const char* m, Environment env) {
    Outcome o = eval_method(p, m, env);
    REQUIRE(o.crashed());
    return o.crash.kind;
  };
  CHECK(kind("idx", {{arr, EnvValue::Int(2)}}) == CrashKind::IndexOutOfBounds);
  CHECK(kind("idx", {{arr, EnvValue::Int(-1)}}) == CrashKind::IndexOutOfBounds);
  CHECK(kind("idx", {{EnvValue::Null(), EnvValue::Int(0)}}) == CrashKind::NullDeref);
  CHECK(eval_method(p, "idx", {{arr, EnvValue::Int(1)}}).value == 2);
  CHECK(kind("cast", {{EnvValue::Object("A", {"v"}, {EnvValue::Int(0)})}}) == CrashKind::BadCast);
  CHECK(eval_method(p, "cast", {{EnvValue::Object("C", {"v"}, {EnvValue::Int(0)})}}).returned());
  CHECK(eval_method(p, "cast", {{EnvValue::Null()}}).returned());
  CHECK(kind("mod", {{EnvValue::Int(5), EnvValue::Int(0)}}) == CrashKind::DivByZero);
  CHECK(kind("div", {{EnvValue::Int(5), EnvValue::Int(0)}}) == CrashKind::DivByZero);
  CHECK(kind("alloc", {{EnvValue::Int(-1)}}) == CrashKind::NegativeArraySize);
  CHECK(eval_method(p, "alloc", {{EnvValue::Int(0)}}).returned());
  CHECK(eval_method(p, "isnull", {{EnvValue::Null()}}).value == 0);
}

TEST_CASE("integer arithmetic wraps") {
  Program p = parse_program(
      "int add(int a, int b){ return a + b; } int div(int a, int b){ return a / b; } "
      "int mod(int a, int b){ return a % b; } int neg(int a){ return -a; }");
  const auto mx = std::numeric_limits<std::int64_t>::max();
  const auto mn = std::numeric_limits<std::int64_t>::min();
  CHECK(eval_method(p, "add", {{EnvValue::Int(mx), EnvValue::Int(1)}}).value == mn);
  CHECK(eval_method(p, "div", {{EnvValue::Int(mn), EnvValue::Int(-1)}}).value == mn);
  CHECK(eval_method(p, "mod", {{EnvValue::Int(mn), EnvValue::Int(-1)}}).value == 0);
  CHECK(eval_method(p, "neg", {{EnvValue::Int(mn)}}).value == mn);
  CHECK(eval_method(p, "mod", {{EnvValue::Int(-7), EnvValue::Int(3)}}).value == -1);
}

TEST_CASE("callee crashes are reported at the call statement") {
  Program p = testing::load_corpus("sqrt.mpl");
  Outcome o = eval_method(p, "roundedSqrt", {{EnvValue::Int(-1)}});
  REQUIRE(o.crashed());
  CHECK(o.crash.in_callee);
  CHECK(o.crash.kind == CrashKind::UserThrown);
  CHECK(o.crash.exception_name == "IllegalArgumentException");
  CHECK(o.crash.loc.node_id == stmt_at(p, "roundedSqrt", 0).id);
  REQUIRE(o.crash.callee_stack.size() == 1);
  CHECK(o.crash.callee_stack[0].method == "sqrtFloor");
  Outcome z = eval_method(p, "roundedSqrt", {{EnvValue::Int(0)}});
  REQUIRE(z.crashed());
  CHECK(z.crash.kind == CrashKind::DivByZero);
  CHECK(z.crash.in_callee);
  CHECK(z.crash.callee_stack[0].method == "roundHalf");
  CHECK(eval_method(p, "roundedSqrt", {{EnvValue::Int(16)}}).value == 13);
}

TEST_CASE("try/catch handles matching and catch-all exceptions") {
  Program p = parse_program(
      "int thrower(int x){ if (x > 0) { throw Boom; } return 1 / x; }\n"
      "int precise(int x){ try { int y = thrower(x); } catch (Boom) { return 7; } return 0; }\n"
      "int any(int x){ try { int y = thrower(x); } catch (Exception) { return 8; } return 0; }\n"
      "int builtin(int x){ try { int y = thrower(x); } catch (ArithmeticException) { return 9; } return 0; }\n");
  CHECK(eval_method(p, "precise", {{EnvValue::Int(1)}}).value == 7);
  Outcome miss = eval_method(p, "precise", {{EnvValue::Int(0)}});
  REQUIRE(miss.crashed());
  CHECK(miss.crash.kind == CrashKind::DivByZero);
  CHECK(eval_method(p, "any", {{EnvValue::Int(1)}}).value == 8);
  CHECK(eval_method(p, "any", {{EnvValue::Int(0)}}).value == 8);
  CHECK(eval_method(p, "builtin", {{EnvValue::Int(0)}}).value == 9);
  CHECK(eval_method(p, "precise", {{EnvValue::Int(-1)}}).value == 0);
}

TEST_CASE("environments are never mutated") {
  Program p = parse_program("int f(int[] a){ a[0] = 99; return a[0]; }");
  Environment env{{EnvValue::Array({EnvValue::Int(1)})}};
  Environment copy = env;
  Outcome a = eval_method(p, "f", env);
  Outcome b = eval_method(p, "f", env);
  CHECK(env == copy);
  CHECK(a == b);
  CHECK(a.value == 99);
}

TEST_CASE("shape violations are contract errors") {
  Program p = testing::load_corpus("divrem.mpl");
  CHECK_THROWS_AS(eval_method(p, "divideAndRemainder", {{EnvValue::Int(1)}}), ContractViolation);
  CHECK_THROWS_AS(eval_method(p, "divideAndRemainder", {{EnvValue::Bool(true), EnvValue::Null()}}),
                  ContractViolation);
  CHECK_THROWS_AS(
      eval_method(p, "divideAndRemainder",
                  {{EnvValue::Int(1), EnvValue::Object("BigIntegerLike", {"m_sign"}, {EnvValue::Int(1)})}}),
      ContractViolation);
}

TEST_CASE("crash location is the active statement at fault time") {
  Program p = testing::load_corpus("arrays.mpl");
  EnvValue arr = EnvValue::Array({EnvValue::Int(1), EnvValue::Int(2)});
  for (int k = -1; k <= 4; ++k) {
    ActiveNode t;
    ExecOptions opts;
    opts.tracer = &t;
    Outcome o = eval_method(p, "maxPrefix", {{arr, EnvValue::Int(k)}}, opts);
    if (o.crashed()) CHECK(o.crash.loc.node_id == t.last_stmt);
  }
}
