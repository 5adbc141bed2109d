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


#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "seedguard/ast_util.hpp"
#include "seedguard/frontend.hpp"
#include "seedguard/instrumentor.hpp"
#include "seedguard/reducer.hpp"

using namespace seedguard;

namespace {

PreconditionProgram pre_from(const std::string& text, const std::string& method) {
  PreconditionProgram pre;
  pre.program = parse_program(text);
  pre.method = method;
  pre.target = method.substr(0, method.size() - 4);
  return pre;
}

RegressionSuite suite_over_ints(const PreconditionProgram& pre, int lo, int hi) {
  std::vector<Environment> envs;
  for (int x = lo; x <= hi; ++x) envs.push_back({{EnvValue::Int(x)}});
  return to_regression(envs, pre.program, pre.method);
}

std::string reduced_text(const std::string& text, int lo, int hi) {
  PreconditionProgram pre = pre_from(text, "f_pre");
  ReductionConstraint rc{suite_over_ints(pre, lo, hi), {}, ReplayMode::Serial};
  PreconditionProgram out = reduce(pre, rc);
  return pretty_print(out.program, out.pre());
}

}  // namespace

TEST_CASE("divrem reduces to the null and sign guards") {
  Program p = testing::load_corpus("divrem.mpl");
  InferenceResult r = infer(p, "divideAndRemainder", GenPolicy{});
  REQUIRE(r.converged);
  CHECK(pretty_print(r.precondition.program, r.precondition.pre()) ==
        "bool divideAndRemainder_pre(int dividend, BigIntegerLike val) {\n"
        "  if (val == null) {\n"
        "    return false;\n"
        "  }\n"
        "  if (val.m_sign == 0) {\n"
        "    return false;\n"
        "  }\n"
        "  return true;\n"
        "}\n");
}

TEST_CASE("dead statements go, constraining guards stay") {
  CHECK(reduced_text("bool f_pre(int x) { int y = x + 1; y; if (x == 0) { return false; } return true; }",
                     -2, 2) ==
        "bool f_pre(int x) {\n  if (x == 0) {\n    return false;\n  }\n  return true;\n}\n");
}

TEST_CASE("an empty then-branch is folded into a negated condition") {
  CHECK(reduced_text("bool f_pre(int x) { if (x > 0) { } else { return false; } return true; }", -2, 2) ==
        "bool f_pre(int x) {\n  if (!(x > 0)) {\n    return false;\n  }\n  return true;\n}\n");
}

TEST_CASE("a loop that always breaks is flattened") {
  CHECK(reduced_text(
            "bool f_pre(int x) { while (true) { if (x == 0) { return false; } break; } return true; }",
            -2, 2) == "bool f_pre(int x) {\n  if (x == 0) {\n    return false;\n  }\n  return true;\n}\n");
}

TEST_CASE("code after a return is removed") {
  CHECK(reduced_text("bool f_pre(int x) { if (x < 0) { return false; x = 1; } return true; x; }", -2, 2) ==
        "bool f_pre(int x) {\n  if (x < 0) {\n    return false;\n  }\n  return true;\n}\n");
}

TEST_CASE("ill-typed deletions are never accepted") {
  // Deleting the declaration alone would leave `y` unbound.
  const std::string out = reduced_text(
      "bool f_pre(int x) { int y = x * 2; if (y == 4) { return false; } return true; }", -3, 3);
  CHECK(out == "bool f_pre(int x) {\n  int y = x * 2;\n  if (y == 4) {\n    return false;\n  }\n"
               "  return true;\n}\n");
  PreconditionProgram pre = pre_from(
      "bool f_pre(int x) { int y = x * 2; if (y == 4) { return false; } return true; }", "f_pre");
  ReductionStats stats;
  reduce(pre, {suite_over_ints(pre, -3, 3), {}, ReplayMode::Serial}, &stats);
  CHECK(stats.rejected_ill_typed > 0);
}

TEST_CASE("is_valid checks every suite case") {
  PreconditionProgram pre =
      pre_from("bool f_pre(int x) { if (x == 0) { return false; } return true; }", "f_pre");
  ReductionConstraint rc{suite_over_ints(pre, -1, 1), {}, ReplayMode::Serial};
  CHECK(is_valid(pre, rc));
  PreconditionProgram all_true = pre_from("bool f_pre(int x) { return true; }", "f_pre");
  CHECK_FALSE(is_valid(all_true, rc));
  rc.mode = ReplayMode::Parallel;
  CHECK_FALSE(is_valid(all_true, rc));
}

TEST_CASE("reduction is a fixpoint and never grows the precondition") {
  for (const auto& cm : testing::corpus_targets()) {
    CAPTURE(cm.method);
    Program p = parse_program(testing::read_text(cm.file));
    InferenceResult r = infer(p, cm.method, GenPolicy{});
    REQUIRE(r.converged);
    CHECK(ast_node_count(r.precondition.pre().body) <= ast_node_count(r.unreduced.pre().body));
    CHECK(testing::passes_suite(r.precondition.program, r.precondition.method, r.regression));
    ReductionConstraint rc{r.regression, {}, ReplayMode::Serial};
    PreconditionProgram again = reduce(r.precondition, rc);
    CHECK(structurally_equal(again.pre().body, r.precondition.pre().body));
  }
}

TEST_CASE("reduced corpus preconditions are 1-minimal") {
  int checked = 0;
  for (const auto& cm : testing::corpus_targets()) {
    CAPTURE(cm.method);
    Program p = parse_program(testing::read_text(cm.file));
    InferenceResult r = infer(p, cm.method, GenPolicy{});
    REQUIRE(r.converged);
    if (statement_count(r.precondition.pre().body) > 12) continue;
    CHECK(testing::single_deletion_witnesses(r.precondition, r.regression).empty());
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("provenance is pruned to surviving nodes") {
  Program p = testing::load_corpus("person.mpl");
  InferenceResult r = infer(p, "checkedAge", GenPolicy{});
  std::vector<NodeId> ids;
  collect_ids(r.precondition.pre().body, ids);
  std::set<NodeId> live(ids.begin(), ids.end());
  live.insert(r.precondition.pre().id);
  for (const auto& [id, o] : r.precondition.provenance) CHECK(live.count(id) == 1);
}
