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


// Randomized input generation and regression-suite recording.

#ifndef SEEDGUARD_TESTGEN_HPP_
#define SEEDGUARD_TESTGEN_HPP_

#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seedguard/interpreter.hpp"
#include "seedguard/replay.hpp"

namespace seedguard {

struct GenPolicy {
  std::uint64_t rng_seed = 42;
  double null_prob = 0.25;
  // Ints come from int_pool with probability pool_prob (uniformly over its
  // entries), otherwise uniformly from [uniform_min, uniform_max].
  std::vector<std::int64_t> int_pool = {-3, -2, -1, 0, 1, 2, 3, 17, -17, 1 << 30, -(1 << 30)};
  double pool_prob = 0.85;
  std::int64_t uniform_min = -64;
  std::int64_t uniform_max = 64;
  int array_len_min = 0;
  int array_len_max = 4;
  int object_depth_max = 2;
  int envs_per_round = 200;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

// Sets one policy field from its textual form. Returns false for an
// unknown key; throws std::invalid_argument for a malformed value.
bool set_policy_field(GenPolicy& policy, std::string_view key, std::string_view value);

// Deterministic generator. Bounded draws use rejection sampling rather than
// <random> distributions, whose output is not specified across standard
// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t n);
  std::int64_t between(std::int64_t lo, std::int64_t hi);  // inclusive
  double unit();                                              // [0, 1)
  bool chance(double p) { return p >= 1.0 || unit() < p; }

 private:
  std::mt19937_64 eng_;
};

// Stream seed for one round, independent of every other round.
std::uint64_t round_seed(std::uint64_t rng_seed, std::uint64_t round_index);

Environment generate_env(const Program& program, const MethodDef& method,
                         const GenPolicy& policy, Rng& rng);
std::vector<Environment> generate_round(const Program& program, const MethodDef& method,
                                        const GenPolicy& policy, int round_index);

struct TestCase {
  Environment env;
  Outcome observed;
};

std::vector<TestCase> run_round(const Program& program, std::string_view target,
                                const GenPolicy& policy, int round_index,
                                const ExecOptions& opts = {},
                                ReplayMode mode = ReplayMode::Parallel);

struct RegressionCase {
  Environment env;
  bool expected = true;
};

struct RegressionSuite {
  std::vector<RegressionCase> cases;
  std::size_t dropped_budget = 0;  // environments excluded for exceeding the budget
};

struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RegressionSuite to_regression(const std::vector<Environment>& envs, const Program& pre,
                              std::string_view pre_method, const ExecOptions& opts = {},
                              ReplayMode mode = ReplayMode::Parallel);

void write_suite_jsonl(std::ostream& out, const RegressionSuite& suite);
RegressionSuite read_suite_jsonl(std::istream& in);

}  // namespace seedguard

#endif  // SEEDGUARD_TESTGEN_HPP_
