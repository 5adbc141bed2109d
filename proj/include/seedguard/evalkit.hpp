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


// Independent correctness judging, static metrics and dataset emission.
//
// The oracle enumerates every environment of a small per-parameter domain
// and compares the target method against the precondition on each one.

#ifndef SEEDGUARD_EVALKIT_HPP_
#define SEEDGUARD_EVALKIT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seedguard/instrumentor.hpp"
#include "seedguard/serialize.hpp"

namespace seedguard {

struct DomainTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or shape-incompatible domain description.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ValueDomain {
  enum class Kind { Int, Bool, Array, Object };
  Kind kind = Kind::Int;
  std::vector<std::int64_t> ints;  // Int: values in enumeration order
  bool nullable = false;           // Array, Object
  int len_min = 0;                 // Array
  int len_max = 0;
  std::vector<ValueDomain> elem;   // Array: exactly one entry
  // Object: dynamic class to field domains. Fields left out hold their
  // default (0, false or null).
  std::map<std::string, std::map<std::string, ValueDomain>> classes;
};

struct DomainSpec {
  std::uint64_t cap = 50'000;
  std::map<std::string, ValueDomain> params;  // unlisted parameters hold their default
};

inline constexpr std::uint64_t kDomainSizeSaturated = UINT64_MAX;

DomainSpec domain_spec_from_json(const Json& j);
DomainSpec load_domain_spec(const std::filesystem::path& path);

// Cartesian product size, saturating at kDomainSizeSaturated.
std::uint64_t domain_size(const Program& program, const MethodDef& method, const DomainSpec& spec);

// Every environment exactly once. The first parameter varies slowest.
std::vector<Environment> enumerate_envs(const Program& program, const MethodDef& method,
                                        const DomainSpec& spec);

struct Verdict {
  bool safe = true;
  bool maximal = true;
  std::vector<Environment> unsafe_witnesses;      // method crashes, pre accepts
  std::vector<Environment> nonmaximal_witnesses;  // method returns, pre rejects
  std::vector<Environment> pre_crashes;           // pre crashed or ran out of budget
  std::size_t judged = 0;
  std::size_t skipped_budget = 0;  // method itself ran out of budget

  bool correct() const { return safe && maximal && pre_crashes.empty(); }
};

Verdict judge(const Program& program, std::string_view method, const Program& pre_program,
              std::string_view pre_method, const std::vector<Environment>& envs,
              const ExecOptions& exec = {}, ReplayMode mode = ReplayMode::Parallel);
Json to_json(const Verdict& v);

// 1 + If + While + catch clauses + && + ||.
int cyclomatic(const MethodDef& method);
// No field or array-element store in the method or any reachable callee.
bool is_pure(const Program& program, std::string_view method);

enum class Triviality { TriviallyTrue, AlwaysFalse, NonTrivial };
const char* triviality_name(Triviality t);
Triviality classify(const MethodDef& pre);

struct MetricsRecord {
  int cc_before = 0;
  int cc_after = 0;
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
  bool pure_before = true;
  bool pure_after = true;
  int rounds_used = 0;
  std::map<CrashKind, int> checks_by_kind;
  Triviality triviality = Triviality::NonTrivial;
};

// Before is the converged unreduced precondition, after the final one.
MetricsRecord compute_metrics(const InferenceResult& r);
Json to_json(const MetricsRecord& m);

struct CrashPoint {
  CrashKind kind = CrashKind::NullDeref;
  NodeId stmt = kNoNode;
  bool in_callee = false;
  auto operator<=>(const CrashPoint&) const = default;
};

std::vector<CrashPoint> crash_points(const Program& program, std::string_view method,
                                     const std::vector<Environment>& envs,
                                     const ExecOptions& exec = {},
                                     ReplayMode mode = ReplayMode::Parallel);

struct MethodRecord {
  std::string name;
  std::string file;    // source file name
  std::string source;  // printed target method
  std::optional<InferenceResult> result;
  std::optional<Verdict> verdict;
  std::optional<MetricsRecord> metrics;
  std::string error;  // set when the pipeline failed for this method
};

Json record_json(const MethodRecord& r);
Json summary_json(const std::vector<MethodRecord>& records);

// Writes dataset.jsonl and summary.json into `dir`. Throws
// std::runtime_error on I/O failure.
void emit_dataset(const std::vector<MethodRecord>& records, const std::filesystem::path& dir);

}  // namespace seedguard

#endif  // SEEDGUARD_EVALKIT_HPP_
