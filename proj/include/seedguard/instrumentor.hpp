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


// Crash-guard instrumentation and the iterative inference driver.

#ifndef SEEDGUARD_INSTRUMENTOR_HPP_
#define SEEDGUARD_INSTRUMENTOR_HPP_

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "seedguard/interpreter.hpp"
#include "seedguard/replay.hpp"
#include "seedguard/seedgen.hpp"
#include "seedguard/testgen.hpp"

namespace seedguard {

// The crashing statement has no expression of the reported kind.
struct NoMatchingExpression : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// The same guard was already inserted for that statement.
struct AlreadyGuarded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Inference saw a crash it had already guarded against.
struct NonProgress : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Insertion {
  NodeId guarded_stmt = kNoNode;     // statement the checks protect
  std::vector<NodeId> inserted;      // new top-level statements, in order
};

// Rewrites `pre` in place for one crash. Throws NoMatchingExpression,
// AlreadyGuarded, or std::invalid_argument if the location is unknown.
Insertion apply_checks(PreconditionProgram& pre, const CrashReport& crash);

PreconditionProgram insert_checks(const PreconditionProgram& pre, const CrashReport& crash);

struct CheckRecord {
  CrashKind kind = CrashKind::NullDeref;
  bool in_callee = false;
  std::string exception;
  SourceLoc loc;  // guarded statement; display_line from the program it was inserted into
  int round = 0;
  std::vector<NodeId> inserted;
};

struct InsertionEvent {
  int round = 0;
  const CrashReport& crash;
  const Environment& env;  // an environment that produced the crash
  const PreconditionProgram& after;
  const Insertion& insertion;
};

struct InferOptions {
  int max_rounds = 10;
  bool reduce = true;
  ExecOptions exec;
  ReplayMode mode = ReplayMode::Parallel;
  std::function<void(const InsertionEvent&)> observer;
};

struct InferenceResult {
  PreconditionProgram seed;
  PreconditionProgram unreduced;     // converged program before reduction
  PreconditionProgram precondition;  // final output
  int rounds_used = 0;
  bool converged = false;
  std::vector<CheckRecord> checks;
  RegressionSuite regression;
  std::vector<Environment> envs;     // every generated environment, in order
  std::vector<int> crash_rounds;     // rounds in which crashes were found
};

InferenceResult infer(const Program& program, std::string_view target, const GenPolicy& policy,
                      const InferOptions& opts = {});

nlohmann::json result_json(const InferenceResult& r);

}  // namespace seedguard

#endif  // SEEDGUARD_INSTRUMENTOR_HPP_
