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

// Deterministic tree-walking evaluator for resolved MiniLang programs.
//
// Every dynamic error is reported as a CrashReport located at the statement
// of the entry method that was executing when the error happened. If the
// error was raised in a callee, that statement is the call site and
// `in_callee` is set. Evaluation never touches the caller's Environment:
// inputs are materialized into a fresh heap for each run.

#ifndef SEEDGUARD_INTERPRETER_HPP_
#define SEEDGUARD_INTERPRETER_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seedguard/ast.hpp"

namespace seedguard {

// Input value tree. Environments are trees: generated inputs never share
// substructure, so a plain recursive value is a faithful representation.
struct EnvValue {
  enum class Kind { Int, Bool, Null, Array, Object };
  Kind kind = Kind::Null;
  std::int64_t num = 0;                  // Int, Bool (0/1)
  std::string cls;                       // Object: dynamic class
  std::vector<EnvValue> items;           // Array elements or Object fields
  std::vector<std::string> field_names;  // Object: parallel to items

  static EnvValue Int(std::int64_t v) { return {Kind::Int, v, {}, {}, {}}; }
  static EnvValue Bool(bool b) { return {Kind::Bool, b ? 1 : 0, {}, {}, {}}; }
  static EnvValue Null() { return {}; }
  static EnvValue Array(std::vector<EnvValue> xs) {
    return {Kind::Array, 0, {}, std::move(xs), {}};
  }
  static EnvValue Object(std::string cls, std::vector<std::string> names,
                         std::vector<EnvValue> values) {
    return {Kind::Object, 0, std::move(cls), std::move(values), std::move(names)};
  }

  bool operator==(const EnvValue&) const = default;
};

struct Environment {
  std::vector<EnvValue> args;
  bool operator==(const Environment&) const = default;
};

enum class CrashKind {
  NullDeref,
  IndexOutOfBounds,
  NegativeArraySize,
  DivByZero,
  BadCast,
  UserThrown,
};

inline constexpr CrashKind kAllCrashKinds[] = {
    CrashKind::NullDeref, CrashKind::IndexOutOfBounds, CrashKind::NegativeArraySize,
    CrashKind::DivByZero, CrashKind::BadCast,          CrashKind::UserThrown};

const char* crash_kind_name(CrashKind k);
CrashKind crash_kind_from_name(std::string_view name);  // throws on unknown
// Exception identifier a built-in crash raises, as seen by catch clauses.
const char* builtin_exception_name(CrashKind k);

struct SourceLoc {
  NodeId node_id = kNoNode;
  int display_line = 0;  // 0 until annotated from a SourceMap
  bool operator==(const SourceLoc&) const = default;
};

struct CallFrame {
  std::string method;
  SourceLoc loc;
  bool operator==(const CallFrame&) const = default;
};

struct CrashReport {
  CrashKind kind = CrashKind::NullDeref;
  SourceLoc loc;                  // statement in the entry frame
  NodeId fault_node = kNoNode;    // faulting node in its own frame
  bool in_callee = false;
  std::vector<CallFrame> callee_stack;  // innermost last
  std::string exception_name;

  bool operator==(const CrashReport&) const = default;
};

struct Outcome {
  enum class Kind { Returned, Crashed, BudgetExceeded };
  Kind kind = Kind::Returned;
  // Returned: scalar result. References collapse to is_ref.
  EnvValue::Kind value_kind = EnvValue::Kind::Null;
  std::int64_t value = 0;
  bool is_ref = false;
  CrashReport crash;

  bool returned() const { return kind == Kind::Returned; }
  bool crashed() const { return kind == Kind::Crashed; }
  bool operator==(const Outcome&) const = default;
};

enum class PreVerdict { True, False, Crashed, BudgetExceeded };

struct PreOutcome {
  PreVerdict verdict = PreVerdict::True;
  CrashReport crash;
  bool operator==(const PreOutcome&) const = default;
};

// Observes evaluation. `depth` is 0 for the entry frame.
class Tracer {
 public:
  virtual ~Tracer() = default;
  virtual void on_stmt(int depth, NodeId stmt) = 0;
  // Called after an expression finishes evaluating (and after a store
  // completes, for assignment targets).
  virtual void on_expr(int depth, NodeId stmt, NodeId expr) = 0;
};

inline constexpr std::int64_t kDefaultBudget = 1'000'000;
inline constexpr std::size_t kDefaultHeapLimit = 100'000;
inline constexpr int kMaxCallDepth = 512;

struct ExecOptions {
  std::int64_t budget = kDefaultBudget;  // interpreter steps
  std::size_t heap_limit = kDefaultHeapLimit;  // heap cells
  Tracer* tracer = nullptr;
};

// Raised for shape-incompatible inputs; distinct from a crash.
struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void check_shape(const Program& program, const MethodDef& method, const Environment& env);

Outcome eval_method(const Program& program, std::string_view method, const Environment& env,
                    const ExecOptions& opts = {});
Outcome eval_method(const Program& program, int method_index, const Environment& env,
                    const ExecOptions& opts = {});

PreOutcome to_pre_outcome(const Outcome& o);
PreOutcome eval_precondition(const Program& program, std::string_view pre_method,
                             const Environment& env, const ExecOptions& opts = {});

}  // namespace seedguard

#endif  // SEEDGUARD_INTERPRETER_HPP_
