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


// Seed construction: turns a target method into a boolean-returning,
// throw-free precondition candidate whose crashing expressions each sit on
// their own guardable statement.

#ifndef SEEDGUARD_SEEDGEN_HPP_
#define SEEDGUARD_SEEDGEN_HPP_

#include <map>
#include <string>
#include <string_view>

#include "seedguard/ast.hpp"
#include "seedguard/interpreter.hpp"
#include "json.hpp"

namespace seedguard {

enum class OriginKind { FromSource, SeedInserted, GuardInserted, WrapInserted };

const char* origin_kind_name(OriginKind k);

struct Origin {
  OriginKind kind = OriginKind::FromSource;
  NodeId source = kNoNode;  // FromSource: the node's id in the target method
  // GuardInserted / WrapInserted: what was guarded and where.
  CrashKind crash = CrashKind::NullDeref;
  std::string exception;
  NodeId target = kNoNode;
};

using Provenance = std::map<NodeId, Origin>;

struct PreconditionProgram {
  Program program;     // the source program plus the precondition method
  std::string target;  // name of the method the precondition is for
  std::string method;  // name of the precondition method
  Provenance provenance;
  // Statement ids replaced by an instrumentation step, mapped to the id of
  // the statement that now plays their role.
  std::map<NodeId, NodeId> relocated;

  const MethodDef& pre() const;
  MethodDef& pre();
};

// Generates `__t<k>` names not yet used in a method.
class TempNamer {
 public:
  explicit TempNamer(const MethodDef& m);
  std::string next();

 private:
  int k_ = 0;
};

// The individual passes. Each takes and returns a whole method, allocates
// new node ids from `p`, and expects `m` to be resolved against `p`.
MethodDef normalize_loops(Program& p, const MethodDef& m, TempNamer& names);
MethodDef normalize_calls(Program& p, const MethodDef& m, TempNamer& names);
MethodDef strip_throws(Program& p, const MethodDef& m);
MethodDef booleanize(Program& p, const MethodDef& m);

// Copies `program`, adds `<target>_pre` built by the passes above and
// resolves the result. Callees are left untouched.
PreconditionProgram make_seed(const Program& program, std::string_view target);

// Text of the classes, the methods the precondition can reach, and the
// precondition itself. Parses on its own.
std::string print_precondition(const PreconditionProgram& pre);

nlohmann::json provenance_json(const PreconditionProgram& pre);

}  // namespace seedguard

#endif  // SEEDGUARD_SEEDGEN_HPP_
