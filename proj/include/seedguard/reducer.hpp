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


// Test-constrained reduction of preconditions.

#ifndef SEEDGUARD_REDUCER_HPP_
#define SEEDGUARD_REDUCER_HPP_

#include <cstddef>

#include "seedguard/replay.hpp"
#include "seedguard/seedgen.hpp"
#include "seedguard/testgen.hpp"

namespace seedguard {

struct ReductionConstraint {
  RegressionSuite suite;
  ExecOptions exec;
  ReplayMode mode = ReplayMode::Parallel;
};

struct ReductionStats {
  std::size_t candidates = 0;  // candidates replayed against the suite
  std::size_t rejected_ill_typed = 0;
  std::size_t accepted = 0;
};

// True iff every case returns its expected boolean. `candidate` must be
// resolved.
bool is_valid(const PreconditionProgram& candidate, const ReductionConstraint& constraint);

// Deletes statements and collapses husks while the suite keeps passing,
// until no single step applies. The result is 1-minimal: removing any one
// remaining statement breaks type checking or the suite.
PreconditionProgram reduce(const PreconditionProgram& pre, const ReductionConstraint& constraint,
                           ReductionStats* stats = nullptr);

}  // namespace seedguard

#endif  // SEEDGUARD_REDUCER_HPP_
