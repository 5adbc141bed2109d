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


// Batch execution kernels. Each kernel evaluates one method on many
// environments. The serial versions are the reference; the parallel ones
// spread environments over OpenMP threads, write results into preassigned
// slots and therefore return exactly what the serial ones return.

#ifndef SEEDGUARD_REPLAY_HPP_
#define SEEDGUARD_REPLAY_HPP_

#include <cstddef>
#include <limits>
#include <vector>

#include "seedguard/interpreter.hpp"

namespace seedguard {

enum class ReplayMode { Serial, Parallel };

inline constexpr std::size_t kNoMismatch = std::numeric_limits<std::size_t>::max();

// Tracers are not shared across threads; the parallel kernels require
// opts.tracer == nullptr.
std::vector<Outcome> replay_serial(const Program& program, int method,
                                   const std::vector<Environment>& envs,
                                   const ExecOptions& opts = {});
std::vector<Outcome> replay_parallel(const Program& program, int method,
                                     const std::vector<Environment>& envs,
                                     const ExecOptions& opts = {});
std::vector<Outcome> replay(const Program& program, int method,
                            const std::vector<Environment>& envs, const ExecOptions& opts,
                            ReplayMode mode);

// Index of the first environment on which the boolean method does not
// return `expected[i]` (a crash or budget failure also counts), or
// kNoMismatch. Stops early once a mismatch is known.
std::size_t first_mismatch_serial(const Program& program, int method,
                                  const std::vector<Environment>& envs,
                                  const std::vector<bool>& expected, const ExecOptions& opts = {});
std::size_t first_mismatch_parallel(const Program& program, int method,
                                    const std::vector<Environment>& envs,
                                    const std::vector<bool>& expected,
                                    const ExecOptions& opts = {});
std::size_t first_mismatch(const Program& program, int method,
                           const std::vector<Environment>& envs, const std::vector<bool>& expected,
                           const ExecOptions& opts, ReplayMode mode);

}  // namespace seedguard

#endif  // SEEDGUARD_REPLAY_HPP_
