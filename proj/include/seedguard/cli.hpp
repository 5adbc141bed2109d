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


// Batch command-line front end: infer, reduce, judge, metrics, dataset.

#ifndef SEEDGUARD_CLI_HPP_
#define SEEDGUARD_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "seedguard/evalkit.hpp"

namespace seedguard::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNotConverged = 2,
  kExitDomainTooLarge = 3,
  kExitIncorrect = 4,
};

struct RunConfig {
  GenPolicy policy;  // rng_seed and envs_per_round live here
  int max_rounds = 10;
  bool reduce = true;
  std::int64_t budget = kDefaultBudget;
  std::filesystem::path out_dir = "seedguard-out";
  int verbosity = 0;  // -1 quiet, 0 normal, 1+ verbose

  InferOptions infer_options(ReplayMode mode) const;
};

struct Target {
  std::filesystem::path file;
  std::string method;
  std::filesystem::path domain;  // <method>.domain.json next to the file
};

// Methods in the `.mpl` files directly under `dir` that have a domain
// sidecar, sorted by file name then declaration order.
std::vector<Target> discover_targets(const std::filesystem::path& dir);

// Inference, exhaustive judging and metrics for one target. Failures are
// recorded in the returned record rather than thrown.
MethodRecord evaluate_target(const Target& t, const RunConfig& cfg,
                             ReplayMode mode = ReplayMode::Serial);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seedguard::cli

#endif  // SEEDGUARD_CLI_HPP_
