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


#include "seedguard/replay.hpp"

#include <atomic>
#include <exception>
#include <stdexcept>

namespace seedguard {

namespace {

bool matches(const Outcome& o, bool expected) {
  return o.returned() && o.value_kind == EnvValue::Kind::Bool && (o.value != 0) == expected;
}

void require_no_tracer(const ExecOptions& opts) {
  if (opts.tracer) throw std::invalid_argument("parallel replay cannot share a tracer");
}

// Exceptions must not escape an OpenMP region; the first one is kept and
// rethrown on the calling thread.
class ErrorSlot {
 public:
  void capture() {
    bool expected = false;
    if (taken_.compare_exchange_strong(expected, true)) error_ = std::current_exception();
  }
  bool failed() const { return taken_.load(std::memory_order_relaxed); }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::atomic<bool> taken_{false};
  std::exception_ptr error_;
};

}  // namespace

std::vector<Outcome> replay_serial(const Program& program, int method,
                                   const std::vector<Environment>& envs,
                                   const ExecOptions& opts) {
  std::vector<Outcome> out;
  out.reserve(envs.size());
  for (const auto& env : envs) out.push_back(eval_method(program, method, env, opts));
  return out;
}

std::vector<Outcome> replay_parallel(const Program& program, int method,
                                     const std::vector<Environment>& envs,
                                     const ExecOptions& opts) {
  require_no_tracer(opts);
  std::vector<Outcome> out(envs.size());
  ErrorSlot err;
  const long n = static_cast<long>(envs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    if (err.failed()) continue;
    try {
      out[i] = eval_method(program, method, envs[i], opts);
    } catch (...) {
      err.capture();
    }
  }
  err.rethrow();
  return out;
}

std::vector<Outcome> replay(const Program& program, int method,
                            const std::vector<Environment>& envs, const ExecOptions& opts,
                            ReplayMode mode) {
  return mode == ReplayMode::Parallel ? replay_parallel(program, method, envs, opts)
                                      : replay_serial(program, method, envs, opts);
}

std::size_t first_mismatch_serial(const Program& program, int method,
                                  const std::vector<Environment>& envs,
                                  const std::vector<bool>& expected, const ExecOptions& opts) {
  for (std::size_t i = 0; i < envs.size(); ++i)
    if (!matches(eval_method(program, method, envs[i], opts), expected[i])) return i;
  return kNoMismatch;
}

std::size_t first_mismatch_parallel(const Program& program, int method,
                                    const std::vector<Environment>& envs,
                                    const std::vector<bool>& expected,
                                    const ExecOptions& opts) {
  require_no_tracer(opts);
  // Every index below the final minimum is evaluated, so the result is the
  // true first mismatch regardless of scheduling.
  std::atomic<std::size_t> best{kNoMismatch};
  ErrorSlot err;
  const long n = static_cast<long>(envs.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (idx > best.load(std::memory_order_relaxed) || err.failed()) continue;
    try {
      if (!matches(eval_method(program, method, envs[idx], opts), expected[idx])) {
        std::size_t cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
      }
    } catch (...) {
      err.capture();
    }
  }
  err.rethrow();
  return best.load();
}

std::size_t first_mismatch(const Program& program, int method,
                           const std::vector<Environment>& envs, const std::vector<bool>& expected,
                           const ExecOptions& opts, ReplayMode mode) {
  return mode == ReplayMode::Parallel
             ? first_mismatch_parallel(program, method, envs, expected, opts)
             : first_mismatch_serial(program, method, envs, expected, opts);
}

}  // namespace seedguard
