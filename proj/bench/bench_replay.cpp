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


// Compares the serial and OpenMP replay kernels on generated environments.

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "seedguard/frontend.hpp"
#include "seedguard/replay.hpp"
#include "seedguard/testgen.hpp"

namespace fs = std::filesystem;
using namespace seedguard;

namespace {

template <class Fn>
double best_ms(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel replay benchmark"};
  fs::path file = fs::path(SEEDGUARD_CORPUS_DIR) / "arrays.mpl";
  std::string method = "maxPrefix";
  int envs_n = 20000;
  int reps = 5;
  app.add_option("--file", file, "MiniLang source")->capture_default_str();
  app.add_option("--method", method, "Method to replay")->capture_default_str();
  app.add_option("--envs", envs_n, "Number of environments")->capture_default_str();
  app.add_option("--reps", reps, "Repetitions; the best time is reported")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(file);
  if (!in) {
    std::cerr << "cannot read " << file << '\n';
    return 1;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  const Program program = parse_program(ss.str());
  const int mi = program.method_index(method);
  if (mi < 0) {
    std::cerr << "no method " << method << '\n';
    return 1;
  }
  GenPolicy policy;
  Rng rng(policy.rng_seed);
  std::vector<Environment> envs;
  envs.reserve(static_cast<std::size_t>(envs_n));
  for (int i = 0; i < envs_n; ++i)
    envs.push_back(generate_env(program, program.methods[static_cast<std::size_t>(mi)], policy, rng));

  std::vector<Outcome> ser, par;
  const double t_ser = best_ms(reps, [&] { ser = replay_serial(program, mi, envs); });
  const double t_par = best_ms(reps, [&] { par = replay_parallel(program, mi, envs); });
  const bool agree = ser == par;
  std::printf("method=%s envs=%d threads=%d\n", method.c_str(), envs_n, omp_get_max_threads());
  std::printf("serial   %9.3f ms\n", t_ser);
  std::printf("parallel %9.3f ms  speedup %.2fx\n", t_par, t_ser / t_par);
  std::printf("outcomes %s\n", agree ? "identical" : "DIFFER");
  return agree ? 0 : 1;
}
