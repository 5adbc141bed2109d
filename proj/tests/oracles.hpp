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


// Independent oracles shared by the unit tests and the acceptance run. They
// use the interpreter directly and re-implement the checks they verify.

#ifndef SEEDGUARD_TESTS_ORACLES_HPP_
#define SEEDGUARD_TESTS_ORACLES_HPP_

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "seedguard/ast_util.hpp"
#include "seedguard/frontend.hpp"
#include "seedguard/interpreter.hpp"
#include "seedguard/seedgen.hpp"
#include "seedguard/serialize.hpp"
#include "seedguard/testgen.hpp"
#include "support.hpp"

namespace seedguard::testing {

struct CorpusMethod {
  std::filesystem::path file;
  std::string method;
  bool has_domain = false;
};

inline std::vector<CorpusMethod> corpus_methods() {
  std::vector<CorpusMethod> out;
  for (const auto& f : corpus_files()) {
    Program p = parse_program(read_text(f));
    for (const auto& m : p.methods)
      out.push_back({f, m.name, std::filesystem::exists(f.parent_path() / (m.name + ".domain.json"))});
  }
  return out;
}

inline std::vector<CorpusMethod> corpus_targets() {
  std::vector<CorpusMethod> out;
  for (auto& cm : corpus_methods())
    if (cm.has_domain) out.push_back(cm);
  return out;
}

// `n` fuzzed environments drawn from consecutive rounds of `policy`.
inline std::vector<Environment> fuzz_envs(const Program& p, const MethodDef& m, std::size_t n,
                                          GenPolicy policy) {
  std::vector<Environment> out;
  for (int round = 0; out.size() < n; ++round)
    for (auto& e : generate_round(p, m, policy, round))
      if (out.size() < n) out.push_back(std::move(e));
  return out;
}

// Empty when the seed outcome relates to the source outcome as required:
// Returned -> True, own-frame throw -> False, any other crash -> same crash
// kind and callee flag, budget -> budget.
inline std::string seed_divergence(const Outcome& src, const Outcome& seed) {
  auto show = [](const Outcome& o) { return to_json(o).dump(); };
  switch (src.kind) {
    case Outcome::Kind::Returned:
      if (seed.returned() && seed.value_kind == EnvValue::Kind::Bool && seed.value == 1) return {};
      break;
    case Outcome::Kind::Crashed:
      if (src.crash.kind == CrashKind::UserThrown && !src.crash.in_callee) {
        if (seed.returned() && seed.value_kind == EnvValue::Kind::Bool && seed.value == 0) return {};
      } else if (seed.crashed() && seed.crash.kind == src.crash.kind &&
                 seed.crash.in_callee == src.crash.in_callee &&
                 seed.crash.exception_name == src.crash.exception_name) {
        return {};
      }
      break;
    case Outcome::Kind::BudgetExceeded:
      if (seed.kind == Outcome::Kind::BudgetExceeded) return {};
      break;
  }
  return "source " + show(src) + " vs seed " + show(seed);
}

// Erases the statement with `id` from a nested body; true when found.
inline bool erase_stmt(std::vector<Stmt>& body, NodeId id) {
  for (auto it = body.begin(); it != body.end(); ++it) {
    if (it->id == id) {
      body.erase(it);
      return true;
    }
    if (erase_stmt(it->body, id) || erase_stmt(it->alt, id)) return true;
  }
  return false;
}

inline bool passes_suite(const Program& p, const std::string& method, const RegressionSuite& suite,
                         const ExecOptions& exec = {}) {
  for (const auto& c : suite.cases) {
    PreOutcome o = eval_precondition(p, method, c.env, exec);
    const bool ok = c.expected ? o.verdict == PreVerdict::True : o.verdict == PreVerdict::False;
    if (!ok) return false;
  }
  return true;
}

// Statements of the precondition whose single deletion still type-checks
// and passes the suite. Empty means 1-minimal.
inline std::vector<NodeId> single_deletion_witnesses(const PreconditionProgram& pre,
                                                     const RegressionSuite& suite) {
  std::vector<NodeId> ids;
  for_each_stmt(pre.pre().body, [&](const Stmt& s) { ids.push_back(s.id); });
  std::vector<NodeId> out;
  for (NodeId id : ids) {
    Program cand = pre.program;
    MethodDef* m = cand.find_method(pre.method);
    if (!erase_stmt(m->body, id)) continue;
    try {
      resolve(cand);
    } catch (const ResolveError&) {
      continue;
    }
    if (passes_suite(cand, pre.method, suite)) out.push_back(id);
  }
  return out;
}

}  // namespace seedguard::testing

#endif  // SEEDGUARD_TESTS_ORACLES_HPP_
