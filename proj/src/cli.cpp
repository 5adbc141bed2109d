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


#include "seedguard/cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "seedguard/ast_util.hpp"
#include "seedguard/frontend.hpp"
#include "seedguard/reducer.hpp"
#include "seedguard/seedgen.hpp"

namespace seedguard::cli {
namespace fs = std::filesystem;

namespace {

class Log {
 public:
  Log(std::ostream& err, int verbosity)
      : err_(err),
        verbosity_(verbosity),
        color_(&err == &std::cerr && std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO)) {}

  void error(const std::string& msg) const { emit("error", "\033[31m", msg); }
  void warn(const std::string& msg) const {
    if (verbosity_ >= 0) emit("warning", "\033[33m", msg);
  }
  void info(const std::string& msg) const {
    if (verbosity_ >= 1) emit("info", "\033[36m", msg);
  }

 private:
  void emit(const char* tag, const char* ansi, const std::string& msg) const {
    if (color_)
      err_ << ansi << tag << "\033[0m: " << msg << '\n';
    else
      err_ << tag << ": " << msg << '\n';
  }

  std::ostream& err_;
  int verbosity_;
  bool color_;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create " + p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out.flush()) throw std::runtime_error("cannot write " + p.string());
}

Program load_program(const fs::path& p) { return parse_program(read_file(p)); }

std::string pre_name(const std::string& method) { return method + "_pre"; }

void write_inference_artifacts(const fs::path& dir, const std::string& method,
                               const InferenceResult& r, bool emit_seed) {
  write_file(dir / (method + ".pre.mpl"), print_precondition(r.precondition));
  write_file(dir / (method + ".result.json"), result_json(r).dump(2) + "\n");
  std::ostringstream suite;
  write_suite_jsonl(suite, r.regression);
  write_file(dir / (method + ".suite.jsonl"), suite.str());
  if (emit_seed) {
    write_file(dir / (method + ".seed.mpl"), print_precondition(r.seed));
    write_file(dir / (method + ".seed.provenance.json"), provenance_json(r.seed).dump(2) + "\n");
  }
}

void print_report(std::ostream& out, const std::string& method, const InferenceResult& r) {
  out << method << ": " << (r.converged ? "converged" : "not converged") << " after "
      << r.rounds_used << " round" << (r.rounds_used == 1 ? "" : "s") << ", " << r.checks.size()
      << " check" << (r.checks.size() == 1 ? "" : "s") << '\n';
  for (const auto& c : r.checks) {
    out << "  round " << c.round << ": " << (c.in_callee ? "wrap " : "guard ")
        << crash_kind_name(c.kind);
    if (c.in_callee) out << " (" << c.exception << ")";
    out << " at line " << c.loc.display_line << '\n';
  }
}

struct Common {
  RunConfig cfg;
  std::vector<std::string> policy_overrides;
  int verbose = 0;
  bool quiet = false;
  bool no_reduce = false;

  void finish() {
    for (const auto& kv : policy_overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--policy expects KEY=VALUE, got " + kv);
      if (!set_policy_field(cfg.policy, kv.substr(0, eq), kv.substr(eq + 1)))
        throw std::invalid_argument("unknown policy key " + kv.substr(0, eq));
    }
    cfg.policy.validate();
    if (no_reduce) cfg.reduce = false;
    if (cfg.budget <= 0) throw std::invalid_argument("--budget must be positive");
    if (cfg.max_rounds < 0) throw std::invalid_argument("--max-rounds must be non-negative");
    cfg.verbosity = quiet ? -1 : verbose;
  }
};

int cmd_infer(const Common& c, const fs::path& file, const std::string& method, bool emit_seed,
              std::ostream& out, const Log& log) {
  const Program program = load_program(file);
  if (!program.find_method(method)) {
    log.error(file.string() + " has no method " + method);
    return kExitUsage;
  }
  const InferenceResult r = infer(program, method, c.cfg.policy, c.cfg.infer_options(ReplayMode::Parallel));
  write_inference_artifacts(c.cfg.out_dir, method, r, emit_seed);
  if (c.cfg.verbosity >= 0) print_report(out, method, r);
  log.info("artifacts written to " + c.cfg.out_dir.string());
  return r.converged ? kExitOk : kExitNotConverged;
}

int cmd_reduce(const Common& c, const fs::path& file, const fs::path& suite_path,
               std::string method, std::ostream& out, const Log& log) {
  PreconditionProgram pre;
  pre.program = load_program(file);
  if (method.empty()) {
    for (const auto& m : pre.program.methods)
      if (m.name.size() > 4 && m.name.ends_with("_pre")) method = m.name;
  }
  if (method.empty() || !pre.program.find_method(method)) {
    log.error("no precondition method found; pass --method");
    return kExitUsage;
  }
  pre.method = method;
  pre.target = method.ends_with("_pre") ? method.substr(0, method.size() - 4) : method;
  std::ifstream in(suite_path);
  if (!in) throw std::runtime_error("cannot read " + suite_path.string());
  ReductionConstraint rc;
  rc.suite = read_suite_jsonl(in);
  rc.exec.budget = c.cfg.budget;
  rc.mode = ReplayMode::Parallel;
  if (!is_valid(pre, rc)) {
    log.error(method + " does not satisfy its regression suite");
    return kExitUsage;
  }
  ReductionStats stats;
  const PreconditionProgram reduced = reduce(pre, rc, &stats);
  const fs::path dest = c.cfg.out_dir / (method + ".reduced.mpl");
  write_file(dest, print_precondition(reduced));
  if (c.cfg.verbosity >= 0)
    out << method << ": " << ast_node_count(pre.pre().body) << " -> "
        << ast_node_count(reduced.pre().body) << " nodes (" << stats.candidates << " candidates, "
        << stats.accepted << " accepted, " << stats.rejected_ill_typed << " ill-typed)\n";
  return kExitOk;
}

int cmd_judge(const Common& c, const fs::path& file, const std::string& method,
              const fs::path& pre_file, std::string pre_method, fs::path domain,
              std::ostream& out, const Log& log) {
  const Program program = load_program(file);
  const MethodDef* m = program.find_method(method);
  if (!m) {
    log.error(file.string() + " has no method " + method);
    return kExitUsage;
  }
  const Program pre = load_program(pre_file);
  if (pre_method.empty()) pre_method = pre_name(method);
  if (!pre.find_method(pre_method)) {
    log.error(pre_file.string() + " has no method " + pre_method);
    return kExitUsage;
  }
  if (domain.empty()) domain = file.parent_path() / (method + ".domain.json");
  std::vector<Environment> envs;
  try {
    envs = enumerate_envs(program, *m, load_domain_spec(domain));
  } catch (const DomainTooLarge& e) {
    log.error(e.what());
    return kExitDomainTooLarge;
  }
  ExecOptions exec;
  exec.budget = c.cfg.budget;
  const Verdict v = judge(program, method, pre, pre_method, envs, exec, ReplayMode::Parallel);
  write_file(c.cfg.out_dir / (method + ".verdict.json"), to_json(v).dump(2) + "\n");
  if (c.cfg.verbosity >= 0)
    out << method << ": " << (v.correct() ? "correct" : "incorrect") << " (safe=" << v.safe
        << " maximal=" << v.maximal << " pre_crashes=" << v.pre_crashes.size() << ", " << v.judged
        << " environments)\n";
  return v.correct() ? kExitOk : kExitIncorrect;
}

int cmd_metrics(const fs::path& file, const std::string& method, std::ostream& out, const Log& log) {
  const Program program = load_program(file);
  Json all = Json::object();
  for (const auto& m : program.methods) {
    if (!method.empty() && m.name != method) continue;
    all[m.name] = {{"cyclomatic", cyclomatic(m)},
                   {"nodes", ast_node_count(m.body)},
                   {"statements", statement_count(m.body)},
                   {"pure", is_pure(program, m.name)},
                   {"triviality", triviality_name(classify(m))}};
  }
  if (all.empty()) {
    log.error(file.string() + " has no method " + method);
    return kExitUsage;
  }
  out << all.dump(2) << '\n';
  return kExitOk;
}

int cmd_dataset(const Common& c, const fs::path& dir, std::ostream& out, const Log& log) {
  if (!fs::is_directory(dir)) {
    log.error(dir.string() + " is not a directory");
    return kExitUsage;
  }
  const std::vector<Target> targets = discover_targets(dir);
  std::vector<MethodRecord> records(targets.size());
  const long n = static_cast<long>(targets.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) records[i] = evaluate_target(targets[i], c.cfg, ReplayMode::Serial);

  for (std::size_t i = 0; i < targets.size(); ++i) {
    const MethodRecord& r = records[i];
    const fs::path mdir = c.cfg.out_dir / "methods" / targets[i].file.stem();
    if (!r.error.empty()) log.warn(r.file + ":" + r.name + ": " + r.error);
    if (r.result) write_inference_artifacts(mdir, r.name, *r.result, false);
    if (r.verdict) write_file(mdir / (r.name + ".verdict.json"), to_json(*r.verdict).dump(2) + "\n");
  }
  emit_dataset(records, c.cfg.out_dir);
  if (c.cfg.verbosity >= 0) {
    const Json s = summary_json(records);
    out << "dataset: " << s["methods"] << " methods, " << s["correct"] << " correct, "
        << s["failed"] << " failed\n";
  }
  return kExitOk;
}

}  // namespace

InferOptions RunConfig::infer_options(ReplayMode mode) const {
  InferOptions o;
  o.max_rounds = max_rounds;
  o.reduce = reduce;
  o.exec.budget = budget;
  o.mode = mode;
  return o;
}

std::vector<Target> discover_targets(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".mpl") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Target> out;
  for (const auto& f : files) {
    Program p;
    try {
      p = parse_unresolved(read_file(f));
    } catch (const std::exception&) {
      // Keep the file as a target so its failure is recorded.
      out.push_back({f, f.stem().string(), {}});
      continue;
    }
    for (const auto& m : p.methods) {
      const std::string& name = m.name;
      fs::path side = f.parent_path() / (name + ".domain.json");
      if (fs::exists(side)) out.push_back({f, name, side});
    }
  }
  return out;
}

MethodRecord evaluate_target(const Target& t, const RunConfig& cfg, ReplayMode mode) {
  MethodRecord rec;
  rec.name = t.method;
  rec.file = t.file.filename().string();
  try {
    const Program program = load_program(t.file);
    const MethodDef* m = program.find_method(t.method);
    if (!m) throw std::runtime_error("no method " + t.method);
    rec.source = pretty_print(program, *m);
    const std::vector<Environment> envs = enumerate_envs(program, *m, load_domain_spec(t.domain));
    InferenceResult r = infer(program, t.method, cfg.policy, cfg.infer_options(mode));
    ExecOptions exec;
    exec.budget = cfg.budget;
    rec.verdict = judge(program, t.method, r.precondition.program, r.precondition.method, envs,
                        exec, mode);
    rec.metrics = compute_metrics(r);
    rec.result = std::move(r);
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.result.reset();
    rec.verdict.reset();
    rec.metrics.reset();
  }
  return rec;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Infers crash-avoiding preconditions for MiniLang methods."};
  app.name("seedguard");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI or TOML file supplying option defaults");

  Common c;
  app.add_option("--seed", c.cfg.policy.rng_seed, "Fuzzer seed")->capture_default_str();
  app.add_option("--budget", c.cfg.budget, "Interpreter step budget per run")->capture_default_str();
  app.add_option("--out", c.cfg.out_dir, "Output directory")->capture_default_str();
  app.add_flag("--no-reduce", c.no_reduce, "Skip reduction of the converged precondition");
  app.add_option("--max-rounds", c.cfg.max_rounds, "Fuzzing round limit")->capture_default_str();
  app.add_option("--envs-per-round", c.cfg.policy.envs_per_round, "Environments per round")
      ->capture_default_str();
  app.add_option("--policy", c.policy_overrides,
                 "Generator setting KEY=VALUE (null_prob, int_pool, pool_prob, uniform_range, "
                 "array_len_range, object_depth_max)");
  app.add_flag("-v,--verbose", c.verbose, "More diagnostics on standard error");
  app.add_flag("-q,--quiet", c.quiet, "Only errors");

  fs::path file, suite, pre_file, domain, dir;
  std::string method, pre_method;
  bool emit_seed = false;

  auto* infer_cmd = app.add_subcommand("infer", "Infer a precondition for one method");
  infer_cmd->add_option("file", file, "MiniLang source")->required()->check(CLI::ExistingFile);
  infer_cmd->add_option("--method", method, "Target method")->required();
  infer_cmd->add_flag("--emit-seed", emit_seed, "Also write the unguarded seed");

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a precondition against its suite");
  reduce_cmd->add_option("file", file, "Precondition source")->required()->check(CLI::ExistingFile);
  reduce_cmd->add_option("--suite", suite, "Regression suite (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  reduce_cmd->add_option("--method", method, "Precondition method (default: the *_pre method)");

  auto* judge_cmd = app.add_subcommand("judge", "Judge a precondition on an exhaustive domain");
  judge_cmd->add_option("file", file, "MiniLang source")->required()->check(CLI::ExistingFile);
  judge_cmd->add_option("--method", method, "Target method")->required();
  judge_cmd->add_option("--pre", pre_file, "Precondition source")->required()->check(CLI::ExistingFile);
  judge_cmd->add_option("--pre-method", pre_method, "Precondition method (default: <method>_pre)");
  judge_cmd->add_option("--domain", domain, "Domain sidecar (default: <method>.domain.json)")
      ->check(CLI::ExistingFile);

  auto* metrics_cmd = app.add_subcommand("metrics", "Print static metrics for methods in a file");
  metrics_cmd->add_option("file", file, "MiniLang source")->required()->check(CLI::ExistingFile);
  metrics_cmd->add_option("--method", method, "Only this method");

  auto* dataset_cmd = app.add_subcommand("dataset", "Run the pipeline over a corpus directory");
  dataset_cmd->add_option("dir", dir, "Directory of .mpl files with domain sidecars")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (e.get_exit_code() != 0) err << app.help();
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    c.finish();
  } catch (const std::exception& e) {
    Log(err, 0).error(e.what());
    return kExitUsage;
  }
  const Log log(err, c.cfg.verbosity);

  try {
    if (*infer_cmd) return cmd_infer(c, file, method, emit_seed, out, log);
    if (*reduce_cmd) return cmd_reduce(c, file, suite, method, out, log);
    if (*judge_cmd) return cmd_judge(c, file, method, pre_file, pre_method, domain, out, log);
    if (*metrics_cmd) return cmd_metrics(file, method, out, log);
    if (*dataset_cmd) return cmd_dataset(c, dir, out, log);
  } catch (const std::exception& e) {
    log.error(e.what());
  }
  return kExitUsage;
}

}  // namespace seedguard::cli
