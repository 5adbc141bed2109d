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


#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "seedguard/cli.hpp"
#include "seedguard/frontend.hpp"

using namespace seedguard;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "seedguard");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("seedguard_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = testing::read_text(e.path());
  return files;
}

const std::string kDivrem = (testing::corpus_dir() / "divrem.mpl").string();
const std::string kDivremDomain = (testing::corpus_dir() / "divideAndRemainder.domain.json").string();

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run_cli({"--help"}).code == cli::kExitOk);
  CHECK(run_cli({"infer", kDivrem}).code == cli::kExitUsage);
  CHECK(run_cli({"infer", "/nonexistent.mpl", "--method", "f"}).code == cli::kExitUsage);
  const fs::path d = fresh_dir("usage");
  CHECK(run_cli({"--out", d.string(), "infer", kDivrem, "--method", "nope"}).code == cli::kExitUsage);
  CHECK(run_cli({"--policy", "bogus=1", "infer", kDivrem, "--method", "divideAndRemainder"}).code ==
        cli::kExitUsage);
  CHECK(run_cli({"--policy", "null_prob", "infer", kDivrem, "--method", "divideAndRemainder"}).code ==
        cli::kExitUsage);
  fs::remove_all(d);
}

TEST_CASE("infer writes its artifacts") {
  const fs::path d = fresh_dir("infer");
  CliRun r = run_cli({"--out", d.string(), "infer", kDivrem, "--method", "divideAndRemainder", "--emit-seed"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("converged") != std::string::npos);
  for (const char* f : {"pre.mpl", "result.json", "suite.jsonl", "seed.mpl", "seed.provenance.json"})
    CHECK(fs::exists(d / (std::string("divideAndRemainder.") + f)));
  Program pre = parse_program(testing::read_text(d / "divideAndRemainder.pre.mpl"));
  CHECK(pre.find_method("divideAndRemainder_pre") != nullptr);
  Json res = Json::parse(testing::read_text(d / "divideAndRemainder.result.json"));
  CHECK(res["converged"] == true);

  // Round limit zero cannot converge.
  const fs::path d0 = fresh_dir("infer0");
  CHECK(run_cli({"--out", d0.string(), "--max-rounds", "0", "-q", "infer", kDivrem, "--method",
                 "divideAndRemainder"})
            .code == cli::kExitNotConverged);
  fs::remove_all(d);
  fs::remove_all(d0);
}

TEST_CASE("options from a config file") {
  const fs::path d = fresh_dir("config");
  write(d / "run.ini", "max-rounds=0\nquiet=true\n");
  CliRun r = run_cli({"--config", (d / "run.ini").string(), "--out", d.string(), "infer", kDivrem,
                      "--method", "divideAndRemainder"});
  CHECK(r.code == cli::kExitNotConverged);
  CHECK(r.out.empty());
  fs::remove_all(d);
}

TEST_CASE("reduce and judge round trip") {
  const fs::path d = fresh_dir("judge");
  REQUIRE(run_cli({"--out", d.string(), "--no-reduce", "-q", "infer", kDivrem, "--method",
                   "divideAndRemainder"})
              .code == cli::kExitOk);
  const fs::path pre = d / "divideAndRemainder.pre.mpl";
  CliRun red = run_cli({"--out", d.string(), "reduce", pre.string(), "--suite",
                        (d / "divideAndRemainder.suite.jsonl").string()});
  CHECK(red.code == cli::kExitOk);
  const fs::path reduced = d / "divideAndRemainder_pre.reduced.mpl";
  REQUIRE(fs::exists(reduced));
  Program before = parse_program(testing::read_text(pre));
  Program after = parse_program(testing::read_text(reduced));
  CHECK(ast_node_count(after.find_method("divideAndRemainder_pre")->body) <
        ast_node_count(before.find_method("divideAndRemainder_pre")->body));

  CHECK(run_cli({"--out", d.string(), "-q", "judge", kDivrem, "--method", "divideAndRemainder", "--pre",
                 reduced.string()})
            .code == cli::kExitOk);
  Json v = Json::parse(testing::read_text(d / "divideAndRemainder.verdict.json"));
  CHECK(v["safe"] == true);
  CHECK(v["maximal"] == true);

  write(d / "true.mpl",
        "class BigIntegerLike { int m_sign; int[] m_magnitude; }\n"
        "bool divideAndRemainder_pre(int dividend, BigIntegerLike val) { return true; }\n");
  CHECK(run_cli({"--out", d.string(), "-q", "judge", kDivrem, "--method", "divideAndRemainder", "--pre",
                 (d / "true.mpl").string()})
            .code == cli::kExitIncorrect);

  write(d / "tiny.json", R"({"cap":2,"params":{"dividend":{"kind":"int","min":0,"max":9}}})");
  CHECK(run_cli({"--out", d.string(), "-q", "judge", kDivrem, "--method", "divideAndRemainder", "--pre",
                 reduced.string(), "--domain", (d / "tiny.json").string()})
            .code == cli::kExitDomainTooLarge);
  fs::remove_all(d);
}

TEST_CASE("metrics output") {
  CliRun r = run_cli({"metrics", kDivrem, "--method", "divideAndRemainder"});
  REQUIRE(r.code == cli::kExitOk);
  Json j = Json::parse(r.out);
  CHECK(j["divideAndRemainder"]["cyclomatic"].get<int>() >= 1);
  CHECK(run_cli({"metrics", kDivrem, "--method", "nope"}).code == cli::kExitUsage);
}

TEST_CASE("dataset over an empty directory") {
  const fs::path in = fresh_dir("empty_in");
  const fs::path out = fresh_dir("empty_out");
  CHECK(run_cli({"--out", out.string(), "-q", "dataset", in.string()}).code == cli::kExitOk);
  CHECK(testing::read_text(out / "dataset.jsonl").empty());
  CHECK(Json::parse(testing::read_text(out / "summary.json"))["methods"] == 0);
  CHECK(run_cli({"dataset", (in / "missing").string()}).code == cli::kExitUsage);
  fs::remove_all(in);
  fs::remove_all(out);
}

TEST_CASE("dataset is deterministic and records failures") {
  const fs::path in = fresh_dir("ds_in");
  fs::copy_file(kDivrem, in / "divrem.mpl");
  fs::copy_file(kDivremDomain, in / "divideAndRemainder.domain.json");
  write(in / "broken.mpl", "int broken( {");
  write(in / "broken.domain.json", "{}");
  const fs::path a = fresh_dir("ds_a");
  const fs::path b = fresh_dir("ds_b");
  CHECK(run_cli({"--out", a.string(), "-q", "dataset", in.string()}).code == cli::kExitOk);
  CHECK(run_cli({"--out", b.string(), "-q", "dataset", in.string()}).code == cli::kExitOk);
  auto sa = snapshot(a);
  CHECK(sa == snapshot(b));
  CHECK(sa.count("methods/divrem/divideAndRemainder.verdict.json") == 1);
  Json s = Json::parse(sa.at("summary.json"));
  CHECK(s["methods"] == 2);
  CHECK(s["failed"] == 1);
  CHECK(s["correct"] == 1);
  for (const auto& p : {in, a, b}) fs::remove_all(p);
}
