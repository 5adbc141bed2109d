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


#include "seedguard/testgen.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "seedguard/serialize.hpp"

namespace seedguard {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename T>
T parse_number(std::string_view key, std::string_view s) {
  T v{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw std::invalid_argument("bad value for " + std::string(key) + ": '" + std::string(s) + "'");
  return v;
}

double parse_double(std::string_view key, std::string_view s) {
  std::string buf(s);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(buf, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != buf.size() || buf.empty())
    throw std::invalid_argument("bad value for " + std::string(key) + ": '" + buf + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// "lo..hi"
std::pair<std::int64_t, std::int64_t> parse_range(std::string_view key, std::string_view s) {
  auto dots = s.find("..");
  if (dots == std::string_view::npos)
    throw std::invalid_argument("bad range for " + std::string(key) + ": expected lo..hi");
  return {parse_number<std::int64_t>(key, trim(s.substr(0, dots))),
          parse_number<std::int64_t>(key, trim(s.substr(dots + 2)))};
}

class Generator {
 public:
  Generator(const Program& p, const GenPolicy& pol, Rng& rng) : p_(p), pol_(pol), rng_(rng) {}

  EnvValue value(const Type& t, int depth) {
    switch (t.kind) {
      case TypeKind::Int: return EnvValue::Int(integer());
      case TypeKind::Bool: return EnvValue::Bool(rng_.below(2) == 1);
      case TypeKind::Array: {
        if (depth > pol_.object_depth_max || rng_.chance(pol_.null_prob)) return EnvValue::Null();
        auto len = rng_.between(pol_.array_len_min, pol_.array_len_max);
        std::vector<EnvValue> items;
        for (std::int64_t i = 0; i < len; ++i) items.push_back(value(t.element(), depth + 1));
        return EnvValue::Array(std::move(items));
      }
      case TypeKind::Class: {
        if (depth > pol_.object_depth_max || rng_.chance(pol_.null_prob)) return EnvValue::Null();
        auto subs = p_.subclasses_of(p_.class_index(t.cls));
        const ClassDecl& cd = p_.classes[subs[rng_.below(subs.size())]];
        std::vector<std::string> names;
        std::vector<EnvValue> vals;
        for (const auto& f : cd.all_fields) {
          names.push_back(f.name);
          vals.push_back(value(f.type, depth + 1));
        }
        return EnvValue::Object(cd.name, std::move(names), std::move(vals));
      }
      default:
        return EnvValue::Null();
    }
  }

 private:
  std::int64_t integer() {
    if (!pol_.int_pool.empty() && rng_.chance(pol_.pool_prob))
      return pol_.int_pool[rng_.below(pol_.int_pool.size())];
    return rng_.between(pol_.uniform_min, pol_.uniform_max);
  }

  const Program& p_;
  const GenPolicy& pol_;
  Rng& rng_;
};

}  // namespace

void GenPolicy::validate() const {
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  };
  prob(null_prob, "null_prob");
  prob(pool_prob, "pool_prob");
  if (uniform_min > uniform_max) throw std::invalid_argument("empty uniform int range");
  if (array_len_min < 0 || array_len_min > array_len_max)
    throw std::invalid_argument("array_len_range must be a non-empty range of lengths");
  if (object_depth_max < 0) throw std::invalid_argument("object_depth_max must be non-negative");
  if (envs_per_round < 0) throw std::invalid_argument("envs_per_round must be non-negative");
}

bool set_policy_field(GenPolicy& policy, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "rng_seed") {
    policy.rng_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "null_prob") {
    policy.null_prob = parse_double(key, value);
  } else if (key == "pool_prob") {
    policy.pool_prob = parse_double(key, value);
  } else if (key == "int_pool") {
    policy.int_pool.clear();
    std::string_view rest = value;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      auto item = trim(rest.substr(0, comma));
      if (!item.empty()) policy.int_pool.push_back(parse_number<std::int64_t>(key, item));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  } else if (key == "uniform_range") {
    std::tie(policy.uniform_min, policy.uniform_max) = parse_range(key, value);
  } else if (key == "array_len_range") {
    auto [lo, hi] = parse_range(key, value);
    policy.array_len_min = static_cast<int>(lo);
    policy.array_len_max = static_cast<int>(hi);
  } else if (key == "object_depth_max") {
    policy.object_depth_max = parse_number<int>(key, value);
  } else if (key == "envs_per_round") {
    policy.envs_per_round = parse_number<int>(key, value);
  } else {
    return false;
  }
  return true;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(eng_());  // full 64-bit range
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span));
}

double Rng::unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

std::uint64_t round_seed(std::uint64_t rng_seed, std::uint64_t round_index) {
  return splitmix64(rng_seed ^ splitmix64(round_index + 0x632be59bd9b4e019ULL));
}

Environment generate_env(const Program& program, const MethodDef& method,
                         const GenPolicy& policy, Rng& rng) {
  Generator g(program, policy, rng);
  Environment env;
  for (const auto& param : method.params) env.args.push_back(g.value(param.type, 1));
  return env;
}

std::vector<Environment> generate_round(const Program& program, const MethodDef& method,
                                        const GenPolicy& policy, int round_index) {
  policy.validate();
  Rng rng(round_seed(policy.rng_seed, static_cast<std::uint64_t>(round_index)));
  std::vector<Environment> envs;
  envs.reserve(static_cast<std::size_t>(policy.envs_per_round));
  for (int i = 0; i < policy.envs_per_round; ++i)
    envs.push_back(generate_env(program, method, policy, rng));
  return envs;
}

std::vector<TestCase> run_round(const Program& program, std::string_view target,
                                const GenPolicy& policy, int round_index,
                                const ExecOptions& opts, ReplayMode mode) {
  int mi = program.method_index(target);
  if (mi < 0) throw std::invalid_argument("no method named '" + std::string(target) + "'");
  auto envs = generate_round(program, program.methods[mi], policy, round_index);
  auto outcomes = replay(program, mi, envs, opts, mode);
  std::vector<TestCase> cases;
  cases.reserve(envs.size());
  for (std::size_t i = 0; i < envs.size(); ++i)
    cases.push_back({std::move(envs[i]), std::move(outcomes[i])});
  return cases;
}

RegressionSuite to_regression(const std::vector<Environment>& envs, const Program& pre,
                              std::string_view pre_method, const ExecOptions& opts,
                              ReplayMode mode) {
  int mi = pre.method_index(pre_method);
  if (mi < 0) throw std::invalid_argument("no method named '" + std::string(pre_method) + "'");
  auto outcomes = replay(pre, mi, envs, opts, mode);
  RegressionSuite suite;
  for (std::size_t i = 0; i < envs.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (o.kind == Outcome::Kind::BudgetExceeded) {
      ++suite.dropped_budget;
      continue;
    }
    if (o.crashed())
      throw NotConverged("precondition still crashes on " + env_key(envs[i]) + ": " +
                         to_json(o.crash).dump());
    suite.cases.push_back({envs[i], o.value != 0});
  }
  return suite;
}

void write_suite_jsonl(std::ostream& out, const RegressionSuite& suite) {
  for (const auto& c : suite.cases) {
    Json j;
    j["env"] = to_json(c.env);
    j["expected"] = c.expected;
    out << j.dump() << '\n';
  }
}

RegressionSuite read_suite_jsonl(std::istream& in) {
  RegressionSuite suite;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      Json j = Json::parse(line);
      suite.cases.push_back({environment_from_json(j.at("env")), j.at("expected").get<bool>()});
    } catch (const std::exception& e) {
      throw std::invalid_argument("suite line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return suite;
}

}  // namespace seedguard
