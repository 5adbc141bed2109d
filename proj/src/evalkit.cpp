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


#include "seedguard/evalkit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "seedguard/ast_util.hpp"
#include "seedguard/frontend.hpp"
#include "seedguard/seedgen.hpp"

namespace seedguard {
namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kDomainSizeSaturated - b ? kDomainSizeSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kDomainSizeSaturated / b ? kDomainSizeSaturated : a * b;
}

int json_int(const Json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw DomainError(std::string(key) + " must be an integer");
  return j.at(key).get<int>();
}

ValueDomain value_domain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw DomainError("domain entry needs a string \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  ValueDomain d;
  if (kind == "int") {
    d.kind = ValueDomain::Kind::Int;
    if (j.contains("values")) {
      for (const auto& v : j.at("values")) {
        if (!v.is_number_integer()) throw DomainError("int values must be integers");
        d.ints.push_back(v.get<std::int64_t>());
      }
    } else {
      if (!j.contains("min") || !j.contains("max"))
        throw DomainError("int domain needs min/max or values");
      const auto lo = j.at("min").get<std::int64_t>();
      const auto hi = j.at("max").get<std::int64_t>();
      if (lo > hi) throw DomainError("int domain has min > max");
      if (hi - lo >= 1'000'000) throw DomainTooLarge("int range wider than 1000000");
      for (auto v = lo; v <= hi; ++v) d.ints.push_back(v);
    }
  } else if (kind == "bool") {
    d.kind = ValueDomain::Kind::Bool;
    if (j.contains("values")) {
      for (const auto& v : j.at("values")) {
        if (!v.is_boolean()) throw DomainError("bool values must be booleans");
        d.ints.push_back(v.get<bool>() ? 1 : 0);
      }
    } else {
      d.ints = {0, 1};
    }
  } else if (kind == "array") {
    d.kind = ValueDomain::Kind::Array;
    d.nullable = j.value("nullable", false);
    d.len_min = json_int(j, "len_min", 0);
    d.len_max = json_int(j, "len_max", d.len_min);
    if (d.len_min < 0 || d.len_min > d.len_max) throw DomainError("bad array length range");
    if (j.contains("elem")) d.elem.push_back(value_domain_from_json(j.at("elem")));
  } else if (kind == "object") {
    d.kind = ValueDomain::Kind::Object;
    d.nullable = j.value("nullable", false);
    if (j.contains("classes")) {
      for (const auto& [cls, fields] : j.at("classes").items()) {
        auto& slot = d.classes[cls];
        if (!fields.is_object()) throw DomainError("class " + cls + " needs a field object");
        for (const auto& [f, fd] : fields.items()) slot[f] = value_domain_from_json(fd);
      }
    }
  } else {
    throw DomainError("unknown domain kind \"" + kind + "\"");
  }
  return d;
}

// Binds a domain to a static type; a missing domain means the default value.
class Domains {
 public:
  explicit Domains(const Program& p) : p_(p) {}

  std::uint64_t size(const Type& t, const ValueDomain* d) const {
    if (!d) return 1;
    check_kind(t, *d);
    switch (d->kind) {
      case ValueDomain::Kind::Int:
      case ValueDomain::Kind::Bool: return d->ints.size();
      case ValueDomain::Kind::Array: {
        const ValueDomain* e = d->elem.empty() ? nullptr : &d->elem[0];
        const std::uint64_t per = size(t.element(), e);
        std::uint64_t total = d->nullable ? 1 : 0, pow = 1;
        for (int len = 0; len <= d->len_max; ++len) {
          if (len >= d->len_min) total = sat_add(total, pow);
          pow = sat_mul(pow, per);
        }
        return total;
      }
      case ValueDomain::Kind::Object: {
        std::uint64_t total = d->nullable ? 1 : 0;
        for (const auto& [name, fields] : d->classes) {
          const ClassDecl& cd = class_for(t, name);
          std::uint64_t prod = 1;
          for (const auto& f : cd.all_fields) prod = sat_mul(prod, size(f.type, find(fields, f.name)));
          for (const auto& [f, unused] : fields) {
            (void)unused;
            if (std::none_of(cd.all_fields.begin(), cd.all_fields.end(),
                             [&](const FieldDecl& fd) { return fd.name == f; }))
              throw DomainError("class " + name + " has no field " + f);
          }
          total = sat_add(total, prod);
        }
        return total;
      }
    }
    return 0;
  }

  std::vector<EnvValue> values(const Type& t, const ValueDomain* d) const {
    if (!d) return {default_value(t)};
    std::vector<EnvValue> out;
    switch (d->kind) {
      case ValueDomain::Kind::Int:
        for (auto v : d->ints) out.push_back(EnvValue::Int(v));
        break;
      case ValueDomain::Kind::Bool:
        for (auto v : d->ints) out.push_back(EnvValue::Bool(v != 0));
        break;
      case ValueDomain::Kind::Array: {
        if (d->nullable) out.push_back(EnvValue::Null());
        const auto elems = values(t.element(), d->elem.empty() ? nullptr : &d->elem[0]);
        for (int len = d->len_min; len <= d->len_max; ++len) {
          product(std::vector<std::vector<EnvValue>>(static_cast<std::size_t>(len), elems),
                  [&](std::vector<EnvValue> items) { out.push_back(EnvValue::Array(std::move(items))); });
        }
        break;
      }
      case ValueDomain::Kind::Object: {
        if (d->nullable) out.push_back(EnvValue::Null());
        for (const auto& [name, fields] : d->classes) {
          const ClassDecl& cd = class_for(t, name);
          std::vector<std::string> names;
          std::vector<std::vector<EnvValue>> axes;
          for (const auto& f : cd.all_fields) {
            names.push_back(f.name);
            axes.push_back(values(f.type, find(fields, f.name)));
          }
          product(axes, [&](std::vector<EnvValue> items) {
            out.push_back(EnvValue::Object(cd.name, names, std::move(items)));
          });
        }
        break;
      }
    }
    return out;
  }

  // Calls fn on every combination; the first axis varies slowest.
  template <class Fn>
  static void product(const std::vector<std::vector<EnvValue>>& axes, Fn&& fn) {
    for (const auto& a : axes)
      if (a.empty()) return;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
      std::vector<EnvValue> pick;
      pick.reserve(axes.size());
      for (std::size_t i = 0; i < axes.size(); ++i) pick.push_back(axes[i][idx[i]]);
      fn(std::move(pick));
      std::size_t k = axes.size();
      while (k > 0 && ++idx[k - 1] == axes[k - 1].size()) idx[--k] = 0;
      if (k == 0) return;
    }
  }

 private:
  static const ValueDomain* find(const std::map<std::string, ValueDomain>& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? nullptr : &it->second;
  }

  static EnvValue default_value(const Type& t) {
    if (t.kind == TypeKind::Int) return EnvValue::Int(0);
    if (t.kind == TypeKind::Bool) return EnvValue::Bool(false);
    return EnvValue::Null();
  }

  static void check_kind(const Type& t, const ValueDomain& d) {
    const bool ok = (t.kind == TypeKind::Int && d.kind == ValueDomain::Kind::Int) ||
                    (t.kind == TypeKind::Bool && d.kind == ValueDomain::Kind::Bool) ||
                    (t.kind == TypeKind::Array && d.kind == ValueDomain::Kind::Array) ||
                    (t.kind == TypeKind::Class && d.kind == ValueDomain::Kind::Object);
    if (!ok) throw DomainError("domain kind does not match type " + t.str());
  }

  const ClassDecl& class_for(const Type& t, const std::string& name) const {
    const int sub = p_.class_index(name);
    if (sub < 0) throw DomainError("unknown class " + name);
    if (!p_.is_subclass(sub, p_.class_index(t.cls)))
      throw DomainError("class " + name + " is not assignable to " + t.cls);
    return p_.classes[static_cast<std::size_t>(sub)];
  }

  const Program& p_;
};

const ValueDomain* param_domain(const DomainSpec& spec, const std::string& name) {
  auto it = spec.params.find(name);
  return it == spec.params.end() ? nullptr : &it->second;
}

void check_param_names(const MethodDef& m, const DomainSpec& spec) {
  for (const auto& [name, d] : spec.params) {
    (void)d;
    if (std::none_of(m.params.begin(), m.params.end(),
                     [&](const Param& p) { return p.name == name; }))
      throw DomainError(m.name + " has no parameter " + name);
  }
}

Json env_list_json(const std::vector<Environment>& envs, std::size_t limit) {
  Json a = Json::array();
  for (std::size_t i = 0; i < envs.size() && i < limit; ++i) a.push_back(to_json(envs[i]));
  return a;
}

Json kind_counts_json(const std::map<CrashKind, int>& counts) {
  Json j = Json::object();
  for (CrashKind k : kAllCrashKinds) {
    auto it = counts.find(k);
    j[crash_kind_name(k)] = it == counts.end() ? 0 : it->second;
  }
  return j;
}

}  // namespace

DomainSpec domain_spec_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("domain spec must be a JSON object");
  DomainSpec spec;
  if (j.contains("cap")) spec.cap = j.at("cap").get<std::uint64_t>();
  if (j.contains("params"))
    for (const auto& [name, d] : j.at("params").items()) spec.params[name] = value_domain_from_json(d);
  return spec;
}

DomainSpec load_domain_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
  return domain_spec_from_json(j);
}

std::uint64_t domain_size(const Program& program, const MethodDef& method, const DomainSpec& spec) {
  check_param_names(method, spec);
  Domains doms(program);
  std::uint64_t total = 1;
  for (const auto& p : method.params) total = sat_mul(total, doms.size(p.type, param_domain(spec, p.name)));
  return total;
}

std::vector<Environment> enumerate_envs(const Program& program, const MethodDef& method,
                                        const DomainSpec& spec) {
  const std::uint64_t total = domain_size(program, method, spec);
  Domains doms(program);
  for (const auto& p : method.params) {
    if (doms.size(p.type, param_domain(spec, p.name)) > spec.cap)
      throw DomainTooLarge("domain of " + p.name + " exceeds the cap of " + std::to_string(spec.cap));
  }
  if (total > spec.cap)
    throw DomainTooLarge(method.name + ": " +
                         (total == kDomainSizeSaturated ? std::string("overflowing")
                                                        : std::to_string(total)) +
                         " environments exceed the cap of " + std::to_string(spec.cap));
  std::vector<std::vector<EnvValue>> axes;
  for (const auto& p : method.params) axes.push_back(doms.values(p.type, param_domain(spec, p.name)));
  std::vector<Environment> out;
  out.reserve(static_cast<std::size_t>(total));
  Domains::product(axes, [&](std::vector<EnvValue> args) { out.push_back(Environment{std::move(args)}); });
  return out;
}

Verdict judge(const Program& program, std::string_view method, const Program& pre_program,
              std::string_view pre_method, const std::vector<Environment>& envs,
              const ExecOptions& exec, ReplayMode mode) {
  const int mi = program.method_index(method);
  const int pi = pre_program.method_index(pre_method);
  if (mi < 0) throw std::invalid_argument("no method " + std::string(method));
  if (pi < 0) throw std::invalid_argument("no method " + std::string(pre_method));
  const auto m_out = replay(program, mi, envs, exec, mode);
  const auto p_out = replay(pre_program, pi, envs, exec, mode);
  Verdict v;
  for (std::size_t i = 0; i < envs.size(); ++i) {
    if (m_out[i].kind == Outcome::Kind::BudgetExceeded) {
      ++v.skipped_budget;
      continue;
    }
    ++v.judged;
    const PreVerdict pre = to_pre_outcome(p_out[i]).verdict;
    if (pre == PreVerdict::Crashed || pre == PreVerdict::BudgetExceeded) {
      v.pre_crashes.push_back(envs[i]);
    } else if (m_out[i].crashed() && pre == PreVerdict::True) {
      v.unsafe_witnesses.push_back(envs[i]);
    } else if (m_out[i].returned() && pre == PreVerdict::False) {
      v.nonmaximal_witnesses.push_back(envs[i]);
    }
  }
  v.safe = v.unsafe_witnesses.empty();
  v.maximal = v.nonmaximal_witnesses.empty();
  return v;
}

Json to_json(const Verdict& v) {
  constexpr std::size_t kShown = 3;
  return {{"safe", v.safe},
          {"maximal", v.maximal},
          {"correct", v.correct()},
          {"judged", v.judged},
          {"skipped_budget", v.skipped_budget},
          {"unsafe_count", v.unsafe_witnesses.size()},
          {"nonmaximal_count", v.nonmaximal_witnesses.size()},
          {"pre_crash_count", v.pre_crashes.size()},
          {"unsafe_witnesses", env_list_json(v.unsafe_witnesses, kShown)},
          {"nonmaximal_witnesses", env_list_json(v.nonmaximal_witnesses, kShown)},
          {"pre_crashes", env_list_json(v.pre_crashes, kShown)}};
}

int cyclomatic(const MethodDef& method) {
  int cc = 1;
  for_each_stmt(method.body, [&](const Stmt& s) {
    if (s.kind == StmtKind::If || s.kind == StmtKind::While || s.kind == StmtKind::TryCatch) ++cc;
  });
  for_each_expr(method.body, [&](const Expr& e) {
    if (e.kind == ExprKind::Binary && (e.binop == BinOp::And || e.binop == BinOp::Or)) ++cc;
  });
  return cc;
}

bool is_pure(const Program& program, std::string_view method) {
  const int root = program.method_index(method);
  if (root < 0) throw std::invalid_argument("no method " + std::string(method));
  for (int mi : reachable_methods(program, root)) {
    bool store = false;
    for_each_stmt(program.methods[static_cast<std::size_t>(mi)].body, [&](const Stmt& s) {
      if (s.kind == StmtKind::Assign &&
          (s.exprs[0].kind == ExprKind::Field || s.exprs[0].kind == ExprKind::Index))
        store = true;
    });
    if (store) return false;
  }
  return true;
}

const char* triviality_name(Triviality t) {
  switch (t) {
    case Triviality::TriviallyTrue: return "TriviallyTrue";
    case Triviality::AlwaysFalse: return "AlwaysFalse";
    case Triviality::NonTrivial: return "NonTrivial";
  }
  return "?";
}

Triviality classify(const MethodDef& pre) {
  if (pre.body.size() == 1 && pre.body[0].kind == StmtKind::Return &&
      pre.body[0].exprs.size() == 1 && pre.body[0].exprs[0].kind == ExprKind::BoolLit)
    return pre.body[0].exprs[0].value ? Triviality::TriviallyTrue : Triviality::AlwaysFalse;
  return Triviality::NonTrivial;
}

MetricsRecord compute_metrics(const InferenceResult& r) {
  MetricsRecord m;
  const PreconditionProgram& before = r.unreduced;
  const PreconditionProgram& after = r.precondition;
  m.cc_before = cyclomatic(before.pre());
  m.cc_after = cyclomatic(after.pre());
  m.nodes_before = ast_node_count(before.pre().body);
  m.nodes_after = ast_node_count(after.pre().body);
  m.pure_before = is_pure(before.program, before.method);
  m.pure_after = is_pure(after.program, after.method);
  m.rounds_used = r.rounds_used;
  for (CrashKind k : kAllCrashKinds) m.checks_by_kind[k] = 0;
  for (const auto& c : r.checks) ++m.checks_by_kind[c.kind];
  m.triviality = classify(after.pre());
  return m;
}

Json to_json(const MetricsRecord& m) {
  return {{"cc_before", m.cc_before},
          {"cc_after", m.cc_after},
          {"nodes_before", m.nodes_before},
          {"nodes_after", m.nodes_after},
          {"pure_before", m.pure_before},
          {"pure_after", m.pure_after},
          {"rounds_used", m.rounds_used},
          {"checks_by_kind", kind_counts_json(m.checks_by_kind)},
          {"triviality", triviality_name(m.triviality)}};
}

std::vector<CrashPoint> crash_points(const Program& program, std::string_view method,
                                     const std::vector<Environment>& envs, const ExecOptions& exec,
                                     ReplayMode mode) {
  const int mi = program.method_index(method);
  if (mi < 0) throw std::invalid_argument("no method " + std::string(method));
  std::vector<CrashPoint> pts;
  for (const Outcome& o : replay(program, mi, envs, exec, mode))
    if (o.crashed()) pts.push_back({o.crash.kind, o.crash.loc.node_id, o.crash.in_callee});
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Json record_json(const MethodRecord& r) {
  Json j;
  j["name"] = r.name;
  j["file"] = r.file;
  j["source"] = r.source;
  if (!r.error.empty()) {
    j["error"] = r.error;
    return j;
  }
  if (r.result) {
    const InferenceResult& res = *r.result;
    j["precondition"] = print_precondition(res.precondition);
    j["converged"] = res.converged;
    j["rounds"] = res.rounds_used;
    j["crash_rounds"] = res.crash_rounds;
    Json checks = Json::array();
    for (const auto& c : res.checks)
      checks.push_back({{"kind", crash_kind_name(c.kind)},
                        {"node_id", c.loc.node_id},
                        {"in_callee", c.in_callee}});
    j["checks"] = checks;
  }
  if (r.metrics) {
    j["metrics"] = to_json(*r.metrics);
    j["triviality"] = triviality_name(r.metrics->triviality);
  }
  if (r.verdict) j["verdict"] = to_json(*r.verdict);
  return j;
}

Json summary_json(const std::vector<MethodRecord>& records) {
  std::map<CrashKind, int> kinds;
  for (CrashKind k : kAllCrashKinds) kinds[k] = 0;
  std::map<std::string, int> triv;
  for (Triviality t : {Triviality::TriviallyTrue, Triviality::AlwaysFalse, Triviality::NonTrivial})
    triv[triviality_name(t)] = 0;
  int failed = 0, converged = 0, judged = 0, correct = 0, measured = 0;
  int pure_before = 0, pure_after = 0, became_pure = 0;
  double nodes_before = 0, nodes_after = 0, cc_before = 0, cc_after = 0;
  for (const auto& r : records) {
    if (!r.error.empty()) {
      ++failed;
      continue;
    }
    if (r.result && r.result->converged) ++converged;
    if (r.verdict) {
      ++judged;
      if (r.verdict->correct()) ++correct;
    }
    if (r.result)
      for (const auto& c : r.result->checks) ++kinds[c.kind];
    if (r.metrics) {
      const MetricsRecord& m = *r.metrics;
      ++measured;
      ++triv[triviality_name(m.triviality)];
      nodes_before += static_cast<double>(m.nodes_before);
      nodes_after += static_cast<double>(m.nodes_after);
      cc_before += m.cc_before;
      cc_after += m.cc_after;
      pure_before += m.pure_before;
      pure_after += m.pure_after;
      became_pure += !m.pure_before && m.pure_after;
    }
  }
  int total_checks = 0;
  for (const auto& [k, n] : kinds) {
    (void)k;
    total_checks += n;
  }
  auto mean = [&](double x) { return measured ? x / measured : 0.0; };
  return {{"methods", records.size()},
          {"failed", failed},
          {"converged", converged},
          {"judged", judged},
          {"correct", correct},
          {"checks_total", total_checks},
          {"checks_by_kind", kind_counts_json(kinds)},
          {"triviality", triv},
          {"mean_nodes_before", mean(nodes_before)},
          {"mean_nodes_after", mean(nodes_after)},
          {"mean_cc_before", mean(cc_before)},
          {"mean_cc_after", mean(cc_after)},
          {"pure_before", pure_before},
          {"pure_after", pure_after},
          {"became_pure", became_pure}};
}

void emit_dataset(const std::vector<MethodRecord>& records, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  std::ofstream jsonl(dir / "dataset.jsonl", std::ios::binary);
  if (!jsonl) throw std::runtime_error("cannot write " + (dir / "dataset.jsonl").string());
  for (const auto& r : records) jsonl << record_json(r).dump() << '\n';
  std::ofstream summary(dir / "summary.json", std::ios::binary);
  if (!summary) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
  summary << summary_json(records).dump(2) << '\n';
  if (!jsonl.flush() || !summary.flush()) throw std::runtime_error("write failed in " + dir.string());
}

}  // namespace seedguard
