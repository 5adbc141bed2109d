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


#include "seedguard/serialize.hpp"

#include <stdexcept>

namespace seedguard {

Json to_json(const EnvValue& v) {
  switch (v.kind) {
    case EnvValue::Kind::Int: return Json(v.num);
    case EnvValue::Kind::Bool: return Json(v.num != 0);
    case EnvValue::Kind::Null: return Json(nullptr);
    case EnvValue::Kind::Array: {
      Json a = Json::array();
      for (const auto& x : v.items) a.push_back(to_json(x));
      return a;
    }
    case EnvValue::Kind::Object: {
      Json o = Json::object();
      o["$class"] = v.cls;
      for (std::size_t i = 0; i < v.items.size(); ++i) o[v.field_names[i]] = to_json(v.items[i]);
      return o;
    }
  }
  return Json(nullptr);
}

Json to_json(const Environment& env) {
  Json a = Json::array();
  for (const auto& x : env.args) a.push_back(to_json(x));
  return a;
}

Json to_json(const CrashReport& c) {
  Json j;
  j["kind"] = crash_kind_name(c.kind);
  j["node_id"] = c.loc.node_id;
  j["display_line"] = c.loc.display_line;
  j["in_callee"] = c.in_callee;
  j["exception"] = c.exception_name;
  if (!c.callee_stack.empty()) {
    Json s = Json::array();
    for (const auto& f : c.callee_stack) s.push_back({{"method", f.method}, {"node_id", f.loc.node_id}});
    j["callee_stack"] = s;
  }
  return j;
}

Json to_json(const Outcome& o) {
  Json j;
  switch (o.kind) {
    case Outcome::Kind::Returned:
      j["outcome"] = "returned";
      if (o.is_ref)
        j["value"] = o.value_kind == EnvValue::Kind::Array ? "<array>" : "<object>";
      else if (o.value_kind == EnvValue::Kind::Bool)
        j["value"] = o.value != 0;
      else if (o.value_kind == EnvValue::Kind::Int)
        j["value"] = o.value;
      else
        j["value"] = nullptr;
      break;
    case Outcome::Kind::Crashed:
      j["outcome"] = "crashed";
      j["crash"] = to_json(o.crash);
      break;
    case Outcome::Kind::BudgetExceeded:
      j["outcome"] = "budget_exceeded";
      break;
  }
  return j;
}

const char* verdict_name(PreVerdict v) {
  switch (v) {
    case PreVerdict::True: return "true";
    case PreVerdict::False: return "false";
    case PreVerdict::Crashed: return "crashed";
    case PreVerdict::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

Json to_json(const PreOutcome& o) {
  Json j;
  j["verdict"] = verdict_name(o.verdict);
  if (o.verdict == PreVerdict::Crashed) j["crash"] = to_json(o.crash);
  return j;
}

EnvValue env_value_from_json(const Json& j) {
  if (j.is_null()) return EnvValue::Null();
  if (j.is_boolean()) return EnvValue::Bool(j.get<bool>());
  if (j.is_number_integer()) return EnvValue::Int(j.get<std::int64_t>());
  if (j.is_array()) {
    std::vector<EnvValue> xs;
    for (const auto& x : j) xs.push_back(env_value_from_json(x));
    return EnvValue::Array(std::move(xs));
  }
  if (j.is_object()) {
    auto it = j.find("$class");
    if (it == j.end() || !it->is_string())
      throw std::invalid_argument("object value without a \"$class\" member");
    std::vector<std::string> names;
    std::vector<EnvValue> values;
    for (auto f = j.begin(); f != j.end(); ++f) {
      if (f.key() == "$class") continue;
      names.push_back(f.key());
      values.push_back(env_value_from_json(f.value()));
    }
    return EnvValue::Object(it->get<std::string>(), std::move(names), std::move(values));
  }
  throw std::invalid_argument("unsupported JSON value in environment: " + j.dump());
}

Environment environment_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("environment must be a JSON array");
  Environment env;
  for (const auto& x : j) env.args.push_back(env_value_from_json(x));
  return env;
}

std::string env_key(const Environment& env) { return to_json(env).dump(); }

}  // namespace seedguard
