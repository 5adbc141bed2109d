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


// JSON encodings for environments, outcomes and crash reports.
//
// Environments are JSON arrays of argument values: ints as numbers, bools as
// booleans, null as null, arrays as lists and objects as
// {"$class": name, field: value, ...}.

#ifndef SEEDGUARD_SERIALIZE_HPP_
#define SEEDGUARD_SERIALIZE_HPP_

#include <string>

#include "json.hpp"
#include "seedguard/interpreter.hpp"

namespace seedguard {

using Json = nlohmann::json;

Json to_json(const EnvValue& v);
Json to_json(const Environment& env);
Json to_json(const CrashReport& c);
Json to_json(const Outcome& o);
Json to_json(const PreOutcome& o);

// Throws std::invalid_argument on malformed input.
EnvValue env_value_from_json(const Json& j);
Environment environment_from_json(const Json& j);

// Compact one-line form; also serves as a hashable identity for an env.
std::string env_key(const Environment& env);

const char* verdict_name(PreVerdict v);

}  // namespace seedguard

#endif  // SEEDGUARD_SERIALIZE_HPP_
