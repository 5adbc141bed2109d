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

#ifndef SEEDGUARD_FRONTEND_HPP_
#define SEEDGUARD_FRONTEND_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "seedguard/ast.hpp"

namespace seedguard {

// Side table produced by pretty_print. `preorder` lists every node id in the
// order the printer visits them, which is also the order parse_program
// assigns ids, so re-parsing printed text with this map restores the ids.
struct SourceMap {
  std::vector<NodeId> preorder;
  std::map<NodeId, int> line_of;

  int line(NodeId id) const {
    auto it = line_of.find(id);
    return it == line_of.end() ? 0 : it->second;
  }
};

// Parses and resolves. `ids` optionally renumbers the fresh tree.
// Throws ParseError or ResolveError.
Program parse_program(std::string_view text, const SourceMap* ids = nullptr);

// Parses without name/type resolution.
Program parse_unresolved(std::string_view text);

// Checks names, types, inheritance and return paths, and fills in the
// annotation fields (types, slots, field/method/class indices). Safe to call
// repeatedly; transformation passes call it on every output.
void resolve(Program& program);

std::string pretty_print(const Program& program, SourceMap* map = nullptr);
std::string pretty_print(const Program& program, const MethodDef& method);
std::string print_expr(const Expr& e);

}  // namespace seedguard

#endif  // SEEDGUARD_FRONTEND_HPP_
