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

// Structural queries over MiniLang trees.

#ifndef SEEDGUARD_AST_UTIL_HPP_
#define SEEDGUARD_AST_UTIL_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "seedguard/ast.hpp"

namespace seedguard {

// Equality that ignores NodeIds and resolver annotations.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Stmt& a, const Stmt& b);
bool structurally_equal(const std::vector<Stmt>& a, const std::vector<Stmt>& b);
bool structurally_equal(const MethodDef& a, const MethodDef& b);
bool structurally_equal(const Program& a, const Program& b);

std::size_t ast_node_count(const Expr& e);
std::size_t ast_node_count(const Stmt& s);
std::size_t ast_node_count(const std::vector<Stmt>& body);
std::size_t statement_count(const std::vector<Stmt>& body);

// Expressions a simple statement evaluates, innermost first and left to
// right. Both operands of && and || are listed. For assignments the target's
// subexpressions come first, then the right-hand side, then the target node
// itself (the store). If/While contribute their condition only; Block,
// TryCatch, Throw and Break contribute nothing.
std::vector<const Expr*> evaluated_exprs(const Stmt& s);

// Pre-order walks.
void for_each_expr(const Expr& e, const std::function<void(const Expr&)>& fn);
void for_each_stmt(const std::vector<Stmt>& body,
                   const std::function<void(const Stmt&)>& fn);
void for_each_expr(const std::vector<Stmt>& body,
                   const std::function<void(const Expr&)>& fn);
void collect_ids(const std::vector<Stmt>& body, std::vector<NodeId>& out);

// Locates a statement by id anywhere in `body`: the containing list and the
// index inside it.
struct StmtSlot {
  std::vector<Stmt>* block = nullptr;
  std::size_t index = 0;
  Stmt* get() const { return block ? &(*block)[index] : nullptr; }
};
StmtSlot find_stmt(std::vector<Stmt>& body, NodeId id);
const Stmt* find_stmt(const std::vector<Stmt>& body, NodeId id);

// True if a statement list cannot complete normally (every path returns,
// throws, or loops forever).
bool always_exits(const std::vector<Stmt>& body);

bool contains_call(const Expr& e);
// Field or array access, division or remainder, cast, or call anywhere in e.
bool may_crash(const Expr& e);
// Variables, literals, null.
bool is_trivial(const Expr& e);

bool uses_var(const std::vector<Stmt>& body, const std::string& name);

// Indices of `root` and every method it can call, directly or not, in
// ascending order. Requires a resolved program.
std::vector<int> reachable_methods(const Program& p, int root);

}  // namespace seedguard

#endif  // SEEDGUARD_AST_UTIL_HPP_
