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


#include "seedguard/reducer.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>

#include "seedguard/ast_util.hpp"
#include "seedguard/frontend.hpp"
#include "seedguard/serialize.hpp"

namespace seedguard {

namespace {

// A statement list inside the precondition: the method body when owner is
// kNoNode, otherwise the then/loop/try body or the else/catch body of the
// owning statement.
struct BlockRef {
  NodeId owner = kNoNode;
  bool alt = false;
};

std::vector<Stmt>* locate(PreconditionProgram& pre, const BlockRef& ref) {
  MethodDef& m = pre.pre();
  if (ref.owner == kNoNode) return &m.body;
  Stmt* s = find_stmt(m.body, ref.owner).get();
  if (!s) return nullptr;
  return ref.alt ? &s->alt : &s->body;
}

// Breadth-first so enclosing blocks are reduced before the ones inside them.
std::vector<BlockRef> blocks_outer_first(const MethodDef& m) {
  std::vector<BlockRef> out{{kNoNode, false}};
  std::vector<const std::vector<Stmt>*> level{&m.body};
  while (!level.empty()) {
    std::vector<const std::vector<Stmt>*> next;
    for (const auto* b : level) {
      for (const auto& s : *b) {
        if (s.kind == StmtKind::If || s.kind == StmtKind::While ||
            s.kind == StmtKind::TryCatch || s.kind == StmtKind::Block) {
          out.push_back({s.id, false});
          next.push_back(&s.body);
          if (s.kind == StmtKind::If || s.kind == StmtKind::TryCatch) {
            out.push_back({s.id, true});
            next.push_back(&s.alt);
          }
        }
      }
    }
    level = std::move(next);
  }
  return out;
}

bool exits(const Stmt& s) { return always_exits(std::vector<Stmt>{s}); }

class Reducer {
 public:
  Reducer(const ReductionConstraint& c, ReductionStats* stats) : c_(c), stats_(stats) {
    std::unordered_set<std::string> seen;
    for (const auto& rc : c.suite.cases) {
      if (!seen.insert(env_key(rc.env)).second) continue;
      envs_.push_back(rc.env);
      expected_.push_back(rc.expected);
    }
  }

  bool valid(PreconditionProgram& cand) {
    try {
      resolve(cand.program);
    } catch (const ResolveError&) {
      if (stats_) ++stats_->rejected_ill_typed;
      return false;
    }
    if (stats_) ++stats_->candidates;
    const int mi = cand.program.method_index(cand.method);
    return first_mismatch(cand.program, mi, envs_, expected_, exec_, c_.mode) == kNoMismatch;
  }

  PreconditionProgram run(PreconditionProgram cur) {
    calibrate(cur);
    for (bool changed = true; changed;) {
      changed = false;
      for (const BlockRef& ref : blocks_outer_first(cur.pre())) changed |= ddmin(cur, ref);
      changed |= simplify(cur);
    }
    prune_provenance(cur);
    return cur;
  }

 private:
  // Candidates that drop a loop exit would otherwise spin until the full
  // budget on every environment. Each candidate gets a small multiple of the
  // smallest power-of-two budget the starting program needs.
  void calibrate(const PreconditionProgram& start) {
    exec_ = c_.exec;
    const int mi = start.program.method_index(start.method);
    for (std::int64_t b = 1024; b < c_.exec.budget; b *= 2) {
      ExecOptions probe = c_.exec;
      probe.budget = b;
      if (first_mismatch(start.program, mi, envs_, expected_, probe, c_.mode) == kNoMismatch) {
        exec_.budget = std::min(c_.exec.budget, 4 * b);
        return;
      }
    }
  }

  // Replaces the statements of one block by the subset `keep` (indices into
  // the current block) when the result stays valid.
  bool try_keep(PreconditionProgram& cur, const BlockRef& ref, const std::vector<std::size_t>& keep) {
    PreconditionProgram cand = cur;
    std::vector<Stmt>* b = locate(cand, ref);
    std::vector<Stmt> next;
    for (std::size_t i : keep) next.push_back(std::move((*b)[i]));
    *b = std::move(next);
    if (!valid(cand)) return false;
    cur = std::move(cand);
    if (stats_) ++stats_->accepted;
    return true;
  }

  static std::vector<std::vector<std::size_t>> split(const std::vector<std::size_t>& xs,
                                                     std::size_t n) {
    std::vector<std::vector<std::size_t>> parts;
    std::size_t start = 0;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t end = start + (xs.size() - start) / (n - k);
      parts.emplace_back(xs.begin() + static_cast<long>(start), xs.begin() + static_cast<long>(end));
      start = end;
    }
    return parts;
  }

  // Classic ddmin over the statements of one block.
  bool ddmin(PreconditionProgram& cur, const BlockRef& ref) {
    std::vector<Stmt>* b = locate(cur, ref);
    if (!b || b->empty()) return false;
    const std::size_t original = b->size();
    std::vector<std::size_t> keep(original);
    for (std::size_t i = 0; i < original; ++i) keep[i] = i;
    // Indices in `keep` refer to the block as it was on entry; after an
    // accepted step the block holds exactly `keep`, so they are remapped.
    auto accept = [&](const std::vector<std::size_t>& subset) {
      std::vector<std::size_t> local;
      for (std::size_t x : subset)
        local.push_back(static_cast<std::size_t>(std::find(keep.begin(), keep.end(), x) - keep.begin()));
      if (!try_keep(cur, ref, local)) return false;
      keep = subset;
      return true;
    };
    std::size_t n = 2;
    while (keep.size() >= 2) {
      auto parts = split(keep, std::min(n, keep.size()));
      bool reduced = false;
      for (const auto& part : parts) {
        if (part.size() < keep.size() && accept(part)) {
          n = std::max<std::size_t>(n - 1, 2);
          reduced = true;
          break;
        }
      }
      if (!reduced && parts.size() > 2) {
        for (const auto& part : parts) {
          std::vector<std::size_t> rest;
          for (std::size_t x : keep)
            if (std::find(part.begin(), part.end(), x) == part.end()) rest.push_back(x);
          if (accept(rest)) {
            n = std::max<std::size_t>(n - 1, 2);
            reduced = true;
            break;
          }
        }
      }
      if (!reduced) {
        if (n >= keep.size()) break;
        n = std::min(keep.size(), n * 2);
      }
    }
    if (keep.size() == 1) accept({});
    return keep.size() != original;
  }

  // Husk removal and flattening; each rewrite is kept only if valid.
  bool simplify(PreconditionProgram& cur) {
    bool any = false;
    for (bool again = true; again;) {
      again = false;
      std::vector<NodeId> ids;
      for_each_stmt(cur.pre().body, [&](const Stmt& s) { ids.push_back(s.id); });
      for (NodeId id : ids) {
        if (rewrite_at(cur, id)) {
          again = any = true;
          break;
        }
      }
      if (!again && drop_dead_code(cur)) again = any = true;
    }
    return any;
  }

  bool rewrite_at(PreconditionProgram& cur, NodeId id) {
    const Stmt* s = find_stmt(cur.pre().body, id).get();
    if (!s) return false;
    using Edit = void (*)(Program&, StmtSlot);
    std::vector<Edit> edits;
    if (s->kind == StmtKind::If) {
      if (s->has_else && s->alt.empty()) {
        edits.push_back([](Program&, StmtSlot at) { at.get()->has_else = false; });
      }
      if (s->body.empty() && !s->alt.empty()) {
        edits.push_back([](Program& p, StmtSlot at) {
          Stmt& x = *at.get();
          x.exprs[0] = make::unary(p, UnOp::Not, std::move(x.exprs[0]));
          x.body = std::move(x.alt);
          x.alt.clear();
          x.has_else = false;
        });
      }
    }
    if (s->kind == StmtKind::While && !s->body.empty() && s->body.back().kind == StmtKind::Break) {
      // A loop whose body always ends in break runs at most once.
      edits.push_back([](Program&, StmtSlot at) {
        Stmt& x = *at.get();
        x.kind = StmtKind::If;
        x.body.pop_back();
      });
    }
    if (s->kind == StmtKind::If || s->kind == StmtKind::TryCatch || s->kind == StmtKind::Block ||
        s->kind == StmtKind::While) {
      edits.push_back([](Program&, StmtSlot at) {
        std::vector<Stmt> inner = std::move(at.get()->body);
        at.block->erase(at.block->begin() + static_cast<long>(at.index));
        at.block->insert(at.block->begin() + static_cast<long>(at.index),
                         std::make_move_iterator(inner.begin()), std::make_move_iterator(inner.end()));
      });
    }
    for (Edit edit : edits) {
      PreconditionProgram cand = cur;
      edit(cand.program, find_stmt(cand.pre().body, id));
      if (valid(cand)) {
        cur = std::move(cand);
        if (stats_) ++stats_->accepted;
        return true;
      }
    }
    return false;
  }

  bool drop_dead_code(PreconditionProgram& cur) {
    for (const BlockRef& ref : blocks_outer_first(cur.pre())) {
      std::vector<Stmt>* b = locate(cur, ref);
      for (std::size_t i = 0; i + 1 < b->size(); ++i) {
        if (!exits((*b)[i])) continue;
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k <= i; ++k) keep.push_back(k);
        if (try_keep(cur, ref, keep)) return true;
        break;
      }
    }
    return false;
  }

  static void prune_provenance(PreconditionProgram& cur) {
    std::vector<NodeId> ids;
    collect_ids(cur.pre().body, ids);
    std::set<NodeId> live(ids.begin(), ids.end());
    live.insert(cur.pre().id);
    for (auto it = cur.provenance.begin(); it != cur.provenance.end();)
      it = live.count(it->first) ? std::next(it) : cur.provenance.erase(it);
    for (auto it = cur.relocated.begin(); it != cur.relocated.end();)
      it = live.count(it->second) ? std::next(it) : cur.relocated.erase(it);
  }

  const ReductionConstraint& c_;
  ExecOptions exec_;
  ReductionStats* stats_;
  std::vector<Environment> envs_;
  std::vector<bool> expected_;
};

}  // namespace

bool is_valid(const PreconditionProgram& candidate, const ReductionConstraint& constraint) {
  std::vector<Environment> envs;
  std::vector<bool> expected;
  for (const auto& c : constraint.suite.cases) {
    envs.push_back(c.env);
    expected.push_back(c.expected);
  }
  const int mi = candidate.program.method_index(candidate.method);
  if (mi < 0) return false;
  return first_mismatch(candidate.program, mi, envs, expected, constraint.exec, constraint.mode) ==
         kNoMismatch;
}

PreconditionProgram reduce(const PreconditionProgram& pre, const ReductionConstraint& constraint,
                           ReductionStats* stats) {
  Reducer r(constraint, stats);
  return r.run(pre);
}

}  // namespace seedguard
