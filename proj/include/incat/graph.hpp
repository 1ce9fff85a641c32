#pragma once

/// @file graph.hpp
/// @brief Graph-level helpers on a single membership relation: cycles,
/// ranks and transitive closures.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "incat/errors.hpp"
#include "incat/structure.hpp"

namespace incat {

/// A directed cycle of r, listed child-to-parent and closing on its first
/// element (a self-loop on v is {v, v}), or nullopt when r is acyclic. The
/// search runs from roots in ascending id, members in ascending id, so the
/// result is deterministic.
inline std::optional<std::vector<std::size_t>> find_cycle(const MembershipRelation& r) {
  const std::size_t n = r.domain_size();
  std::vector<std::uint8_t> state(n, 0);  // 0 new, 1 on stack, 2 done
  for (ElementId root = 0; root < n; ++root) {
    if (state[root] != 0) continue;
    std::vector<std::pair<ElementId, std::size_t>> stack{{root, 0}};
    state[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      auto members = r.members(v);
      if (next == members.size()) {
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      const ElementId m = members[next++];
      if (state[m] == 2) continue;
      if (state[m] == 1) {
        std::vector<std::size_t> cycle{m};
        for (auto f = stack.rbegin(); f->first != m; ++f) cycle.push_back(f->first);
        cycle.push_back(m);
        return cycle;
      }
      state[m] = 1;
      stack.emplace_back(m, 0);
    }
  }
  return std::nullopt;
}

/// rank(x) = 0 for member-less x, else 1 + the largest member rank. Throws
/// IllFoundedError on a cyclic relation.
inline std::vector<std::uint32_t> element_ranks(const MembershipRelation& r, Tag tag = Tag::e1) {
  const std::size_t n = r.domain_size();
  std::vector<std::uint32_t> rank(n, 0);
  std::vector<std::size_t> pending(n);
  std::vector<ElementId> ready;
  for (ElementId x = 0; x < n; ++x) {
    pending[x] = r.members(x).size();
    if (pending[x] == 0) ready.push_back(x);
  }
  std::size_t done = 0;
  while (!ready.empty()) {
    const ElementId m = ready.back();
    ready.pop_back();
    ++done;
    for (ElementId p : r.parents(m)) {
      rank[p] = std::max(rank[p], rank[m] + 1);
      if (--pending[p] == 0) ready.push_back(p);
    }
  }
  if (done != n) throw IllFoundedError(tag_number(tag), *find_cycle(r));
  return rank;
}

/// Members, members of members, and so on; with include_self, x itself as
/// well. Sorted by id. Terminates on cyclic relations too.
inline std::vector<ElementId> transitive_closure(const MembershipRelation& r, ElementId x,
                                                 bool include_self) {
  std::vector<bool> seen(r.domain_size(), false);
  std::vector<ElementId> out;
  std::vector<ElementId> stack(r.members(x).begin(), r.members(x).end());
  if (include_self) {
    seen[x] = true;
    out.push_back(x);
  }
  while (!stack.empty()) {
    const ElementId v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    out.push_back(v);
    for (ElementId m : r.members(v)) {
      if (!seen[m]) stack.push_back(m);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Ranks computed on demand for the part of a relation below the requested
/// elements, so a cycle elsewhere does not get in the way. Throws
/// IllFoundedError when a cycle lies below the requested element.
class RankCache {
 public:
  RankCache(const MembershipRelation& r, Tag tag) : r_(&r), tag_(tag), rank_(r.domain_size(), kUnknown) {}

  std::uint32_t operator()(ElementId x) {
    if (rank_[x] >= kActive) visit(x);
    return rank_[x];
  }

 private:
  static constexpr std::uint32_t kUnknown = UINT32_MAX, kActive = UINT32_MAX - 1;

  void visit(ElementId root) {
    std::vector<std::pair<ElementId, std::size_t>> stack{{root, 0}};
    rank_[root] = kActive;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      auto members = r_->members(v);
      if (next < members.size()) {
        const ElementId m = members[next++];
        if (rank_[m] == kActive) {
          std::vector<std::size_t> cycle{m};
          for (auto f = stack.rbegin(); f->first != m; ++f) cycle.push_back(f->first);
          cycle.push_back(m);
          for (auto& k : rank_) {
            if (k == kActive) k = kUnknown;
          }
          throw IllFoundedError(tag_number(tag_), std::move(cycle));
        }
        if (rank_[m] == kUnknown) {
          rank_[m] = kActive;
          stack.emplace_back(m, 0);
        }
        continue;
      }
      std::uint32_t k = 0;
      for (ElementId m : members) k = std::max(k, rank_[m] + 1);
      rank_[v] = k;
      stack.pop_back();
    }
  }

  const MembershipRelation* r_;
  Tag tag_;
  std::vector<std::uint32_t> rank_;
};

}  // namespace incat
