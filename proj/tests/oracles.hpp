#pragma once

// Slow, obviously-correct reference implementations used to cross-check the
// library. None of them call into hf.hpp, graph.hpp or iso.hpp.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "incat/structure.hpp"

namespace oracle {

using incat::DualStructure;
using incat::Edge;
using incat::ElementId;
using incat::MembershipRelation;
using incat::Tag;

using Rows = std::vector<std::vector<ElementId>>;

inline MembershipRelation relation_from_rows(const Rows& rows) {
  std::vector<Edge> edges;
  for (ElementId p = 0; p < rows.size(); ++p) {
    for (ElementId c : rows[p]) edges.push_back({c, p});
  }
  return MembershipRelation(rows.size(), std::move(edges));
}

/// Relation whose edge set is the bitmask `mask` over all n*n ordered pairs.
inline MembershipRelation relation_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n * n; ++i) {
    if ((mask >> i) & 1u) edges.push_back({static_cast<ElementId>(i % n), static_cast<ElementId>(i / n)});
  }
  return MembershipRelation(n, std::move(edges));
}

/// Reachability by Floyd-Warshall; acyclic iff nothing reaches itself.
inline bool acyclic(const MembershipRelation& r) {
  const std::size_t n = r.domain_size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const Edge& e : r.edges()) reach[e.child][e.parent] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i][i]) return false;
  return true;
}

inline bool extensional(const MembershipRelation& r) {
  for (ElementId a = 0; a < r.domain_size(); ++a)
    for (ElementId b = a + 1; b < r.domain_size(); ++b)
      if (std::ranges::equal(r.members(a), r.members(b))) return false;
  return true;
}

/// Collapse as a canonical string: members rendered recursively, sorted as
/// strings and deduplicated. Requires an acyclic relation.
inline std::vector<std::string> collapse_strings(const MembershipRelation& r) {
  const std::size_t n = r.domain_size();
  std::vector<std::optional<std::string>> memo(n);
  std::function<std::string(ElementId)> go = [&](ElementId x) -> std::string {
    if (memo[x]) return *memo[x];
    std::set<std::string> members;
    for (ElementId m : r.members(x)) members.insert(go(m));
    std::string s = "{";
    for (const auto& m : members) s += (s.size() > 1 ? "," : "") + m;
    s += "}";
    memo[x] = s;
    return s;
  };
  std::vector<std::string> out;
  for (ElementId x = 0; x < n; ++x) out.push_back(go(x));
  return out;
}

/// V_n in the same canonical string form, by iterated power set.
inline std::set<std::string> v_level_strings(unsigned n) {
  std::vector<std::string> level;
  for (unsigned k = 0; k < n; ++k) {
    std::set<std::string> next;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << level.size()); ++mask) {
      std::set<std::string> members;
      for (std::size_t i = 0; i < level.size(); ++i)
        if ((mask >> i) & 1u) members.insert(level[i]);
      std::string s = "{";
      for (const auto& m : members) s += (s.size() > 1 ? "," : "") + m;
      next.insert(s + "}");
    }
    level.assign(next.begin(), next.end());
  }
  return {level.begin(), level.end()};
}

/// The n with (M, r) isomorphic to (V_n, in), if any.
inline std::optional<unsigned> isomorphic_v_level(const MembershipRelation& r) {
  if (!acyclic(r)) return std::nullopt;
  const auto strings = collapse_strings(r);
  const std::set<std::string> image(strings.begin(), strings.end());
  if (image.size() != strings.size()) return std::nullopt;
  static const std::vector<std::set<std::string>> levels = [] {
    std::vector<std::set<std::string>> out;
    for (unsigned n = 0; n <= 4; ++n) out.push_back(v_level_strings(n));
    return out;
  }();
  for (unsigned n = 0; n < levels.size(); ++n) {
    if (levels[n] == image) return n;
  }
  return std::nullopt;
}

// Transitive subsets of V_4, relabeled 0..k-1 in ascending code order.
inline std::vector<MembershipRelation> transitive_parts_of_v4() {
  std::vector<MembershipRelation> out;
  for (std::uint32_t subset = 1; subset < (1u << 16); ++subset) {
    bool transitive = true;
    for (unsigned x = 0; x < 16 && transitive; ++x) {
      if (!((subset >> x) & 1u)) continue;
      for (unsigned m = 0; m < 4; ++m)
        if (((x >> m) & 1u) && !((subset >> m) & 1u)) transitive = false;
    }
    if (!transitive) continue;
    std::vector<int> label(16, -1);
    int k = 0;
    for (unsigned x = 0; x < 16; ++x)
      if ((subset >> x) & 1u) label[x] = k++;
    std::vector<Edge> edges;
    for (unsigned x = 0; x < 16; ++x) {
      if (label[x] < 0) continue;
      for (unsigned m = 0; m < 4; ++m)
        if ((x >> m) & 1u) edges.push_back({static_cast<ElementId>(label[m]), static_cast<ElementId>(label[x])});
    }
    out.emplace_back(k, std::move(edges));
  }
  return out;
}

/// Every isomorphism (M, e1) -> (M, e2), by trying all permutations.
inline std::vector<std::vector<ElementId>> all_isomorphisms(const DualStructure& s) {
  const std::size_t n = s.size();
  std::vector<ElementId> p(n);
  for (ElementId i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<ElementId>> out;
  if (s.e1().edge_count() != s.e2().edge_count()) return out;
  do {
    bool ok = true;
    for (const Edge& e : s.e1().edges()) {
      if (!s.e2().contains(p[e.child], p[e.parent])) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Every psi-witness for (x, y): maps f on TC1({x}) onto TC2({y}) with
/// f(x) = y and u e1 w iff f(u) e2 f(w), found by enumerating all maps.
inline std::size_t count_psi_witnesses(const DualStructure& s, ElementId x, ElementId y) {
  auto closure = [](const MembershipRelation& r, ElementId v) {
    std::set<ElementId> seen{v};
    std::vector<ElementId> stack{v};
    while (!stack.empty()) {
      ElementId a = stack.back();
      stack.pop_back();
      for (ElementId m : r.members(a))
        if (seen.insert(m).second) stack.push_back(m);
    }
    return std::vector<ElementId>(seen.begin(), seen.end());
  };
  const auto dom = closure(s.e1(), x), cod = closure(s.e2(), y);
  std::vector<std::size_t> idx(dom.size(), 0);
  std::size_t count = 0;
  while (true) {
    std::map<ElementId, ElementId> f;
    for (std::size_t i = 0; i < dom.size(); ++i) f[dom[i]] = cod[idx[i]];
    bool ok = f[x] == y;
    std::set<ElementId> image;
    for (auto& [u, v] : f) image.insert(v);
    ok = ok && image.size() == cod.size();
    for (ElementId u : dom)
      for (ElementId w : dom)
        ok = ok && s.e1().contains(u, w) == s.e2().contains(f[u], f[w]);
    if (ok) ++count;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == cod.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return count;
}

// ---------------------------------------------------------------------------
// The fixed schema battery, evaluated directly.

namespace detail {

inline bool same_members(const MembershipRelation& r, ElementId b, const std::set<ElementId>& target) {
  auto m = r.members(b);
  return std::set<ElementId>(m.begin(), m.end()) == target;
}

inline bool realized(const MembershipRelation& r, const std::set<ElementId>& target) {
  for (ElementId b = 0; b < r.domain_size(); ++b)
    if (same_members(r, b, target)) return true;
  return false;
}

/// q is {{t}, {t, w}} in r.
inline bool is_pair(const MembershipRelation& r, ElementId q, ElementId t, ElementId w) {
  for (ElementId z = 0; z < r.domain_size(); ++z) {
    const bool single = same_members(r, z, {t});
    const bool twin = same_members(r, z, {t, w});
    if (r.contains(z, q) != (single || twin)) return false;
  }
  return true;
}

/// Some t in_pr u has a pair (t, w) in_pr g.
inline bool image_of(const MembershipRelation& pr, ElementId u, ElementId g, ElementId w) {
  for (ElementId t : pr.members(u))
    for (ElementId q : pr.members(g))
      if (is_pair(pr, q, t, w)) return true;
  return false;
}

/// Bounded replacement in r for the relation f(u, v).
inline bool bounded_replacement(const MembershipRelation& r, const std::function<bool(ElementId, ElementId)>& f) {
  const std::size_t n = r.domain_size();
  std::vector<std::vector<ElementId>> values(n);
  for (ElementId u = 0; u < n; ++u) {
    for (ElementId v = 0; v < n; ++v)
      if (f(u, v)) values[u].push_back(v);
    if (values[u].size() > 1) return true;  // not functional: holds vacuously
  }
  for (ElementId a = 0; a < n; ++a) {
    std::set<ElementId> target;
    for (ElementId u : r.members(a))
      for (ElementId v : values[u])
        if (!r.parents(v).empty()) target.insert(v);
    if (!realized(r, target)) return false;
  }
  return true;
}

}  // namespace detail

/// Truth of the six battery sentences, in the library's order:
/// theta-separation, level-map-replacement, case-two-replacement for e1,
/// then the same for e2.
inline std::vector<bool> battery_truth(const DualStructure& s) {
  std::vector<bool> out;
  const std::size_t n = s.size();
  for (Tag i : {Tag::e1, Tag::e2}) {
    const MembershipRelation& ri = s.relation(i);
    const MembershipRelation& rj = s.relation(incat::other(i));

    bool sep = true;
    for (ElementId u = 0; u < n && sep; ++u) {
      for (ElementId g = 0; g < n && sep; ++g) {
        for (ElementId a = 0; a < n && sep; ++a) {
          std::set<ElementId> target;
          for (ElementId w : ri.members(a))
            if (detail::image_of(rj, u, g, w)) target.insert(w);
          sep = detail::realized(ri, target);
        }
      }
    }
    out.push_back(sep);

    bool level = true;
    for (ElementId g = 0; g < n && level; ++g) {
      for (ElementId l = 0; l < n && level; ++l) {
        level = detail::bounded_replacement(ri, [&](ElementId u, ElementId v) {
          for (ElementId w = 0; w < n; ++w) {
            const bool want = rj.contains(w, l) && detail::image_of(ri, u, g, w);
            if (rj.contains(w, v) != want) return false;
          }
          return true;
        });
      }
    }
    out.push_back(level);

    bool inverse = true;
    for (ElementId h = 0; h < n && inverse; ++h) {
      inverse = detail::bounded_replacement(ri, [&](ElementId u, ElementId v) {
        for (ElementId q : rj.members(h))
          if (detail::is_pair(rj, q, v, u)) return true;
        return false;
      });
    }
    out.push_back(inverse);
  }
  return out;
}

}  // namespace oracle
