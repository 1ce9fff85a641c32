#pragma once

/// @file structure.hpp
/// @brief Dual membership structures: one finite domain {0, ..., N-1}
/// carrying two membership relations e1 and e2.
///
/// An edge (child, parent) of a relation reads "child is a member of
/// parent". This header also holds the canonical text format and the
/// generators used to build positive instances (cumulative-hierarchy
/// levels and scrambled copies of them) and negative instances (tampered
/// relations).

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "incat/errors.hpp"
#include "incat/random.hpp"

namespace incat {

using ElementId = std::uint32_t;

/// Which of the two membership relations is meant.
enum class Tag : std::uint8_t { e1 = 1, e2 = 2 };

inline constexpr Tag other(Tag t) noexcept { return t == Tag::e1 ? Tag::e2 : Tag::e1; }
inline constexpr int tag_number(Tag t) noexcept { return static_cast<int>(t); }
inline std::string tag_name(Tag t) { return t == Tag::e1 ? "e1" : "e2"; }

struct Edge {
  ElementId child;
  ElementId parent;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A binary relation on {0, ..., N-1} without duplicate pairs.
///
/// Stored twice in compressed rows: members of each parent and parents of
/// each child, both sorted by id. Cycles and self-loops are representable.
class MembershipRelation {
 public:
  MembershipRelation() = default;

  /// Throws Error on an out-of-range id or a duplicate pair.
  MembershipRelation(std::size_t domain_size, std::vector<Edge> edges) : size_(domain_size) {
    for (const Edge& e : edges) {
      if (e.child >= size_ || e.parent >= size_) {
        throw Error("edge " + std::to_string(e.child) + " " + std::to_string(e.parent) +
                    " out of range for domain size " + std::to_string(size_));
      }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.parent != b.parent ? a.parent < b.parent : a.child < b.child;
    });
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
      throw Error("duplicate edge " + std::to_string(dup->child) + " " +
                  std::to_string(dup->parent));
    }
    build_rows(edges, member_offsets_, members_, [](const Edge& e) { return e.parent; },
               [](const Edge& e) { return e.child; });
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.child != b.child ? a.child < b.child : a.parent < b.parent;
    });
    build_rows(edges, parent_offsets_, parents_, [](const Edge& e) { return e.child; },
               [](const Edge& e) { return e.parent; });
  }

  std::size_t domain_size() const noexcept { return size_; }
  std::size_t edge_count() const noexcept { return members_.size(); }

  std::span<const ElementId> members(ElementId parent) const {
    return {members_.data() + member_offsets_[parent],
            members_.data() + member_offsets_[parent + 1]};
  }

  std::span<const ElementId> parents(ElementId child) const {
    return {parents_.data() + parent_offsets_[child],
            parents_.data() + parent_offsets_[child + 1]};
  }

  bool contains(ElementId child, ElementId parent) const {
    auto m = members(parent);
    return std::binary_search(m.begin(), m.end(), child);
  }

  /// All pairs sorted by (parent, child).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(members_.size());
    for (ElementId p = 0; p < size_; ++p) {
      for (ElementId c : members(p)) out.push_back({c, p});
    }
    return out;
  }

  friend bool operator==(const MembershipRelation& a, const MembershipRelation& b) {
    return a.size_ == b.size_ && a.member_offsets_ == b.member_offsets_ &&
           a.members_ == b.members_;
  }

 private:
  template <class Key, class Value>
  void build_rows(const std::vector<Edge>& sorted, std::vector<std::size_t>& offsets,
                  std::vector<ElementId>& targets, Key key, Value value) {
    offsets.assign(size_ + 1, 0);
    targets.clear();
    targets.reserve(sorted.size());
    for (const Edge& e : sorted) {
      ++offsets[key(e) + 1];
      targets.push_back(value(e));
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  }

  std::size_t size_ = 0;
  std::vector<std::size_t> member_offsets_{0};
  std::vector<ElementId> members_;
  std::vector<std::size_t> parent_offsets_{0};
  std::vector<ElementId> parents_;
};

/// One domain with two membership relations over it.
class DualStructure {
 public:
  DualStructure() = default;

  DualStructure(MembershipRelation e1, MembershipRelation e2)
      : e1_(std::move(e1)), e2_(std::move(e2)) {
    if (e1_.domain_size() != e2_.domain_size()) {
      throw Error("relations disagree on domain size: " + std::to_string(e1_.domain_size()) +
                  " vs " + std::to_string(e2_.domain_size()));
    }
  }

  std::size_t size() const noexcept { return e1_.domain_size(); }
  const MembershipRelation& e1() const noexcept { return e1_; }
  const MembershipRelation& e2() const noexcept { return e2_; }
  const MembershipRelation& relation(Tag t) const noexcept { return t == Tag::e1 ? e1_ : e2_; }

  friend bool operator==(const DualStructure&, const DualStructure&) = default;

 private:
  MembershipRelation e1_;
  MembershipRelation e2_;
};

/// A bijection on {0, ..., N-1}; images()[i] is the image of i.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<ElementId> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (ElementId v : images_) {
      if (v >= images_.size() || seen[v]) throw Error("not a permutation");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<ElementId> v(n);
    std::iota(v.begin(), v.end(), ElementId{0});
    return Permutation(std::move(v));
  }

  /// Fisher-Yates shuffle driven by `seed`.
  static Permutation random(std::size_t n, std::uint64_t seed) {
    std::vector<ElementId> v(n);
    std::iota(v.begin(), v.end(), ElementId{0});
    Rng rng(seed);
    for (std::size_t i = n; i > 1; --i) {
      std::swap(v[i - 1], v[rng.below(i)]);
    }
    return Permutation(std::move(v));
  }

  std::size_t size() const noexcept { return images_.size(); }
  ElementId operator()(ElementId x) const { return images_[x]; }
  const std::vector<ElementId>& images() const noexcept { return images_; }

  Permutation inverse() const {
    std::vector<ElementId> inv(images_.size());
    for (ElementId i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<ElementId> images_;
};

/// Lookup from a sorted member-set to the elements having it.
class MemberSetIndex {
 public:
  explicit MemberSetIndex(const MembershipRelation& r) {
    for (ElementId x = 0; x < r.domain_size(); ++x) {
      auto m = r.members(x);
      index_[std::vector<ElementId>(m.begin(), m.end())].push_back(x);
    }
  }

  /// Elements whose member-set equals `set` (sorted, duplicate-free), in
  /// ascending id order.
  std::span<const ElementId> find(const std::vector<ElementId>& set) const {
    auto it = index_.find(set);
    if (it == index_.end()) return {};
    return it->second;
  }

  /// The lowest-id element with member-set `set`, if any.
  std::optional<ElementId> first(const std::vector<ElementId>& set) const {
    auto hits = find(set);
    if (hits.empty()) return std::nullopt;
    return hits.front();
  }

 private:
  struct Hash {
    std::size_t operator()(const std::vector<ElementId>& v) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (ElementId x : v) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  std::unordered_map<std::vector<ElementId>, std::vector<ElementId>, Hash> index_;
};

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline bool parse_id(std::string_view tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

/// Parses the line-oriented structure format:
///
///     # comment
///     n <N>
///     e1 <child> <parent>
///     e2 <child> <parent>
///
/// Blank lines are ignored. Every error carries its 1-based line number.
inline DualStructure parse_structure(std::string_view text) {
  std::optional<std::uint64_t> n;
  std::vector<Edge> edges[2];
  std::set<std::pair<ElementId, ElementId>> seen[2];
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(line_no, "line " + std::to_string(line_no) + ": " + msg);
  };
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (toks[0] == "n") {
      if (n) throw fail("duplicate `n` header");
      std::uint64_t v = 0;
      if (toks.size() != 2 || !detail::parse_id(toks[1], v)) throw fail("malformed header");
      if (v > UINT32_MAX) throw fail("domain size too large");
      n = v;
      continue;
    }
    if (toks[0] != "e1" && toks[0] != "e2") {
      throw fail("unknown token `" + std::string(toks[0]) + "`");
    }
    if (!n) throw fail("edge before `n` header");
    std::uint64_t c = 0, p = 0;
    if (toks.size() != 3 || !detail::parse_id(toks[1], c) || !detail::parse_id(toks[2], p)) {
      throw fail("malformed edge");
    }
    if (c >= *n || p >= *n) throw fail("vertex id out of range");
    const int k = toks[0] == "e1" ? 0 : 1;
    auto key = std::make_pair(static_cast<ElementId>(c), static_cast<ElementId>(p));
    if (!seen[k].insert(key).second) throw fail("duplicate edge");
    edges[k].push_back({key.first, key.second});
  }
  if (!n) throw ParseError(line_no, "missing `n` header");
  return DualStructure(MembershipRelation(*n, std::move(edges[0])),
                       MembershipRelation(*n, std::move(edges[1])));
}

/// Canonical form: header, e1 edges sorted by (parent, child), then e2.
inline std::string serialize_structure(const DualStructure& s) {
  std::ostringstream out;
  out << "n " << s.size() << '\n';
  for (Tag t : {Tag::e1, Tag::e2}) {
    for (const Edge& e : s.relation(t).edges()) {
      out << tag_name(t) << ' ' << e.child << ' ' << e.parent << '\n';
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Generators

inline constexpr unsigned kMaxUniverseLevel = 5;

/// |V_n| for n <= 5.
inline std::size_t v_level_size(unsigned n) {
  if (n > kMaxUniverseLevel) throw Error("level " + std::to_string(n) + " exceeds the supported maximum of 5");
  std::size_t size = 0;
  for (unsigned k = 0; k < n; ++k) size = std::size_t{1} << size;
  return size;
}

/// (V_n, in, in) with element i the hereditarily finite set whose Ackermann
/// code is i: a is a member of b iff bit a of b is set.
inline DualStructure build_v_universe(unsigned n) {
  const std::size_t size = v_level_size(n);
  std::vector<Edge> edges;
  for (std::size_t b = 0; b < size; ++b) {
    for (std::size_t a = 0; a < 64 && (std::uint64_t{1} << a) <= b; ++a) {
      if ((b >> a) & 1u) edges.push_back({static_cast<ElementId>(a), static_cast<ElementId>(b)});
    }
  }
  MembershipRelation r(size, std::move(edges));
  return DualStructure(r, r);
}

/// Keeps e1 and replaces e2 by the image of e1 under `p`, so that `p` is an
/// isomorphism from (M, e1) onto (M, e2).
inline DualStructure scramble(const DualStructure& s, const Permutation& p) {
  if (p.size() != s.size()) {
    throw Error("permutation length " + std::to_string(p.size()) + " does not match domain size " +
                std::to_string(s.size()));
  }
  std::vector<Edge> moved;
  moved.reserve(s.e1().edge_count());
  for (const Edge& e : s.e1().edges()) moved.push_back({p(e.child), p(e.parent)});
  return DualStructure(s.e1(), MembershipRelation(s.size(), std::move(moved)));
}

/// A random acyclic relation in which distinct elements have distinct
/// member-sets. Elements are created in a hidden topological order; each
/// draws a random subset of its predecessors, retrying on a collision and
/// finally falling back to the first unused subset in bitmask order (one
/// always exists, since k predecessors admit 2^k > k subsets).
inline MembershipRelation random_extensional_relation(std::size_t size, std::uint64_t seed) {
  if (size == 0) throw Error("random_extensional_relation requires size >= 1");
  constexpr int kRetries = 32;
  Rng rng(seed);
  const Permutation label = Permutation::random(size, rng.next());
  std::set<std::vector<ElementId>> used;  // member-sets, as topological positions
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < size; ++k) {
    std::vector<ElementId> chosen;
    bool ok = false;
    for (int attempt = 0; attempt < kRetries && !ok; ++attempt) {
      chosen.clear();
      for (ElementId j = 0; j < k; ++j) {
        if (rng.coin()) chosen.push_back(j);
      }
      ok = !used.contains(chosen);
    }
    for (std::uint64_t mask = 0; !ok; ++mask) {
      chosen.clear();
      for (ElementId j = 0; j < 64 && j < k; ++j) {
        if ((mask >> j) & 1u) chosen.push_back(j);
      }
      ok = !used.contains(chosen);
    }
    used.insert(chosen);
    for (ElementId j : chosen) {
      edges.push_back({label(j), label(static_cast<ElementId>(k))});
    }
  }
  return MembershipRelation(size, std::move(edges));
}

enum class TamperKind { add_cycle, break_extensionality, remove_edge };

inline std::string tamper_kind_name(TamperKind k) {
  switch (k) {
    case TamperKind::add_cycle: return "add-cycle";
    case TamperKind::break_extensionality: return "break-extensionality";
    case TamperKind::remove_edge: return "remove-edge";
  }
  return "?";
}

inline TamperKind parse_tamper_kind(std::string_view s) {
  if (s == "add-cycle") return TamperKind::add_cycle;
  if (s == "break-extensionality") return TamperKind::break_extensionality;
  if (s == "remove-edge") return TamperKind::remove_edge;
  throw Error("unknown tamper kind `" + std::string(s) + "`");
}

/// Returns a copy of `s` whose e1 has been mutated; e2 is untouched.
///
/// add-cycle reverses a randomly chosen e1 edge (or adds a self-loop when
/// e1 is empty). break-extensionality copies the member-set of some element
/// a onto some b outside the transitive members of a, so no cycle appears.
/// remove-edge deletes one e1 edge.
inline DualStructure tamper(const DualStructure& s, TamperKind kind, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges = s.e1().edges();
  const std::size_t n = s.size();
  switch (kind) {
    case TamperKind::add_cycle: {
      if (n == 0) throw Error("add-cycle needs a non-empty domain");
      if (edges.empty()) {
        const auto v = static_cast<ElementId>(rng.below(n));
        edges.push_back({v, v});
      } else {
        const Edge e = edges[rng.below(edges.size())];
        edges.push_back({e.parent, e.child});
      }
      break;
    }
    case TamperKind::break_extensionality: {
      const MembershipRelation& r = s.e1();
      std::vector<std::pair<ElementId, ElementId>> candidates;
      for (ElementId a = 0; a < n; ++a) {
        std::vector<bool> below(n, false);
        std::vector<ElementId> stack(r.members(a).begin(), r.members(a).end());
        while (!stack.empty()) {
          ElementId v = stack.back();
          stack.pop_back();
          if (below[v]) continue;
          below[v] = true;
          for (ElementId m : r.members(v)) stack.push_back(m);
        }
        for (ElementId b = 0; b < n; ++b) {
          if (b == a || below[b]) continue;
          if (std::ranges::equal(r.members(a), r.members(b))) continue;
          candidates.emplace_back(a, b);
        }
      }
      if (candidates.empty()) throw Error("break-extensionality impossible on this structure");
      const auto [a, b] = candidates[rng.below(candidates.size())];
      std::erase_if(edges, [b = b](const Edge& e) { return e.parent == b; });
      for (ElementId m : r.members(a)) edges.push_back({m, b});
      break;
    }
    case TamperKind::remove_edge: {
      if (edges.empty()) throw Error("remove-edge needs at least one e1 edge");
      edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(rng.below(edges.size())));
      break;
    }
  }
  return DualStructure(MembershipRelation(n, std::move(edges)), s.e2());
}

}  // namespace incat
