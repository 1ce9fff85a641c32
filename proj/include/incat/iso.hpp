#pragma once

/// @file iso.hpp
/// @brief The witness predicate psi(x, y, f), the relation phi(x, y) =
/// "exists f psi(x, y, f)", internal ordinals and cumulative levels, and the
/// global isomorphism between (M, e1) and (M, e2) read off from phi.
///
/// psi(x, y, f) holds when
///   (i)   f is a function with domain TC1({x});
///   (ii)  f(t) is in TC2(y) for every t in TC1(x);
///   (iii) every t in TC2(y) is f(w) for some w in TC1(x);
///   (iv)  for t in TC1(x) and w in TC1({x}): t e1 w iff f(t) e2 f(w);
///   (v)   f(x) = y.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "incat/errors.hpp"
#include "incat/graph.hpp"
#include "incat/hf.hpp"
#include "incat/structure.hpp"

namespace incat {

/// A concrete function f on TC1({x}) realizing psi(x, y, f).
struct PsiWitness {
  ElementId x = 0;
  ElementId y = 0;
  std::map<ElementId, ElementId> f;

  friend bool operator==(const PsiWitness&, const PsiWitness&) = default;
};

/// The first violated condition of psi, as text starting with its numeral,
/// or nullopt when all of (i) to (v) hold. Independent of how w was built.
inline std::optional<std::string> psi_violation(const DualStructure& s, const PsiWitness& w) {
  const auto& e1 = s.e1();
  const auto& e2 = s.e2();
  const auto below_x = transitive_closure(e1, w.x, false);
  const auto upto_x = transitive_closure(e1, w.x, true);
  const auto below_y = transitive_closure(e2, w.y, false);
  auto id = [](ElementId v) { return std::to_string(v); };

  std::vector<ElementId> domain;
  for (const auto& [k, v] : w.f) {
    if (k >= s.size() || v >= s.size()) return "(i) f mentions an element outside the domain";
    domain.push_back(k);
  }
  if (domain != upto_x) return "(i) dom f differs from TC1({" + id(w.x) + "})";
  for (ElementId t : below_x) {
    if (!std::binary_search(below_y.begin(), below_y.end(), w.f.at(t))) {
      return "(ii) f(" + id(t) + ") = " + id(w.f.at(t)) + " is not in TC2(" + id(w.y) + ")";
    }
  }
  for (ElementId t : below_y) {
    const bool hit = std::any_of(below_x.begin(), below_x.end(), [&](ElementId u) { return w.f.at(u) == t; });
    if (!hit) return "(iii) " + id(t) + " in TC2(" + id(w.y) + ") has no preimage";
  }
  for (ElementId t : below_x) {
    for (ElementId u : upto_x) {
      if (e1.contains(t, u) != e2.contains(w.f.at(t), w.f.at(u))) {
        return "(iv) membership of " + id(t) + " in " + id(u) + " is not preserved";
      }
    }
  }
  if (w.f.at(w.x) != w.y) return "(v) f(" + id(w.x) + ") = " + id(w.f.at(w.x)) + " differs from " + id(w.y);
  return std::nullopt;
}

inline bool psi_holds(const DualStructure& s, const PsiWitness& w) { return !psi_violation(s, w); }

/// A transitive set of transitive sets under r.
inline bool is_ordinal(const MembershipRelation& r, ElementId x) {
  auto transitive = [&](ElementId v) {
    auto mv = r.members(v);
    for (ElementId m : mv) {
      for (ElementId mm : r.members(m)) {
        if (!std::binary_search(mv.begin(), mv.end(), mm)) return false;
      }
    }
    return true;
  };
  if (!transitive(x)) return false;
  auto mx = r.members(x);
  return std::all_of(mx.begin(), mx.end(), transitive);
}

/// Memoizing evaluator of psi and phi on one structure.
///
/// build_psi constructs f bottom-up by rank: each t in TC1({x}) goes to the
/// element of TC2({y}) whose e2 member-set is the image of t's e1
/// member-set. When e2 is not extensional there may be several such
/// elements; the lowest id is taken and the pair is flagged ambiguous. The
/// result is checked against psi_violation before it is returned.
class IsoEngine {
 public:
  explicit IsoEngine(const DualStructure& s, bool memoize = true)
      : s_(&s), memoize_(memoize), rank1_(s.e1(), Tag::e1), rank2_(s.e2(), Tag::e2) {}

  const DualStructure& structure() const noexcept { return *s_; }

  /// Throws IllFoundedError when e1 has a cycle below x or e2 below y.
  std::optional<PsiWitness> build_psi(ElementId x, ElementId y) {
    check_range(x);
    check_range(y);
    if (memoize_) {
      if (auto it = memo_.find({x, y}); it != memo_.end()) return it->second;
    }
    auto w = construct(x, y);
    if (memoize_) memo_.emplace(std::make_pair(x, y), w);
    return w;
  }

  bool phi(ElementId x, ElementId y) { return build_psi(x, y).has_value(); }

  /// Whether some step of build_psi(x, y) had to choose among several e2
  /// elements with equal member-sets.
  bool ambiguous(ElementId x, ElementId y) const { return ambiguous_.contains({x, y}); }

  std::uint32_t rank(Tag t, ElementId x) { return t == Tag::e1 ? rank1_(x) : rank2_(x); }

 private:
  void check_range(ElementId v) const {
    if (v >= s_->size()) throw Error("element " + std::to_string(v) + " out of range");
  }

  std::optional<PsiWitness> construct(ElementId x, ElementId y) {
    const auto& e1 = s_->e1();
    const auto& e2 = s_->e2();
    rank1_(x);
    rank2_(y);
    auto upto_x = transitive_closure(e1, x, true);
    auto upto_y = transitive_closure(e2, y, true);
    std::stable_sort(upto_x.begin(), upto_x.end(), [&](ElementId a, ElementId b) { return rank1_(a) < rank1_(b); });

    std::map<std::vector<ElementId>, std::vector<ElementId>> targets;
    for (ElementId v : upto_y) {
      auto m = e2.members(v);
      targets[std::vector<ElementId>(m.begin(), m.end())].push_back(v);
    }

    PsiWitness w{x, y, {}};
    for (ElementId t : upto_x) {
      std::vector<ElementId> image;
      for (ElementId m : e1.members(t)) image.push_back(w.f.at(m));
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      auto it = targets.find(image);
      if (it == targets.end()) return std::nullopt;
      if (it->second.size() > 1) ambiguous_.insert({x, y});
      w.f[t] = it->second.front();
    }
    if (w.f.at(x) != y || psi_violation(*s_, w)) return std::nullopt;
    return w;
  }

  const DualStructure* s_;
  bool memoize_;
  RankCache rank1_, rank2_;
  std::map<std::pair<ElementId, ElementId>, std::optional<PsiWitness>> memo_;
  std::set<std::pair<ElementId, ElementId>> ambiguous_;
};

inline std::optional<PsiWitness> build_psi(const DualStructure& s, ElementId x, ElementId y) {
  return IsoEngine(s, false).build_psi(x, y);
}

inline bool phi(const DualStructure& s, ElementId x, ElementId y) { return build_psi(s, x, y).has_value(); }

// ---------------------------------------------------------------------------
// Cumulative levels

/// The level V_alpha of one relation, computed from the ordinal alpha, and
/// the element realizing it if there is one.
struct InternalLevel {
  Tag tag = Tag::e1;
  ElementId alpha = 0;
  std::optional<ElementId> element;
  std::vector<ElementId> extension;  // sorted ids
};

/// L_0 is empty and L_{j+1} holds the elements whose members all lie in
/// L_j; the level for alpha is L_k with k the number of members of alpha.
inline InternalLevel internal_level(const DualStructure& s, Tag tag, ElementId alpha) {
  const auto& r = s.relation(tag);
  if (alpha >= s.size()) throw Error("element " + std::to_string(alpha) + " out of range");
  if (!is_ordinal(r, alpha)) {
    throw Error("element " + std::to_string(alpha) + " is not an ordinal in " + tag_name(tag));
  }
  std::vector<bool> in_level(s.size(), false);
  std::vector<ElementId> level;
  const std::size_t k = r.members(alpha).size();
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<ElementId> next;
    for (ElementId e = 0; e < s.size(); ++e) {
      auto m = r.members(e);
      if (std::all_of(m.begin(), m.end(), [&](ElementId c) { return in_level[c]; })) next.push_back(e);
    }
    level = std::move(next);
    std::fill(in_level.begin(), in_level.end(), false);
    for (ElementId e : level) in_level[e] = true;
  }
  InternalLevel out{tag, alpha, std::nullopt, level};
  for (ElementId e = 0; e < s.size(); ++e) {
    auto m = r.members(e);
    if (std::equal(m.begin(), m.end(), level.begin(), level.end())) {
      out.element = e;
      break;
    }
  }
  return out;
}

/// Given psi(alpha, y, f) for ordinals alpha (in e1) and y (in e2), builds
/// the witness for the pair of levels (V1_alpha, V2_y) level by level: each
/// u goes to the element of TC2({V2_y}) whose e2 members are exactly the
/// images of u's e1 members.
///
/// Since alpha itself is not in V_alpha, the result agrees with f on the
/// common part of the two domains rather than containing f outright.
inline PsiWitness extend_to_level(const DualStructure& s, const PsiWitness& w) {
  const auto& e1 = s.e1();
  const auto& e2 = s.e2();
  if (!is_ordinal(e1, w.x)) throw Error("element " + std::to_string(w.x) + " is not an ordinal in e1");
  if (!is_ordinal(e2, w.y)) throw Error("element " + std::to_string(w.y) + " is not an ordinal in e2");
  const InternalLevel l1 = internal_level(s, Tag::e1, w.x);
  const InternalLevel l2 = internal_level(s, Tag::e2, w.y);
  if (!l1.element) throw Error("missing level element: V_" + std::to_string(w.x) + " is not realized in e1");
  if (!l2.element) throw Error("missing level element: V_" + std::to_string(w.y) + " is not realized in e2");

  RankCache rank(e1, Tag::e1);
  auto upto = transitive_closure(e1, *l1.element, true);
  std::stable_sort(upto.begin(), upto.end(), [&](ElementId a, ElementId b) { return rank(a) < rank(b); });
  std::map<std::vector<ElementId>, ElementId> targets;
  for (ElementId v : transitive_closure(e2, *l2.element, true)) {
    auto m = e2.members(v);
    targets.emplace(std::vector<ElementId>(m.begin(), m.end()), v);
  }

  PsiWitness out{*l1.element, *l2.element, {}};
  for (ElementId u : upto) {
    std::vector<ElementId> image;
    for (ElementId m : e1.members(u)) image.push_back(out.f.at(m));
    std::sort(image.begin(), image.end());
    auto it = targets.find(image);
    if (it == targets.end()) {
      std::string set = "{";
      for (std::size_t i = 0; i < image.size(); ++i) set += (i ? "," : "") + std::to_string(image[i]);
      throw Error("unrealized image set: u=" + std::to_string(u) + " image=" + set + "}");
    }
    out.f[u] = it->second;
  }
  if (out.f.at(out.x) != out.y) {
    throw Error("level " + std::to_string(out.x) + " maps to " + std::to_string(out.f.at(out.x)) + ", not to " +
                std::to_string(out.y));
  }
  if (auto bad = psi_violation(s, out)) throw Error("extended map violates psi: " + *bad);
  return out;
}

// ---------------------------------------------------------------------------
// Global isomorphism

enum class Provenance { ordinal, level, direct };

inline std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::ordinal: return "ordinal";
    case Provenance::level: return "level";
    case Provenance::direct: return "direct";
  }
  return "?";
}

struct IsoCertificate {
  std::vector<ElementId> map;  // map[x] = h(x)
  /// How each pair was obtained and the e1 rank at which it was added.
  std::vector<std::pair<Provenance, std::uint32_t>> provenance;

  Permutation permutation() const { return Permutation(map); }
};

enum class FailureCase { both_directions_fail, e1_element_unmatched, e2_element_unmatched };

inline std::string failure_case_name(FailureCase c) {
  switch (c) {
    case FailureCase::both_directions_fail: return "both-directions-fail";
    case FailureCase::e1_element_unmatched: return "e1-element-unmatched";
    case FailureCase::e2_element_unmatched: return "e2-element-unmatched";
  }
  return "?";
}

/// Elements without a phi-partner, with their collapses for explanation.
struct FailureDiagnostic {
  FailureCase kind = FailureCase::both_directions_fail;
  struct Unmatched {
    Tag tag;
    ElementId element;
    std::uint32_t rank;
    std::string collapse;
  };
  std::vector<Unmatched> unmatched;  // e1 entries then e2 entries, by id
};

struct IsoOutcome {
  std::optional<IsoCertificate> certificate;
  std::optional<FailureDiagnostic> diagnostic;

  bool ok() const noexcept { return certificate.has_value(); }
};

/// Builds h with phi(x, h(x)) for all x, or explains where phi is not total
/// or not onto.
///
/// Ordinals are matched first through phi, then each matched ordinal pair is
/// extended to its pair of levels, and every element still unmatched is
/// placed by rank: h(x) is the e2 element whose members are the images of
/// x's members. The case tag compares the least rank of an unmatched e1
/// element with that of an unmatched e2 element: equal gives
/// both-directions-fail, a lower e2 rank gives e2-element-unmatched, a lower
/// e1 rank e1-element-unmatched.
///
/// Throws IllFoundedError or NonExtensionalError when a relation is not
/// well-founded or not extensional.
inline IsoOutcome global_isomorphism(const DualStructure& s) {
  const std::size_t n = s.size();
  for (Tag t : {Tag::e1, Tag::e2}) {
    if (auto c = find_cycle(s.relation(t))) throw IllFoundedError(tag_number(t), *c);
  }
  MemberSetIndex index1(s.e1()), index2(s.e2());
  for (Tag t : {Tag::e1, Tag::e2}) {
    const auto& r = s.relation(t);
    const MemberSetIndex& index = t == Tag::e1 ? index1 : index2;
    for (ElementId a = 0; a < n; ++a) {
      auto m = r.members(a);
      auto same = index.find(std::vector<ElementId>(m.begin(), m.end()));
      if (same.front() != a) throw NonExtensionalError(tag_number(t), same.front(), a);
    }
  }
  const auto rank1 = element_ranks(s.e1(), Tag::e1);
  const auto rank2 = element_ranks(s.e2(), Tag::e2);

  constexpr ElementId kNone = UINT32_MAX;
  std::vector<ElementId> h(n, kNone), inverse(n, kNone);
  std::vector<std::pair<Provenance, std::uint32_t>> provenance(n, {Provenance::direct, 0});
  auto assign = [&](ElementId x, ElementId y, Provenance p) {
    if (h[x] != kNone) return;
    h[x] = y;
    inverse[y] = x;
    provenance[x] = {p, rank1[x]};
  };

  // Ordinals, matched through phi. In an extensional well-founded relation
  // there is at most one ordinal of each rank.
  IsoEngine engine(s);
  std::map<std::uint32_t, ElementId> ordinals2;
  for (ElementId y = 0; y < n; ++y) {
    if (is_ordinal(s.e2(), y)) ordinals2.emplace(rank2[y], y);
  }
  std::vector<std::pair<ElementId, ElementId>> ordinal_pairs;
  for (ElementId a = 0; a < n; ++a) {
    if (!is_ordinal(s.e1(), a)) continue;
    auto it = ordinals2.find(rank1[a]);
    if (it == ordinals2.end()) continue;
    if (auto w = engine.build_psi(a, it->second)) {
      for (const auto& [u, v] : w->f) assign(u, v, Provenance::ordinal);
      ordinal_pairs.emplace_back(a, it->second);
    }
  }
  std::sort(ordinal_pairs.begin(), ordinal_pairs.end(),
            [&](const auto& p, const auto& q) { return rank1[p.first] < rank1[q.first]; });

  // Levels of matched ordinals.
  for (const auto& [a, y] : ordinal_pairs) {
    try {
      const PsiWitness level = extend_to_level(s, *engine.build_psi(a, y));
      for (const auto& [u, v] : level.f) assign(u, v, Provenance::level);
    } catch (const Error&) {
      // Level missing or not matched: the remaining elements are placed
      // directly below.
    }
  }

  // Everything else, by rank.
  std::vector<ElementId> order(n);
  for (ElementId x = 0; x < n; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) { return rank1[a] < rank1[b]; });
  for (ElementId x : order) {
    if (h[x] != kNone) continue;
    std::vector<ElementId> image;
    bool complete = true;
    for (ElementId m : s.e1().members(x)) {
      if (h[m] == kNone) {
        complete = false;
        break;
      }
      image.push_back(h[m]);
    }
    if (!complete) continue;
    std::sort(image.begin(), image.end());
    if (auto y = index2.first(image); y && inverse[*y] == kNone) assign(x, *y, Provenance::direct);
  }

  IsoOutcome out;
  if (std::find(h.begin(), h.end(), kNone) == h.end()) {
    out.certificate = IsoCertificate{h, provenance};
    return out;
  }

  HfTable table;
  Collapser c1(table, s.e1(), Tag::e1), c2(table, s.e2(), Tag::e2);
  FailureDiagnostic d;
  std::uint32_t least1 = UINT32_MAX, least2 = UINT32_MAX;
  for (ElementId x = 0; x < n; ++x) {
    if (h[x] != kNone) continue;
    d.unmatched.push_back({Tag::e1, x, rank1[x], table.render(c1(x))});
    least1 = std::min(least1, rank1[x]);
  }
  for (ElementId y = 0; y < n; ++y) {
    if (inverse[y] != kNone) continue;
    d.unmatched.push_back({Tag::e2, y, rank2[y], table.render(c2(y))});
    least2 = std::min(least2, rank2[y]);
  }
  d.kind = least1 == least2  ? FailureCase::both_directions_fail
           : least2 < least1 ? FailureCase::e2_element_unmatched
                             : FailureCase::e1_element_unmatched;
  out.diagnostic = std::move(d);
  return out;
}

/// `iso N` followed by `map x y` lines sorted by x.
inline std::string render_certificate(const IsoCertificate& c) {
  std::string out = "iso " + std::to_string(c.map.size()) + "\n";
  for (std::size_t x = 0; x < c.map.size(); ++x) {
    out += "map " + std::to_string(x) + " " + std::to_string(c.map[x]) + "\n";
  }
  return out;
}

inline IsoCertificate parse_certificate(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  IsoCertificate c;
  std::vector<bool> seen;
  while (std::getline(in, line)) {
    ++line_no;
    auto fail = [&](const std::string& msg) {
      return ParseError(line_no, "line " + std::to_string(line_no) + ": " + msg);
    };
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    std::uint64_t a = 0, b = 0;
    if (toks[0] == "iso") {
      if (n || toks.size() != 2 || !detail::parse_id(toks[1], a)) throw fail("malformed header");
      n = a;
      c.map.assign(a, 0);
      seen.assign(a, false);
    } else if (toks[0] == "map") {
      if (!n) throw fail("map before `iso` header");
      if (toks.size() != 3 || !detail::parse_id(toks[1], a) || !detail::parse_id(toks[2], b)) {
        throw fail("malformed map line");
      }
      if (a >= *n || b >= *n) throw fail("element out of range");
      if (seen[a]) throw fail("duplicate map line");
      seen[a] = true;
      c.map[a] = static_cast<ElementId>(b);
    } else {
      throw fail("unknown token `" + std::string(toks[0]) + "`");
    }
  }
  if (!n) throw ParseError(line_no, "missing `iso` header");
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw ParseError(line_no, "certificate is not total");
  c.provenance.assign(c.map.size(), {Provenance::direct, 0});
  return c;
}

/// `fail <case>` followed by `unmatched <tag> <id> collapse <set>` lines.
inline std::string render_diagnostic(const FailureDiagnostic& d) {
  std::string out = "fail " + failure_case_name(d.kind) + "\n";
  for (const auto& u : d.unmatched) {
    out += "unmatched " + tag_name(u.tag) + " " + std::to_string(u.element) + " collapse " + u.collapse + "\n";
  }
  return out;
}

struct CertificateCheck {
  bool ok = true;
  std::string problem;  // empty when ok
};

/// Accepts exactly the bijections h with a e1 b iff h(a) e2 h(b). The
/// first problem found is reported: non-bijectivity, then an e1 edge whose
/// image is not an e2 edge, then an e2 edge whose preimage is not an e1
/// edge (edges in canonical order).
inline CertificateCheck verify_certificate(const DualStructure& s, const IsoCertificate& c) {
  const std::size_t n = s.size();
  if (c.map.size() != n) {
    return {false, "certificate has " + std::to_string(c.map.size()) + " entries for domain size " + std::to_string(n)};
  }
  std::vector<ElementId> inverse(n, UINT32_MAX);
  for (ElementId x = 0; x < n; ++x) {
    const ElementId y = c.map[x];
    if (y >= n) return {false, "image " + std::to_string(y) + " of " + std::to_string(x) + " out of range"};
    if (inverse[y] != UINT32_MAX) {
      return {false, "not injective: " + std::to_string(inverse[y]) + " and " + std::to_string(x) + " both map to " +
                         std::to_string(y)};
    }
    inverse[y] = x;
  }
  for (const Edge& e : s.e1().edges()) {
    if (!s.e2().contains(c.map[e.child], c.map[e.parent])) {
      return {false, "e1 edge (" + std::to_string(e.child) + "," + std::to_string(e.parent) + ") maps to (" +
                         std::to_string(c.map[e.child]) + "," + std::to_string(c.map[e.parent]) +
                         "), not an e2 edge"};
    }
  }
  for (const Edge& e : s.e2().edges()) {
    if (!s.e1().contains(inverse[e.child], inverse[e.parent])) {
      return {false, "e2 edge (" + std::to_string(e.child) + "," + std::to_string(e.parent) + ") has preimage (" +
                         std::to_string(inverse[e.child]) + "," + std::to_string(inverse[e.parent]) +
                         "), not an e1 edge"};
    }
  }
  return {};
}

}  // namespace incat
