#pragma once

/// @file axioms.hpp
/// @brief Which axioms of finite set theory (ZF without Infinity) each
/// membership relation of a dual structure satisfies.
///
/// Pairing, power set and semantic replacement are read relative to the
/// height h of the relation (one more than the largest rank): they only
/// quantify over elements of rank below h - 1. Unrestricted, they fail on
/// every nonempty finite well-founded structure, since the top-rank sets of
/// V_h have no pair or power set inside V_h. With this reading a relation
/// passes the semantic checks exactly when it is isomorphic to some V_h.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "incat/errors.hpp"
#include "incat/formula.hpp"
#include "incat/graph.hpp"
#include "incat/random.hpp"
#include "incat/structure.hpp"

namespace incat {

enum class Verdict { pass, fail, skipped };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

/// One line of an axiom report.
struct AxiomResult {
  Tag tag = Tag::e1;
  std::string axiom;
  Verdict verdict = Verdict::pass;
  /// key=value pairs; values containing spaces are quoted when rendered.
  std::vector<std::pair<std::string, std::string>> witness;
  std::string mode;

  bool passed() const noexcept { return verdict == Verdict::pass; }
  std::string value(const std::string& key) const {
    for (const auto& [k, v] : witness) {
      if (k == key) return v;
    }
    return {};
  }

  std::string render() const {
    std::string out = tag_name(tag) + " " + axiom + " " + verdict_name(verdict);
    for (const auto& [k, v] : witness) {
      out += " " + k + "=";
      out += v.find(' ') == std::string::npos ? v : "\"" + v + "\"";
    }
    if (!mode.empty()) out += " mode=" + mode;
    return out;
  }

  friend bool operator==(const AxiomResult&, const AxiomResult&) = default;
};

struct AxiomReport {
  std::vector<AxiomResult> results;  // sorted by (tag, axiom)

  bool all_pass() const {
    return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) {
      return r.verdict != Verdict::fail;
    });
  }

  const AxiomResult* find(Tag t, const std::string& axiom) const {
    for (const auto& r : results) {
      if (r.tag == t && r.axiom == axiom) return &r;
    }
    return nullptr;
  }

  std::string render() const {
    std::string out;
    for (const auto& r : results) out += r.render() + "\n";
    return out;
  }

  friend bool operator==(const AxiomReport&, const AxiomReport&) = default;
};

/// Inverse of AxiomReport::render.
inline AxiomReport parse_axiom_report(std::string_view text) {
  AxiomReport report;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) {
      return ParseError(line_no, "line " + std::to_string(line_no) + ": " + msg);
    };
    std::vector<std::string> toks;
    for (std::size_t i = 0; i < line.size();) {
      if (line[i] == ' ') {
        ++i;
        continue;
      }
      std::string tok;
      bool quoted = false;
      while (i < line.size() && (quoted || line[i] != ' ')) {
        if (line[i] == '"') quoted = !quoted;
        else tok += line[i];
        ++i;
      }
      if (quoted) throw fail("unterminated quote");
      toks.push_back(std::move(tok));
    }
    if (toks.size() < 3) throw fail("expected `<tag> <axiom> <verdict>`");
    AxiomResult r;
    if (toks[0] == "e1") r.tag = Tag::e1;
    else if (toks[0] == "e2") r.tag = Tag::e2;
    else throw fail("unknown tag `" + toks[0] + "`");
    r.axiom = toks[1];
    if (toks[2] == "pass") r.verdict = Verdict::pass;
    else if (toks[2] == "fail") r.verdict = Verdict::fail;
    else if (toks[2] == "skipped") r.verdict = Verdict::skipped;
    else throw fail("unknown verdict `" + toks[2] + "`");
    for (std::size_t i = 3; i < toks.size(); ++i) {
      const auto eq = toks[i].find('=');
      if (eq == std::string::npos || eq == 0) throw fail("expected key=value, got `" + toks[i] + "`");
      std::string key = toks[i].substr(0, eq), value = toks[i].substr(eq + 1);
      if (key == "mode") r.mode = std::move(value);
      else r.witness.emplace_back(std::move(key), std::move(value));
    }
    report.results.push_back(std::move(r));
  }
  return report;
}

enum class SchemaMode { semantic, battery, bounded };

inline SchemaMode parse_schema_mode(std::string_view s) {
  if (s == "semantic") return SchemaMode::semantic;
  if (s == "battery") return SchemaMode::battery;
  if (s == "bounded") return SchemaMode::bounded;
  throw Error("unknown mode `" + std::string(s) + "`");
}

struct CheckOptions {
  /// How the first-order schemas are checked; `semantic` skips them.
  SchemaMode mode = SchemaMode::battery;
  /// Largest formula size (syntax-tree nodes) for bounded enumeration.
  unsigned depth = 12;
  /// Bounded enumeration stops after this many distinct formulas.
  std::size_t formula_cap = 20000;
  /// Seed and per-element draw count for sampled semantic replacement.
  std::uint64_t seed = 0;
  unsigned samples = 16;
  /// The fixed battery is evaluated only on domains up to this size.
  std::size_t battery_limit = 32;
  EvalOptions eval;
};

namespace detail {

inline std::string render_id_set(const std::vector<ElementId>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out + "}";
}

inline AxiomResult make_result(Tag t, std::string axiom, Verdict v,
                               std::vector<std::pair<std::string, std::string>> witness = {},
                               std::string mode = {}) {
  return AxiomResult{t, std::move(axiom), v, std::move(witness), std::move(mode)};
}

inline std::vector<ElementId> to_vector(std::span<const ElementId> s) { return {s.begin(), s.end()}; }

// Shared per-relation data for the semantic checks.
struct RelationFacts {
  const MembershipRelation* r;
  Tag tag;
  MemberSetIndex index;
  std::optional<std::vector<std::size_t>> cycle;
  std::vector<std::uint32_t> rank;  // empty when cyclic
  std::uint32_t height = 0;

  RelationFacts(const MembershipRelation& rel, Tag t) : r(&rel), tag(t), index(rel), cycle(find_cycle(rel)) {
    if (!cycle) {
      rank = element_ranks(rel, t);
      for (auto k : rank) height = std::max(height, k + 1);
    }
  }

  // Elements the bounded axioms quantify over: rank below height - 1.
  bool low(ElementId x) const { return rank[x] + 1 < height; }
};

}  // namespace detail

/// pass iff distinct elements have distinct member-sets; fail names the
/// lowest offending pair.
inline AxiomResult check_extensionality(const DualStructure& s, Tag t) {
  const auto& r = s.relation(t);
  MemberSetIndex index(r);
  for (ElementId a = 0; a < s.size(); ++a) {
    auto same = index.find(detail::to_vector(r.members(a)));
    if (same.front() != a) {
      return detail::make_result(t, "extensionality", Verdict::fail,
                                 {{"a", std::to_string(same.front())}, {"b", std::to_string(a)}});
    }
  }
  return detail::make_result(t, "extensionality", Verdict::pass);
}

inline std::string render_cycle(const std::vector<std::size_t>& cycle) {
  std::string out;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cycle[i]);
  }
  return out;
}

/// pass iff the relation is acyclic; fail carries a cycle.
inline AxiomResult check_foundation(const DualStructure& s, Tag t) {
  if (auto c = find_cycle(s.relation(t))) {
    return detail::make_result(t, "foundation", Verdict::fail, {{"cycle", render_cycle(*c)}});
  }
  return detail::make_result(t, "foundation", Verdict::pass);
}

namespace detail {

inline AxiomResult skipped_for_cycle(Tag t, const std::string& axiom) {
  return make_result(t, axiom, Verdict::skipped, {{"reason", "foundation-fails"}});
}

inline AxiomResult pairing(const RelationFacts& f) {
  if (f.cycle) return skipped_for_cycle(f.tag, "pairing");
  const std::size_t n = f.r->domain_size();
  for (ElementId a = 0; a < n; ++a) {
    if (!f.low(a)) continue;
    for (ElementId b = a; b < n; ++b) {
      if (!f.low(b)) continue;
      std::vector<ElementId> want = a == b ? std::vector<ElementId>{a} : std::vector<ElementId>{a, b};
      if (!f.index.first(want)) {
        return make_result(f.tag, "pairing", Verdict::fail,
                           {{"a", std::to_string(a)}, {"b", std::to_string(b)}, {"missing", render_id_set(want)}});
      }
    }
  }
  return make_result(f.tag, "pairing", Verdict::pass);
}

inline AxiomResult union_axiom(const RelationFacts& f) {
  const std::size_t n = f.r->domain_size();
  for (ElementId a = 0; a < n; ++a) {
    std::vector<ElementId> want;
    for (ElementId m : f.r->members(a)) {
      auto mm = f.r->members(m);
      want.insert(want.end(), mm.begin(), mm.end());
    }
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
    if (!f.index.first(want)) {
      return make_result(f.tag, "union", Verdict::fail, {{"a", std::to_string(a)}, {"missing", render_id_set(want)}});
    }
  }
  return make_result(f.tag, "union", Verdict::pass);
}

inline AxiomResult power_set(const RelationFacts& f) {
  if (f.cycle) return skipped_for_cycle(f.tag, "power-set");
  const std::size_t n = f.r->domain_size();
  for (ElementId a = 0; a < n; ++a) {
    if (!f.low(a)) continue;
    auto ma = f.r->members(a);
    std::vector<ElementId> want;
    for (ElementId x = 0; x < n; ++x) {
      auto mx = f.r->members(x);
      if (std::includes(ma.begin(), ma.end(), mx.begin(), mx.end())) want.push_back(x);
    }
    if (!f.index.first(want)) {
      return make_result(f.tag, "power-set", Verdict::fail,
                         {{"a", std::to_string(a)}, {"missing", render_id_set(want)}});
    }
  }
  return make_result(f.tag, "power-set", Verdict::pass);
}

// Every subset of every member-set is realized iff the family of realized
// member-sets is closed under removing one element, so this is exact.
inline AxiomResult separation_semantic(const RelationFacts& f) {
  const std::size_t n = f.r->domain_size();
  for (ElementId a = 0; a < n; ++a) {
    auto ma = to_vector(f.r->members(a));
    for (std::size_t i = 0; i < ma.size(); ++i) {
      std::vector<ElementId> subset = ma;
      subset.erase(subset.begin() + static_cast<std::ptrdiff_t>(i));
      if (!f.index.first(subset)) {
        return make_result(f.tag, "separation-semantic", Verdict::fail,
                           {{"a", std::to_string(a)}, {"subset", render_id_set(subset)}}, "exhaustive");
      }
    }
  }
  return make_result(f.tag, "separation-semantic", Verdict::pass, {}, "exhaustive");
}

// Images of maps from a member-set of size d into the low elements C are
// exactly the nonempty subsets of C with at most d elements (plus the empty
// image of the empty map, realized by the element itself). Those subsets
// are enumerated outright when C is small and sampled otherwise.
inline AxiomResult replacement_semantic(const RelationFacts& f, const CheckOptions& opts) {
  static constexpr std::size_t kExhaustiveCodomain = 20;
  if (f.cycle) return skipped_for_cycle(f.tag, "replacement-semantic");
  const std::size_t n = f.r->domain_size();
  std::vector<ElementId> codomain;
  for (ElementId x = 0; x < n; ++x) {
    if (f.low(x)) codomain.push_back(x);
  }
  // witness_for[k]: lowest element with at least k members.
  std::vector<ElementId> witness_for;
  for (ElementId a = 0; a < n; ++a) {
    const std::size_t d = f.r->members(a).size();
    while (witness_for.size() <= d) witness_for.push_back(a);
  }
  const std::size_t max_degree = witness_for.empty() ? 0 : witness_for.size() - 1;

  auto failure = [&](ElementId a, const std::vector<ElementId>& image, const std::string& mode) {
    return make_result(f.tag, "replacement-semantic", Verdict::fail,
                       {{"a", std::to_string(a)}, {"image", render_id_set(image)}}, mode);
  };

  if (codomain.size() <= kExhaustiveCodomain) {
    const std::uint64_t limit = std::uint64_t{1} << codomain.size();
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
      const auto k = static_cast<std::size_t>(std::popcount(mask));
      if (k > max_degree) continue;
      std::vector<ElementId> image;
      for (std::size_t i = 0; i < codomain.size(); ++i) {
        if ((mask >> i) & 1u) image.push_back(codomain[i]);
      }
      if (!f.index.first(image)) return failure(witness_for[k], image, "exhaustive");
    }
    return make_result(f.tag, "replacement-semantic", Verdict::pass, {}, "exhaustive");
  }

  Rng rng(opts.seed);
  std::size_t drawn = 0;
  std::vector<std::pair<ElementId, std::vector<ElementId>>> failures;
  for (ElementId a = 0; a < n && failures.empty(); ++a) {
    const std::size_t d = f.r->members(a).size();
    if (d == 0) continue;
    for (unsigned k = 0; k < opts.samples; ++k) {
      std::vector<ElementId> image;
      for (std::size_t i = 0; i < d; ++i) image.push_back(codomain[rng.below(codomain.size())]);
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      ++drawn;
      if (!f.index.first(image)) {
        failures.emplace_back(a, std::move(image));
        break;
      }
    }
  }
  const std::string mode = "sampled:" + std::to_string(drawn) + ",seed=" + std::to_string(opts.seed);
  if (!failures.empty()) return failure(failures[0].first, failures[0].second, mode);
  return make_result(f.tag, "replacement-semantic", Verdict::pass, {}, mode);
}

}  // namespace detail

// The public single-axiom entry points recompute the shared facts; the
// full report computes them once per relation.

inline AxiomResult check_pairing(const DualStructure& s, Tag t) {
  return detail::pairing(detail::RelationFacts(s.relation(t), t));
}
inline AxiomResult check_union(const DualStructure& s, Tag t) {
  return detail::union_axiom(detail::RelationFacts(s.relation(t), t));
}
inline AxiomResult check_power_set(const DualStructure& s, Tag t) {
  return detail::power_set(detail::RelationFacts(s.relation(t), t));
}
inline AxiomResult check_separation_semantic(const DualStructure& s, Tag t) {
  return detail::separation_semantic(detail::RelationFacts(s.relation(t), t));
}
inline AxiomResult check_replacement_semantic(const DualStructure& s, Tag t, const CheckOptions& opts = {}) {
  return detail::replacement_semantic(detail::RelationFacts(s.relation(t), t), opts);
}

// ---------------------------------------------------------------------------
// First-order schemas

/// Outcome of one fixed battery sentence.
struct BatteryOutcome {
  std::string name;
  Tag tag;
  SchemaKind kind;
  bool holds;
  Counterexample counterexample;  // empty when holds
};

/// Evaluates every sentence of battery_instances() on s.
inline std::vector<BatteryOutcome> check_schema_battery(const DualStructure& s, EvalOptions opts = {}) {
  std::vector<BatteryOutcome> out;
  for (const auto& inst : battery_instances()) {
    auto c = falsify(s, inst.sentence, {}, opts);
    out.push_back({inst.name, inst.tag, inst.kind, !c.has_value(), c.value_or(Counterexample{})});
  }
  return out;
}

/// First-order formulas in the three variables x, y, z, enumerated by size
/// and deduplicated by their truth table on one structure.
class BoundedFormulas {
 public:
  static constexpr std::size_t kMaxDomain = 16;

  struct Entry {
    Formula formula;
    std::vector<std::uint64_t> table;  // bit (x*N + y)*N + z
  };

  BoundedFormulas(const DualStructure& s, unsigned max_size, std::size_t cap) : s_(&s), n_(s.size()) {
    if (n_ > kMaxDomain) throw Error("bounded schema enumeration supports domains up to 16 elements");
    words_ = (n_ * n_ * n_ + 63) / 64;
    if (n_ == 0) return;
    enumerate(max_size, cap);
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool truncated() const noexcept { return truncated_; }

  bool bit(const Entry& e, ElementId x, ElementId y, ElementId z) const {
    const std::size_t i = (static_cast<std::size_t>(x) * n_ + y) * n_ + z;
    return (e.table[i / 64] >> (i % 64)) & 1u;
  }

 private:
  static constexpr const char* kVars[3] = {"x", "y", "z"};

  std::size_t index(const std::size_t v[3]) const { return (v[0] * n_ + v[1]) * n_ + v[2]; }

  template <class Pred>
  std::vector<std::uint64_t> tabulate(Pred pred) const {
    std::vector<std::uint64_t> t(words_, 0);
    std::size_t v[3];
    for (v[0] = 0; v[0] < n_; ++v[0]) {
      for (v[1] = 0; v[1] < n_; ++v[1]) {
        for (v[2] = 0; v[2] < n_; ++v[2]) {
          if (pred(v)) {
            const std::size_t i = index(v);
            t[i / 64] |= std::uint64_t{1} << (i % 64);
          }
        }
      }
    }
    return t;
  }

  bool test(const std::vector<std::uint64_t>& t, const std::size_t v[3]) const {
    const std::size_t i = index(v);
    return (t[i / 64] >> (i % 64)) & 1u;
  }

  std::vector<std::uint64_t> quantify(const std::vector<std::uint64_t>& t, int var, bool universal) const {
    return tabulate([&](const std::size_t v[3]) {
      std::size_t w[3] = {v[0], v[1], v[2]};
      for (w[var] = 0; w[var] < n_; ++w[var]) {
        if (test(t, w) != universal) return !universal;
      }
      return universal;
    });
  }

  struct Hash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
      std::uint64_t h = 0xcbf29ce484222325ull;
      for (auto w : v) h = (h ^ w) * 0x100000001b3ull;
      return static_cast<std::size_t>(h);
    }
  };

  bool add(Formula f, std::vector<std::uint64_t> table, std::vector<std::size_t>& bucket, std::size_t cap) {
    if (entries_.size() >= cap) {
      truncated_ = true;
      return false;
    }
    if (!seen_.insert(table).second) return true;
    bucket.push_back(entries_.size());
    entries_.push_back({std::move(f), std::move(table)});
    return true;
  }

  void enumerate(unsigned max_size, std::size_t cap) {
    std::vector<std::vector<std::size_t>> by_size(max_size + 1);
    if (max_size == 0) return;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        add(Formula::equal(kVars[i], kVars[j]),
            tabulate([&](const std::size_t v[3]) { return v[i] == v[j]; }), by_size[1], cap);
      }
    }
    for (Tag t : {Tag::e1, Tag::e2}) {
      const auto& r = s_->relation(t);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          add(Formula::member(t, kVars[i], kVars[j]),
              tabulate([&](const std::size_t v[3]) {
                return r.contains(static_cast<ElementId>(v[i]), static_cast<ElementId>(v[j]));
              }),
              by_size[1], cap);
        }
      }
    }
    for (unsigned size = 2; size <= max_size; ++size) {
      for (std::size_t idx : by_size[size - 1]) {
        std::vector<std::uint64_t> t = entries_[idx].table;
        for (auto& w : t) w = ~w;
        mask_tail(t);
        if (!add(Formula::negation(entries_[idx].formula), std::move(t), by_size[size], cap)) return;
        for (int var = 0; var < 3; ++var) {
          for (bool universal : {false, true}) {
            auto q = quantify(entries_[idx].table, var, universal);
            Formula f = universal ? Formula::forall(kVars[var], entries_[idx].formula)
                                  : Formula::exists(kVars[var], entries_[idx].formula);
            if (!add(std::move(f), std::move(q), by_size[size], cap)) return;
          }
        }
      }
      for (unsigned a = 1; a + 1 < size; ++a) {
        const unsigned b = size - 1 - a;
        if (a > b) break;
        // Copy the index lists: `add` may append to by_size[size] only, but
        // entries_ can reallocate, so work with indices.
        const std::vector<std::size_t> left = by_size[a], right = by_size[b];
        for (std::size_t i = 0; i < left.size(); ++i) {
          for (std::size_t j = (a == b ? i + 1 : 0); j < right.size(); ++j) {
            const auto& ta = entries_[left[i]].table;
            const auto& tb = entries_[right[j]].table;
            std::vector<std::uint64_t> conj(words_), disj(words_);
            for (std::size_t w = 0; w < words_; ++w) {
              conj[w] = ta[w] & tb[w];
              disj[w] = ta[w] | tb[w];
            }
            Formula fa = entries_[left[i]].formula, fb = entries_[right[j]].formula;
            if (!add(Formula::conj(fa, fb), std::move(conj), by_size[size], cap)) return;
            if (!add(Formula::disj(std::move(fa), std::move(fb)), std::move(disj), by_size[size], cap)) return;
          }
        }
      }
    }
  }

  void mask_tail(std::vector<std::uint64_t>& t) const {
    const std::size_t bits = n_ * n_ * n_;
    if (bits % 64 != 0) t.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
  }

  const DualStructure* s_;
  std::size_t n_;
  std::size_t words_ = 0;
  std::vector<Entry> entries_;
  std::unordered_set<std::vector<std::uint64_t>, Hash> seen_;
  bool truncated_ = false;
};

namespace detail {

// Separation for tag t with separation variable x and parameters y, z;
// bounded replacement with u = x, v = y and parameter z. Each failure is
// returned as witness pairs.
inline std::optional<std::vector<std::pair<std::string, std::string>>> bounded_separation_failure(
    const DualStructure& s, Tag t, const BoundedFormulas& bf, const BoundedFormulas::Entry& e,
    const std::vector<bool>& realized) {
  const auto& r = s.relation(t);
  const std::size_t n = s.size();
  for (ElementId y = 0; y < n; ++y) {
    for (ElementId z = 0; z < n; ++z) {
      std::uint32_t selected = 0;
      for (ElementId x = 0; x < n; ++x) {
        if (bf.bit(e, x, y, z)) selected |= 1u << x;
      }
      for (ElementId a = 0; a < n; ++a) {
        std::uint32_t members = 0;
        for (ElementId m : r.members(a)) members |= 1u << m;
        if (!realized[members & selected]) {
          return std::vector<std::pair<std::string, std::string>>{
              {"formula", render(e.formula)}, {"y", std::to_string(y)}, {"z", std::to_string(z)},
              {"a", std::to_string(a)}};
        }
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::vector<std::pair<std::string, std::string>>> bounded_replacement_failure(
    const DualStructure& s, Tag t, const BoundedFormulas& bf, const BoundedFormulas::Entry& e,
    const std::vector<bool>& realized) {
  const auto& r = s.relation(t);
  const std::size_t n = s.size();
  std::uint32_t has_parent = 0;
  for (ElementId v = 0; v < n; ++v) {
    if (!r.parents(v).empty()) has_parent |= 1u << v;
  }
  for (ElementId z = 0; z < n; ++z) {
    std::vector<int> image_of(n, -1);
    bool functional = true;
    for (ElementId u = 0; u < n && functional; ++u) {
      for (ElementId v = 0; v < n; ++v) {
        if (!bf.bit(e, u, v, z)) continue;
        if (image_of[u] != -1) {
          functional = false;
          break;
        }
        image_of[u] = static_cast<int>(v);
      }
    }
    if (!functional) continue;
    for (ElementId a = 0; a < n; ++a) {
      std::uint32_t image = 0;
      for (ElementId u : r.members(a)) {
        if (image_of[u] >= 0) image |= 1u << image_of[u];
      }
      image &= has_parent;
      if (!realized[image]) {
        return std::vector<std::pair<std::string, std::string>>{
            {"formula", render(e.formula)}, {"z", std::to_string(z)}, {"a", std::to_string(a)}};
      }
    }
  }
  return std::nullopt;
}

inline std::vector<bool> realized_masks(const MembershipRelation& r) {
  std::vector<bool> out(std::size_t{1} << r.domain_size(), false);
  for (ElementId a = 0; a < r.domain_size(); ++a) {
    std::uint32_t m = 0;
    for (ElementId c : r.members(a)) m |= 1u << c;
    out[m] = true;
  }
  return out;
}

inline void append_schema_results(const DualStructure& s, const CheckOptions& opts, std::vector<AxiomResult>& out) {
  static const char* kNames[2] = {"replacement-schema", "separation-schema"};
  auto skipped = [&](const std::string& reason) {
    for (Tag t : {Tag::e1, Tag::e2}) {
      for (const char* name : kNames) out.push_back(make_result(t, name, Verdict::skipped, {{"reason", reason}}));
    }
  };
  if (opts.mode == SchemaMode::semantic) return skipped("mode-semantic");

  if (opts.mode == SchemaMode::battery) {
    if (s.size() > opts.battery_limit) return skipped("domain-too-large");
    auto outcomes = check_schema_battery(s, opts.eval);
    for (Tag t : {Tag::e1, Tag::e2}) {
      for (SchemaKind kind : {SchemaKind::replacement, SchemaKind::separation}) {
        const char* name = kind == SchemaKind::replacement ? kNames[0] : kNames[1];
        AxiomResult r = make_result(t, name, Verdict::pass, {}, "battery");
        for (const auto& o : outcomes) {
          if (o.tag != t || o.kind != kind || o.holds) continue;
          r.verdict = Verdict::fail;
          r.witness.emplace_back("instance", o.name);
          for (const auto& [v, x] : o.counterexample) r.witness.emplace_back(v, std::to_string(x));
          break;
        }
        out.push_back(std::move(r));
      }
    }
    return;
  }

  if (s.size() > BoundedFormulas::kMaxDomain) return skipped("domain-too-large");
  BoundedFormulas bf(s, opts.depth, opts.formula_cap);
  std::string mode = "bounded:k=" + std::to_string(opts.depth) + ",formulas=" + std::to_string(bf.entries().size());
  if (bf.truncated()) mode += ",truncated";
  for (Tag t : {Tag::e1, Tag::e2}) {
    const auto realized = realized_masks(s.relation(t));
    for (SchemaKind kind : {SchemaKind::replacement, SchemaKind::separation}) {
      const char* name = kind == SchemaKind::replacement ? kNames[0] : kNames[1];
      AxiomResult r = make_result(t, name, Verdict::pass, {}, mode);
      for (const auto& e : bf.entries()) {
        auto w = kind == SchemaKind::replacement ? bounded_replacement_failure(s, t, bf, e, realized)
                                                 : bounded_separation_failure(s, t, bf, e, realized);
        if (w) {
          r.verdict = Verdict::fail;
          r.witness = std::move(*w);
          break;
        }
      }
      out.push_back(std::move(r));
    }
  }
}

}  // namespace detail

/// Every check for both relations, sorted by (tag, axiom).
inline AxiomReport full_report(const DualStructure& s, const CheckOptions& opts = {}) {
  AxiomReport report;
  for (Tag t : {Tag::e1, Tag::e2}) {
    detail::RelationFacts facts(s.relation(t), t);
    report.results.push_back(check_extensionality(s, t));
    report.results.push_back(facts.cycle ? detail::make_result(t, "foundation", Verdict::fail,
                                                               {{"cycle", render_cycle(*facts.cycle)}})
                                         : detail::make_result(t, "foundation", Verdict::pass));
    report.results.push_back(detail::pairing(facts));
    report.results.push_back(detail::power_set(facts));
    report.results.push_back(detail::replacement_semantic(facts, opts));
    report.results.push_back(detail::separation_semantic(facts));
    report.results.push_back(detail::union_axiom(facts));
  }
  detail::append_schema_results(s, opts, report.results);
  std::stable_sort(report.results.begin(), report.results.end(), [](const AxiomResult& a, const AxiomResult& b) {
    return a.tag != b.tag ? a.tag < b.tag : a.axiom < b.axiom;
  });
  return report;
}

/// The semantic checks of one relation: extensionality, foundation,
/// pairing, union, power set, separation and replacement.
inline bool semantic_battery_passes(const DualStructure& s, Tag t, const CheckOptions& opts = {}) {
  detail::RelationFacts facts(s.relation(t), t);
  if (facts.cycle || !check_extensionality(s, t).passed()) return false;
  return detail::pairing(facts).passed() && detail::union_axiom(facts).passed() &&
         detail::power_set(facts).passed() && detail::separation_semantic(facts).passed() &&
         detail::replacement_semantic(facts, opts).passed();
}

}  // namespace incat
