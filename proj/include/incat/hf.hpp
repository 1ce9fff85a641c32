#pragma once

/// @file hf.hpp
/// @brief Hereditarily finite sets and the Mostowski collapse.
///
/// Sets are hash-consed in an HfTable: structurally equal sets receive the
/// same id, so equality is an id comparison. Ackermann numbers are only
/// materialized on request, since codes of V_5 members already need 2^16
/// bits and codes one level higher are out of reach.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "incat/errors.hpp"
#include "incat/structure.hpp"

namespace incat {

using BigInt = boost::multiprecision::cpp_int;

/// Handle to an interned hereditarily finite set. Only meaningful together
/// with the HfTable that produced it.
struct HfCode {
  std::uint32_t id = 0;

  friend auto operator<=>(const HfCode&, const HfCode&) = default;
};

class HfTable {
 public:
  HfTable() { nodes_.push_back(Node{}); index_.emplace(std::vector<std::uint32_t>{}, 0u); }

  static constexpr HfCode empty() noexcept { return HfCode{0}; }

  /// Interns the set with the given members. Duplicates are ignored.
  HfCode intern(std::vector<HfCode> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::vector<std::uint32_t> key;
    key.reserve(members.size());
    for (HfCode m : members) {
      if (m.id >= nodes_.size()) throw Error("foreign HfCode");
      key.push_back(m.id);
    }
    auto [it, inserted] = index_.try_emplace(std::move(key), static_cast<std::uint32_t>(nodes_.size()));
    if (!inserted) return HfCode{it->second};

    Node node;
    node.members = std::move(members);
    node.ackermann_desc = node.members;
    std::sort(node.ackermann_desc.begin(), node.ackermann_desc.end(),
              [this](HfCode a, HfCode b) { return ackermann_less(b, a); });
    for (HfCode m : node.members) node.rank = std::max(node.rank, nodes_[m.id].rank + 1);
    nodes_.push_back(std::move(node));
    return HfCode{it->second};
  }

  std::size_t size() const noexcept { return nodes_.size(); }

  /// Members sorted by interned id.
  const std::vector<HfCode>& members(HfCode h) const { return nodes_.at(h.id).members; }

  /// 0 for the empty set, otherwise one more than the largest member rank.
  std::uint32_t rank(HfCode h) const { return nodes_.at(h.id).rank; }

  /// Strict order by Ackermann code, without computing the codes: the set
  /// with the larger greatest member of the symmetric difference is larger.
  bool ackermann_less(HfCode a, HfCode b) const {
    if (a == b) return false;
    const auto& da = nodes_[a.id].ackermann_desc;
    const auto& db = nodes_[b.id].ackermann_desc;
    std::size_t i = 0;
    for (; i < da.size() && i < db.size(); ++i) {
      if (da[i] != db[i]) return ackermann_less(da[i], db[i]);
    }
    return da.size() < db.size();
  }

  /// Nested braces with members in ascending Ackermann order, e.g.
  /// `{{},{{}}}` for {0, {0}}.
  std::string render(HfCode h) const {
    std::string out;
    render_into(h, out);
    return out;
  }

  /// code(0) = 0, code(x) = sum of 2^code(m) over members m.
  BigInt ackermann_code(HfCode h) const {
    BigInt code = 0;
    for (HfCode m : nodes_.at(h.id).members) {
      const BigInt e = ackermann_code(m);
      if (e > 1u << 24) throw Error("Ackermann code too large to materialize");
      boost::multiprecision::bit_set(code, e.convert_to<unsigned>());
    }
    return code;
  }

  /// The Ackermann code when it is below 2^64.
  std::optional<std::uint64_t> small_code(HfCode h) const {
    std::uint64_t code = 0;
    for (HfCode m : nodes_.at(h.id).members) {
      auto e = small_code(m);
      if (!e || *e >= 64) return std::nullopt;
      code |= std::uint64_t{1} << *e;
    }
    return code;
  }

  /// Inverse of ackermann_code.
  HfCode decode(const BigInt& n) {
    if (n < 0) throw Error("negative Ackermann code");
    std::vector<HfCode> members;
    if (n != 0) {
      const unsigned top = boost::multiprecision::msb(n);
      for (unsigned bit = 0; bit <= top; ++bit) {
        if (boost::multiprecision::bit_test(n, bit)) members.push_back(decode(BigInt(bit)));
      }
    }
    return intern(std::move(members));
  }

 private:
  struct Node {
    std::vector<HfCode> members;
    std::vector<HfCode> ackermann_desc;
    std::uint32_t rank = 0;
  };

  void render_into(HfCode h, std::string& out) const {
    const auto& desc = nodes_.at(h.id).ackermann_desc;
    out += '{';
    for (auto it = desc.rbegin(); it != desc.rend(); ++it) {
      if (it != desc.rbegin()) out += ',';
      render_into(*it, out);
    }
    out += '}';
  }

  std::vector<Node> nodes_;
  std::map<std::vector<std::uint32_t>, std::uint32_t> index_;
};

/// Result of collapsing one element.
struct CollapseResult {
  HfCode code;
  /// Two distinct elements below (or equal to) the collapsed element that
  /// received the same set; present iff the relation is not extensional on
  /// that part.
  std::optional<std::pair<ElementId, ElementId>> duplicate;

  bool warning() const noexcept { return duplicate.has_value(); }
};

/// Mostowski collapse of a whole relation. Elements are collapsed lazily and
/// cached; a cycle below a requested element raises IllFoundedError.
class Collapser {
 public:
  Collapser(HfTable& table, const MembershipRelation& r, Tag tag = Tag::e1)
      : table_(&table), r_(&r), tag_(tag), state_(r.domain_size(), kUnvisited),
        codes_(r.domain_size()) {}

  HfCode operator()(ElementId x) {
    if (state_[x] != kDone) visit(x);
    return codes_[x];
  }

  /// Collapse plus the extensionality warning for the part below x.
  CollapseResult collapse(ElementId x) {
    CollapseResult out{(*this)(x), std::nullopt};
    std::vector<ElementId> below{x};
    std::vector<bool> seen(r_->domain_size(), false);
    seen[x] = true;
    for (std::size_t i = 0; i < below.size(); ++i) {
      for (ElementId m : r_->members(below[i])) {
        if (!seen[m]) {
          seen[m] = true;
          below.push_back(m);
        }
      }
    }
    std::sort(below.begin(), below.end());
    std::map<HfCode, ElementId> first;
    for (ElementId v : below) {
      auto [it, inserted] = first.emplace(codes_[v], v);
      if (!inserted) {
        out.duplicate = std::make_pair(it->second, v);
        break;
      }
    }
    return out;
  }

  /// Collapses every element.
  std::vector<HfCode> all() {
    std::vector<HfCode> out(r_->domain_size());
    for (ElementId x = 0; x < out.size(); ++x) out[x] = (*this)(x);
    return out;
  }

 private:
  static constexpr std::uint8_t kUnvisited = 0, kActive = 1, kDone = 2;

  void visit(ElementId root) {
    // Iterative DFS; `stack` holds (element, next member index).
    std::vector<std::pair<ElementId, std::size_t>> stack{{root, 0}};
    state_[root] = kActive;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      auto members = r_->members(v);
      if (next < members.size()) {
        const ElementId m = members[next++];
        if (state_[m] == kDone) continue;
        if (state_[m] == kActive) {
          // Each frame is a member of the frame below it, so reading the
          // stack downwards from v to m walks child-to-parent.
          std::vector<std::size_t> cycle{m};
          for (auto f = stack.rbegin(); f->first != m; ++f) cycle.push_back(f->first);
          cycle.push_back(m);
          for (auto& st : state_) {
            if (st == kActive) st = kUnvisited;
          }
          throw IllFoundedError(tag_number(tag_), std::move(cycle));
        }
        state_[m] = kActive;
        stack.emplace_back(m, 0);
        continue;
      }
      std::vector<HfCode> member_codes;
      member_codes.reserve(members.size());
      for (ElementId m : members) member_codes.push_back(codes_[m]);
      codes_[v] = table_->intern(std::move(member_codes));
      state_[v] = kDone;
      stack.pop_back();
    }
  }

  HfTable* table_;
  const MembershipRelation* r_;
  Tag tag_;
  std::vector<std::uint8_t> state_;
  std::vector<HfCode> codes_;
};

/// One-shot collapse of x under r.
inline CollapseResult collapse(HfTable& table, const MembershipRelation& r, ElementId x,
                               Tag tag = Tag::e1) {
  Collapser c(table, r, tag);
  return c.collapse(x);
}

inline std::uint32_t rank(const HfTable& table, HfCode h) { return table.rank(h); }

/// All sets of rank below n, i.e. V_n, in ascending Ackermann order. Built by
/// iterating the power set from the empty level, independently of decode().
inline std::vector<HfCode> v_level_codes(HfTable& table, unsigned n) {
  if (n > kMaxUniverseLevel) throw Error("level " + std::to_string(n) + " exceeds the supported maximum of 5");
  std::vector<HfCode> level;
  for (unsigned k = 0; k < n; ++k) {
    const std::size_t width = level.size();
    std::vector<HfCode> next;
    next.reserve(std::size_t{1} << width);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << width); ++mask) {
      std::vector<HfCode> subset;
      for (std::size_t i = 0; i < width; ++i) {
        if ((mask >> i) & 1u) subset.push_back(level[i]);
      }
      next.push_back(table.intern(std::move(subset)));
    }
    std::sort(next.begin(), next.end(),
              [&table](HfCode a, HfCode b) { return table.ackermann_less(a, b); });
    level = std::move(next);
  }
  return level;
}

}  // namespace incat
