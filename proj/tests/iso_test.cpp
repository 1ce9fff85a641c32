#include <gtest/gtest.h>

#include "incat/iso.hpp"
#include "incat/lemmas.hpp"
#include "oracles.hpp"

using namespace incat;

namespace {

std::vector<MembershipRelation> acyclic_relations(std::size_t n) {
  std::vector<MembershipRelation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
    auto r = oracle::relation_from_mask(n, mask);
    if (oracle::acyclic(r)) out.push_back(std::move(r));
  }
  return out;
}

// phi against the collapse oracle when both relations are extensional, and
// against brute-force witness counting on small domains. With e2 extensional
// every witness is forced step by step, so existence must match exactly;
// otherwise the greedy choice may miss a witness and only soundness holds.
void expect_phi_matches_oracles(const DualStructure& s) {
  const auto c1 = oracle::collapse_strings(s.e1()), c2 = oracle::collapse_strings(s.e2());
  const bool extensional = oracle::extensional(s.e1()) && oracle::extensional(s.e2());
  IsoEngine engine(s);
  for (ElementId x = 0; x < s.size(); ++x) {
    for (ElementId y = 0; y < s.size(); ++y) {
      const auto w = engine.build_psi(x, y);
      if (w) {
        ASSERT_FALSE(psi_violation(s, *w).has_value());
      }
      if (extensional) {
        ASSERT_EQ(w.has_value(), c1[x] == c2[y]) << x << " " << y << "\n" << serialize_structure(s);
      }
      if (s.size() <= 4) {
        const std::size_t count = oracle::count_psi_witnesses(s, x, y);
        if (oracle::extensional(s.e2())) {
          ASSERT_EQ(w.has_value(), count > 0) << x << " " << y << "\n" << serialize_structure(s);
        } else if (w) {
          ASSERT_GT(count, 0u);
        }
        if (extensional) {
          ASSERT_LE(count, 1u);
        }
      }
    }
  }
}

}  // namespace

TEST(Psi, PhiMatchesOraclesOnAllSmallAcyclicPairs) {
  const auto rels = acyclic_relations(3);
  ASSERT_EQ(rels.size(), 25u);
  for (const auto& a : rels)
    for (const auto& b : rels) expect_phi_matches_oracles(DualStructure(a, b));
}

TEST(Psi, PhiMatchesCollapseOnRandomExtensionalPairs) {
  for (std::size_t size = 1; size <= 16; ++size)
    for (std::uint64_t seed = 0; seed < 15; ++seed)
      expect_phi_matches_oracles(
          DualStructure(random_extensional_relation(size, seed), random_extensional_relation(size, seed + 77)));
}

TEST(Psi, MemoizationDoesNotChangeResults) {
  const DualStructure s(random_extensional_relation(12, 4), random_extensional_relation(12, 5));
  IsoEngine memo(s, true), plain(s, false);
  for (ElementId x = 0; x < 12; ++x)
    for (ElementId y = 0; y < 12; ++y) EXPECT_EQ(memo.build_psi(x, y), plain.build_psi(x, y));
}

TEST(Psi, ViolationsAreNamed) {
  const auto s = build_v_universe(3);
  auto w = *build_psi(s, 3, 3);
  EXPECT_TRUE(psi_holds(s, w));
  auto bad = w;
  bad.f[1] = 0;
  EXPECT_EQ(psi_violation(s, bad)->substr(0, 4), "(iii");
  bad = w;
  bad.f.erase(0);
  EXPECT_EQ(psi_violation(s, bad)->substr(0, 3), "(i)");
  bad = w;
  bad.y = 2;
  EXPECT_TRUE(psi_violation(s, bad).has_value());
}

TEST(Psi, CycleBelowThrows) {
  const DualStructure s(MembershipRelation(3, {{0, 1}, {1, 0}}), MembershipRelation(3, {{0, 1}}));
  IsoEngine engine(s);
  EXPECT_THROW(engine.build_psi(0, 0), IllFoundedError);
  EXPECT_TRUE(engine.phi(2, 2));
}

TEST(Ordinals, OfV4) {
  const auto v4 = build_v_universe(4);
  std::vector<ElementId> ordinals;
  for (ElementId x = 0; x < 16; ++x)
    if (is_ordinal(v4.e1(), x)) ordinals.push_back(x);
  EXPECT_EQ(ordinals, (std::vector<ElementId>{0, 1, 3, 11}));
}

TEST(Ordinals, Levels) {
  const auto v4 = build_v_universe(4);
  const std::pair<ElementId, ElementId> want[] = {{0, 0}, {1, 1}, {3, 3}, {11, 15}};
  for (auto [alpha, level] : want) {
    const auto l = internal_level(v4, Tag::e1, alpha);
    ASSERT_TRUE(l.element.has_value());
    EXPECT_EQ(*l.element, level);
  }
  EXPECT_THROW(internal_level(v4, Tag::e1, 2), Error);
}

TEST(Ordinals, LevelExtensionOnScrambles) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = Permutation::random(16, seed);
    const auto s = scramble(build_v_universe(4), p);
    const auto bar = extend_to_level(s, *build_psi(s, 11, p(11)));
    EXPECT_EQ(bar.x, 15u);
    EXPECT_EQ(bar.y, p(15));
    EXPECT_EQ(bar.f.size(), 5u);  // V_3 = {0, 1, 2, 3} and the level itself
    for (const auto& [u, v] : bar.f) EXPECT_EQ(v, p(u));
  }
}

TEST(Ordinals, LevelExtensionFailsAcrossTheGap) {
  const auto gallery = counterexample_gallery();
  const DualStructure& gap = gallery[3].structure;
  try {
    const auto w = build_psi(gap, 11, 3);  // the ordinal 3 on both sides
    ASSERT_TRUE(w.has_value());
    extend_to_level(gap, *w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(std::string(e.what()), "unrealized image set: u=2 image={0}");
  }
}

TEST(Global, ScramblesReturnThePermutation) {
  for (unsigned n = 1; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const auto v = build_v_universe(n);
      const auto p = Permutation::random(v.size(), seed);
      const auto s = scramble(v, p);
      const auto out = global_isomorphism(s);
      ASSERT_TRUE(out.ok());
      EXPECT_EQ(out.certificate->permutation(), p);
      EXPECT_TRUE(verify_certificate(s, *out.certificate).ok);
    }
  }
}

TEST(Global, IdentityWhenRelationsCoincide) {
  const auto out = global_isomorphism(build_v_universe(4));
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out.certificate->permutation(), Permutation::identity(16));
}

TEST(Global, AgreesWithBruteForceSearch) {
  std::size_t isomorphic = 0;
  for (std::size_t size = 1; size <= 7; ++size) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto r1 = random_extensional_relation(size, seed);
      // Half the cases are relabeled copies, so both outcomes are exercised.
      const auto r2 = seed % 2 ? random_extensional_relation(size, seed + 500)
                               : scramble(DualStructure(r1, r1), Permutation::random(size, seed)).e2();
      const DualStructure s(r1, r2);
      const auto all = oracle::all_isomorphisms(s);
      ASSERT_LE(all.size(), 1u);
      const auto out = global_isomorphism(s);
      ASSERT_EQ(out.ok(), !all.empty()) << serialize_structure(s);
      if (out.ok()) {
        EXPECT_EQ(out.certificate->map, all.front());
        ++isomorphic;
      }
    }
  }
  EXPECT_GT(isomorphic, 50u);
}

TEST(Global, ChainVersusV3) {
  const DualStructure s = counterexample_gallery()[0].structure;
  const auto out = global_isomorphism(s);
  ASSERT_FALSE(out.ok());
  EXPECT_EQ(render_diagnostic(*out.diagnostic),
            "fail both-directions-fail\n"
            "unmatched e1 2 collapse {{{}}}\n"
            "unmatched e2 2 collapse {{},{{}}}\n");
}

TEST(Global, RejectsBadInput) {
  const auto v3 = build_v_universe(3);
  EXPECT_THROW(global_isomorphism(tamper(v3, TamperKind::add_cycle, 1)), IllFoundedError);
  EXPECT_THROW(global_isomorphism(tamper(v3, TamperKind::break_extensionality, 1)), NonExtensionalError);
}

TEST(Certificate, TextRoundTrip) {
  const auto s = scramble(build_v_universe(4), Permutation::random(16, 3));
  const auto c = *global_isomorphism(s).certificate;
  const auto text = render_certificate(c);
  EXPECT_EQ(text.substr(0, 7), "iso 16\n");
  EXPECT_EQ(parse_certificate(text).map, c.map);
  EXPECT_THROW(parse_certificate("iso 2\nmap 0 1\n"), ParseError);
  EXPECT_THROW(parse_certificate("map 0 1\n"), ParseError);
  EXPECT_THROW(parse_certificate("iso 2\nmap 0 1\nmap 0 0\n"), ParseError);
}

TEST(Certificate, VerifierRejects) {
  const auto v3 = build_v_universe(3);
  EXPECT_TRUE(verify_certificate(v3, IsoCertificate{{0, 1, 2, 3}, {}}).ok);
  const auto dup = verify_certificate(v3, IsoCertificate{{0, 0, 2, 3}, {}});
  EXPECT_FALSE(dup.ok);
  EXPECT_NE(dup.problem.find("not injective"), std::string::npos);
  EXPECT_FALSE(verify_certificate(v3, IsoCertificate{{0, 2, 1, 3}, {}}).ok);
  EXPECT_FALSE(verify_certificate(v3, IsoCertificate{{0, 1, 2}, {}}).ok);
  const DualStructure chain_v3(MembershipRelation(4, {{0, 1}, {1, 2}, {0, 3}}), v3.e2());
  const auto c = verify_certificate(chain_v3, IsoCertificate{{0, 1, 2, 3}, {}});
  EXPECT_EQ(c.problem, "e2 edge (1,3) has preimage (1,3), not an e1 edge");
}

TEST(Certificate, VerifierMatchesBruteForce) {
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng.below(4);
    const DualStructure s(oracle::relation_from_mask(n, rng.next()), oracle::relation_from_mask(n, rng.next()));
    const auto all = oracle::all_isomorphisms(s);
    std::vector<ElementId> p(n);
    for (ElementId k = 0; k < n; ++k) p[k] = k;
    do {
      const bool want = std::find(all.begin(), all.end(), p) != all.end();
      ASSERT_EQ(verify_certificate(s, IsoCertificate{p, {}}).ok, want);
    } while (std::next_permutation(p.begin(), p.end()));
  }
}
