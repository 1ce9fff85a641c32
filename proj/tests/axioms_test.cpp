#include <gtest/gtest.h>

#include "incat/axioms.hpp"
#include "oracles.hpp"

using namespace incat;

namespace {

DualStructure twin(const MembershipRelation& r) { return DualStructure(r, r); }

void expect_characterization(const MembershipRelation& r) {
  const bool want = oracle::isomorphic_v_level(r).has_value();
  const DualStructure s = twin(r);
  ASSERT_EQ(semantic_battery_passes(s, Tag::e1), want) << serialize_structure(s);
}

}  // namespace

TEST(Axioms, UniversesPassEverything) {
  for (unsigned n = 1; n <= 4; ++n) {
    const auto report = full_report(build_v_universe(n));
    EXPECT_TRUE(report.all_pass()) << report.render();
    for (const auto& r : report.results) EXPECT_EQ(r.verdict, Verdict::pass) << r.render();
  }
}

TEST(Axioms, V5Semantic) {
  CheckOptions opts;
  opts.mode = SchemaMode::semantic;
  const auto report = full_report(build_v_universe(5), opts);
  EXPECT_TRUE(report.all_pass()) << report.render();
  EXPECT_EQ(report.find(Tag::e1, "replacement-semantic")->mode, "exhaustive");
  EXPECT_EQ(report.find(Tag::e1, "separation-schema")->render(), "e1 separation-schema skipped reason=mode-semantic");
}

TEST(Axioms, ScrambledUniversePasses) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = scramble(build_v_universe(4), Permutation::random(16, seed));
    EXPECT_TRUE(full_report(s).all_pass());
  }
}

TEST(Axioms, ExtensionalityAndFoundationAgreeWithOracles) {
  for (std::uint64_t mask = 0; mask < (1u << 9); ++mask) {
    const auto s = twin(oracle::relation_from_mask(3, mask));
    EXPECT_EQ(check_extensionality(s, Tag::e1).passed(), oracle::extensional(s.e1()));
    EXPECT_EQ(check_foundation(s, Tag::e2).passed(), oracle::acyclic(s.e2()));
  }
  const auto single = twin(MembershipRelation(1, {}));
  EXPECT_TRUE(check_extensionality(single, Tag::e1).passed());
}

TEST(Axioms, ChainExamples) {
  const auto chain = twin(MembershipRelation(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(check_pairing(chain, Tag::e1).render(), "e1 pairing fail a=0 b=1 missing={0,1}");
  EXPECT_TRUE(check_separation_semantic(chain, Tag::e1).passed());
  EXPECT_TRUE(check_union(chain, Tag::e1).passed());
  EXPECT_FALSE(check_power_set(chain, Tag::e1).passed());
}

TEST(Axioms, MissingSubsetFailsSeparation) {
  const auto missing = twin(MembershipRelation(4, {{0, 1}, {0, 3}, {2, 3}, {1, 2}}));  // 3 = {0, 2}, nothing is {2}
  const auto r = check_separation_semantic(missing, Tag::e1);
  EXPECT_EQ(r.render(), "e1 separation-semantic fail a=3 subset={2} mode=exhaustive");
}

TEST(Axioms, TamperTargetsTheExpectedAxiom) {
  const auto v3 = build_v_universe(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto cyc = full_report(tamper(v3, TamperKind::add_cycle, seed));
    EXPECT_EQ(cyc.find(Tag::e1, "foundation")->verdict, Verdict::fail);
    EXPECT_EQ(cyc.find(Tag::e1, "pairing")->verdict, Verdict::skipped);
    const auto ext = full_report(tamper(v3, TamperKind::break_extensionality, seed));
    EXPECT_EQ(ext.find(Tag::e1, "extensionality")->verdict, Verdict::fail);
    EXPECT_EQ(ext.find(Tag::e1, "foundation")->verdict, Verdict::pass);
    for (const auto* rep : {&cyc, &ext}) {
      for (const auto& r : rep->results)
        if (r.tag == Tag::e2) {
          EXPECT_TRUE(r.passed()) << r.render();
        }
    }
  }
}

TEST(Axioms, SemanticCharacterizationSmallDigraphs) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask)
      expect_characterization(oracle::relation_from_mask(n, mask));
}

TEST(Axioms, SemanticCharacterizationAcyclicFourNodes) {
  for (std::uint64_t mask = 0; mask < (1u << 16); ++mask) {
    const auto r = oracle::relation_from_mask(4, mask);
    if (oracle::acyclic(r)) expect_characterization(r);
  }
}

TEST(Axioms, SemanticCharacterizationTransitivePartsOfV4) {
  const auto parts = oracle::transitive_parts_of_v4();
  std::size_t hits = 0;
  for (const auto& r : parts) {
    expect_characterization(r);
    hits += oracle::isomorphic_v_level(r).has_value();
  }
  EXPECT_EQ(hits, 4u);  // V_1 .. V_4
}

TEST(Axioms, SemanticCharacterizationRandomExtensional) {
  for (std::size_t size = 1; size <= 16; ++size)
    for (std::uint64_t seed = 0; seed < 40; ++seed) expect_characterization(random_extensional_relation(size, seed));
}

TEST(Axioms, BatteryMatchesDirectEvaluation) {
  Rng rng(17);
  for (int i = 0; i < 120; ++i) {
    const std::size_t n = 1 + rng.below(5);
    DualStructure s(oracle::relation_from_mask(n, rng.next()), oracle::relation_from_mask(n, rng.next()));
    if (i % 3 == 0) s = DualStructure(random_extensional_relation(n, i), random_extensional_relation(n, i + 1));
    const auto want = oracle::battery_truth(s);
    const auto got = check_schema_battery(s);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < got.size(); ++k) ASSERT_EQ(got[k].holds, want[k]) << got[k].name << "\n" << serialize_structure(s);
  }
}

TEST(Axioms, SampledReplacementOnWideDomains) {
  CheckOptions opts;
  opts.seed = 9;
  const auto s = twin(random_extensional_relation(40, 3));
  const auto r = check_replacement_semantic(s, Tag::e1, opts);
  EXPECT_EQ(r.mode.rfind("sampled:", 0), 0u) << r.render();
  EXPECT_NE(r.mode.find(",seed=9"), std::string::npos) << r.render();
  EXPECT_EQ(r, check_replacement_semantic(s, Tag::e1, opts));
}

TEST(Axioms, BoundedModeOnSmallStructures) {
  CheckOptions opts;
  opts.mode = SchemaMode::bounded;
  opts.depth = 7;
  const auto v3 = full_report(build_v_universe(3), opts);
  EXPECT_TRUE(v3.all_pass()) << v3.render();
  EXPECT_EQ(v3.find(Tag::e2, "separation-schema")->mode.rfind("bounded:k=7,formulas=", 0), 0u);
  // e1 a chain {}, {{}}, {{{}}}; e2 = V_3 minus {{{}}}
  const DualStructure chain_v3(MembershipRelation(3, {{0, 1}, {1, 2}}), MembershipRelation(3, {{0, 1}, {0, 2}, {1, 2}}));
  const auto report = full_report(chain_v3, opts);
  EXPECT_EQ(report.find(Tag::e2, "separation-schema")->verdict, Verdict::fail) << report.render();
  EXPECT_EQ(report.find(Tag::e1, "separation-schema")->verdict, Verdict::pass) << report.render();
}

TEST(Axioms, LargeDomainsSkipTheSchemas) {
  const auto s = twin(random_extensional_relation(40, 1));
  EXPECT_EQ(full_report(s).find(Tag::e1, "separation-schema")->render(),
            "e1 separation-schema skipped reason=domain-too-large");
  CheckOptions opts;
  opts.mode = SchemaMode::bounded;
  EXPECT_EQ(full_report(s, opts).find(Tag::e2, "replacement-schema")->verdict, Verdict::skipped);
}

TEST(Axioms, ReportTextRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = tamper(build_v_universe(3), static_cast<TamperKind>(seed % 3), seed);
    const auto report = full_report(s);
    EXPECT_EQ(parse_axiom_report(report.render()), report);
  }
  AxiomResult quoted{Tag::e2, "union", Verdict::fail, {{"note", "two words"}}, ""};
  AxiomReport r{{quoted}};
  EXPECT_EQ(parse_axiom_report(r.render()), r);
  EXPECT_THROW(parse_axiom_report("e3 union pass\n"), ParseError);
  EXPECT_THROW(parse_axiom_report("e1 union maybe\n"), ParseError);
}

TEST(Axioms, ModeNames) {
  EXPECT_EQ(parse_schema_mode("bounded"), SchemaMode::bounded);
  EXPECT_THROW(parse_schema_mode("exhaustive"), Error);
}
