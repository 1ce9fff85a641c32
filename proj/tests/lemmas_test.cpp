#include <gtest/gtest.h>

#include "incat/lemmas.hpp"
#include "oracles.hpp"

using namespace incat;

TEST(Suite, ScrambledUniversesPassEveryLemma) {
  for (unsigned n = 1; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto v = build_v_universe(n);
      const auto report = run_suite(scramble(v, Permutation::random(v.size(), seed)));
      ASSERT_EQ(report.lemmas.size(), lemma_names().size());
      for (std::size_t i = 0; i < report.lemmas.size(); ++i) {
        EXPECT_EQ(report.lemmas[i].name, lemma_names()[i]);
        EXPECT_EQ(report.lemmas[i].verdict, LemmaVerdict::pass) << report.render();
      }
    }
  }
}

TEST(Suite, ReportFormat) {
  const auto report = run_suite(build_v_universe(3));
  EXPECT_EQ(report.render(),
            "lemma lemma1-uniqueness pass pairs=16\n"
            "lemma lemma2-restriction pass checks=8\n"
            "lemma lemma3-functional-injective pass pairs=4\n"
            "lemma lemma4-membership pass checks=16\n"
            "lemma lemma5-ordinals pass ordinal-pairs=3\n"
            "lemma lemma6-level-extension pass levels=3\n"
            "lemma lemma7-totality pass elements=4\n"
            "lemma proposition-isomorphism pass certificate=verified\n"
            "corpus seeds=none sizes=4\n");
}

TEST(Suite, CycleMakesEverythingNotApplicable) {
  const auto report = run_suite(tamper(build_v_universe(3), TamperKind::add_cycle, 2));
  for (const auto& l : report.lemmas) {
    EXPECT_EQ(l.verdict, LemmaVerdict::not_applicable);
    EXPECT_EQ(l.detail.rfind("reason=foundation-fails relation=e1 cycle=", 0), 0u) << l.detail;
  }
  EXPECT_FALSE(report.any_fail());
}

TEST(Suite, NonExtensionalMakesEverythingNotApplicable) {
  const auto report = run_suite(counterexample_gallery()[1].structure);
  for (const auto& l : report.lemmas) {
    EXPECT_EQ(l.verdict, LemmaVerdict::not_applicable);
    EXPECT_EQ(l.detail, "reason=extensionality-fails relation=e2 a=1 b=2 ambiguous-psi=3");
  }
}

TEST(Suite, AxiomFailureGatesLevelLemmas) {
  const auto report = run_suite(counterexample_gallery()[0].structure);
  EXPECT_EQ(report.find("lemma6-level-extension")->verdict, LemmaVerdict::not_applicable);
  EXPECT_EQ(report.find("lemma7-totality")->verdict, LemmaVerdict::not_applicable);
  EXPECT_EQ(report.find("lemma1-uniqueness")->verdict, LemmaVerdict::pass);
  const auto* prop = report.find("proposition-isomorphism");
  EXPECT_EQ(prop->verdict, LemmaVerdict::fail);
  EXPECT_EQ(prop->detail, "case=both-directions-fail unmatched=e1:2,e2:2");
  EXPECT_TRUE(report.any_fail());
}

TEST(Suite, WitnessCountMatchesBruteForce) {
  SuiteConfig cfg;
  for (std::size_t size = 1; size <= 6; ++size) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DualStructure s(random_extensional_relation(size, seed), random_extensional_relation(size, seed + 3));
      for (ElementId x = 0; x < size; ++x) {
        for (ElementId y = 0; y < size; ++y) {
          const auto count = detail::count_psi_witnesses(s, x, y, cfg, nullptr);
          if (!count) continue;
          EXPECT_EQ(*count, oracle::count_psi_witnesses(s, x, y));
        }
      }
    }
  }
}

TEST(Suite, LargeDomainsSkipPairwiseLemmas) {
  SuiteConfig cfg;
  cfg.pairwise_limit = 8;
  const auto report = run_suite(scramble(build_v_universe(4), Permutation::random(16, 1)), cfg);
  EXPECT_EQ(report.find("lemma1-uniqueness")->render(), "lemma lemma1-uniqueness n/a reason=domain-too-large");
  EXPECT_EQ(report.find("lemma7-totality")->render(), "lemma lemma7-totality pass via=global");
  EXPECT_EQ(report.find("proposition-isomorphism")->verdict, LemmaVerdict::pass);
}

TEST(Corpus, ConfigParsing) {
  const auto cfg = parse_corpus_config("sizes=3,4 count=100 seed=1");
  EXPECT_EQ(cfg.sizes, (std::vector<std::size_t>{3, 4}));
  EXPECT_EQ(cfg.count, 100u);
  EXPECT_EQ(cfg.seed, 1u);
  EXPECT_FALSE(cfg.pairs);
  EXPECT_TRUE(parse_corpus_config("pairs=1").pairs);
  EXPECT_THROW(parse_corpus_config("sizes=6"), Error);
  EXPECT_THROW(parse_corpus_config("colour=red"), Error);
  EXPECT_THROW(parse_corpus_config("count"), Error);
  EXPECT_THROW(parse_corpus_config("count=x"), Error);
}

TEST(Corpus, SmallRun) {
  const auto report = run_corpus(parse_corpus_config("sizes=2,3 count=3 seed=5 pairs=1"));
  EXPECT_FALSE(report.any_fail()) << report.render();
  EXPECT_EQ(report.seeds, (std::vector<std::uint64_t>{5, 6, 7}));
  EXPECT_EQ(report.find("lemma1-uniqueness")->detail, "passed=6 n/a=0");
  ASSERT_TRUE(report.pairs.has_value());
  EXPECT_EQ(report.pairs->oracle_mismatch, 0u);
  EXPECT_EQ(report.pairs->iso + report.pairs->non_iso, 6u);
  const std::string text = report.render();
  EXPECT_NE(text.find("corpus seeds=5,6,7 sizes=2,3\n"), std::string::npos) << text;
  EXPECT_EQ(text, run_corpus(parse_corpus_config("sizes=2,3 count=3 seed=5 pairs=1")).render());
}

TEST(Corpus, Empty) {
  const auto report = run_corpus(parse_corpus_config("sizes=3 count=0"));
  EXPECT_TRUE(report.lemmas.empty());
  EXPECT_EQ(report.render(), "corpus seeds=none sizes=3\n");
}

TEST(Gallery, ReproducesStoredSummaries) {
  const auto items = counterexample_gallery();
  ASSERT_EQ(items.size(), 4u);
  const char* names[] = {"chain-vs-v3", "duplicate-members", "membership-cycle", "level-gap"};
  for (std::size_t i = 0; i < items.size(); ++i) {
    EXPECT_EQ(items[i].name, names[i]);
    EXPECT_EQ(gallery_summary(items[i].structure), items[i].expected) << items[i].name;
  }
}

TEST(Gallery, EachItemBreaksItsHypothesis) {
  const auto items = counterexample_gallery();
  EXPECT_FALSE(check_pairing(items[0].structure, Tag::e1).passed());
  EXPECT_FALSE(check_extensionality(items[1].structure, Tag::e2).passed());
  EXPECT_FALSE(check_foundation(items[2].structure, Tag::e1).passed());
  bool theta_fails = false;
  for (const auto& o : check_schema_battery(items[3].structure)) {
    if (o.name == "theta-separation/e2") theta_fails = !o.holds;
  }
  EXPECT_TRUE(theta_fails);
  EXPECT_TRUE(oracle::extensional(items[3].structure.e2()));
  EXPECT_TRUE(oracle::acyclic(items[3].structure.e2()));
}
