#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "rule_fixtures.hpp"

using namespace biberkit;

namespace {

const std::vector<bktest::RuleFixture>& fixtures() {
  static const auto f = bktest::load_rule_fixtures(std::string(BIBERKIT_TEST_FIXTURES) + "/rules.tsv");
  return f;
}

bool fires(std::string_view sentence, std::string_view code, std::size_t at) {
  const auto ann = bktest::engine().annotate(bktest::tagged(sentence));
  return ann.fired.at(at).test(feature_index(*parse_feature(code)));
}

}  // namespace

TEST(RuleFixtures, AllHold) {
  std::size_t failures = 0;
  for (const auto& f : fixtures()) {
    const auto msg = bktest::check_rule_fixture(bktest::engine(), f);
    if (!msg.empty()) {
      ++failures;
      ADD_FAILURE() << msg;
    }
  }
  EXPECT_EQ(failures, 0u);
}

TEST(RuleFixtures, EveryCountableFeatureHasBothPolarities) {
  std::map<std::string, std::pair<int, int>> seen;
  for (const auto& f : fixtures()) (f.positive ? seen[f.feature].first : seen[f.feature].second)++;
  for (const auto& spec : kFeatures) {
    if (!is_countable(spec.id)) continue;
    const auto it = seen.find(std::string(spec.code));
    ASSERT_NE(it, seen.end()) << spec.code;
    EXPECT_GE(it->second.first, 1) << spec.code;
    EXPECT_GE(it->second.second, 1) << spec.code;
  }
  EXPECT_GE(fixtures().size(), 192u);
}

TEST(RuleFixtures, ContractionSnippetWithBuiltinTagger) {
  const auto provider = PosProvider::builtin(bktest::lists(), bktest::lexicon());
  const auto toks = provider.process_text("It doesn't seem likely.");
  ASSERT_GE(toks.size(), 5u);
  const auto ann = bktest::engine().annotate(toks);
  EXPECT_TRUE(ann.fired[0].test(feature_index(FeatureId::PIT)));
  EXPECT_TRUE(ann.fired[2].test(feature_index(FeatureId::CONT)));
  EXPECT_TRUE(ann.fired[2].test(feature_index(FeatureId::XX0)));
  EXPECT_TRUE(ann.fired[3].test(feature_index(FeatureId::SMP)));
}

TEST(RuleFixtures, PassiveRelativeWithBuiltinTagger) {
  const auto provider = PosProvider::builtin(bktest::lists(), bktest::lexicon());
  const auto toks = provider.process_text("the house which was built by them");
  ASSERT_EQ(toks.size(), 7u);
  EXPECT_EQ(toks[4].pos, PennTag::VBN);
  const auto ann = bktest::engine().annotate(toks);
  EXPECT_TRUE(ann.fired[4].test(feature_index(FeatureId::PASS)));
  EXPECT_TRUE(ann.fired[4].test(feature_index(FeatureId::BYPA)));
}

TEST(RuleFixtures, EmptyInput) {
  const auto ann = bktest::engine().annotate(std::vector<Token>{}, "empty");
  EXPECT_EQ(ann.size(), 0u);
  EXPECT_EQ(ann.doc_id, "empty");
}

TEST(RuleFixtures, TimeAdverbBeforeAs) {
  EXPECT_TRUE(fires("we/PRP left/VBD soon/RB", "TIME", 2));
  EXPECT_FALSE(fires("we/PRP left/VBD soon/RB as/IN possible/JJ", "TIME", 2));
}

TEST(RuleFixtures, PlaceAdverbNotProperNoun) {
  EXPECT_TRUE(fires("we/PRP went/VBD outside/RB", "PLACE", 2));
  EXPECT_FALSE(fires("we/PRP saw/VBD North/NNP", "PLACE", 2));
}

TEST(RealValued, AverageWordLength) {
  const auto toks = bktest::tagged("a/DT bb/NN ccc/NN");
  EXPECT_DOUBLE_EQ(real_valued(toks).awl, 2.0);
}

TEST(RealValued, TypeTokenRatio) {
  EXPECT_DOUBLE_EQ(real_valued(bktest::tagged("the/DT the/DT the/DT")).ttr, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(real_valued(bktest::tagged("The/DT the/DT THE/DT")).ttr, 1.0 / 3.0);
}

TEST(RealValued, PunctuationExcluded) {
  const auto rv = real_valued(bktest::tagged("ab/NN ,/PUNCT cd/NN ./PUNCT"));
  EXPECT_DOUBLE_EQ(rv.awl, 2.0);
  EXPECT_DOUBLE_EQ(rv.ttr, 1.0);
}

TEST(RealValued, CodepointsNotBytes) {
  EXPECT_DOUBLE_EQ(real_valued(bktest::tagged("café/NN")).awl, 4.0);
}

TEST(RealValued, EmptyChunkThrows) {
  try {
    real_valued(std::vector<Token>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyChunk);
  }
}

TEST(RealValued, AllPunctuationIsZero) {
  const auto rv = real_valued(bktest::tagged("./PUNCT !/PUNCT"));
  EXPECT_EQ(rv.awl, 0.0);
  EXPECT_EQ(rv.ttr, 0.0);
}

TEST(RealValued, HundredTokenChunkMatchesDirectComputation) {
  std::vector<std::string> words = {"alpha", "be", "gamma", "de", "epsilon", "zeta", "eta", "theta", "io", "kappa"};
  std::string spec;
  std::size_t chars = 0;
  std::set<std::string> types;
  for (int i = 0; i < 100; ++i) {
    const auto& w = words[(i * 7 + i / 3) % words.size()];
    spec += w + "/NN ";
    chars += w.size();
    types.insert(w);
  }
  const auto rv = real_valued(bktest::tagged(spec));
  EXPECT_NEAR(rv.awl, static_cast<double>(chars) / 100.0, 1e-12);
  EXPECT_NEAR(rv.ttr, static_cast<double>(types.size()) / 100.0, 1e-12);
}
