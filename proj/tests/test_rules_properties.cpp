#include <gtest/gtest.h>

#include <random>

#include "reference_oracle.hpp"
#include "rule_fixtures.hpp"

using namespace biberkit;

namespace {

const std::vector<std::string>& vocab() {
  static const auto v =
      bktest::fixture_vocabulary(bktest::load_rule_fixtures(std::string(BIBERKIT_TEST_FIXTURES) + "/rules.tsv"));
  return v;
}

const oracle::Reference& reference() {
  static const oracle::Reference r(bktest::lists());
  return r;
}

std::string diff(const std::vector<FeatureSet>& a, const std::vector<FeatureSet>& b) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      if (a[i][k] != b[i][k]) {
        out += " [" + std::to_string(i) + " " + std::string(kFeatures[k].code) + (a[i][k] ? " engine]" : " oracle]");
      }
    }
  }
  return out;
}

}  // namespace

TEST(RuleProperties, MatchesReferenceOnRandomSentences) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t len = 1 + rng() % 30;
    const auto spec = bktest::random_sentence(vocab(), rng, len);
    const auto toks = bktest::tagged(spec);
    const auto got = bktest::engine().annotate(toks).fired;
    const auto want = reference().annotate(oracle::from_tokens(toks));
    ASSERT_EQ(got.size(), want.size());
    EXPECT_TRUE(got == want) << spec << "\n" << diff(got, want);
  }
}

TEST(RuleProperties, MatchesReferenceOnFixtures) {
  for (const auto& f : bktest::load_rule_fixtures(std::string(BIBERKIT_TEST_FIXTURES) + "/rules.tsv")) {
    const auto toks = bktest::tagged(f.sentence);
    const auto got = bktest::engine().annotate(toks).fired;
    const auto want = reference().annotate(oracle::from_tokens(toks));
    EXPECT_TRUE(got == want) << f.sentence << "\n" << diff(got, want);
  }
}

TEST(RuleProperties, InsertionFarAwayDoesNotChangeTags) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto base = bktest::tagged(bktest::random_sentence(vocab(), rng, 10 + rng() % 20));
    const auto extra = bktest::tagged(bktest::random_sentence(vocab(), rng, 1 + rng() % 5));
    const std::size_t p = rng() % (base.size() + 1);
    std::vector<Token> edited(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(p));
    edited.insert(edited.end(), extra.begin(), extra.end());
    edited.insert(edited.end(), base.begin() + static_cast<std::ptrdiff_t>(p), base.end());
    for (std::size_t i = 0; i < edited.size(); ++i) edited[i].index = i;

    const auto a = bktest::engine().annotate(base).fired;
    const auto b = bktest::engine().annotate(edited).fired;
    for (std::size_t i = 0; i < base.size(); ++i) {
      const std::size_t j = i < p ? i : i + extra.size();
      const bool far = i < p ? p - i > 6 : i - p >= 6;
      if (far) {
        EXPECT_EQ(a[i], b[j]) << "token " << i << " insert at " << p;
      }
    }
  }
}

TEST(RuleProperties, NounClassesAreExclusive) {
  std::mt19937_64 rng(11);
  const auto nn = feature_index(FeatureId::NN), nomz = feature_index(FeatureId::NOMZ),
             ger = feature_index(FeatureId::GER);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ann = bktest::engine().annotate(bktest::tagged(bktest::random_sentence(vocab(), rng, 20)));
    for (const auto& s : ann.fired) EXPECT_LE(int(s[nn]) + int(s[nomz]) + int(s[ger]), 1);
  }
}

TEST(RuleProperties, GerundNeedsTenCharacters) {
  std::mt19937_64 rng(13);
  const auto ger = feature_index(FeatureId::GER);
  for (int trial = 0; trial < 300; ++trial) {
    const auto toks = bktest::tagged(bktest::random_sentence(vocab(), rng, 20));
    const auto ann = bktest::engine().annotate(toks);
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (ann.fired[i][ger]) {
        EXPECT_GE(text::codepoint_count(toks[i].surface), 10u);
      }
    }
  }
}

TEST(RuleProperties, RealValuedBitsNeverSet) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ann = bktest::engine().annotate(bktest::tagged(bktest::random_sentence(vocab(), rng, 25)));
    for (const auto& s : ann.fired) {
      EXPECT_FALSE(s[feature_index(FeatureId::AWL)]);
      EXPECT_FALSE(s[feature_index(FeatureId::TTR)]);
    }
  }
}

TEST(RuleProperties, Deterministic) {
  std::mt19937_64 rng(19);
  const auto toks = bktest::tagged(bktest::random_sentence(vocab(), rng, 200));
  const RuleEngine other(bktest::lists());
  EXPECT_EQ(bktest::engine().annotate(toks).fired, other.annotate(toks).fired);
  EXPECT_EQ(bktest::engine().annotate(toks).fired, bktest::engine().annotate(toks).fired);
}
