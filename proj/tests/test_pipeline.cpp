#include <gtest/gtest.h>

#include <atomic>
#include <set>
#include <sstream>

#include "test_support.hpp"

using namespace biberkit;

namespace {

Pipeline make_pipeline(PipelineConfig cfg = {}) { return Pipeline(bktest::lists(), bktest::lexicon(), cfg); }

}  // namespace

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (std::size_t threads : {1u, 2u, 7u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(ParallelFor, RethrowsFirstError) {
  EXPECT_THROW(parallel_for(100, 4, [](std::size_t i) {
                 if (i == 37) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(OrderedMap, KeepsInputOrderAndCapturesErrors) {
  auto fn = [](std::size_t i) -> std::size_t {
    if (i % 10 == 3) throw Error(ErrorCode::EmptyDocument, "doc " + std::to_string(i));
    return i * i;
  };
  const auto one = ordered_map<std::size_t>(200, 1, fn);
  const auto many = ordered_map<std::size_t>(200, 8, fn);
  ASSERT_EQ(one.size(), 200u);
  for (std::size_t i = 0; i < 200; ++i) {
    if (i % 10 == 3) {
      ASSERT_EQ(many[i].index(), 1u);
      EXPECT_EQ(std::get<1>(many[i]).code(), ErrorCode::EmptyDocument);
    } else {
      ASSERT_EQ(many[i].index(), 0u);
      EXPECT_EQ(std::get<0>(many[i]), i * i);
      EXPECT_EQ(std::get<0>(one[i]), i * i);
    }
  }
}

TEST(Pipeline, ProfileTextMatchesManualSteps) {
  const auto pipe = make_pipeline();
  const std::string text = "I think it's really good. The development of the market was measured.";
  const auto p = pipe.profile_text(text, "x");
  const auto provider = PosProvider::builtin(bktest::lists(), bktest::lexicon());
  const auto toks = provider.process_text(text);
  const auto want = profile_binary(bktest::engine().annotate(toks, "x"), toks);
  EXPECT_EQ(p.doc_id, "x");
  EXPECT_EQ(p.vector(), want.vector());
  EXPECT_EQ(p.token_count, toks.size());
}

TEST(Pipeline, PretaggedRecordsBypassTagger) {
  const auto pipe = make_pipeline();
  CorpusRecord rec;
  rec.id = "g";
  rec.tokens = bktest::tagged("It/PRP does/VBZ n't/RB seem/VB likely/JJ ./PUNCT");
  const auto doc = pipe.annotate(rec);
  EXPECT_EQ(bktest::tags(doc.tokens), bktest::tags(rec.tokens));
  EXPECT_TRUE(doc.annotation.fired[0].test(feature_index(FeatureId::PIT)));
}

TEST(Pipeline, GoldModeRejectsRawText) {
  PipelineConfig cfg;
  cfg.pos = PosKind::Gold;
  const auto pipe = make_pipeline(cfg);
  CorpusRecord rec;
  rec.id = "r";
  rec.text = "raw text";
  EXPECT_EQ(bktest::error_code([&] { pipe.profile(rec); }), ErrorCode::GoldTagMissing);
  rec.tokens = bktest::tagged("raw/JJ text/NN");
  EXPECT_NO_THROW(pipe.profile(rec));
}

TEST(Pipeline, EmptyDocument) {
  const auto pipe = make_pipeline();
  EXPECT_EQ(bktest::error_code([&] { pipe.profile_text("   ", "e"); }), ErrorCode::EmptyDocument);
}

TEST(Pipeline, StageTimesAccumulate) {
  const auto pipe = make_pipeline();
  CorpusRecord rec;
  rec.id = "t";
  for (int i = 0; i < 200; ++i) rec.text += "We can't go there now, can we? ";
  StageTimes t;
  pipe.profile(rec, &t);
  EXPECT_GT(t.tokenize, 0.0);
  EXPECT_GT(t.tag, 0.0);
  EXPECT_GT(t.annotate, 0.0);
  EXPECT_GT(t.profile, 0.0);
  EXPECT_DOUBLE_EQ(t.total(), t.tokenize + t.tag + t.annotate + t.profile);
  StageTimes sum;
  sum += t;
  sum += t;
  EXPECT_DOUBLE_EQ(sum.annotate, 2 * t.annotate);
}

TEST(Pipeline, ThreadCountDoesNotChangeOutput) {
  const auto pipe = make_pipeline();
  const auto corpus = synthetic::register_corpus(60, 5);
  auto run = [&](std::size_t threads) {
    const auto out = ordered_map<StyleProfile>(corpus.size(), threads, [&](std::size_t i) {
      return pipe.profile(corpus[i]);
    });
    std::vector<StyleProfile> ps;
    for (const auto& o : out) ps.push_back(std::get<0>(o));
    std::stringstream ss;
    write_profiles(ss, ps, ProfileFormat::Csv, CountingMode::Binary);
    return ss.str();
  };
  EXPECT_EQ(run(1), run(4));
}

TEST(Pipeline, RegularModeConfig) {
  PipelineConfig cfg;
  cfg.mode = CountingMode::Regular;
  cfg.chunk = ChunkSpec::regular_default();
  const auto p = make_pipeline(cfg).profile_text("I think so. I think not.", "r");
  EXPECT_EQ(p.mode, CountingMode::Regular);
  // 8 tokens in one chunk, "I" twice: 2 per 8 tokens = 25 per 100.
  EXPECT_DOUBLE_EQ(p[FeatureId::FPP1].mean, 25.0);
}

TEST(Synthetic, Deterministic) {
  const auto a = synthetic::register_corpus(20, 9), b = synthetic::register_corpus(20, 9);
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].text, b[i].text);
  }
  EXPECT_NE(a[0].text, synthetic::register_corpus(1, 10)[0].text);
  const auto pa = synthetic::author_pairs(10, 4, 1), pb = synthetic::author_pairs(10, 4, 1);
  for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_EQ(pa[i].text_a, pb[i].text_a);
}

TEST(Synthetic, StylesDifferInTheExpectedFeatures) {
  const auto pipe = make_pipeline();
  std::mt19937_64 rng(3);
  const auto inv = synthetic::generic_author(synthetic::Style::Involved);
  const auto inf = synthetic::generic_author(synthetic::Style::Informational);
  const auto pi = pipe.profile_text(synthetic::document(inv, 400, rng), "i");
  const auto pf = pipe.profile_text(synthetic::document(inf, 400, rng), "f");
  EXPECT_GT(pi[FeatureId::FPP1].mean, pf[FeatureId::FPP1].mean);
  EXPECT_GT(pi[FeatureId::CONT].mean, pf[FeatureId::CONT].mean);
  EXPECT_GT(pf[FeatureId::NOMZ].mean, pi[FeatureId::NOMZ].mean);
  EXPECT_GT(pf[FeatureId::PASS].mean, pi[FeatureId::PASS].mean);
}

TEST(Synthetic, PairsAreBalanced) {
  const auto pairs = synthetic::author_pairs(40, 6, 2);
  std::size_t same = 0;
  std::set<std::string> ids;
  for (const auto& p : pairs) {
    same += p.same;
    ids.insert(p.id);
    EXPECT_FALSE(p.text_a.empty());
  }
  EXPECT_EQ(same, 20u);
  EXPECT_EQ(ids.size(), 40u);
}
