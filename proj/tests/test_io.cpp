#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "test_support.hpp"

using namespace biberkit;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = BIBERKIT_TEST_FIXTURES;

// Scratch directory removed at the end of each test.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("biberkit_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream(p, std::ios::binary) << body;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

StyleProfile random_profile(std::mt19937_64& rng, CountingMode mode, std::string id) {
  std::uniform_real_distribution<double> u(0, 5);
  StyleProfile p;
  p.doc_id = std::move(id);
  p.mode = mode;
  p.chunk_size = 100;
  p.chunk_count = 3;
  p.token_count = 287;
  for (auto& s : p.stats) {
    s.mean = u(rng);
    if (mode == CountingMode::Regular) {
      s.min = s.mean - u(rng);
      s.max = s.mean + u(rng);
      s.std = u(rng) / 3.0;
    }
  }
  return p;
}

}  // namespace

TEST(Numbers, ShortestRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) / (1 + static_cast<double>(rng() % 1000));
    EXPECT_EQ(parse_double(format_double(x)), x);
  }
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(0.4), "0.4");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(bktest::error_code([] { parse_double("1.5x"); }), ErrorCode::MalformedRecord);
  EXPECT_EQ(bktest::error_code([] { parse_double(""); }), ErrorCode::MalformedRecord);
}

TEST(Csv, QuotingRoundTrip) {
  const std::vector<std::string> fields = {"plain", "has,comma", "has \"quote\"", "two\nlines", ""};
  std::stringstream ss;
  write_csv_row(ss, fields);
  write_csv_row(ss, {"x"});
  EXPECT_EQ(ss.str(), "plain,\"has,comma\",\"has \"\"quote\"\"\",\"two\nlines\",\nx\n");
  std::vector<std::string> back;
  std::size_t line = 0;
  ASSERT_TRUE(read_csv_row(ss, back, &line));
  EXPECT_EQ(back, fields);
  EXPECT_EQ(line, 2u);
  ASSERT_TRUE(read_csv_row(ss, back, &line));
  EXPECT_EQ(back, std::vector<std::string>{"x"});
  EXPECT_FALSE(read_csv_row(ss, back, &line));
}

TEST(Csv, Malformed) {
  std::stringstream a("\"open,b\n");
  std::vector<std::string> row;
  EXPECT_EQ(bktest::error_code([&] { read_csv_row(a, row); }), ErrorCode::MalformedRecord);
  std::stringstream b("\"x\"y,z\n");
  EXPECT_EQ(bktest::error_code([&] { read_csv_row(b, row); }), ErrorCode::MalformedRecord);
}

TEST(Corpus, JsonlRecord) {
  TempDir dir;
  write_file(dir / "c.jsonl", "{\"id\":\"d1\",\"text\":\"Hi\"}\n");
  const auto recs = read_corpus(dir / "c.jsonl", CorpusFormat::Jsonl);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].id, "d1");
  EXPECT_EQ(recs[0].text, "Hi");
  EXPECT_FALSE(recs[0].label.has_value());
  EXPECT_FALSE(recs[0].pretagged());
}

TEST(Corpus, EmptyFile) {
  TempDir dir;
  write_file(dir / "e.jsonl", "");
  EXPECT_TRUE(read_corpus(dir / "e.jsonl", CorpusFormat::Jsonl).empty());
  write_file(dir / "e.conll", "\n\n");
  EXPECT_TRUE(read_corpus(dir / "e.conll", CorpusFormat::Conll).empty());
}

TEST(Corpus, MalformedLineSkippedAndLogged) {
  std::vector<RecordError> errors;
  const auto recs = read_corpus(kFixtures + "/corpus_malformed.jsonl", CorpusFormat::Jsonl, ErrorPolicy::Skip, &errors);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].id, "d1");
  EXPECT_EQ(recs[0].label, "chat");
  EXPECT_EQ(recs[1].id, "d3");
  ASSERT_EQ(recs[1].tokens.size(), 3u);
  EXPECT_EQ(recs[1].tokens[1].pos, PennTag::VBZ);
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_EQ(errors[0].code, ErrorCode::MalformedRecord);
  EXPECT_TRUE(errors[0].location.ends_with("corpus_malformed.jsonl:2")) << errors[0].location;
}

TEST(Corpus, AbortModeThrows) {
  EXPECT_EQ(bktest::error_code([] {
              read_corpus(kFixtures + "/corpus_malformed.jsonl", CorpusFormat::Jsonl, ErrorPolicy::Abort);
            }),
            ErrorCode::MalformedRecord);
}

TEST(Corpus, OnErrorCallbackAndDuplicates) {
  TempDir dir;
  write_file(dir / "d.jsonl",
             "{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n{\"id\":7,\"text\":\"z\"}\n"
             "{\"id\":\"t\",\"tokens\":[[\"x\"]]}\n[1,2]\n");
  CorpusReader r(dir / "d.jsonl", CorpusFormat::Jsonl);
  std::vector<std::string> seen;
  r.on_error = [&](const RecordError& e) { seen.push_back(e.str()); };
  const auto recs = r.read_all();
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[1].id, "7");
  ASSERT_EQ(seen.size(), 3u);
  EXPECT_NE(seen[0].find("duplicate"), std::string::npos);
  EXPECT_NE(seen[1].find("GoldTagMissing"), std::string::npos);
}

TEST(Corpus, Conll) {
  const auto recs = read_corpus(kFixtures + "/corpus.conll", CorpusFormat::Conll);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].id, "first");
  EXPECT_EQ(recs[0].label, "news");
  EXPECT_EQ(bktest::surfaces(recs[0].tokens), (std::vector<std::string>{"The", "market", "fell", "."}));
  EXPECT_EQ(bktest::tags(recs[0].tokens), (std::vector<std::string>{"DT", "NN", "VBD", "PUNCT"}));
  EXPECT_EQ(recs[1].id, "doc-1");
  EXPECT_EQ(recs[1].tokens[3].index, 3u);
}

TEST(Corpus, ConllBadTag) {
  TempDir dir;
  write_file(dir / "b.conll", "ok\tNN\n\nbad\n\nfine\tJJ\n");
  std::vector<RecordError> errors;
  const auto recs = read_corpus(dir / "b.conll", CorpusFormat::Conll, ErrorPolicy::Skip, &errors);
  EXPECT_EQ(recs.size(), 2u);
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_EQ(errors[0].code, ErrorCode::GoldTagMissing);
  EXPECT_TRUE(errors[0].location.ends_with(":3")) << errors[0].location;
}

TEST(Corpus, PlainDirectory) {
  const auto recs = read_corpus(kFixtures + "/plain", CorpusFormat::PlainDir);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0].id, "informational/report1");
  EXPECT_EQ(recs[0].label, "informational");
  EXPECT_EQ(recs[1].id, "involved/chat1");
  EXPECT_EQ(recs[2].id, "note");
  EXPECT_FALSE(recs[2].label.has_value());
  EXPECT_EQ(recs[1].text, "I think it's fine, honestly.\n");
}

TEST(Corpus, FileNotFound) {
  EXPECT_EQ(bktest::error_code([] { read_corpus("/no/such/file.jsonl", CorpusFormat::Jsonl); }),
            ErrorCode::FileNotFound);
  EXPECT_EQ(bktest::error_code([] { read_corpus("/no/such/dir", CorpusFormat::PlainDir); }),
            ErrorCode::FileNotFound);
}

TEST(Corpus, WriteJsonlRoundTrip) {
  TempDir dir;
  std::vector<CorpusRecord> recs(2);
  recs[0].id = "a";
  recs[0].text = "Line \"one\"\nand two";
  recs[0].label = "x";
  recs[1].id = "b";
  recs[1].tokens = bktest::tagged("It/PRP works/VBZ");
  {
    std::ofstream out(dir / "w.jsonl", std::ios::binary);
    write_corpus_jsonl(out, recs);
  }
  const auto back = read_corpus(dir / "w.jsonl", CorpusFormat::Jsonl);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].text, recs[0].text);
  EXPECT_EQ(back[0].label, "x");
  EXPECT_EQ(bktest::tags(back[1].tokens), bktest::tags(recs[1].tokens));
}

TEST(Profiles, CsvColumnCounts) {
  EXPECT_EQ(profile_header(CountingMode::Binary).size(), 97u);
  EXPECT_EQ(profile_header(CountingMode::Regular).size(), 385u);
  EXPECT_EQ(profile_header(CountingMode::Regular)[1], "VBD_mean");
  EXPECT_EQ(profile_header(CountingMode::Regular)[384], "TO_std");
  EXPECT_EQ(profile_header(CountingMode::Binary)[96], "TO");
}

TEST(Profiles, RoundTripBothModesBothFormats) {
  std::mt19937_64 rng(2);
  for (auto mode : {CountingMode::Binary, CountingMode::Regular}) {
    for (auto format : {ProfileFormat::Csv, ProfileFormat::Jsonl}) {
      std::vector<StyleProfile> ps;
      for (int i = 0; i < 4; ++i) ps.push_back(random_profile(rng, mode, "doc,\"" + std::to_string(i) + "\""));
      std::stringstream ss;
      write_profiles(ss, ps, format, mode);
      const auto back = read_profiles(ss, format);
      ASSERT_EQ(back.size(), ps.size());
      for (std::size_t i = 0; i < ps.size(); ++i) {
        EXPECT_EQ(back[i].doc_id, ps[i].doc_id);
        EXPECT_EQ(back[i].mode, mode);
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
          EXPECT_NEAR(back[i].stats[f].mean, ps[i].stats[f].mean, 1e-12);
          EXPECT_NEAR(back[i].stats[f].std, ps[i].stats[f].std, 1e-12);
          EXPECT_NEAR(back[i].stats[f].min, ps[i].stats[f].min, 1e-12);
          EXPECT_NEAR(back[i].stats[f].max, ps[i].stats[f].max, 1e-12);
        }
        if (format == ProfileFormat::Jsonl) {
          EXPECT_EQ(back[i].chunk_count, 3u);
          EXPECT_EQ(back[i].token_count, 287u);
        }
      }
    }
  }
}

TEST(Profiles, WritersAreDeterministic) {
  std::mt19937_64 a(3), b(3);
  std::vector<StyleProfile> pa{random_profile(a, CountingMode::Regular, "x")};
  std::vector<StyleProfile> pb{random_profile(b, CountingMode::Regular, "x")};
  std::stringstream sa, sb;
  write_profiles(sa, pa, ProfileFormat::Csv, CountingMode::Regular);
  write_profiles(sb, pb, ProfileFormat::Csv, CountingMode::Regular);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Profiles, MixedModesRejected) {
  std::mt19937_64 rng(4);
  std::vector<StyleProfile> ps{random_profile(rng, CountingMode::Binary, "a"),
                               random_profile(rng, CountingMode::Regular, "b")};
  std::stringstream ss;
  EXPECT_EQ(bktest::error_code([&] { write_profiles(ss, ps, ProfileFormat::Csv, CountingMode::Binary); }),
            ErrorCode::InvalidArgument);
}

TEST(Profiles, BadHeader) {
  std::stringstream ss("doc_id,foo\nx,1\n");
  EXPECT_EQ(bktest::error_code([&] { read_profiles(ss, ProfileFormat::Csv); }), ErrorCode::MalformedRecord);
}

TEST(Profiles, WriteToFileAtomically) {
  TempDir dir;
  std::mt19937_64 rng(5);
  std::vector<StyleProfile> ps{random_profile(rng, CountingMode::Binary, "a")};
  write_profiles((dir / "p.csv").string(), ps, ProfileFormat::Csv, CountingMode::Binary);
  EXPECT_TRUE(fs::exists(dir / "p.csv"));
  EXPECT_FALSE(fs::exists(dir / "p.csv.tmp"));
  std::ifstream in(dir / "p.csv");
  EXPECT_EQ(read_profiles(in, ProfileFormat::Csv).size(), 1u);
  EXPECT_EQ(bktest::error_code([&] {
              write_profiles((dir / "missing" / "p.csv").string(), ps, ProfileFormat::Csv, CountingMode::Binary);
            }),
            ErrorCode::IoFailure);
}

TEST(Labels, TwoOfFiveFixture) {
  std::vector<Token> toks = bktest::filler(500);
  TagAnnotation ann{"doc", std::vector<FeatureSet>(500)};
  for (std::size_t p : {10u, 20u, 250u}) ann.fired[p].set(feature_index(FeatureId::PASS));
  const auto labels = export_chunk_labels(ann, toks, 100);
  std::stringstream ss;
  write_labels(ss, labels);
  std::vector<std::string> lines;
  for (std::string l; std::getline(ss, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 5u);
  int with_bit = 0;
  for (const auto& l : lines) {
    const auto j = nlohmann::json::parse(l);
    const auto bits = j.at("labels").get<std::string>();
    EXPECT_EQ(bits.size(), 96u);
    with_bit += bits[feature_index(FeatureId::PASS)] == '1';
  }
  EXPECT_EQ(with_bit, 2);
  EXPECT_EQ(lines[0], "{\"doc_id\":\"doc\",\"chunk\":0,\"labels\":\"" + to_bitstring(labels[0].labels) + "\"}");

  ss.clear();
  ss.seekg(0);
  const auto back = read_labels(ss);
  ASSERT_EQ(back.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(back[i].labels, labels[i].labels);
    EXPECT_EQ(back[i].chunk, i);
  }
}

TEST(Labels, EmptyStreamEmptyFile) {
  TempDir dir;
  write_labels((dir / "l.jsonl").string(), std::vector<ChunkLabels>{});
  EXPECT_EQ(slurp(dir / "l.jsonl"), "");
}

TEST(Matrix, RoundTripWithLabels) {
  std::mt19937_64 rng(6);
  std::vector<StyleProfile> ps;
  for (int i = 0; i < 5; ++i) ps.push_back(random_profile(rng, CountingMode::Binary, "d" + std::to_string(i)));
  const std::vector<std::string> labels = {"a", "b", "a", "b", "a"};
  const auto m = FeatureMatrix::from_profiles(ps, labels);
  std::stringstream ss;
  write_matrix(ss, m);
  const auto back = read_matrix(ss);
  EXPECT_EQ(back.doc_ids, m.doc_ids);
  EXPECT_EQ(back.labels, m.labels);
  EXPECT_EQ(back.values, m.values);
}

TEST(Matrix, ReadsProfileCsv) {
  std::mt19937_64 rng(7);
  std::vector<StyleProfile> ps{random_profile(rng, CountingMode::Regular, "r0"),
                               random_profile(rng, CountingMode::Regular, "r1")};
  std::stringstream ss;
  write_profiles(ss, ps, ProfileFormat::Csv, CountingMode::Regular);
  const auto m = read_matrix(ss);
  ASSERT_EQ(m.rows(), 2u);
  EXPECT_FALSE(m.has_labels());
  for (std::size_t f = 0; f < kFeatureCount; ++f) EXPECT_EQ(m.values(1, f), ps[1].stats[f].mean);
}

TEST(Matrix, MissingColumn) {
  std::stringstream ss("doc_id,VBD\nx,1\n");
  EXPECT_EQ(bktest::error_code([&] { read_matrix(ss); }), ErrorCode::MalformedRecord);
}

TEST(Scatter, CsvRoundTrip) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  std::vector<ScatterRecord> recs;
  for (int i = 0; i < 20; ++i) recs.push_back({"d" + std::to_string(i), i % 2 ? "x" : "y,z", g(rng), g(rng) * 1e-7});
  std::stringstream ss;
  write_scatter(ss, recs, 0, 1);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "doc_id,label,PC1,PC2");
  const auto back = read_scatter(ss);
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(back[i].doc_id, recs[i].doc_id);
    EXPECT_EQ(back[i].label, recs[i].label);
    EXPECT_NEAR(back[i].a, recs[i].a, 1e-12);
    EXPECT_NEAR(back[i].b, recs[i].b, 1e-12);
  }
}

TEST(PcaOutputs, LoadingsAndVariance) {
  Matrix m(6, 3);
  for (std::size_t r = 0; r < 6; ++r) {
    m(r, 0) = static_cast<double>(r);
    m(r, 1) = static_cast<double>(r * r);
    m(r, 2) = static_cast<double>(r % 2);
  }
  const auto res = pca(m, 2);
  std::stringstream lo, va;
  write_loadings(lo, res, std::vector<std::string>{"A", "B", "C"});
  write_variance(va, res);
  std::vector<std::string> row;
  ASSERT_TRUE(read_csv_row(lo, row));
  EXPECT_EQ(row, (std::vector<std::string>{"feature", "PC1", "PC2"}));
  ASSERT_TRUE(read_csv_row(lo, row));
  EXPECT_EQ(row[0], "A");
  EXPECT_EQ(parse_double(row[1]), res.components(0, 0));
  ASSERT_TRUE(read_csv_row(va, row));
  EXPECT_EQ(row[0], "component");
  ASSERT_TRUE(read_csv_row(va, row));
  ASSERT_TRUE(read_csv_row(va, row));
  EXPECT_EQ(row[0], "PC2");
  EXPECT_NEAR(parse_double(row[3]), res.explained_ratio[0] + res.explained_ratio[1], 1e-15);
}

TEST(Pairs, ReadFixture) {
  std::vector<RecordError> errors;
  const auto pairs = read_pan_pairs(kFixtures + "/pairs.jsonl", {}, ErrorPolicy::Skip, &errors);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].id, "p1");
  EXPECT_TRUE(pairs[0].same);
  EXPECT_EQ(pairs[1].text_b, "Honestly, it's great!");
  EXPECT_FALSE(pairs[1].same);
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_TRUE(errors[0].location.ends_with(":3"));
  EXPECT_EQ(bktest::error_code([] { read_pan_pairs(kFixtures + "/pairs.jsonl", {}, ErrorPolicy::Abort); }),
            ErrorCode::MalformedRecord);
}

TEST(Pairs, CustomFieldNamesRoundTrip) {
  TempDir dir;
  const PanFields fields{"pid", "texts", "same_author"};
  const std::vector<PanPair> pairs = {{"1", "a", "b", true}, {"2", "c", "d", false}};
  {
    std::ofstream out(dir / "p.jsonl");
    write_pan_pairs(out, pairs, fields);
  }
  const auto back = read_pan_pairs(dir / "p.jsonl", fields);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].text_a, "c");
  EXPECT_FALSE(back[1].same);
  EXPECT_TRUE(read_pan_pairs(dir / "p.jsonl").empty());
}
