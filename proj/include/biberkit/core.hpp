#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biberkit/error.hpp"

namespace biberkit {

// ---------------------------------------------------------------------------
// Penn Treebank tags
// ---------------------------------------------------------------------------

enum class PennTag : std::uint8_t {
  CC, CD, DT, EX, FW, IN, JJ, JJR, JJS, LS, MD, NN, NNS, NNP, NNPS, PDT,
  POS, PRP, PRP_S, RB, RBR, RBS, RP, SYM, TO, UH, VB, VBD, VBG, VBN, VBP,
  VBZ, WDT, WP, WP_S, WRB, PUNCT, OTHER,
};

inline constexpr std::size_t kPennTagCount = 38;

inline constexpr std::array<std::string_view, kPennTagCount> kPennTagNames = {
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS",
    "MD", "NN", "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB",
    "RBR", "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN",
    "VBP", "VBZ", "WDT", "WP", "WP$", "WRB", "PUNCT", "OTHER",
};

constexpr std::string_view to_string(PennTag tag) {
  return kPennTagNames[static_cast<std::size_t>(tag)];
}

// Unknown codes map to OTHER. Penn punctuation codes (".", ",", "``", "-LRB-"
// and friends) collapse into PUNCT.
inline PennTag parse_penn_tag(std::string_view code) {
  for (std::size_t i = 0; i < kPennTagCount; ++i) {
    if (kPennTagNames[i] == code) return static_cast<PennTag>(i);
  }
  static constexpr std::array<std::string_view, 12> punct = {
      ".", ",", ":", "``", "''", "-LRB-", "-RRB-", "-LCB-", "-RCB-", "HYPH", "NFP", "\""};
  for (auto p : punct) {
    if (p == code) return PennTag::PUNCT;
  }
  if (code == "$" || code == "#") return PennTag::SYM;
  if (code == "ADD" || code == "XX" || code == "AFX" || code == "GW") return PennTag::OTHER;
  return PennTag::OTHER;
}

constexpr bool is_verb(PennTag t) {
  return t == PennTag::VB || t == PennTag::VBD || t == PennTag::VBG ||
         t == PennTag::VBN || t == PennTag::VBP || t == PennTag::VBZ;
}
constexpr bool is_noun(PennTag t) {
  return t == PennTag::NN || t == PennTag::NNS || t == PennTag::NNP || t == PennTag::NNPS;
}
constexpr bool is_common_noun(PennTag t) { return t == PennTag::NN || t == PennTag::NNS; }
constexpr bool is_proper_noun(PennTag t) { return t == PennTag::NNP || t == PennTag::NNPS; }
constexpr bool is_adjective(PennTag t) {
  return t == PennTag::JJ || t == PennTag::JJR || t == PennTag::JJS;
}
// RB, RBR, RBS only; WRB is a wh-word and is handled separately.
constexpr bool is_adverb(PennTag t) {
  return t == PennTag::RB || t == PennTag::RBR || t == PennTag::RBS;
}

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

struct Token {
  std::string surface;
  PennTag pos = PennTag::OTHER;
  std::string lower;  // lowercase surface, curly apostrophes folded to '\''
  std::size_t index = 0;
};

// ---------------------------------------------------------------------------
// Feature inventory
// ---------------------------------------------------------------------------

enum class FeatureId : std::uint8_t {
  VBD, PEAS, VPRT, PLACE, TIME, FPP1, SPP2, TPP3, PIT, INPR, DEMP, PROD,
  WHQU, NOMZ, GER, NN, PASS, BYPA, BEMA, EX, THVC, PASTP, WZPAST, WZPRES,
  TSUB, TOBJ, WHSUB, WHOBJ, PIRE, SERE, CAUS, CONC, COND, OSUB, PIN, JJ,
  PRED, RB, CONJ, DWNT, AMP, DPAR, HDG, EMPH, DEMO, POMD, NEMD, PRMD,
  PUBV, PRIV, SUAV, SMP, CONT, THATD, STPR, SPIN, SPAU, PHC, ANDC, XX0,
  SYNE, QUAN, QUPR, ART, AUXB, CAP, SCONJ, CCONJ, DET, EMOJ, EMOT, EXCL,
  HASH, INF, UH, NUM, LAUGH, PRP, PREP, NNP, QUES, QUOT, AT, SBJP, URL,
  WH, INDA, ACCU, PGAS, CMADJ, SPADJ, X, AWL, TTR, TRB, TO,
};

inline constexpr std::size_t kFeatureCount = 96;

enum class FeatureKind : std::uint8_t { Countable, RealValued };

struct FeatureInfo {
  FeatureId id;
  std::string_view code;
  FeatureKind kind;
  std::string_view description;
};

namespace detail {
using K = FeatureKind;
using F = FeatureId;
inline constexpr K C = K::Countable;
}  // namespace detail

// Canonical order. This is the column order of every matrix and CSV the
// library writes; do not reorder.
inline constexpr std::array<FeatureInfo, kFeatureCount> kFeatures = {{
    {detail::F::VBD, "VBD", detail::C, "Past tense verbs (VBD)"},
    {detail::F::PEAS, "PEAS", detail::C, "Perfect aspect: HAVE + up to two adverbs + VBD/VBN"},
    {detail::F::VPRT, "VPRT", detail::C, "Present tense verbs (VBP, VBZ)"},
    {detail::F::PLACE, "PLACE", detail::C, "Place adverbials not tagged as proper nouns"},
    {detail::F::TIME, "TIME", detail::C, "Time adverbials; 'soon' before 'as' excluded"},
    {detail::F::FPP1, "FPP1", detail::C, "First person pronouns"},
    {detail::F::SPP2, "SPP2", detail::C, "Second person pronouns"},
    {detail::F::TPP3, "TPP3", detail::C, "Third person personal pronouns (not 'it')"},
    {detail::F::PIT, "PIT", detail::C, "Pronoun 'it', 'its', 'itself'"},
    {detail::F::INPR, "INPR", detail::C, "Indefinite pronouns"},
    {detail::F::DEMP, "DEMP", detail::C, "Demonstrative pronouns (this/that/these/those standing alone)"},
    {detail::F::PROD, "PROD", detail::C, "Pro-verb 'do' (not auxiliary, not question-initial)"},
    {detail::F::WHQU, "WHQU", detail::C, "Direct wh-questions"},
    {detail::F::NOMZ, "NOMZ", detail::C, "Nominalisations (-tion, -ment, -ness, -ity)"},
    {detail::F::GER, "GER", detail::C, "Nominal gerunds of length >= 10 ending in -ing/-ings"},
    {detail::F::NN, "NN", detail::C, "Other common nouns"},
    {detail::F::PASS, "PASS", detail::C, "Passive participles after BE"},
    {detail::F::BYPA, "BYPA", detail::C, "Passives followed by a 'by' agent"},
    {detail::F::BEMA, "BEMA", detail::C, "BE as main verb"},
    {detail::F::EX, "EX", detail::C, "Existential 'there'"},
    {detail::F::THVC, "THVC", detail::C, "That verb complements"},
    {detail::F::PASTP, "PASTP", detail::C, "Past participial clauses"},
    {detail::F::WZPAST, "WZPAST", detail::C, "Past participial WHIZ deletion relatives"},
    {detail::F::WZPRES, "WZPRES", detail::C, "Present participial WHIZ deletion relatives"},
    {detail::F::TSUB, "TSUB", detail::C, "That relatives in subject position"},
    {detail::F::TOBJ, "TOBJ", detail::C, "That relatives in object position"},
    {detail::F::WHSUB, "WHSUB", detail::C, "Wh relatives in subject position"},
    {detail::F::WHOBJ, "WHOBJ", detail::C, "Wh relatives in object position"},
    {detail::F::PIRE, "PIRE", detail::C, "Pied-piping relatives (preposition + wh pronoun)"},
    {detail::F::SERE, "SERE", detail::C, "Sentence relatives (punctuation + 'which')"},
    {detail::F::CAUS, "CAUS", detail::C, "Causative subordinator 'because'"},
    {detail::F::CONC, "CONC", detail::C, "Concessive subordinators 'although', 'though', 'tho'"},
    {detail::F::COND, "COND", detail::C, "Conditional subordinators 'if', 'unless'"},
    {detail::F::OSUB, "OSUB", detail::C, "Other adverbial subordinators"},
    {detail::F::PIN, "PIN", detail::C, "Prepositions heading prepositional phrases"},
    {detail::F::JJ, "JJ", detail::C, "Attributive adjectives"},
    {detail::F::PRED, "PRED", detail::C, "Predicative adjectives"},
    {detail::F::RB, "RB", detail::C, "Adverbs by tag (RB, RBR, RBS, WRB)"},
    {detail::F::CONJ, "CONJ", detail::C, "Conjuncts"},
    {detail::F::DWNT, "DWNT", detail::C, "Downtoners"},
    {detail::F::AMP, "AMP", detail::C, "Amplifiers"},
    {detail::F::DPAR, "DPAR", detail::C, "Discourse particles after punctuation"},
    {detail::F::HDG, "HDG", detail::C, "Hedges"},
    {detail::F::EMPH, "EMPH", detail::C, "Emphatics"},
    {detail::F::DEMO, "DEMO", detail::C, "Demonstratives"},
    {detail::F::POMD, "POMD", detail::C, "Possibility modals"},
    {detail::F::NEMD, "NEMD", detail::C, "Necessity modals"},
    {detail::F::PRMD, "PRMD", detail::C, "Predictive modals"},
    {detail::F::PUBV, "PUBV", detail::C, "Public verbs"},
    {detail::F::PRIV, "PRIV", detail::C, "Private verbs"},
    {detail::F::SUAV, "SUAV", detail::C, "Suasive verbs"},
    {detail::F::SMP, "SMP", detail::C, "'seem' and 'appear'"},
    {detail::F::CONT, "CONT", detail::C, "Contractions"},
    {detail::F::THATD, "THATD", detail::C, "Subordinator 'that' deletion"},
    {detail::F::STPR, "STPR", detail::C, "Stranded prepositions"},
    {detail::F::SPIN, "SPIN", detail::C, "Split infinitives"},
    {detail::F::SPAU, "SPAU", detail::C, "Split auxiliaries"},
    {detail::F::PHC, "PHC", detail::C, "Phrasal coordination"},
    {detail::F::ANDC, "ANDC", detail::C, "Independent clause coordination with 'and'"},
    {detail::F::XX0, "XX0", detail::C, "Analytic negation ('not', 'n't')"},
    {detail::F::SYNE, "SYNE", detail::C, "Synthetic negation before adjectives and nouns"},
    {detail::F::QUAN, "QUAN", detail::C, "Quantifiers"},
    {detail::F::QUPR, "QUPR", detail::C, "Quantifier pronouns"},
    {detail::F::ART, "ART", detail::C, "Articles"},
    {detail::F::AUXB, "AUXB", detail::C, "BE as auxiliary"},
    {detail::F::CAP, "CAP", detail::C, "Words starting with a capital letter"},
    {detail::F::SCONJ, "SCONJ", detail::C, "Subordinating conjunctions"},
    {detail::F::CCONJ, "CCONJ", detail::C, "Coordinating conjunctions"},
    {detail::F::DET, "DET", detail::C, "Determiners"},
    {detail::F::EMOJ, "EMOJ", detail::C, "Emoji"},
    {detail::F::EMOT, "EMOT", detail::C, "Emoticons"},
    {detail::F::EXCL, "EXCL", detail::C, "Exclamation marks"},
    {detail::F::HASH, "HASH", detail::C, "Hashtags"},
    {detail::F::INF, "INF", detail::C, "Infinitive (base form) verbs"},
    {detail::F::UH, "UH", detail::C, "Interjections"},
    {detail::F::NUM, "NUM", detail::C, "Numerals"},
    {detail::F::LAUGH, "LAUGH", detail::C, "Laughter acronyms"},
    {detail::F::PRP, "PRP", detail::C, "Possessive pronouns"},
    {detail::F::PREP, "PREP", detail::C, "Prepositions by tag"},
    {detail::F::NNP, "NNP", detail::C, "Proper nouns"},
    {detail::F::QUES, "QUES", detail::C, "Question marks"},
    {detail::F::QUOT, "QUOT", detail::C, "Quotation marks"},
    {detail::F::AT, "AT", detail::C, "@-mentions"},
    {detail::F::SBJP, "SBJP", detail::C, "Subject pronouns"},
    {detail::F::URL, "URL", detail::C, "URLs"},
    {detail::F::WH, "WH", detail::C, "Wh-words"},
    {detail::F::INDA, "INDA", detail::C, "Indefinite articles"},
    {detail::F::ACCU, "ACCU", detail::C, "Accusative pronouns"},
    {detail::F::PGAS, "PGAS", detail::C, "Progressive aspect"},
    {detail::F::CMADJ, "CMADJ", detail::C, "Comparative adjectives"},
    {detail::F::SPADJ, "SPADJ", detail::C, "Superlative adjectives"},
    {detail::F::X, "X", detail::C, "Tokens outside the other POS categories (FW, LS, SYM, unknown)"},
    {detail::F::AWL, "AWL", detail::K::RealValued, "Mean word length in characters"},
    {detail::F::TTR, "TTR", detail::K::RealValued, "Type-token ratio"},
    {detail::F::TRB, "TRB", detail::C, "Total adverbs: adverb tags, particles and adverbial list items"},
    {detail::F::TO, "TO", detail::C, "Infinitive marker 'to'"},
}};

constexpr std::size_t feature_index(FeatureId id) { return static_cast<std::size_t>(id); }

namespace detail {
constexpr bool features_in_enum_order() {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (feature_index(kFeatures[i].id) != i) return false;
  }
  return true;
}
}  // namespace detail

static_assert(detail::features_in_enum_order());
static_assert(feature_index(FeatureId::TO) == kFeatureCount - 1);
constexpr const FeatureInfo& feature_info(FeatureId id) { return kFeatures[feature_index(id)]; }
constexpr std::string_view feature_code(FeatureId id) { return feature_info(id).code; }
constexpr bool is_countable(FeatureId id) {
  return feature_info(id).kind == FeatureKind::Countable;
}

inline std::optional<FeatureId> parse_feature(std::string_view code) {
  for (const auto& f : kFeatures) {
    if (f.code == code) return f.id;
  }
  return std::nullopt;
}

using FeatureSet = std::bitset<kFeatureCount>;

// ---------------------------------------------------------------------------
// Annotations and profiles
// ---------------------------------------------------------------------------

// fired[i] is the set of countable features anchored at token i. Dense: one
// entry per token, empty sets included.
struct TagAnnotation {
  std::string doc_id;
  std::vector<FeatureSet> fired;

  std::size_t size() const { return fired.size(); }

  std::size_t count(FeatureId id) const {
    std::size_t n = 0;
    for (const auto& s : fired) n += s.test(feature_index(id));
    return n;
  }

  std::vector<std::size_t> positions(FeatureId id) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fired.size(); ++i) {
      if (fired[i].test(feature_index(id))) out.push_back(i);
    }
    return out;
  }
};

enum class CountingMode : std::uint8_t { Regular, Binary };

constexpr std::string_view to_string(CountingMode m) {
  return m == CountingMode::Regular ? "regular" : "binary";
}

inline CountingMode parse_counting_mode(std::string_view s) {
  if (s == "regular") return CountingMode::Regular;
  if (s == "binary") return CountingMode::Binary;
  throw Error(ErrorCode::InvalidArgument, "unknown counting mode '" + std::string(s) + "'");
}

struct FeatureStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double std = 0.0;

  friend bool operator==(const FeatureStats&, const FeatureStats&) = default;
};

// Regular mode: stats hold mean/min/max/std of the per-chunk values.
// Binary mode: stats[f].mean is the fraction of chunks in which f fired
// (min/max/std stay zero). Real-valued features carry the per-chunk mean in
// both modes.
struct StyleProfile {
  std::string doc_id;
  CountingMode mode = CountingMode::Binary;
  std::size_t chunk_size = 100;
  std::size_t chunk_count = 0;
  std::size_t token_count = 0;
  std::array<FeatureStats, kFeatureCount> stats{};

  const FeatureStats& operator[](FeatureId id) const { return stats[feature_index(id)]; }
  FeatureStats& operator[](FeatureId id) { return stats[feature_index(id)]; }

  // The 96-dim vector used for matrices and verification: the per-feature
  // mean (regular) or fraction (binary).
  std::array<double, kFeatureCount> vector() const {
    std::array<double, kFeatureCount> v{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) v[i] = stats[i].mean;
    return v;
  }
};

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Documents x 96 features in canonical order.
struct FeatureMatrix {
  std::vector<std::string> doc_ids;
  std::vector<std::string> labels;  // empty, or one per row
  Matrix values{0, kFeatureCount};

  std::size_t rows() const { return values.rows(); }
  bool has_labels() const { return !labels.empty(); }

  static FeatureMatrix from_profiles(std::span<const StyleProfile> profiles,
                                     std::span<const std::string> labels = {}) {
    FeatureMatrix m;
    m.values = Matrix(profiles.size(), kFeatureCount);
    for (std::size_t r = 0; r < profiles.size(); ++r) {
      m.doc_ids.push_back(profiles[r].doc_id);
      auto v = profiles[r].vector();
      for (std::size_t c = 0; c < kFeatureCount; ++c) m.values(r, c) = v[c];
    }
    if (!labels.empty()) {
      if (labels.size() != profiles.size()) {
        throw Error(ErrorCode::DimensionMismatch, "label count differs from profile count");
      }
      m.labels.assign(labels.begin(), labels.end());
    }
    return m;
  }
};

}  // namespace biberkit
