#pragma once

// Feature rule engine.
//
// Every countable feature is a predicate anchored at one token index that
// looks at a bounded window of (lowercase surface, Penn tag) pairs around it.
// No rule looks further than 4 tokens either side, which is what makes
// annotation local: tokens inserted more than 6 positions away from i never
// change the features fired at i. docs/features.md has the full rule table.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "biberkit/core.hpp"
#include "biberkit/text.hpp"
#include "biberkit/wordlists.hpp"

namespace biberkit {

struct RealValued {
  double awl = 0.0;  // mean word length in code points
  double ttr = 0.0;  // distinct lowercase word forms / word tokens
};

// AWL and TTR over the word tokens of a chunk (PUNCT excluded). A chunk made
// only of punctuation yields zeros.
inline RealValued real_valued(std::span<const Token> chunk) {
  if (chunk.empty()) throw Error(ErrorCode::EmptyChunk, "real-valued features need a non-empty chunk");
  std::size_t words = 0;
  std::size_t chars = 0;
  std::unordered_set<std::string_view> types;
  for (const auto& t : chunk) {
    if (t.pos == PennTag::PUNCT) continue;
    ++words;
    chars += text::codepoint_count(t.surface);
    types.insert(t.lower);
  }
  if (words == 0) return {};
  return {static_cast<double>(chars) / static_cast<double>(words),
          static_cast<double>(types.size()) / static_cast<double>(words)};
}

inline std::span<const FeatureInfo> list_features() { return kFeatures; }

namespace detail {
constexpr std::uint64_t bit(int k) { return std::uint64_t{1} << k; }
}  // namespace detail

class RuleEngine {
 public:
  explicit RuleEngine(const WordLists& lists) {
    auto mark = [&](std::string_view list, std::uint64_t bit) {
      for (const auto& e : lists.get(list)) {
        if (e.find(' ') == std::string::npos) flags_[e] |= bit;
      }
    };
    auto mark_words = [&](std::initializer_list<std::string_view> words, std::uint64_t bit) {
      for (auto w : words) flags_[std::string(w)] |= bit;
    };
    mark_words({"be", "am", "is", "are", "was", "were", "been", "being", "'m", "'re"}, kBe);
    mark_words({"'s"}, kApostropheS);
    mark_words({"have", "has", "had", "having", "'ve"}, kHave);
    mark_words({"do", "does", "did", "doing", "done"}, kDo);
    mark_words({"i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves"}, kFpp1);
    mark_words({"you", "your", "yours", "yourself", "yourselves", "thou", "thee", "thy",
                "thine", "thyself"}, kSpp2);
    mark_words({"he", "him", "his", "himself", "she", "her", "hers", "herself", "they", "them",
                "their", "theirs", "themselves"}, kTpp3);
    mark_words({"it", "its", "itself"}, kPit);
    mark_words({"this", "that", "these", "those"}, kDemWord);
    mark_words({"who", "whom", "whose", "what", "which", "where", "when", "why", "how"}, kWhQuestion);
    mark_words({"who", "whom", "whose", "which"}, kWhRelative);
    mark_words({"i", "we", "he", "she", "they"}, kSubjectPronoun);
    mark_words({"not", "n't"}, kNegation);
    mark_words({"n't", "'m", "'re", "'ve", "'ll", "'d"}, kContraction);
    mark_words({"ask", "asks", "asked", "asking", "tell", "tells", "told", "telling"}, kAskTell);
    mark_words({"me", "us", "him", "them", "whom"}, kAccusative);
    mark_words({"mine", "yours", "hers", "ours", "theirs"}, kIndependentPossessive);
    mark_words({"the", "a", "an"}, kArticle);
    mark_words({"a", "an"}, kIndefiniteArticle);
    mark_words({"it", "so", "then", "you", "there"}, kAndClauseNext);
    mark_words({"and", "nor", "but", "or", "also"}, kThatCoordinator);
    mark_words({"no", "neither", "nor"}, kSyntheticNegator);
    mark("place_adverbials", kPlace);
    mark("time_adverbials", kTime);
    mark("indefinite_pronouns", kIndefinitePronoun);
    mark("downtoners", kDowntoner);
    mark("amplifiers", kAmplifier);
    mark("discourse_particles", kDiscourseParticle);
    mark("public_verbs", kPublic);
    mark("private_verbs", kPrivate);
    mark("suasive_verbs", kSuasive);
    mark("seem_appear", kSeemAppear);
    mark("quantifiers", kQuantifier);
    mark("quantifier_pronouns", kQuantifierPronoun);
    mark("laughter_acronyms", kLaugh);
    mark("emoticons", kEmoticon);
    mark("wh_words", kWhWord);
    mark("possibility_modals", kPossibilityModal);
    mark("necessity_modals", kNecessityModal);
    mark("predictive_modals", kPredictiveModal);
    mark("prepositions", kPreposition);
    mark("subordinating_conjunctions", kSubordinator);
    mark("conjuncts_after_punct", kConjunctAfterPunct);

    phrases_[kOsub].build(lists.get("other_subordinators"));
    phrases_[kConj].build(lists.get("conjuncts"));
    phrases_[kHdg].build(lists.get("hedges"));
    phrases_[kEmph].build(lists.get("emphatics"));
    for (std::size_t p = 0; p < kPhraseLists; ++p) {
      for (const auto& [first, _] : phrases_[p].by_first) flags_[first] |= kPhraseFirst << p;
    }
  }

  TagAnnotation annotate(std::span<const Token> tokens, std::string doc_id = {}) const {
    TagAnnotation out;
    out.doc_id = std::move(doc_id);
    annotate_into(tokens, out.fired);
    return out;
  }

  void annotate_into(std::span<const Token> tokens, std::vector<FeatureSet>& fired) const {
    const std::size_t n = tokens.size();
    fired.assign(n, FeatureSet{});
    if (n == 0) return;
    Window w;
    w.tokens = tokens;
    w.flags.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto it = flags_.find(tokens[i].lower);
      w.flags[i] = it == flags_.end() ? 0 : it->second;
    }
    for (std::size_t p = 0; p < kPhraseLists; ++p) phrase_matches(w, p);
    for (std::size_t i = 0; i < n; ++i) fire_at(w, static_cast<std::ptrdiff_t>(i), fired[i]);
  }

 private:
  // Word-class bits.
  static constexpr std::uint64_t kBe = detail::bit(0), kApostropheS = detail::bit(1), kHave = detail::bit(2),
                                 kDo = detail::bit(3), kFpp1 = detail::bit(4), kSpp2 = detail::bit(5), kTpp3 = detail::bit(6),
                                 kPit = detail::bit(7), kDemWord = detail::bit(8), kWhQuestion = detail::bit(9),
                                 kWhRelative = detail::bit(10), kSubjectPronoun = detail::bit(11),
                                 kNegation = detail::bit(12), kContraction = detail::bit(13), kAskTell = detail::bit(14),
                                 kAccusative = detail::bit(15), kIndependentPossessive = detail::bit(16),
                                 kArticle = detail::bit(17), kIndefiniteArticle = detail::bit(18),
                                 kAndClauseNext = detail::bit(19), kThatCoordinator = detail::bit(20),
                                 kSyntheticNegator = detail::bit(21), kPlace = detail::bit(22), kTime = detail::bit(23),
                                 kIndefinitePronoun = detail::bit(24), kDowntoner = detail::bit(25),
                                 kAmplifier = detail::bit(26), kDiscourseParticle = detail::bit(27),
                                 kPublic = detail::bit(28), kPrivate = detail::bit(29), kSuasive = detail::bit(30),
                                 kSeemAppear = detail::bit(31), kQuantifier = detail::bit(32),
                                 kQuantifierPronoun = detail::bit(33), kLaugh = detail::bit(34),
                                 kEmoticon = detail::bit(35), kWhWord = detail::bit(36),
                                 kPossibilityModal = detail::bit(37), kNecessityModal = detail::bit(38),
                                 kPredictiveModal = detail::bit(39), kPreposition = detail::bit(40),
                                 kSubordinator = detail::bit(41), kConjunctAfterPunct = detail::bit(42),
                                 kPhraseFirst = detail::bit(48);

  // Phrase lists matched longest-first with span consumption.
  static constexpr std::size_t kOsub = 0, kConj = 1, kHdg = 2, kEmph = 3, kPhraseLists = 4;

  struct PhraseList {
    std::unordered_map<std::string, std::vector<std::vector<std::string>>> by_first;
    std::size_t max_len = 1;

    void build(const WordList& entries) {
      for (const auto& e : entries) {
        std::vector<std::string> words;
        std::size_t start = 0;
        while (start <= e.size()) {
          auto sp = e.find(' ', start);
          if (sp == std::string::npos) sp = e.size();
          words.push_back(e.substr(start, sp - start));
          start = sp + 1;
        }
        max_len = std::max(max_len, words.size());
        by_first[words[0]].push_back(std::move(words));
      }
      for (auto& [_, v] : by_first) {
        std::stable_sort(v.begin(), v.end(),
                         [](const auto& a, const auto& b) { return a.size() > b.size(); });
      }
    }
  };

  struct Window {
    std::span<const Token> tokens;
    std::vector<std::uint64_t> flags;
    std::vector<std::uint8_t> raw[kPhraseLists];  // longest raw match length at i
    std::vector<bool> fires[kPhraseLists];        // raw match not covered from the left

    std::ptrdiff_t size() const { return static_cast<std::ptrdiff_t>(tokens.size()); }
    bool in(std::ptrdiff_t i) const { return i >= 0 && i < size(); }
    PennTag tag(std::ptrdiff_t i) const { return in(i) ? tokens[i].pos : PennTag::OTHER; }
    std::string_view word(std::ptrdiff_t i) const {
      return in(i) ? std::string_view(tokens[i].lower) : std::string_view();
    }
    bool has(std::ptrdiff_t i, std::uint64_t mask) const { return in(i) && (flags[i] & mask); }
    bool punct(std::ptrdiff_t i) const { return in(i) && tokens[i].pos == PennTag::PUNCT; }
    // Start of text or directly after punctuation.
    bool boundary_before(std::ptrdiff_t i) const { return i == 0 || punct(i - 1); }
    bool be(std::ptrdiff_t i) const {
      return has(i, kBe) || (has(i, kApostropheS) && tag(i) == PennTag::VBZ);
    }
    bool verb(std::ptrdiff_t i) const { return in(i) && is_verb(tag(i)); }
    bool verb_or_modal(std::ptrdiff_t i) const { return verb(i) || tag(i) == PennTag::MD; }
    bool adverb(std::ptrdiff_t i) const { return in(i) && is_adverb(tag(i)); }
    bool noun(std::ptrdiff_t i) const { return in(i) && is_noun(tag(i)); }
    bool adjective(std::ptrdiff_t i) const { return in(i) && is_adjective(tag(i)); }
    bool aux(std::ptrdiff_t i) const {
      return be(i) || has(i, kHave | kDo) || tag(i) == PennTag::MD;
    }
    // Index after skipping at most max adverbs starting at i.
    std::ptrdiff_t skip_adverbs(std::ptrdiff_t i, int max) const {
      while (max-- > 0 && adverb(i)) ++i;
      return i;
    }
    // Index before skipping at most max adverbs leftwards from i.
    std::ptrdiff_t skip_adverbs_left(std::ptrdiff_t i, int max) const {
      while (max-- > 0 && adverb(i)) --i;
      return i;
    }
  };

  void phrase_matches(Window& w, std::size_t p) const {
    const std::ptrdiff_t n = w.size();
    auto& raw = w.raw[p];
    auto& fires = w.fires[p];
    raw.assign(n, 0);
    fires.assign(n, false);
    const auto& list = phrases_[p];
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (!(w.flags[i] & (kPhraseFirst << p))) continue;
      auto it = list.by_first.find(w.tokens[i].lower);
      for (const auto& entry : it->second) {
        const auto len = static_cast<std::ptrdiff_t>(entry.size());
        if (i + len > n) continue;
        bool ok = true;
        for (std::ptrdiff_t k = 1; k < len && ok; ++k) ok = w.word(i + k) == entry[k];
        if (!ok) continue;
        if (p == kHdg && len == 2 && entry[1] == "of" &&
            (entry[0] == "sort" || entry[0] == "kind") && !hedge_context_ok(w, i)) {
          continue;
        }
        raw[i] = static_cast<std::uint8_t>(len);
        break;
      }
    }
    const auto reach = static_cast<std::ptrdiff_t>(list.max_len) - 1;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (!raw[i]) continue;
      bool covered = false;
      for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - reach); j < i && !covered; ++j) {
        covered = raw[j] > i - j;
      }
      fires[i] = !covered;
    }
  }

  // "sort of" / "kind of" hedge only when not preceded by a determiner,
  // adjective, possessive or wh-word ("a kind of tree" is not a hedge).
  static bool hedge_context_ok(const Window& w, std::ptrdiff_t i) {
    if (i == 0) return true;
    const PennTag t = w.tag(i - 1);
    return !(t == PennTag::DT || is_adjective(t) || t == PennTag::PRP_S || t == PennTag::WP ||
             t == PennTag::WDT);
  }

  static bool ends_with_any(std::string_view s, std::initializer_list<std::string_view> sufs,
                            std::size_t extra) {
    for (auto suf : sufs) {
      if (s.size() >= suf.size() + extra && s.ends_with(suf)) return true;
    }
    return false;
  }

  static bool is_laugh_pattern(std::string_view s) {
    // (ha){2,}h? or (he){2,}h?
    if (s.size() < 4 || s[0] != 'h') return false;
    const char vowel = s[1];
    if (vowel != 'a' && vowel != 'e') return false;
    std::size_t reps = 0, i = 0;
    while (i + 1 < s.size() && s[i] == 'h' && s[i + 1] == vowel) {
      ++reps;
      i += 2;
    }
    if (i < s.size() && s[i] == 'h') ++i;
    return reps >= 2 && i == s.size();
  }

  static bool is_quote_token(std::string_view surface) {
    if (surface == "``" || surface == "''") return true;
    return text::all_of_codepoints(surface, text::is_quote);
  }

  void fire_at(const Window& w, std::ptrdiff_t i, FeatureSet& out) const {
    using F = FeatureId;
    auto set = [&](F f) { out.set(feature_index(f)); };
    const Token& tok = w.tokens[i];
    const PennTag t = tok.pos;
    const std::string_view lw = tok.lower;
    const std::uint64_t fl = w.flags[i];

    // Tense and aspect.
    if (t == PennTag::VBD) set(F::VBD);
    if (t == PennTag::VBP || t == PennTag::VBZ) set(F::VPRT);
    if (fl & kHave) {
      const auto j = w.skip_adverbs(i + 1, 2);
      if (w.tag(j) == PennTag::VBD || w.tag(j) == PennTag::VBN) {
        set(F::PEAS);
      } else if ((w.noun(i + 1) || w.tag(i + 1) == PennTag::PRP) && w.tag(i + 2) == PennTag::VBN) {
        set(F::PEAS);
      }
    }
    if (t == PennTag::VBG && w.be(w.skip_adverbs_left(i - 1, 2))) set(F::PGAS);

    // Adverbials.
    if ((fl & kPlace) && !is_proper_noun(t)) set(F::PLACE);
    if ((fl & kTime) && !(lw == "soon" && w.word(i + 1) == "as")) set(F::TIME);

    // Pronouns.
    if (fl & kFpp1) set(F::FPP1);
    if (fl & kSpp2) set(F::SPP2);
    if (fl & kTpp3) set(F::TPP3);
    if (fl & kPit) set(F::PIT);
    if (fl & kIndefinitePronoun) set(F::INPR);
    if ((fl & kDemWord) && t != PennTag::IN && t != PennTag::WDT) {
      set(F::DEMO);
      if (!w.in(i + 1) || w.punct(i + 1) || w.verb_or_modal(i + 1) ||
          w.tag(i + 1) == PennTag::WP || w.tag(i + 1) == PennTag::WDT || w.word(i + 1) == "and") {
        set(F::DEMP);
      }
    }
    if ((fl & kDo) && is_verb(t)) {
      const bool auxiliary = w.verb(w.skip_adverbs(i + 1, 1));
      const bool question = w.boundary_before(i) || w.has(i - 1, kWhWord);
      if (!auxiliary && !question) set(F::PROD);
      if (w.tag(i + 1) == PennTag::VB) set(F::EMPH);
    }
    if ((fl & kWhQuestion) && w.boundary_before(i) && w.aux(i + 1)) set(F::WHQU);

    // Nouns.
    if (is_common_noun(t)) {
      const bool nomz = ends_with_any(lw, {"tion", "tions", "ment", "ments", "ness", "nesses",
                                           "ity", "ities"}, 3);
      const bool ger = text::codepoint_count(lw) >= 10 && (lw.ends_with("ing") || lw.ends_with("ings"));
      if (nomz) set(F::NOMZ);
      if (ger) set(F::GER);
      if (!nomz && !ger) set(F::NN);
    }

    // Passives.
    if (t == PennTag::VBN) {
      const bool passive = w.be(w.skip_adverbs_left(i - 1, 2)) ||
                           ((w.noun(i - 1) || w.tag(i - 1) == PennTag::PRP) && w.be(i - 2));
      if (passive) {
        set(F::PASS);
        if (w.word(i + 1) == "by") set(F::BYPA);
      }
      if (w.boundary_before(i) && (w.tag(i + 1) == PennTag::IN || w.adverb(i + 1) ||
                                   w.tag(i + 1) == PennTag::WRB)) {
        set(F::PASTP);
      }
      if ((w.noun(i - 1) || w.has(i - 1, kQuantifierPronoun)) &&
          (w.tag(i + 1) == PennTag::IN || w.adverb(i + 1) || w.be(i + 1))) {
        set(F::WZPAST);
      }
    }
    if (t == PennTag::VBG && w.noun(i - 1)) set(F::WZPRES);

    // BE.
    if (w.be(i)) {
      const PennTag nt = w.tag(i + 1);
      if (nt == PennTag::DT || nt == PennTag::PDT || nt == PennTag::PRP_S || nt == PennTag::CD ||
          nt == PennTag::IN || is_adjective(nt)) {
        set(F::BEMA);
      }
      const auto j = w.skip_adverbs(i + 1, 2);
      if (w.tag(j) == PennTag::VBG || w.tag(j) == PennTag::VBN) set(F::AUXB);
    }
    if (t == PennTag::EX) set(F::EX);

    // That-clauses and relatives.
    if (lw == "that") {
      const PennTag nt = w.tag(i + 1);
      if (w.has(i - 1, kThatCoordinator) &&
          (nt == PennTag::DT || nt == PennTag::PRP || nt == PennTag::NNS || is_proper_noun(nt) ||
           w.word(i + 1) == "there")) {
        set(F::THVC);
      } else if (w.has(i - 1, kPublic | kPrivate | kSuasive | kSeemAppear) && w.verb(i - 1) &&
                 w.in(i + 1) && !w.verb_or_modal(i + 1) && !w.punct(i + 1) &&
                 w.word(i + 1) != "and") {
        set(F::THVC);
      }
      if (w.noun(i - 1)) {
        if (w.verb_or_modal(i + 1) || (w.adverb(i + 1) && w.verb_or_modal(i + 2))) {
          set(F::TSUB);
        } else if (nt == PennTag::DT || nt == PennTag::PRP_S || is_adjective(nt) ||
                   nt == PennTag::NNS || is_proper_noun(nt) || w.has(i + 1, kSubjectPronoun) ||
                   w.word(i + 1) == "it" || w.word(i + 1) == "you") {
          set(F::TOBJ);
        }
      }
    }
    if ((fl & kWhRelative) &&
        (t == PennTag::WP || t == PennTag::WP_S || t == PennTag::WDT) && w.noun(i - 1) &&
        !w.has(i - 2, kAskTell) && !w.has(i - 3, kAskTell)) {
      if (w.verb_or_modal(w.skip_adverbs(i + 1, 1))) {
        set(F::WHSUB);
      } else if (w.in(i + 1) && !w.adverb(i + 1) && !w.verb_or_modal(i + 1) && !w.punct(i + 1)) {
        set(F::WHOBJ);
      }
    }
    if ((fl & kWhRelative) && w.tag(i - 1) == PennTag::IN && w.has(i - 1, kPreposition)) {
      set(F::PIRE);
    }
    if (lw == "which" && w.punct(i - 1)) set(F::SERE);

    // Subordination.
    if (lw == "because") set(F::CAUS);
    if (lw == "although" || lw == "though" || lw == "tho") set(F::CONC);
    if (lw == "if" || lw == "unless") set(F::COND);
    if (w.fires[kOsub][i]) set(F::OSUB);

    // Prepositions.
    if (t == PennTag::IN) {
      if (fl & kPreposition) {
        set(F::PIN);
        if (w.punct(i + 1)) set(F::STPR);
      }
      if (fl & kSubordinator) {
        set(F::SCONJ);
      } else {
        set(F::PREP);
      }
    }

    // Adjectives and adverbs.
    if (is_adjective(t)) {
      if (w.adjective(i + 1) || w.noun(i + 1)) set(F::JJ);
      const bool after_be = w.be(i - 1) || (w.adverb(i - 1) && w.be(i - 2));
      if (after_be && !w.adjective(i + 1) && !w.adverb(i + 1) && !w.noun(i + 1)) set(F::PRED);
      if (t == PennTag::JJR) set(F::CMADJ);
      if (t == PennTag::JJS) set(F::SPADJ);
    }
    if (is_adverb(t) || t == PennTag::WRB) set(F::RB);
    if (is_adverb(t) || t == PennTag::WRB || t == PennTag::RP ||
        (fl & (kPlace | kTime | kDowntoner | kAmplifier))) {
      set(F::TRB);
    }
    if (w.fires[kConj][i] || ((fl & kConjunctAfterPunct) && w.punct(i - 1))) set(F::CONJ);
    if (fl & kDowntoner) set(F::DWNT);
    if (fl & kAmplifier) set(F::AMP);
    if ((fl & kDiscourseParticle) && w.boundary_before(i)) set(F::DPAR);
    if (w.fires[kHdg][i]) set(F::HDG);
    if (w.fires[kEmph][i] || ((lw == "real" || lw == "so") && w.adjective(i + 1))) set(F::EMPH);

    // Modals.
    if (t == PennTag::MD) {
      if (fl & kPossibilityModal) set(F::POMD);
      if (fl & kNecessityModal) set(F::NEMD);
      if (fl & kPredictiveModal) set(F::PRMD);
    }

    // Lexical verb classes.
    if (is_verb(t)) {
      if (fl & kPublic) set(F::PUBV);
      if (fl & kPrivate) set(F::PRIV);
      if (fl & kSuasive) set(F::SUAV);
      if (fl & kSeemAppear) set(F::SMP);
      if ((fl & (kPublic | kPrivate | kSuasive)) && thatd_context(w, i)) set(F::THATD);
    }

    // Reduced forms, negation.
    if ((fl & kContraction) || (lw == "'s" && t != PennTag::POS)) set(F::CONT);
    if (fl & kNegation) set(F::XX0);
    if ((fl & kSyntheticNegator) && (w.adjective(i + 1) || w.noun(i + 1))) set(F::SYNE);

    // Split constructions.
    auto split_adverb = [&](std::ptrdiff_t k) { return w.adverb(k) && !w.has(k, kNegation); };
    if (lw == "to" && split_adverb(i + 1)) {
      auto j = i + 2;
      if (split_adverb(j)) ++j;
      if (w.tag(j) == PennTag::VB) set(F::SPIN);
    }
    if (w.aux(i) && split_adverb(i + 1)) {
      auto j = i + 2;
      if (split_adverb(j)) ++j;
      if (w.verb(j)) set(F::SPAU);
    }
    if (lw == "to") {
      if (w.tag(w.skip_adverbs(i + 1, 2)) == PennTag::VB) set(F::TO);
    }

    // Coordination.
    if (lw == "and") {
      if (w.in(i - 1) && w.in(i + 1) && coordination_class(w.tag(i - 1)) != 0 &&
          coordination_class(w.tag(i - 1)) == coordination_class(w.tag(i + 1))) {
        set(F::PHC);
      }
      if (w.punct(i - 1) ||
          ((w.has(i + 1, kAndClauseNext | kSubjectPronoun | kDemWord)) && w.verb_or_modal(i + 2))) {
        set(F::ANDC);
      }
    }
    if (t == PennTag::CC) set(F::CCONJ);

    // Closed-class and tag-driven categories.
    if (fl & kQuantifier) set(F::QUAN);
    if (fl & kQuantifierPronoun) set(F::QUPR);
    if (fl & kArticle) set(F::ART);
    if (fl & kIndefiniteArticle) set(F::INDA);
    if (t == PennTag::DT || t == PennTag::PDT || t == PennTag::WDT) set(F::DET);
    if (t == PennTag::VB) set(F::INF);
    if (t == PennTag::UH) set(F::UH);
    if (t == PennTag::CD) set(F::NUM);
    if (t == PennTag::PRP_S || (fl & kIndependentPossessive)) set(F::PRP);
    if (is_proper_noun(t)) set(F::NNP);
    if ((fl & kSubjectPronoun) ||
        ((lw == "you" || lw == "it") && w.verb_or_modal(i + 1))) {
      set(F::SBJP);
    }
    if ((fl & kAccusative) || (lw == "her" && t == PennTag::PRP)) set(F::ACCU);
    if (fl & kWhWord) set(F::WH);
    if (t == PennTag::FW || t == PennTag::LS || t == PennTag::SYM || t == PennTag::OTHER) set(F::X);

    // Surface-form features (raw surface, not the lowercase form).
    const std::string_view s = tok.surface;
    if (text::starts_with_upper(s)) set(F::CAP);
    if (text::contains_emoji(s)) set(F::EMOJ);
    if (fl & kEmoticon) set(F::EMOT);
    if (t == PennTag::PUNCT) {
      if (s.find('!') != std::string_view::npos) set(F::EXCL);
      if (s.find('?') != std::string_view::npos) set(F::QUES);
      if (is_quote_token(s)) set(F::QUOT);
    }
    if (s.size() > 1 && s[0] == '#') set(F::HASH);
    if (s.size() > 1 && s[0] == '@') set(F::AT);
    if (lw.starts_with("http://") || lw.starts_with("https://") || lw.starts_with("www.")) {
      set(F::URL);
    }
    if ((fl & kLaugh) || is_laugh_pattern(lw)) set(F::LAUGH);
  }

  // 1 adverb, 2 adjective, 3 verb, 4 noun, 0 anything else.
  static int coordination_class(PennTag t) {
    if (is_adverb(t)) return 1;
    if (is_adjective(t)) return 2;
    if (is_verb(t)) return 3;
    if (is_noun(t)) return 4;
    return 0;
  }

  // Complement clause with "that" omitted right after a public, private or
  // suasive verb:
  //   verb + subject pronoun / this / these / those
  //   verb + pronoun or noun + verb or modal
  //   verb + adj/adv/det/possessive + (adj) + noun + verb or modal
  static bool thatd_context(const Window& w, std::ptrdiff_t i) {
    const auto a = i + 1;
    if (!w.in(a)) return false;
    if (w.has(a, kSubjectPronoun) || w.word(a) == "this" || w.word(a) == "these" ||
        w.word(a) == "those") {
      return true;
    }
    const PennTag ta = w.tag(a);
    if ((ta == PennTag::PRP || is_noun(ta)) && w.verb_or_modal(a + 1)) return true;
    if (is_adjective(ta) || is_adverb(ta) || ta == PennTag::DT || ta == PennTag::PRP_S) {
      auto j = a + 1;
      if (w.adjective(j)) ++j;
      return w.noun(j) && w.verb_or_modal(j + 1);
    }
    return false;
  }

  std::unordered_map<std::string, std::uint64_t> flags_;
  PhraseList phrases_[kPhraseLists];
};

}  // namespace biberkit
