#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "biberkit/core.hpp"
#include "biberkit/text.hpp"
#include "biberkit/wordlists.hpp"

namespace biberkit {

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

// Whitespace- and punctuation-aware splitter following Penn conventions:
// contractions split ("doesn't" -> "does" "n't", "can't" -> "ca" "n't",
// "cannot" -> "can" "not"), leading and trailing punctuation split off with
// runs of one repeated mark kept together ("!!!", "..."), and URLs,
// @-mentions, #-hashtags, emoticons and emoji kept as single tokens.
class Tokenizer {
 public:
  Tokenizer() : Tokenizer(default_emoticons()) {}

  explicit Tokenizer(const WordList& emoticons) {
    for (const auto& e : emoticons) {
      emoticons_.insert(e);
      max_emoticon_ = std::max(max_emoticon_, e.size());
    }
  }

  std::vector<Token> tokenize(std::string_view text) const {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
      std::size_t start = i;
      std::size_t j = i;
      char32_t cp = text::decode(text, j);
      if (text::is_space(cp)) {
        i = j;
        continue;
      }
      // Find the end of this whitespace-delimited chunk.
      std::size_t end = i;
      while (end < text.size()) {
        std::size_t k = end;
        if (text::is_space(text::decode(text, k))) break;
        end = k;
      }
      split_chunk(text.substr(start, end - start), out);
      i = end;
    }
    for (std::size_t k = 0; k < out.size(); ++k) out[k].index = k;
    return out;
  }

  static WordList default_emoticons() {
    return {":)", ":-)", ":(", ":-(", ";)", ";-)", ":d", ":-d", ":p", ":-p", ";p",
            ";d", ":'(", ":')", "<3", "</3", ":/", ":-/", ":|", ":-|", ":o", ":-o",
            "^_^", "^^", "-_-", "=)", "=(", "=d", ":3", ">:(", ":*", ":-*", "xd",
            "d:", ":]", ":["};
  }

 private:
  static void emit(std::string_view s, std::vector<Token>& out) {
    if (s.empty()) return;
    Token t;
    t.surface = std::string(s);
    t.lower = text::fold(s);
    out.push_back(std::move(t));
  }

  bool is_emoticon(std::string_view s) const {
    return emoticons_.count(text::fold(s)) > 0;
  }

  // Length in bytes of the longest emoticon that prefixes s, or 0.
  std::size_t emoticon_prefix(std::string_view s) const {
    for (std::size_t n = std::min(max_emoticon_, s.size()); n >= 2; --n) {
      if (is_emoticon(s.substr(0, n))) return n;
    }
    return 0;
  }

  // Byte length of the run of the same punctuation code point at s[0].
  static std::size_t punct_run(std::string_view s) {
    std::size_t i = 0;
    const char32_t first = text::decode(s, i);
    std::size_t end = i;
    while (end < s.size()) {
      std::size_t k = end;
      if (text::decode(s, k) != first) break;
      end = k;
    }
    return end;
  }

  static bool word_char(char32_t cp) {
    return !text::is_punct(cp) && !text::is_space(cp) && !text::is_emoji(cp);
  }

  static bool is_url_start(std::string_view lower) {
    return lower.starts_with("http://") || lower.starts_with("https://") ||
           lower.starts_with("www.");
  }

  static bool is_abbreviation(std::string_view word_lower) {
    static const std::unordered_set<std::string_view> abbrevs = {
        "mr", "mrs", "ms", "dr", "st", "vs", "etc", "jr", "sr", "prof", "inc",
        "ltd", "co", "e.g", "i.e", "viz", "cf", "al", "approx", "no", "vol", "fig"};
    if (abbrevs.count(word_lower)) return true;
    // Dotted initialisms such as "u.s" keep their final period.
    return word_lower.find('.') != std::string_view::npos &&
           std::all_of(word_lower.begin(), word_lower.end(),
                       [](char c) { return c == '.' || (c >= 'a' && c <= 'z'); });
  }

  void split_chunk(std::string_view chunk, std::vector<Token>& out) const {
    if (is_emoticon(chunk)) {
      emit(chunk, out);
      return;
    }
    // Leading punctuation.
    std::size_t pos = 0;
    while (pos < chunk.size()) {
      std::size_t k = pos;
      const char32_t cp = text::decode(chunk, k);
      if (!text::is_punct(cp)) break;
      auto rest = chunk.substr(pos);
      if (is_emoticon(rest)) {
        emit(rest, out);
        return;
      }
      if (std::size_t n = emoticon_prefix(rest)) {
        emit(rest.substr(0, n), out);
        pos += n;
        continue;
      }
      if ((cp == '@' || cp == '#') && k < chunk.size()) {
        std::size_t k2 = k;
        if (word_char(text::decode(chunk, k2))) break;
      }
      const std::size_t n = punct_run(rest);
      emit(rest.substr(0, n), out);
      pos += n;
    }
    if (pos >= chunk.size()) return;
    std::string_view core = chunk.substr(pos);

    // Trailing punctuation, found by scanning code points forward.
    std::vector<std::size_t> offsets;  // start of each code point
    for (std::size_t k = 0; k < core.size();) {
      offsets.push_back(k);
      text::decode(core, k);
    }
    std::size_t cut = core.size();
    for (std::size_t n = offsets.size(); n > 0; --n) {
      std::size_t k = offsets[n - 1];
      if (!text::is_punct(text::decode(core, k))) break;
      cut = offsets[n - 1];
    }
    const std::string lower_core = text::fold(core);
    if (is_url_start(lower_core)) {
      // URLs keep internal punctuation; only sentence punctuation is peeled.
      static const std::u32string_view peel = U".,!?;:)]}\"'’”»";
      cut = core.size();
      for (std::size_t n = offsets.size(); n > 0; --n) {
        std::size_t k = offsets[n - 1];
        const char32_t cp = text::decode(core, k);
        if (peel.find(cp) == std::u32string_view::npos) break;
        cut = offsets[n - 1];
      }
      emit(core.substr(0, cut), out);
      emit_trailing(core.substr(cut), out);
      return;
    }
    if (cut == 0) {
      emit_trailing(core, out);
      return;
    }
    std::string_view middle = core.substr(0, cut);
    std::string_view trailing = core.substr(cut);
    if (!trailing.empty() && trailing[0] == '.' && is_abbreviation(text::fold(middle))) {
      middle = core.substr(0, cut + 1);
      trailing = core.substr(cut + 1);
    }
    if (middle[0] == '@' || middle[0] == '#') {
      emit(middle, out);
    } else {
      split_emoji(middle, out);
    }
    emit_trailing(trailing, out);
  }

  void emit_trailing(std::string_view s, std::vector<Token>& out) const {
    while (!s.empty()) {
      if (std::size_t n = emoticon_prefix(s)) {
        emit(s.substr(0, n), out);
        s.remove_prefix(n);
        continue;
      }
      const std::size_t n = punct_run(s);
      emit(s.substr(0, n), out);
      s.remove_prefix(n);
    }
  }

  // Separates emoji clusters from the word material around them.
  void split_emoji(std::string_view s, std::vector<Token>& out) const {
    std::size_t word_start = 0;
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t k = i;
      const char32_t cp = text::decode(s, k);
      if (!text::is_emoji(cp)) {
        i = k;
        continue;
      }
      split_word(s.substr(word_start, i - word_start), out);
      std::size_t end = k;
      while (end < s.size()) {
        std::size_t k2 = end;
        const char32_t next = text::decode(s, k2);
        if (text::is_emoji_modifier(next) || (next >= 0x1F3FB && next <= 0x1F3FF)) {
          end = k2;
          if (next == 0x200D && end < s.size()) {
            std::size_t k3 = end;
            if (text::is_emoji(text::decode(s, k3))) end = k3;
          }
          continue;
        }
        break;
      }
      emit(s.substr(i, end - i), out);
      i = end;
      word_start = end;
    }
    split_word(s.substr(word_start), out);
  }

  // Splits a Penn contraction suffix off a word.
  static void split_word(std::string_view w, std::vector<Token>& out) {
    if (w.empty()) return;
    const std::string lower = text::fold(w);
    if (lower == "cannot") {
      emit(w.substr(0, 3), out);
      emit(w.substr(3), out);
      return;
    }
    // Suffix lengths are measured on the folded string; the surface may use
    // U+2019 (3 bytes) for the apostrophe, so the split point is recomputed
    // from the end of the surface.
    static constexpr std::array<std::string_view, 7> suffixes = {"n't", "'s", "'m", "'re",
                                                                 "'ve", "'ll", "'d"};
    for (auto suf : suffixes) {
      if (lower.size() > suf.size() && lower.ends_with(suf)) {
        const std::size_t letters = suf.size() - suf.find('\'') - 1;  // after the apostrophe
        std::size_t cut = w.size() - letters;
        // Step back over the apostrophe (1 or 3 bytes).
        if (cut >= 1 && w[cut - 1] == '\'') {
          cut -= 1;
        } else if (cut >= 3) {
          cut -= 3;
        } else {
          break;
        }
        if (suf == "n't") {
          if (cut == 0) break;
          cut -= 1;  // include the 'n'
        }
        if (cut == 0) break;
        emit(w.substr(0, cut), out);
        emit(w.substr(cut), out);
        return;
      }
    }
    emit(w, out);
  }

  std::unordered_set<std::string> emoticons_;
  std::size_t max_emoticon_ = 0;
};

inline std::vector<Token> tokenize(std::string_view text) {
  static const Tokenizer tokenizer;
  return tokenizer.tokenize(text);
}

// ---------------------------------------------------------------------------
// Lexicon and builtin tagger
// ---------------------------------------------------------------------------

// surface -> candidate tags; the first candidate is the context-free default.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "lexicon not found: " + path.string());
    Lexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos || tab == 0) {
        throw Error(ErrorCode::MalformedRecord,
                    path.string() + ":" + std::to_string(lineno) + ": expected word<TAB>tags");
      }
      std::vector<PennTag> tags;
      std::string_view rest(line);
      rest.remove_prefix(tab + 1);
      while (!rest.empty()) {
        const auto sp = rest.find(' ');
        auto code = rest.substr(0, sp);
        if (!code.empty()) tags.push_back(parse_penn_tag(code));
        if (sp == std::string_view::npos) break;
        rest.remove_prefix(sp + 1);
      }
      if (tags.empty()) {
        throw Error(ErrorCode::MalformedRecord,
                    path.string() + ":" + std::to_string(lineno) + ": no tags");
      }
      lex.add(line.substr(0, tab), std::move(tags));
    }
    return lex;
  }

  static Lexicon load_default() { return load(default_data_dir() / "lexicon.tsv"); }

  void add(std::string word, std::vector<PennTag> tags) { entries_[std::move(word)] = std::move(tags); }

  const std::vector<PennTag>* find(const std::string& lower) const {
    auto it = entries_.find(lower);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::vector<PennTag>> entries_;
};

// Lexicon lookup plus suffix heuristics, followed by one left-to-right pass of
// contextual corrections (a small Brill-style transformation list). Not an
// accurate tagger; use gold passthrough for production-quality tags.
class BuiltinTagger {
 public:
  explicit BuiltinTagger(Lexicon lexicon, WordList emoticons = Tokenizer::default_emoticons())
      : lexicon_(std::move(lexicon)), emoticons_(emoticons.begin(), emoticons.end()) {}

  std::vector<Token> tag(std::vector<Token> tokens) const {
    const std::size_t n = tokens.size();
    std::vector<Candidates> cand(n);
    for (std::size_t i = 0; i < n; ++i) cand[i] = initial(tokens, i);
    for (std::size_t i = 0; i < n; ++i) tokens[i].pos = contextual(tokens, cand, i);
    return tokens;
  }

  const Lexicon& lexicon() const { return lexicon_; }

 private:
  struct Candidates {
    std::vector<PennTag> tags;  // tags[0] is the default
    bool from_lexicon = false;
    bool has(PennTag t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }
  };

  static bool sentence_start(const std::vector<Token>& toks, std::size_t i) {
    return i == 0 || toks[i - 1].pos == PennTag::PUNCT;
  }

  static bool is_number(std::string_view s) {
    if (s.empty() || !(s[0] >= '0' && s[0] <= '9')) return false;
    std::size_t digits = 0;
    for (char c : s) {
      if (c >= '0' && c <= '9') {
        ++digits;
      } else if (c != '.' && c != ',' && c != ':' && c != '/' && c != '-' && c != '%') {
        // ordinals and decades: 1st, 2nd, 3rd, 4th, 90s
        return s.ends_with("st") || s.ends_with("nd") || s.ends_with("rd") ||
               s.ends_with("th") || s.ends_with("s");
      }
    }
    return digits > 0;
  }

  Candidates initial(const std::vector<Token>& toks, std::size_t i) const {
    const Token& t = toks[i];
    const std::string& w = t.lower;
    if (emoticons_.count(w) || text::contains_emoji(t.surface)) return {{PennTag::SYM}};
    if (w.starts_with("http://") || w.starts_with("https://") || w.starts_with("www.")) {
      return {{PennTag::SYM}};
    }
    if (text::all_of_codepoints(t.surface, text::is_punct)) return {{PennTag::PUNCT}};
    if (w.size() > 1 && (w[0] == '@' || w[0] == '#')) return {{PennTag::NNP}};
    if (is_number(w)) return {{PennTag::CD}};
    if (const auto* tags = lexicon_.find(w)) return {*tags, true};
    // Unknown words: capitalization first, then suffixes.
    const bool initial_position = i == 0 || toks[i - 1].pos == PennTag::PUNCT ||
                                  text::all_of_codepoints(toks[i - 1].surface, text::is_punct);
    if (!initial_position && text::starts_with_upper(t.surface)) {
      return {{w.ends_with("s") && w.size() > 3 && text::starts_with_upper(t.surface) &&
                       std::all_of(t.surface.begin(), t.surface.end(),
                                   [](char c) { return !(c >= 'a' && c <= 'z'); })
                   ? PennTag::NNPS
                   : PennTag::NNP}};
    }
    return {{suffix_guess(w)}};
  }

  static PennTag suffix_guess(std::string_view w) {
    auto ends = [&](std::string_view s, std::size_t min_len) {
      return w.size() >= min_len && w.ends_with(s);
    };
    if (ends("ing", 5)) return PennTag::VBG;
    if (ends("ings", 6)) return PennTag::NNS;
    if (ends("ed", 4)) return PennTag::VBD;
    if (ends("ly", 4)) return PennTag::RB;
    static constexpr std::array<std::string_view, 16> noun_suffixes = {
        "tion", "sion", "ment", "ness", "ity", "ism", "ance", "ence",
        "ship", "hood", "ist", "er", "or", "age", "ure", "dom"};
    for (auto s : noun_suffixes) {
      if (ends(s, s.size() + 2)) return PennTag::NN;
      if (w.size() >= s.size() + 3 && w.ends_with(std::string(s) + "s")) return PennTag::NNS;
    }
    static constexpr std::array<std::string_view, 12> adj_suffixes = {
        "ous", "ful", "ive", "able", "ible", "al", "ic", "less", "ish", "ant", "ent", "ary"};
    for (auto s : adj_suffixes) {
      if (ends(s, s.size() + 2)) return PennTag::JJ;
    }
    if (ends("est", 6)) return PennTag::JJS;
    if (ends("s", 4) && !ends("ss", 3) && !ends("us", 3) && !ends("is", 3)) return PennTag::NNS;
    return PennTag::NN;
  }

  static bool is_be(std::string_view w) {
    return w == "be" || w == "am" || w == "is" || w == "are" || w == "was" || w == "were" ||
           w == "been" || w == "being" || w == "'m" || w == "'re" || w == "'s";
  }
  static bool is_have(std::string_view w) {
    return w == "have" || w == "has" || w == "had" || w == "having" || w == "'ve";
  }
  static bool is_do(std::string_view w) {
    return w == "do" || w == "does" || w == "did";
  }
  static bool is_subject_pronoun(std::string_view w) {
    return w == "i" || w == "you" || w == "we" || w == "they";
  }
  static bool is_third_singular_pronoun(std::string_view w) {
    return w == "he" || w == "she" || w == "it";
  }

  PennTag contextual(const std::vector<Token>& toks, const std::vector<Candidates>& cand,
                     std::size_t i) const {
    const Candidates& c = cand[i];
    const std::string& w = toks[i].lower;
    const std::size_t n = toks.size();
    const PennTag prev = i > 0 ? toks[i - 1].pos : PennTag::PUNCT;
    const std::string_view prev_w = i > 0 ? std::string_view(toks[i - 1].lower) : "";
    const PennTag next = i + 1 < n ? cand[i + 1].tags[0] : PennTag::PUNCT;
    const std::string_view next_w = i + 1 < n ? std::string_view(toks[i + 1].lower) : "";
    PennTag tag = c.tags[0];

    // Nearest non-adverb token to the left.
    auto left_skipping_adverbs = [&](std::size_t max_skip) -> std::ptrdiff_t {
      std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) - 1;
      std::size_t skipped = 0;
      while (k >= 0 && is_adverb(toks[k].pos) && skipped < max_skip) {
        --k;
        ++skipped;
      }
      return k;
    };

    if (w == "that") {
      if (is_noun(prev)) {
        return (is_verb(next) || next == PennTag::MD || is_adverb(next)) ? PennTag::WDT
                                                                          : PennTag::IN;
      }
      if ((is_verb(prev) || is_adjective(prev) || prev_w == "so" || prev_w == "such" ||
           prev_w == "now") &&
          next != PennTag::PUNCT && i + 1 < n) {
        return PennTag::IN;
      }
      return PennTag::DT;
    }
    if (w == "her") {
      return (is_noun(next) || is_adjective(next) || next == PennTag::CD) ? PennTag::PRP_S
                                                                          : PennTag::PRP;
    }
    if (w == "'s") {
      static const std::unordered_set<std::string_view> verbal = {
          "it", "he", "she", "that", "there", "what", "who", "here", "where", "how", "this", "let"};
      if (verbal.count(prev_w)) return prev_w == "let" ? PennTag::PRP : PennTag::VBZ;
      return is_verb(next) || next == PennTag::RB || next == PennTag::DT ? PennTag::VBZ
                                                                         : PennTag::POS;
    }
    if (w == "'d") {
      std::size_t k = i + 1;
      while (k < n && is_adverb(cand[k].tags[0])) ++k;
      return k < n && cand[k].has(PennTag::VBN) ? PennTag::VBD : PennTag::MD;
    }
    if (w == "there") {
      return (is_be(next_w) || next == PennTag::MD || next_w == "seems" || next_w == "seem" ||
              next_w == "appears")
                 ? PennTag::EX
                 : PennTag::RB;
    }
    if (w == "well" && sentence_start(toks, i) && next == PennTag::PUNCT) return PennTag::UH;
    if (w == "no" && next == PennTag::PUNCT) return PennTag::UH;
    if (w == "more" || w == "most" || w == "less" || w == "least") {
      const bool comparative = w == "more" || w == "less";
      if (is_adjective(next) || is_adverb(next)) {
        return comparative ? PennTag::RBR : PennTag::RBS;
      }
      if (is_noun(next)) return comparative ? PennTag::JJR : PennTag::JJS;
      return tag;
    }
    if ((w == "up" || w == "down") && is_verb(prev)) return PennTag::RP;
    // Spatial words: preposition before a noun phrase, adverb otherwise.
    if (c.has(PennTag::IN) && c.has(PennTag::RB) && w != "so") {
      return (next == PennTag::DT || next == PennTag::PRP_S || is_noun(next) || next == PennTag::CD)
                 ? PennTag::IN
                 : PennTag::RB;
    }

    // Base verb after an infinitive marker, modal or do-support.
    const bool has_base = c.has(PennTag::VB) || c.has(PennTag::VBP);
    if (has_base) {
      std::ptrdiff_t k = left_skipping_adverbs(2);
      if (k >= 0 && (toks[k].pos == PennTag::TO || toks[k].pos == PennTag::MD ||
                     is_do(toks[k].lower))) {
        return PennTag::VB;
      }
      // Inverted do-support: "did you see", "does it matter".
      if (k >= 1 && (toks[k].pos == PennTag::PRP || is_noun(toks[k].pos)) &&
          is_do(toks[k - 1].lower)) {
        return PennTag::VB;
      }
    }

    // Past participles: after BE/HAVE, in reduced relatives, and clause-initially.
    const bool ed_form = tag == PennTag::VBD && (c.has(PennTag::VBN) || !c.from_lexicon);
    if (ed_form || tag == PennTag::VBN) {
      std::ptrdiff_t k = left_skipping_adverbs(2);
      if (k >= 0 && (is_be(toks[k].lower) || is_have(toks[k].lower))) return PennTag::VBN;
      if (k >= 0 && is_noun(toks[k].pos) && static_cast<std::size_t>(k) == i - 1 &&
          (next == PennTag::IN || next_w == "by")) {
        return PennTag::VBN;
      }
      if (sentence_start(toks, i) && (next == PennTag::IN || next_w == "by")) return PennTag::VBN;
      if (!c.has(PennTag::VBD) && c.from_lexicon) return PennTag::VBN;
      return PennTag::VBD;
    }

    // Nominal -ing forms after determiners and adjectives.
    if (tag == PennTag::VBG &&
        (prev == PennTag::DT || prev == PennTag::PRP_S || prev == PennTag::POS ||
         is_adjective(prev))) {
      return w.ends_with("ings") ? PennTag::NNS : PennTag::NN;
    }

    // Noun/verb ambiguity.
    const PennTag noun_tag =
        c.has(PennTag::NN) ? PennTag::NN : (c.has(PennTag::NNS) ? PennTag::NNS : PennTag::OTHER);
    if (noun_tag != PennTag::OTHER &&
        (prev == PennTag::DT || prev == PennTag::PRP_S || prev == PennTag::POS ||
         is_adjective(prev) || prev == PennTag::CD || prev == PennTag::IN)) {
      return noun_tag;
    }
    if (c.has(PennTag::VBP) && (is_subject_pronoun(prev_w) || prev == PennTag::NNS)) {
      return PennTag::VBP;
    }
    if (c.has(PennTag::VBZ) && (is_third_singular_pronoun(prev_w) || prev == PennTag::NN ||
                                prev == PennTag::NNP)) {
      return PennTag::VBZ;
    }
    if (!c.from_lexicon && tag == PennTag::NNS &&
        (is_third_singular_pronoun(prev_w) || prev == PennTag::NNP)) {
      return PennTag::VBZ;
    }
    if (tag == PennTag::VBP && c.has(PennTag::VB) && sentence_start(toks, i)) return PennTag::VB;
    return tag;
  }

  Lexicon lexicon_;
  std::unordered_set<std::string> emoticons_;
};

// ---------------------------------------------------------------------------
// Gold passthrough and provider
// ---------------------------------------------------------------------------

// Parses one gold record "surface<TAB>penn_tag".
inline Token parse_gold_record(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos || tab + 1 >= line.size()) {
    throw Error(ErrorCode::GoldTagMissing,
                "gold record lacks a tag column: '" + std::string(line) + "'");
  }
  auto surface = line.substr(0, tab);
  auto tag = line.substr(tab + 1);
  if (const auto tab2 = tag.find('\t'); tab2 != std::string_view::npos) tag = tag.substr(0, tab2);
  if (surface.empty() || tag.empty()) {
    throw Error(ErrorCode::GoldTagMissing,
                "gold record lacks a tag column: '" + std::string(line) + "'");
  }
  Token t;
  t.surface = std::string(surface);
  t.lower = text::fold(surface);
  t.pos = parse_penn_tag(tag);
  return t;
}

enum class PosKind : std::uint8_t { Builtin, Gold };

inline PosKind parse_pos_kind(std::string_view s) {
  if (s == "builtin") return PosKind::Builtin;
  if (s == "gold") return PosKind::Gold;
  throw Error(ErrorCode::InvalidArgument, "unknown pos provider '" + std::string(s) + "'");
}

// Turns raw text (builtin) or pre-tagged tokens (gold) into a tagged stream.
class PosProvider {
 public:
  PosProvider(PosKind kind, Lexicon lexicon, const WordList& emoticons)
      : kind_(kind), tokenizer_(emoticons), tagger_(std::move(lexicon), emoticons) {}

  static PosProvider builtin(const WordLists& lists, Lexicon lexicon) {
    return PosProvider(PosKind::Builtin, std::move(lexicon), lists.get("emoticons"));
  }

  PosKind kind() const { return kind_; }

  std::vector<Token> tokenize(std::string_view text) const { return tokenizer_.tokenize(text); }

  std::vector<Token> tag(std::vector<Token> tokens) const {
    if (kind_ == PosKind::Gold) {
      throw Error(ErrorCode::GoldTagMissing, "gold provider received untagged tokens");
    }
    return tagger_.tag(std::move(tokens));
  }

  std::vector<Token> process_text(std::string_view text) const { return tag(tokenize(text)); }

  // Gold tokens pass through unchanged apart from index renumbering.
  static std::vector<Token> passthrough(std::vector<Token> tokens) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].lower.empty()) tokens[i].lower = text::fold(tokens[i].surface);
      tokens[i].index = i;
    }
    return tokens;
  }

 private:
  PosKind kind_;
  Tokenizer tokenizer_;
  BuiltinTagger tagger_;
};

}  // namespace biberkit
