#pragma once

// Template-based synthetic text for tests, benchmarks and demos. Two styles:
// "involved" (first/second person, contractions, private verbs, questions)
// and "informational" (nominalizations, prepositional chains, attributive
// adjectives, passives). Everything is a pure function of the seed.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "biberkit/io.hpp"
#include "biberkit/verify.hpp"

namespace biberkit::synthetic {

enum class Style : std::uint8_t { Involved, Informational };

constexpr std::string_view to_string(Style s) {
  return s == Style::Involved ? "involved" : "informational";
}

namespace detail {

using Pools = std::map<std::string, std::vector<std::string>, std::less<>>;

inline const Pools& pools() {
  static const Pools p = {
      {"S", {"I", "we", "you"}},
      {"s", {"I", "we", "you", "they"}},
      {"priv", {"think", "know", "feel", "guess", "believe", "mean", "suppose"}},
      {"want", {"want", "need", "like", "love", "hate"}},
      {"go", {"go", "leave", "stay", "eat", "talk", "wait", "come"}},
      {"adj", {"good", "great", "nice", "funny", "weird", "cool", "bad", "fine", "crazy", "awesome", "silly"}},
      {"amp", {"really", "so", "pretty", "totally", "very"}},
      {"when", {"now", "today", "tonight", "tomorrow", "later"}},
      {"place", {"home", "there", "here", "outside"}},
      {"hedge", {"kind of", "sort of", "maybe", "probably"}},
      {"stuff", {"stuff", "thing", "movie", "song", "game", "party", "phone"}},
      {"nomz", {"distribution", "development", "management", "assessment", "evaluation", "organization",
                "administration", "regulation", "investment", "transportation", "consumption", "construction",
                "measurement", "production"}},
      {"noun", {"region", "sector", "market", "system", "population", "economy", "industry", "policy", "resource",
                "structure", "process", "framework", "sample", "survey", "component", "factor"}},
      {"nouns", {"regions", "sectors", "markets", "systems", "populations", "industries", "policies", "resources",
                 "structures", "processes", "samples", "surveys", "components", "factors", "variables"}},
      {"jj", {"environmental", "industrial", "statistical", "regional", "structural", "financial", "technical",
              "significant", "substantial", "considerable", "economic", "national", "annual", "average"}},
      {"vbn", {"measured", "analyzed", "examined", "described", "identified", "obtained", "published", "evaluated",
               "regulated", "distributed", "produced", "developed"}},
      {"vbz", {"affects", "involves", "requires", "represents", "indicates", "contains", "supports", "reduces"}},
      {"vbd", {"increased", "reduced", "affected", "produced", "required", "indicated", "supported"}},
      {"prep", {"in", "of", "for", "within", "across", "among", "throughout", "from"}},
      {"num", {"two", "three", "five", "ten", "twelve", "twenty"}},
  };
  return p;
}

inline const std::vector<std::string>& templates(Style s) {
  static const std::vector<std::string> involved = {
      "{S} {priv} it's {amp} {adj}.",
      "{S} don't {priv} what you mean.",
      "Do you {want} to {go} with me?",
      "Well, I'm not sure, but it seems {adj} to me.",
      "You know, we can't {go} {place} {when}!",
      "I'd say that's {hedge} {adj}, isn't it?",
      "Oh, I {want} it when you do that.",
      "Why don't we just {go} {place} {when}?",
      "It's {adj} and I'm {amp} happy about it.",
      "Honestly, I {priv} you're right.",
      "{S} can't believe you did that, it's {amp} {adj}!",
      "I'm {hedge} tired, aren't you?",
      "We've got to {go} {when}, you know.",
      "Did you see the {stuff}? I {priv} it's {adj}.",
      "{s} said they'd {go} with us {when}.",
  };
  static const std::vector<std::string> informational = {
      "The {nomz} of the {noun} in the {noun} was {vbn} by the {noun} of {nouns}.",
      "{jj} {nouns} in the {noun} {vbz} the {nomz} of {jj} {nouns}.",
      "An {jj} {nomz} of the {noun} for {nouns} is {vbn} in the {noun}.",
      "{nouns} of the {noun} were {vbn} with {jj} {nouns} from the {noun}.",
      "The {noun} {vbd} a {jj} {nomz} of {nouns} {prep} the {noun} of the {noun}.",
      "In the {noun}, the {nomz} of {jj} {nouns} {vbd} by {num} percent.",
      "The {nomz} of the {noun} for the {noun} {vbz} an {jj} {nomz}.",
      "The {jj} {noun} {prep} {nouns} {vbz} the {noun} of {nouns}.",
      "{nomz} of {nouns} {prep} the {jj} {noun} was {vbn} in {num} {nouns}.",
      "The {noun} of {jj} {nomz} {vbz} the {nomz} of the {noun}.",
      "Data on the {nomz} of {nouns} were {vbn} from the {jj} {noun}.",
      "The {nouns} {prep} the {noun} {vbd} the {jj} {nomz} of {nouns}.",
  };
  return s == Style::Involved ? involved : informational;
}

inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) { return biberkit::detail::bounded(rng, n); }

inline double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 32);
  return s;
}

}  // namespace detail

// Stylistic fingerprint of one author: a base style, a weighting over that
// style's sentence templates and a preferred subset of each word pool.
struct Author {
  std::string id;
  Style style = Style::Involved;
  std::vector<double> involved_weights;
  std::vector<double> informational_weights;
  std::map<std::string, std::vector<std::string>, std::less<>> vocabulary;
  double mix = 0.1;  // chance a sentence comes from the other style
};

inline Author make_author(std::string id, Style style, std::mt19937_64& rng, double mix = 0.1) {
  Author a;
  a.id = std::move(id);
  a.style = style;
  a.mix = mix;
  for (auto [which, out] : {std::pair{Style::Involved, &a.involved_weights},
                            std::pair{Style::Informational, &a.informational_weights}}) {
    for (std::size_t i = 0; i < detail::templates(which).size(); ++i) {
      // Exponential draws give Dirichlet(1) weights after normalization.
      out->push_back(-std::log(1.0 - detail::uniform(rng)) + 0.05);
    }
  }
  for (const auto& [name, words] : detail::pools()) {
    std::vector<std::string> keep;
    for (const auto& w : words) {
      if (detail::uniform(rng) < 0.6) keep.push_back(w);
    }
    if (keep.empty()) keep.push_back(words[detail::bounded(rng, words.size())]);
    a.vocabulary[name] = std::move(keep);
  }
  return a;
}

// Author with uniform template weights and the full vocabulary.
inline Author generic_author(Style style, double mix = 0.0) {
  Author a;
  a.id = std::string(to_string(style));
  a.style = style;
  a.mix = mix;
  a.involved_weights.assign(detail::templates(Style::Involved).size(), 1.0);
  a.informational_weights.assign(detail::templates(Style::Informational).size(), 1.0);
  for (const auto& [name, words] : detail::pools()) a.vocabulary[name] = words;
  return a;
}

inline std::string sentence(const Author& a, Style s, std::mt19937_64& rng) {
  const auto& tpl = detail::templates(s);
  const auto& w = s == Style::Involved ? a.involved_weights : a.informational_weights;
  double total = 0.0;
  for (double x : w) total += x;
  double r = detail::uniform(rng) * total;
  std::size_t pick = 0;
  while (pick + 1 < w.size() && r >= w[pick]) r -= w[pick++];
  const std::string& t = tpl[pick];
  std::string out;
  for (std::size_t i = 0; i < t.size();) {
    if (t[i] != '{') {
      out.push_back(t[i++]);
      continue;
    }
    const auto close = t.find('}', i);
    const auto name = std::string_view(t).substr(i + 1, close - i - 1);
    const auto& pool = a.vocabulary.at(std::string(name));
    std::string word = pool[detail::bounded(rng, pool.size())];
    if (out.empty()) word = detail::capitalize(word);
    out += word;
    i = close + 1;
  }
  return out;
}

// Roughly `words` whitespace-separated words of text in the author's style.
inline std::string document(const Author& a, std::size_t words, std::mt19937_64& rng) {
  std::string out;
  std::size_t n = 0;
  while (n < words) {
    const bool other = detail::uniform(rng) < a.mix;
    const Style s = other ? (a.style == Style::Involved ? Style::Informational : Style::Involved) : a.style;
    const auto sent = sentence(a, s, rng);
    if (!out.empty()) out.push_back(' ');
    out += sent;
    for (char c : sent) n += c == ' ';
    ++n;
  }
  return out;
}

// Register corpus: n documents alternating involved / informational, each of
// min_words..max_words words, each with its own random mixing rate in
// [0, max_mix]. Labels are the style names.
inline std::vector<CorpusRecord> register_corpus(std::size_t n, std::uint64_t seed, std::size_t min_words = 80,
                                                 std::size_t max_words = 240, double max_mix = 0.25) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusRecord> out;
  out.reserve(n);
  char id[32];
  for (std::size_t i = 0; i < n; ++i) {
    const Style s = i % 2 == 0 ? Style::Involved : Style::Informational;
    Author a = generic_author(s, detail::uniform(rng) * max_mix);
    const std::size_t words = min_words + detail::bounded(rng, max_words - min_words + 1);
    std::snprintf(id, sizeof id, "doc%06zu", i);
    CorpusRecord r;
    r.id = id;
    r.text = document(a, words, rng);
    r.label = std::string(to_string(s));
    out.push_back(std::move(r));
  }
  return out;
}

// Same-author and different-author pairs, balanced. Authors alternate between
// the two styles; a different-author pair always joins an involved author
// with an informational one.
inline std::vector<PanPair> author_pairs(std::size_t n_pairs, std::size_t n_authors, std::uint64_t seed,
                                         std::size_t words = 200) {
  std::mt19937_64 rng(seed);
  std::vector<Author> authors;
  for (std::size_t i = 0; i < std::max<std::size_t>(n_authors, 2); ++i) {
    authors.push_back(make_author("a" + std::to_string(i), i % 2 == 0 ? Style::Involved : Style::Informational, rng));
  }
  std::vector<PanPair> out;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    PanPair p;
    p.id = "pair" + std::to_string(i);
    p.same = i % 2 == 0;
    const std::size_t x = detail::bounded(rng, authors.size());
    std::size_t y = x;
    if (!p.same) {
      // An author of the opposite style.
      do y = detail::bounded(rng, authors.size());
      while (authors[y].style == authors[x].style);
    }
    p.text_a = document(authors[x], words, rng);
    p.text_b = document(authors[y], words, rng);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace biberkit::synthetic
