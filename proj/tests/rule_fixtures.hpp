#pragma once

// Loader and checker for fixtures/rules.tsv, shared by the unit tests and the
// acceptance binary.

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace bktest {

struct RuleFixture {
  std::size_t line = 0;
  std::string feature;
  bool positive = true;
  std::size_t index = 0;
  std::string sentence;
};

inline std::vector<RuleFixture> load_rule_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<RuleFixture> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    RuleFixture f;
    std::string pol, idx;
    std::getline(fields, f.feature, '\t');
    std::getline(fields, pol, '\t');
    std::getline(fields, idx, '\t');
    std::getline(fields, f.sentence);
    if (pol != "+" && pol != "-") throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad polarity");
    f.line = lineno;
    f.positive = pol == "+";
    f.index = std::stoul(idx);
    out.push_back(std::move(f));
  }
  return out;
}

// Empty string when the fixture holds, otherwise a diagnostic.
inline std::string check_rule_fixture(const biberkit::RuleEngine& engine, const RuleFixture& f) {
  const auto toks = tagged(f.sentence);
  const auto id = biberkit::parse_feature(f.feature);
  if (!id) return "unknown feature " + f.feature;
  if (f.index >= toks.size()) return "index out of range";
  const auto ann = engine.annotate(toks);
  const bool fired = ann.fired[f.index].test(biberkit::feature_index(*id));
  if (fired == f.positive) return {};
  std::string msg = "line " + std::to_string(f.line) + ": " + f.feature + (f.positive ? " did not fire" : " fired") +
                    " at " + std::to_string(f.index) + " in '" + f.sentence + "'; fired there:";
  for (std::size_t k = 0; k < biberkit::kFeatureCount; ++k) {
    if (ann.fired[f.index].test(k)) msg += " " + std::string(biberkit::kFeatures[k].code);
  }
  return msg;
}

}  // namespace bktest

#include <random>

namespace bktest {

// Every word/TAG item that appears in the fixture file, plus a few tokens that
// only matter at sentence level. Random sentences drawn from this pool hit
// most rule contexts.
inline std::vector<std::string> fixture_vocabulary(const std::vector<RuleFixture>& fixtures) {
  std::set<std::string> items = {"./PUNCT", ",/PUNCT", "?/PUNCT", "!/PUNCT", "and/CC", "that/IN", "that/WDT",
                                 "that/DT", "by/IN",   "was/VBD", "is/VBZ",  "to/TO",   "not/RB"};
  for (const auto& f : fixtures) {
    std::istringstream in(f.sentence);
    for (std::string item; in >> item;) items.insert(item);
  }
  return {items.begin(), items.end()};
}

inline std::string random_sentence(const std::vector<std::string>& vocab, std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::string out;
  for (std::size_t i = 0; i < len; ++i) {
    if (i) out.push_back(' ');
    out += vocab[pick(rng)];
  }
  return out;
}

}  // namespace bktest
