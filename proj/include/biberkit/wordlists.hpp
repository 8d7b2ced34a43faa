#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "biberkit/error.hpp"

#ifndef BIBERKIT_DATA_DIR
#define BIBERKIT_DATA_DIR "data"
#endif

namespace biberkit {

// Directory holding lexicon.tsv and wordlists/. BIBERKIT_DATA_DIR in the
// environment wins over the compiled-in default.
inline std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("BIBERKIT_DATA_DIR"); env && *env) return env;
  return BIBERKIT_DATA_DIR;
}

inline constexpr std::array<std::string_view, 25> kWordListNames = {
    "place_adverbials",      "time_adverbials",      "indefinite_pronouns",
    "downtoners",            "amplifiers",           "hedges",
    "emphatics",             "discourse_particles",  "public_verbs",
    "private_verbs",         "suasive_verbs",        "seem_appear",
    "conjuncts",             "conjuncts_after_punct", "other_subordinators",
    "quantifiers",           "quantifier_pronouns",  "laughter_acronyms",
    "emoticons",             "wh_words",             "necessity_modals",
    "possibility_modals",    "predictive_modals",    "prepositions",
    "subordinating_conjunctions",
};

// Entries are lowercase; a multi-word entry holds its words separated by
// single spaces.
using WordList = std::vector<std::string>;

class WordLists {
 public:
  WordLists() = default;

  // Reads <dir>/<name>.txt for every required list. Lines starting with '#'
  // and blank lines are skipped.
  static WordLists load(const std::filesystem::path& dir) {
    WordLists out;
    for (auto name : kWordListNames) {
      const auto path = dir / (std::string(name) + ".txt");
      std::ifstream in(path);
      if (!in) {
        throw Error(ErrorCode::FileNotFound, "word list not found: " + path.string());
      }
      out.set(std::string(name), read_entries(in, path.string()));
    }
    return out;
  }

  static WordLists load_default() { return load(default_data_dir() / "wordlists"); }

  // Replaces a list; entries are normalized (trimmed, whitespace collapsed)
  // and validated.
  void set(const std::string& name, WordList entries) {
    std::set<std::string_view> seen;
    for (const auto& e : entries) {
      if (std::any_of(e.begin(), e.end(), [](char c) { return c >= 'A' && c <= 'Z'; })) {
        throw Error(ErrorCode::MalformedRecord, "list '" + name + "': entry not lowercase: " + e);
      }
      if (!seen.insert(e).second) {
        throw Error(ErrorCode::MalformedRecord, "list '" + name + "': duplicate entry: " + e);
      }
    }
    lists_[name] = std::move(entries);
  }

  const WordList& get(std::string_view name) const {
    auto it = lists_.find(name);
    if (it == lists_.end()) {
      throw Error(ErrorCode::InvalidArgument, "no word list named '" + std::string(name) + "'");
    }
    return it->second;
  }

  bool contains(std::string_view list, std::string_view entry) const {
    const auto& l = get(list);
    return std::find(l.begin(), l.end(), entry) != l.end();
  }

  const std::map<std::string, WordList, std::less<>>& all() const { return lists_; }

 private:
  static WordList read_entries(std::istream& in, const std::string& where) {
    WordList out;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string entry;
      bool pending_space = false;
      for (char c : line) {
        if (c == ' ' || c == '\t') {
          pending_space = !entry.empty();
          continue;
        }
        if (pending_space) entry.push_back(' ');
        pending_space = false;
        entry.push_back(c);
      }
      if (entry.empty() || entry[0] == '#') continue;
      if (std::any_of(entry.begin(), entry.end(), [](char c) { return c >= 'A' && c <= 'Z'; })) {
        throw Error(ErrorCode::MalformedRecord,
                    where + ":" + std::to_string(lineno) + ": entry not lowercase: " + entry);
      }
      if (!seen.insert(entry).second) {
        throw Error(ErrorCode::MalformedRecord,
                    where + ":" + std::to_string(lineno) + ": duplicate entry: " + entry);
      }
      out.push_back(std::move(entry));
    }
    return out;
  }

  std::map<std::string, WordList, std::less<>> lists_;
};

}  // namespace biberkit
