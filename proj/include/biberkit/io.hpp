#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "biberkit/analytics.hpp"
#include "biberkit/core.hpp"
#include "biberkit/pos.hpp"
#include "biberkit/profiler.hpp"

namespace biberkit {

// ---------------------------------------------------------------------------
// Numbers
// ---------------------------------------------------------------------------

// Shortest decimal that parses back to the same double.
inline std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline double parse_double(std::string_view s) {
  double x = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  auto r = std::from_chars(b, e, x);
  if (r.ec != std::errc() || r.ptr != e || b == e) {
    throw Error(ErrorCode::MalformedRecord, "not a number: '" + std::string(s) + "'");
  }
  return x;
}

// ---------------------------------------------------------------------------
// CSV (RFC 4180, '\n' line endings)
// ---------------------------------------------------------------------------

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    out << csv_field(fields[i]);
  }
  out.put('\n');
}

// Reads one record; quoted fields may span lines. Returns false at EOF.
inline bool read_csv_row(std::istream& in, std::vector<std::string>& fields, std::size_t* lineno = nullptr) {
  fields.clear();
  std::string field;
  bool quoted = false, any = false, after_quote = false;
  int ch;
  while ((ch = in.get()) != EOF) {
    any = true;
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (c == '\n' && lineno) ++*lineno;
        field.push_back(c);
      }
      continue;
    }
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      after_quote = false;
    } else if (c == '\n') {
      if (lineno) ++*lineno;
      if (!field.empty() && field.back() == '\r' && !after_quote) field.pop_back();
      fields.push_back(std::move(field));
      return true;
    } else if (c == '"' && field.empty() && !after_quote) {
      quoted = true;
    } else if (c == '\r' && after_quote) {
      // tolerate CRLF after a quoted field
    } else {
      if (after_quote) throw Error(ErrorCode::MalformedRecord, "CSV: text after closing quote");
      field.push_back(c);
    }
  }
  if (quoted) throw Error(ErrorCode::MalformedRecord, "CSV: unterminated quoted field");
  if (!any) return false;
  if (lineno) ++*lineno;
  fields.push_back(std::move(field));
  return true;
}

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

// Runs `body` against the file at `path` ("-" is stdout). Writes go to a
// temporary sibling first so a failed run never leaves a truncated file.
inline void write_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::IoFailure, "write to stdout failed");
    return;
  }
  const std::filesystem::path target(path);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open for writing: " + path);
    body(out);
    out.flush();
    if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot move output into place: " + path + ": " + ec.message());
}

// ---------------------------------------------------------------------------
// Corpus records
// ---------------------------------------------------------------------------

struct CorpusRecord {
  std::string id;
  std::string text;            // raw text (empty for pre-tagged records)
  std::vector<Token> tokens;   // pre-tagged tokens, if any
  std::optional<std::string> label;

  bool pretagged() const { return !tokens.empty(); }
};

enum class CorpusFormat : std::uint8_t { Jsonl, Conll, PlainDir };

inline CorpusFormat parse_corpus_format(std::string_view s) {
  if (s == "jsonl") return CorpusFormat::Jsonl;
  if (s == "conll") return CorpusFormat::Conll;
  if (s == "plain-dir" || s == "plain") return CorpusFormat::PlainDir;
  throw Error(ErrorCode::InvalidArgument, "unknown corpus format '" + std::string(s) + "'");
}

constexpr std::string_view to_string(CorpusFormat f) {
  switch (f) {
    case CorpusFormat::Jsonl: return "jsonl";
    case CorpusFormat::Conll: return "conll";
    case CorpusFormat::PlainDir: return "plain-dir";
  }
  return "jsonl";
}

enum class ErrorPolicy : std::uint8_t { Skip, Abort };

inline ErrorPolicy parse_error_policy(std::string_view s) {
  if (s == "skip") return ErrorPolicy::Skip;
  if (s == "abort") return ErrorPolicy::Abort;
  throw Error(ErrorCode::InvalidArgument, "unknown error policy '" + std::string(s) + "'");
}

struct RecordError {
  std::string location;  // "file:line" or file path
  ErrorCode code = ErrorCode::MalformedRecord;
  std::string message;

  std::string str() const {
    return location + ": " + std::string(error_code_name(code)) + ": " + message;
  }
};

// Lazy reader: records are produced one at a time by next().
class CorpusReader {
 public:
  CorpusReader(std::filesystem::path path, CorpusFormat format, ErrorPolicy policy = ErrorPolicy::Skip)
      : path_(std::move(path)), format_(format), policy_(policy) {
    std::error_code ec;
    if (!std::filesystem::exists(path_, ec)) {
      throw Error(ErrorCode::FileNotFound, "corpus not found: " + path_.string());
    }
    if (format_ == CorpusFormat::PlainDir) {
      if (!std::filesystem::is_directory(path_)) {
        throw Error(ErrorCode::InvalidArgument, "plain-dir input must be a directory: " + path_.string());
      }
      for (const auto& e : std::filesystem::recursive_directory_iterator(path_)) {
        if (e.is_regular_file() && e.path().filename().string()[0] != '.') files_.push_back(e.path());
      }
      std::sort(files_.begin(), files_.end());
    } else {
      in_ = std::make_unique<std::ifstream>(path_, std::ios::binary);
      if (!*in_) throw Error(ErrorCode::FileNotFound, "cannot open corpus: " + path_.string());
    }
  }

  // Fills `rec` with the next well-formed record; false at end of input.
  bool next(CorpusRecord& rec) {
    for (;;) {
      bool got = false;
      try {
        switch (format_) {
          case CorpusFormat::Jsonl: got = next_jsonl(rec); break;
          case CorpusFormat::Conll: got = next_conll(rec); break;
          case CorpusFormat::PlainDir: got = next_file(rec); break;
        }
      } catch (const Error& e) {
        report(pending_location_, e.code(), e.what());
        continue;
      }
      if (!got) return false;
      if (!ids_.insert(rec.id).second) {
        report(pending_location_, ErrorCode::MalformedRecord, "duplicate document id '" + rec.id + "'");
        continue;
      }
      return true;
    }
  }

  std::vector<CorpusRecord> read_all() {
    std::vector<CorpusRecord> out;
    CorpusRecord r;
    while (next(r)) out.push_back(std::move(r));
    return out;
  }

  const std::vector<RecordError>& errors() const { return errors_; }

  // Called for every skipped record (after it is appended to errors()).
  std::function<void(const RecordError&)> on_error;

 private:
  void report(const std::string& where, ErrorCode code, const std::string& msg) {
    RecordError e{where, code, msg};
    if (policy_ == ErrorPolicy::Abort) throw Error(code, e.location + ": " + msg);
    errors_.push_back(e);
    if (on_error) on_error(errors_.back());
  }

  std::string where(std::size_t line) const { return path_.string() + ":" + std::to_string(line); }

  static std::vector<Token> tokens_from_json(const nlohmann::json& arr) {
    std::vector<Token> out;
    for (const auto& t : arr) {
      Token tok;
      std::string tag;
      if (t.is_array() && t.size() == 2 && t[0].is_string() && t[1].is_string()) {
        tok.surface = t[0].get<std::string>();
        tag = t[1].get<std::string>();
      } else if (t.is_object() && t.contains("surface") && t.contains("pos")) {
        tok.surface = t["surface"].get<std::string>();
        tag = t["pos"].get<std::string>();
      } else {
        throw Error(ErrorCode::GoldTagMissing, "token entry lacks a tag: " + t.dump());
      }
      if (tok.surface.empty()) throw Error(ErrorCode::MalformedRecord, "empty token surface");
      tok.pos = parse_penn_tag(tag);
      tok.lower = text::fold(tok.surface);
      tok.index = out.size();
      out.push_back(std::move(tok));
    }
    return out;
  }

  bool next_jsonl(CorpusRecord& rec) {
    std::string line;
    while (std::getline(*in_, line)) {
      ++line_;
      pending_location_ = where(line_);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("invalid JSON: ") + e.what());
      }
      if (!j.is_object()) throw Error(ErrorCode::MalformedRecord, "record is not a JSON object");
      if (!j.contains("id")) throw Error(ErrorCode::MalformedRecord, "record lacks \"id\"");
      rec = CorpusRecord{};
      const auto& id = j["id"];
      if (id.is_string()) {
        rec.id = id.get<std::string>();
      } else if (id.is_number_integer()) {
        rec.id = id.dump();
      } else {
        throw Error(ErrorCode::MalformedRecord, "\"id\" must be a string or integer");
      }
      if (j.contains("tokens")) {
        if (!j["tokens"].is_array()) throw Error(ErrorCode::MalformedRecord, "\"tokens\" must be an array");
        rec.tokens = tokens_from_json(j["tokens"]);
      } else if (j.contains("text") && j["text"].is_string()) {
        rec.text = j["text"].get<std::string>();
      } else {
        throw Error(ErrorCode::MalformedRecord, "record lacks a string \"text\" or a \"tokens\" array");
      }
      if (j.contains("label") && !j["label"].is_null()) {
        rec.label = j["label"].is_string() ? j["label"].get<std::string>() : j["label"].dump();
      }
      return true;
    }
    return false;
  }

  // One token per line "surface<TAB>tag"; blank line ends a document.
  // Optional "# id = X" and "# label = Y" comment lines precede a document.
  bool next_conll(CorpusRecord& rec) {
    rec = CorpusRecord{};
    std::string line;
    bool started = false;
    std::optional<RecordError> bad;
    std::size_t first_line = 0;
    while (std::getline(*in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) {
        if (started) break;
        continue;
      }
      if (!started) first_line = line_;
      started = true;
      if (line.starts_with("# ")) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
          auto key = line.substr(2, eq - 2);
          auto val = line.substr(eq + 1);
          auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(' '));
            s.erase(s.find_last_not_of(' ') + 1);
            return s;
          };
          key = trim(key);
          if (key == "id") rec.id = trim(val);
          if (key == "label") rec.label = trim(val);
        }
        continue;
      }
      if (bad) continue;
      try {
        Token t = parse_gold_record(line);
        t.index = rec.tokens.size();
        rec.tokens.push_back(std::move(t));
      } catch (const Error& e) {
        bad = RecordError{where(line_), e.code(), e.what()};
      }
    }
    if (!started) return false;
    ++doc_;
    if (rec.id.empty()) rec.id = "doc-" + std::to_string(doc_ - 1);
    pending_location_ = where(first_line);
    if (bad) {
      pending_location_ = bad->location;
      throw Error(bad->code, bad->message + " (document '" + rec.id + "')");
    }
    if (rec.tokens.empty()) throw Error(ErrorCode::MalformedRecord, "document '" + rec.id + "' has no tokens");
    return true;
  }

  bool next_file(CorpusRecord& rec) {
    if (file_ >= files_.size()) return false;
    const auto& p = files_[file_++];
    pending_location_ = p.string();
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    rec = CorpusRecord{};
    auto rel = std::filesystem::relative(p, path_);
    rec.id = (rel.parent_path() / rel.stem()).generic_string();
    rec.text = ss.str();
    if (rel.has_parent_path() && !rel.parent_path().empty()) rec.label = rel.begin()->string();
    return true;
  }

  std::filesystem::path path_;
  CorpusFormat format_;
  ErrorPolicy policy_;
  std::unique_ptr<std::ifstream> in_;
  std::vector<std::filesystem::path> files_;
  std::size_t file_ = 0;
  std::size_t line_ = 0;
  std::size_t doc_ = 0;
  std::string pending_location_;
  std::set<std::string> ids_;
  std::vector<RecordError> errors_;
};

inline std::vector<CorpusRecord> read_corpus(const std::filesystem::path& path, CorpusFormat format,
                                             ErrorPolicy policy = ErrorPolicy::Skip,
                                             std::vector<RecordError>* errors = nullptr) {
  CorpusReader r(path, format, policy);
  auto out = r.read_all();
  if (errors) *errors = r.errors();
  return out;
}

inline void write_corpus_jsonl(std::ostream& out, std::span<const CorpusRecord> records) {
  for (const auto& r : records) {
    nlohmann::json j;
    j["id"] = r.id;
    if (r.pretagged()) {
      auto arr = nlohmann::json::array();
      for (const auto& t : r.tokens) arr.push_back({t.surface, std::string(to_string(t.pos))});
      j["tokens"] = arr;
    } else {
      j["text"] = r.text;
    }
    if (r.label) j["label"] = *r.label;
    out << j.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

enum class ProfileFormat : std::uint8_t { Csv, Jsonl };

inline ProfileFormat parse_profile_format(std::string_view s) {
  if (s == "csv") return ProfileFormat::Csv;
  if (s == "jsonl") return ProfileFormat::Jsonl;
  throw Error(ErrorCode::InvalidArgument, "unknown output format '" + std::string(s) + "'");
}

inline constexpr std::array<std::string_view, 4> kStatSuffixes = {"mean", "min", "max", "std"};

inline std::vector<std::string> profile_header(CountingMode mode) {
  std::vector<std::string> h{"doc_id"};
  for (const auto& f : kFeatures) {
    if (mode == CountingMode::Binary) {
      h.emplace_back(f.code);
    } else {
      for (auto s : kStatSuffixes) h.push_back(std::string(f.code) + "_" + std::string(s));
    }
  }
  return h;
}

inline void write_profile_csv_header(std::ostream& out, CountingMode mode) {
  write_csv_row(out, profile_header(mode));
}

inline void write_profile_csv_row(std::ostream& out, const StyleProfile& p) {
  std::vector<std::string> row{p.doc_id};
  for (const auto& s : p.stats) {
    if (p.mode == CountingMode::Binary) {
      row.push_back(format_double(s.mean));
    } else {
      for (double v : {s.mean, s.min, s.max, s.std}) row.push_back(format_double(v));
    }
  }
  write_csv_row(out, row);
}

inline std::string profile_to_jsonl(const StyleProfile& p) {
  // Built by hand so numbers use the same shortest round-trip formatting as
  // the CSV writer.
  std::string s = "{\"doc_id\":" + nlohmann::json(p.doc_id).dump() + ",\"mode\":\"" +
                  std::string(to_string(p.mode)) + "\",\"chunk_size\":" + std::to_string(p.chunk_size) +
                  ",\"chunks\":" + std::to_string(p.chunk_count) + ",\"tokens\":" + std::to_string(p.token_count) +
                  ",\"features\":{";
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (f) s += ',';
    s += '"';
    s += kFeatures[f].code;
    s += "\":";
    const auto& st = p.stats[f];
    if (p.mode == CountingMode::Binary) {
      s += format_double(st.mean);
    } else {
      s += "{\"mean\":" + format_double(st.mean) + ",\"min\":" + format_double(st.min) +
           ",\"max\":" + format_double(st.max) + ",\"std\":" + format_double(st.std) + "}";
    }
  }
  s += "}}";
  return s;
}

inline void write_profiles(std::ostream& out, std::span<const StyleProfile> profiles, ProfileFormat format,
                           CountingMode mode) {
  for (const auto& p : profiles) {
    if (p.mode != mode) throw Error(ErrorCode::InvalidArgument, "profiles mix counting modes");
  }
  if (format == ProfileFormat::Csv) {
    write_profile_csv_header(out, mode);
    for (const auto& p : profiles) write_profile_csv_row(out, p);
  } else {
    for (const auto& p : profiles) out << profile_to_jsonl(p) << '\n';
  }
}

inline void write_profiles(const std::string& path, std::span<const StyleProfile> profiles, ProfileFormat format,
                           CountingMode mode) {
  write_output(path, [&](std::ostream& out) { write_profiles(out, profiles, format, mode); });
}

// CSV profiles carry doc_id and feature values only (chunk metadata is in the
// jsonl form). The mode is recovered from the header.
inline std::vector<StyleProfile> read_profiles(std::istream& in, ProfileFormat format) {
  std::vector<StyleProfile> out;
  if (format == ProfileFormat::Csv) {
    std::vector<std::string> row;
    std::size_t line = 0;
    if (!read_csv_row(in, row, &line)) return out;
    CountingMode mode;
    if (row == profile_header(CountingMode::Binary)) {
      mode = CountingMode::Binary;
    } else if (row == profile_header(CountingMode::Regular)) {
      mode = CountingMode::Regular;
    } else {
      throw Error(ErrorCode::MalformedRecord, "profile CSV header does not match either schema");
    }
    const std::size_t width = row.size();
    while (read_csv_row(in, row, &line)) {
      if (row.size() == 1 && row[0].empty()) continue;
      if (row.size() != width) {
        throw Error(ErrorCode::MalformedRecord, "line " + std::to_string(line) + ": expected " +
                                                    std::to_string(width) + " columns, got " + std::to_string(row.size()));
      }
      StyleProfile p;
      p.doc_id = row[0];
      p.mode = mode;
      p.chunk_size = 0;
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        if (mode == CountingMode::Binary) {
          p.stats[f].mean = parse_double(row[1 + f]);
        } else {
          auto& s = p.stats[f];
          s.mean = parse_double(row[1 + 4 * f]);
          s.min = parse_double(row[2 + 4 * f]);
          s.max = parse_double(row[3 + 4 * f]);
          s.std = parse_double(row[4 + 4 * f]);
        }
      }
      out.push_back(std::move(p));
    }
    return out;
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      StyleProfile p;
      p.doc_id = j.at("doc_id").get<std::string>();
      p.mode = parse_counting_mode(j.at("mode").get<std::string>());
      p.chunk_size = j.at("chunk_size").get<std::size_t>();
      p.chunk_count = j.at("chunks").get<std::size_t>();
      p.token_count = j.at("tokens").get<std::size_t>();
      const auto& feats = j.at("features");
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const auto& v = feats.at(std::string(kFeatures[f].code));
        if (p.mode == CountingMode::Binary) {
          p.stats[f].mean = v.get<double>();
        } else {
          p.stats[f] = {v.at("mean").get<double>(), v.at("min").get<double>(), v.at("max").get<double>(),
                        v.at("std").get<double>()};
        }
      }
      out.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chunk labels: {"doc_id": ..., "chunk": n, "labels": "<96 chars of 0/1>"}
// ---------------------------------------------------------------------------

inline std::string labels_to_jsonl(const ChunkLabels& l) {
  return "{\"doc_id\":" + nlohmann::json(l.doc_id).dump() + ",\"chunk\":" + std::to_string(l.chunk) +
         ",\"labels\":\"" + to_bitstring(l.labels) + "\"}";
}

inline void write_labels(std::ostream& out, std::span<const ChunkLabels> labels) {
  for (const auto& l : labels) out << labels_to_jsonl(l) << '\n';
}

inline void write_labels(const std::string& path, std::span<const ChunkLabels> labels) {
  write_output(path, [&](std::ostream& out) { write_labels(out, labels); });
}

inline std::vector<ChunkLabels> read_labels(std::istream& in) {
  std::vector<ChunkLabels> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back({j.at("doc_id").get<std::string>(), j.at("chunk").get<std::size_t>(),
                     from_bitstring(j.at("labels").get<std::string>())});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Feature matrices: doc_id[,label],VBD,...,TO
// ---------------------------------------------------------------------------

inline void write_matrix(std::ostream& out, const FeatureMatrix& m) {
  std::vector<std::string> h{"doc_id"};
  if (m.has_labels()) h.emplace_back("label");
  for (const auto& f : kFeatures) h.emplace_back(f.code);
  write_csv_row(out, h);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::string> row{m.doc_ids[r]};
    if (m.has_labels()) row.push_back(m.labels[r]);
    for (double v : m.values.row(r)) row.push_back(format_double(v));
    write_csv_row(out, row);
  }
}

// Accepts a matrix CSV or a profile CSV of either mode (regular profiles
// contribute their FEAT_mean columns).
inline FeatureMatrix read_matrix(std::istream& in) {
  std::vector<std::string> header;
  std::size_t line = 0;
  if (!read_csv_row(in, header, &line) || header.empty() || header[0] != "doc_id") {
    throw Error(ErrorCode::MalformedRecord, "matrix CSV must start with a doc_id column");
  }
  const bool labelled = header.size() > 1 && header[1] == "label";
  std::array<std::size_t, kFeatureCount> col{};
  std::array<bool, kFeatureCount> found{};
  for (std::size_t c = labelled ? 2 : 1; c < header.size(); ++c) {
    std::string name = header[c];
    if (name.ends_with("_mean")) name.resize(name.size() - 5);
    if (auto id = parse_feature(name)) {
      const auto f = feature_index(*id);
      if (!found[f]) {
        col[f] = c;
        found[f] = true;
      }
    }
  }
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (!found[f]) {
      throw Error(ErrorCode::MalformedRecord, "matrix CSV lacks column " + std::string(kFeatures[f].code));
    }
  }
  FeatureMatrix m;
  std::vector<double> values;
  std::vector<std::string> row;
  while (read_csv_row(in, row, &line)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != header.size()) {
      throw Error(ErrorCode::MalformedRecord, "line " + std::to_string(line) + ": expected " +
                                                  std::to_string(header.size()) + " columns");
    }
    m.doc_ids.push_back(row[0]);
    if (labelled) m.labels.push_back(row[1]);
    for (std::size_t f = 0; f < kFeatureCount; ++f) values.push_back(parse_double(row[col[f]]));
  }
  m.values = Matrix(m.doc_ids.size(), kFeatureCount);
  for (std::size_t r = 0; r < m.doc_ids.size(); ++r) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) m.values(r, f) = values[r * kFeatureCount + f];
  }
  return m;
}

// ---------------------------------------------------------------------------
// PCA outputs
// ---------------------------------------------------------------------------

inline void write_scatter(std::ostream& out, std::span<const ScatterRecord> recs, std::size_t a, std::size_t b) {
  write_csv_row(out, {"doc_id", "label", "PC" + std::to_string(a + 1), "PC" + std::to_string(b + 1)});
  for (const auto& r : recs) write_csv_row(out, {r.doc_id, r.label, format_double(r.a), format_double(r.b)});
}

inline std::vector<ScatterRecord> read_scatter(std::istream& in) {
  std::vector<std::string> row;
  std::vector<ScatterRecord> out;
  if (!read_csv_row(in, row) || row.size() != 4) throw Error(ErrorCode::MalformedRecord, "scatter CSV needs 4 columns");
  while (read_csv_row(in, row)) {
    if (row.size() != 4) throw Error(ErrorCode::MalformedRecord, "scatter CSV needs 4 columns");
    out.push_back({row[0], row[1], parse_double(row[2]), parse_double(row[3])});
  }
  return out;
}

inline void write_loadings(std::ostream& out, const PcaResult& res, std::span<const std::string> names) {
  std::vector<std::string> h{"feature"};
  for (std::size_t j = 0; j < res.k(); ++j) h.push_back("PC" + std::to_string(j + 1));
  write_csv_row(out, h);
  for (std::size_t i = 0; i < res.components.rows(); ++i) {
    std::vector<std::string> row{i < names.size() ? names[i] : std::to_string(i)};
    for (std::size_t j = 0; j < res.k(); ++j) row.push_back(format_double(res.components(i, j)));
    write_csv_row(out, row);
  }
}

inline void write_variance(std::ostream& out, const PcaResult& res) {
  write_csv_row(out, {"component", "eigenvalue", "explained_ratio", "cumulative_ratio"});
  double cum = 0.0;
  for (std::size_t j = 0; j < res.k(); ++j) {
    cum += res.explained_ratio[j];
    write_csv_row(out, {"PC" + std::to_string(j + 1), format_double(res.explained_variance[j]),
                        format_double(res.explained_ratio[j]), format_double(cum)});
  }
}

// ---------------------------------------------------------------------------
// Authorship pairs: one JSON object per line with an id, a two-element text
// array and a boolean ground truth. Field names are configurable.
// ---------------------------------------------------------------------------

struct PanFields {
  std::string id = "id";
  std::string pair = "pair";
  std::string same = "same";
};

struct PanPair {
  std::string id;
  std::string text_a;
  std::string text_b;
  bool same = false;
};

inline std::vector<PanPair> read_pan_pairs(const std::filesystem::path& path, const PanFields& fields = {},
                                           ErrorPolicy policy = ErrorPolicy::Skip,
                                           std::vector<RecordError>* errors = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "pair file not found: " + path.string());
  std::vector<PanPair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    try {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("invalid JSON: ") + e.what());
      }
      if (!j.is_object() || !j.contains(fields.id) || !j.contains(fields.pair) || !j.contains(fields.same)) {
        throw Error(ErrorCode::MalformedRecord, "record needs \"" + fields.id + "\", \"" + fields.pair +
                                                    "\" and \"" + fields.same + "\"");
      }
      const auto& p = j[fields.pair];
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
        throw Error(ErrorCode::MalformedRecord, "\"" + fields.pair + "\" must hold two strings");
      }
      if (!j[fields.same].is_boolean()) {
        throw Error(ErrorCode::MalformedRecord, "\"" + fields.same + "\" must be a boolean");
      }
      const auto& id = j[fields.id];
      out.push_back({id.is_string() ? id.get<std::string>() : id.dump(), p[0].get<std::string>(),
                     p[1].get<std::string>(), j[fields.same].get<bool>()});
    } catch (const Error& e) {
      if (policy == ErrorPolicy::Abort) throw Error(e.code(), where + ": " + e.what());
      if (errors) errors->push_back({where, e.code(), e.what()});
    }
  }
  return out;
}

inline void write_pan_pairs(std::ostream& out, std::span<const PanPair> pairs, const PanFields& fields = {}) {
  for (const auto& p : pairs) {
    nlohmann::json j;
    j[fields.id] = p.id;
    j[fields.pair] = {p.text_a, p.text_b};
    j[fields.same] = p.same;
    out << j.dump() << '\n';
  }
}

}  // namespace biberkit
