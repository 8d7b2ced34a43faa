// biberkit command-line tool.
//
// Every setting resolves as: command line > BIBERKIT_<NAME> environment
// variable > config file (`key = value`) > built-in default.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "biberkit/biberkit.hpp"

namespace bk = biberkit;

namespace {

// ---------------------------------------------------------------------------
// Settings with layered precedence
// ---------------------------------------------------------------------------

struct Setting {
  std::string name;
  std::string fallback;
  CLI::Option* opt = nullptr;
  std::string raw;     // bound to the CLI option
  std::string value;   // resolved
  std::string source;  // cli | env | config | default
};

std::string env_name(std::string_view key) {
  std::string out = "BIBERKIT_";
  for (char c : key) out.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> out;
  if (path.empty()) return out;
  std::ifstream in(path);
  if (!in) throw bk::Error(bk::ErrorCode::FileNotFound, "config file not found: " + path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto t = trim(line.substr(0, line.find('#')));
    if (t.empty() || t.front() == '[') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw bk::Error(bk::ErrorCode::MalformedRecord, path + ":" + std::to_string(n) + ": expected key = value");
    }
    auto key = trim(t.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    auto val = trim(t.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
    out[key] = val;
  }
  return out;
}

class Settings {
 public:
  explicit Settings(CLI::App* app) : app_(app) {
    add("config", "", "Config file of key = value lines");
    app_->add_flag("--print-config", print_, "Print resolved settings with their sources and exit");
  }

  void add(const std::string& name, std::string fallback, const std::string& help) {
    auto& s = *items_.emplace_back(std::make_unique<Setting>());
    s.name = name;
    s.fallback = std::move(fallback);
    std::string desc = help;
    if (!s.fallback.empty()) desc += " [default: " + s.fallback + "]";
    s.opt = app_->add_option("--" + name, s.raw, desc);
  }

  void resolve() {
    Setting& cfg = *items_.front();
    resolve_one(cfg, {});
    const auto file = read_config(cfg.value);
    for (auto& s : items_) {
      if (s.get() != &cfg) resolve_one(*s, file);
    }
    for (const auto& [key, _] : file) {
      if (!find(key)) std::cerr << "warning: config key '" << key << "' is not used by this command\n";
    }
  }

  bool print_requested() const { return print_; }

  void print(std::ostream& out) const {
    for (const auto& s : items_) out << s->name << " = " << s->value << "  (" << s->source << ")\n";
  }

  const std::string& str(std::string_view name) const {
    const Setting* s = find(name);
    if (!s) throw bk::Error(bk::ErrorCode::InvalidArgument, "internal: no setting " + std::string(name));
    return s->value;
  }

  std::size_t size(std::string_view name) const { return to_size(name, str(name)); }
  double real(std::string_view name) const {
    try {
      return bk::parse_double(str(name));
    } catch (const bk::Error&) {
      throw bk::Error(bk::ErrorCode::InvalidArgument, "--" + std::string(name) + " expects a number, got '" +
                                                          str(name) + "'");
    }
  }

  static std::size_t to_size(std::string_view name, const std::string& v) {
    std::size_t out = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || r.ec != std::errc() || r.ptr != v.data() + v.size()) {
      throw bk::Error(bk::ErrorCode::InvalidArgument,
                      "--" + std::string(name) + " expects a non-negative integer, got '" + v + "'");
    }
    return out;
  }

 private:
  const Setting* find(std::string_view name) const {
    for (const auto& s : items_) {
      if (s->name == name) return s.get();
    }
    return nullptr;
  }

  static void resolve_one(Setting& s, const std::map<std::string, std::string>& file) {
    if (s.opt->count() > 0) {
      s.value = s.raw;
      s.source = "cli";
    } else if (const char* e = std::getenv(env_name(s.name).c_str()); e != nullptr) {
      s.value = e;
      s.source = "env";
    } else if (auto it = file.find(s.name); it != file.end()) {
      s.value = it->second;
      s.source = "config";
    } else {
      s.value = s.fallback;
      s.source = "default";
    }
  }

  CLI::App* app_;
  bool print_ = false;
  std::vector<std::unique_ptr<Setting>> items_;
};

// ---------------------------------------------------------------------------
// Shared option groups
// ---------------------------------------------------------------------------

void add_io(Settings& s, bool corpus) {
  s.add("input", "", corpus ? "Input corpus (file, or directory for plain-dir)" : "Input file");
  if (corpus) s.add("format", "jsonl", "Corpus format: jsonl, conll, plain-dir");
  s.add("output", "-", "Output path, - for stdout");
}

void add_runtime(Settings& s) {
  s.add("threads", "auto", "Worker threads (auto = hardware concurrency)");
  s.add("on-error", "skip", "Bad records: skip (log to stderr) or abort");
}

void add_pipeline(Settings& s) {
  s.add("mode", "binary", "Counting mode: regular or binary");
  s.add("chunk-size", "", "Tokens per chunk [default: 100 binary, 1000 regular]");
  s.add("chunk-policy", "merge", "Short trailing chunk: keep, drop or merge");
  s.add("chunk-threshold", "0.5", "Fraction of chunk-size below which the tail is short");
  s.add("normalize-per", "100", "Regular mode: counts per this many tokens");
  s.add("pos", "builtin", "POS source: builtin tagger or gold tags from the corpus");
  s.add("wordlists-dir", "", "Directory of word lists [default: bundled]");
  s.add("lexicon", "", "Tagger lexicon TSV [default: bundled]");
}

std::size_t threads_of(const Settings& s) {
  const auto& v = s.str("threads");
  if (v == "auto" || v == "0") return std::max(1u, std::thread::hardware_concurrency());
  return Settings::to_size("threads", v);
}

bk::Pipeline make_pipeline(const Settings& s) {
  const auto lists = s.str("wordlists-dir").empty() ? bk::WordLists::load_default()
                                                     : bk::WordLists::load(s.str("wordlists-dir"));
  auto lexicon = s.str("lexicon").empty() ? bk::Lexicon::load_default() : bk::Lexicon::load(s.str("lexicon"));
  bk::PipelineConfig cfg;
  cfg.mode = bk::parse_counting_mode(s.str("mode"));
  cfg.chunk = cfg.mode == bk::CountingMode::Binary ? bk::ChunkSpec::binary_default()
                                                   : bk::ChunkSpec::regular_default();
  if (!s.str("chunk-size").empty()) cfg.chunk.size = s.size("chunk-size");
  if (cfg.chunk.size == 0) throw bk::Error(bk::ErrorCode::InvalidArgument, "--chunk-size must be >= 1");
  cfg.chunk.policy = bk::parse_chunk_policy(s.str("chunk-policy"));
  cfg.chunk.threshold = s.real("chunk-threshold");
  cfg.normalize_per = s.size("normalize-per");
  if (cfg.normalize_per == 0) throw bk::Error(bk::ErrorCode::InvalidArgument, "--normalize-per must be >= 1");
  cfg.pos = bk::parse_pos_kind(s.str("pos"));
  return bk::Pipeline(lists, std::move(lexicon), cfg);
}

const std::string& require(const Settings& s, std::string_view name) {
  const auto& v = s.str(name);
  if (v.empty()) throw bk::Error(bk::ErrorCode::InvalidArgument, "--" + std::string(name) + " is required");
  return v;
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

bk::CorpusReader open_corpus(const Settings& s) {
  bk::CorpusReader reader(require(s, "input"), bk::parse_corpus_format(s.str("format")),
                          bk::parse_error_policy(s.str("on-error")));
  reader.on_error = [](const bk::RecordError& e) { warn(e.str()); };
  return reader;
}

// Per-document processing in input-order batches. Failed documents are
// logged and skipped, or abort the run.
template <class T, class Fn, class Sink>
std::size_t for_each_document(const Settings& s, bk::CorpusReader& reader, Fn&& fn, Sink&& sink) {
  const auto policy = bk::parse_error_policy(s.str("on-error"));
  const std::size_t threads = threads_of(s);
  const std::size_t batch = std::max<std::size_t>(256, threads * 64);
  std::size_t failed = 0;
  std::vector<bk::CorpusRecord> recs;
  bk::CorpusRecord r;
  bool more = true;
  while (more) {
    recs.clear();
    while (recs.size() < batch && (more = reader.next(r))) recs.push_back(std::move(r));
    const auto out = bk::ordered_map<T>(recs.size(), threads, [&](std::size_t i) { return fn(recs[i]); });
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (const auto* e = std::get_if<bk::Error>(&out[i])) {
        if (policy == bk::ErrorPolicy::Abort) throw bk::Error(e->code(), "document '" + recs[i].id + "': " + e->what());
        warn("document '" + recs[i].id + "': " + std::string(bk::error_code_name(e->code())) + ": " + e->what());
        ++failed;
      } else {
        sink(recs[i], std::get<0>(out[i]));
      }
    }
  }
  return failed;
}

std::vector<std::size_t> parse_list(std::string_view name, const std::string& v) {
  std::vector<std::size_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Settings::to_size(name, trim(item)));
  if (out.empty()) throw bk::Error(bk::ErrorCode::InvalidArgument, "--" + std::string(name) + " is empty");
  return out;
}

std::string features_of(const bk::FeatureSet& set) {
  std::string out;
  for (std::size_t f = 0; f < bk::kFeatureCount; ++f) {
    if (!set.test(f)) continue;
    if (!out.empty()) out.push_back(',');
    out += bk::kFeatures[f].code;
  }
  return out.empty() ? "-" : out;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

void cmd_tag(const Settings& s) {
  const auto pipe = make_pipeline(s);
  std::size_t failed = 0;
  auto reader = open_corpus(s);
  bk::write_output(s.str("output"), [&](std::ostream& out) {
    out << "doc_id\tindex\ttoken\tpos\tfeatures\n";
    failed = for_each_document<bk::DocumentResult>(
        s, reader, [&](const bk::CorpusRecord& rec) { return pipe.annotate(rec); },
        [&](const bk::CorpusRecord& rec, const bk::DocumentResult& d) {
          for (std::size_t i = 0; i < d.tokens.size(); ++i) {
            out << rec.id << '\t' << i << '\t' << d.tokens[i].surface << '\t' << bk::to_string(d.tokens[i].pos)
                << '\t' << features_of(d.annotation.fired[i]) << '\n';
          }
        });
  });
  if (failed) warn(std::to_string(failed) + " document(s) skipped");
}

void cmd_profile(const Settings& s) {
  const auto pipe = make_pipeline(s);
  const auto& fmt = s.str("output-format");
  const bool matrix = fmt == "matrix";
  const auto pf = matrix ? bk::ProfileFormat::Csv : bk::parse_profile_format(fmt);
  const auto mode = pipe.config().mode;
  std::size_t docs = 0, failed = 0;
  auto reader = open_corpus(s);
  bk::write_output(s.str("output"), [&](std::ostream& out) {
    std::vector<bk::StyleProfile> kept;
    std::vector<std::string> labels;
    bool all_labelled = true;
    if (!matrix && pf == bk::ProfileFormat::Csv) bk::write_profile_csv_header(out, mode);
    failed = for_each_document<bk::StyleProfile>(
        s, reader, [&](const bk::CorpusRecord& rec) { return pipe.profile(rec); },
        [&](const bk::CorpusRecord& rec, const bk::StyleProfile& p) {
          ++docs;
          if (matrix) {
            kept.push_back(p);
            labels.push_back(rec.label.value_or(""));
            all_labelled = all_labelled && rec.label.has_value();
          } else if (pf == bk::ProfileFormat::Csv) {
            bk::write_profile_csv_row(out, p);
          } else {
            out << bk::profile_to_jsonl(p) << '\n';
          }
        });
    if (matrix) {
      if (!all_labelled) labels.clear();
      bk::write_matrix(out, bk::FeatureMatrix::from_profiles(kept, labels));
    }
  });
  std::cerr << "profiled " << docs << " document(s), skipped " << failed << '\n';
}

void cmd_export_labels(const Settings& s) {
  const auto pipe = make_pipeline(s);
  std::size_t failed = 0;
  auto reader = open_corpus(s);
  bk::write_output(s.str("output"), [&](std::ostream& out) {
    failed = for_each_document<std::vector<bk::ChunkLabels>>(
        s, reader, [&](const bk::CorpusRecord& rec) { return pipe.labels(rec); },
        [&](const bk::CorpusRecord&, const std::vector<bk::ChunkLabels>& ls) { bk::write_labels(out, ls); });
  });
  if (failed) warn(std::to_string(failed) + " document(s) skipped");
}

void cmd_pca(const Settings& s) {
  const auto& path = require(s, "input");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bk::Error(bk::ErrorCode::FileNotFound, "matrix not found: " + path);
  const auto fm = bk::read_matrix(in);
  const std::size_t k = s.size("k");
  auto res = bk::pca(fm.values, k);
  if (s.str("rotate") == "varimax") {
    res.components = bk::varimax(res.components);
  } else if (s.str("rotate") != "none") {
    throw bk::Error(bk::ErrorCode::InvalidArgument, "--rotate must be none or varimax");
  }
  const auto comps = parse_list("components", s.str("components"));
  if (comps.size() != 2 || comps[0] == 0 || comps[1] == 0) {
    throw bk::Error(bk::ErrorCode::InvalidArgument, "--components takes two 1-based indices, e.g. 1,2");
  }
  const auto scatter = bk::export_scatter(res, comps[0] - 1, comps[1] - 1, fm.doc_ids, fm.labels);

  std::vector<std::string> names;
  for (const auto& f : bk::kFeatures) names.emplace_back(f.code);
  const auto& prefix = s.str("output");
  bk::write_output(prefix + "_loadings.csv", [&](std::ostream& o) { bk::write_loadings(o, res, names); });
  bk::write_output(prefix + "_scatter.csv",
                   [&](std::ostream& o) { bk::write_scatter(o, scatter, comps[0] - 1, comps[1] - 1); });
  bk::write_output(prefix + "_variance.csv", [&](std::ostream& o) { bk::write_variance(o, res); });

  const std::size_t top = s.size("top");
  std::cout << fm.rows() << " documents, k = " << res.k() << ", " << res.sweeps << " Jacobi sweeps\n";
  double cum = 0.0;
  for (std::size_t j = 0; j < res.k(); ++j) {
    cum += res.explained_ratio[j];
    std::printf("PC%zu  eigenvalue %.4f  explained %.2f%%  cumulative %.2f%%\n", j + 1, res.explained_variance[j],
                100 * res.explained_ratio[j], 100 * cum);
    std::fflush(stdout);
    if (top == 0) continue;
    std::cout << "  top:";
    for (const auto& l : bk::top_loadings(res, j, top)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " %s(%+.3f)", names[l.column].c_str(), l.weight);
      std::cout << buf;
    }
    std::cout << '\n';
  }
  std::cout << "wrote " << prefix << "_{loadings,scatter,variance}.csv\n";
}

std::vector<bk::PairExample> featurize_pairs(const Settings& s, const bk::Pipeline& pipe, const std::string& path) {
  const bk::PanFields fields{s.str("id-field"), s.str("pair-field"), s.str("same-field")};
  std::vector<bk::RecordError> errors;
  const auto pairs = bk::read_pan_pairs(path, fields, bk::parse_error_policy(s.str("on-error")), &errors);
  for (const auto& e : errors) warn(e.str());
  const auto out = bk::ordered_map<bk::PairExample>(pairs.size(), threads_of(s), [&](std::size_t i) {
    const auto a = pipe.profile_text(pairs[i].text_a, pairs[i].id + "/a");
    const auto b = pipe.profile_text(pairs[i].text_b, pairs[i].id + "/b");
    return bk::make_example(a, b, pairs[i].same);
  });
  std::vector<bk::PairExample> ex;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (const auto* e = std::get_if<bk::Error>(&out[i])) {
      if (bk::parse_error_policy(s.str("on-error")) == bk::ErrorPolicy::Abort) throw *e;
      warn("pair '" + pairs[i].id + "': " + std::string(bk::error_code_name(e->code())) + ": " + e->what());
    } else {
      ex.push_back(std::get<0>(out[i]));
    }
  }
  return ex;
}

void cmd_verify(const Settings& s) {
  const auto pipe = make_pipeline(s);
  bk::ForestModel model;
  if (!s.str("load-model").empty()) {
    model = bk::load_model(s.str("load-model"));
  } else {
    auto train = featurize_pairs(s, pipe, require(s, "train"));
    if (s.str("shuffle-labels") == "true" || s.str("shuffle-labels") == "1") {
      std::vector<bool> labels;
      for (const auto& e : train) labels.push_back(e.label);
      std::mt19937_64 rng(s.size("seed") ^ 0x5eedULL);
      std::shuffle(labels.begin(), labels.end(), rng);
      for (std::size_t i = 0; i < train.size(); ++i) train[i].label = labels[i];
    }
    bk::ForestParams p;
    p.n_trees = s.size("n-trees");
    p.max_depth = s.size("max-depth");
    p.min_leaf = s.size("min-leaf");
    p.max_features = s.size("max-features");
    p.seed = s.size("seed");
    p.threads = threads_of(s);
    model = bk::train(train, p);
    if (!s.str("save-model").empty()) bk::save_model(model, s.str("save-model"));
  }
  const auto test = featurize_pairs(s, pipe, require(s, "test"));
  const auto m = bk::evaluate(model, test, s.real("threshold"));
  bk::write_output(s.str("output"), [&](std::ostream& out) {
    out << "pairs " << test.size() << '\n'
        << "f1 " << bk::format_double(m.f1) << '\n'
        << "precision " << bk::format_double(m.precision) << '\n'
        << "recall " << bk::format_double(m.recall) << '\n'
        << "accuracy " << bk::format_double(m.accuracy) << '\n'
        << "confusion tp=" << m.tp << " fp=" << m.fp << " tn=" << m.tn << " fn=" << m.fn << '\n';
  });
}

std::vector<bk::CorpusRecord> bench_corpus(const Settings& s, std::size_t target) {
  const auto& input = s.str("input");
  if (!input.empty()) return open_corpus(s).read_all();
  // Synthetic corpus of at least `target` whitespace words.
  std::vector<bk::CorpusRecord> out;
  std::uint64_t seed = s.size("seed");
  std::size_t words = 0;
  while (words < target) {
    auto more = bk::synthetic::register_corpus(500, seed++, 120, 200);
    for (auto& r : more) {
      if (words >= target) break;
      words += static_cast<std::size_t>(std::count(r.text.begin(), r.text.end(), ' ')) + 1;
      r.id = "b" + std::to_string(out.size());
      out.push_back(std::move(r));
    }
  }
  return out;
}

void cmd_bench(const Settings& s) {
  using clock = std::chrono::steady_clock;
  const auto pipe = make_pipeline(s);
  const auto t0 = clock::now();
  const auto corpus = bench_corpus(s, s.size("tokens"));
  const double io = std::chrono::duration<double>(clock::now() - t0).count();
  auto threads = parse_list("thread-list", s.str("thread-list"));
  const auto rep = bk::run_bench(pipe, corpus, threads, static_cast<int>(std::max<std::size_t>(1, s.size("repeats"))));

  bk::write_output(s.str("output"), [&](std::ostream& out) {
    char buf[160];
    auto line = [&](const char* fmt, auto... args) {
      std::snprintf(buf, sizeof buf, fmt, args...);
      out << buf << '\n';
    };
    line("documents %zu  tokens %zu  (%s)", rep.documents, rep.tokens, s.str("input").empty() ? "synthetic" : "input");
    line("io        %9.3f s  (excluded from rates)", io);
    const std::pair<const char*, double> stages[] = {{"tokenize", rep.stages.tokenize},
                                                     {"tag", rep.stages.tag},
                                                     {"annotate", rep.stages.annotate},
                                                     {"profile", rep.stages.profile}};
    for (const auto& [name, sec] : stages) line("%-9s %9.3f s  %12.0f tokens/s", name, sec, rep.stage_rate(sec));
    line("stages    %9.3f s  wall %.3f s (%.1f%% of wall)", rep.stages.total(), rep.wall,
         rep.wall > 0 ? 100 * rep.stages.total() / rep.wall : 0.0);
    line("annotate scaling (hardware threads: %u)", std::thread::hardware_concurrency());
    line("%s", "threads   seconds    tokens/s  speedup");
    for (const auto& r : rep.scaling) line("%7zu %9.3f %11.0f  %6.2fx", r.threads, r.seconds, r.tokens_per_sec, r.speedup);
  });
}

void cmd_generate(const Settings& s) {
  const auto& kind = s.str("kind");
  const std::size_t n = s.size("n");
  const std::uint64_t seed = s.size("seed");
  bk::write_output(s.str("output"), [&](std::ostream& out) {
    if (kind == "register") {
      bk::write_corpus_jsonl(out, bk::synthetic::register_corpus(n, seed));
    } else if (kind == "pairs") {
      bk::write_pan_pairs(out, bk::synthetic::author_pairs(n, s.size("authors"), seed));
    } else {
      throw bk::Error(bk::ErrorCode::InvalidArgument, "--kind must be register or pairs");
    }
  });
}

void cmd_list_features(const Settings& s) {
  bk::write_output(s.str("output"), [&](std::ostream& out) {
    out << "index\tcode\tkind\tdescription\n";
    for (std::size_t i = 0; i < bk::kFeatureCount; ++i) {
      const auto& f = bk::kFeatures[i];
      out << i << '\t' << f.code << '\t' << (bk::is_countable(f.id) ? "count" : "real") << '\t' << f.description
          << '\n';
    }
  });
}

int fail(bk::ErrorCode code, const std::string& msg) {
  std::string one = msg;
  std::replace(one.begin(), one.end(), '\n', ' ');
  std::cerr << "error: " << bk::error_code_name(code) << ": " << one << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Register-feature tagging, corpus profiling, PCA and authorship verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "biberkit 0.1.0");

  struct Command {
    CLI::App* app;
    std::unique_ptr<Settings> settings;
    void (*run)(const Settings&);
  };
  std::vector<Command> commands;
  auto add = [&](const char* name, const char* help, void (*run)(const Settings&)) -> Settings& {
    auto* sub = app.add_subcommand(name, help);
    commands.push_back({sub, std::make_unique<Settings>(sub), run});
    return *commands.back().settings;
  };

  {
    auto& s = add("tag", "Per-token POS tags and fired features (TSV)", cmd_tag);
    add_io(s, true);
    add_pipeline(s);
    add_runtime(s);
  }
  {
    auto& s = add("profile", "Chunked feature profiles per document", cmd_profile);
    add_io(s, true);
    s.add("output-format", "csv", "csv, jsonl, or matrix (doc_id,label,feature means; input for pca)");
    add_pipeline(s);
    add_runtime(s);
  }
  {
    auto& s = add("export-labels", "Per-chunk multi-label feature sets (JSONL)", cmd_export_labels);
    add_io(s, true);
    add_pipeline(s);
    add_runtime(s);
  }
  {
    auto& s = add("pca", "Principal components of a profile or matrix CSV", cmd_pca);
    s.add("input", "", "Matrix CSV or profile CSV");
    s.add("output", "pca", "Output prefix for _loadings, _scatter and _variance CSVs");
    s.add("k", "2", "Number of components");
    s.add("components", "1,2", "Two 1-based components for the scatter export");
    s.add("rotate", "none", "Loading rotation: none or varimax");
    s.add("top", "8", "Top loadings to print per component (0 = none)");
  }
  {
    auto& s = add("verify", "Train and evaluate a same-author pair classifier", cmd_verify);
    s.add("train", "", "Training pairs (JSONL)");
    s.add("test", "", "Test pairs (JSONL)");
    s.add("output", "-", "Report path, - for stdout");
    s.add("id-field", "id", "JSON field holding the pair id");
    s.add("pair-field", "pair", "JSON field holding the two texts");
    s.add("same-field", "same", "JSON field holding the boolean ground truth");
    s.add("n-trees", "100", "Trees in the forest");
    s.add("max-depth", "16", "Maximum tree depth");
    s.add("min-leaf", "2", "Minimum samples per leaf");
    s.add("max-features", "0", "Features tried per split (0 = sqrt)");
    s.add("seed", "42", "Random seed");
    s.add("threshold", "0.5", "Decision threshold on the forest vote");
    s.add("save-model", "", "Write the trained model (JSON)");
    s.add("load-model", "", "Evaluate a saved model instead of training");
    s.add("shuffle-labels", "false", "Shuffle training labels (sanity baseline)");
    add_pipeline(s);
    add_runtime(s);
  }
  {
    auto& s = add("bench", "Throughput per stage and annotate thread scaling", cmd_bench);
    add_io(s, true);
    s.add("tokens", "1000000", "Synthetic corpus size in words when --input is not given");
    s.add("seed", "7", "Seed for the synthetic corpus");
    s.add("thread-list", "1,2,4,8", "Thread counts for the scaling table");
    s.add("repeats", "3", "Timed repeats per thread count (best is kept)");
    add_pipeline(s);
    add_runtime(s);
  }
  {
    auto& s = add("generate", "Synthetic register corpus or author pairs (JSONL)", cmd_generate);
    s.add("kind", "register", "register or pairs");
    s.add("n", "100", "Documents or pairs");
    s.add("authors", "20", "Authors (pairs only)");
    s.add("seed", "1", "Random seed");
    s.add("output", "-", "Output path, - for stdout");
  }
  {
    auto& s = add("list-features", "The 96 features in canonical order", cmd_list_features);
    s.add("output", "-", "Output path, - for stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(bk::ErrorCode::InvalidArgument, e.what());
  }

  for (auto& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      c.settings->resolve();
      if (c.settings->print_requested()) {
        c.settings->print(std::cout);
        return 0;
      }
      c.run(*c.settings);
      return 0;
    } catch (const bk::Error& e) {
      return fail(e.code(), e.what());
    } catch (const nlohmann::json::exception& e) {
      return fail(bk::ErrorCode::MalformedRecord, e.what());
    } catch (const std::exception& e) {
      return fail(bk::ErrorCode::IoFailure, e.what());
    }
  }
  return 0;
}
