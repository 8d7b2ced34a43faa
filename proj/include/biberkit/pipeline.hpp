#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "biberkit/io.hpp"
#include "biberkit/pos.hpp"
#include "biberkit/profiler.hpp"
#include "biberkit/rules.hpp"

namespace biberkit {

// Calls fn(i) for i in [0, n) on up to `threads` workers. Work is handed out
// by an atomic counter; callers write results by index, so output order does
// not depend on scheduling. The first exception is rethrown after all
// workers stop.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          if (failed.load(std::memory_order_relaxed)) return;
          const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= n) return;
          try {
            fn(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

// Per-document result or the error it raised, kept in input order.
template <class T>
using Outcome = std::variant<T, Error>;

template <class T, class Fn>
std::vector<Outcome<T>> ordered_map(std::size_t n, std::size_t threads, Fn&& fn) {
  std::vector<std::optional<Outcome<T>>> slots(n);
  parallel_for(n, threads, [&](std::size_t i) {
    try {
      slots[i].emplace(std::in_place_index<0>, fn(i));
    } catch (const Error& e) {
      slots[i].emplace(std::in_place_index<1>, e);
    }
  });
  std::vector<Outcome<T>> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct StageTimes {
  double tokenize = 0.0;  // seconds
  double tag = 0.0;
  double annotate = 0.0;
  double profile = 0.0;

  StageTimes& operator+=(const StageTimes& o) {
    tokenize += o.tokenize;
    tag += o.tag;
    annotate += o.annotate;
    profile += o.profile;
    return *this;
  }
  double total() const { return tokenize + tag + annotate + profile; }
};

struct PipelineConfig {
  CountingMode mode = CountingMode::Binary;
  ChunkSpec chunk = ChunkSpec::binary_default();
  std::size_t normalize_per = 100;
  PosKind pos = PosKind::Builtin;
};

struct DocumentResult {
  std::vector<Token> tokens;
  TagAnnotation annotation;
};

// Tokenize/tag, annotate and profile single documents. Immutable after
// construction; safe to share across worker threads.
class Pipeline {
 public:
  Pipeline(const WordLists& lists, Lexicon lexicon, PipelineConfig config)
      : config_(config), provider_(config.pos, std::move(lexicon), lists.get("emoticons")), engine_(lists) {}

  const PipelineConfig& config() const { return config_; }
  const RuleEngine& engine() const { return engine_; }

  std::vector<Token> tokens(const CorpusRecord& rec, StageTimes* times = nullptr) const {
    using clock = std::chrono::steady_clock;
    if (rec.pretagged()) return PosProvider::passthrough(rec.tokens);
    if (config_.pos == PosKind::Gold) {
      throw Error(ErrorCode::GoldTagMissing, "document '" + rec.id + "' has raw text but --pos gold was requested");
    }
    const auto t0 = clock::now();
    auto toks = provider_.tokenize(rec.text);
    const auto t1 = clock::now();
    toks = provider_.tag(std::move(toks));
    const auto t2 = clock::now();
    if (times) {
      times->tokenize += std::chrono::duration<double>(t1 - t0).count();
      times->tag += std::chrono::duration<double>(t2 - t1).count();
    }
    return toks;
  }

  DocumentResult annotate(const CorpusRecord& rec, StageTimes* times = nullptr) const {
    DocumentResult r;
    r.tokens = tokens(rec, times);
    const auto t0 = std::chrono::steady_clock::now();
    r.annotation = engine_.annotate(r.tokens, rec.id);
    if (times) times->annotate += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }

  StyleProfile profile(const CorpusRecord& rec, StageTimes* times = nullptr) const {
    const auto doc = annotate(rec, times);
    const auto t0 = std::chrono::steady_clock::now();
    auto p = biberkit::profile(doc.annotation, doc.tokens, config_.mode, config_.chunk, config_.normalize_per);
    if (times) times->profile += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return p;
  }

  std::vector<ChunkLabels> labels(const CorpusRecord& rec) const {
    const auto doc = annotate(rec);
    return export_chunk_labels(doc.annotation, doc.tokens, config_.chunk);
  }

  StyleProfile profile_text(std::string_view text, std::string id = {}) const {
    CorpusRecord rec;
    rec.id = std::move(id);
    rec.text = std::string(text);
    return profile(rec);
  }

 private:
  PipelineConfig config_;
  PosProvider provider_;
  RuleEngine engine_;
};

}  // namespace biberkit
