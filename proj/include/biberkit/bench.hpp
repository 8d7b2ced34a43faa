#pragma once

// Throughput measurement shared by the `bench` command and the acceptance
// suite. Corpus reading is timed by the caller and reported separately.

#include <chrono>
#include <span>
#include <vector>

#include "biberkit/pipeline.hpp"

namespace biberkit {

struct ScalingRow {
  std::size_t threads = 1;
  double seconds = 0.0;
  double tokens_per_sec = 0.0;
  double speedup = 1.0;  // relative to the first row
};

struct BenchReport {
  std::size_t documents = 0;
  std::size_t tokens = 0;
  StageTimes stages;  // single-threaded, summed over documents
  double wall = 0.0;  // elapsed time of the single-threaded stage pass
  std::vector<ScalingRow> scaling;

  double stage_rate(double seconds) const { return seconds > 0 ? static_cast<double>(tokens) / seconds : 0.0; }
  double annotate_tokens_per_sec() const { return stage_rate(stages.annotate); }
};

// Runs every stage once per document on one thread, then times the annotate
// stage alone over the already-tagged corpus for each thread count.
// Documents that fail (for example empty ones) are skipped.
inline BenchReport run_bench(const Pipeline& pipe, std::span<const CorpusRecord> corpus,
                             std::span<const std::size_t> thread_counts, int repeats = 1) {
  using clock = std::chrono::steady_clock;
  BenchReport r;
  std::vector<std::vector<Token>> tagged;
  tagged.reserve(corpus.size());
  const auto start = clock::now();
  for (const auto& rec : corpus) {
    StageTimes t;
    try {
      auto toks = pipe.tokens(rec, &t);
      const auto t0 = clock::now();
      const auto ann = pipe.engine().annotate(toks, rec.id);
      t.annotate += std::chrono::duration<double>(clock::now() - t0).count();
      const auto t1 = clock::now();
      (void)profile(ann, toks, pipe.config().mode, pipe.config().chunk, pipe.config().normalize_per);
      t.profile += std::chrono::duration<double>(clock::now() - t1).count();
      r.tokens += toks.size();
      tagged.push_back(std::move(toks));
    } catch (const Error&) {
      continue;
    }
    r.stages += t;
    ++r.documents;
  }
  r.wall = std::chrono::duration<double>(clock::now() - start).count();

  std::vector<std::vector<FeatureSet>> scratch(tagged.size());
  for (std::size_t threads : thread_counts) {
    double best = 0.0;
    for (int rep = 0; rep < std::max(repeats, 1); ++rep) {
      const auto t0 = clock::now();
      parallel_for(tagged.size(), threads, [&](std::size_t i) { pipe.engine().annotate_into(tagged[i], scratch[i]); });
      const double s = std::chrono::duration<double>(clock::now() - t0).count();
      if (rep == 0 || s < best) best = s;
    }
    ScalingRow row{threads, best, r.stage_rate(best), 1.0};
    if (!r.scaling.empty() && best > 0) row.speedup = r.scaling.front().seconds / best;
    r.scaling.push_back(row);
  }
  return r;
}

}  // namespace biberkit
