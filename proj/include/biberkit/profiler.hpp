#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "biberkit/core.hpp"
#include "biberkit/rules.hpp"

namespace biberkit {

// What happens to a trailing chunk shorter than `size`.
enum class ChunkPolicy : std::uint8_t {
  Keep,       // always its own chunk
  DropBelow,  // dropped when shorter than threshold * size
  MergeBelow, // appended to the previous chunk when shorter than threshold * size
};

inline ChunkPolicy parse_chunk_policy(std::string_view s) {
  if (s == "keep") return ChunkPolicy::Keep;
  if (s == "drop") return ChunkPolicy::DropBelow;
  if (s == "merge") return ChunkPolicy::MergeBelow;
  throw Error(ErrorCode::InvalidArgument, "unknown chunk policy '" + std::string(s) + "'");
}

constexpr std::string_view to_string(ChunkPolicy p) {
  switch (p) {
    case ChunkPolicy::Keep: return "keep";
    case ChunkPolicy::DropBelow: return "drop";
    case ChunkPolicy::MergeBelow: return "merge";
  }
  return "merge";
}

struct ChunkSpec {
  std::size_t size = 100;
  ChunkPolicy policy = ChunkPolicy::MergeBelow;
  double threshold = 0.5;

  static ChunkSpec binary_default() { return {100}; }
  static ChunkSpec regular_default() { return {1000}; }
};

struct ChunkBounds {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

// Consecutive non-overlapping [begin, end) ranges over n tokens. A document
// shorter than one chunk always yields a single chunk, whatever the policy.
inline std::vector<ChunkBounds> chunk_bounds(std::size_t n, const ChunkSpec& spec) {
  if (spec.size == 0) throw Error(ErrorCode::InvalidArgument, "chunk size must be >= 1");
  std::vector<ChunkBounds> out;
  for (std::size_t b = 0; b < n; b += spec.size) out.push_back({b, std::min(n, b + spec.size)});
  if (out.size() < 2 || out.back().size() == spec.size) return out;
  const bool short_tail =
      static_cast<double>(out.back().size()) < spec.threshold * static_cast<double>(spec.size);
  if (!short_tail) return out;
  if (spec.policy == ChunkPolicy::DropBelow) {
    out.pop_back();
  } else if (spec.policy == ChunkPolicy::MergeBelow) {
    const auto end = out.back().end;
    out.pop_back();
    out.back().end = end;
  }
  return out;
}

inline std::vector<std::span<const Token>> chunk(std::span<const Token> tokens, const ChunkSpec& spec) {
  std::vector<std::span<const Token>> out;
  for (const auto& b : chunk_bounds(tokens.size(), spec)) {
    out.push_back(tokens.subspan(b.begin, b.size()));
  }
  return out;
}

using FeatureCounts = std::array<std::uint32_t, kFeatureCount>;

inline FeatureCounts count_range(const TagAnnotation& ann, ChunkBounds b) {
  FeatureCounts c{};
  for (std::size_t i = b.begin; i < b.end; ++i) {
    const auto& s = ann.fired[i];
    if (s.none()) continue;
    for (std::size_t f = 0; f < kFeatureCount; ++f) c[f] += s[f];
  }
  return c;
}

namespace detail {

inline void check_pair(const TagAnnotation& ann, std::span<const Token> tokens) {
  if (tokens.empty()) {
    throw Error(ErrorCode::EmptyDocument, "document '" + ann.doc_id + "' has no tokens");
  }
  if (ann.fired.size() != tokens.size()) {
    throw Error(ErrorCode::InvalidArgument, "annotation of '" + ann.doc_id +
                                                "' does not match its token sequence");
  }
}

// mean/min/max/population std of xs (non-empty).
inline FeatureStats aggregate(std::span<const double> xs) {
  FeatureStats s;
  double sum = 0.0;
  s.min = xs[0];
  s.max = xs[0];
  for (double x : xs) {
    sum += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  const auto n = static_cast<double>(xs.size());
  s.mean = sum / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / n);
  // Rounding in sum/n can nudge the mean just outside [min, max].
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

inline StyleProfile start_profile(const TagAnnotation& ann, std::span<const Token> tokens,
                                  CountingMode mode, const ChunkSpec& spec, std::size_t chunks) {
  StyleProfile p;
  p.doc_id = ann.doc_id;
  p.mode = mode;
  p.chunk_size = spec.size;
  p.chunk_count = chunks;
  p.token_count = tokens.size();
  return p;
}

inline void add_real_valued(StyleProfile& p, std::span<const Token> tokens,
                            const std::vector<ChunkBounds>& bounds) {
  std::vector<double> awl, ttr;
  for (const auto& b : bounds) {
    const auto rv = real_valued(tokens.subspan(b.begin, b.size()));
    awl.push_back(rv.awl);
    ttr.push_back(rv.ttr);
  }
  p[FeatureId::AWL] = aggregate(awl);
  p[FeatureId::TTR] = aggregate(ttr);
}

}  // namespace detail

// Per chunk, count fires per feature and scale to occurrences per
// `normalize_per` tokens; aggregate across chunks.
inline StyleProfile profile_regular(const TagAnnotation& ann, std::span<const Token> tokens,
                                    const ChunkSpec& spec = ChunkSpec::regular_default(),
                                    std::size_t normalize_per = 100) {
  detail::check_pair(ann, tokens);
  if (normalize_per == 0) throw Error(ErrorCode::InvalidArgument, "normalize_per must be >= 1");
  const auto bounds = chunk_bounds(tokens.size(), spec);
  auto p = detail::start_profile(ann, tokens, CountingMode::Regular, spec, bounds.size());

  std::vector<std::vector<double>> per_feature(kFeatureCount, std::vector<double>(bounds.size()));
  for (std::size_t c = 0; c < bounds.size(); ++c) {
    const auto counts = count_range(ann, bounds[c]);
    const double scale = static_cast<double>(normalize_per) / static_cast<double>(bounds[c].size());
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      per_feature[f][c] = static_cast<double>(counts[f]) * scale;
    }
  }
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (is_countable(kFeatures[f].id)) p.stats[f] = detail::aggregate(per_feature[f]);
  }
  detail::add_real_valued(p, tokens, bounds);
  return p;
}

// Fraction of chunks in which each feature fires at least once. AWL and TTR
// have no presence notion; they carry the mean of their per-chunk values.
inline StyleProfile profile_binary(const TagAnnotation& ann, std::span<const Token> tokens,
                                   const ChunkSpec& spec = ChunkSpec::binary_default()) {
  detail::check_pair(ann, tokens);
  const auto bounds = chunk_bounds(tokens.size(), spec);
  auto p = detail::start_profile(ann, tokens, CountingMode::Binary, spec, bounds.size());

  std::array<std::size_t, kFeatureCount> present{};
  for (const auto& b : bounds) {
    FeatureSet any;
    for (std::size_t i = b.begin; i < b.end; ++i) any |= ann.fired[i];
    for (std::size_t f = 0; f < kFeatureCount; ++f) present[f] += any[f];
  }
  const auto n = static_cast<double>(bounds.size());
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (is_countable(kFeatures[f].id)) p.stats[f] = {static_cast<double>(present[f]) / n, 0, 0, 0};
  }
  detail::add_real_valued(p, tokens, bounds);
  p[FeatureId::AWL] = {p[FeatureId::AWL].mean, 0, 0, 0};
  p[FeatureId::TTR] = {p[FeatureId::TTR].mean, 0, 0, 0};
  return p;
}

inline StyleProfile profile(const TagAnnotation& ann, std::span<const Token> tokens,
                            CountingMode mode, const ChunkSpec& spec, std::size_t normalize_per = 100) {
  return mode == CountingMode::Regular ? profile_regular(ann, tokens, spec, normalize_per)
                                       : profile_binary(ann, tokens, spec);
}

struct ChunkLabels {
  std::string doc_id;
  std::size_t chunk = 0;
  FeatureSet labels;  // AWL and TTR bits are always 0
};

inline std::vector<ChunkLabels> export_chunk_labels(const TagAnnotation& ann,
                                                    std::span<const Token> tokens,
                                                    const ChunkSpec& spec = ChunkSpec::binary_default()) {
  std::vector<ChunkLabels> out;
  if (tokens.empty()) return out;
  if (ann.fired.size() != tokens.size()) {
    throw Error(ErrorCode::InvalidArgument, "annotation does not match its token sequence");
  }
  const auto bounds = chunk_bounds(tokens.size(), spec);
  for (std::size_t c = 0; c < bounds.size(); ++c) {
    ChunkLabels l{ann.doc_id, c, {}};
    for (std::size_t i = bounds[c].begin; i < bounds[c].end; ++i) l.labels |= ann.fired[i];
    out.push_back(std::move(l));
  }
  return out;
}

inline std::vector<ChunkLabels> export_chunk_labels(const TagAnnotation& ann,
                                                    std::span<const Token> tokens, std::size_t size) {
  return export_chunk_labels(ann, tokens, ChunkSpec{size});
}

// A feature is present in a document if any of its spans has it.
inline FeatureSet merge_spans(std::span<const FeatureSet> spans) {
  FeatureSet out;
  for (const auto& s : spans) out |= s;
  return out;
}

// "0101..." with character k = bit of feature k in canonical order.
inline std::string to_bitstring(const FeatureSet& s) {
  std::string out(kFeatureCount, '0');
  for (std::size_t f = 0; f < kFeatureCount; ++f) out[f] = s[f] ? '1' : '0';
  return out;
}

inline FeatureSet from_bitstring(std::string_view s) {
  if (s.size() != kFeatureCount) {
    throw Error(ErrorCode::MalformedRecord, "label bitstring must have 96 characters");
  }
  FeatureSet out;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (s[f] == '1') {
      out.set(f);
    } else if (s[f] != '0') {
      throw Error(ErrorCode::MalformedRecord, "label bitstring may only contain 0 and 1");
    }
  }
  return out;
}

}  // namespace biberkit
