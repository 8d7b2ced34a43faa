#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "biberkit/core.hpp"

namespace biberkit {

inline constexpr std::size_t kPairWidth = 2 * kFeatureCount;

using PairVector = std::array<double, kPairWidth>;

struct PairExample {
  std::array<double, kFeatureCount> vec_a{};
  std::array<double, kFeatureCount> vec_b{};
  bool label = false;  // same author

  PairVector concat() const {
    PairVector v{};
    std::copy(vec_a.begin(), vec_a.end(), v.begin());
    std::copy(vec_b.begin(), vec_b.end(), v.begin() + kFeatureCount);
    return v;
  }
};

inline PairVector featurize_pair(std::span<const double> a, std::span<const double> b) {
  if (a.size() != kFeatureCount || b.size() != kFeatureCount) {
    throw Error(ErrorCode::IncompleteProfile, "pair vectors must have 96 features each, got " +
                                                  std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  PairVector v{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw Error(ErrorCode::IncompleteProfile, "non-finite value for feature " + std::string(kFeatures[i].code));
    }
    v[i] = a[i];
    v[kFeatureCount + i] = b[i];
  }
  return v;
}

inline PairVector featurize_pair(const StyleProfile& a, const StyleProfile& b) {
  const auto va = a.vector(), vb = b.vector();
  return featurize_pair(std::span<const double>(va), std::span<const double>(vb));
}

inline PairExample make_example(const StyleProfile& a, const StyleProfile& b, bool same) {
  const auto v = featurize_pair(a, b);
  PairExample e;
  std::copy(v.begin(), v.begin() + kFeatureCount, e.vec_a.begin());
  std::copy(v.begin() + kFeatureCount, v.end(), e.vec_b.begin());
  e.label = same;
  return e;
}

struct ForestParams {
  std::size_t n_trees = 100;
  std::size_t max_depth = 16;
  std::size_t min_leaf = 2;
  std::size_t max_features = 0;  // 0 means floor(sqrt(n_features))
  bool bootstrap = true;
  std::uint64_t seed = 42;
  std::size_t threads = 1;

  friend bool operator==(const ForestParams&, const ForestParams&) = default;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;     // x[feature] <= threshold
  int right = -1;
  double value = 0.0;  // leaf: fraction of positive samples

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(std::span<const double> x) const {
    int i = 0;
    while (nodes[i].feature >= 0) {
      i = x[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left : nodes[i].right;
    }
    return nodes[i].value;
  }

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct ForestModel {
  static constexpr int kFormatVersion = 1;

  std::size_t n_features = kPairWidth;
  ForestParams params;
  std::vector<DecisionTree> trees;

  friend bool operator==(const ForestModel&, const ForestModel&) = default;
};

namespace detail {

// Unbiased integer in [0, bound) from a 64-bit generator (Lemire).
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  std::uint64_t x = rng();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t t = (0 - bound) % bound;
    while (low < t) {
      x = rng();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

inline std::uint64_t tree_seed(std::uint64_t seed, std::size_t tree) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(tree) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
              const ForestParams& p, std::size_t n_features, std::uint64_t seed)
      : x_(x), y_(y), p_(p), d_(n_features), rng_(seed) {
    mtry_ = p.max_features == 0 ? std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(d_))))
                                : std::min(p.max_features, d_);
    features_.resize(d_);
    std::iota(features_.begin(), features_.end(), 0);
  }

  DecisionTree build() {
    std::vector<std::size_t> sample;
    const std::size_t n = x_.size();
    if (p_.bootstrap) {
      for (std::size_t i = 0; i < n; ++i) sample.push_back(bounded(rng_, n));
    } else {
      sample.resize(n);
      std::iota(sample.begin(), sample.end(), 0);
    }
    grow(sample, 0);
    return std::move(tree_);
  }

 private:
  int grow(std::vector<std::size_t>& idx, std::size_t depth) {
    const int me = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});
    std::size_t pos = 0;
    for (auto i : idx) pos += y_[i];
    const double n = static_cast<double>(idx.size());
    tree_.nodes[me].value = pos / n;

    if (depth >= p_.max_depth || pos == 0 || pos == idx.size() || idx.size() < 2 * p_.min_leaf) return me;

    // Partial Fisher-Yates draw of mtry candidate features.
    for (std::size_t k = 0; k < mtry_; ++k) {
      const std::size_t j = k + bounded(rng_, d_ - k);
      std::swap(features_[k], features_[j]);
    }
    const double parent = gini(pos, idx.size());
    double best_gain = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::size_t> order = idx;
    for (std::size_t k = 0; k < mtry_; ++k) {
      const std::size_t f = features_[k];
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x_[a][f] < x_[b][f]; });
      std::size_t left_pos = 0;
      for (std::size_t s = 0; s + 1 < order.size(); ++s) {
        left_pos += y_[order[s]];
        const double lo = x_[order[s]][f], hi = x_[order[s + 1]][f];
        if (lo == hi) continue;
        const std::size_t nl = s + 1, nr = order.size() - nl;
        if (nl < p_.min_leaf || nr < p_.min_leaf) continue;
        const double child = (nl * gini(left_pos, nl) + nr * gini(pos - left_pos, nr)) / n;
        const double gain = parent - child;
        if (gain > best_gain + 1e-15) {
          best_gain = gain;
          best_feature = static_cast<int>(f);
          best_threshold = lo + (hi - lo) / 2.0;
          if (best_threshold >= hi) best_threshold = lo;
        }
      }
    }
    if (best_feature < 0) return me;

    std::vector<std::size_t> left, right;
    for (auto i : idx) (x_[i][best_feature] <= best_threshold ? left : right).push_back(i);
    idx.clear();
    idx.shrink_to_fit();
    tree_.nodes[me].feature = best_feature;
    tree_.nodes[me].threshold = best_threshold;
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    tree_.nodes[me].left = l;
    tree_.nodes[me].right = r;
    return me;
  }

  static double gini(std::size_t pos, std::size_t n) {
    const double p = static_cast<double>(pos) / static_cast<double>(n);
    return 2.0 * p * (1.0 - p);
  }

  const std::vector<std::vector<double>>& x_;
  const std::vector<int>& y_;
  const ForestParams& p_;
  std::size_t d_;
  std::size_t mtry_ = 1;
  std::mt19937_64 rng_;
  std::vector<std::size_t> features_;
  DecisionTree tree_;
};

}  // namespace detail

// Generic training entry: rows of equal width.
inline ForestModel train_rows(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                              const ForestParams& params) {
  if (x.empty()) throw Error(ErrorCode::EmptyTraining, "no training examples");
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "feature and label counts differ");
  const std::size_t d = x[0].size();
  for (const auto& row : x) {
    if (row.size() != d) throw Error(ErrorCode::DimensionMismatch, "training rows differ in width");
  }
  const auto pos = std::count(y.begin(), y.end(), 1);
  if (pos == 0 || pos == static_cast<std::ptrdiff_t>(y.size())) {
    throw Error(ErrorCode::SingleClass, "training data contains a single class");
  }
  if (params.n_trees == 0 || params.min_leaf == 0) {
    throw Error(ErrorCode::InvalidArgument, "n_trees and min_leaf must be >= 1");
  }
  ForestModel m;
  m.n_features = d;
  m.params = params;
  m.trees.resize(params.n_trees);
  auto build = [&](std::size_t t) {
    detail::TreeBuilder b(x, y, params, d, detail::tree_seed(params.seed, t));
    m.trees[t] = b.build();
  };
  const std::size_t workers = std::clamp<std::size_t>(params.threads, 1, params.n_trees);
  if (workers == 1) {
    for (std::size_t t = 0; t < params.n_trees; ++t) build(t);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < params.n_trees; t += workers) build(t);
      });
    }
  }
  return m;
}

inline ForestModel train(std::span<const PairExample> examples, const ForestParams& params = {}) {
  if (examples.empty()) throw Error(ErrorCode::EmptyTraining, "no training pairs");
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  for (const auto& e : examples) {
    const auto v = e.concat();
    x.emplace_back(v.begin(), v.end());
    y.push_back(e.label ? 1 : 0);
  }
  return train_rows(x, y, params);
}

inline double predict(const ForestModel& m, std::span<const double> x) {
  if (x.size() != m.n_features) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(m.n_features) +
                                                  " features, got " + std::to_string(x.size()));
  }
  if (m.trees.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : m.trees) sum += t.predict(x);
  return sum / static_cast<double>(m.trees.size());
}

inline double predict(const ForestModel& m, const PairExample& e) {
  const auto v = e.concat();
  return predict(m, std::span<const double>(v));
}

struct Metrics {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double accuracy = 0.0;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

inline Metrics metrics_from(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.empty()) throw Error(ErrorCode::EmptyTest, "no test examples");
  if (truth.size() != predicted.size()) throw Error(ErrorCode::DimensionMismatch, "truth/prediction size differ");
  Metrics m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] && truth[i]) ++m.tp;
    else if (predicted[i]) ++m.fp;
    else if (truth[i]) ++m.fn;
    else ++m.tn;
  }
  const auto d = [](std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); };
  m.precision = d(m.tp, m.tp + m.fp);
  m.recall = d(m.tp, m.tp + m.fn);
  m.f1 = (m.precision + m.recall) > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  m.accuracy = d(m.tp + m.tn, truth.size());
  return m;
}

inline Metrics evaluate(const ForestModel& model, std::span<const PairExample> test, double threshold = 0.5) {
  if (test.empty()) throw Error(ErrorCode::EmptyTest, "no test pairs");
  std::vector<int> truth, pred;
  for (const auto& e : test) {
    truth.push_back(e.label ? 1 : 0);
    pred.push_back(predict(model, e) >= threshold ? 1 : 0);
  }
  return metrics_from(truth, pred);
}

// ---------------------------------------------------------------------------
// Persistence: JSON, {"format": "biberkit-forest", "version": 1, ...}
// ---------------------------------------------------------------------------

inline nlohmann::json model_to_json(const ForestModel& m) {
  nlohmann::json j;
  j["format"] = "biberkit-forest";
  j["version"] = ForestModel::kFormatVersion;
  j["n_features"] = m.n_features;
  j["params"] = {{"n_trees", m.params.n_trees},         {"max_depth", m.params.max_depth},
                 {"min_leaf", m.params.min_leaf},       {"max_features", m.params.max_features},
                 {"bootstrap", m.params.bootstrap},     {"seed", m.params.seed}};
  auto& trees = j["trees"] = nlohmann::json::array();
  for (const auto& t : m.trees) {
    nlohmann::json f = nlohmann::json::array(), th = nlohmann::json::array(), l = nlohmann::json::array(),
                   r = nlohmann::json::array(), v = nlohmann::json::array();
    for (const auto& n : t.nodes) {
      f.push_back(n.feature);
      th.push_back(n.threshold);
      l.push_back(n.left);
      r.push_back(n.right);
      v.push_back(n.value);
    }
    trees.push_back({{"feature", f}, {"threshold", th}, {"left", l}, {"right", r}, {"value", v}});
  }
  return j;
}

inline ForestModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "biberkit-forest") throw Error(ErrorCode::MalformedRecord, "not a biberkit forest model");
    if (j.at("version").get<int>() != ForestModel::kFormatVersion) {
      throw Error(ErrorCode::MalformedRecord, "unsupported model version " + j.at("version").dump());
    }
    ForestModel m;
    m.n_features = j.at("n_features").get<std::size_t>();
    const auto& p = j.at("params");
    m.params.n_trees = p.at("n_trees").get<std::size_t>();
    m.params.max_depth = p.at("max_depth").get<std::size_t>();
    m.params.min_leaf = p.at("min_leaf").get<std::size_t>();
    m.params.max_features = p.at("max_features").get<std::size_t>();
    m.params.bootstrap = p.at("bootstrap").get<bool>();
    m.params.seed = p.at("seed").get<std::uint64_t>();
    for (const auto& t : j.at("trees")) {
      DecisionTree tree;
      const auto& f = t.at("feature");
      const std::size_t n = f.size();
      for (const char* key : {"threshold", "left", "right", "value"}) {
        if (t.at(key).size() != n) throw Error(ErrorCode::MalformedRecord, "tree arrays differ in length");
      }
      for (std::size_t i = 0; i < n; ++i) {
        TreeNode node{f[i].get<int>(), t["threshold"][i].get<double>(), t["left"][i].get<int>(),
                      t["right"][i].get<int>(), t["value"][i].get<double>()};
        const bool leaf = node.feature < 0;
        const auto in_range = [&](int c) { return c > static_cast<int>(i) && c < static_cast<int>(n); };
        if (!leaf && (node.feature >= static_cast<int>(m.n_features) || !in_range(node.left) || !in_range(node.right))) {
          throw Error(ErrorCode::MalformedRecord, "tree node " + std::to_string(i) + " is invalid");
        }
        tree.nodes.push_back(node);
      }
      if (tree.nodes.empty()) throw Error(ErrorCode::MalformedRecord, "empty tree");
      m.trees.push_back(std::move(tree));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, std::string("model file: ") + e.what());
  }
}

inline void save_model(const ForestModel& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << model_to_json(m).dump() << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path.string());
}

inline ForestModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "model not found: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace biberkit
