#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "biberkit/core.hpp"

namespace biberkit {

struct Standardized {
  Matrix values;
  std::vector<double> means;
  std::vector<double> stds;   // population std; 0 for constant columns
  std::vector<bool> constant; // column had zero variance and was set to 0
};

inline Standardized standardize(const Matrix& m) {
  if (m.rows() < 2) {
    throw Error(ErrorCode::TooFewRows, "standardize needs at least 2 rows, got " + std::to_string(m.rows()));
  }
  const std::size_t r = m.rows(), c = m.cols();
  Standardized s{Matrix(r, c), std::vector<double>(c), std::vector<double>(c), std::vector<bool>(c)};
  for (std::size_t j = 0; j < c; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < r; ++i) sum += m(i, j);
    const double mean = sum / static_cast<double>(r);
    double ss = 0.0;
    for (std::size_t i = 0; i < r; ++i) ss += (m(i, j) - mean) * (m(i, j) - mean);
    const double sd = std::sqrt(ss / static_cast<double>(r));
    s.means[j] = mean;
    // Relative test so that columns equal up to rounding count as constant.
    if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) {
      s.constant[j] = true;
      continue;
    }
    s.stds[j] = sd;
    for (std::size_t i = 0; i < r; ++i) s.values(i, j) = (m(i, j) - mean) / sd;
  }
  return s;
}

struct EigenResult {
  std::vector<double> values;  // descending
  Matrix vectors;              // column j pairs with values[j]
  int sweeps = 0;
};

// Cyclic Jacobi rotations on a symmetric matrix.
inline EigenResult symmetric_eigen(const Matrix& sym, int max_sweeps = 100) {
  const std::size_t n = sym.rows();
  if (sym.cols() != n) throw Error(ErrorCode::DimensionMismatch, "eigen-solver needs a square matrix");
  Matrix a = sym;
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  double total = 0.0;
  for (double x : a.data()) total += x * x;
  const double tol = 1e-30 * std::max(total, 1e-300);

  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off <= tol) break;
    if (sweep >= max_sweeps) {
      throw Error(ErrorCode::ConvergenceFailure,
                  "Jacobi eigen-solver did not converge after " + std::to_string(sweep) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = cs * akp - sn * akq;
          a(k, q) = sn * akp + cs * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = cs * apk - sn * aqk;
          a(q, k) = sn * apk + cs * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = cs * vkp - sn * vkq;
          v(k, q) = sn * vkp + cs * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  EigenResult out{std::vector<double>(n), Matrix(n, n), sweep};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

// Sample covariance (n - 1) of already centred columns.
inline Matrix covariance(const Matrix& centred) {
  const std::size_t r = centred.rows(), c = centred.cols();
  Matrix cov(c, c);
  for (std::size_t i = 0; i < r; ++i) {
    const auto row = centred.row(i);
    for (std::size_t p = 0; p < c; ++p) {
      if (row[p] == 0.0) continue;
      for (std::size_t q = p; q < c; ++q) cov(p, q) += row[p] * row[q];
    }
  }
  const double denom = static_cast<double>(r - 1);
  for (std::size_t p = 0; p < c; ++p) {
    for (std::size_t q = p; q < c; ++q) {
      cov(p, q) /= denom;
      cov(q, p) = cov(p, q);
    }
  }
  return cov;
}

struct PcaResult {
  Matrix components;                 // cols x k loadings
  std::vector<double> explained_variance;
  std::vector<double> explained_ratio;
  Matrix scores;                     // rows x k
  std::vector<double> column_means;
  std::vector<double> column_stds;
  std::vector<bool> constant_columns;
  int sweeps = 0;

  std::size_t k() const { return explained_variance.size(); }
};

// Largest-|weight| entry of each loading column is made positive (ties go to
// the lowest index).
inline void fix_signs(Matrix& loadings, Matrix* scores = nullptr) {
  for (std::size_t j = 0; j < loadings.cols(); ++j) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < loadings.rows(); ++i) {
      if (std::abs(loadings(i, j)) > std::abs(loadings(arg, j))) arg = i;
    }
    if (loadings(arg, j) >= 0) continue;
    for (std::size_t i = 0; i < loadings.rows(); ++i) loadings(i, j) = -loadings(i, j);
    if (scores) {
      for (std::size_t i = 0; i < scores->rows(); ++i) (*scores)(i, j) = -(*scores)(i, j);
    }
  }
}

// Standardizes the input, then takes the top-k eigenpairs of the sample
// covariance. 1 <= k <= min(rows - 1, cols).
inline PcaResult pca(const Matrix& m, std::size_t k) {
  auto z = standardize(m);
  const std::size_t limit = std::min(m.rows() - 1, m.cols());
  if (k < 1 || k > limit) {
    throw Error(ErrorCode::InvalidArgument, "k must be in [1, " + std::to_string(limit) + "], got " +
                                                std::to_string(k));
  }
  const auto eig = symmetric_eigen(covariance(z.values));

  PcaResult res;
  res.sweeps = eig.sweeps;
  res.column_means = std::move(z.means);
  res.column_stds = std::move(z.stds);
  res.constant_columns = std::move(z.constant);
  double trace = 0.0;
  for (double x : eig.values) trace += std::max(x, 0.0);
  res.components = Matrix(m.cols(), k);
  for (std::size_t j = 0; j < k; ++j) {
    const double lambda = std::max(eig.values[j], 0.0);
    res.explained_variance.push_back(lambda);
    res.explained_ratio.push_back(trace > 0 ? lambda / trace : 0.0);
    for (std::size_t i = 0; i < m.cols(); ++i) res.components(i, j) = eig.vectors(i, j);
  }
  fix_signs(res.components);
  res.scores = Matrix(m.rows(), k);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = z.values.row(r);
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < m.cols(); ++i) s += row[i] * res.components(i, j);
      res.scores(r, j) = s;
    }
  }
  return res;
}

struct Loading {
  std::size_t column = 0;
  double weight = 0.0;
};

// The n loadings of `component` with the largest |weight|, sign preserved.
inline std::vector<Loading> top_loadings(const PcaResult& res, std::size_t component, std::size_t n) {
  if (component >= res.k()) {
    throw Error(ErrorCode::IndexOutOfRange, "component " + std::to_string(component) +
                                                " out of range (k = " + std::to_string(res.k()) + ")");
  }
  std::vector<Loading> all;
  for (std::size_t i = 0; i < res.components.rows(); ++i) all.push_back({i, res.components(i, component)});
  std::stable_sort(all.begin(), all.end(),
                   [](const Loading& a, const Loading& b) { return std::abs(a.weight) > std::abs(b.weight); });
  all.resize(std::min(n, all.size()));
  return all;
}

struct ScatterRecord {
  std::string doc_id;
  std::string label;
  double a = 0.0;
  double b = 0.0;
};

inline std::vector<ScatterRecord> export_scatter(const PcaResult& res, std::size_t a, std::size_t b,
                                                 std::span<const std::string> doc_ids,
                                                 std::span<const std::string> labels = {}) {
  if (a >= res.k() || b >= res.k()) {
    throw Error(ErrorCode::IndexOutOfRange, "scatter components must be < k");
  }
  if (doc_ids.size() != res.scores.rows() || (!labels.empty() && labels.size() != doc_ids.size())) {
    throw Error(ErrorCode::DimensionMismatch, "scatter ids/labels do not match score rows");
  }
  std::vector<ScatterRecord> out;
  for (std::size_t r = 0; r < doc_ids.size(); ++r) {
    out.push_back({doc_ids[r], labels.empty() ? std::string() : labels[r], res.scores(r, a), res.scores(r, b)});
  }
  return out;
}

// Kaiser varimax by pairwise planar rotations. Returns the rotated loadings
// (same shape), signs fixed as in pca().
inline Matrix varimax(const Matrix& loadings, int max_iter = 100, double tol = 1e-10) {
  Matrix l = loadings;
  const std::size_t p = l.rows(), k = l.cols();
  for (int it = 0; it < max_iter; ++it) {
    double max_angle = 0.0;
    for (std::size_t a = 0; a + 1 < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        double su = 0, sv = 0, suv = 0, suu = 0;
        for (std::size_t i = 0; i < p; ++i) {
          const double x = l(i, a), y = l(i, b);
          const double u = x * x - y * y, v = 2 * x * y;
          su += u;
          sv += v;
          suu += u * u - v * v;
          suv += 2 * u * v;
        }
        const double num = suv - 2 * su * sv / static_cast<double>(p);
        const double den = suu - (su * su - sv * sv) / static_cast<double>(p);
        const double phi = 0.25 * std::atan2(num, den);
        max_angle = std::max(max_angle, std::abs(phi));
        const double c = std::cos(phi), s = std::sin(phi);
        for (std::size_t i = 0; i < p; ++i) {
          const double x = l(i, a), y = l(i, b);
          l(i, a) = c * x + s * y;
          l(i, b) = -s * x + c * y;
        }
      }
    }
    if (max_angle < tol) break;
  }
  fix_signs(l);
  return l;
}

// Sum over columns of the variance of squared loadings; varimax maximizes it.
inline double varimax_criterion(const Matrix& l) {
  double total = 0.0;
  for (std::size_t j = 0; j < l.cols(); ++j) {
    double s2 = 0, s4 = 0;
    for (std::size_t i = 0; i < l.rows(); ++i) {
      const double sq = l(i, j) * l(i, j);
      s2 += sq;
      s4 += sq * sq;
    }
    const double n = static_cast<double>(l.rows());
    total += s4 / n - (s2 / n) * (s2 / n);
  }
  return total;
}

}  // namespace biberkit
