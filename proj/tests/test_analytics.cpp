#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "test_support.hpp"

using namespace biberkit;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (double x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = g(rng) * static_cast<double>(c + 1) + static_cast<double>(c);
  return m;
}

// Closed-form eigenvalues of a symmetric 3x3 matrix from its characteristic
// polynomial (trigonometric solution of the depressed cubic), descending.
std::vector<double> cubic_eigenvalues(const Matrix& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) + (a(2, 2) - q) * (a(2, 2) - q) +
                    2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  Matrix b(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = (a(i, j) - (i == j ? q : 0.0)) / p;
  const double det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                     b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                     b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return {e1, 3.0 * q - e1 - e3, e3};
}

double frobenius(const Matrix& m) {
  double s = 0.0;
  for (double x : m.data()) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST(Standardize, TwoValueColumn) {
  const auto s = standardize(from_rows({{1.0}, {3.0}}));
  EXPECT_DOUBLE_EQ(s.values(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(s.values(1, 0), 1.0);
}

TEST(Standardize, ConstantColumnFlagged) {
  const auto s = standardize(from_rows({{5, 1}, {5, 2}, {5, 4}}));
  EXPECT_TRUE(s.constant[0]);
  EXPECT_FALSE(s.constant[1]);
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(s.values(r, 0), 0.0);
}

TEST(Standardize, RandomColumnsHaveZeroMeanUnitVariance) {
  const auto m = random_matrix(10, 4, 1);
  const auto s = standardize(m);
  for (std::size_t c = 0; c < 4; ++c) {
    double sum = 0, ss = 0;
    for (std::size_t r = 0; r < 10; ++r) sum += s.values(r, c);
    for (std::size_t r = 0; r < 10; ++r) ss += s.values(r, c) * s.values(r, c);
    EXPECT_NEAR(sum / 10.0, 0.0, 1e-12);
    EXPECT_NEAR(ss / 10.0, 1.0, 1e-12);
  }
}

TEST(Standardize, TooFewRows) {
  EXPECT_EQ(bktest::error_code([] { standardize(Matrix(1, 3)); }), ErrorCode::TooFewRows);
  EXPECT_EQ(bktest::error_code([] { pca(Matrix(1, 3), 1); }), ErrorCode::TooFewRows);
}

TEST(Eigen, TwoByTwo) {
  const auto e = symmetric_eigen(from_rows({{2, 1}, {1, 2}}));
  EXPECT_NEAR(e.values[0], 3.0, 1e-10);
  EXPECT_NEAR(e.values[1], 1.0, 1e-10);
}

TEST(Eigen, ThreeByThreeMatchesCharacteristicPolynomial) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) a(i, j) = a(j, i) = u(rng);
    const auto want = cubic_eigenvalues(a);
    const auto got = symmetric_eigen(a);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(got.values[k], want[k], 1e-10);
  }
}

TEST(Eigen, VectorsSatisfyDefinition) {
  const auto m = random_matrix(30, 8, 2);
  const auto cov = covariance(standardize(m).values);
  const auto e = symmetric_eigen(cov);
  for (std::size_t j = 0; j < 8; ++j) {
    for (std::size_t i = 0; i < 8; ++i) {
      double av = 0.0;
      for (std::size_t k = 0; k < 8; ++k) av += cov(i, k) * e.vectors(k, j);
      EXPECT_NEAR(av, e.values[j] * e.vectors(i, j), 1e-10);
    }
  }
}

TEST(Eigen, NonSquareRejected) {
  EXPECT_EQ(bktest::error_code([] { symmetric_eigen(Matrix(2, 3)); }), ErrorCode::DimensionMismatch);
}

TEST(Eigen, SweepLimitReportsConvergenceFailure) {
  const auto cov = covariance(standardize(random_matrix(20, 6, 3)).values);
  const auto code = bktest::error_code([&] { symmetric_eigen(cov, 0); });
  EXPECT_EQ(code, ErrorCode::ConvergenceFailure);
}

TEST(Covariance, SampleDenominator) {
  // Centred columns (-1, 1) and (-2, 2): variances 2 and 8, covariance 4.
  const auto c = covariance(from_rows({{-1, -2}, {1, 2}}));
  EXPECT_DOUBLE_EQ(c(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(c(1, 1), 8.0);
  EXPECT_DOUBLE_EQ(c(0, 1), 4.0);
}

TEST(Pca, PointsOnALine) {
  Matrix m(6, 2);
  for (std::size_t r = 0; r < 6; ++r) {
    m(r, 0) = static_cast<double>(r);
    m(r, 1) = 3.0 * static_cast<double>(r) - 1.0;
  }
  const auto res = pca(m, 1);
  EXPECT_NEAR(res.explained_ratio[0], 1.0, 1e-12);
}

TEST(Pca, ComponentsOrthonormal) {
  const auto res = pca(random_matrix(40, 7, 5), 7);
  for (std::size_t a = 0; a < 7; ++a) {
    for (std::size_t b = 0; b < 7; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < 7; ++i) dot += res.components(i, a) * res.components(i, b);
      EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(Pca, FullRankReconstruction) {
  const auto m = random_matrix(25, 6, 6);
  const auto res = pca(m, 6);
  const auto z = standardize(m).values;
  Matrix diff(25, 6);
  for (std::size_t r = 0; r < 25; ++r) {
    for (std::size_t c = 0; c < 6; ++c) {
      double x = 0.0;
      for (std::size_t j = 0; j < 6; ++j) x += res.scores(r, j) * res.components(c, j);
      diff(r, c) = x - z(r, c);
    }
  }
  EXPECT_LT(frobenius(diff) / frobenius(z), 1e-8);
}

TEST(Pca, SignConvention) {
  const auto res = pca(random_matrix(30, 5, 7), 3);
  for (std::size_t j = 0; j < 3; ++j) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < 5; ++i) {
      if (std::abs(res.components(i, j)) > std::abs(res.components(arg, j))) arg = i;
    }
    EXPECT_GT(res.components(arg, j), 0.0);
  }
}

TEST(Pca, ScoresAreProjections) {
  const auto m = random_matrix(12, 4, 8);
  const auto res = pca(m, 2);
  const auto z = standardize(m).values;
  for (std::size_t r = 0; r < 12; ++r) {
    for (std::size_t j = 0; j < 2; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < 4; ++c) s += z(r, c) * res.components(c, j);
      EXPECT_NEAR(res.scores(r, j), s, 1e-12);
    }
  }
}

TEST(Pca, RowPermutation) {
  const auto m = random_matrix(20, 5, 9);
  std::vector<std::size_t> perm(20);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(1));
  Matrix p(20, 5);
  for (std::size_t r = 0; r < 20; ++r)
    for (std::size_t c = 0; c < 5; ++c) p(r, c) = m(perm[r], c);
  const auto a = pca(m, 3), b = pca(p, 3);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(a.components(i, j), b.components(i, j), 1e-10);
  for (std::size_t r = 0; r < 20; ++r)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(b.scores(r, j), a.scores(perm[r], j), 1e-10);
}

TEST(Pca, ConstantColumnsIgnored) {
  auto m = random_matrix(15, 4, 10);
  for (std::size_t r = 0; r < 15; ++r) m(r, 2) = 7.0;
  const auto res = pca(m, 3);
  EXPECT_TRUE(res.constant_columns[2]);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(res.components(2, j), 0.0, 1e-12);
  double sum = 0.0;
  for (double x : res.explained_ratio) sum += x;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Pca, KOutOfRange) {
  const auto m = random_matrix(5, 3, 11);
  EXPECT_EQ(bktest::error_code([&] { pca(m, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(bktest::error_code([&] { pca(m, 4); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(bktest::error_code([&] { pca(random_matrix(3, 6, 1), 3); }), ErrorCode::InvalidArgument);
  EXPECT_NO_THROW(pca(m, 3));
}

TEST(TopLoadings, RankOneSyntheticData) {
  // Rows mix an involved signal (FPP1, CONT) against an informational one
  // (NN, PIN) plus small noise on every other feature.
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  Matrix m(200, kFeatureCount);
  const std::size_t hi[] = {feature_index(FeatureId::FPP1), feature_index(FeatureId::CONT)};
  const std::size_t lo[] = {feature_index(FeatureId::NN), feature_index(FeatureId::PIN)};
  for (std::size_t r = 0; r < 200; ++r) {
    const double t = g(rng);
    for (std::size_t c = 0; c < kFeatureCount; ++c) m(r, c) = 0.01 * g(rng);
    for (auto c : hi) m(r, c) += t;
    for (auto c : lo) m(r, c) -= t;
  }
  const auto res = pca(m, 2);
  const auto top = top_loadings(res, 0, 4);
  std::vector<std::size_t> cols;
  for (const auto& l : top) cols.push_back(l.column);
  std::sort(cols.begin(), cols.end());
  std::vector<std::size_t> want = {hi[0], hi[1], lo[0], lo[1]};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(cols, want);
  // Opposite groups carry opposite signs.
  EXPECT_LT(res.components(hi[0], 0) * res.components(lo[0], 0), 0.0);
}

TEST(TopLoadings, EdgeCases) {
  const auto res = pca(random_matrix(20, 5, 13), 2);
  EXPECT_TRUE(top_loadings(res, 0, 0).empty());
  const auto all = top_loadings(res, 1, 500);
  ASSERT_EQ(all.size(), 5u);
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_GE(std::abs(all[i - 1].weight), std::abs(all[i].weight));
  EXPECT_EQ(all[0].weight, res.components(all[0].column, 1));
  EXPECT_EQ(bktest::error_code([&] { top_loadings(res, 2, 1); }), ErrorCode::IndexOutOfRange);
}

TEST(Scatter, RecordsMatchScores) {
  const auto res = pca(random_matrix(3, 4, 14), 2);
  const std::vector<std::string> ids = {"a", "b", "c"}, labels = {"x", "y", "x"};
  const auto recs = export_scatter(res, 0, 1, ids, labels);
  ASSERT_EQ(recs.size(), 3u);
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(recs[r].doc_id, ids[r]);
    EXPECT_EQ(recs[r].label, labels[r]);
    EXPECT_EQ(recs[r].a, res.scores(r, 0));
    EXPECT_EQ(recs[r].b, res.scores(r, 1));
  }
  EXPECT_EQ(bktest::error_code([&] { export_scatter(res, 0, 2, ids); }), ErrorCode::IndexOutOfRange);
}

TEST(Varimax, IncreasesCriterionAndPreservesCommunalities) {
  const auto res = pca(random_matrix(60, 8, 15), 3);
  const auto rotated = varimax(res.components);
  EXPECT_GE(varimax_criterion(rotated), varimax_criterion(res.components) - 1e-12);
  for (std::size_t i = 0; i < 8; ++i) {
    double h0 = 0, h1 = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      h0 += res.components(i, j) * res.components(i, j);
      h1 += rotated(i, j) * rotated(i, j);
    }
    EXPECT_NEAR(h0, h1, 1e-10);
  }
}
