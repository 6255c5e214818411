#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "psig/spectral.hpp"
#include "psig/types.hpp"

namespace psig {

/// Row i holds the midpoint-grid quantile vector of the spectrum of delta_i.
struct QuantileMatrix {
  Matrix rows;

  std::size_t points() const noexcept { return static_cast<std::size_t>(rows.rows()); }
  std::size_t quantiles() const noexcept { return static_cast<std::size_t>(rows.cols()); }
};

QuantileMatrix quantile_matrix(const SpectralDecomposition& d, std::size_t m);

struct PcaResult {
  Matrix scores;              ///< n x k projections of the centered data
  Matrix components;          ///< k x m, orthonormal rows
  Vector explained_variance;  ///< k, nonincreasing (sample variance, divisor n - 1)
  Vector mean;                ///< m column means
};

/// Principal components of the rows of X. k is truncated to the number of
/// available components (at most min(n, m)). Uses the m x m covariance when
/// m <= n and the n x n Gram matrix otherwise. Component signs are fixed so
/// that the largest-magnitude loading is positive.
PcaResult pca(const Matrix& X, std::size_t k);

struct ClusterAssignment {
  std::vector<int> labels;  ///< -1 marks noise
  int clusters = 0;

  static constexpr int kNoise = -1;
};

/// Density-based clustering of the rows of X under the Euclidean metric. A
/// point is core when at least min_pts points (itself included) lie within eps.
/// Cluster ids follow the order in which their first core point is visited.
ClusterAssignment dbscan(const Matrix& X, double eps, std::size_t min_pts);

/// Default DBSCAN radius: 5% of the largest pairwise row distance.
double default_dbscan_eps(const Matrix& X);

/// Pearson correlation; ZeroVariance when either input is constant.
double correlation(std::span<const double> a, std::span<const double> b);
double correlation(const Vector& a, const Vector& b);

}  // namespace psig
