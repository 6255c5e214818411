#pragma once

#include <cstddef>
#include <cstdint>

#include "psig/types.hpp"

namespace psig {

/// n points in R^d stored one per row.
class PointCloud {
 public:
  explicit PointCloud(Matrix points);

  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(points_.cols()); }
  const Matrix& points() const noexcept { return points_; }
  auto point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)); }

 private:
  Matrix points_;
};

struct DiffusionParams {
  double epsilon = 1.0;  ///< kernel bandwidth
  double alpha = 0.5;    ///< density normalization exponent in [0, 1]
};

/// k(x, y) = exp(-|x - y|^2 / (2 epsilon^2)).
Matrix gaussian_kernel_matrix(const PointCloud& pc, double epsilon);

/// Symmetric diffusion operator S(x,y) = kt(x,y) / sqrt(nu(x) nu(y)) with
/// kt(x,y) = k(x,y) / (w(x)^alpha w(y)^alpha), w(x) = sum_y k(x,y) and
/// nu(x) = sum_y kt(x,y). Positive semi-definite with spectrum in [0, 1] and
/// sqrt(nu) as an eigenvector of eigenvalue 1.
Matrix diffusion_operator(const PointCloud& pc, const DiffusionParams& params);

/// The vector nu(x) of the operator above (exposed for checking stationarity).
Vector diffusion_stationary_weights(const PointCloud& pc, const DiffusionParams& params);

/// n points uniform in surface area on the torus with major radius R and
/// minor radius r about the z-axis. Deterministic for a given seed.
PointCloud sample_torus(std::size_t n, double R, double r, std::uint64_t seed);

/// Distance from the z-axis of every point.
Vector cylindrical_radius(const PointCloud& pc);

}  // namespace psig
