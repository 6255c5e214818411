#include "psig/diffusion.hpp"

#include <cmath>
#include <random>
#include <string>

#include "psig/error.hpp"
#include "psig/parallel.hpp"

namespace psig {

PointCloud::PointCloud(Matrix points) : points_(std::move(points)) {
  if (points_.rows() < 2) fail(ErrorCode::InvalidArgument, "point cloud needs at least 2 points");
  if (points_.cols() < 1) fail(ErrorCode::InvalidArgument, "points need at least one coordinate");
  if (!points_.allFinite()) fail(ErrorCode::InvalidArgument, "non-finite coordinate");
}

namespace {

void check_params(const DiffusionParams& p) {
  if (!(p.epsilon > 0.0) || !std::isfinite(p.epsilon)) fail(ErrorCode::InvalidArgument, "epsilon must be > 0");
  if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) fail(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
}

struct Normalized {
  Matrix kernel;  // alpha-normalized kernel kt
  Vector nu;
};

Normalized normalized_kernel(const PointCloud& pc, const DiffusionParams& params) {
  check_params(params);
  Matrix k = gaussian_kernel_matrix(pc, params.epsilon);
  const Vector omega = k.rowwise().sum();
  Vector scale(omega.size());
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    scale[i] = std::pow(omega[i], -params.alpha);
    if (!(omega[i] > 0.0) || !std::isfinite(scale[i]) || scale[i] == 0.0) {
      fail(ErrorCode::DegenerateWeight, "kernel weight degenerate at point " + std::to_string(i));
    }
  }
  k = scale.asDiagonal() * k * scale.asDiagonal();
  Vector nu = k.rowwise().sum();
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    if (!(nu[i] > 0.0) || !std::isfinite(nu[i])) {
      fail(ErrorCode::DegenerateWeight, "normalized weight degenerate at point " + std::to_string(i));
    }
  }
  return {std::move(k), std::move(nu)};
}

}  // namespace

Matrix gaussian_kernel_matrix(const PointCloud& pc, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) fail(ErrorCode::InvalidArgument, "epsilon must be > 0");
  const auto n = static_cast<Eigen::Index>(pc.size());
  const double inv = 1.0 / (2.0 * epsilon * epsilon);
  Matrix k(n, n);
  parallel_for(pc.size(), [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    k(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      // Direct difference, not |x|^2 + |y|^2 - 2<x,y>, to avoid cancellation.
      const double sq = (pc.points().row(i) - pc.points().row(j)).squaredNorm();
      k(i, j) = std::exp(-sq * inv);
    }
  });
  k.triangularView<Eigen::StrictlyLower>() = k.transpose();
  return k;
}

Matrix diffusion_operator(const PointCloud& pc, const DiffusionParams& params) {
  auto [k, nu] = normalized_kernel(pc, params);
  const Vector inv_sqrt = nu.cwiseSqrt().cwiseInverse();
  Matrix s = inv_sqrt.asDiagonal() * k * inv_sqrt.asDiagonal();
  // Exact symmetry for the eigensolver.
  return 0.5 * (s + s.transpose());
}

Vector diffusion_stationary_weights(const PointCloud& pc, const DiffusionParams& params) {
  return normalized_kernel(pc, params).nu;
}

PointCloud sample_torus(std::size_t n, double R, double r, std::uint64_t seed) {
  if (!(r > 0.0 && r < R) || !std::isfinite(R)) {
    fail(ErrorCode::BadRadii, "need 0 < r < R, got R=" + std::to_string(R) + " r=" + std::to_string(r));
  }
  if (n < 2) fail(ErrorCode::InvalidArgument, "torus sample needs at least 2 points");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix pts(static_cast<Eigen::Index>(n), 3);
  const double ratio = r / R;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    const double u = 2.0 * M_PI * unit(rng);
    // Area element is proportional to 1 + (r/R) cos v.
    double v = 0.0;
    do {
      v = 2.0 * M_PI * unit(rng);
    } while (unit(rng) * (1.0 + ratio) > 1.0 + ratio * std::cos(v));
    const double rho = R + r * std::cos(v);
    pts(i, 0) = rho * std::cos(u);
    pts(i, 1) = rho * std::sin(u);
    pts(i, 2) = r * std::sin(v);
  }
  return PointCloud(std::move(pts));
}

Vector cylindrical_radius(const PointCloud& pc) {
  return pc.points().leftCols(std::min<Eigen::Index>(2, pc.points().cols())).rowwise().norm();
}

}  // namespace psig
