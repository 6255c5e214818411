#include "psig/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psig/error.hpp"
#include "psig/measures.hpp"
#include "psig/parallel.hpp"
#include "psig/signatures.hpp"

namespace psig {

QuantileMatrix quantile_matrix(const SpectralDecomposition& d, std::size_t m) {
  if (m == 0) fail(ErrorCode::InvalidArgument, "quantile count must be >= 1");
  const std::size_t n = d.dimension();
  QuantileMatrix out{Matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m))};
  parallel_for(n, [&](std::size_t x) {
    const auto q = sample_quantiles(vertex_spectrum(d, x).measure, m);
    out.rows.row(static_cast<Eigen::Index>(x)) = Eigen::Map<const Eigen::RowVectorXd>(q.values.data(), static_cast<Eigen::Index>(m));
  });
  return out;
}

namespace {

// Flips each row so that its largest-magnitude entry is positive.
void fix_signs(Matrix& components, Matrix& scores) {
  for (Eigen::Index c = 0; c < components.rows(); ++c) {
    Eigen::Index arg = 0;
    components.row(c).cwiseAbs().maxCoeff(&arg);
    if (components(c, arg) < 0.0) {
      components.row(c) *= -1.0;
      scores.col(c) *= -1.0;
    }
  }
}

}  // namespace

PcaResult pca(const Matrix& X, std::size_t k) {
  const Eigen::Index n = X.rows();
  const Eigen::Index m = X.cols();
  if (n < 2) fail(ErrorCode::InvalidArgument, "PCA needs at least 2 rows");
  if (m < 1) fail(ErrorCode::InvalidArgument, "PCA needs at least 1 column");
  if (k == 0) fail(ErrorCode::InvalidArgument, "component count must be >= 1");
  if (!X.allFinite()) fail(ErrorCode::InvalidArgument, "non-finite data");

  PcaResult out;
  out.mean = X.colwise().mean().transpose();
  const Matrix centered = X.rowwise() - out.mean.transpose();
  const double denom = static_cast<double>(n - 1);
  auto want = static_cast<Eigen::Index>(std::min<std::size_t>(k, static_cast<std::size_t>(std::min(n, m))));

  if (m <= n) {
    Matrix cov = (centered.transpose() * centered) / denom;
    cov = 0.5 * (cov + cov.transpose());
    const auto d = decompose(cov);
    // Ascending eigenvalues: take the trailing columns in reverse.
    out.components.resize(want, m);
    out.explained_variance.resize(want);
    for (Eigen::Index c = 0; c < want; ++c) {
      const Eigen::Index col = m - 1 - c;
      out.components.row(c) = d.eigenvectors().col(col).transpose();
      out.explained_variance[c] = std::max(0.0, d.eigenvalues()[col]);
    }
    out.scores = centered * out.components.transpose();
  } else {
    Matrix gram = (centered * centered.transpose()) / denom;
    gram = 0.5 * (gram + gram.transpose());
    const auto d = decompose(gram);
    const double top = std::max(d.eigenvalues()[n - 1], 0.0);
    Eigen::Index available = 0;
    while (available < want && d.eigenvalues()[n - 1 - available] > 1e-12 * std::max(top, 1e-300)) ++available;
    want = available;
    out.components.resize(want, m);
    out.explained_variance.resize(want);
    for (Eigen::Index c = 0; c < want; ++c) {
      const Eigen::Index col = n - 1 - c;
      const double lambda = d.eigenvalues()[col];
      const Vector v = centered.transpose() * d.eigenvectors().col(col) / std::sqrt(denom * lambda);
      out.components.row(c) = v.normalized().transpose();
      out.explained_variance[c] = lambda;
    }
    out.scores = centered * out.components.transpose();
  }
  fix_signs(out.components, out.scores);
  return out;
}

ClusterAssignment dbscan(const Matrix& X, double eps, std::size_t min_pts) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps must be > 0");
  if (min_pts < 1) fail(ErrorCode::InvalidArgument, "min_pts must be >= 1");
  constexpr int kUnvisited = -2;
  const auto n = static_cast<std::size_t>(X.rows());
  const double eps_sq = eps * eps;

  std::vector<std::vector<std::size_t>> neighbors(n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((X.row(static_cast<Eigen::Index>(i)) - X.row(static_cast<Eigen::Index>(j))).squaredNorm() <= eps_sq) {
        neighbors[i].push_back(j);
      }
    }
  });

  ClusterAssignment out;
  out.labels.assign(n, kUnvisited);
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.labels[i] != kUnvisited) continue;
    if (neighbors[i].size() < min_pts) {
      out.labels[i] = ClusterAssignment::kNoise;
      continue;
    }
    const int id = out.clusters++;
    out.labels[i] = id;
    frontier.assign(neighbors[i].begin(), neighbors[i].end());
    while (!frontier.empty()) {
      const std::size_t q = frontier.back();
      frontier.pop_back();
      if (out.labels[q] == ClusterAssignment::kNoise) out.labels[q] = id;  // border point
      if (out.labels[q] != kUnvisited) continue;
      out.labels[q] = id;
      if (neighbors[q].size() >= min_pts) {
        for (auto r : neighbors[q]) {
          if (out.labels[r] == kUnvisited || out.labels[r] == ClusterAssignment::kNoise) frontier.push_back(r);
        }
      }
    }
  }
  return out;
}

double default_dbscan_eps(const Matrix& X) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = i + 1; j < X.rows(); ++j) best = std::max(best, (X.row(i) - X.row(j)).squaredNorm());
  const double eps = 0.05 * std::sqrt(best);
  // Identical rows leave no spread; any positive radius groups them.
  return eps > 0.0 ? eps : 1e-12;
}

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail(ErrorCode::LengthMismatch, "correlation inputs differ in length");
  if (a.size() < 2) fail(ErrorCode::InvalidArgument, "correlation needs at least 2 samples");
  const double n = static_cast<double>(a.size());
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0) fail(ErrorCode::ZeroVariance, "constant input");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double correlation(const Vector& a, const Vector& b) {
  return correlation(std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
                     std::span<const double>(b.data(), static_cast<std::size_t>(b.size())));
}

}  // namespace psig
