#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "psig/analysis.hpp"
#include "psig/diffusion.hpp"
#include "psig/graph.hpp"
#include "psig/signatures.hpp"

using namespace psig;

namespace {

SpectralDecomposition laplacian_of(const Graph& g) { return decompose(normalized_laplacian(g)); }

// Partition of indices by label, noise points as singletons.
std::set<std::set<std::size_t>> partition(const std::vector<int>& labels) {
  std::map<int, std::set<std::size_t>> groups;
  std::set<std::set<std::size_t>> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == ClusterAssignment::kNoise) {
      out.insert({i});
    } else {
      groups[labels[i]].insert(i);
    }
  }
  for (auto& [_, g] : groups) out.insert(g);
  return out;
}

Matrix blobs(std::mt19937_64& rng, Eigen::Index per_blob, double separation) {
  std::normal_distribution<double> g(0.0, 0.05);
  Matrix X(2 * per_blob, 2);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double cx = i < per_blob ? 0.0 : separation;
    X(i, 0) = cx + g(rng);
    X(i, 1) = g(rng);
  }
  return X;
}

}  // namespace

TEST_CASE("quantile matrix") {
  const auto c4 = quantile_matrix(laplacian_of(cycle_graph(4)), 9);
  CHECK(c4.points() == 4);
  CHECK(c4.quantiles() == 9);
  for (Eigen::Index x = 1; x < 4; ++x) CHECK(max_diff(c4.rows.row(x), c4.rows.row(0)) < 1e-12);

  const auto d = laplacian_of(path_graph(5));
  const auto med = quantile_matrix(d, 1);
  for (std::size_t x = 0; x < 5; ++x) {
    CHECK(med.rows(static_cast<Eigen::Index>(x), 0) == quantile(vertex_spectrum(d, x).measure, 0.5));
  }
  CHECK_CODE(quantile_matrix(d, 0), ErrorCode::InvalidArgument);
}

TEST_CASE("scaled row distances approximate W2") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 6 + static_cast<std::size_t>(trial);
    const auto d = laplacian_of(oracle::random_graph(rng, n));
    const std::size_t m = 2000;
    const auto q = quantile_matrix(d, m);
    const auto spectra = vertex_spectra(d);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        const double approx = (q.rows.row(static_cast<Eigen::Index>(x)) - q.rows.row(static_cast<Eigen::Index>(y))).norm() /
                              std::sqrt(static_cast<double>(m));
        CHECK(approx == doctest::Approx(wasserstein(spectra[x].measure, spectra[y].measure, 2.0)).epsilon(0.05));
      }
  }
}

TEST_CASE("pca basics") {
  const Matrix same = Matrix::Constant(5, 3, 2.0);
  const auto flat = pca(same, 3);
  CHECK(flat.explained_variance.cwiseAbs().maxCoeff() < 1e-20);

  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  const Eigen::Index n = 200;
  const Eigen::Index m = 6;
  Vector u(n);
  Vector v(m);
  for (Eigen::Index i = 0; i < n; ++i) u[i] = g(rng);
  for (Eigen::Index j = 0; j < m; ++j) v[j] = g(rng);
  Matrix X = u * v.transpose();
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] += 1e-3 * g(rng);
  const auto r = pca(X, m);
  CHECK(r.explained_variance[0] / r.explained_variance.sum() > 0.999);
  for (Eigen::Index c = 1; c < m; ++c) CHECK(r.explained_variance[c] <= r.explained_variance[c - 1]);
  CHECK(max_diff(r.components * r.components.transpose(), Matrix::Identity(m, m)) < 1e-10);

  CHECK_CODE(pca(Matrix::Zero(1, 3), 1), ErrorCode::InvalidArgument);
  CHECK_CODE(pca(X, 0), ErrorCode::InvalidArgument);
}

TEST_CASE("pca reconstructs the data with all components") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (auto [n, m] : {std::pair{30, 4}, std::pair{8, 20}, std::pair{10, 10}}) {
    Matrix X(n, m);
    for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = g(rng);
    const auto r = pca(X, static_cast<std::size_t>(std::min(n, m)));
    const Matrix back = (r.scores * r.components).rowwise() + r.mean.transpose();
    CHECK(max_diff(back, X) <= 1e-8);
    // Sample variance of each score column.
    for (Eigen::Index c = 0; c < r.scores.cols(); ++c) {
      CHECK(r.scores.col(c).squaredNorm() / (n - 1) == doctest::Approx(r.explained_variance[c]).epsilon(1e-9));
    }
  }
}

TEST_CASE("pca scores follow a row permutation") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  Matrix X(40, 5);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = g(rng);
  const auto perm = oracle::random_permutation(rng, 40);
  const Matrix P = permutation_matrix(perm);
  const auto a = pca(X, 3);
  const auto b = pca(P.transpose() * X, 3);
  const Matrix back = P * b.scores;
  for (Eigen::Index c = 0; c < 3; ++c) {
    const double same = (back.col(c) - a.scores.col(c)).cwiseAbs().maxCoeff();
    const double flipped = (back.col(c) + a.scores.col(c)).cwiseAbs().maxCoeff();
    CHECK(std::min(same, flipped) < 1e-9);
  }
}

TEST_CASE("dbscan") {
  std::mt19937_64 rng(5);
  const Matrix X = blobs(rng, 50, 10.0);
  const auto r = dbscan(X, 0.5, 5);
  CHECK(r.clusters == 2);
  CHECK(std::count(r.labels.begin(), r.labels.end(), ClusterAssignment::kNoise) == 0);
  CHECK(r.labels[0] != r.labels[50]);
  for (Eigen::Index i = 0; i < 50; ++i) CHECK(r.labels[i] == r.labels[0]);

  const auto one = dbscan(Matrix::Ones(7, 2), 0.1, 3);
  CHECK(one.clusters == 1);
  CHECK(std::all_of(one.labels.begin(), one.labels.end(), [](int l) { return l == 0; }));

  const auto none = dbscan(X, 1e-9, 2);
  CHECK(none.clusters == 0);
  CHECK(std::all_of(none.labels.begin(), none.labels.end(), [](int l) { return l == ClusterAssignment::kNoise; }));

  CHECK_CODE(dbscan(X, 0.0, 2), ErrorCode::InvalidArgument);
  CHECK_CODE(dbscan(X, 1.0, 0), ErrorCode::InvalidArgument);
}

TEST_CASE("dbscan border points and noise") {
  // A dense run of points, one border point just in reach, one far outlier.
  Matrix X(7, 1);
  X << 0.0, 0.1, 0.2, 0.3, 0.4, 0.85, 5.0;
  const auto r = dbscan(X, 0.5, 3);
  CHECK(r.clusters == 1);
  CHECK(r.labels[5] == 0);
  CHECK(r.labels[6] == ClusterAssignment::kNoise);
}

TEST_CASE("dbscan is deterministic and order independent") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  Matrix X(120, 2);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double cx = static_cast<double>(i % 3) * 4.0;
    X(i, 0) = cx + g(rng);
    X(i, 1) = g(rng);
  }
  const auto a = dbscan(X, 0.6, 4);
  CHECK(a.labels == dbscan(X, 0.6, 4).labels);
  for (int trial = 0; trial < 10; ++trial) {
    const auto perm = oracle::random_permutation(rng, 120);
    const Matrix Y = permutation_matrix(perm).transpose() * X;
    const auto b = dbscan(Y, 0.6, 4);
    std::vector<int> back(120);
    for (std::size_t i = 0; i < 120; ++i) back[perm[i]] = b.labels[i];
    // Core and noise sets agree; border points may attach to either of two
    // touching clusters, so compare the clusters containing core points.
    CHECK(a.clusters == b.clusters);
    CHECK(std::count(a.labels.begin(), a.labels.end(), -1) == std::count(back.begin(), back.end(), -1));
    std::vector<bool> core(120);
    for (Eigen::Index i = 0; i < 120; ++i) {
      std::size_t count = 0;
      for (Eigen::Index j = 0; j < 120; ++j) count += (X.row(i) - X.row(j)).norm() <= 0.6;
      core[static_cast<std::size_t>(i)] = count >= 4;
    }
    std::vector<int> ca;
    std::vector<int> cb;
    for (std::size_t i = 0; i < 120; ++i) {
      ca.push_back(core[i] ? a.labels[i] : -1);
      cb.push_back(core[i] ? back[i] : -1);
    }
    CHECK(partition(ca) == partition(cb));
  }
}

TEST_CASE("default dbscan radius") {
  Matrix X(3, 2);
  X << 0, 0, 3, 4, 1, 1;
  CHECK(default_dbscan_eps(X) == doctest::Approx(0.25));
  CHECK(default_dbscan_eps(Matrix::Ones(4, 2)) > 0.0);
}

TEST_CASE("correlation") {
  Vector a(5);
  a << 1, 2, 3, 5, 8;
  CHECK(correlation(a, a) == doctest::Approx(1.0));
  CHECK(correlation(a, Vector(-a)) == doctest::Approx(-1.0));
  CHECK(correlation(a, Vector(3.0 * a + Vector::Ones(5))) == doctest::Approx(1.0));
  CHECK_CODE(correlation(a, Vector(Vector::Ones(5))), ErrorCode::ZeroVariance);
  CHECK_CODE(correlation(a, Vector(Vector::Ones(4))), ErrorCode::LengthMismatch);
  CHECK_CODE(correlation(Vector(Vector::Ones(1)), Vector(Vector::Ones(1))), ErrorCode::InvalidArgument);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  Vector x(1000);
  Vector y(1000);
  for (Eigen::Index i = 0; i < 1000; ++i) {
    x[i] = g(rng);
    y[i] = g(rng);
  }
  CHECK(std::abs(correlation(x, y)) < 0.1);
}

TEST_CASE("torus points at equal radius get nearby quantile vectors") {
  const auto pc = sample_torus(400, 1.0, 0.25, 3);
  const auto d = decompose(diffusion_operator(pc, {1.0, 0.5}));
  const auto q = quantile_matrix(d, 200);
  const Vector rho = cylindrical_radius(pc);
  double within = 0.0;
  double global = 0.0;
  std::size_t nw = 0;
  std::size_t ng = 0;
  for (Eigen::Index i = 0; i < 400; ++i)
    for (Eigen::Index j = i + 1; j < 400; ++j) {
      const double dist = (q.rows.row(i) - q.rows.row(j)).norm();
      global += dist;
      ++ng;
      if (std::abs(rho[i] - rho[j]) < 0.01) {
        within += dist;
        ++nw;
      }
    }
  REQUIRE(nw > 0);
  // Small-sample smoke version of the n = 1000 acceptance run.
  CHECK((within / nw) / (global / ng) < 0.3);
  CHECK(std::abs(correlation(Vector(pca(q.rows, 2).scores.col(0)), rho)) > 0.8);
}
