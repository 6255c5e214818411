#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "psig/graph.hpp"
#include "psig/spectral.hpp"

using namespace psig;

namespace {

Matrix diag(std::initializer_list<double> v) {
  Vector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d[i++] = x;
  return d.asDiagonal();
}

// Symmetric matrix with prescribed spectrum in a random basis.
Matrix with_spectrum(std::mt19937_64& rng, const Vector& values) {
  const Matrix Q = oracle::random_orthogonal(rng, values.size());
  Matrix H = Q * values.asDiagonal() * Q.transpose();
  return 0.5 * (H + H.transpose());
}

}  // namespace

TEST_CASE("decompose small matrices") {
  Matrix k2(2, 2);
  k2 << 1, -1, -1, 1;
  const auto d = decompose(k2);
  REQUIRE(d.group_count() == 2);
  CHECK(d.distinct_eigenvalues()[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(d.distinct_eigenvalues()[1] == doctest::Approx(2.0));
  CHECK(d.multiplicities() == std::vector<std::size_t>{1, 1});

  const auto id = decompose(Matrix::Identity(3, 3));
  REQUIRE(id.group_count() == 1);
  CHECK(id.distinct_eigenvalues()[0] == 1.0);
  CHECK(id.multiplicity(0) == 3);

  const auto c4 = decompose(normalized_laplacian(cycle_graph(4)));
  REQUIRE(c4.group_count() == 3);
  CHECK(c4.distinct_eigenvalues()[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c4.distinct_eigenvalues()[1] == doctest::Approx(1.0));
  CHECK(c4.distinct_eigenvalues()[2] == doctest::Approx(2.0));
  CHECK(c4.multiplicities() == std::vector<std::size_t>{1, 2, 1});
  CHECK(c4.group_offsets() == std::vector<std::size_t>{0, 1, 3});
  CHECK(c4.group_of(2) == 1);
}

TEST_CASE("decompose agrees with the jacobi oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = 1 + trial % 14;
    const Matrix H = oracle::random_symmetric(rng, n);
    const auto d = decompose(H);
    const auto e = oracle::jacobi(H);
    CHECK((d.eigenvalues() - e.values).cwiseAbs().maxCoeff() < 1e-10);
    const Matrix& Q = d.eigenvectors();
    CHECK(max_diff(Q * d.eigenvalues().asDiagonal() * Q.transpose(), H) < 1e-10);
    CHECK(max_diff(Q.transpose() * Q, Matrix::Identity(n, n)) < 1e-12);
  }
}

TEST_CASE("decompose input validation") {
  CHECK_CODE(decompose(Matrix(2, 3)), ErrorCode::DimensionMismatch);
  Matrix asym(2, 2);
  asym << 1, 2, 3, 4;
  CHECK_CODE(decompose(asym), ErrorCode::NotSymmetric);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = NAN;
  CHECK_CODE(decompose(bad), ErrorCode::SolverFailure);
  CHECK_CODE(decompose(Matrix(0, 0)), ErrorCode::InvalidArgument);
  CHECK_CODE(decompose(Matrix::Identity(2, 2), -1.0), ErrorCode::InvalidArgument);

  // Rounding-level asymmetry is accepted and symmetrized away.
  Matrix nearly(2, 2);
  nearly << 1, 0.5, 0.5 + 1e-14, 1;
  CHECK_NOTHROW(decompose(nearly));
}

TEST_CASE("grouping tolerance") {
  CHECK(default_group_tolerance(0.5) == 1e-8);
  CHECK(default_group_tolerance(100.0) == doctest::Approx(1e-6));
  const auto split = decompose(diag({1.0, 1.0 + 1e-9, 2.0}));
  CHECK(split.group_count() == 2);
  CHECK(split.multiplicity(0) == 2);
  const auto exact = decompose(diag({1.0, 1.0 + 1e-9, 2.0}), 0.0);
  CHECK(exact.group_count() == 3);
}

TEST_CASE("projections") {
  const auto k2 = decompose(normalized_laplacian(Graph(2, {{0, 1}})));
  const Vector phi = k2.eigenvectors().col(0);
  CHECK(max_diff(projection(k2, 0).P, phi * phi.transpose()) < 1e-15);
  CHECK(projection(k2, 1).lambda == doctest::Approx(2.0));

  const auto c4 = decompose(normalized_laplacian(cycle_graph(4)));
  const auto p1 = projection(c4, 1);
  CHECK(p1.lambda == doctest::Approx(1.0));
  CHECK(p1.P.trace() == doctest::Approx(2.0));
  CHECK(max_diff(p1.P * p1.P, p1.P) < 1e-12);
  CHECK_CODE(projection(c4, 3), ErrorCode::IndexOutOfRange);

  CHECK(max_diff(leading_projection(c4, 4), Matrix::Identity(4, 4)) < 1e-12);
  CHECK(max_diff(leading_projection(c4, 3), projection(c4, 0).P + p1.P) < 1e-12);
  CHECK_CODE(leading_projection(c4, 5), ErrorCode::IndexOutOfRange);
}

TEST_CASE("projections are complete and basis independent") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    const auto n = 3 + trial % 8;
    // Spectrum with a planted repeated eigenvalue.
    Vector values(n);
    for (Eigen::Index i = 0; i < n; ++i) values[i] = static_cast<double>(i);
    const auto rep = 2 + trial % (n - 1);
    for (Eigen::Index i = 0; i < rep; ++i) values[i] = -1.0;
    const Matrix H = with_spectrum(rng, values);
    const auto d = decompose(H);
    REQUIRE(d.multiplicity(0) == static_cast<std::size_t>(rep));

    Matrix sum = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < d.group_count(); ++k) sum += projection(d, k).P;
    CHECK(max_diff(sum, Matrix::Identity(n, n)) < 1e-8);

    // Mix the degenerate block by a random orthogonal matrix.
    Matrix Q = d.eigenvectors();
    Q.leftCols(rep) = Q.leftCols(rep) * oracle::random_orthogonal(rng, rep);
    const SpectralDecomposition mixed(d.eigenvalues(), Q, d.group_tolerance());
    for (std::size_t k = 0; k < d.group_count(); ++k) {
      CHECK(max_diff(projection(mixed, k).P, projection(d, k).P) < 1e-8);
    }
  }
}

TEST_CASE("orthogonal conjugation preserves the grouped spectrum") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    const auto n = 2 + trial % 10;
    Vector values(n);
    std::uniform_int_distribution<int> level(0, 3);
    for (Eigen::Index i = 0; i < n; ++i) values[i] = level(rng);
    const Matrix H = with_spectrum(rng, values);
    const Matrix Q = oracle::random_orthogonal(rng, n);
    const auto a = decompose(H);
    const auto b = decompose(Q.transpose() * H * Q);
    REQUIRE(a.group_count() == b.group_count());
    CHECK(a.multiplicities() == b.multiplicities());
    for (std::size_t k = 0; k < a.group_count(); ++k) {
      CHECK(std::abs(a.distinct_eigenvalues()[k] - b.distinct_eigenvalues()[k]) <= a.group_tolerance());
    }
  }
}

TEST_CASE("spectral gap and two-norm") {
  CHECK(spectral_gap(decompose(diag({0, 1, 2}))) == doctest::Approx(1.0));
  CHECK(spectral_gap(decompose(diag({0, 0.25, 2}))) == doctest::Approx(0.25));
  CHECK_CODE(spectral_gap(decompose(Matrix::Identity(3, 3))), ErrorCode::SingleEigenvalue);

  Matrix k2(2, 2);
  k2 << 1, -1, -1, 1;
  CHECK(operator_two_norm(k2) == doctest::Approx(2.0));
  CHECK(operator_two_norm(Matrix::Zero(3, 3)) == 0.0);
  CHECK(operator_two_norm(diag({-3, 2})) == doctest::Approx(3.0));
}
