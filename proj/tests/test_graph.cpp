#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "psig/graph.hpp"
#include "psig/spectral.hpp"

using namespace psig;

TEST_CASE("adjacency of small graphs") {
  Matrix k2(2, 2);
  k2 << 0, 1, 1, 0;
  CHECK(adjacency_matrix(Graph(2, {{0, 1}})) == k2);
  CHECK(adjacency_matrix(Graph(3, {})) == Matrix::Zero(3, 3));

  Matrix tri(3, 3);
  tri << 0, 1, 3,
         1, 0, 2,
         3, 2, 0;
  CHECK(adjacency_matrix(Graph(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}})) == tri);
}

TEST_CASE("graph validation") {
  CHECK_CODE(Graph(2, {{0, 2}}), ErrorCode::IndexOutOfRange);
  CHECK_CODE(Graph(2, {{1, 1}}), ErrorCode::InvalidArgument);
  CHECK_CODE(Graph(3, {{0, 1}, {1, 0}}), ErrorCode::InvalidArgument);
  CHECK_CODE(Graph(2, {{0, 1, 0.0}}), ErrorCode::InvalidArgument);
  CHECK_CODE(Graph(2, {{0, 1, -1.0}}), ErrorCode::InvalidArgument);
  CHECK_CODE(Graph(2, {{0, 1, NAN}}), ErrorCode::InvalidArgument);
  CHECK_CODE(cycle_graph(2), ErrorCode::InvalidArgument);
  CHECK_CODE(path_graph(1), ErrorCode::InvalidArgument);
}

TEST_CASE("normalized laplacian examples") {
  Matrix k2(2, 2);
  k2 << 1, -1, -1, 1;
  CHECK(max_diff(normalized_laplacian(Graph(2, {{0, 1}})), k2) < 1e-15);

  const Matrix c4 = normalized_laplacian(cycle_graph(4));
  CHECK(max_diff(c4, Matrix::Identity(4, 4) - adjacency_matrix(cycle_graph(4)) / 2.0) < 1e-15);
  const auto e = oracle::jacobi(c4);
  CHECK(e.values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.values[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.values[3] == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_CODE(normalized_laplacian(Graph(3, {{0, 1}})), ErrorCode::IsolatedVertex);
}

TEST_CASE("weights enter through degrees") {
  // Star with weights 1 and 3: L_01 = -1/sqrt(1*4).
  const Matrix L = normalized_laplacian(Graph(3, {{0, 1, 1.0}, {0, 2, 3.0}}));
  CHECK(L(0, 1) == doctest::Approx(-1.0 / 2.0));
  CHECK(L(0, 2) == doctest::Approx(-3.0 / std::sqrt(12.0)));
  CHECK(L(1, 2) == 0.0);
  CHECK((L.diagonal().array() == 1.0).all());
}

TEST_CASE("indicators") {
  CHECK(indicator(0, 3).values == Vector::Unit(3, 0));
  CHECK(indicator(2, 3).values == Vector::Unit(3, 2));
  CHECK(indicator(2, 3).unit);
  CHECK_CODE(indicator(5, 3), ErrorCode::IndexOutOfRange);

  const auto f01 = pair_indicator(0, 1, 2);
  CHECK(f01.values[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(f01.values[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(pair_indicator(1, 1, 2).values == Vector::Unit(2, 1));
  CHECK_CODE(pair_indicator(0, 3, 3), ErrorCode::IndexOutOfRange);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, 9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = pick(rng);
    const auto y = pick(rng);
    const auto f = pair_indicator(x, y, 10);
    CHECK(f.values.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.unit);
    CHECK(f.values == pair_indicator(y, x, 10).values);
  }
}

TEST_CASE("laplacian is symmetric with spectrum in [0, 2]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = 2 + static_cast<std::size_t>(trial % 12);
    const Matrix L = normalized_laplacian(oracle::random_graph(rng, n));
    CHECK(max_diff(L, L.transpose()) == 0.0);
    const auto d = decompose(L);
    CHECK(d.eigenvalues().minCoeff() >= -1e-10);
    CHECK(d.eigenvalues().maxCoeff() <= 2.0 + 1e-10);
  }
}

TEST_CASE("relabeling conjugates the laplacian") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = 3 + static_cast<std::size_t>(trial % 10);
    const auto g = oracle::random_graph(rng, n);
    const auto perm = oracle::random_permutation(rng, n);
    const Matrix P = permutation_matrix(perm);
    const Matrix L = normalized_laplacian(g);
    const Matrix Lp = normalized_laplacian(permute(g, perm));
    CHECK(max_diff(Lp, P.transpose() * L * P) < 1e-15);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(Lp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) ==
              L(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j])));
  }
}

TEST_CASE("permutation validation") {
  CHECK_NOTHROW(validate_permutation({2, 0, 1}, 3));
  CHECK_CODE(validate_permutation({0, 0, 1}, 3), ErrorCode::InvalidPermutation);
  CHECK_CODE(validate_permutation({0, 1}, 3), ErrorCode::InvalidPermutation);
  CHECK_CODE(validate_permutation({0, 1, 3}, 3), ErrorCode::InvalidPermutation);
  CHECK_CODE(permute(cycle_graph(3), {0, 1}), ErrorCode::InvalidPermutation);
}

TEST_CASE("degrees and builders") {
  CHECK(cycle_graph(5).degrees() == Vector::Constant(5, 2.0));
  const Vector pd = path_graph(4).degrees();
  CHECK(pd[0] == 1.0);
  CHECK(pd[1] == 2.0);
  CHECK(pd[3] == 1.0);
  CHECK(path_graph(4).edges().size() == 3);
}
