#include "psig/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "psig/error.hpp"

namespace psig {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges_) {
    if (e.i >= n_ || e.j >= n_) {
      fail(ErrorCode::IndexOutOfRange, "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                           ") on " + std::to_string(n_) + " vertices");
    }
    if (e.i == e.j) fail(ErrorCode::InvalidArgument, "self-loop at vertex " + std::to_string(e.i));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      fail(ErrorCode::InvalidArgument, "edge weight must be finite and > 0");
    }
    if (!seen.emplace(std::min(e.i, e.j), std::max(e.i, e.j)).second) {
      fail(ErrorCode::InvalidArgument,
           "duplicate edge {" + std::to_string(e.i) + "," + std::to_string(e.j) + "}");
    }
  }
}

Vector Graph::degrees() const {
  Vector d = Vector::Zero(static_cast<Eigen::Index>(n_));
  for (const auto& e : edges_) {
    d[e.i] += e.weight;
    d[e.j] += e.weight;
  }
  return d;
}

Matrix adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Matrix a = Matrix::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(e.i, e.j) = e.weight;
    a(e.j, e.i) = e.weight;
  }
  return a;
}

Matrix normalized_laplacian(const Graph& g) {
  const Vector deg = g.degrees();
  for (Eigen::Index i = 0; i < deg.size(); ++i) {
    if (deg[i] <= 0.0) fail(ErrorCode::IsolatedVertex, "vertex " + std::to_string(i) + " has degree 0");
  }
  const Vector inv_sqrt = deg.cwiseSqrt().cwiseInverse();
  const auto n = static_cast<Eigen::Index>(g.size());
  Matrix l = Matrix::Identity(n, n);
  for (const auto& e : g.edges()) {
    const double v = e.weight * inv_sqrt[e.i] * inv_sqrt[e.j];
    l(e.i, e.j) = -v;
    l(e.j, e.i) = -v;
  }
  return l;
}

VertexFunction indicator(std::size_t x, std::size_t n) {
  if (x >= n) fail(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(x) + " >= " + std::to_string(n));
  VertexFunction f{Vector::Zero(static_cast<Eigen::Index>(n)), true};
  f.values[x] = 1.0;
  return f;
}

VertexFunction pair_indicator(std::size_t x, std::size_t y, std::size_t n) {
  if (x == y) return indicator(x, n);
  if (x >= n || y >= n) {
    fail(ErrorCode::IndexOutOfRange, "pair (" + std::to_string(x) + "," + std::to_string(y) + ") on " +
                                         std::to_string(n) + " vertices");
  }
  VertexFunction f{Vector::Zero(static_cast<Eigen::Index>(n)), true};
  f.values[x] = M_SQRT1_2;
  f.values[y] = M_SQRT1_2;
  return f;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) fail(ErrorCode::InvalidArgument, "cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Graph(n, std::move(edges));
}

Graph path_graph(std::size_t n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "path needs at least 2 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, std::move(edges));
}

void validate_permutation(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) {
    fail(ErrorCode::InvalidPermutation,
         "length " + std::to_string(perm.size()) + " != " + std::to_string(n));
  }
  std::vector<bool> hit(n, false);
  for (auto p : perm) {
    if (p >= n || hit[p]) fail(ErrorCode::InvalidPermutation, "not a bijection on 0..n-1");
    hit[p] = true;
  }
}

Graph permute(const Graph& g, const std::vector<std::size_t>& perm) {
  validate_permutation(perm, g.size());
  std::vector<std::size_t> inverse(perm.size());
  for (std::size_t v = 0; v < perm.size(); ++v) inverse[perm[v]] = v;
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const auto& e : g.edges()) edges.push_back({inverse[e.i], inverse[e.j], e.weight});
  return Graph(g.size(), std::move(edges));
}

Matrix permutation_matrix(const std::vector<std::size_t>& perm) {
  validate_permutation(perm, perm.size());
  const auto n = static_cast<Eigen::Index>(perm.size());
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(static_cast<Eigen::Index>(perm[i]), i) = 1.0;
  return p;
}

}  // namespace psig
