#pragma once

#include <cstddef>
#include <vector>

#include "psig/types.hpp"

namespace psig {

struct Edge {
  std::size_t i;
  std::size_t j;
  double weight = 1.0;
};

/// Weighted simple undirected graph. Construction validates: endpoints in
/// range, no self-loops, no repeated unordered pair, strictly positive weights.
/// Immutable afterwards.
class Graph {
 public:
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Weighted degree of every vertex.
  Vector degrees() const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

/// Real vertex function. `unit` means the Euclidean norm is 1.
struct VertexFunction {
  Vector values;
  bool unit = false;

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.size()); }
};

Matrix adjacency_matrix(const Graph& g);

/// I - D^{-1/2} A D^{-1/2}. Throws IsolatedVertex when some degree is zero.
Matrix normalized_laplacian(const Graph& g);

VertexFunction indicator(std::size_t x, std::size_t n);

/// (delta_x + delta_y)/sqrt(2) for x != y, delta_x for x == y.
VertexFunction pair_indicator(std::size_t x, std::size_t y, std::size_t n);

/// Cycle C_n with unit weights (n >= 3).
Graph cycle_graph(std::size_t n);
/// Path P_n with unit weights (n >= 2).
Graph path_graph(std::size_t n);

/// Relabels vertices so that vertex perm[v] of g becomes vertex v of the
/// result; then normalized_laplacian(permute(g, perm)) = P^T L(g) P with
/// P = permutation_matrix(perm).
Graph permute(const Graph& g, const std::vector<std::size_t>& perm);

/// Checks that perm is a bijection of 0..n-1; throws InvalidPermutation otherwise.
void validate_permutation(const std::vector<std::size_t>& perm, std::size_t n);

/// Dense permutation matrix P with (P^T M P)_{ij} = M_{perm(i) perm(j)}.
Matrix permutation_matrix(const std::vector<std::size_t>& perm);

}  // namespace psig
