#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "psig/types.hpp"

namespace psig {

/// Eigendecomposition of a real symmetric matrix with numerically equal
/// eigenvalues collected into groups (distinct eigenvalues). Eigenvalues are
/// ascending; the columns of eigenvectors() belonging to group k are
/// [group_offset(k), group_offset(k) + multiplicity(k)).
class SpectralDecomposition {
 public:
  SpectralDecomposition(Vector eigenvalues, Matrix eigenvectors, double group_tol);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(values_.size()); }
  std::size_t group_count() const noexcept { return distinct_.size(); }
  double group_tolerance() const noexcept { return group_tol_; }

  /// All n eigenvalues, ascending, unmerged.
  const Vector& eigenvalues() const noexcept { return values_; }
  const Matrix& eigenvectors() const noexcept { return vectors_; }

  /// Group representatives (mean of the group's eigenvalues), strictly increasing.
  const std::vector<double>& distinct_eigenvalues() const noexcept { return distinct_; }
  const std::vector<std::size_t>& multiplicities() const noexcept { return multiplicity_; }
  const std::vector<std::size_t>& group_offsets() const noexcept { return offset_; }

  std::size_t group_offset(std::size_t k) const { return offset_.at(k); }
  std::size_t multiplicity(std::size_t k) const { return multiplicity_.at(k); }

  /// Eigenvalue group of eigenvector column i.
  std::size_t group_of(std::size_t column) const;

 private:
  Vector values_;
  Matrix vectors_;
  double group_tol_;
  std::vector<double> distinct_;
  std::vector<std::size_t> multiplicity_;
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> column_group_;
};

struct EigenspaceProjection {
  double lambda;
  Matrix P;
};

/// 1e-8 * max(1, ||H||_2).
double default_group_tolerance(double two_norm);

/// Symmetric eigendecomposition. H must be symmetric to within
/// 1e-10 * ||H||_max (NotSymmetric otherwise); it is symmetrized before solving.
/// Consecutive sorted eigenvalues closer than group_tol share a group. When
/// group_tol is not given, default_group_tolerance(||H||_2) is used.
SpectralDecomposition decompose(const Matrix& H, std::optional<double> group_tol = std::nullopt);

/// Orthogonal projection onto the eigenspace of group k.
EigenspaceProjection projection(const SpectralDecomposition& d, std::size_t k);

/// Projection onto the span of the first `rank` eigenvectors (ascending order).
Matrix leading_projection(const SpectralDecomposition& d, std::size_t rank);

/// Minimum distance between distinct eigenvalues; SingleEigenvalue if m == 1.
double spectral_gap(const SpectralDecomposition& d);

/// Spectral radius max |lambda| of a symmetric matrix.
double operator_two_norm(const Matrix& M);

}  // namespace psig
