#include "psig/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "psig/error.hpp"

namespace psig {

namespace {

void check_finite(const Matrix& m) {
  if (!m.allFinite()) fail(ErrorCode::SolverFailure, "matrix has non-finite entries");
}

Matrix symmetrized(const Matrix& h) {
  if (h.rows() != h.cols()) {
    fail(ErrorCode::DimensionMismatch,
         "matrix is " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
  }
  check_finite(h);
  const double scale = max_abs(h);
  const double asym = max_abs(h - h.transpose());
  if (asym > 1e-10 * scale) {
    fail(ErrorCode::NotSymmetric, "max |H - H^T| = " + std::to_string(asym));
  }
  return 0.5 * (h + h.transpose());
}

}  // namespace

SpectralDecomposition::SpectralDecomposition(Vector eigenvalues, Matrix eigenvectors, double group_tol)
    : values_(std::move(eigenvalues)), vectors_(std::move(eigenvectors)), group_tol_(group_tol) {
  const auto n = static_cast<std::size_t>(values_.size());
  column_group_.resize(n);
  std::size_t start = 0;
  // Single-linkage grouping on consecutive gaps: distinct groups are then
  // separated by more than group_tol.
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == n || values_[static_cast<Eigen::Index>(i)] - values_[static_cast<Eigen::Index>(i - 1)] > group_tol_) {
      double sum = 0.0;
      for (std::size_t j = start; j < i; ++j) {
        sum += values_[static_cast<Eigen::Index>(j)];
        column_group_[j] = distinct_.size();
      }
      distinct_.push_back(sum / static_cast<double>(i - start));
      multiplicity_.push_back(i - start);
      offset_.push_back(start);
      start = i;
    }
  }
}

std::size_t SpectralDecomposition::group_of(std::size_t column) const { return column_group_.at(column); }

double default_group_tolerance(double two_norm) { return 1e-8 * std::max(1.0, two_norm); }

SpectralDecomposition decompose(const Matrix& H, std::optional<double> group_tol) {
  const Matrix sym = symmetrized(H);
  if (sym.rows() == 0) fail(ErrorCode::InvalidArgument, "empty matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) fail(ErrorCode::SolverFailure, "eigensolver did not converge");
  Vector values = solver.eigenvalues();
  const double radius = std::max(std::abs(values[0]), std::abs(values[values.size() - 1]));
  const double tol = group_tol.value_or(default_group_tolerance(radius));
  if (!(tol >= 0.0)) fail(ErrorCode::InvalidArgument, "group tolerance must be >= 0");
  return SpectralDecomposition(std::move(values), solver.eigenvectors(), tol);
}

EigenspaceProjection projection(const SpectralDecomposition& d, std::size_t k) {
  if (k >= d.group_count()) {
    fail(ErrorCode::IndexOutOfRange,
         "group " + std::to_string(k) + " of " + std::to_string(d.group_count()));
  }
  const auto cols = d.eigenvectors().middleCols(static_cast<Eigen::Index>(d.group_offset(k)),
                                                static_cast<Eigen::Index>(d.multiplicity(k)));
  return {d.distinct_eigenvalues()[k], cols * cols.transpose()};
}

Matrix leading_projection(const SpectralDecomposition& d, std::size_t rank) {
  if (rank > d.dimension()) fail(ErrorCode::IndexOutOfRange, "rank exceeds dimension");
  const auto cols = d.eigenvectors().leftCols(static_cast<Eigen::Index>(rank));
  return cols * cols.transpose();
}

double spectral_gap(const SpectralDecomposition& d) {
  const auto& ev = d.distinct_eigenvalues();
  if (ev.size() < 2) fail(ErrorCode::SingleEigenvalue, "spectral gap needs two distinct eigenvalues");
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < ev.size(); ++k) gap = std::min(gap, ev[k] - ev[k - 1]);
  return gap;
}

double operator_two_norm(const Matrix& M) {
  const Matrix sym = symmetrized(M);
  if (sym.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorCode::SolverFailure, "eigensolver did not converge");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace psig
