#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "psig/spectral.hpp"
#include "psig/types.hpp"

namespace psig {

/// One comparison of mu_f^H against mu_f^{H + t Delta} with the Lipschitz
/// bound n * |t| * ||Delta||_2.
struct PerturbationTrial {
  Matrix H;
  Matrix Delta;
  double t = 0.0;
  Vector f;
  double delta_norm = 0.0;  ///< ||Delta||_2
  double w1 = 0.0;
  double bound = 0.0;
  double ratio = 0.0;  ///< w1 / bound; 0 when both vanish, +inf when only bound does

  /// A ratio above 1 + 1e-9 contradicts the Lipschitz bound.
  bool violates() const noexcept { return ratio > 1.0 + kViolationSlack; }

  static constexpr double kViolationSlack = 1e-9;
};

/// f must have unit norm (within 1e-12); H and Delta symmetric of equal size.
PerturbationTrial lipschitz_trial(const Matrix& H, const Matrix& Delta, double t, const Vector& f);

/// Same as lipschitz_trial but requires `base` to have an eigenvalue of
/// multiplicity >= 2 under the default grouping (InvalidArgument otherwise).
/// f defaults to delta_0.
PerturbationTrial degenerate_stress_trial(const Matrix& base, const Matrix& Delta, double t,
                                          std::optional<Vector> f = std::nullopt);

/// First-order term of the projection onto the first k eigenspaces of
/// H + t Delta: sum over h < k <= j of (P_h Delta P_j + P_j Delta P_h) / (lambda_h - lambda_j).
/// Requires 1 <= k < group_count().
Matrix first_order_projection(const SpectralDecomposition& d, const Matrix& Delta, std::size_t k);

/// Reduced resolvent S_h = sum_{j != h} P_j / (lambda_j - lambda_h).
Matrix reduced_resolvent(const SpectralDecomposition& d, std::size_t h);

/// First-order term of the projection onto eigenspace h: -(P_h Delta S_h + S_h Delta P_h).
Matrix eigenprojection_first_order(const SpectralDecomposition& d, const Matrix& Delta, std::size_t h);

enum class FiniteDifference { Forward, Central };

/// Difference quotient of t -> P_[k](H + t Delta), where P_[k](H + t Delta)
/// projects onto as many leading eigenvectors as the first k groups of H
/// hold. Meaningful while |t| ||Delta||_2 < gap(H) / 2.
Matrix projection_difference_quotient(const Matrix& H, const Matrix& Delta, std::size_t k, double t,
                                      FiniteDifference scheme = FiniteDifference::Forward);

struct HksStability {
  double lhs;  ///< |hks_L(x,t) - hks_L'(x,t)|
  double rhs;  ///< t n ||L - L'||_2
};

HksStability hks_stability_check(const Matrix& L, const Matrix& L_prime, std::size_t x, double t);

struct SymmetryBound {
  std::vector<double> lhs;  ///< W1(mu_i, mu_sigma(i)) per vertex
  double rhs = 0.0;         ///< n ||H - P^T H P||_2

  double max_lhs() const;
};

/// d must be the decomposition of H.
SymmetryBound approximate_symmetry_bound(const SpectralDecomposition& d, const std::vector<std::size_t>& sigma,
                                         const Matrix& H);

// Randomized certification ensemble.

enum class BaseKind { Gaussian, Degenerate, NearDegenerate };

std::string_view to_string(BaseKind kind);

struct EnsembleConfig {
  std::size_t trials = 1000;
  std::size_t min_dim = 2;
  std::size_t max_dim = 16;
  std::uint64_t seed = 1;
  double t_min = 1e-6;
  double t_max = 1.0;
};

struct TrialRecord {
  std::size_t dim = 0;
  double t = 0.0;
  double delta_norm = 0.0;
  double w1 = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  std::uint64_t seed = 0;  ///< per-trial seed; make_trial(seed, ...) regenerates the inputs
  BaseKind kind = BaseKind::Gaussian;
  double base_gap = 0.0;  ///< planted eigenvalue splitting (0 for exact degeneracy, -1 for Gaussian)
};

struct TrialInputs {
  Matrix H;
  Matrix Delta;
  double t;
  Vector f;
};

/// Symmetric Gaussian H and Delta (entries N(0,1), symmetrized), unit f, t
/// log-uniform in [t_min, t_max]. Degenerate kinds replace H's spectrum with
/// one holding a repeated eigenvalue (exactly, or split by base_gap).
TrialInputs make_trial(std::uint64_t seed, std::size_t dim, BaseKind kind, double base_gap, double t_min,
                       double t_max);

/// Runs config.trials trials in parallel. Trial i uses dimension, base kind
/// and gap derived deterministically from (config.seed, i): kinds cycle
/// Gaussian, Gaussian, Degenerate, NearDegenerate and near-degenerate gaps
/// sweep 1e-2 ... 1e-12.
std::vector<TrialRecord> run_lipschitz_ensemble(const EnsembleConfig& config);

struct EnsembleSummary {
  std::size_t trials = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::size_t violations = 0;
};

EnsembleSummary summarize(const std::vector<TrialRecord>& records);

}  // namespace psig
