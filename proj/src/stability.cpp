#include "psig/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "psig/error.hpp"
#include "psig/graph.hpp"
#include "psig/measures.hpp"
#include "psig/parallel.hpp"
#include "psig/signatures.hpp"

namespace psig {

namespace {

void check_same_square(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    fail(ErrorCode::DimensionMismatch, "matrices must be square and of equal size");
  }
}

double ratio_of(double w1, double bound) {
  if (bound > 0.0) return w1 / bound;
  return w1 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Matrix gaussian_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = normal(rng);
  return 0.5 * (a + a.transpose());
}

Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ();
}

}  // namespace

PerturbationTrial lipschitz_trial(const Matrix& H, const Matrix& Delta, double t, const Vector& f) {
  check_same_square(H, Delta);
  if (f.size() != H.rows()) fail(ErrorCode::DimensionMismatch, "f length differs from matrix size");
  if (std::abs(f.norm() - 1.0) > 1e-12) fail(ErrorCode::InvalidArgument, "f must have unit norm");
  if (!std::isfinite(t)) fail(ErrorCode::InvalidArgument, "non-finite step");

  PerturbationTrial trial;
  trial.H = H;
  trial.Delta = Delta;
  trial.t = t;
  trial.f = f;
  const Matrix perturbed = H + t * Delta;
  const auto before = power_spectrum(decompose(H), f);
  const auto after = power_spectrum(decompose(perturbed), f);
  trial.delta_norm = operator_two_norm(Delta);
  trial.w1 = wasserstein(before.measure, after.measure, 1.0);
  trial.bound = static_cast<double>(H.rows()) * std::abs(t) * trial.delta_norm;
  trial.ratio = ratio_of(trial.w1, trial.bound);
  return trial;
}

PerturbationTrial degenerate_stress_trial(const Matrix& base, const Matrix& Delta, double t,
                                          std::optional<Vector> f) {
  const auto d = decompose(base);
  const auto& mult = d.multiplicities();
  if (std::none_of(mult.begin(), mult.end(), [](std::size_t m) { return m >= 2; })) {
    fail(ErrorCode::InvalidArgument, "base matrix has no repeated eigenvalue");
  }
  Vector unit = f ? *f : indicator(0, static_cast<std::size_t>(base.rows())).values;
  return lipschitz_trial(base, Delta, t, unit);
}

Matrix first_order_projection(const SpectralDecomposition& d, const Matrix& Delta, std::size_t k) {
  if (k < 1 || k >= d.group_count()) {
    fail(ErrorCode::IndexOutOfRange,
         "k = " + std::to_string(k) + " outside [1, " + std::to_string(d.group_count()) + ")");
  }
  if (Delta.rows() != static_cast<Eigen::Index>(d.dimension()) || Delta.cols() != Delta.rows()) {
    fail(ErrorCode::DimensionMismatch, "perturbation size differs from decomposition");
  }
  const Matrix& q = d.eigenvectors();
  const Matrix coupled = q.transpose() * Delta * q;
  const auto split = static_cast<Eigen::Index>(d.group_offset(k));
  const auto n = q.cols();
  // In the eigenbasis only the (leading, trailing) blocks survive, each entry
  // weighted by 1 / (lambda_h - lambda_j) of its two groups.
  Matrix c = Matrix::Zero(n, n);
  const auto& lambda = d.distinct_eigenvalues();
  for (Eigen::Index a = 0; a < split; ++a) {
    const double la = lambda[d.group_of(static_cast<std::size_t>(a))];
    for (Eigen::Index b = split; b < n; ++b) {
      const double w = 1.0 / (la - lambda[d.group_of(static_cast<std::size_t>(b))]);
      c(a, b) = w * coupled(a, b);
      c(b, a) = w * coupled(b, a);
    }
  }
  return q * c * q.transpose();
}

Matrix reduced_resolvent(const SpectralDecomposition& d, std::size_t h) {
  if (h >= d.group_count()) fail(ErrorCode::IndexOutOfRange, "group " + std::to_string(h));
  const auto n = static_cast<Eigen::Index>(d.dimension());
  Matrix s = Matrix::Zero(n, n);
  const auto& lambda = d.distinct_eigenvalues();
  for (std::size_t j = 0; j < d.group_count(); ++j) {
    if (j == h) continue;
    s += projection(d, j).P / (lambda[j] - lambda[h]);
  }
  return s;
}

Matrix eigenprojection_first_order(const SpectralDecomposition& d, const Matrix& Delta, std::size_t h) {
  const Matrix p = projection(d, h).P;
  const Matrix s = reduced_resolvent(d, h);
  return -(p * Delta * s + s * Delta * p);
}

Matrix projection_difference_quotient(const Matrix& H, const Matrix& Delta, std::size_t k, double t,
                                      FiniteDifference scheme) {
  check_same_square(H, Delta);
  if (!(t != 0.0) || !std::isfinite(t)) fail(ErrorCode::InvalidArgument, "step must be finite and nonzero");
  const auto base = decompose(H);
  if (k < 1 || k > base.group_count()) fail(ErrorCode::IndexOutOfRange, "k = " + std::to_string(k));
  const std::size_t rank = base.group_offset(k - 1) + base.multiplicity(k - 1);
  const Matrix forward = leading_projection(decompose(H + t * Delta), rank);
  if (scheme == FiniteDifference::Forward) return (forward - leading_projection(base, rank)) / t;
  const Matrix backward = leading_projection(decompose(H - t * Delta), rank);
  return (forward - backward) / (2.0 * t);
}

HksStability hks_stability_check(const Matrix& L, const Matrix& L_prime, std::size_t x, double t) {
  check_same_square(L, L_prime);
  if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "t must be > 0");
  const double a = heat_kernel_signature(decompose(L), x, t);
  const double b = heat_kernel_signature(decompose(L_prime), x, t);
  return {std::abs(a - b), t * static_cast<double>(L.rows()) * operator_two_norm(L - L_prime)};
}

double SymmetryBound::max_lhs() const { return lhs.empty() ? 0.0 : *std::max_element(lhs.begin(), lhs.end()); }

SymmetryBound approximate_symmetry_bound(const SpectralDecomposition& d, const std::vector<std::size_t>& sigma,
                                         const Matrix& H) {
  if (static_cast<std::size_t>(H.rows()) != d.dimension()) {
    fail(ErrorCode::DimensionMismatch, "matrix size differs from decomposition");
  }
  validate_permutation(sigma, d.dimension());
  const auto spectra = vertex_spectra(d);
  SymmetryBound out;
  out.lhs.resize(d.dimension());
  for (std::size_t i = 0; i < d.dimension(); ++i) {
    out.lhs[i] = wasserstein(spectra[i].measure, spectra[sigma[i]].measure, 1.0);
  }
  const Matrix p = permutation_matrix(sigma);
  out.rhs = static_cast<double>(d.dimension()) * operator_two_norm(H - p.transpose() * H * p);
  return out;
}

std::string_view to_string(BaseKind kind) {
  switch (kind) {
    case BaseKind::Gaussian: return "gaussian";
    case BaseKind::Degenerate: return "degenerate";
    case BaseKind::NearDegenerate: return "near_degenerate";
  }
  return "unknown";
}

TrialInputs make_trial(std::uint64_t seed, std::size_t dim, BaseKind kind, double base_gap, double t_min,
                       double t_max) {
  if (dim < 2) fail(ErrorCode::InvalidArgument, "trial dimension must be >= 2");
  if (!(t_min > 0.0 && t_max >= t_min)) fail(ErrorCode::InvalidArgument, "need 0 < t_min <= t_max");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  TrialInputs in;
  in.H = gaussian_symmetric(dim, rng);
  if (kind != BaseKind::Gaussian) {
    Vector spectrum(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) spectrum[i] = normal(rng);
    const std::size_t block = kind == BaseKind::Degenerate
                                  ? 2 + static_cast<std::size_t>(unit(rng) * static_cast<double>(dim - 1))
                                  : 2;
    const auto repeated = std::min(block, dim);
    for (std::size_t i = 1; i < repeated; ++i) spectrum[static_cast<Eigen::Index>(i)] = spectrum[0];
    if (kind == BaseKind::NearDegenerate) spectrum[1] = spectrum[0] + base_gap;
    const Matrix q = random_orthogonal(dim, rng);
    const Matrix h = q * spectrum.asDiagonal() * q.transpose();
    in.H = 0.5 * (h + h.transpose());
  }
  in.Delta = gaussian_symmetric(dim, rng);
  in.t = std::exp(std::log(t_min) + unit(rng) * (std::log(t_max) - std::log(t_min)));
  in.f.resize(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < in.f.size(); ++i) in.f[i] = normal(rng);
  in.f.normalize();
  return in;
}

std::vector<TrialRecord> run_lipschitz_ensemble(const EnsembleConfig& config) {
  if (config.min_dim < 2 || config.max_dim < config.min_dim) {
    fail(ErrorCode::InvalidArgument, "need 2 <= min_dim <= max_dim");
  }
  std::vector<TrialRecord> records(config.trials);
  parallel_for(config.trials, [&](std::size_t i) {
    TrialRecord rec;
    rec.seed = splitmix64(config.seed * 0x100000001B3ULL + i);
    const std::size_t span = config.max_dim - config.min_dim + 1;
    rec.dim = config.min_dim + static_cast<std::size_t>(splitmix64(rec.seed) % span);
    switch (i % 4) {
      case 2:
        rec.kind = BaseKind::Degenerate;
        rec.base_gap = 0.0;
        break;
      case 3:
        rec.kind = BaseKind::NearDegenerate;
        rec.base_gap = std::pow(10.0, -2.0 - static_cast<double>((i / 4) % 11));
        break;
      default:
        rec.kind = BaseKind::Gaussian;
        rec.base_gap = -1.0;
    }
    const auto in = make_trial(rec.seed, rec.dim, rec.kind, rec.base_gap, config.t_min, config.t_max);
    const auto trial = lipschitz_trial(in.H, in.Delta, in.t, in.f);
    rec.t = trial.t;
    rec.delta_norm = trial.delta_norm;
    rec.w1 = trial.w1;
    rec.bound = trial.bound;
    rec.ratio = trial.ratio;
    records[i] = rec;
  });
  return records;
}

EnsembleSummary summarize(const std::vector<TrialRecord>& records) {
  EnsembleSummary s;
  s.trials = records.size();
  double sum = 0.0;
  for (const auto& r : records) {
    s.max_ratio = std::max(s.max_ratio, r.ratio);
    sum += r.ratio;
    if (r.ratio > 1.0 + PerturbationTrial::kViolationSlack) ++s.violations;
  }
  s.mean_ratio = records.empty() ? 0.0 : sum / static_cast<double>(records.size());
  return s;
}

}  // namespace psig
