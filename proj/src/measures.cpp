#include "psig/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "psig/error.hpp"

namespace psig {

namespace {

constexpr double kNegativeMassFloor = -1e-12;
constexpr double kMassSumTolerance = 1e-9;
constexpr double kMergeTolerance = 1e-12;

void check_lengths(const std::vector<double>& atoms, const std::vector<double>& masses) {
  if (atoms.size() != masses.size()) {
    fail(ErrorCode::LengthMismatch, std::to_string(atoms.size()) + " atoms vs " +
                                        std::to_string(masses.size()) + " masses");
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(atoms[i]) || !std::isfinite(masses[i])) {
      fail(ErrorCode::InvalidArgument, "non-finite atom or mass");
    }
  }
}

// Sorts by atom, merges near-equal atoms onto the smallest one, drops zeros.
void canonicalize(std::vector<double>& atoms, std::vector<double>& masses) {
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return atoms[a] < atoms[b]; });

  std::vector<double> out_atoms;
  std::vector<double> out_masses;
  if (!order.empty()) {
    const double range = atoms[order.back()] - atoms[order.front()];
    const double tol = kMergeTolerance * std::max(1.0, range);
    for (auto idx : order) {
      if (!out_atoms.empty() && atoms[idx] - out_atoms.back() <= tol) {
        out_masses.back() += masses[idx];
      } else {
        out_atoms.push_back(atoms[idx]);
        out_masses.push_back(masses[idx]);
      }
    }
  }
  atoms.clear();
  masses.clear();
  for (std::size_t i = 0; i < out_atoms.size(); ++i) {
    if (out_masses[i] != 0.0) {
      atoms.push_back(out_atoms[i]);
      masses.push_back(out_masses[i]);
    }
  }
}

void require_probability(const DiscreteMeasure& mu) {
  if (!mu.is_probability() || mu.size() == 0) fail(ErrorCode::NotProbability, "expected a probability measure");
}

// Prefix sums of the masses with the final entry pinned to exactly 1.
std::vector<double> cumulative(const DiscreteMeasure& mu) {
  std::vector<double> c(mu.size());
  std::partial_sum(mu.masses().begin(), mu.masses().end(), c.begin());
  c.back() = 1.0;
  return c;
}

}  // namespace

DiscreteMeasure DiscreteMeasure::translated(double c) const {
  DiscreteMeasure out = *this;
  for (auto& a : out.atoms_) a += c;
  return out;
}

DiscreteMeasure make_measure(std::vector<double> atoms, std::vector<double> masses) {
  check_lengths(atoms, masses);
  canonicalize(atoms, masses);
  DiscreteMeasure mu;
  mu.atoms_ = std::move(atoms);
  mu.masses_ = std::move(masses);
  mu.probability_ = false;
  return mu;
}

DiscreteMeasure make_probability_measure(std::vector<double> atoms, std::vector<double> masses) {
  check_lengths(atoms, masses);
  if (atoms.empty()) fail(ErrorCode::MassMismatch, "empty support");
  double total = 0.0;
  for (double& m : masses) {
    if (m < kNegativeMassFloor) fail(ErrorCode::NegativeMass, "mass " + std::to_string(m));
    total += m;
  }
  if (std::abs(total - 1.0) > kMassSumTolerance) {
    fail(ErrorCode::MassMismatch, "masses sum to " + std::to_string(total));
  }
  double clamped_total = 0.0;
  for (double& m : masses) {
    m = std::max(m, 0.0);
    clamped_total += m;
  }
  // Leave sums that are 1 up to summation roundoff alone so that
  // serialized measures read back bit for bit.
  const double roundoff = 4.0 * static_cast<double>(masses.size()) * std::numeric_limits<double>::epsilon();
  if (std::abs(clamped_total - 1.0) > roundoff) {
    for (double& m : masses) m /= clamped_total;
  }
  canonicalize(atoms, masses);
  DiscreteMeasure mu;
  mu.atoms_ = std::move(atoms);
  mu.masses_ = std::move(masses);
  mu.probability_ = true;
  return mu;
}

double cdf(const DiscreteMeasure& mu, double x) {
  require_probability(mu);
  const auto c = cumulative(mu);
  const auto it = std::upper_bound(mu.atoms().begin(), mu.atoms().end(), x);
  if (it == mu.atoms().begin()) return 0.0;
  return std::clamp(c[static_cast<std::size_t>(it - mu.atoms().begin()) - 1], 0.0, 1.0);
}

double quantile(const DiscreteMeasure& mu, double t) {
  require_probability(mu);
  if (!(t > 0.0 && t <= 1.0)) fail(ErrorCode::OutOfDomain, "quantile level " + std::to_string(t));
  const auto c = cumulative(mu);
  const auto it = std::lower_bound(c.begin(), c.end(), t);
  const auto k = std::min(static_cast<std::size_t>(it - c.begin()), mu.size() - 1);
  return mu.atoms()[k];
}

QuantileVector sample_quantiles(const DiscreteMeasure& mu, std::size_t m) {
  require_probability(mu);
  if (m == 0) fail(ErrorCode::InvalidArgument, "quantile count must be >= 1");
  const auto c = cumulative(mu);
  QuantileVector q;
  q.values.resize(m);
  // Grid levels increase, so a single forward sweep over the atoms suffices.
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
    while (k + 1 < c.size() && c[k] < t) ++k;
    q.values[i] = mu.atoms()[k];
  }
  return q;
}

double wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p) {
  require_probability(mu);
  require_probability(nu);
  if (!(p >= 1.0)) fail(ErrorCode::InvalidArgument, "Wasserstein order p must be >= 1");
  const auto c1 = cumulative(mu);
  const auto c2 = cumulative(nu);
  // Both quantile functions are constant on (prev, next] between merged
  // cumulative-mass breakpoints.
  std::size_t i = 0;
  std::size_t j = 0;
  double prev = 0.0;
  double total = 0.0;
  while (i < c1.size() && j < c2.size()) {
    const double next = std::min(c1[i], c2[j]);
    const double gap = std::abs(mu.atoms()[i] - nu.atoms()[j]);
    total += (next - prev) * (p == 1.0 ? gap : std::pow(gap, p));
    prev = next;
    if (c1[i] == next) ++i;
    if (c2[j] == next) ++j;
  }
  return p == 1.0 ? total : std::pow(total, 1.0 / p);
}

double wasserstein_from_quantiles(std::span<const double> a, std::span<const double> b, double p) {
  if (a.size() != b.size()) {
    fail(ErrorCode::LengthMismatch, std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  if (a.empty()) fail(ErrorCode::InvalidArgument, "empty quantile vectors");
  if (!(p >= 1.0)) fail(ErrorCode::InvalidArgument, "Wasserstein order p must be >= 1");
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double gap = std::abs(a[i] - b[i]);
    total += p == 1.0 ? gap : std::pow(gap, p);
  }
  total /= static_cast<double>(a.size());
  return p == 1.0 ? total : std::pow(total, 1.0 / p);
}

double wasserstein_from_quantiles(const QuantileVector& a, const QuantileVector& b, double p) {
  return wasserstein_from_quantiles(std::span<const double>(a.values), std::span<const double>(b.values), p);
}

}  // namespace psig
