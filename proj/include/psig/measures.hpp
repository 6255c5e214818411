#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace psig {

/// Finitely supported measure on the real line, kept in canonical form:
/// strictly increasing atoms, duplicates merged, zero-mass atoms removed.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;

  const std::vector<double>& atoms() const noexcept { return atoms_; }
  const std::vector<double>& masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool is_probability() const noexcept { return probability_; }

  double min_atom() const { return atoms_.front(); }
  double max_atom() const { return atoms_.back(); }

  /// Shifts every atom by c.
  DiscreteMeasure translated(double c) const;

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  friend DiscreteMeasure make_measure(std::vector<double>, std::vector<double>);
  friend DiscreteMeasure make_probability_measure(std::vector<double>, std::vector<double>);

  std::vector<double> atoms_;
  std::vector<double> masses_;
  bool probability_ = false;
};

/// Signed measure: sorts and merges atoms, drops exact-zero masses.
DiscreteMeasure make_measure(std::vector<double> atoms, std::vector<double> masses);

/// Probability measure. Masses in [-1e-12, 0) are clamped to zero and the
/// result renormalized; masses below -1e-12 raise NegativeMass, totals off
/// by more than 1e-9 raise MassMismatch. Atoms closer than
/// 1e-12 * max(1, range) are merged.
DiscreteMeasure make_probability_measure(std::vector<double> atoms, std::vector<double> masses);

/// Sampled quantile function, nondecreasing.
struct QuantileVector {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  friend bool operator==(const QuantileVector&, const QuantileVector&) = default;
};

/// Right-continuous CDF F(x) = mu((-inf, x]).
double cdf(const DiscreteMeasure& mu, double x);

/// Generalized inverse inf{x : F(x) >= t} for t in (0, 1].
double quantile(const DiscreteMeasure& mu, double t);

/// values[i] = quantile((i + 1/2) / m).
QuantileVector sample_quantiles(const DiscreteMeasure& mu, std::size_t m);

/// Exact p-Wasserstein distance between probability measures on the line.
double wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p = 1.0);

/// (1/m sum |a_i - b_i|^p)^(1/p).
double wasserstein_from_quantiles(std::span<const double> a, std::span<const double> b, double p = 1.0);
double wasserstein_from_quantiles(const QuantileVector& a, const QuantileVector& b, double p = 1.0);

/// sum_i mass_i * g(atom_i).
template <typename Fn>
double expectation(const DiscreteMeasure& mu, Fn&& g) {
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) total += mu.masses()[i] * g(mu.atoms()[i]);
  return total;
}

}  // namespace psig
