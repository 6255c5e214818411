#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "psig/graph.hpp"
#include "psig/measures.hpp"
#include "psig/spectral.hpp"
#include "psig/types.hpp"

namespace psig {

/// Power spectrum of a vertex function: the probability measure putting mass
/// <f, P_lambda f> on every distinct eigenvalue lambda (f normalized first).
struct PowerSpectrum {
  DiscreteMeasure measure;
  double f_norm = 1.0;  ///< norm of the input before normalization
};

/// Spectrum atoms lighter than this are dropped.
inline constexpr double kSpectrumMassFloor = 1e-14;

PowerSpectrum power_spectrum(const SpectralDecomposition& d, const Vector& f);
PowerSpectrum power_spectrum(const SpectralDecomposition& d, const VertexFunction& f);

/// Spectrum of the indicator delta_x.
PowerSpectrum vertex_spectrum(const SpectralDecomposition& d, std::size_t x);

/// Spectra of every vertex, computed in parallel.
std::vector<PowerSpectrum> vertex_spectra(const SpectralDecomposition& d);

/// Spectra of the pair indicators f_{x,y}, indexed by unordered pairs
/// (including x == y).
class PairSpectra {
 public:
  explicit PairSpectra(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  void set(std::size_t x, std::size_t y, PowerSpectrum spectrum);
  bool contains(std::size_t x, std::size_t y) const;
  /// Throws MissingPair when the pair was never set.
  const PowerSpectrum& get(std::size_t x, std::size_t y) const;

 private:
  std::size_t index(std::size_t x, std::size_t y) const;

  std::size_t n_;
  std::vector<std::optional<PowerSpectrum>> spectra_;
};

/// All n(n+1)/2 pair spectra from one decomposition.
PairSpectra all_pair_spectra(const SpectralDecomposition& d);

/// Recovers the decomposed matrix from first moments of the pair spectra:
/// H_xx = E[P[f_x]], H_xy = E[P[f_xy]] - (E[P[f_x]] + E[P[f_y]]) / 2.
Matrix reconstruct_matrix(const PairSpectra& spectra);

/// sum_i exp(-lambda_i t) phi_i(x)^2, evaluated as an expectation over the
/// vertex spectrum.
double heat_kernel_signature(const SpectralDecomposition& d, std::size_t x, double t);

/// sum_i g(t lambda_i) phi_i(x)^2.
double wavelet_signature(const SpectralDecomposition& d, std::size_t x,
                         const std::function<double(double)>& g, double t);

/// sum_i exp(-lambda_i t) (phi_i(x) - phi_i(y))^2. Throws SameVertex for x == y.
double diffusion_distance_sq(const SpectralDecomposition& d, std::size_t x, std::size_t y, double t);

/// (phi_i(x) / sqrt(lambda_i)) over eigenvectors with lambda_i above the
/// grouping tolerance. Entries are defined only up to the sign of each
/// eigenvector, and inside degenerate eigenspaces up to the basis choice.
Vector global_point_signature(const SpectralDecomposition& d, std::size_t x);

/// Pairwise W1 distances between vertex spectra.
struct SignatureMatrix {
  Matrix dist;

  std::size_t size() const noexcept { return static_cast<std::size_t>(dist.rows()); }
};

SignatureMatrix signature_distance_matrix(const SpectralDecomposition& d);

}  // namespace psig
