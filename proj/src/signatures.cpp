#include "psig/signatures.hpp"

#include <cmath>
#include <string>

#include "psig/error.hpp"
#include "psig/parallel.hpp"

namespace psig {

namespace {

void check_vertex(const SpectralDecomposition& d, std::size_t x) {
  if (x >= d.dimension()) {
    fail(ErrorCode::IndexOutOfRange,
         "vertex " + std::to_string(x) + " of " + std::to_string(d.dimension()));
  }
}

// Groups squared coefficients by eigenvalue group.
PowerSpectrum spectrum_from_coefficients(const SpectralDecomposition& d, const Vector& coeff, double f_norm) {
  const auto& distinct = d.distinct_eigenvalues();
  std::vector<double> atoms;
  std::vector<double> masses;
  atoms.reserve(distinct.size());
  masses.reserve(distinct.size());
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    const auto off = static_cast<Eigen::Index>(d.group_offset(k));
    const auto len = static_cast<Eigen::Index>(d.multiplicity(k));
    const double mass = coeff.segment(off, len).squaredNorm();
    if (mass >= kSpectrumMassFloor) {
      atoms.push_back(distinct[k]);
      masses.push_back(mass);
    }
  }
  return {make_probability_measure(std::move(atoms), std::move(masses)), f_norm};
}

}  // namespace

PowerSpectrum power_spectrum(const SpectralDecomposition& d, const Vector& f) {
  if (static_cast<std::size_t>(f.size()) != d.dimension()) {
    fail(ErrorCode::DimensionMismatch,
         "function of length " + std::to_string(f.size()) + " on dimension " + std::to_string(d.dimension()));
  }
  const double norm = f.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) fail(ErrorCode::ZeroFunction, "function has zero norm");
  const Vector coeff = d.eigenvectors().transpose() * (f / norm);
  return spectrum_from_coefficients(d, coeff, norm);
}

PowerSpectrum power_spectrum(const SpectralDecomposition& d, const VertexFunction& f) {
  return power_spectrum(d, f.values);
}

PowerSpectrum vertex_spectrum(const SpectralDecomposition& d, std::size_t x) {
  check_vertex(d, x);
  // <phi_i, delta_x> is row x of the eigenvector matrix.
  const Vector coeff = d.eigenvectors().row(static_cast<Eigen::Index>(x)).transpose();
  return spectrum_from_coefficients(d, coeff, 1.0);
}

std::vector<PowerSpectrum> vertex_spectra(const SpectralDecomposition& d) {
  std::vector<PowerSpectrum> out(d.dimension());
  parallel_for(out.size(), [&](std::size_t x) { out[x] = vertex_spectrum(d, x); });
  return out;
}

PairSpectra::PairSpectra(std::size_t n) : n_(n), spectra_(n * (n + 1) / 2) {}

std::size_t PairSpectra::index(std::size_t x, std::size_t y) const {
  if (x >= n_ || y >= n_) {
    fail(ErrorCode::IndexOutOfRange,
         "pair (" + std::to_string(x) + "," + std::to_string(y) + ") of " + std::to_string(n_));
  }
  if (x > y) std::swap(x, y);
  return x * n_ - x * (x - 1) / 2 + (y - x);
}

void PairSpectra::set(std::size_t x, std::size_t y, PowerSpectrum spectrum) {
  spectra_[index(x, y)] = std::move(spectrum);
}

bool PairSpectra::contains(std::size_t x, std::size_t y) const { return spectra_[index(x, y)].has_value(); }

const PowerSpectrum& PairSpectra::get(std::size_t x, std::size_t y) const {
  const auto& s = spectra_[index(x, y)];
  if (!s) fail(ErrorCode::MissingPair, "no spectrum for pair {" + std::to_string(x) + "," + std::to_string(y) + "}");
  return *s;
}

PairSpectra all_pair_spectra(const SpectralDecomposition& d) {
  const std::size_t n = d.dimension();
  PairSpectra out(n);
  std::vector<std::vector<PowerSpectrum>> rows(n);
  parallel_for(n, [&](std::size_t x) {
    rows[x].reserve(n - x);
    for (std::size_t y = x; y < n; ++y) rows[x].push_back(power_spectrum(d, pair_indicator(x, y, n)));
  });
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) out.set(x, y, std::move(rows[x][y - x]));
  }
  return out;
}

Matrix reconstruct_matrix(const PairSpectra& spectra) {
  const std::size_t n = spectra.size();
  auto first_moment = [](const PowerSpectrum& s) { return expectation(s.measure, [](double t) { return t; }); };
  Vector diag(static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) diag[static_cast<Eigen::Index>(x)] = first_moment(spectra.get(x, x));
  Matrix h(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    const auto xi = static_cast<Eigen::Index>(x);
    h(xi, xi) = diag[xi];
    for (std::size_t y = x + 1; y < n; ++y) {
      const auto yi = static_cast<Eigen::Index>(y);
      const double v = first_moment(spectra.get(x, y)) - 0.5 * (diag[xi] + diag[yi]);
      h(xi, yi) = v;
      h(yi, xi) = v;
    }
  }
  return h;
}

double heat_kernel_signature(const SpectralDecomposition& d, std::size_t x, double t) {
  if (!(t >= 0.0)) fail(ErrorCode::InvalidArgument, "diffusion time must be >= 0");
  const auto s = vertex_spectrum(d, x);
  return expectation(s.measure, [t](double lambda) { return std::exp(-lambda * t); });
}

double wavelet_signature(const SpectralDecomposition& d, std::size_t x,
                         const std::function<double(double)>& g, double t) {
  const auto s = vertex_spectrum(d, x);
  return expectation(s.measure, [&](double lambda) { return g(t * lambda); });
}

double diffusion_distance_sq(const SpectralDecomposition& d, std::size_t x, std::size_t y, double t) {
  check_vertex(d, x);
  check_vertex(d, y);
  if (x == y) fail(ErrorCode::SameVertex, "diffusion distance needs two distinct vertices");
  if (!(t >= 0.0)) fail(ErrorCode::InvalidArgument, "diffusion time must be >= 0");
  Vector f = Vector::Zero(static_cast<Eigen::Index>(d.dimension()));
  f[static_cast<Eigen::Index>(x)] = 1.0;
  f[static_cast<Eigen::Index>(y)] = -1.0;
  const auto s = power_spectrum(d, f);
  // Undo the normalization: ||delta_x - delta_y||^2 = 2.
  return s.f_norm * s.f_norm * expectation(s.measure, [t](double lambda) { return std::exp(-lambda * t); });
}

Vector global_point_signature(const SpectralDecomposition& d, std::size_t x) {
  check_vertex(d, x);
  const auto& values = d.eigenvalues();
  std::vector<double> out;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] > d.group_tolerance()) {
      out.push_back(d.eigenvectors()(static_cast<Eigen::Index>(x), i) / std::sqrt(values[i]));
    }
  }
  return Eigen::Map<Vector>(out.data(), static_cast<Eigen::Index>(out.size()));
}

SignatureMatrix signature_distance_matrix(const SpectralDecomposition& d) {
  const auto spectra = vertex_spectra(d);
  const auto n = static_cast<Eigen::Index>(spectra.size());
  Matrix dist = Matrix::Zero(n, n);
  parallel_for(spectra.size(), [&](std::size_t i) {
    for (std::size_t j = i + 1; j < spectra.size(); ++j) {
      dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          wasserstein(spectra[i].measure, spectra[j].measure, 1.0);
    }
  });
  dist.triangularView<Eigen::StrictlyLower>() = dist.transpose();
  return {std::move(dist)};
}

}  // namespace psig
