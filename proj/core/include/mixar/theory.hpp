#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mixar/model.hpp"
#include "mixar/spectral.hpp"

namespace mixar {

/// psi(theta, w) with z = exp(-i w):
///   causal     1 / phi(z)
///   noncausal  1 / varphi(z^-1)
///   mixed      1 / (phi(z) varphi(z^-1))
/// Throws Error(Domain) at a pole.
Complex transfer(const ModelSpec& spec, double omega);

/// S2 = k2e / (2 pi) |psi(w)|^2.
double spectrum(const ModelSpec& spec, double k2e, double omega);

/// S3 = k3e / (2 pi)^2 psi(w1) psi(w2) psi(-w1 - w2).
Complex bispectrum(const ModelSpec& spec, double k3e, double omega1, double omega2);

/// Transfer function on the Fourier grid w_j = 2 pi j / T, j = 0..T-1.
///
/// The bifrequency factor psi(-w_j - w_i) is read from the same grid at the
/// wrapped index (j + i) mod T, conjugated, matching the biperiodogram.
struct TransferGrid {
  std::size_t T = 0;
  std::vector<Complex> psi;      // psi(w_j)
  std::vector<Complex> inverse;  // 1 / psi(w_j), the filter polynomial values

  static TransferGrid build(const ModelSpec& spec, std::size_t T);

  Complex at(std::size_t j) const { return psi[j % T]; }
  Complex neg_sum(std::size_t j, std::size_t i) const { return std::conj(psi[(j + i) % T]); }
};

/// k*_2 = (2 pi / T) sum_j I2(w_j) / (psi(w_j) psi(-w_j)), with T = I2.size() + 1.
double k2_star(const ModelSpec& spec, std::span<const double> I2);
double k2_star(const TransferGrid& grid, std::span<const double> I2);

/// k*_3 = (4 pi^2 / T^2) sum_j sum_i Re[I3(w_j, w_i) / (psi(w_j) psi(w_i) psi(-w_j - w_i))].
double k3_star(const ModelSpec& spec, const BiGrid& I3);
double k3_star(const TransferGrid& grid, const BiGrid& I3);

/// Model spectrum on j = 1..T-1, laid out like the periodogram.
std::vector<double> spectrum_grid(const ModelSpec& spec, double k2e, std::size_t T);

/// Model bispectrum on j, i = 1..T-1, laid out like the biperiodogram.
BiGrid bispectrum_grid(const ModelSpec& spec, double k3e, std::size_t T);

}  // namespace mixar
