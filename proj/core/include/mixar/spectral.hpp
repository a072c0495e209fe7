#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mixar {

using Complex = std::complex<double>;

/// Row-major complex grid indexed by Fourier frequency pairs.
using BiGrid = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Real-valued companion of BiGrid (weights, denominators).
using RealGrid = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// d_T(w_j) = sum_t y_t exp(-i t w_j), w_j = 2 pi j / T, j = 0..T-1.
/// Throws Error(Length) for T < 4 and Error(Data) for non-finite input.
std::vector<Complex> dft(std::span<const double> y);

/// y minus its sample mean.
std::vector<double> center(std::span<const double> y);

/// I2(w_j) = |d_T(w_j)|^2 / (2 pi T) for j = 1..T-1 (element j-1).
std::vector<double> periodogram(std::span<const double> y);

/// I3(w_j, w_i) = d(w_j) d(w_i) conj(d(w_j + w_i)) / ((2 pi)^2 T) for
/// j, i = 1..T-1 (entry (j-1, i-1)); w_j + w_i wraps modulo 2 pi.
BiGrid biperiodogram(std::span<const double> y);

/// Same estimators built from an existing DFT (length T).
std::vector<double> periodogram_from_dft(std::span<const Complex> d);
BiGrid biperiodogram_from_dft(std::span<const Complex> d, unsigned threads = 1);

/// Frequency grid w_j = 2 pi j / T for j = 1..T-1.
std::vector<double> fourier_frequencies(std::size_t T);

struct SpectralSummaries {
  std::size_t T = 0;
  std::vector<double> freqs;  // j = 1..T-1
  std::vector<double> I2;
  BiGrid I3;
};

/// Centers y and computes the periodogram and biperiodogram (T >= 8).
SpectralSummaries summarize(std::span<const double> y, unsigned threads = 1);

struct Cumulants {
  double zeta = 0.0;   // m3 / m2^(3/2)
  double kappa = 0.0;  // m4 / m2^2 - 3
};

/// Standardized third and fourth sample cumulants (length >= 10).
Cumulants sample_cumulants(std::span<const double> e);

}  // namespace mixar
