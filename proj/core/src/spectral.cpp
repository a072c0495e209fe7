#include "mixar/spectral.hpp"

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/FFT>

#include "log.hpp"
#include "mixar/error.hpp"
#include "mixar/parallel.hpp"

namespace mixar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(std::span<const double> y) {
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (!std::isfinite(y[t])) {
      throw Error(ErrorKind::Data, "non-finite value at index " + std::to_string(t));
    }
  }
}

void warn_if_uncentered(std::span<const double> y) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double var = 0.0;
  for (double v : y) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(y.size()));
  if (std::abs(mean) > 1e-8 * sd) {
    log::warn("spectral estimator called on a series with mean " + std::to_string(mean));
  }
}

}  // namespace

std::vector<Complex> dft(std::span<const double> y) {
  if (y.size() < 4) throw Error(ErrorKind::Length, "DFT needs at least 4 observations");
  require_finite(y);
  Eigen::FFT<double> fft;
  std::vector<double> in(y.begin(), y.end());
  std::vector<Complex> out;
  fft.fwd(out, in);
  return out;
}

std::vector<double> center(std::span<const double> y) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  std::vector<double> out(y.begin(), y.end());
  for (double& v : out) v -= mean;
  return out;
}

std::vector<double> fourier_frequencies(std::size_t T) {
  std::vector<double> w(T > 0 ? T - 1 : 0);
  for (std::size_t j = 1; j < T; ++j) w[j - 1] = kTwoPi * static_cast<double>(j) / static_cast<double>(T);
  return w;
}

std::vector<double> periodogram_from_dft(std::span<const Complex> d) {
  const std::size_t T = d.size();
  const double scale = 1.0 / (kTwoPi * static_cast<double>(T));
  std::vector<double> I2(T - 1);
  for (std::size_t j = 1; j < T; ++j) I2[j - 1] = std::norm(d[j]) * scale;
  return I2;
}

BiGrid biperiodogram_from_dft(std::span<const Complex> d, unsigned threads) {
  const std::size_t T = d.size();
  const std::size_t n = T - 1;
  const double scale = 1.0 / (kTwoPi * kTwoPi * static_cast<double>(T));
  BiGrid I3(n, n);
  parallel_for(n, threads, [&](std::size_t row) {
    const std::size_t j = row + 1;
    for (std::size_t i = 1; i < T; ++i) {
      I3(row, i - 1) = d[j] * d[i] * std::conj(d[(j + i) % T]) * scale;
    }
  });
  return I3;
}

std::vector<double> periodogram(std::span<const double> y) {
  warn_if_uncentered(y);
  return periodogram_from_dft(dft(y));
}

BiGrid biperiodogram(std::span<const double> y) {
  if (y.size() < 8) throw Error(ErrorKind::Length, "biperiodogram needs at least 8 observations");
  warn_if_uncentered(y);
  return biperiodogram_from_dft(dft(y));
}

SpectralSummaries summarize(std::span<const double> y, unsigned threads) {
  if (y.size() < 8) throw Error(ErrorKind::Length, "spectral summaries need at least 8 observations");
  require_finite(y);
  const auto centered = center(y);
  const auto d = dft(centered);
  SpectralSummaries out;
  out.T = y.size();
  out.freqs = fourier_frequencies(out.T);
  out.I2 = periodogram_from_dft(d);
  out.I3 = biperiodogram_from_dft(d, threads);
  return out;
}

Cumulants sample_cumulants(std::span<const double> e) {
  if (e.size() < 10) throw Error(ErrorKind::Length, "cumulants need at least 10 observations");
  const double n = static_cast<double>(e.size());
  double mean = 0.0;
  for (double v : e) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : e) {
    const double c = v - mean;
    const double c2 = c * c;
    m2 += c2;
    m3 += c2 * c;
    m4 += c2 * c2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw Error(ErrorKind::Degenerate, "zero variance");
  return {m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

}  // namespace mixar
