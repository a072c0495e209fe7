#include "mixar/theory.hpp"

#include <cmath>
#include <numbers>

#include "mixar/error.hpp"

namespace mixar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// phi(z) varphi(z^-1) at z = exp(-i w).
Complex filter_polynomial(const ModelSpec& spec, double omega) {
  Complex lag{1.0, 0.0};
  for (std::size_t k = 1; k <= spec.r(); ++k) {
    lag -= spec.phi[k - 1] * std::polar(1.0, -omega * static_cast<double>(k));
  }
  Complex lead{1.0, 0.0};
  for (std::size_t k = 1; k <= spec.s(); ++k) {
    lead -= spec.varphi[k - 1] * std::polar(1.0, omega * static_cast<double>(k));
  }
  return lag * lead;
}

Complex checked_inverse(Complex poly) {
  if (!(std::abs(poly) > 1e-14) || !std::isfinite(poly.real()) || !std::isfinite(poly.imag())) {
    throw Error(ErrorKind::Domain, "transfer function evaluated at a pole");
  }
  return 1.0 / poly;
}

}  // namespace

Complex transfer(const ModelSpec& spec, double omega) {
  return checked_inverse(filter_polynomial(spec, omega));
}

double spectrum(const ModelSpec& spec, double k2e, double omega) {
  return k2e / kTwoPi * std::norm(transfer(spec, omega));
}

Complex bispectrum(const ModelSpec& spec, double k3e, double omega1, double omega2) {
  return k3e / (kTwoPi * kTwoPi) * transfer(spec, omega1) * transfer(spec, omega2) *
         transfer(spec, -omega1 - omega2);
}

TransferGrid TransferGrid::build(const ModelSpec& spec, std::size_t T) {
  TransferGrid grid;
  grid.T = T;
  grid.psi.resize(T);
  grid.inverse.resize(T);
  // Powers of z are taken from an exact table of exp(-2 pi i m / T).
  std::vector<Complex> twiddle(T);
  for (std::size_t m = 0; m < T; ++m) {
    twiddle[m] = std::polar(1.0, -kTwoPi * static_cast<double>(m) / static_cast<double>(T));
  }
  for (std::size_t j = 0; j < T; ++j) {
    Complex lag{1.0, 0.0};
    for (std::size_t k = 1; k <= spec.r(); ++k) lag -= spec.phi[k - 1] * twiddle[(j * k) % T];
    Complex lead{1.0, 0.0};
    for (std::size_t k = 1; k <= spec.s(); ++k) {
      lead -= spec.varphi[k - 1] * std::conj(twiddle[(j * k) % T]);
    }
    grid.inverse[j] = lag * lead;
    grid.psi[j] = checked_inverse(grid.inverse[j]);
  }
  return grid;
}

double k2_star(const TransferGrid& grid, std::span<const double> I2) {
  const std::size_t T = I2.size() + 1;
  if (grid.T != T) throw Error(ErrorKind::Length, "transfer grid and periodogram sizes differ");
  double sum = 0.0;
  for (std::size_t j = 1; j < T; ++j) sum += I2[j - 1] * std::norm(grid.inverse[j]);
  return kTwoPi / static_cast<double>(T) * sum;
}

double k2_star(const ModelSpec& spec, std::span<const double> I2) {
  return k2_star(TransferGrid::build(spec, I2.size() + 1), I2);
}

double k3_star(const TransferGrid& grid, const BiGrid& I3) {
  const std::size_t T = static_cast<std::size_t>(I3.rows()) + 1;
  if (grid.T != T || I3.cols() != I3.rows()) {
    throw Error(ErrorKind::Length, "transfer grid and biperiodogram sizes differ");
  }
  double sum = 0.0;
  for (std::size_t j = 1; j < T; ++j) {
    const Complex row = grid.inverse[j];
    double row_sum = 0.0;
    for (std::size_t i = 1; i < T; ++i) {
      const Complex w = row * grid.inverse[i] * std::conj(grid.inverse[(j + i) % T]);
      const Complex v = I3(j - 1, i - 1);
      row_sum += v.real() * w.real() - v.imag() * w.imag();
    }
    sum += row_sum;
  }
  const double t = static_cast<double>(T);
  return kTwoPi * kTwoPi / (t * t) * sum;
}

double k3_star(const ModelSpec& spec, const BiGrid& I3) {
  return k3_star(TransferGrid::build(spec, static_cast<std::size_t>(I3.rows()) + 1), I3);
}

std::vector<double> spectrum_grid(const ModelSpec& spec, double k2e, std::size_t T) {
  const auto grid = TransferGrid::build(spec, T);
  std::vector<double> out(T - 1);
  for (std::size_t j = 1; j < T; ++j) out[j - 1] = k2e / kTwoPi * std::norm(grid.psi[j]);
  return out;
}

BiGrid bispectrum_grid(const ModelSpec& spec, double k3e, std::size_t T) {
  const auto grid = TransferGrid::build(spec, T);
  const double scale = k3e / (kTwoPi * kTwoPi);
  BiGrid out(T - 1, T - 1);
  for (std::size_t j = 1; j < T; ++j)
    for (std::size_t i = 1; i < T; ++i)
      out(j - 1, i - 1) = scale * grid.psi[j] * grid.psi[i] * grid.neg_sum(j, i);
  return out;
}

}  // namespace mixar
