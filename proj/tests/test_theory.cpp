#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "mixar/error.hpp"
#include "mixar/simulate.hpp"
#include "mixar/spectral.hpp"
#include "mixar/theory.hpp"

using namespace mixar;
using mixar::testing::Rng;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Transfer, Examples) {
  EXPECT_NEAR(std::abs(transfer(ModelSpec::causal({0.7}), 0.0) - Complex(10.0 / 3.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(transfer(ModelSpec::noncausal({0.7}), 0.0) - Complex(10.0 / 3.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(transfer(ModelSpec::mixed({0.7}, {0.2}), kPi) - Complex(0.490196078431372)), 0.0, 1e-12);
}

TEST(Transfer, PoleIsDomainError) {
  try {
    transfer(ModelSpec::causal({1.0}), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(Spectrum, Ar1AtZero) {
  EXPECT_NEAR(spectrum(ModelSpec::causal({0.7}), 1.0, 0.0), 1.0 / (2.0 * kPi) / 0.09, 1e-12);
  EXPECT_NEAR(spectrum(ModelSpec::causal({0.7}), 1.0, 0.0), 1.76839, 1e-5);
}

TEST(Spectrum, Ar1ClosedForm) {
  for (double w = 0.0; w < 2.0 * kPi; w += 0.1) {
    const double oracle = 1.0 / (2.0 * kPi) / (1.0 - 1.4 * std::cos(w) + 0.49);
    EXPECT_NEAR(spectrum(ModelSpec::causal({0.7}), 1.0, w), oracle, 1e-12);
  }
}

// S2 mirror equality on random specs and a dense grid.
TEST(Spectrum, MirrorEqualityProperty) {
  Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    const auto c = mixar::testing::stationary_poly(rng, 1 + k % 3);
    const auto sc = ModelSpec::causal(c), sn = ModelSpec::noncausal(c);
    for (int j = 0; j < 512; ++j) {
      const double w = 2.0 * kPi * j / 512.0;
      EXPECT_NEAR(spectrum(sc, 1.3, w), spectrum(sn, 1.3, w), 1e-12 * std::max(1.0, spectrum(sc, 1.3, w)));
    }
  }
}

// Spectrum against the Fourier sum of the theoretical autocovariance of the
// MAR(1,1): gamma(h) = sum_k psi_k psi_{k+h} with two-sided psi weights.
TEST(Spectrum, MixedMatchesAutocovarianceSum) {
  const auto spec = ModelSpec::mixed({0.7}, {0.2});
  const int K = 200;
  std::vector<double> psi(2 * K + 1);  // index k + K, k in [-K, K]
  for (int k = -K; k <= K; ++k) {
    // (1 - 0.7L)^-1 (1 - 0.2F)^-1 = sum_{a,b>=0} 0.7^a 0.2^b L^{a-b}
    double v = 0.0;
    for (int b = std::max(0, -k); b <= K; ++b) {
      const int a = k + b;
      if (a > 2 * K) break;
      v += std::pow(0.7, a) * std::pow(0.2, b);
    }
    psi[k + K] = v;
  }
  auto gamma = [&](int h) {
    double g = 0.0;
    for (int k = -K; k + h <= K; ++k)
      if (k >= -K) g += psi[k + K] * psi[k + h + K];
    return g;
  };
  for (double w : {0.0, 0.5, 1.3, 2.7}) {
    double s = gamma(0);
    for (int h = 1; h < 120; ++h) s += 2.0 * gamma(h) * std::cos(h * w);
    s /= 2.0 * kPi;
    EXPECT_NEAR(spectrum(spec, 1.0, w) / s, 1.0, 1e-6);
  }
}

TEST(Bispectrum, ZeroThirdCumulant) {
  EXPECT_EQ(bispectrum(ModelSpec::mixed({0.7}, {0.2}), 0.0, 0.3, 1.1), Complex(0.0));
}

TEST(Bispectrum, Ar1AtOrigin) {
  const auto v = bispectrum(ModelSpec::causal({0.7}), 1.0, 0.0, 0.0);
  EXPECT_NEAR(v.real(), std::pow(10.0 / 3.0, 3) / (4.0 * kPi * kPi), 1e-12);
  EXPECT_NEAR(v.real(), 0.938159, 1e-6);
  EXPECT_NEAR(v.imag(), 0.0, 1e-14);
}

TEST(Bispectrum, MirrorPairsDiffer) {
  const double w1 = 2.0 * kPi / 8.0, w2 = 2.0 * 2.0 * kPi / 8.0;
  const auto c = bispectrum(ModelSpec::causal({0.7}), 1.0, w1, w2);
  const auto n = bispectrum(ModelSpec::noncausal({0.7}), 1.0, w1, w2);
  EXPECT_GT(std::abs(c - n), 1e-3);
  // The mirror is the complex conjugate.
  EXPECT_NEAR(std::abs(n - std::conj(c)), 0.0, 1e-12);
}

TEST(Bispectrum, SymmetricInArguments) {
  Rng rng(22);
  for (int k = 0; k < 100; ++k) {
    const auto spec = mixar::testing::stationary_spec(rng, Family::Mixed, 1, 2);
    const double a = mixar::testing::uniform(rng, 0, 2 * kPi), b = mixar::testing::uniform(rng, 0, 2 * kPi);
    EXPECT_LT(std::abs(bispectrum(spec, 1.0, a, b) - bispectrum(spec, 1.0, b, a)),
              1e-13 * std::max(1.0, std::abs(bispectrum(spec, 1.0, a, b))));
  }
}

TEST(BispectrumGrid, MirrorSupNormAboveThreshold) {
  const auto c = bispectrum_grid(ModelSpec::causal({0.7}), 1.0, 64);
  const auto n = bispectrum_grid(ModelSpec::noncausal({0.7}), 1.0, 64);
  EXPECT_GT((c - n).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(K2Star, TheoreticalInput) {
  const auto spec = ModelSpec::mixed({0.5}, {0.3});
  const std::size_t T = 100;
  const auto I2 = spectrum_grid(spec, 1.7, T);
  EXPECT_NEAR(k2_star(spec, I2), 1.7 * double(T - 1) / double(T), 1e-12);
}

TEST(K2Star, WhiteNoiseIsParseval) {
  Rng rng(23);
  const auto y = center(mixar::testing::gaussian(rng, 200, 2.0));
  const auto I2 = periodogram(y);
  double var = 0.0;
  for (double v : y) var += v * v / 200.0;
  EXPECT_NEAR(k2_star(ModelSpec::causal({}), I2), var, 1e-10);
}

TEST(K2Star, SimulatedBand) {
  Rng rng(24);
  double mean = 0.0;
  const int reps = 50;
  for (int k = 0; k < reps; ++k) {
    const auto eps = mixar::testing::gaussian(rng, 700);
    const auto y = center(gen_causal(ModelSpec::causal({0.7}), eps, 200));
    mean += k2_star(ModelSpec::causal({0.7}), periodogram(y)) / reps;
  }
  EXPECT_GT(mean, 0.8);
  EXPECT_LT(mean, 1.2);
}

TEST(K2Star, LinearInI2) {
  Rng rng(25);
  const auto y = center(mixar::testing::gaussian(rng, 64));
  auto I2 = periodogram(y);
  const auto spec = ModelSpec::noncausal({0.4});
  const double a = k2_star(spec, I2);
  for (auto& v : I2) v *= 3.0;
  EXPECT_NEAR(k2_star(spec, I2), 3.0 * a, 1e-12);
  EXPECT_EQ(k2_star(spec, I2), k2_star(spec, I2));
}

TEST(K3Star, ZeroAndTheoretical) {
  const auto spec = ModelSpec::mixed({0.5}, {0.3});
  const std::size_t T = 40;
  EXPECT_EQ(k3_star(spec, BiGrid::Zero(T - 1, T - 1)), 0.0);
  const auto I3 = bispectrum_grid(spec, 0.8, T);
  const double f = double(T - 1) / double(T);
  EXPECT_NEAR(k3_star(spec, I3), 0.8 * f * f, 1e-12);
  EXPECT_NEAR(k3_star(spec, BiGrid(I3 * 2.5)), 2.0 * f * f, 1e-12);
}

TEST(K3Star, ExponentialInnovationsBand) {
  Rng rng(26);
  double mean = 0.0;
  const int reps = 30;
  for (int k = 0; k < reps; ++k) {
    const auto eps = mixar::testing::exponential(rng, 700);
    const auto y = center(gen_causal(ModelSpec::causal({0.7}), eps, 200));
    mean += k3_star(ModelSpec::causal({0.7}), biperiodogram(y)) / reps;
  }
  EXPECT_NEAR(mean, 2.0, 0.4);
}
