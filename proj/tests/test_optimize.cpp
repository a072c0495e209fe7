#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "mixar/error.hpp"
#include "mixar/optimize.hpp"
#include "mixar/pipeline.hpp"
#include "mixar/simulate.hpp"
#include "mixar/strategy.hpp"

using namespace mixar;
using mixar::testing::Rng;

TEST(Bfgs, QuadraticInFewIterations) {
  const Objective f = [](std::span<const double> x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + 2.0 * (x[1] + 2.0) * (x[1] + 2.0);
  };
  const auto res = minimize_bfgs(f, {0.0, 0.0});
  EXPECT_TRUE(res.converged);
  EXPECT_LE(res.iterations, 3u);
  EXPECT_NEAR(res.x[0], 1.0, 1e-6);
  EXPECT_NEAR(res.x[1], -2.0, 1e-6);
}

TEST(Bfgs, Rosenbrock) {
  const Objective f = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const auto res = minimize_bfgs(f, {-1.2, 1.0});
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(res.x[0], 1.0, 1e-4);
  EXPECT_NEAR(res.x[1], 1.0, 1e-4);
}

TEST(Bfgs, InfiniteRegionsAreAvoided) {
  // Finite only on |x| < 1; the minimum sits near the boundary.
  const Objective f = [](std::span<const double> x) {
    if (std::abs(x[0]) >= 1.0) return std::numeric_limits<double>::infinity();
    return (x[0] - 0.9) * (x[0] - 0.9);
  };
  const auto res = minimize_bfgs(f, {0.0});
  EXPECT_NEAR(res.x[0], 0.9, 1e-5);
  EXPECT_TRUE(std::isfinite(res.f));
}

TEST(Bfgs, TraceIsJsonLines) {
  std::ostringstream trace;
  BfgsOptions o;
  o.trace = &trace;
  const Objective f = [](std::span<const double> x) { return x[0] * x[0] + 1.0; };
  minimize_bfgs(f, {3.0}, o);
  std::string line;
  std::istringstream in(trace.str());
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    EXPECT_EQ(line.front(), '{');
    EXPECT_NE(line.find("\"rt\""), std::string::npos);
  }
  EXPECT_GE(n, 1);
}

TEST(NumericGradient, MatchesAnalytic) {
  const Objective f = [](std::span<const double> x) { return std::sin(x[0]) * std::exp(x[1]); };
  const std::vector<double> x{0.4, -0.3};
  const auto g = numeric_gradient(f, x, f(x));
  EXPECT_NEAR(g[0], std::cos(0.4) * std::exp(-0.3), 1e-8);
  EXPECT_NEAR(g[1], std::sin(0.4) * std::exp(-0.3), 1e-8);
}

// Central and one-sided differences of R_T agree to first order in h.
TEST(NumericGradient, RtSelfConsistency) {
  const auto y = simulate_series(ModelSpec::mixed({0.7}, {0.2}), StableParams{}, 200, 9);
  const auto ctx = ObjectiveContext::build(y, 2);
  const Objective f = [&](std::span<const double> p) {
    return ctx.rt(ModelSpec::from_params(Family::Mixed, 1, 1, p));
  };
  Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    const std::vector<double> x{mixar::testing::uniform(rng, -0.8, 0.8), mixar::testing::uniform(rng, -0.8, 0.8)};
    const double fx = f(x);
    const auto g = numeric_gradient(f, x, fx, 1e-5);
    for (std::size_t i = 0; i < 2; ++i) {
      const double h = 1e-5 * std::max(1.0, std::abs(x[i]));
      auto xp = x;
      xp[i] += h;
      const double forward = (f(xp) - fx) / h;
      EXPECT_NEAR(g[i], forward, 1e-3 * std::max(1.0, std::abs(g[i])));
    }
  }
}

TEST(MinimizeRt, NonStationaryStartIsDomainError) {
  const auto y = simulate_series(ModelSpec::causal({0.5}), StableParams{}, 120, 1);
  const auto ctx = ObjectiveContext::build(y, 1);
  try {
    minimize_rt(ctx, Family::Causal, 1, 0, std::vector<double>{1.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(MinimizeRt, RestartAtSolutionStaysPut) {
  const auto y = simulate_series(ModelSpec::mixed({0.7}, {0.2}), StableParams{}, 300, 2);
  const auto ctx = ObjectiveContext::build(y, 2);
  const auto first = minimize_rt(ctx, Family::Mixed, 1, 1, std::vector<double>{0.5, 0.5});
  ASSERT_TRUE(first.converged);
  const auto again = minimize_rt(ctx, Family::Mixed, 1, 1, first.spec.params());
  EXPECT_NEAR(again.spec.phi[0], first.spec.phi[0], 1e-4);
  EXPECT_NEAR(again.spec.varphi[0], first.spec.varphi[0], 1e-4);
  EXPECT_LE(again.rt, first.rt + 1e-12);
}

// Property: a converged result is always stationary.
TEST(MinimizeRt, ConvergedImpliesStationary) {
  Rng rng(42);
  const auto y = simulate_series(ModelSpec::causal({0.7, 0.2}), StableParams{}, 200, 3);
  const auto ctx = ObjectiveContext::build(y, 2);
  for (int k = 0; k < 20; ++k) {
    const auto start = mixar::testing::stationary_spec(rng, Family::Causal, 2, 0);
    const auto res = minimize_rt(ctx, Family::Causal, 2, 0, start.params());
    if (res.converged) EXPECT_TRUE(is_stationary(res.spec));
  }
}

TEST(Eta, ClosedForms) {
  EXPECT_NEAR(eta_integral(ModelSpec::causal({0.7}))[0], 1.0 / 0.51, 1e-9);
  EXPECT_NEAR(eta_integral(ModelSpec::causal({0.0}))[0], 1.0, 1e-12);
  EXPECT_NEAR(eta_integral(ModelSpec::noncausal({0.7}))[0], eta_integral(ModelSpec::causal({0.7}))[0], 1e-10);
}

TEST(Eta, Ar2DiagonalMatchesAutocovariance) {
  // For AR(2) the diagonal of eta is gamma(0) of the process with unit
  // innovation variance.
  const double a = 0.5, b = 0.3;
  const double rho1 = a / (1.0 - b);
  const double gamma0 = 1.0 / (1.0 - a * rho1 - b * (a * rho1 + b));
  const auto d = eta_integral(ModelSpec::causal({a, b}));
  EXPECT_NEAR(d[0], gamma0, 1e-9);
  EXPECT_NEAR(d[1], gamma0, 1e-9);
}

TEST(Eta, MatrixSymmetric) {
  const auto e = eta_matrix(ModelSpec::mixed({0.5, -0.2}, {0.4}));
  EXPECT_NEAR((e - e.transpose()).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(AsymptoticSe, GaussianCase) {
  for (double m : {0.25, 0.5, 1.0}) {
    const auto se = asymptotic_se(ModelSpec::causal({0.7}), 0.0, 0.0, m, 1.0 - m, 200);
    EXPECT_NEAR(se[0], std::sqrt((1.0 - 0.49) / 200.0), 1e-10);
  }
}

TEST(AsymptoticSe, KurtosisOnlyEntersThroughSkewness) {
  const auto a = asymptotic_se(ModelSpec::causal({0.7}), 0.0, 3.0, 1.0, 0.0, 100);
  EXPECT_NEAR(a[0], std::sqrt(0.51 / 100.0), 1e-10);
}

TEST(AsymptoticSe, DecreasesWithT) {
  double prev = 1e9;
  for (std::size_t T : {50, 100, 400, 1600}) {
    const double se = asymptotic_se(ModelSpec::mixed({0.5}, {0.8}), 0.4, 2.0, 0.5, 0.5, T)[1];
    EXPECT_LT(se, prev);
    prev = se;
  }
  const double r = asymptotic_se(ModelSpec::causal({0.5}), 0.4, 2.0, 0.5, 0.5, 100)[0] /
                   asymptotic_se(ModelSpec::causal({0.5}), 0.4, 2.0, 0.5, 0.5, 400)[0];
  EXPECT_NEAR(r, 2.0, 1e-12);
}

TEST(AsymptoticSe, VanishingDenominator) {
  try {
    asymptotic_se(ModelSpec::causal({0.5}), 0.0, 0.0, 0.0, 1.0, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Estimation);
  }
}

TEST(AsymptoticSe, BrentFixtureOrderOfMagnitude) {
  const auto frame = load_csv(std::string(MIXAR_DATA_DIR) + "/brent_cycle.csv", "Brent");
  const auto report = estimate_candidates(frame.values, 2);
  const auto& mar = report.candidates[1].result;
  ASSERT_EQ(mar.spec.family, Family::Mixed);
  ASSERT_EQ(mar.se.size(), 2u);
  for (double s : mar.se) {
    EXPECT_GT(s, 0.01);
    EXPECT_LT(s, 0.1);
  }
}
