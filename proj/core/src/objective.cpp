#include "mixar/objective.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

#include "kahan.hpp"
#include "mixar/error.hpp"
#include "mixar/parallel.hpp"

namespace mixar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDenomFloor = 1e-12;

}  // namespace

std::vector<double> yule_walker(std::span<const double> y, std::size_t p) {
  const std::size_t n = y.size();
  std::vector<double> acov(p + 1, 0.0);
  for (std::size_t k = 0; k <= p; ++k) {
    for (std::size_t t = k; t < n; ++t) acov[k] += y[t] * y[t - k];
    acov[k] /= static_cast<double>(n);
  }
  if (!(acov[0] > 0.0)) throw Error(ErrorKind::Degenerate, "zero variance series");
  // Levinson-Durbin recursion.
  std::vector<double> a(p, 0.0), prev(p, 0.0);
  double err = acov[0];
  for (std::size_t k = 1; k <= p; ++k) {
    double acc = acov[k];
    for (std::size_t j = 1; j < k; ++j) acc -= prev[j - 1] * acov[k - j];
    const double refl = acc / err;
    a[k - 1] = refl;
    for (std::size_t j = 1; j < k; ++j) a[j - 1] = prev[j - 1] - refl * prev[k - j - 1];
    err *= (1.0 - refl * refl);
    prev = a;
  }
  return a;
}

PreliminaryFit preliminary_fit(std::span<const double> y, std::size_t p) {
  const std::size_t T = y.size();
  if (p == 0) throw Error(ErrorKind::Order, "preliminary fit needs p >= 1");
  if (T <= 10 * p) throw Error(ErrorKind::Length, "preliminary fit needs T > 10 p");

  const std::size_t rows = T - p;
  Eigen::MatrixXd X(rows, p);
  Eigen::VectorXd target(rows);
  for (std::size_t t = p; t < T; ++t) {
    target(t - p) = y[t];
    for (std::size_t k = 1; k <= p; ++k) X(t - p, k - 1) = y[t - k];
  }
  const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(target);

  PreliminaryFit fit;
  fit.theta_bar.assign(beta.data(), beta.data() + p);
  bool ok = beta.allFinite() && check_stationary(fit.theta_bar).stationary;
  if (!ok) {
    fit.theta_bar = yule_walker(y, p);
    fit.yule_walker = true;
    if (!check_stationary(fit.theta_bar).stationary) {
      throw Error(ErrorKind::Domain, "preliminary AR fit is not stationary");
    }
  }
  const auto I2 = periodogram_from_dft(dft(y));
  fit.k2_bar = k2_star(ModelSpec::causal(fit.theta_bar), I2);
  return fit;
}

ObjectiveContext ObjectiveContext::build(std::span<const double> y, std::size_t p,
                                         const ObjectiveOptions& options) {
  const auto centered = center(y);
  return build(centered, preliminary_fit(centered, p), options);
}

ObjectiveContext ObjectiveContext::build(std::span<const double> y, const PreliminaryFit& prelim,
                                         const ObjectiveOptions& options) {
  if (!(options.m >= 0.0 && options.m <= 1.0)) {
    throw Error(ErrorKind::Parameter, "weight m must lie in [0, 1]");
  }
  if (!check_stationary(prelim.theta_bar).stationary) {
    throw Error(ErrorKind::Domain, "preliminary estimate is not stationary");
  }
  if (!(prelim.k2_bar > 0.0)) throw Error(ErrorKind::Degenerate, "k2_bar must be positive");

  ObjectiveContext ctx;
  ctx.options_ = options;
  const auto summaries = summarize(y, options.threads);
  ctx.T_ = summaries.T;
  ctx.y_ = center(y);
  ctx.I2_ = summaries.I2;
  ctx.I3_ = summaries.I3;
  ctx.prelim_ = prelim;
  ctx.m_ = options.m;
  ctx.n_ = 1.0 - options.m;

  const double t = static_cast<double>(ctx.T_);
  const double k2 = prelim.k2_bar;
  ctx.A2T_ = ctx.m_ * kTwoPi * kTwoPi / (4.0 * k2 * k2 * t);
  ctx.A3T_ = ctx.n_ * std::pow(kTwoPi, 4) / (6.0 * k2 * k2 * k2 * t * t);

  const auto bar = TransferGrid::build(ModelSpec::causal(prelim.theta_bar), ctx.T_);
  const std::size_t n = ctx.T_ - 1;
  ctx.denom2_.resize(n);
  for (std::size_t j = 1; j <= n; ++j) {
    ctx.denom2_[j - 1] = std::norm(bar.psi[j]);
    if (ctx.denom2_[j - 1] < kDenomFloor) ++ctx.skipped2_;
  }

  ctx.w3_.resize(n, n);
  parallel_for(n, options.threads, [&](std::size_t row) {
    const std::size_t j = row + 1;
    for (std::size_t i = 1; i <= n; ++i) {
      const Complex prod = bar.psi[j] * bar.psi[i] * bar.neg_sum(j, i);
      const double d = options.weight == ThirdOrderWeight::SquaredModulus ? std::norm(prod)
                                                                           : prod.real();
      ctx.w3_(row, i - 1) = std::abs(d) < kDenomFloor ? 0.0 : 1.0 / d;
    }
  });
  return ctx;
}

RtTerms ObjectiveContext::terms(const ModelSpec& spec) const {
  if (!is_stationary(spec)) throw Error(ErrorKind::Domain, "spec is not stationary");
  const auto grid = TransferGrid::build(spec, T_);
  const std::size_t n = T_ - 1;
  RtTerms out;

  out.k2 = k2_star(grid, I2_);
  const double s2_scale = out.k2 / kTwoPi;
  KahanSum second;
  for (std::size_t j = 1; j <= n; ++j) {
    const double d = denom2_[j - 1];
    if (d < kDenomFloor) continue;
    const double r = (I2_[j - 1] - s2_scale * std::norm(grid.psi[j])) / d;
    second.add(r * r);
  }
  out.second = A2T_ * second.sum;
  if (n_ == 0.0) return out;

  const bool upper = options_.symmetric_reduction;
  const double t = static_cast<double>(T_);

  // Profiled third cumulant, same summation order as the criterion below.
  KahanSum k3_sum;
  for (std::size_t j = 1; j <= n; ++j) {
    const Complex inv_j = grid.inverse[j];
    for (std::size_t i = upper ? j : 1; i <= n; ++i) {
      const Complex w = inv_j * grid.inverse[i] * std::conj(grid.inverse[(j + i) % T_]);
      const Complex v = I3_(j - 1, i - 1);
      const double term = v.real() * w.real() - v.imag() * w.imag();
      k3_sum.add(upper && i != j ? 2.0 * term : term);
    }
  }
  out.k3 = kTwoPi * kTwoPi / (t * t) * k3_sum.sum;

  const double s3_scale = out.k3 / (kTwoPi * kTwoPi);
  KahanSum third;
  for (std::size_t j = 1; j <= n; ++j) {
    const Complex psi_j = s3_scale * grid.psi[j];
    for (std::size_t i = upper ? j : 1; i <= n; ++i) {
      const Complex s3 = psi_j * grid.psi[i] * grid.neg_sum(j, i);
      const double term = std::norm(I3_(j - 1, i - 1) - s3) * w3_(j - 1, i - 1);
      third.add(upper && i != j ? 2.0 * term : term);
    }
  }
  out.third = A3T_ * third.sum;
  return out;
}

double ObjectiveContext::rt(const ModelSpec& spec) const {
  if (!is_stationary(spec)) return std::numeric_limits<double>::infinity();
  try {
    const double v = terms(spec).total();
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace mixar
