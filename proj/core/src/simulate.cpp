#include <algorithm>
#include <cmath>

#include "mixar/error.hpp"
#include "mixar/simulate.hpp"

namespace mixar {

namespace {

void require_stationary(const ModelSpec& spec) {
  spec.validate();
  if (!is_stationary(spec)) throw Error(ErrorKind::Domain, spec.label() + " is not stationary");
}

std::vector<double> lag_filter(std::span<const double> c, std::span<const double> eps,
                               std::size_t burn_in) {
  if (burn_in > eps.size()) throw Error(ErrorKind::Length, "burn-in longer than the innovations");
  std::vector<double> y(eps.size());
  for (std::size_t t = 0; t < eps.size(); ++t) {
    double v = eps[t];
    for (std::size_t k = 1; k <= c.size() && k <= t; ++k) v += c[k - 1] * y[t - k];
    y[t] = v;
  }
  y.erase(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(burn_in));
  return y;
}

}  // namespace

std::size_t burn_in_length(const ModelSpec& spec) {
  const double m = min_root_modulus(spec);
  if (!std::isfinite(m)) return 200;
  if (!(m > 1.0)) throw Error(ErrorKind::Domain, "burn-in needs a stationary spec");
  return std::max<std::size_t>(200, static_cast<std::size_t>(std::ceil(10.0 / std::log(m))));
}

std::vector<double> gen_causal(const ModelSpec& spec, std::span<const double> eps,
                               std::size_t burn_in) {
  require_stationary(spec);
  if (spec.family != Family::Causal) throw Error(ErrorKind::Order, "gen_causal needs a causal spec");
  return lag_filter(spec.phi, eps, burn_in);
}

std::vector<double> gen_noncausal(const ModelSpec& spec, std::span<const double> eps,
                                  std::size_t burn_in) {
  require_stationary(spec);
  if (spec.family != Family::Noncausal) {
    throw Error(ErrorKind::Order, "gen_noncausal needs a noncausal spec");
  }
  std::vector<double> rev(eps.rbegin(), eps.rend());
  auto y = lag_filter(spec.varphi, rev, burn_in);
  std::reverse(y.begin(), y.end());
  return y;
}

std::vector<double> gen_mar(const ModelSpec& spec, std::span<const double> eps,
                            std::size_t burn_in) {
  require_stationary(spec);
  if (spec.family != Family::Mixed) throw Error(ErrorKind::Order, "gen_mar needs a mixed spec");
  std::vector<double> rev(eps.rbegin(), eps.rend());
  auto u = lag_filter(spec.varphi, rev, burn_in);
  std::reverse(u.begin(), u.end());
  return lag_filter(spec.phi, u, burn_in);
}

std::vector<double> generate(const ModelSpec& spec, std::span<const double> eps,
                             std::size_t burn_in) {
  switch (spec.family) {
    case Family::Causal: return gen_causal(spec, eps, burn_in);
    case Family::Noncausal: return gen_noncausal(spec, eps, burn_in);
    case Family::Mixed: return gen_mar(spec, eps, burn_in);
  }
  throw Error(ErrorKind::Order, "unknown family");
}

std::vector<double> simulate_series(const ModelSpec& spec, const StableParams& params,
                                    std::size_t T, std::uint64_t seed) {
  require_stationary(spec);
  const std::size_t burn = burn_in_length(spec);
  const std::size_t passes = spec.family == Family::Mixed ? 2 : 1;
  const auto eps = stable_sample(params, T + passes * burn, seed);
  return generate(spec, eps, burn);
}

}  // namespace mixar
