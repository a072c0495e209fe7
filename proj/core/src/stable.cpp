#include <cmath>
#include <numbers>
#include <random>

#include "mixar/error.hpp"
#include "mixar/simulate.hpp"

namespace mixar {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform on the open interval (0, 1) from the top 53 bits.
double open_uniform(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

StableParams::StableParams(double a, double b, double g, double d)
    : alpha(a), beta(b), gamma(g), delta(d) {
  validate();
}

void StableParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw Error(ErrorKind::Parameter, "alpha must lie in (0, 2]");
  if (!(beta >= -1.0 && beta <= 1.0)) throw Error(ErrorKind::Parameter, "beta must lie in [-1, 1]");
  if (!(gamma > 0.0)) throw Error(ErrorKind::Parameter, "gamma must be positive");
  if (!std::isfinite(delta)) throw Error(ErrorKind::Parameter, "delta must be finite");
}

std::uint64_t stream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> indices) {
  std::uint64_t h = splitmix64(seed);
  for (auto i : indices) h = splitmix64(h ^ splitmix64(i + 0x632be59bd9b4e019ULL));
  return h;
}

std::vector<double> stable_sample(const StableParams& params, std::size_t n, std::uint64_t seed) {
  params.validate();
  const double a = params.alpha;
  const double b = params.beta;
  constexpr double half_pi = std::numbers::pi / 2.0;

  std::mt19937_64 gen(seed);
  std::vector<double> out(n);
  if (a == 1.0) {
    const double shift = b * params.gamma * std::log(params.gamma) / half_pi + params.delta;
    for (auto& v : out) {
      const double V = std::numbers::pi * (open_uniform(gen) - 0.5);
      const double W = -std::log(open_uniform(gen));
      const double base = half_pi + b * V;
      const double x = (base * std::tan(V) - b * std::log(half_pi * W * std::cos(V) / base)) / half_pi;
      v = params.gamma * x + shift;
    }
    return out;
  }
  const double t = b * std::tan(half_pi * a);
  const double B = std::atan(t) / a;
  const double S = std::pow(1.0 + t * t, 1.0 / (2.0 * a));
  for (auto& v : out) {
    const double V = std::numbers::pi * (open_uniform(gen) - 0.5);
    const double W = -std::log(open_uniform(gen));
    const double x = S * std::sin(a * (V + B)) / std::pow(std::cos(V), 1.0 / a) *
                     std::pow(std::cos(V - a * (V + B)) / W, (1.0 - a) / a);
    v = params.gamma * x + params.delta;
  }
  return out;
}

}  // namespace mixar
