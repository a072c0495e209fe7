#pragma once

#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "mixar/model.hpp"

namespace mixar {

/// Alpha-stable law in the S1 parametrization: stability alpha in (0, 2],
/// skewness beta in [-1, 1], scale gamma > 0, location delta.
/// At alpha = 2 the law is Gaussian with variance 2 gamma^2.
struct StableParams {
  double alpha = 1.5;
  double beta = 0.25;
  double gamma = 1.0;
  double delta = 0.0;

  StableParams() = default;
  /// Throws Error(Parameter) outside the ranges above.
  StableParams(double alpha, double beta, double gamma = 1.0, double delta = 0.0);
  void validate() const;
};

/// Mixes a base seed with stream indices (splitmix64), so each replication
/// owns an independent generator regardless of scheduling.
std::uint64_t stream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> indices);

/// n i.i.d. draws by the Chambers-Mallows-Stuck transform. Bit-identical for a
/// given seed on every platform with IEEE doubles and the same libm.
std::vector<double> stable_sample(const StableParams& params, std::size_t n, std::uint64_t seed);

/// max(200, ceil(10 / log(min root modulus))); 200 for white noise.
std::size_t burn_in_length(const ModelSpec& spec);

/// y_t = sum phi_k y_{t-k} + eps_t from zero initial values; the first
/// burn_in values are dropped.
std::vector<double> gen_causal(const ModelSpec& spec, std::span<const double> eps,
                               std::size_t burn_in = 0);

/// y_t = sum varphi_k y_{t+k} + eps_t, run backward from the end; the last
/// burn_in values are dropped.
std::vector<double> gen_noncausal(const ModelSpec& spec, std::span<const double> eps,
                                  std::size_t burn_in = 0);

/// Lead filter (as gen_noncausal) followed by the lag filter, each dropping
/// burn_in values.
std::vector<double> gen_mar(const ModelSpec& spec, std::span<const double> eps,
                            std::size_t burn_in = 0);

/// Dispatches on the family.
std::vector<double> generate(const ModelSpec& spec, std::span<const double> eps,
                             std::size_t burn_in = 0);

/// T observations of the model driven by stable innovations, burn-in included.
std::vector<double> simulate_series(const ModelSpec& spec, const StableParams& params,
                                    std::size_t T, std::uint64_t seed);

}  // namespace mixar
