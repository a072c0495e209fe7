#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mixar/model.hpp"
#include "mixar/spectral.hpp"
#include "mixar/theory.hpp"

namespace mixar {

/// Reading of the third-order denominator psi(w_j) psi(w_i) psi(-w_j - w_i)
/// evaluated at the preliminary estimate.
enum class ThirdOrderWeight {
  SquaredModulus,  // 1 / |psi psi psi|^2, always positive (default)
  RealPart,        // 1 / Re(psi psi psi), sensitivity runs only
};

struct ObjectiveOptions {
  double m = 0.5;  // weight of the spectrum term; the bispectrum term gets 1 - m
  ThirdOrderWeight weight = ThirdOrderWeight::SquaredModulus;
  bool symmetric_reduction = true;  // sum the upper triangle of the symmetric grid
  unsigned threads = 1;             // only used while building the grids
};

struct PreliminaryFit {
  std::vector<double> theta_bar;
  double k2_bar = 0.0;
  bool yule_walker = false;  // least squares was non-stationary
};

/// Least-squares (conditional Gaussian likelihood) AR(p,0) fit of a centered
/// series, falling back to Yule-Walker when the LS fit is not stationary.
/// k2_bar is k*_2 at theta_bar. Requires T > 10 p.
PreliminaryFit preliminary_fit(std::span<const double> y, std::size_t p);

/// Yule-Walker AR(p) coefficients from biased sample autocovariances.
std::vector<double> yule_walker(std::span<const double> y, std::size_t p);

/// Second- and third-order parts of R_T with the profiled cumulants.
struct RtTerms {
  double second = 0.0;  // A2T * sum (...)^2
  double third = 0.0;   // A3T * sum |...|^2 w3
  double k2 = 0.0;
  double k3 = 0.0;
  double total() const { return second + third; }
};

/// Precomputed inputs to the minimum-distance criterion for one series.
/// Immutable after construction; rt() is reentrant.
class ObjectiveContext {
 public:
  /// Centers y, runs the preliminary AR(p,0) fit and precomputes all grids.
  static ObjectiveContext build(std::span<const double> y, std::size_t p,
                                const ObjectiveOptions& options = {});

  /// Same with a caller-supplied preliminary fit (theta_bar must be stationary).
  static ObjectiveContext build(std::span<const double> y, const PreliminaryFit& prelim,
                                const ObjectiveOptions& options = {});

  /// R_T(theta); +infinity for non-stationary specs.
  double rt(const ModelSpec& spec) const;

  /// Both terms of R_T. Throws Error(Domain) for non-stationary specs.
  RtTerms terms(const ModelSpec& spec) const;

  std::size_t T() const { return T_; }
  std::span<const double> series() const { return y_; }
  const std::vector<double>& I2() const { return I2_; }
  const BiGrid& I3() const { return I3_; }
  const PreliminaryFit& preliminary() const { return prelim_; }
  const std::vector<double>& theta_bar() const { return prelim_.theta_bar; }
  double k2_bar() const { return prelim_.k2_bar; }
  double m() const { return m_; }
  double n() const { return n_; }
  double A2T() const { return A2T_; }
  double A3T() const { return A3T_; }
  bool third_order_enabled() const { return n_ > 0.0; }
  const std::vector<double>& denom2() const { return denom2_; }
  const RealGrid& w3() const { return w3_; }
  std::size_t skipped_frequencies() const { return skipped2_; }
  const ObjectiveOptions& options() const { return options_; }

 private:
  ObjectiveContext() = default;

  std::size_t T_ = 0;
  std::vector<double> y_;
  std::vector<double> I2_;
  BiGrid I3_;
  PreliminaryFit prelim_;
  double m_ = 0.5;
  double n_ = 0.5;
  double A2T_ = 0.0;
  double A3T_ = 0.0;
  std::vector<double> denom2_;
  RealGrid w3_;
  std::size_t skipped2_ = 0;
  ObjectiveOptions options_;
};

inline double rt_value(const ModelSpec& spec, const ObjectiveContext& ctx) { return ctx.rt(spec); }

}  // namespace mixar
