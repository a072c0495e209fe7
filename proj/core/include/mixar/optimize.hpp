#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mixar/model.hpp"
#include "mixar/objective.hpp"

namespace mixar {

struct BfgsOptions {
  double gtol = 1e-6;          // on the gradient norm, scaled by max(1, |f|)
  std::size_t max_iter = 500;
  double step_rel = 1e-5;      // finite-difference step h = step_rel * max(1, |x_i|)
  std::ostream* trace = nullptr;  // one JSON object per iteration when set
};

struct BfgsResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
  std::string message;
};

using Objective = std::function<double(std::span<const double>)>;

/// Central-difference gradient; a coordinate whose two-sided stencil leaves
/// the finite region falls back to the one-sided difference that stays in it.
std::vector<double> numeric_gradient(const Objective& f, std::span<const double> x, double fx,
                                     double step_rel = 1e-5);

/// BFGS on the inverse Hessian with numerical gradients. Infinite values
/// reject a trial point and shrink the step.
BfgsResult minimize_bfgs(const Objective& f, std::vector<double> x0, const BfgsOptions& options = {});

struct EstimationResult {
  ModelSpec spec;
  double rt = 0.0;
  std::vector<double> se;  // empty when the residual sample is too short
  double sse = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double grad_norm = 0.0;
  Cumulants residual_cumulants;
  std::string message;
};

/// Minimizes R_T over one family and order starting at theta0 (lag
/// coefficients first). Throws Error(Domain) for a non-stationary start.
EstimationResult minimize_rt(const ObjectiveContext& ctx, Family family, std::size_t r,
                             std::size_t s, std::span<const double> theta0,
                             const BfgsOptions& options = {});

/// eta_ab = int_0^1 Re[d_a log psi(w) conj(d_b log psi(w))] dw, w on the unit
/// interval, via adaptive Gauss-Kronrod at tolerance 1e-8.
Eigen::MatrixXd eta_matrix(const ModelSpec& spec);

/// Diagonal of eta_matrix.
std::vector<double> eta_integral(const ModelSpec& spec);

/// Per-coefficient asymptotic standard errors from the diagonal of eta.
/// zeta is the standardized third cumulant, kappa the excess kurtosis.
std::vector<double> asymptotic_se(const ModelSpec& spec, double zeta, double kappa, double m,
                                  double n, std::size_t T);

/// Same from precomputed eta diagonal entries.
std::vector<double> asymptotic_se(std::span<const double> eta_diag, double zeta, double kappa,
                                  double m, double n, std::size_t T);

}  // namespace mixar
