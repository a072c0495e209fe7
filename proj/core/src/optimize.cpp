#include "mixar/optimize.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "log.hpp"
#include "mixar/error.hpp"

namespace mixar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kArmijo = 1e-4;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::vector<double> axpy(std::span<const double> x, double a, std::span<const double> d) {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * d[i];
  return out;
}

void write_trace(std::ostream* out, std::size_t it, double f, double g) {
  if (out == nullptr) return;
  char buf[128];
  std::snprintf(buf, sizeof buf, "{\"iteration\":%zu,\"rt\":%.17g,\"grad_norm\":%.17g}\n", it, f, g);
  *out << buf;
}

struct LineResult {
  double alpha = 0.0;
  double f = kInf;
  bool ok = false;
};

// Step along d from f0 with directional slope < 0. Tries alpha = 1 (halved
// while infinite), then the minimizer of the interpolating parabola, keeping
// the best Armijo point; backtracks with interpolation otherwise.
LineResult line_search(const Objective& f, std::span<const double> x, std::span<const double> d,
                       double f0, double slope) {
  LineResult best;
  auto consider = [&](double a, double fa) {
    if (std::isfinite(fa) && fa <= f0 + kArmijo * a * slope && fa < best.f) {
      best = {a, fa, true};
    }
  };

  double a = 1.0;
  double fa = f(axpy(x, a, d));
  for (int k = 0; k < 60 && !std::isfinite(fa); ++k) {
    a *= 0.5;
    fa = f(axpy(x, a, d));
  }
  if (!std::isfinite(fa)) return best;
  consider(a, fa);

  for (int k = 0; k < 40; ++k) {
    const double curv = fa - f0 - slope * a;
    double aq = curv > 0.0 ? -slope * a * a / (2.0 * curv) : 2.0 * a;
    if (!best.ok) aq = std::clamp(aq, 0.1 * a, 0.5 * a);
    else if (!(aq > 0.0) || std::abs(aq - a) < 1e-12 * a) break;
    const double fq = f(axpy(x, aq, d));
    if (best.ok) {
      consider(aq, fq);
      break;
    }
    a = aq;
    fa = fq;
    if (!std::isfinite(fa)) {
      fa = f0 + 1.0;  // treat as a large value so the next interpolation shrinks
      continue;
    }
    consider(a, fa);
  }
  return best;
}

}  // namespace

std::vector<double> numeric_gradient(const Objective& f, std::span<const double> x, double fx,
                                     double step_rel) {
  std::vector<double> g(x.size(), 0.0);
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = step_rel * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    if (std::isfinite(fp) && std::isfinite(fm)) g[i] = (fp - fm) / (2.0 * h);
    else if (std::isfinite(fp)) g[i] = (fp - fx) / h;
    else if (std::isfinite(fm)) g[i] = (fx - fm) / h;
    else g[i] = 0.0;
  }
  return g;
}

BfgsResult minimize_bfgs(const Objective& f, std::vector<double> x0, const BfgsOptions& options) {
  const std::size_t k = x0.size();
  BfgsResult res;
  res.x = std::move(x0);
  res.f = f(res.x);
  if (!std::isfinite(res.f)) {
    res.message = "infinite objective at the start";
    return res;
  }
  if (k == 0) {
    res.converged = true;
    res.message = "no free parameters";
    return res;
  }

  auto tolerance = [&](double fv) { return options.gtol * std::max(1.0, std::abs(fv)); };
  auto fresh_hessian = [&](double fv) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Identity(k, k) / std::max(1.0, std::abs(fv)));
  };

  std::vector<double> g = numeric_gradient(f, res.x, res.f, options.step_rel);
  res.grad_norm = norm(g);
  Eigen::MatrixXd H = fresh_hessian(res.f);
  write_trace(options.trace, 0, res.f, res.grad_norm);

  bool restarted = false;
  while (res.iterations < options.max_iter) {
    if (res.grad_norm <= tolerance(res.f)) {
      res.converged = true;
      res.message = "gradient below tolerance";
      return res;
    }
    Eigen::Map<const Eigen::VectorXd> gv(g.data(), static_cast<Eigen::Index>(k));
    Eigen::VectorXd dv = -H * gv;
    double slope = dv.dot(gv);
    if (!(slope < 0.0)) {
      H = fresh_hessian(res.f);
      dv = -H * gv;
      slope = dv.dot(gv);
    }
    std::vector<double> d(dv.data(), dv.data() + k);
    const LineResult ls = line_search(f, res.x, d, res.f, slope);
    if (!ls.ok) {
      if (!restarted) {
        // Retry once along the scaled steepest descent direction.
        H = fresh_hessian(res.f);
        restarted = true;
        continue;
      }
      res.message = "line search found no acceptable step";
      return res;
    }
    restarted = false;

    std::vector<double> x1 = axpy(res.x, ls.alpha, d);
    std::vector<double> g1 = numeric_gradient(f, x1, ls.f, options.step_rel);
    Eigen::VectorXd sv(k), yv(k);
    for (std::size_t i = 0; i < k; ++i) {
      sv(static_cast<Eigen::Index>(i)) = x1[i] - res.x[i];
      yv(static_cast<Eigen::Index>(i)) = g1[i] - g[i];
    }
    const double sy = sv.dot(yv);
    if (sy > 1e-12 * sv.norm() * yv.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(k, k);
      H = (I - rho * sv * yv.transpose()) * H * (I - rho * yv * sv.transpose()) +
          rho * sv * sv.transpose();
    }

    res.x = std::move(x1);
    res.f = ls.f;
    g = std::move(g1);
    res.grad_norm = norm(g);
    ++res.iterations;
    write_trace(options.trace, res.iterations, res.f, res.grad_norm);
  }
  res.converged = res.grad_norm <= tolerance(res.f);
  res.message = res.converged ? "gradient below tolerance" : "iteration limit reached";
  return res;
}

EstimationResult minimize_rt(const ObjectiveContext& ctx, Family family, std::size_t r,
                             std::size_t s, std::span<const double> theta0,
                             const BfgsOptions& options) {
  const ModelSpec start = ModelSpec::from_params(family, r, s, theta0);
  if (!is_stationary(start)) throw Error(ErrorKind::Domain, "start " + start.label() + " is not stationary");

  const Objective f = [&](std::span<const double> p) {
    return ctx.rt(ModelSpec::from_params(family, r, s, p));
  };
  const BfgsResult bfgs = minimize_bfgs(f, std::vector<double>(theta0.begin(), theta0.end()), options);

  EstimationResult out;
  out.spec = ModelSpec::from_params(family, r, s, bfgs.x);
  out.rt = bfgs.f;
  out.iterations = bfgs.iterations;
  out.grad_norm = bfgs.grad_norm;
  out.converged = bfgs.converged && is_stationary(out.spec);
  out.message = bfgs.message;

  const Residuals res = residuals(out.spec, ctx.series());
  out.sse = res.sse;
  try {
    out.residual_cumulants = sample_cumulants(res.eps);
    out.se = asymptotic_se(out.spec, out.residual_cumulants.zeta, out.residual_cumulants.kappa,
                           ctx.m(), ctx.n(), ctx.T());
  } catch (const Error& e) {
    log::debug(std::string("standard errors skipped: ") + e.what());
    out.se.clear();
  }
  return out;
}

Eigen::MatrixXd eta_matrix(const ModelSpec& spec) {
  if (!is_stationary(spec)) throw Error(ErrorKind::Domain, "eta needs a stationary spec");
  const std::size_t r = spec.r();
  const std::size_t k = spec.order();

  // Score of log psi with respect to each coefficient at z = exp(-2 pi i w).
  auto scores = [&](double w) {
    const Complex z = std::polar(1.0, -2.0 * std::numbers::pi * w);
    const Complex zi = 1.0 / z;
    Complex lag = 1.0, lead = 1.0, zp = 1.0, zip = 1.0;
    for (double c : spec.phi) {
      zp *= z;
      lag -= c * zp;
    }
    for (double c : spec.varphi) {
      zip *= zi;
      lead -= c * zip;
    }
    std::vector<Complex> out(k);
    zp = 1.0;
    for (std::size_t j = 0; j < r; ++j) {
      zp *= z;
      out[j] = zp / lag;
    }
    zip = 1.0;
    for (std::size_t j = 0; j < spec.s(); ++j) {
      zip *= zi;
      out[r + j] = zip / lead;
    }
    return out;
  };

  Eigen::MatrixXd eta(k, k);
  using boost::math::quadrature::gauss_kronrod;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      double err = 0.0;
      const double v = gauss_kronrod<double, 61>::integrate(
          [&](double w) {
            const auto sc = scores(w);
            return (sc[a] * std::conj(sc[b])).real();
          },
          0.0, 1.0, 15, 1e-8, &err);
      if (!std::isfinite(v) || err > 1e-6 * std::max(1.0, std::abs(v))) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "eta(%zu,%zu) did not converge: value %.6g, error %.3g", a, b,
                      v, err);
        throw Error(ErrorKind::Quadrature, buf);
      }
      eta(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
      eta(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
    }
  }
  return eta;
}

std::vector<double> eta_integral(const ModelSpec& spec) {
  const Eigen::MatrixXd eta = eta_matrix(spec);
  std::vector<double> diag(static_cast<std::size_t>(eta.rows()));
  for (Eigen::Index i = 0; i < eta.rows(); ++i) diag[static_cast<std::size_t>(i)] = eta(i, i);
  return diag;
}

std::vector<double> asymptotic_se(std::span<const double> eta_diag, double zeta, double kappa,
                                  double m, double n, std::size_t T) {
  if (T == 0) throw Error(ErrorKind::Parameter, "T must be positive");
  const double den = 2.0 * m + 0.5 * n * zeta * zeta;
  if (std::abs(den) < 1e-12) throw Error(ErrorKind::Estimation, "variance denominator vanishes");
  const double num = 4.0 * m * m + (m * m * kappa / 4.0 + n * n / 2.0 + m * n) * zeta * zeta;
  std::vector<double> se;
  se.reserve(eta_diag.size());
  for (double eta : eta_diag) {
    if (!(eta > 0.0)) throw Error(ErrorKind::Estimation, "non-positive eta");
    const double tvar = num * eta / (den * den * eta * eta);
    se.push_back(std::sqrt(tvar / static_cast<double>(T)));
  }
  return se;
}

std::vector<double> asymptotic_se(const ModelSpec& spec, double zeta, double kappa, double m,
                                  double n, std::size_t T) {
  return asymptotic_se(eta_integral(spec), zeta, kappa, m, n, T);
}

}  // namespace mixar
