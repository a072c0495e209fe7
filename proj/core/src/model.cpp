#include "mixar/model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "mixar/error.hpp"

namespace mixar {

namespace {

constexpr double kBoundaryTol = 1e-8;
constexpr double kImagResidueTol = 1e-10;

std::size_t effective_degree(std::span<const double> coeffs) {
  std::size_t k = coeffs.size();
  while (k > 0 && coeffs[k - 1] == 0.0) --k;
  return k;
}

// Multiplies two polynomials given in ascending powers.
std::vector<std::complex<double>> poly_mul(const std::vector<std::complex<double>>& a,
                                           const std::vector<std::complex<double>>& b) {
  std::vector<std::complex<double>> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Orders roots so that each complex root is immediately followed by its
// conjugate partner.
std::vector<std::complex<double>> pair_conjugates(std::vector<std::complex<double>> roots) {
  std::vector<std::complex<double>> out;
  out.reserve(roots.size());
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const auto z = roots[i];
    const double scale = std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) <= 1e-12 * scale) {
      out.emplace_back(z.real(), 0.0);
      continue;
    }
    std::size_t best = roots.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(roots[j] - std::conj(z));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best == roots.size() || best_dist > 1e-6 * scale) {
      throw Error(ErrorKind::Domain, "complex root without conjugate partner");
    }
    used[best] = true;
    const std::complex<double> mid{0.5 * (z.real() + roots[best].real()),
                                   0.5 * (std::abs(z.imag()) + std::abs(roots[best].imag()))};
    out.push_back(mid);
    out.push_back(std::conj(mid));
  }
  return out;
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::Causal: return "causal";
    case Family::Noncausal: return "noncausal";
    case Family::Mixed: return "mixed";
  }
  return "causal";
}

Family family_from_string(const std::string& name) {
  if (name == "causal" || name == "ar") return Family::Causal;
  if (name == "noncausal") return Family::Noncausal;
  if (name == "mixed" || name == "mar") return Family::Mixed;
  throw Error(ErrorKind::Parameter, "unknown model family '" + name + "'");
}

ModelSpec ModelSpec::causal(std::vector<double> phi) {
  return ModelSpec{Family::Causal, std::move(phi), {}};
}

ModelSpec ModelSpec::noncausal(std::vector<double> varphi) {
  return ModelSpec{Family::Noncausal, {}, std::move(varphi)};
}

ModelSpec ModelSpec::mixed(std::vector<double> phi, std::vector<double> varphi) {
  ModelSpec spec{Family::Mixed, std::move(phi), std::move(varphi)};
  spec.validate();
  return spec;
}

ModelSpec ModelSpec::from_params(Family family, std::size_t r, std::size_t s,
                                 std::span<const double> params) {
  if (params.size() != r + s) {
    throw Error(ErrorKind::Order, "parameter vector length differs from r + s");
  }
  ModelSpec spec{family,
                 std::vector<double>(params.begin(), params.begin() + r),
                 std::vector<double>(params.begin() + r, params.end())};
  spec.validate();
  return spec;
}

std::vector<double> ModelSpec::params() const {
  std::vector<double> out(phi);
  out.insert(out.end(), varphi.begin(), varphi.end());
  return out;
}

std::string ModelSpec::label() const {
  const std::string orders = "(" + std::to_string(r()) + "," + std::to_string(s()) + ")";
  return (family == Family::Mixed ? "MAR" : "AR") + orders;
}

void ModelSpec::validate() const {
  switch (family) {
    case Family::Causal:
      if (!varphi.empty()) throw Error(ErrorKind::Order, "causal model with lead coefficients");
      break;
    case Family::Noncausal:
      if (!phi.empty()) throw Error(ErrorKind::Order, "noncausal model with lag coefficients");
      break;
    case Family::Mixed:
      if (phi.empty() || varphi.empty()) {
        throw Error(ErrorKind::Order, "mixed model needs r >= 1 and s >= 1");
      }
      break;
  }
  for (double c : phi)
    if (!std::isfinite(c)) throw Error(ErrorKind::Data, "non-finite lag coefficient");
  for (double c : varphi)
    if (!std::isfinite(c)) throw Error(ErrorKind::Data, "non-finite lead coefficient");
}

std::vector<std::complex<double>> lag_polynomial_roots(std::span<const double> coeffs) {
  const std::size_t k = effective_degree(coeffs);
  if (k == 0) return {};
  // Eigenvalues of the companion matrix solve x^k - c_1 x^{k-1} - ... - c_k = 0,
  // whose reciprocals are the roots in z.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
  for (std::size_t j = 0; j < k; ++j) companion(0, j) = coeffs[j];
  for (std::size_t j = 1; j < k; ++j) companion(j, j - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> roots;
  roots.reserve(k);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    roots.push_back(1.0 / solver.eigenvalues()[i]);
  }
  return roots;
}

StationarityCheck check_stationary(std::span<const double> coeffs) {
  if (coeffs.empty()) throw Error(ErrorKind::Order, "empty coefficient vector");
  StationarityCheck out;
  for (const auto& z : lag_polynomial_roots(coeffs)) out.moduli.push_back(std::abs(z));
  std::sort(out.moduli.begin(), out.moduli.end());
  out.stationary = true;
  for (double m : out.moduli) {
    if (!(m > 1.0)) out.stationary = false;
  }
  for (double c : coeffs)
    if (!std::isfinite(c)) out.stationary = false;
  return out;
}

bool is_stationary(const ModelSpec& spec) {
  if (!spec.phi.empty() && !check_stationary(spec.phi).stationary) return false;
  if (!spec.varphi.empty() && !check_stationary(spec.varphi).stationary) return false;
  return true;
}

double min_root_modulus(const ModelSpec& spec) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto* c : {&spec.phi, &spec.varphi}) {
    if (c->empty()) continue;
    const auto check = check_stationary(*c);
    if (!check.moduli.empty()) m = std::min(m, check.moduli.front());
  }
  return m;
}

CausalRepresentation noncausal_to_causal(const ModelSpec& spec) {
  if (spec.family != Family::Noncausal || spec.s() == 0) {
    throw Error(ErrorKind::Order, "noncausal_to_causal expects a noncausal spec with s >= 1");
  }
  return mixed_to_causal(spec);
}

ModelSpec causal_to_noncausal(const CausalRepresentation& rep, std::size_t s) {
  if (rep.coeffs.size() != s || s == 0) {
    throw Error(ErrorKind::Order, "causal representation length differs from s");
  }
  const double last = rep.coeffs[s - 1];
  if (last == 0.0 || !std::isfinite(last)) {
    throw Error(ErrorKind::Degenerate, "causal representation has a zero leading coefficient");
  }
  // phi*_k = -varphi_{s-k} / varphi_s for k < s and phi*_s = 1 / varphi_s.
  std::vector<double> varphi(s);
  varphi[s - 1] = 1.0 / last;
  for (std::size_t k = 1; k < s; ++k) varphi[s - k - 1] = -rep.coeffs[k - 1] / last;
  return ModelSpec::noncausal(std::move(varphi));
}

CausalRepresentation mixed_to_causal(const ModelSpec& spec) {
  spec.validate();
  const std::size_t r = spec.r();
  const std::size_t s = spec.s();
  if (s == 0) throw Error(ErrorKind::Order, "representation needs at least one lead coefficient");
  const double lead = spec.varphi[s - 1];
  if (std::abs(lead) < kLeadFloor) {
    throw Error(ErrorKind::Degenerate, "last lead coefficient below 1e-6; model has lower order");
  }
  // L^s varphi(L^-1) = -varphi_s - varphi_{s-1} L - ... - varphi_1 L^{s-1} + L^s
  std::vector<double> lead_poly(s + 1);
  for (std::size_t k = 0; k < s; ++k) lead_poly[k] = -spec.varphi[s - 1 - k];
  lead_poly[s] = 1.0;
  std::vector<double> lag_poly(r + 1);
  lag_poly[0] = 1.0;
  for (std::size_t k = 0; k < r; ++k) lag_poly[k + 1] = -spec.phi[k];

  std::vector<double> product(r + s + 1, 0.0);
  for (std::size_t i = 0; i <= s; ++i)
    for (std::size_t j = 0; j <= r; ++j) product[i + j] += lead_poly[i] * lag_poly[j];

  // Normalizing by the constant term -varphi_s gives 1 - c_1 L - ... .
  CausalRepresentation rep;
  rep.coeffs.resize(r + s);
  for (std::size_t k = 1; k <= r + s; ++k) rep.coeffs[k - 1] = product[k] / lead;
  rep.scale = -1.0 / lead;
  return rep;
}

std::vector<double> polynomial_from_roots(std::span<const std::complex<double>> roots) {
  std::vector<std::complex<double>> poly{1.0};
  for (const auto& z : roots) poly = poly_mul(poly, {1.0, -1.0 / z});
  std::vector<double> coeffs(roots.size());
  for (std::size_t k = 1; k < poly.size(); ++k) {
    const double scale = std::max(1.0, std::abs(poly[k]));
    if (std::abs(poly[k].imag()) > kImagResidueTol * scale) {
      throw Error(ErrorKind::Domain, "unpaired complex roots in polynomial reconstruction");
    }
    coeffs[k - 1] = -poly[k].real();
  }
  return coeffs;
}

std::vector<std::complex<double>> paired_roots(std::span<const double> coeffs) {
  return pair_conjugates(lag_polynomial_roots(coeffs));
}

ModelSpec factor_initial_values(const CausalRepresentation& rep, std::size_t r, std::size_t s) {
  if (rep.coeffs.size() != r + s) {
    throw Error(ErrorKind::Order, "causal representation length differs from r + s");
  }
  if (r + s == 0) return ModelSpec::causal({});
  if (rep.coeffs.back() == 0.0) {
    throw Error(ErrorKind::Degenerate, "causal representation has a zero leading coefficient");
  }
  const auto roots = pair_conjugates(lag_polynomial_roots(rep.coeffs));
  std::vector<std::complex<double>> outside;
  std::vector<std::complex<double>> inside_reciprocal;
  for (const auto& z : roots) {
    const double m = std::abs(z);
    if (std::abs(m - 1.0) < kBoundaryTol) {
      throw Error(ErrorKind::Boundary, "root on the unit circle");
    }
    if (m > 1.0) {
      outside.push_back(z);
    } else {
      inside_reciprocal.push_back(1.0 / z);
    }
  }
  if (outside.size() != r || inside_reciprocal.size() != s) {
    throw Error(ErrorKind::Partition,
                "representation has " + std::to_string(outside.size()) +
                    " roots outside the unit circle, expected " + std::to_string(r));
  }
  if (s == 0) return ModelSpec::causal(rep.coeffs);
  auto phi = polynomial_from_roots(outside);
  auto varphi = polynomial_from_roots(inside_reciprocal);
  if (r == 0) return ModelSpec::noncausal(std::move(varphi));
  return ModelSpec::mixed(std::move(phi), std::move(varphi));
}

Residuals residuals(const ModelSpec& spec, std::span<const double> y) {
  spec.validate();
  const std::size_t r = spec.r();
  const std::size_t s = spec.s();
  const std::size_t n = y.size();
  if (n < r + s + 1) throw Error(ErrorKind::Length, "series shorter than r + s + 1");

  // u_t = phi(L) y_t for t >= r, then eps_t = varphi(L^-1) u_t for t <= n-1-s.
  std::vector<double> u(n - r);
  for (std::size_t t = r; t < n; ++t) {
    double v = y[t];
    for (std::size_t k = 1; k <= r; ++k) v -= spec.phi[k - 1] * y[t - k];
    u[t - r] = v;
  }
  Residuals out;
  out.eps.resize(u.size() - s);
  for (std::size_t t = 0; t + s < u.size(); ++t) {
    double v = u[t];
    for (std::size_t k = 1; k <= s; ++k) v -= spec.varphi[k - 1] * u[t + k];
    out.eps[t] = v;
    out.sse += v * v;
  }
  return out;
}

}  // namespace mixar
