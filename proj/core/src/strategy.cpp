#include "mixar/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "log.hpp"
#include "mixar/error.hpp"
#include "mixar/parallel.hpp"

namespace mixar {

namespace {

constexpr double kTieTol = 1e-9;
constexpr double kInsideModulus = 0.95;
constexpr double kOutsideModulus = 1.05;

using Root = std::complex<double>;

// One real root or one conjugate pair.
struct RootUnit {
  Root z;
  bool pair = false;
  std::size_t degree() const { return pair ? 2 : 1; }
};

std::vector<RootUnit> root_units(std::span<const Root> roots) {
  std::vector<RootUnit> units;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].imag() == 0.0) {
      units.push_back({roots[i], false});
    } else {
      units.push_back({roots[i], true});
      ++i;  // partner follows
    }
  }
  return units;
}

void push_unit(std::vector<Root>& out, const RootUnit& u) {
  out.push_back(u.z);
  if (u.pair) out.push_back(std::conj(u.z));
}

}  // namespace

std::vector<double> radial_start(Family family, std::size_t r, std::size_t s,
                                 std::span<const double> theta_bar) {
  if (theta_bar.size() != r + s) throw Error(ErrorKind::Order, "theta_bar length differs from r + s");
  if (family != family_for(r, s)) throw Error(ErrorKind::Order, "family does not match (r, s)");
  auto units = root_units(paired_roots(theta_bar));
  std::stable_sort(units.begin(), units.end(), [](const RootUnit& a, const RootUnit& b) {
    return std::abs(std::abs(a.z) - 1.0) < std::abs(std::abs(b.z) - 1.0);
  });
  std::size_t deg = 0;
  std::vector<RootUnit> list;
  for (const auto& u : units) {
    if (deg < s && deg + u.degree() > s) {
      const double m = std::abs(u.z);
      const double sign = u.z.real() < 0.0 ? -1.0 : 1.0;
      list.push_back({Root(sign * m, 0.0), false});
      list.push_back({Root(sign * m, 0.0), false});
      deg += 2;
      continue;
    }
    deg += u.degree();
    list.push_back(u);
  }
  std::vector<Root> moved;
  deg = 0;
  for (const auto& u : list) {
    const double m = std::abs(u.z);
    const double target = deg < s ? std::min(m, kInsideModulus) : std::max(m, kOutsideModulus);
    deg += u.degree();
    push_unit(moved, {u.z * (target / m), u.pair});
  }
  return factor_initial_values({polynomial_from_roots(moved), 1.0}, r, s).params();
}

Family family_for(std::size_t r, std::size_t s) {
  if (s == 0) return Family::Causal;
  if (r == 0) return Family::Noncausal;
  return Family::Mixed;
}

std::vector<double> initial_values(Family family, std::size_t r, std::size_t s,
                                   std::span<const double> theta_bar) {
  if (theta_bar.size() != r + s) throw Error(ErrorKind::Order, "theta_bar length differs from r + s");
  if (family != family_for(r, s)) throw Error(ErrorKind::Order, "family does not match (r, s)");
  if (family == Family::Causal) return {theta_bar.begin(), theta_bar.end()};
  CausalRepresentation rep{{theta_bar.begin(), theta_bar.end()}, 1.0};
  if (family == Family::Noncausal) {
    // Every root of the representation must be inside the unit circle.
    const auto check = check_stationary(rep.coeffs);
    for (double m : check.moduli) {
      if (std::abs(m - 1.0) < 1e-8) throw Error(ErrorKind::Boundary, "root on the unit circle");
      if (m > 1.0) throw Error(ErrorKind::Partition, "representation has a root outside the unit circle");
    }
    return causal_to_noncausal(rep, s).varphi;
  }
  return factor_initial_values(rep, r, s).params();
}

std::vector<std::vector<double>> reflected_starts(Family family, std::size_t r, std::size_t s,
                                                  std::span<const double> theta_bar) {
  if (theta_bar.size() != r + s) throw Error(ErrorKind::Order, "theta_bar length differs from r + s");
  if (family != family_for(r, s)) throw Error(ErrorKind::Order, "family does not match (r, s)");
  const auto units = root_units(paired_roots(theta_bar));
  std::vector<std::vector<double>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << units.size()); ++mask) {
    std::size_t deg = 0;
    for (std::size_t i = 0; i < units.size(); ++i)
      if (mask >> i & 1u) deg += units[i].degree();
    if (deg != s) continue;
    std::vector<Root> moved;
    for (std::size_t i = 0; i < units.size(); ++i) {
      const double m = std::abs(units[i].z);
      const bool inside = mask >> i & 1u;
      const double target = inside ? std::min(m > 1.0 ? 1.0 / m : m, kInsideModulus)
                                   : std::max(m < 1.0 ? 1.0 / m : m, kOutsideModulus);
      push_unit(moved, {units[i].z * (target / m), units[i].pair});
    }
    try {
      auto spec = factor_initial_values({polynomial_from_roots(moved), 1.0}, r, s);
      if (is_stationary(spec)) out.push_back(spec.params());
    } catch (const Error& e) {
      log::debug(std::string("reflected start skipped: ") + e.what());
    }
  }
  return out;
}

namespace {

std::optional<std::vector<double>> direct_start(Family family, std::size_t r, std::size_t s,
                                                std::span<const double> theta_bar) {
  try {
    auto direct = initial_values(family, r, s, theta_bar);
    if (is_stationary(ModelSpec::from_params(family, r, s, direct))) return direct;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Partition && e.kind() != ErrorKind::Boundary) throw;
    log::debug(std::string("direct start unavailable: ") + e.what());
  }
  if (family == Family::Causal) throw Error(ErrorKind::Domain, "preliminary estimate is not stationary");
  return std::nullopt;
}

}  // namespace

Start start_values(Family family, std::size_t r, std::size_t s, const ObjectiveContext& ctx) {
  const auto theta_bar = std::span<const double>(ctx.theta_bar());
  if (auto direct = direct_start(family, r, s, theta_bar)) return {std::move(*direct), false};
  auto starts = reflected_starts(family, r, s, theta_bar);
  if (starts.empty()) return start_values(family, r, s, theta_bar);
  std::size_t best = 0;
  double best_rt = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const double v = ctx.rt(ModelSpec::from_params(family, r, s, starts[i]));
    if (v < best_rt) best_rt = v, best = i;
  }
  return {std::move(starts[best]), true};
}

Start start_values(Family family, std::size_t r, std::size_t s, std::span<const double> theta_bar) {
  if (auto direct = direct_start(family, r, s, theta_bar)) return {std::move(*direct), false};
  auto params = radial_start(family, r, s, theta_bar);
  if (!is_stationary(ModelSpec::from_params(family, r, s, params))) {
    throw Error(ErrorKind::Partition, "no stationary start for " + to_string(family));
  }
  return {std::move(params), true};
}

std::optional<std::size_t> select_candidate(std::span<const Candidate> candidates) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates)
    if (c.result.converged && c.result.rt < best) best = c.result.rt;
  if (!std::isfinite(best)) return std::nullopt;
  std::optional<std::size_t> pick;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    if (!c.result.converged || c.result.rt > best + kTieTol) continue;
    if (!pick || c.r > candidates[*pick].r) pick = i;
  }
  return pick;
}

IdentificationReport estimate_candidates(const ObjectiveContext& ctx, std::size_t p,
                                         const BfgsOptions& bfgs, unsigned threads) {
  if (p == 0) throw Error(ErrorKind::Order, "p must be at least 1");
  if (ctx.theta_bar().size() != p) throw Error(ErrorKind::Order, "context was built for another p");

  IdentificationReport report;
  report.p = p;
  report.T = ctx.T();
  report.preliminary = ctx.preliminary();

  for (std::size_t k = 0; k <= p; ++k) {
    Candidate c;
    c.r = p - k;
    c.s = k;
    c.family = family_for(c.r, c.s);
    c.start = start_values(c.family, c.r, c.s, ctx);
    report.candidates.push_back(std::move(c));
  }

  parallel_for(report.candidates.size(), threads, [&](std::size_t k) {
    auto& c = report.candidates[k];
    c.result = minimize_rt(ctx, c.family, c.r, c.s, c.start.params, bfgs);
  });

  report.selected = select_candidate(report.candidates);
  report.margins.assign(report.candidates.size(), std::numeric_limits<double>::quiet_NaN());
  if (report.selected) {
    const double best = report.candidates[*report.selected].result.rt;
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
      if (report.candidates[i].result.converged) report.margins[i] = report.candidates[i].result.rt - best;
    }
  } else {
    log::warn("no candidate converged");
  }
  return report;
}

IdentificationReport estimate_candidates(std::span<const double> y, std::size_t p,
                                         const StrategyOptions& options) {
  const auto ctx = ObjectiveContext::build(y, p, options.objective);
  return estimate_candidates(ctx, p, options.bfgs, options.threads);
}

ModelSpec identify(const IdentificationReport& report) {
  if (!report.selected) throw Error(ErrorKind::Estimation, "no candidate converged");
  return report.candidates[*report.selected].result.spec;
}

}  // namespace mixar
