#include "json_report.hpp"

#include <cmath>

namespace mixar::cli {

namespace {

// NaN and infinities become null.
Json real(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json reals(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(real(x));
  return a;
}

}  // namespace

Json to_json_value(const ModelSpec& spec) {
  Json j;
  j["family"] = to_string(spec.family);
  j["label"] = spec.label();
  j["r"] = spec.r();
  j["s"] = spec.s();
  j["phi"] = reals(spec.phi);
  j["varphi"] = reals(spec.varphi);
  return j;
}

Json to_json_value(const EstimationResult& r) {
  Json j;
  j["spec"] = to_json_value(r.spec);
  j["rt"] = real(r.rt);
  j["se"] = reals(r.se);
  j["sse"] = real(r.sse);
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["grad_norm"] = real(r.grad_norm);
  j["residual_skewness"] = real(r.residual_cumulants.zeta);
  j["residual_excess_kurtosis"] = real(r.residual_cumulants.kappa);
  j["message"] = r.message;
  return j;
}

Json to_json_value(const IdentificationReport& report) {
  Json j;
  j["p"] = report.p;
  j["T"] = report.T;
  j["preliminary"] = {{"theta_bar", reals(report.preliminary.theta_bar)},
                      {"k2_bar", real(report.preliminary.k2_bar)},
                      {"yule_walker", report.preliminary.yule_walker}};
  Json cands = Json::array();
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    const auto& c = report.candidates[i];
    Json cj;
    cj["family"] = to_string(c.family);
    cj["r"] = c.r;
    cj["s"] = c.s;
    cj["start"] = reals(c.start.params);
    cj["fallback_start"] = c.start.fallback;
    cj["estimate"] = to_json_value(c.result);
    cj["margin"] = real(report.margins.at(i));
    cands.push_back(cj);
  }
  j["candidates"] = cands;
  if (report.selected) {
    j["selected"] = report.candidates[*report.selected].label();
    j["selected_index"] = *report.selected;
  } else {
    j["selected"] = nullptr;
    j["selected_index"] = nullptr;
  }
  return j;
}

Json to_json_value(const SeriesAnalysis& a) {
  Json j;
  j["series"] = a.name;
  j["transform"] = to_string(a.transform);
  j["T"] = a.T;
  j["descriptive"] = {{"mean", real(a.stats.mean)},
                      {"sd", real(a.stats.sd)},
                      {"skewness", real(a.stats.skewness)},
                      {"kurtosis", real(a.stats.kurtosis)}};
  j["order"] = {{"p", a.order.p}, {"p_aic", a.order.p_aic}, {"aic", reals(a.order.aic)}, {"bic", reals(a.order.bic)}};
  j["ljung_box"] = {{"q", reals(a.residual_test.q)}, {"p_value", reals(a.residual_test.p_value)}};
  j["identification"] = to_json_value(a.report);
  return j;
}

Json to_json_value(const ReplicationRecord& r) {
  Json j;
  j["alpha"] = r.alpha;
  j["T"] = r.T;
  j["replication"] = r.replication;
  j["seed"] = r.seed;
  j["failed"] = r.failed;
  if (r.failed) j["error"] = r.error;
  j["selected"] = r.selected.empty() ? Json(nullptr) : Json(r.selected);
  j["correct"] = r.correct;
  j["estimate"] = reals(r.estimate);
  j["rt"] = reals(r.rt);
  j["converged"] = r.converged;
  return j;
}

}  // namespace mixar::cli
