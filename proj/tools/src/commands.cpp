#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json_report.hpp"
#include "mixar/error.hpp"
#include "mixar/montecarlo.hpp"
#include "mixar/parallel.hpp"
#include "mixar/pipeline.hpp"
#include "mixar/simulate.hpp"
#include "mixar/spectral.hpp"
#include "mixar/strategy.hpp"
#include "mixar/theory.hpp"

namespace mixar::cli {

namespace {

void add_output(Session& s, const std::string& path) {
  if (!path.empty() && path != "-") s.manifest.outputs.push_back(path);
}

void set_manifest(Session& s, const std::string& primary) {
  if (s.manifest_path.empty()) s.manifest_path = manifest_path_for(primary);
}

// Name of the manifest as stored inside data outputs; stable across runs.
std::string manifest_ref(const Session& s) {
  if (s.manifest_path.empty()) return {};
  return std::filesystem::path(s.manifest_path).filename().string();
}

Json header(const Session& s, const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  const std::string ref = manifest_ref(s);
  j["manifest"] = ref.empty() ? Json(nullptr) : Json(ref);
  return j;
}

ModelSpec make_spec(const std::string& family, const std::vector<double>& phi,
                    const std::vector<double>& varphi) {
  ModelSpec spec{family_from_string(family), phi, varphi};
  spec.validate();
  return spec;
}

SeriesFrame load_input(const SeriesInput& in, Session& s) {
  if (in.path.empty()) throw Error(ErrorKind::Usage, "--input is required");
  const std::string text = read_text(in.path);
  s.manifest.inputs.push_back(in.path);
  SeriesFrame frame = in.column.empty() ? parse_csv_all(text, in.path).front()
                                        : parse_csv(text, in.column, in.path);
  return apply_transform(frame, transform_from_string(in.transform), in.lambda);
}

void check_m(double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw Error(ErrorKind::Parameter, "--m must lie in [0, 1]");
}

std::string join(const std::vector<double>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += num(v[i]);
  }
  return out;
}

std::vector<std::string> coefficient_names(const ModelSpec& spec) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= spec.r(); ++i) names.push_back("phi" + std::to_string(i));
  for (std::size_t i = 1; i <= spec.s(); ++i) names.push_back("varphi" + std::to_string(i));
  return names;
}

}  // namespace

void cmd_simulate(const SimulateArgs& a, Session& s) {
  const ModelSpec spec = make_spec(a.family, a.phi, a.varphi);
  const StableParams params(a.alpha, a.beta, a.gamma, a.delta);
  if (a.T < 1) throw Error(ErrorKind::Usage, "--T must be positive");
  const auto y = simulate_series(spec, params, a.T, s.seed);
  std::string csv = "t,y\n";
  for (std::size_t t = 0; t < y.size(); ++t) csv += std::to_string(t + 1) + "," + num(y[t]) + "\n";
  set_manifest(s, a.output);
  write_text(a.output, csv, *s.out);
  add_output(s, a.output);
}

void cmd_estimate(const EstimateArgs& a, Session& s) {
  check_m(a.m);
  const std::size_t p = a.r + a.s;
  if (p == 0) throw Error(ErrorKind::Order, "--r + --s must be at least 1");
  const Family family = a.family.empty() ? family_for(a.r, a.s) : family_from_string(a.family);
  if (family != family_for(a.r, a.s)) {
    throw Error(ErrorKind::Order, "--family does not match --r/--s");
  }
  const SeriesFrame frame = load_input(a.input, s);
  ObjectiveOptions obj;
  obj.m = a.m;
  obj.threads = s.threads;
  const auto ctx = ObjectiveContext::build(frame.values, p, obj);

  Start start;
  if (!a.start.empty()) {
    if (a.start.size() != p) throw Error(ErrorKind::Order, "--start needs r + s values");
    start.params = a.start;
  } else {
    start = start_values(family, a.r, a.s, ctx);
  }

  BfgsOptions bfgs;
  std::ofstream trace;
  if (!a.trace.empty()) {
    trace.open(a.trace, std::ios::binary | std::ios::trunc);
    if (!trace) throw Error(ErrorKind::Io, "cannot write " + a.trace);
    bfgs.trace = &trace;
  }
  const EstimationResult res = minimize_rt(ctx, family, a.r, a.s, start.params, bfgs);

  set_manifest(s, a.output);
  Json j = header(s, "estimate");
  j["series"] = frame.name;
  j["transform"] = to_string(frame.transform_applied);
  j["T"] = frame.size();
  j["m"] = a.m;
  j["start"] = start.params;
  j["fallback_start"] = start.fallback;
  j["estimate"] = to_json_value(res);
  write_text(a.output, j.dump(2) + "\n", *s.out);
  add_output(s, a.output);
  add_output(s, a.trace);
}

void cmd_identify(const IdentifyArgs& a, Session& s) {
  check_m(a.m);
  if (a.n >= 0.0 && std::abs(a.n - (1.0 - a.m)) > 1e-12) {
    throw Error(ErrorKind::Parameter, "--n must equal 1 - m");
  }
  const SeriesFrame frame = load_input(a.input, s);
  Json order = nullptr;
  std::size_t p = a.p;
  if (p == 0) {
    const OrderSelection sel = select_order(center(frame.values), a.pmax);
    p = sel.p;
    order = {{"pmax", a.pmax}, {"p_bic", sel.p}, {"p_aic", sel.p_aic}};
  }
  StrategyOptions opts;
  opts.objective.m = a.m;
  opts.objective.threads = s.threads;
  opts.threads = s.threads;
  const IdentificationReport report = estimate_candidates(frame.values, p, opts);

  set_manifest(s, a.output);
  Json j = header(s, "identify");
  j["series"] = frame.name;
  j["transform"] = to_string(frame.transform_applied);
  j["T"] = frame.size();
  j["m"] = a.m;
  j["n"] = 1.0 - a.m;
  j["order_selection"] = order;
  j["report"] = to_json_value(report);
  j["selected"] = report.selected ? Json(report.candidates[*report.selected].label()) : Json(nullptr);
  write_text(a.output, j.dump(2) + "\n", *s.out);
  add_output(s, a.output);
}

void cmd_montecarlo(const MonteCarloArgs& a, Session& s) {
  if (a.prefix.empty()) throw Error(ErrorKind::Usage, "--output-prefix is required");
  MonteCarloConfig cfg = parse_mc_config(read_text(a.config));
  s.manifest.inputs.push_back(a.config);
  if (a.M > 0) cfg.M = a.M;
  if (s.seed_given) cfg.seed = s.seed;
  cfg.threads = s.threads;
  cfg.validate();
  s.manifest.seed = cfg.seed;
  const MonteCarloReport rep = mc_run(cfg);

  const std::string dgp = cfg.dgp.label();
  const auto names = coefficient_names(cfg.dgp);
  std::string rates = "dgp,alpha,T,replications,failures,correct,rate\n";
  std::string moments = "dgp,alpha,T,coefficient,true,mean,sd\n";
  const auto truth = cfg.dgp.params();
  for (const auto& c : rep.cells) {
    rates += dgp + "," + num(c.alpha) + "," + std::to_string(c.T) + "," + std::to_string(c.replications) +
             "," + std::to_string(c.failures) + "," + std::to_string(c.correct) + "," + num(c.rate) + "\n";
    for (std::size_t k = 0; k < names.size(); ++k) {
      const double mean = k < c.mean.size() ? c.mean[k] : std::numeric_limits<double>::quiet_NaN();
      const double sd = k < c.sd.size() ? c.sd[k] : std::numeric_limits<double>::quiet_NaN();
      moments += dgp + "," + num(c.alpha) + "," + std::to_string(c.T) + "," + names[k] + "," +
                 num(truth[k]) + "," + num(mean) + "," + num(sd) + "\n";
    }
  }

  s.manifest_path = a.prefix + ".manifest.json";
  Json log = header(s, "montecarlo");
  log["dgp"] = to_json_value(cfg.dgp);
  log["stable"] = {{"alpha", cfg.alpha_list()}, {"beta", cfg.stable.beta}, {"gamma", cfg.stable.gamma},
                   {"delta", cfg.stable.delta}};
  log["T"] = cfg.T;
  log["M"] = cfg.M;
  log["seed"] = cfg.seed;
  log["p"] = cfg.order();
  log["m"] = cfg.objective.m;
  Json recs = Json::array();
  for (const auto& r : rep.records) recs.push_back(to_json_value(r));
  log["replications"] = recs;

  const std::string rates_path = a.prefix + "_rates.csv";
  const std::string moments_path = a.prefix + "_moments.csv";
  const std::string log_path = a.prefix + "_replications.json";
  write_text(rates_path, rates, *s.out);
  write_text(moments_path, moments, *s.out);
  write_text(log_path, log.dump(1) + "\n", *s.out);
  add_output(s, rates_path);
  add_output(s, moments_path);
  add_output(s, log_path);
}

void cmd_ingest(const IngestArgs& a, Session& s) {
  check_m(a.m);
  const std::string text = read_text(a.input);
  s.manifest.inputs.push_back(a.input);
  std::vector<SeriesFrame> frames;
  if (a.columns.empty()) {
    frames = parse_csv_all(text, a.input);
  } else {
    for (const auto& c : a.columns) frames.push_back(parse_csv(text, c, a.input));
  }
  const Transform t = transform_from_string(a.transform);
  for (auto& f : frames) f = apply_transform(f, t, a.lambda);

  StrategyOptions opts;
  opts.objective.m = a.m;
  opts.objective.threads = s.threads;
  opts.threads = s.threads;
  std::vector<SeriesAnalysis> analyses;
  for (const auto& f : frames) analyses.push_back(analyze_series(f, a.pmax, opts, a.lb_lags));

  set_manifest(s, !a.diagnostics.empty() ? a.diagnostics : !a.output.empty() ? a.output : a.table);

  if (!a.output.empty()) {
    std::string csv = "date";
    for (const auto& f : frames) csv += "," + f.name;
    csv += "\n";
    for (std::size_t i = 0; i < frames.front().size(); ++i) {
      csv += frames.front().timestamps[i];
      for (const auto& f : frames) csv += "," + num(f.values[i]);
      csv += "\n";
    }
    write_text(a.output, csv, *s.out);
    add_output(s, a.output);
  }

  if (!a.table.empty()) {
    std::string csv = "series,candidate,phi,varphi,se,rt,converged,selected\n";
    for (const auto& an : analyses) {
      for (std::size_t i = 0; i < an.report.candidates.size(); ++i) {
        const auto& c = an.report.candidates[i];
        const bool chosen = an.report.selected && *an.report.selected == i;
        csv += an.name + "," + c.label() + "," + join(c.result.spec.phi, ';') + "," +
               join(c.result.spec.varphi, ';') + "," + join(c.result.se, ';') + "," + num(c.result.rt) +
               "," + (c.result.converged ? "true" : "false") + "," + (chosen ? "true" : "false") + "\n";
      }
    }
    write_text(a.table, csv, *s.out);
    add_output(s, a.table);
  }

  if (!a.diagnostics.empty() || (a.output.empty() && a.table.empty())) {
    Json j = header(s, "ingest");
    j["transform"] = to_string(t);
    j["lambda"] = a.lambda;
    j["pmax"] = a.pmax;
    j["m"] = a.m;
    Json series = Json::array();
    for (const auto& an : analyses) series.push_back(to_json_value(an));
    j["series"] = series;
    const std::string path = a.diagnostics.empty() ? "-" : a.diagnostics;
    write_text(path, j.dump(2) + "\n", *s.out);
    add_output(s, path);
  }
}

void cmd_rt_surface(const SurfaceArgs& a, Session& s) {
  check_m(a.m);
  if (a.phi_range.size() != 2 || a.varphi_range.size() != 2) {
    throw Error(ErrorKind::Usage, "ranges take two values: low high");
  }
  if (a.steps < 2) throw Error(ErrorKind::Usage, "--steps must be at least 2");
  const SeriesFrame frame = load_input(a.input, s);
  ObjectiveOptions obj;
  obj.m = a.m;
  obj.threads = s.threads;
  const auto ctx = ObjectiveContext::build(frame.values, 2, obj);

  const std::size_t n = a.steps;
  auto at = [n](const std::vector<double>& range, std::size_t k) {
    return range[0] + (range[1] - range[0]) * static_cast<double>(k) / static_cast<double>(n - 1);
  };
  std::vector<std::string> rows(n);
  parallel_for(n, s.threads, [&](std::size_t i) {
    const double phi = at(a.phi_range, i);
    std::string chunk;
    for (std::size_t k = 0; k < n; ++k) {
      const double varphi = at(a.varphi_range, k);
      const double rt = ctx.rt(ModelSpec::mixed({phi}, {varphi}));
      chunk += num(phi) + "," + num(varphi) + "," + num(rt) + "\n";
    }
    rows[i] = std::move(chunk);
  });
  std::string csv = "phi,varphi,rt\n";
  for (const auto& r : rows) csv += r;
  set_manifest(s, a.output);
  write_text(a.output, csv, *s.out);
  add_output(s, a.output);
}

void cmd_dump_spectra(const SpectraArgs& a, Session& s) {
  if (a.spectrum.empty() && a.bispectrum.empty()) {
    throw Error(ErrorKind::Usage, "give --spectrum and/or --bispectrum");
  }
  std::vector<double> I2;
  BiGrid I3;
  std::size_t T = 0;
  const bool needs_bi = !a.bispectrum.empty();
  if (!a.input.path.empty()) {
    const SeriesFrame frame = load_input(a.input, s);
    const auto d = dft(center(frame.values));
    T = d.size();
    I2 = periodogram_from_dft(d);
    if (needs_bi) I3 = biperiodogram_from_dft(d, s.threads);
  } else {
    if (a.T < 4) throw Error(ErrorKind::Usage, "--T (at least 4) is required without --input");
    const ModelSpec spec = make_spec(a.family, a.phi, a.varphi);
    T = a.T;
    I2 = spectrum_grid(spec, a.k2, T);
    if (needs_bi) I3 = bispectrum_grid(spec, a.k3, T);
  }
  const auto freqs = fourier_frequencies(T);
  set_manifest(s, !a.spectrum.empty() ? a.spectrum : a.bispectrum);
  if (!a.spectrum.empty()) {
    std::string csv = "freq,value\n";
    for (std::size_t j = 0; j < I2.size(); ++j) csv += num(freqs[j]) + "," + num(I2[j]) + "\n";
    write_text(a.spectrum, csv, *s.out);
    add_output(s, a.spectrum);
  }
  if (needs_bi) {
    std::string csv = "freq1,freq2,re,im\n";
    for (Eigen::Index j = 0; j < I3.rows(); ++j) {
      for (Eigen::Index i = 0; i < I3.cols(); ++i) {
        const auto v = I3(j, i);
        csv += num(freqs[j]) + "," + num(freqs[i]) + "," + num(v.real()) + "," + num(v.imag()) + "\n";
      }
    }
    write_text(a.bispectrum, csv, *s.out);
    add_output(s, a.bispectrum);
  }
}

}  // namespace mixar::cli
