#include "mixar_cli/cli.hpp"

#include <CLI11.hpp>

#include <exception>
#include <ostream>

#include "commands.hpp"
#include "mixar/error.hpp"
#include "mixar/parallel.hpp"

namespace mixar::cli {

namespace {

void add_series_input(CLI::App* sub, SeriesInput& in) {
  sub->add_option("--input", in.path, "CSV file with a date column")->check(CLI::ExistingFile);
  sub->add_option("--column", in.column, "value column (default: first)");
  sub->add_option("--transform", in.transform, "none, hp or logret");
  sub->add_option("--lambda", in.lambda, "HP smoothing parameter");
}

void record_flags(const CLI::App& app, Manifest& m) {
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_name() == "--help") continue;
    std::vector<std::string> values = opt->results();
    if (values.empty()) {
      const std::string def = opt->get_default_str();
      if (def.empty()) continue;
      values.push_back(def);
    }
    m.flags.emplace_back(opt->get_name(), std::move(values));
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed causal-noncausal autoregression toolkit"};
  app.set_version_flag("--version", std::string(MIXAR_VERSION));
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::string manifest;
  app.add_option("--threads", threads, "worker threads (0: all cores)");
  CLI::Option* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--manifest", manifest, "manifest path (default: <output>.manifest.json)");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "simulate a series with stable innovations");
  c_sim->add_option("--family", sim.family, "causal, noncausal or mixed");
  c_sim->add_option("--phi", sim.phi, "lag coefficients")->delimiter(',');
  c_sim->add_option("--varphi", sim.varphi, "lead coefficients")->delimiter(',');
  c_sim->add_option("--alpha", sim.alpha);
  c_sim->add_option("--beta", sim.beta);
  c_sim->add_option("--gamma", sim.gamma);
  c_sim->add_option("--delta", sim.delta);
  c_sim->add_option("--T", sim.T, "sample size")->required();
  c_sim->add_option("--output,-o", sim.output, "CSV path or -");

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "minimize R_T for one model order");
  add_series_input(c_est, est.input);
  c_est->add_option("--family", est.family);
  c_est->add_option("--r", est.r, "lag order");
  c_est->add_option("--s", est.s, "lead order");
  c_est->add_option("--start", est.start, "start values, lags first")->delimiter(',');
  c_est->add_option("--m", est.m, "spectrum weight; bispectrum gets 1 - m");
  c_est->add_option("--output,-o", est.output);
  c_est->add_option("--trace", est.trace, "JSON-lines optimizer trace");

  IdentifyArgs idf;
  auto* c_idf = app.add_subcommand("identify", "estimate every (r, s) split and select by R_T");
  add_series_input(c_idf, idf.input);
  c_idf->add_option("--p", idf.p, "total order (0: BIC up to --pmax)");
  c_idf->add_option("--pmax", idf.pmax);
  c_idf->add_option("--m", idf.m);
  c_idf->add_option("--n", idf.n, "must equal 1 - m");
  c_idf->add_option("--output,-o", idf.output);

  MonteCarloArgs mc;
  auto* c_mc = app.add_subcommand("montecarlo", "identification rates under a known DGP");
  c_mc->add_option("--config", mc.config, "key = value file")->required()->check(CLI::ExistingFile);
  c_mc->add_option("--output-prefix", mc.prefix)->required();
  c_mc->add_option("--M", mc.M, "replications (overrides the config)");

  IngestArgs ing;
  auto* c_ing = app.add_subcommand("ingest", "transform and analyze a multi-series CSV");
  c_ing->add_option("--input", ing.input)->required()->check(CLI::ExistingFile);
  c_ing->add_option("--column", ing.columns, "repeatable; default all columns");
  c_ing->add_option("--transform", ing.transform, "hp or logret");
  c_ing->add_option("--lambda", ing.lambda);
  c_ing->add_option("--pmax", ing.pmax);
  c_ing->add_option("--lb-lags", ing.lb_lags, "Ljung-Box lags");
  c_ing->add_option("--m", ing.m);
  c_ing->add_option("--output,-o", ing.output, "transformed series CSV");
  c_ing->add_option("--diagnostics", ing.diagnostics, "JSON report");
  c_ing->add_option("--table", ing.table, "candidate estimates CSV");

  SurfaceArgs surf;
  auto* c_surf = app.add_subcommand("rt-surface", "R_T of MAR(1,1) over a coefficient grid");
  add_series_input(c_surf, surf.input);
  c_surf->add_option("--phi-range", surf.phi_range, "low,high")->delimiter(',')->expected(2);
  c_surf->add_option("--varphi-range", surf.varphi_range, "low,high")->delimiter(',')->expected(2);
  c_surf->add_option("--steps", surf.steps, "grid points per axis");
  c_surf->add_option("--m", surf.m);
  c_surf->add_option("--output,-o", surf.output);

  SpectraArgs spec;
  auto* c_spec = app.add_subcommand("dump-spectra", "periodogram and biperiodogram, or model spectra");
  add_series_input(c_spec, spec.input);
  c_spec->add_option("--family", spec.family);
  c_spec->add_option("--phi", spec.phi)->delimiter(',');
  c_spec->add_option("--varphi", spec.varphi)->delimiter(',');
  c_spec->add_option("--k2", spec.k2, "innovation variance");
  c_spec->add_option("--k3", spec.k3, "innovation third cumulant");
  c_spec->add_option("--T", spec.T, "grid size without --input");
  c_spec->add_option("--spectrum", spec.spectrum, "CSV freq,value");
  c_spec->add_option("--bispectrum", spec.bispectrum, "CSV freq1,freq2,re,im");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorKind::Usage);
  }

  Session session;
  session.threads = threads == 0 ? default_threads() : threads;
  session.seed = seed;
  session.seed_given = seed_opt->count() > 0;
  session.out = &out;
  session.manifest_path = manifest;
  session.manifest.seed = seed;

  CLI::App* active = app.get_subcommands().front();
  session.manifest.command = active->get_name();
  record_flags(app, session.manifest);
  record_flags(*active, session.manifest);

  try {
    if (active == c_sim) cmd_simulate(sim, session);
    else if (active == c_est) cmd_estimate(est, session);
    else if (active == c_idf) cmd_identify(idf, session);
    else if (active == c_mc) cmd_montecarlo(mc, session);
    else if (active == c_ing) cmd_ingest(ing, session);
    else if (active == c_surf) cmd_rt_surface(surf, session);
    else cmd_dump_spectra(spec, session);
    write_manifest(session.manifest, session.manifest_path);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace mixar::cli
