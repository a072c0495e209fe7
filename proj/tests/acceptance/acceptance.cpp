// One line per acceptance criterion; exit status is nonzero when any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "generators.hpp"
#include "mixar/error.hpp"
#include "mixar/model.hpp"
#include "mixar/montecarlo.hpp"
#include "mixar/objective.hpp"
#include "mixar/optimize.hpp"
#include "mixar/parallel.hpp"
#include "mixar/pipeline.hpp"
#include "mixar/simulate.hpp"
#include "mixar/spectral.hpp"
#include "mixar/strategy.hpp"
#include "mixar/theory.hpp"
#include "mixar_cli/cli.hpp"

namespace fs = std::filesystem;
using namespace mixar;
using mixar::testing::Rng;

namespace {

constexpr double kPi = std::numbers::pi;
const std::string kData = MIXAR_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome mapping_algebra() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(101);
  double worst[3] = {0, 0, 0};
  for (int k = 0; k < 1000; ++k) {
    const auto c = testing::stationary_spec(rng, Family::Causal, 1 + k % 3, 0);
    const auto back = factor_initial_values(CausalRepresentation{c.phi, 1.0}, c.r(), 0);
    worst[0] = std::max(worst[0], testing::max_abs_diff(back.phi, c.phi));

    const auto n = testing::stationary_spec(rng, Family::Noncausal, 0, 1 + k % 3);
    const auto nb = causal_to_noncausal(noncausal_to_causal(n), n.s());
    worst[1] = std::max(worst[1], testing::max_abs_diff(nb.varphi, n.varphi));

    const auto m = testing::stationary_spec(rng, Family::Mixed, 1 + k % 2, 1 + (k / 2) % 2);
    const auto mb = factor_initial_values(mixed_to_causal(m), m.r(), m.s());
    worst[2] = std::max(worst[2], std::max(testing::max_abs_diff(mb.phi, m.phi),
                                           testing::max_abs_diff(mb.varphi, m.varphi)));
  }
  const double secs = seconds_since(t0);
  const double w = std::max({worst[0], worst[1], worst[2]});
  return {w < 1e-10 && secs < 5.0,
          fmt("max error causal %.2e noncausal %.2e mixed %.2e, %.2f s", worst[0], worst[1], worst[2], secs)};
}

Outcome spectral_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(202);
  double parseval = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t T = 50 + 13 * static_cast<std::size_t>(k);
    const auto y = center(testing::gaussian(rng, T, 0.5 + 0.1 * k));
    const auto I2 = periodogram(y);
    double lhs = 0.0, rhs = 0.0;
    for (double v : I2) lhs += v;
    lhs *= 2.0 * kPi / double(T);
    for (double v : y) rhs += v * v;
    rhs /= double(T);
    parseval = std::max(parseval, std::abs(lhs - rhs) / rhs);
  }
  const auto sc = ModelSpec::causal({0.7}), sn = ModelSpec::noncausal({0.7});
  double mirror2 = 0.0;
  for (int j = 0; j < 512; ++j) {
    const double w = 2.0 * kPi * j / 512.0;
    mirror2 = std::max(mirror2, std::abs(spectrum(sc, 1.0, w) - spectrum(sn, 1.0, w)));
  }
  double mirror3 = 0.0;
  for (int a = 0; a < 512; a += 4) {
    for (int b = 0; b < 512; b += 4) {
      const double w1 = 2.0 * kPi * a / 512.0, w2 = 2.0 * kPi * b / 512.0;
      mirror3 = std::max(mirror3, std::abs(bispectrum(sc, 1.0, w1, w2) - bispectrum(sn, 1.0, w1, w2)));
    }
  }
  const double secs = seconds_since(t0);
  return {parseval < 1e-10 && mirror2 < 1e-12 && mirror3 > 1e-3 && secs < 10.0,
          fmt("Parseval rel %.2e, S2 mirror %.2e, S3 mirror sup %.3f, %.2f s", parseval, mirror2, mirror3, secs)};
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto dgp = ModelSpec::mixed({0.7}, {0.2});
  const StableParams stable(1.5, 0.25);
  constexpr std::size_t kReps = 50, kSteps = 101;
  std::vector<int> agree(kReps, 0);
  std::vector<std::string> notes(kReps);
  parallel_for(kReps, default_threads(), [&](std::size_t i) {
    const auto y = simulate_series(dgp, stable, 200, stream_seed(303, {i}));
    const auto ctx = ObjectiveContext::build(y, 2);
    const auto start = start_values(Family::Mixed, 1, 1, ctx);
    const auto est = minimize_rt(ctx, Family::Mixed, 1, 1, start.params);
    double best = std::numeric_limits<double>::infinity(), bp = 0, bv = 0;
    for (std::size_t a = 0; a < kSteps; ++a) {
      for (std::size_t b = 0; b < kSteps; ++b) {
        const double phi = 0.95 * double(a) / double(kSteps - 1), varphi = 0.95 * double(b) / double(kSteps - 1);
        const double v = ctx.rt(ModelSpec::mixed({phi}, {varphi}));
        if (v < best) best = v, bp = phi, bv = varphi;
      }
    }
    agree[i] = std::abs(bp - est.spec.phi[0]) <= 0.05 && std::abs(bv - est.spec.varphi[0]) <= 0.05;
    if (!agree[i]) {
      notes[i] = fmt(" [rep %zu grid (%.3f,%.3f) rt %.5g vs bfgs (%.3f,%.3f) rt %.5g]", i, bp, bv, best,
                     est.spec.phi[0], est.spec.varphi[0], est.rt);
    }
  });
  std::size_t hits = 0;
  std::string misses;
  for (std::size_t i = 0; i < kReps; ++i) {
    hits += static_cast<std::size_t>(agree[i]);
    misses += notes[i];
  }
  const double secs = seconds_since(t0);
  return {double(hits) >= 0.95 * double(kReps) && secs < 600.0,
          fmt("%zu/%zu replications agree within 0.05, %.1f s", hits, kReps, secs) + misses};
}

struct Campaign {
  std::string name;
  ModelSpec dgp;
  MonteCarloReport report;
};

std::vector<Campaign> run_campaign(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Campaign> out{{"AR(2,0)", ModelSpec::causal({0.7, 0.2}), {}},
                            {"MAR(1,1)", ModelSpec::mixed({0.7}, {0.2}), {}},
                            {"AR(0,2)", ModelSpec::noncausal({0.7, 0.2}), {}}};
  for (std::size_t d = 0; d < out.size(); ++d) {
    MonteCarloConfig cfg;
    cfg.dgp = out[d].dgp;
    cfg.stable = StableParams(1.5, 0.25);
    cfg.T = {200};
    cfg.M = 200;
    cfg.seed = 404 + d;
    cfg.threads = default_threads();
    out[d].report = mc_run(cfg);
  }
  secs = seconds_since(t0);
  return out;
}

Outcome identification_rates(const std::vector<Campaign>& campaign, double secs) {
  const double table[3] = {0.94, 0.80, 0.82};
  bool ok = true;
  std::string detail;
  for (std::size_t d = 0; d < campaign.size(); ++d) {
    const auto& cell = campaign[d].report.cells.at(0);
    ok = ok && std::abs(cell.rate - table[d]) <= 0.07;
    detail += fmt("%s %.3f (target %.2f, %zu failures); ", campaign[d].name.c_str(), cell.rate, table[d],
                  cell.failures);
  }
  // Budget stated for 8 cores; scaled to the cores available here.
  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  const double budget = 1800.0 * 8.0 / double(std::min(cores, 8u));
  ok = ok && secs < budget;
  return {ok, detail + fmt("%.0f s on %u cores (budget %.0f s)", secs, cores, budget)};
}

Outcome estimation_bias(const std::vector<Campaign>& campaign) {
  const double mean[3][2] = {{0.703, 0.188}, {0.697, 0.207}, {0.697, 0.183}};
  const double sd[3][2] = {{0.099, 0.095}, {0.054, 0.089}, {0.096, 0.089}};
  bool ok = true;
  std::string detail;
  for (std::size_t d = 0; d < campaign.size(); ++d) {
    const auto& cell = campaign[d].report.cells.at(0);
    detail += campaign[d].name + " mean";
    for (std::size_t k = 0; k < 2; ++k) {
      const double m = cell.mean.size() > k ? cell.mean[k] : std::nan("");
      const double s = cell.sd.size() > k ? cell.sd[k] : std::nan("");
      const double ratio = s / sd[d][k];
      ok = ok && std::abs(m - mean[d][k]) <= 0.04 && ratio <= 1.5 && ratio >= 1.0 / 1.5;
      detail += fmt(" %.3f/%.3f sd %.3f/%.3f", m, mean[d][k], s, sd[d][k]);
    }
    detail += "; ";
  }
  return {ok, detail};
}

Outcome gaussian_variance() {
  const auto spec = ModelSpec::causal({0.7});
  const std::size_t T = 500;
  const double exact = std::sqrt((1.0 - 0.49) / double(T));
  const double se = asymptotic_se(spec, 0.0, 0.0, 1.0, 0.0, T).at(0);
  const double se_half = asymptotic_se(spec, 0.0, 0.0, 0.5, 0.5, T).at(0);

  constexpr std::size_t kReps = 400;
  std::vector<double> est(kReps, std::nan(""));
  ObjectiveOptions opt;
  opt.m = 1.0;
  parallel_for(kReps, default_threads(), [&](std::size_t i) {
    const auto y = simulate_series(spec, StableParams(2.0, 0.0), T, stream_seed(505, {i}));
    const auto ctx = ObjectiveContext::build(y, 1, opt);
    const auto r = minimize_rt(ctx, Family::Causal, 1, 0, ctx.theta_bar());
    if (r.converged) est[i] = r.spec.phi[0];
  });
  double s = 0.0, ss = 0.0;
  std::size_t n = 0;
  for (double v : est) {
    if (!std::isfinite(v)) continue;
    s += v;
    ss += v * v;
    ++n;
  }
  const double mean = s / double(n);
  const double sd = std::sqrt((ss - double(n) * mean * mean) / double(n - 1));
  const double ratio = sd / exact;
  const bool exact_ok = std::abs(se - exact) <= 1e-12 * exact && std::abs(se_half - exact) <= 1e-12 * exact;
  return {exact_ok && ratio <= 1.3 && ratio >= 1.0 / 1.3,
          fmt("se %.10f vs %.10f (m=0.5: %.10f); MC sd %.4f over %zu fits, ratio %.3f", se, exact, se_half, sd, n,
              ratio)};
}

Outcome empirical_tables() {
  std::string detail;
  bool ok = true;
  try {
    const auto frames = load_csv_all(kData + "/commodities.csv");
    StrategyOptions base;
    base.threads = default_threads();
    StrategyOptions loose = base;
    loose.bfgs.gtol *= 2.0;
    std::size_t complete = 0, stable = 0, consistent = 0;
    for (const auto& f : frames) {
      const auto cyc = apply_transform(f, Transform::HpCycle);
      const auto a = analyze_series(cyc, 4, base);
      const auto b = analyze_series(cyc, 4, loose);
      const bool full = a.report.candidates.size() == a.report.p + 1 && a.report.selected.has_value() &&
                        std::isfinite(a.stats.mean) && std::isfinite(a.residual_test.q.at(0));
      complete += full;
      if (!full) continue;
      const auto sel = identify(a.report);
      stable += is_stationary(sel);
      auto order = [](const IdentificationReport& r) {
        std::vector<std::size_t> idx(r.candidates.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](auto x, auto y) { return r.candidates[x].result.rt < r.candidates[y].result.rt; });
        return idx;
      };
      const bool same = b.report.selected == a.report.selected && order(a.report) == order(b.report);
      consistent += same;
      detail += f.name + " " + sel.label() + (same ? "" : " (ranking changed)") + "; ";
    }
    ok = frames.size() == 8 && complete == 8 && stable == 8 && consistent == 8;
    detail = fmt("%zu series, %zu complete, %zu stationary, %zu stable rankings: ", frames.size(), complete,
                 stable, consistent) + detail;

    const auto brent = load_csv(kData + "/brent_cycle.csv", "Brent");
    const auto rep = estimate_candidates(brent.values, 2, base);
    const auto sel = identify(rep);
    const bool brent_ok = sel.label() == "MAR(1,1)" && std::abs(sel.phi[0] - 0.459) <= 0.05 &&
                          std::abs(sel.varphi[0] - 0.811) <= 0.05;
    ok = ok && brent_ok;
    detail += "Brent fixture " + sel.label();
    if (sel.family == Family::Mixed && sel.r() == 1 && sel.s() == 1) {
      detail += fmt(" (%.3f; %.3f) vs (0.459; 0.811)", sel.phi[0], sel.varphi[0]);
    }
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
  return {ok, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "mixar_acceptance_determinism";
  fs::remove_all(root);
  {
    fs::create_directories(root);
    std::ofstream(root / "mc.ini") << "family = mixed\nphi = 0.7\nvarphi = 0.2\nalpha = 1.5, 1.8\n"
                                      "T = 100, 150\nM = 6\nseed = 9\n";
  }
  const std::string cotton = kData + "/cotton_cycle.csv", brent = kData + "/brent_cycle.csv";
  struct Job {
    std::vector<std::string> args;
    std::vector<std::string> outputs;
  };
  const std::vector<Job> jobs{
      {{"simulate", "--family", "mixed", "--phi", "0.7", "--varphi", "0.2", "--T", "400", "-o", "sim.csv"},
       {"sim.csv"}},
      {{"estimate", "--input", brent, "--r", "1", "--s", "1", "-o", "est.json"}, {"est.json"}},
      {{"identify", "--input", cotton, "--p", "2", "-o", "id.json"}, {"id.json"}},
      {{"montecarlo", "--config", (root / "mc.ini").string(), "--output-prefix", "mc"},
       {"mc_rates.csv", "mc_moments.csv", "mc_replications.json"}},
      {{"ingest", "--input", kData + "/commodities.csv", "--transform", "hp", "-o", "cyc.csv", "--table",
        "table.csv", "--diagnostics", "diag.json"},
       {"cyc.csv", "table.csv", "diag.json"}},
      {{"rt-surface", "--input", brent, "--steps", "31", "-o", "surface.csv"}, {"surface.csv"}},
      {{"dump-spectra", "--input", cotton, "--spectrum", "i2.csv", "--bispectrum", "i3.csv"}, {"i2.csv", "i3.csv"}},
  };
  const std::vector<std::string> threads{"1", "4", "16"};
  std::size_t identical = 0, total = 0;
  std::string detail;
  for (const auto& job : jobs) {
    std::vector<std::vector<std::string>> contents;
    for (const auto& t : threads) {
      const fs::path dir = root / ("t" + t);
      fs::create_directories(dir);
      std::vector<std::string> args{"--threads", t, "--seed", "77"};
      for (const auto& a : job.args) {
        const bool is_out = std::find(job.outputs.begin(), job.outputs.end(), a) != job.outputs.end() ||
                            a == "mc";
        args.push_back(is_out ? (dir / a).string() : a);
      }
      std::ostringstream out, err;
      const int rc = cli::run(args, out, err);
      std::vector<std::string> files;
      if (rc != 0) files.push_back("exit " + std::to_string(rc) + ": " + err.str());
      for (const auto& o : job.outputs) files.push_back(slurp(dir / o));
      contents.push_back(files);
    }
    ++total;
    const bool same = contents[0] == contents[1] && contents[0] == contents[2] && contents[0].size() == job.outputs.size() &&
                      std::all_of(contents[0].begin(), contents[0].end(), [](auto& s) { return !s.empty(); });
    identical += same;
    detail += job.args[0] + (same ? " ok; " : " DIFFERS; ");
  }
  fs::remove_all(root);
  return {identical == total, fmt("%zu/%zu commands identical across 1, 4, 16 threads: ", identical, total) + detail};
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Outcome()>>> checks;
  int failed = 0;
  auto report = [&](int id, const Outcome& o) {
    std::printf("criterion %d: %s - %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  };
  auto guarded = [](const std::function<Outcome()>& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      return Outcome{false, std::string("exception: ") + e.what()};
    }
  };
  report(1, guarded(mapping_algebra));
  report(2, guarded(spectral_identities));
  report(3, guarded(oracle_equivalence));
  double secs = 0.0;
  std::vector<Campaign> campaign;
  std::string campaign_error;
  try {
    campaign = run_campaign(secs);
  } catch (const std::exception& e) {
    campaign_error = e.what();
  }
  if (campaign_error.empty()) {
    report(4, guarded([&] { return identification_rates(campaign, secs); }));
    report(5, guarded([&] { return estimation_bias(campaign); }));
  } else {
    report(4, {false, "exception: " + campaign_error});
    report(5, {false, "exception: " + campaign_error});
  }
  report(6, guarded(gaussian_variance));
  report(7, guarded(empirical_tables));
  report(8, guarded(determinism));
  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
