#include "mixar/montecarlo.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "log.hpp"
#include "mixar/error.hpp"
#include "mixar/parallel.hpp"
#include "mixar/strategy.hpp"

namespace mixar {

namespace {

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    std::istringstream is(item.substr(b, e - b + 1));
    T v{};
    if (!(is >> v) || !is.eof()) throw Error(ErrorKind::Parameter, "bad value for " + key + ": " + item);
    out.push_back(v);
  }
  return out;
}

template <class T>
T parse_one(const std::string& key, const std::string& text) {
  const auto v = parse_list<T>(key, text);
  if (v.size() != 1) throw Error(ErrorKind::Parameter, key + " needs exactly one value");
  return v.front();
}

}  // namespace

std::vector<double> MonteCarloConfig::alpha_list() const {
  return alphas.empty() ? std::vector<double>{stable.alpha} : alphas;
}

void MonteCarloConfig::validate() const {
  if (M < 1) throw Error(ErrorKind::Parameter, "M must be at least 1");
  if (T.empty()) throw Error(ErrorKind::Parameter, "T list is empty");
  for (auto t : T)
    if (t < 50) throw Error(ErrorKind::Parameter, "T entries must be at least 50");
  dgp.validate();
  if (!is_stationary(dgp)) throw Error(ErrorKind::Parameter, "dgp is not stationary");
  if (order() == 0) throw Error(ErrorKind::Parameter, "candidate order must be positive");
  for (double a : alpha_list()) StableParams(a, stable.beta, stable.gamma, stable.delta);
}

MonteCarloConfig parse_mc_config(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw Error(ErrorKind::Parameter, std::string("config: ") + e.what());
  }
  MonteCarloConfig cfg;
  std::string family = "mixed";
  std::vector<double> phi, varphi;
  for (const auto& [key, node] : tree) {
    const std::string v = node.get_value<std::string>();
    if (key == "family") family = v;
    else if (key == "phi") phi = parse_list<double>(key, v);
    else if (key == "varphi") varphi = parse_list<double>(key, v);
    else if (key == "alpha") cfg.alphas = parse_list<double>(key, v);
    else if (key == "beta") cfg.stable.beta = parse_one<double>(key, v);
    else if (key == "gamma") cfg.stable.gamma = parse_one<double>(key, v);
    else if (key == "delta") cfg.stable.delta = parse_one<double>(key, v);
    else if (key == "T") cfg.T = parse_list<std::size_t>(key, v);
    else if (key == "M") cfg.M = parse_one<std::size_t>(key, v);
    else if (key == "seed") cfg.seed = parse_one<std::uint64_t>(key, v);
    else if (key == "p") cfg.p = parse_one<std::size_t>(key, v);
    else if (key == "m") cfg.objective.m = parse_one<double>(key, v);
    else throw Error(ErrorKind::Parameter, "unknown config key: " + key);
  }
  if (!cfg.alphas.empty()) cfg.stable.alpha = cfg.alphas.front();
  const Family f = family_from_string(family);
  cfg.dgp = f == Family::Causal      ? ModelSpec::causal(phi)
            : f == Family::Noncausal ? ModelSpec::noncausal(varphi)
                                     : ModelSpec::mixed(phi, varphi);
  cfg.validate();
  return cfg;
}

ReplicationRecord mc_replicate(const MonteCarloConfig& config, std::size_t alpha_index,
                               std::size_t T_index, std::size_t replication) {
  ReplicationRecord rec;
  rec.alpha = config.alpha_list().at(alpha_index);
  rec.T = config.T.at(T_index);
  rec.replication = replication;
  rec.seed = stream_seed(config.seed, {alpha_index, T_index, replication});
  try {
    StableParams sp(rec.alpha, config.stable.beta, config.stable.gamma, config.stable.delta);
    const auto y = simulate_series(config.dgp, sp, rec.T, rec.seed);
    StrategyOptions opts;
    opts.objective = config.objective;
    opts.objective.threads = 1;
    opts.bfgs = config.bfgs;
    opts.bfgs.trace = nullptr;
    const auto report = estimate_candidates(y, config.order(), opts);
    for (const auto& c : report.candidates) {
      rec.rt.push_back(c.result.rt);
      rec.converged.push_back(c.result.converged);
    }
    if (report.selected) {
      const auto& sel = report.candidates[*report.selected];
      rec.selected = sel.label();
      rec.estimate = sel.result.spec.params();
      rec.correct = sel.family == config.dgp.family && sel.r == config.dgp.r() &&
                    sel.s == config.dgp.s();
    } else {
      rec.failed = true;
      rec.error = "no candidate converged";
    }
  } catch (const Error& e) {
    rec.failed = true;
    rec.error = e.what();
  }
  if (rec.failed) {
    log::info("replication " + std::to_string(replication) + " failed: " + rec.error);
  }
  return rec;
}

MonteCarloReport mc_run(const MonteCarloConfig& config) {
  config.validate();
  const auto alphas = config.alpha_list();
  const std::size_t cells = alphas.size() * config.T.size();
  const std::size_t M = config.M;

  MonteCarloReport report;
  report.config = config;
  report.records.resize(cells * M);
  parallel_for(cells * M, config.threads, [&](std::size_t job) {
    const std::size_t cell = job / M;
    report.records[job] = mc_replicate(config, cell / config.T.size(), cell % config.T.size(), job % M);
  });

  const std::size_t k = config.dgp.order();
  for (std::size_t cell = 0; cell < cells; ++cell) {
    CellSummary s;
    s.alpha = alphas[cell / config.T.size()];
    s.T = config.T[cell % config.T.size()];
    s.replications = M;
    s.mean.assign(k, 0.0);
    s.sd.assign(k, 0.0);
    for (std::size_t r = 0; r < M; ++r) {
      const auto& rec = report.records[cell * M + r];
      if (rec.failed) ++s.failures;
      if (!rec.correct) continue;
      ++s.correct;
      for (std::size_t i = 0; i < k; ++i) s.mean[i] += rec.estimate[i];
    }
    s.rate = static_cast<double>(s.correct) / static_cast<double>(M);
    const double nc = static_cast<double>(s.correct);
    for (std::size_t i = 0; i < k; ++i) {
      if (s.correct == 0) {
        s.mean[i] = s.sd[i] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      s.mean[i] /= nc;
      double ss = 0.0;
      for (std::size_t r = 0; r < M; ++r) {
        const auto& rec = report.records[cell * M + r];
        if (rec.correct) ss += (rec.estimate[i] - s.mean[i]) * (rec.estimate[i] - s.mean[i]);
      }
      s.sd[i] = s.correct > 1 ? std::sqrt(ss / (nc - 1.0)) : 0.0;
    }
    report.cells.push_back(std::move(s));
  }
  return report;
}

}  // namespace mixar
