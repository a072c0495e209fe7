#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "mixar/model.hpp"
#include "mixar/objective.hpp"
#include "mixar/optimize.hpp"
#include "mixar/simulate.hpp"

namespace mixar {

struct MonteCarloConfig {
  ModelSpec dgp;
  StableParams stable;
  std::vector<double> alphas;     // empty: stable.alpha alone
  std::vector<std::size_t> T{200};
  std::size_t M = 100;
  std::uint64_t seed = 1;
  std::size_t p = 0;              // 0: dgp order
  ObjectiveOptions objective;
  BfgsOptions bfgs;
  unsigned threads = 1;

  std::vector<double> alpha_list() const;
  std::size_t order() const { return p == 0 ? dgp.order() : p; }
  /// Throws Error(Parameter) for M < 1, T < 50 or a non-stationary dgp.
  void validate() const;
};

/// Parses "key = value" lines ('#' and ';' start comments). Keys: family,
/// phi, varphi, alpha, beta, gamma, delta, T, M, seed, p, m. Lists are
/// comma separated.
MonteCarloConfig parse_mc_config(const std::string& text);

struct ReplicationRecord {
  double alpha = 0.0;
  std::size_t T = 0;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  std::string selected;           // label of the selected spec, empty when none
  bool correct = false;
  std::vector<double> estimate;   // selected spec parameters
  std::vector<double> rt;         // per candidate, r = p .. 0
  std::vector<bool> converged;
};

struct CellSummary {
  double alpha = 0.0;
  std::size_t T = 0;
  std::size_t replications = 0;
  std::size_t failures = 0;
  std::size_t correct = 0;
  double rate = 0.0;              // correct / replications
  std::vector<double> mean;       // over correctly identified replications
  std::vector<double> sd;
};

struct MonteCarloReport {
  MonteCarloConfig config;
  std::vector<CellSummary> cells;           // alpha-major, then T
  std::vector<ReplicationRecord> records;   // cell order, then replication
};

/// Runs every (alpha, T) cell. Each replication draws from its own stream so
/// the report does not depend on config.threads.
MonteCarloReport mc_run(const MonteCarloConfig& config);

/// One replication; exposed for tests and the acceptance harness.
ReplicationRecord mc_replicate(const MonteCarloConfig& config, std::size_t alpha_index,
                               std::size_t T_index, std::size_t replication);

}  // namespace mixar
