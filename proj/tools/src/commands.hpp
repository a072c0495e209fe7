#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "io.hpp"

namespace mixar::cli {

struct Session {
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::ostream* out = nullptr;
  Manifest manifest;
  std::string manifest_path;
};

struct SeriesInput {
  std::string path;
  std::string column;  // empty: first value column
  std::string transform = "none";
  double lambda = 129600.0;
};

struct SimulateArgs {
  std::string family = "causal";
  std::vector<double> phi;
  std::vector<double> varphi;
  double alpha = 1.5;
  double beta = 0.25;
  double gamma = 1.0;
  double delta = 0.0;
  std::size_t T = 0;
  std::string output = "-";
};

struct EstimateArgs {
  SeriesInput input;
  std::string family;
  std::size_t r = 0;
  std::size_t s = 0;
  std::vector<double> start;
  double m = 0.5;
  std::string output = "-";
  std::string trace;
};

struct IdentifyArgs {
  SeriesInput input;
  std::size_t p = 0;
  std::size_t pmax = 4;
  double m = 0.5;
  double n = -1.0;  // negative: 1 - m
  std::string output = "-";
};

struct MonteCarloArgs {
  std::string config;
  std::string prefix;
  std::size_t M = 0;  // 0: from the config
};

struct IngestArgs {
  std::string input;
  std::vector<std::string> columns;  // empty: all
  std::string transform = "hp";
  double lambda = 129600.0;
  std::size_t pmax = 4;
  std::size_t lb_lags = 2;
  double m = 0.5;
  std::string output;
  std::string diagnostics;
  std::string table;
};

struct SurfaceArgs {
  SeriesInput input;
  std::vector<double> phi_range{0.0, 1.0};
  std::vector<double> varphi_range{0.0, 1.0};
  std::size_t steps = 101;
  double m = 0.5;
  std::string output = "-";
};

struct SpectraArgs {
  SeriesInput input;
  std::string family = "causal";
  std::vector<double> phi;
  std::vector<double> varphi;
  double k2 = 1.0;
  double k3 = 1.0;
  std::size_t T = 0;
  std::string spectrum;
  std::string bispectrum;
};

void cmd_simulate(const SimulateArgs& a, Session& s);
void cmd_estimate(const EstimateArgs& a, Session& s);
void cmd_identify(const IdentifyArgs& a, Session& s);
void cmd_montecarlo(const MonteCarloArgs& a, Session& s);
void cmd_ingest(const IngestArgs& a, Session& s);
void cmd_rt_surface(const SurfaceArgs& a, Session& s);
void cmd_dump_spectra(const SpectraArgs& a, Session& s);

}  // namespace mixar::cli
