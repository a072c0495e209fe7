#include <gtest/gtest.h>

#include "mixar/error.hpp"
#include "mixar/montecarlo.hpp"

using namespace mixar;

namespace {

MonteCarloConfig small_config(const ModelSpec& dgp, std::size_t M, std::size_t T = 100) {
  MonteCarloConfig cfg;
  cfg.dgp = dgp;
  cfg.T = {T};
  cfg.M = M;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST(ParseConfig, AllKeys) {
  const auto cfg = parse_mc_config(
      "# mixed design\n"
      "family = mixed\nphi = 0.7\nvarphi = 0.2\n"
      "alpha = 1.5, 1.8\nbeta = 0.25\ngamma = 1\ndelta = 0\n"
      "T = 100, 200, 500\nM = 50\nseed = 9\np = 2\nm = 0.4\n");
  EXPECT_EQ(cfg.dgp, ModelSpec::mixed({0.7}, {0.2}));
  EXPECT_EQ(cfg.alpha_list(), (std::vector<double>{1.5, 1.8}));
  EXPECT_EQ(cfg.T, (std::vector<std::size_t>{100, 200, 500}));
  EXPECT_EQ(cfg.M, 50u);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.order(), 2u);
  EXPECT_DOUBLE_EQ(cfg.objective.m, 0.4);
  EXPECT_DOUBLE_EQ(cfg.stable.beta, 0.25);
}

TEST(ParseConfig, Errors) {
  EXPECT_THROW(parse_mc_config("family = causal\nphi = 0.7\nalpha = x\n"), Error);
  EXPECT_THROW(parse_mc_config("family = causal\nphi = 1.2\n").validate(), Error);
  EXPECT_THROW(parse_mc_config("family = causal\nphi = 0.5\nT = 20\n").validate(), Error);
}

TEST(McRun, SingleReplicationShape) {
  const auto rep = mc_run(small_config(ModelSpec::causal({0.7, 0.2}), 1));
  ASSERT_EQ(rep.records.size(), 1u);
  ASSERT_EQ(rep.cells.size(), 1u);
  EXPECT_EQ(rep.cells[0].replications, 1u);
  EXPECT_EQ(rep.records[0].rt.size(), 3u);
}

TEST(McRun, CellsAreAlphaMajor) {
  auto cfg = small_config(ModelSpec::noncausal({0.7, 0.2}), 2);
  cfg.alphas = {1.5, 1.8};
  cfg.T = {100, 200, 500};
  const auto rep = mc_run(cfg);
  ASSERT_EQ(rep.cells.size(), 6u);
  EXPECT_EQ(rep.cells[0].alpha, 1.5);
  EXPECT_EQ(rep.cells[2].T, 500u);
  EXPECT_EQ(rep.cells[3].alpha, 1.8);
  EXPECT_EQ(rep.records.size(), 12u);
}

TEST(McRun, IndependentOfThreadCount) {
  auto cfg = small_config(ModelSpec::mixed({0.7}, {0.2}), 6);
  const auto a = mc_run(cfg);
  cfg.threads = 4;
  const auto b = mc_run(cfg);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].estimate, b.records[i].estimate);
    EXPECT_EQ(a.records[i].rt, b.records[i].rt);
    EXPECT_EQ(a.records[i].seed, b.records[i].seed);
  }
  EXPECT_EQ(a.cells[0].mean, b.cells[0].mean);
}

TEST(McReplicate, MatchesRunRecord) {
  const auto cfg = small_config(ModelSpec::causal({0.7, 0.2}), 3);
  const auto rep = mc_run(cfg);
  const auto one = mc_replicate(cfg, 0, 0, 2);
  EXPECT_EQ(one.estimate, rep.records[2].estimate);
  EXPECT_EQ(one.selected, rep.records[2].selected);
}

TEST(McRun, SummaryOverCorrectReplications) {
  const auto rep = mc_run(small_config(ModelSpec::causal({0.7, 0.2}), 10, 200));
  const auto& c = rep.cells[0];
  std::size_t correct = 0;
  std::vector<double> sum(2, 0.0);
  for (const auto& r : rep.records) {
    if (!r.correct) continue;
    ++correct;
    for (std::size_t k = 0; k < 2; ++k) sum[k] += r.estimate[k];
  }
  EXPECT_EQ(c.correct, correct);
  EXPECT_DOUBLE_EQ(c.rate, double(correct) / 10.0);
  if (correct > 0)
    for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(c.mean[k], sum[k] / double(correct), 1e-12);
}

// Under Gaussian innovations the three families are not identified; no
// family should be picked almost always.
TEST(McRun, GaussianInnovationsDoNotIdentify) {
  auto cfg = small_config(ModelSpec::mixed({0.7}, {0.2}), 40, 200);
  cfg.stable = StableParams(2.0, 0.0);
  const auto rep = mc_run(cfg);
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& r : rep.records) {
    if (r.selected == "AR(2,0)") ++counts[0];
    else if (r.selected == "MAR(1,1)") ++counts[1];
    else if (r.selected == "AR(0,2)") ++counts[2];
  }
  for (auto n : counts) EXPECT_LT(double(n) / 40.0, 0.99);
}
