// Copyright 2026 The BAE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bae/bae.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"

namespace bae {
namespace {

BaeConfig small_config(std::int64_t max_queries) {
  BaeConfig c;
  c.particles = 300;
  c.resample.ess_threshold = 150;
  c.termination = MaxQueries{max_queries};
  return c;
}

// Posterior over T on a dense grid for decay data under a uniform prior on
// (0, max_T]. Returns (grid, normalized masses).
std::pair<std::vector<double>, std::vector<double>> decay_grid_posterior(
    const std::vector<Observation>& data, double max_t, int points) {
  std::vector<double> t(points), mass(points);
  double total = 0.0;
  std::vector<double> logs(points);
  double best = -INFINITY;
  for (int i = 0; i < points; ++i) {
    t[i] = (i + 0.5) * max_t / points;
    double lp = 0.0;
    for (const Observation& o : data) {
      const double p = (1.0 + std::exp(-o.control / t[i])) / 2.0;
      lp += o.ones * std::log(p) + (o.shots - o.ones) * std::log1p(-p);
    }
    logs[i] = lp;
    best = std::max(best, lp);
  }
  for (int i = 0; i < points; ++i) total += (mass[i] = std::exp(logs[i] - best));
  for (double& m : mass) m /= total;
  return {t, mass};
}

TEST(bae, ZeroAmplitudeWarmupConcentratesNearZero) {
  BaeConfig c;
  c.termination = MaxIterations{0};
  const RunTrace t = run_bae(c, {0.0, NoiseModel::noiseless()}, 4);
  ASSERT_EQ(t.records.size(), 1u);
  EXPECT_EQ(t.records[0].phase, Phase::warmup);
  EXPECT_EQ(t.records[0].ones, 0);
  EXPECT_EQ(t.records[0].shots, 100);
  EXPECT_LT(t.estimate, 0.05);
}

TEST(bae, QueryBudgetAccounting) {
  for (std::int64_t q : {500, 3000, 20000}) {
    BaeConfig c = small_config(q);
    c.shots_per_control = 3;
    const RunTrace t = run_bae(c, {0.42, NoiseModel::noiseless()}, 11);
    ASSERT_FALSE(t.failure.has_value());
    const TraceRecord& last = t.records.back();
    const std::int64_t slack = (2 * last.control + 1) * last.shots;
    EXPECT_GT(t.total_queries(), q - slack);
    EXPECT_LE(t.total_queries(), q + slack);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < t.records.size(); ++i) {
      const TraceRecord& r = t.records[i];
      EXPECT_EQ(r.step, static_cast<std::int64_t>(i));
      EXPECT_EQ(r.cost, query_cost(r.control, r.shots));
      sum += r.cost;
      EXPECT_EQ(r.queries, sum);
      if (i > 0) EXPECT_GT(r.queries, t.records[i - 1].queries);
      EXPECT_EQ(r.phase, i == 0 ? Phase::warmup : Phase::adaptive);
      EXPECT_EQ(r.shots, i == 0 ? 100 : 3);
    }
  }
}

TEST(bae, PreEstimationQueriesAreCounted) {
  BaeConfig c = small_config(5000);
  c.noise = PreEstimateNoise{6000.0, 100, 10};
  const AmplitudeModel truth{0.3, NoiseModel::with_coherence_time(3000.0)};
  const RunTrace counted = run_bae(c, truth, 2);
  std::int64_t pre = 0;
  for (double t : decay_times(6000.0, 10)) pre += 10 * (2 * static_cast<std::int64_t>(std::ceil(t)) + 1);
  EXPECT_EQ(counted.offset_queries, pre);
  std::int64_t sum = pre;
  for (const TraceRecord& r : counted.records) sum += r.cost;
  EXPECT_EQ(counted.total_queries(), sum);
  EXPECT_TRUE(counted.coherence_time_estimate.has_value());
  // The pre-estimation alone exceeds the budget, so only the warm-up runs.
  EXPECT_EQ(counted.records.size(), 1u);

  c.count_pre_estimation = false;
  const RunTrace uncounted = run_bae(c, truth, 2);
  EXPECT_EQ(uncounted.offset_queries, 0);
  EXPECT_EQ(*uncounted.coherence_time_estimate, *counted.coherence_time_estimate);
  EXPECT_GE(uncounted.total_queries(), 5000);
}

TEST(bae, TerminationRules) {
  BaeConfig c = small_config(1);
  c.termination = MaxIterations{7};
  EXPECT_EQ(run_bae(c, {0.6, {}}, 1).records.size(), 8u);
  c.termination = TargetStd{0.01};
  const RunTrace t = run_bae(c, {0.6, {}}, 1);
  EXPECT_LE(t.records.back().std_dev, 0.01);
  EXPECT_GT(t.records[t.records.size() - 2].std_dev, 0.01);
}

TEST(bae, ConfigValidation) {
  BaeConfig c;
  c.warmup_shots = 0;
  EXPECT_THROW(run_bae(c, {0.5, {}}, 0), std::invalid_argument);
  c = BaeConfig{};
  c.noise = PreEstimateNoise{0.0, 500, 50};
  EXPECT_THROW(run_bae(c, {0.5, {}}, 0), std::invalid_argument);
  c = BaeConfig{};
  c.noise = KnownNoise{-1.0};
  EXPECT_THROW(run_bae(c, {0.5, {}}, 0), std::invalid_argument);
  c = BaeConfig{};
  c.utility = UtilitySpec::ess_target(5000.0);
  EXPECT_THROW(run_bae(c, {0.5, {}}, 0), std::invalid_argument);
}

TEST(bae, IdenticalInputsGiveIdenticalTraces) {
  BaeConfig c = small_config(4000);
  c.noise = KnownNoise{500.0};
  const AmplitudeModel truth{0.77, NoiseModel::with_coherence_time(500.0)};
  const RunTrace a = run_bae(c, truth, 99);
  const RunTrace b = run_bae(c, truth, 99);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].control, b.records[i].control);
    EXPECT_EQ(a.records[i].ones, b.records[i].ones);
    EXPECT_EQ(a.records[i].estimate, b.records[i].estimate);
    EXPECT_EQ(a.records[i].std_dev, b.records[i].std_dev);
  }
  EXPECT_EQ(a.log_evidence, b.log_evidence);
  const RunTrace other = run_bae(c, truth, 100);
  EXPECT_NE(other.estimate, a.estimate);
}

TEST(bae, EstimateConvergesOnFixedAmplitudes) {
  for (double a : {0.03, 0.25, 0.5, 0.81}) {
    BaeConfig c = small_config(20000);
    const RunTrace t = run_bae(c, {a, NoiseModel::noiseless()}, 7);
    EXPECT_NEAR(t.estimate, a, 0.01) << a;
    EXPECT_LT(t.records.back().std_dev, 0.01);
  }
}

TEST(bae, WarmupShrinksPosteriorSpreadOnAverage) {
  const std::vector<std::int64_t> sizes = {1, 10, 30, 100};
  std::vector<double> avg(sizes.size(), 0.0);
  Rng draw(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int runs = 60;
  for (int s = 0; s < runs; ++s) {
    const double a = u(draw);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      BaeConfig c = small_config(1);
      c.warmup_shots = sizes[i];
      c.termination = MaxIterations{0};
      avg[i] += run_bae(c, {a, {}}, derive_seed(3, s)).records[0].std_dev / runs;
    }
  }
  EXPECT_LT(avg[0], std::sqrt(1.0 / 12.0));
  for (std::size_t i = 1; i < avg.size(); ++i) EXPECT_LT(avg[i], avg[i - 1]);
}

TEST(bae, DecayTimes) {
  const std::vector<double> t = decay_times(6000.0, 4);
  EXPECT_EQ(t, (std::vector<double>{1500.0, 3000.0, 4500.0, 6000.0}));
}

TEST(bae, CoherenceEstimateAgreesWithGridPosterior) {
  const PreEstimateNoise params{6000.0, 500, 50};
  const AmplitudeModel truth{0.4, NoiseModel::with_coherence_time(3000.0)};
  const CoherenceEstimate est =
      estimate_coherence_time(params, truth, 21, 1000, ResampleConfig{MetropolisKernel{1}, 500});
  ASSERT_EQ(est.data.size(), 50u);
  std::int64_t shots = 0;
  for (std::size_t i = 0; i < est.data.size(); ++i) {
    shots += est.data[i].shots;
    if (i > 0) EXPECT_LT(est.data[i].control, est.data[i - 1].control);
  }
  EXPECT_EQ(shots, 500);

  const auto [grid, mass] = decay_grid_posterior(est.data, 6000.0, 100000);
  double acc = 0.0, lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (acc < 0.005 && acc + mass[i] >= 0.005) lo = grid[i];
    if (acc < 0.995 && acc + mass[i] >= 0.995) hi = grid[i];
    acc += mass[i];
  }
  const double m = mean(est.posterior);
  EXPECT_GT(m, lo);
  EXPECT_LT(m, hi);
}

TEST(bae, CoherenceEstimateOrderIndependentWithoutResampling) {
  const PreEstimateNoise params{4000.0, 200, 20};
  const AmplitudeModel truth{0.4, NoiseModel::with_coherence_time(2500.0)};
  const CoherenceEstimate est =
      estimate_coherence_time(params, truth, 5, 500, ResampleConfig{LiuWestKernel{}, 1e-9});
  Rng rng(1);
  const ParticleEnsemble start(Prior::uniform(0.0, 4000.0), 500, rng);
  ParticleEnsemble descending = start, ascending = start;
  const ResampleConfig keep{LiuWestKernel{}, 1e-9};
  for (const Observation& o : est.data) bayesian_update(descending, DecayLikelihood(), o, keep, rng);
  for (auto it = est.data.rbegin(); it != est.data.rend(); ++it) {
    bayesian_update(ascending, DecayLikelihood(), *it, keep, rng);
  }
  for (std::size_t i = 0; i < start.size(); ++i) {
    EXPECT_NEAR(descending.weights()[i], ascending.weights()[i], 1e-10);
  }
}

TEST(bae, LongTimeOnesShiftMassToLargeCoherence) {
  Rng rng(3);
  ParticleEnsemble e(Prior::uniform(0.0, 1000.0), 2000, rng);
  const double prior_mean = mean(e);
  bayesian_update(e, DecayLikelihood(), Observation(1000.0, 20, 20),
                  ResampleConfig{LiuWestKernel{}, 1e-9}, rng);
  EXPECT_GT(mean(e), prior_mean + 100.0);
}

TEST(bae, AnnealedTraceSharesSchema) {
  BaeConfig c = small_config(3000);
  const RunTrace plain = run_bae(c, {0.3, {}}, 8);
  const RunTrace annealed = run_annealed_bae(c, {0.3, {}}, 8);
  EXPECT_EQ(plain.algorithm, "bae");
  EXPECT_EQ(annealed.algorithm, "annealed_bae");
  EXPECT_EQ(annealed.records.front().phase, Phase::warmup);
  EXPECT_EQ(annealed.records.front().control, 0);
  EXPECT_GE(annealed.total_queries(), 3000);
  EXPECT_NEAR(annealed.estimate, 0.3, 0.05);
}

TEST(bae, FullEssTargetPrefersUninformativeControls) {
  // With target N the ideal step leaves every weight unchanged, so a fully
  // decohered control scores the maximal utility 0.
  const GroverLikelihood lik(NoiseModel::with_coherence_time(3.0));
  Rng rng(2);
  ParticleEnsemble e(Prior::uniform_amplitude(), 400, rng);
  DesignWindow w = init_window(DesignHyperparams{});
  w.c_min = 200;
  w.c_max = 400;
  const ControlChoice choice = optimize_control(e, w, UtilitySpec::ess_target(400.0), lik);
  EXPECT_NEAR(*std::max_element(choice.utilities.begin(), choice.utilities.end()), 0.0, 1e-9);
}

TEST(bae, AnnealedDefaults) {
  EXPECT_DOUBLE_EQ(default_ess_target(1000), 900.0);
  EXPECT_DOUBLE_EQ(default_annealed_threshold(1000), 950.0);
}

TEST(bae, AmplitudeSummaries) {
  ParticleEnsemble e(Prior::uniform_amplitude(), {kPi / 6, kPi / 4}, {0.5, 0.5});
  EXPECT_NEAR(amplitude_mean(e), 0.375, 1e-15);
  EXPECT_NEAR(amplitude_std(e), 0.125, 1e-15);
}

}  // namespace
}  // namespace bae
