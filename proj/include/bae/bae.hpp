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

#ifndef BAE_BAE_HPP_
#define BAE_BAE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "bae/design.hpp"
#include "bae/model.hpp"
#include "bae/smc.hpp"
#include "bae/trace.hpp"

namespace bae {

struct NoNoise {};
/// Inference assumes this coherence time.
struct KnownNoise {
  double coherence_time = 0.0;
};
/// Coherence time learned from decay measurements before the main phase and
/// then frozen at its posterior mean.
struct PreEstimateNoise {
  double max_coherence_time = 0.0;
  std::int64_t shots = 500;
  std::int64_t n_times = 50;
};
using NoiseMode = std::variant<NoNoise, KnownNoise, PreEstimateNoise>;

struct MaxQueries {
  std::int64_t queries = 100000;
};
struct MaxIterations {
  std::int64_t iterations = 100;
};
struct TargetStd {
  double std_dev = 1e-3;
};
using Termination = std::variant<MaxQueries, MaxIterations, TargetStd>;

struct BaeConfig {
  std::int64_t warmup_shots = 100;
  NoiseMode noise = NoNoise{};
  Termination termination = MaxQueries{};
  UtilitySpec utility = UtilitySpec::negative_variance();
  std::int64_t shots_per_control = 1;
  std::size_t particles = 1000;
  /// Metropolis moves are checked against the full dataset; Liu-West moves
  /// only see the ensemble moments.
  ResampleConfig resample{MetropolisKernel{1}, 500.0};
  DesignHyperparams design;
  /// Fold pre-estimation queries into the cumulative count (and budget).
  bool count_pre_estimation = true;
  /// Safety stop for rules that may never trigger (e.g. an unreachable std).
  std::int64_t iteration_cap = 1000000;

  void validate() const;
};

/// Annealed defaults: ESS target 0.9 N with resampling below 0.95 N, so every
/// step aims at a modest ESS drop followed by a resample. A target at or
/// above the threshold stalls on uninformative controls; a target far below
/// the largest single-shot ESS drop favours aliased, oversized controls.
double default_ess_target(std::size_t particles);
double default_annealed_threshold(std::size_t particles);

struct CoherenceEstimate {
  ParticleEnsemble posterior;
  std::vector<Observation> data;  // in assimilation (descending time) order
  std::int64_t queries = 0;
};

/// Decay-time evolution grid t_j = max_T * j / n_times, j = 1..n_times.
std::vector<double> decay_times(double max_coherence_time, std::int64_t n_times);

/// Shots spread evenly over the decay times (earlier times take any
/// remainder), assimilated from the longest time down under a uniform prior
/// on (0, max_T]. Each shot at time t costs 2 ceil(t) + 1 queries.
CoherenceEstimate estimate_coherence_time(const PreEstimateNoise& params,
                                          const AmplitudeModel& truth,
                                          std::uint64_t seed,
                                          std::size_t particles,
                                          const ResampleConfig& resample);

/// Warm-up at m = 0, then greedy adaptive measurements until termination.
/// The estimate is the posterior mean of sin^2(theta).
RunTrace run_bae(const BaeConfig& config, const AmplitudeModel& truth,
                 std::uint64_t seed);

/// run_bae with the ESS-target utility. A negative-variance utility in
/// `config` is replaced by ess_target(default_ess_target(N)) and the
/// resampling threshold by default_annealed_threshold(N); an explicit
/// ess_target utility is used as given.
RunTrace run_annealed_bae(const BaeConfig& config, const AmplitudeModel& truth,
                          std::uint64_t seed);

/// Amplitude posterior summaries.
double amplitude_mean(const ParticleEnsemble& ensemble);
double amplitude_std(const ParticleEnsemble& ensemble);

/// Runs the same loop as run_bae but also hands back the final ensemble,
/// for credible-interval checks.
struct BaeResult {
  RunTrace trace;
  std::optional<ParticleEnsemble> posterior;
};
BaeResult run_bae_with_posterior(const BaeConfig& config,
                                 const AmplitudeModel& truth,
                                 std::uint64_t seed);

}  // namespace bae

#endif  // BAE_BAE_HPP_
