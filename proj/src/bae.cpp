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
#include <stdexcept>
#include <string>
#include <utility>

#include "bae/likelihood.hpp"

namespace bae {
namespace {

// Independent RNG streams per run component.
enum Stream : std::uint64_t { kDataStream = 0, kSmcStream = 1, kPreEstimateStream = 2 };

double sin_squared(std::span<const double> x) {
  double s = std::sin(x[0]);
  return s * s;
}

}  // namespace

void BaeConfig::validate() const {
  if (warmup_shots < 1) throw std::invalid_argument("warmup_shots must be positive");
  if (shots_per_control < 1) {
    throw std::invalid_argument("shots_per_control must be positive");
  }
  if (particles < 2) throw std::invalid_argument("need at least two particles");
  resample.validate(particles);
  design.validate();
  if (const auto* k = std::get_if<KnownNoise>(&noise); k && !(k->coherence_time > 0.0)) {
    throw std::invalid_argument("known coherence time must be positive");
  }
  if (const auto* p = std::get_if<PreEstimateNoise>(&noise)) {
    if (!(p->max_coherence_time > 0.0)) {
      throw std::invalid_argument("pre-estimation requires max_T > 0");
    }
    if (p->n_times < 1 || p->shots < p->n_times) {
      throw std::invalid_argument("pre-estimation requires shots >= n_times >= 1");
    }
  }
  if (const auto* q = std::get_if<MaxQueries>(&termination); q && q->queries < 1) {
    throw std::invalid_argument("max_queries must be positive");
  }
  if (const auto* it = std::get_if<MaxIterations>(&termination); it && it->iterations < 0) {
    throw std::invalid_argument("max_iterations must be non-negative");
  }
  if (const auto* s = std::get_if<TargetStd>(&termination); s && !(s->std_dev > 0.0)) {
    throw std::invalid_argument("target std must be positive");
  }
  if (utility.kind == UtilitySpec::Kind::ess_target &&
      !(utility.target > 0.0 && utility.target <= static_cast<double>(particles))) {
    throw std::invalid_argument("ESS target must lie in (0, particles]");
  }
}

double default_ess_target(std::size_t particles) {
  return 0.9 * static_cast<double>(particles);
}

double default_annealed_threshold(std::size_t particles) {
  return 0.95 * static_cast<double>(particles);
}

double amplitude_mean(const ParticleEnsemble& ensemble) {
  return expectation(ensemble, sin_squared);
}

double amplitude_std(const ParticleEnsemble& ensemble) {
  const double mu = amplitude_mean(ensemble);
  double second = expectation(ensemble, [](std::span<const double> x) {
    double a = sin_squared(x);
    return a * a;
  });
  return std::sqrt(std::max(0.0, second - mu * mu));
}

std::vector<double> decay_times(double max_coherence_time, std::int64_t n_times) {
  std::vector<double> times;
  times.reserve(n_times);
  for (std::int64_t j = 1; j <= n_times; ++j) {
    times.push_back(max_coherence_time * static_cast<double>(j) /
                    static_cast<double>(n_times));
  }
  return times;
}

CoherenceEstimate estimate_coherence_time(const PreEstimateNoise& params,
                                          const AmplitudeModel& truth,
                                          std::uint64_t seed,
                                          std::size_t particles,
                                          const ResampleConfig& resample) {
  if (!(params.max_coherence_time > 0.0)) {
    throw std::invalid_argument("pre-estimation requires max_T > 0");
  }
  if (params.n_times < 1 || params.shots < params.n_times) {
    throw std::invalid_argument("pre-estimation requires shots >= n_times >= 1");
  }
  Rng data_rng(derive_seed(seed, kDataStream));
  Rng smc_rng(derive_seed(seed, kSmcStream));
  const std::vector<double> times = decay_times(params.max_coherence_time, params.n_times);
  const std::int64_t base = params.shots / params.n_times;
  const std::int64_t extra = params.shots % params.n_times;

  CoherenceEstimate out{
      ParticleEnsemble(Prior::uniform(0.0, params.max_coherence_time), particles,
                       smc_rng),
      {},
      0};
  DecayLikelihood likelihood;
  for (std::int64_t j = params.n_times - 1; j >= 0; --j) {
    const double t = times[j];
    const std::int64_t shots = base + (j < extra ? 1 : 0);
    const double p1 = (1.0 + truth.noise.damping(t)) / 2.0;
    std::binomial_distribution<std::int64_t> draw(shots, p1);
    Observation o(t, shots, draw(data_rng));
    bayesian_update(out.posterior, likelihood, o, resample, smc_rng);
    out.data.push_back(o);
    out.queries += shots * (2 * static_cast<std::int64_t>(std::ceil(t)) + 1);
  }
  return out;
}

BaeResult run_bae_with_posterior(const BaeConfig& config,
                                 const AmplitudeModel& truth,
                                 std::uint64_t seed) {
  config.validate();
  BaeResult result;
  RunTrace& trace = result.trace;
  trace.algorithm =
      config.utility.kind == UtilitySpec::Kind::ess_target ? "annealed_bae" : "bae";
  trace.seed = seed;

  NoiseModel inference_noise = NoiseModel::noiseless();
  if (const auto* k = std::get_if<KnownNoise>(&config.noise)) {
    inference_noise = NoiseModel::with_coherence_time(k->coherence_time);
  } else if (const auto* p = std::get_if<PreEstimateNoise>(&config.noise)) {
    CoherenceEstimate est =
        estimate_coherence_time(*p, truth, derive_seed(seed, kPreEstimateStream),
                                config.particles, config.resample);
    const double t_hat = mean(est.posterior);
    trace.coherence_time_estimate = t_hat;
    inference_noise = NoiseModel::with_coherence_time(t_hat);
    if (config.count_pre_estimation) trace.offset_queries = est.queries;
  }

  Rng data_rng(derive_seed(seed, kDataStream));
  Rng smc_rng(derive_seed(seed, kSmcStream));
  const GroverLikelihood likelihood(inference_noise);
  ParticleEnsemble ensemble(Prior::uniform_amplitude(), config.particles, smc_rng);

  std::int64_t queries = trace.offset_queries;
  auto assimilate = [&](Phase phase, Control m, std::int64_t shots) {
    Datum d = simulate_measurement(truth, m, shots, data_rng);
    bayesian_update(ensemble, likelihood, Observation(d), config.resample, smc_rng);
    TraceRecord r;
    r.step = static_cast<std::int64_t>(trace.records.size());
    r.phase = phase;
    r.control = m;
    r.shots = shots;
    r.ones = d.ones;
    r.cost = query_cost(m, shots);
    queries += r.cost;
    r.queries = queries;
    r.estimate = amplitude_mean(ensemble);
    r.std_dev = amplitude_std(ensemble);
    trace.records.push_back(r);
  };

  auto done = [&](std::int64_t iterations) {
    if (iterations >= config.iteration_cap) return true;
    if (const auto* q = std::get_if<MaxQueries>(&config.termination)) {
      return queries >= q->queries;
    }
    if (const auto* it = std::get_if<MaxIterations>(&config.termination)) {
      return iterations >= it->iterations;
    }
    return trace.records.back().std_dev <= std::get<TargetStd>(config.termination).std_dev;
  };

  try {
    assimilate(Phase::warmup, 0, config.warmup_shots);
    DesignWindow window = init_window(config.design);
    for (std::int64_t iterations = 0; !done(iterations); ++iterations) {
      ControlChoice choice = optimize_control(ensemble, window, config.utility, likelihood);
      window = choice.window;
      assimilate(Phase::adaptive, choice.control, config.shots_per_control);
    }
  } catch (const DegenerateEnsembleError& e) {
    trace.failure = e.what();
  }

  trace.estimate = trace.records.empty() ? amplitude_mean(ensemble)
                                         : trace.records.back().estimate;
  trace.log_evidence = ensemble.evidence_log();
  result.posterior = std::move(ensemble);
  return result;
}

RunTrace run_bae(const BaeConfig& config, const AmplitudeModel& truth,
                 std::uint64_t seed) {
  return run_bae_with_posterior(config, truth, seed).trace;
}

RunTrace run_annealed_bae(const BaeConfig& config, const AmplitudeModel& truth,
                          std::uint64_t seed) {
  BaeConfig annealed = config;
  if (annealed.utility.kind != UtilitySpec::Kind::ess_target) {
    annealed.utility = UtilitySpec::ess_target(default_ess_target(config.particles));
    annealed.resample.ess_threshold = default_annealed_threshold(config.particles);
  }
  return run_bae(annealed, truth, seed);
}

}  // namespace bae
