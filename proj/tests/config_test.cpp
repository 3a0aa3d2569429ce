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

#include "bae/config.hpp"

#include <sstream>
#include <variant>

#include "gtest/gtest.h"

namespace bae {
namespace {

ConfigMap parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

BenchmarkConfig load(const std::string& text) { return benchmark_config_from(parse(text)); }

TEST(config, ParsesKeyValueLines) {
  const ConfigMap m = parse("# comment\n\n  trials = 7  # trailing\nalgorithm=mlae_eis\n");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.at("trials"), "7");
  EXPECT_EQ(m.at("algorithm"), "mlae_eis");
}

TEST(config, ParseErrorsNameTheLine) {
  try {
    parse("trials = 3\nbogus line\n");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse("trials = 3\ntrials = 4\n"), std::runtime_error);
  EXPECT_THROW(parse("trials =\n"), std::runtime_error);
  EXPECT_THROW(parse("= 3\n"), std::runtime_error);
}

TEST(config, EmptyFileGivesDefaults) {
  const BenchmarkConfig c = load("");
  EXPECT_EQ(c.algorithm, Algorithm::bae);
  EXPECT_EQ(c.trials, 30);
  EXPECT_EQ(c.bins, 10);
  EXPECT_FALSE(c.noise.enabled);
  EXPECT_EQ(c.bae.particles, 1000u);
  EXPECT_EQ(c.bae.warmup_shots, 100);
  EXPECT_EQ(std::get<MaxQueries>(c.bae.termination).queries, 100000);
  EXPECT_TRUE(std::holds_alternative<NoNoise>(c.bae.noise));
  EXPECT_TRUE(std::holds_alternative<MetropolisKernel>(c.bae.resample.kernel));
  EXPECT_DOUBLE_EQ(c.bae.resample.ess_threshold, 500.0);
  EXPECT_EQ(c.bae.utility.kind, UtilitySpec::Kind::negative_variance);
  EXPECT_EQ(c.classical_first_shots, 100);
}

TEST(config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(load("colour = blue\n"), std::runtime_error);
  EXPECT_THROW(load("trials = many\n"), std::runtime_error);
  EXPECT_THROW(load("trials = 3.5\n"), std::runtime_error);
  EXPECT_THROW(load("target_std = 1e-3x\n"), std::runtime_error);
  EXPECT_THROW(load("algorithm = iae\n"), std::runtime_error);
  EXPECT_THROW(load("kernel = gibbs\n"), std::runtime_error);
  EXPECT_THROW(load("noise = gaussian\n"), std::runtime_error);
  EXPECT_THROW(load("count_pre_estimation = maybe\n"), std::runtime_error);
}

TEST(config, ValidationFailuresAreReported) {
  try {
    load("trials = 0\n");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("invalid config"), std::string::npos);
  }
  EXPECT_THROW(load("bins = 1\n"), std::runtime_error);
  EXPECT_THROW(load("classical_shots = 10\nclassical_first_shots = 20\n"), std::runtime_error);
}

TEST(config, TerminationVariants) {
  EXPECT_EQ(std::get<MaxIterations>(load("termination = max_iterations\nmax_iterations = 12\n")
                                        .bae.termination)
                .iterations,
            12);
  EXPECT_DOUBLE_EQ(
      std::get<TargetStd>(load("termination = target_std\ntarget_std = 2e-4\n").bae.termination)
          .std_dev,
      2e-4);
}

TEST(config, KernelAndThreshold) {
  const BenchmarkConfig c = load("particles = 400\nkernel = liu_west\nliu_west_alpha = 0.9\n");
  ASSERT_TRUE(std::holds_alternative<LiuWestKernel>(c.bae.resample.kernel));
  EXPECT_DOUBLE_EQ(std::get<LiuWestKernel>(c.bae.resample.kernel).alpha, 0.9);
  EXPECT_DOUBLE_EQ(c.bae.resample.ess_threshold, 200.0);
  const BenchmarkConfig d = load("metropolis_steps = 3\ness_threshold = 123\n");
  EXPECT_EQ(std::get<MetropolisKernel>(d.bae.resample.kernel).steps, 3);
  EXPECT_DOUBLE_EQ(d.bae.resample.ess_threshold, 123.0);
}

TEST(config, EssTargetUtilityDefaults) {
  const BenchmarkConfig c = load("particles = 200\nutility = ess_target\n");
  EXPECT_EQ(c.bae.utility.kind, UtilitySpec::Kind::ess_target);
  EXPECT_DOUBLE_EQ(c.bae.utility.target, default_ess_target(200));
  EXPECT_DOUBLE_EQ(c.bae.resample.ess_threshold, default_annealed_threshold(200));
  const BenchmarkConfig d = load("particles = 200\ness_target = 150\ness_threshold = 120\n");
  EXPECT_DOUBLE_EQ(d.bae.utility.target, 150.0);
  EXPECT_DOUBLE_EQ(d.bae.resample.ess_threshold, 120.0);
}

TEST(config, NoiseModes) {
  const BenchmarkConfig known = load("noise_mode = known\nknown_t = 3000\n");
  EXPECT_DOUBLE_EQ(std::get<KnownNoise>(known.bae.noise).coherence_time, 3000.0);
  EXPECT_FALSE(known.bae_known_noise);

  const BenchmarkConfig drawn = load("noise = uniform\nnoise_mode = known\n");
  EXPECT_TRUE(drawn.bae_known_noise);
  EXPECT_TRUE(drawn.noise.enabled);

  EXPECT_THROW(load("noise_mode = known\n"), std::runtime_error);

  const BenchmarkConfig pre = load(
      "noise_mode = pre_estimate\npre_max_t = 10000\npre_shots = 200\npre_times = 20\n"
      "count_pre_estimation = false\n");
  const auto& p = std::get<PreEstimateNoise>(pre.bae.noise);
  EXPECT_DOUBLE_EQ(p.max_coherence_time, 10000.0);
  EXPECT_EQ(p.shots, 200);
  EXPECT_EQ(p.n_times, 20);
  EXPECT_FALSE(pre.bae.count_pre_estimation);
}

TEST(config, ReferenceAlgorithmKeys) {
  const BenchmarkConfig c = load(
      "algorithm = canonical_qae\nqae_min_qubits = 2\nqae_max_qubits = 6\nqae_shots = 40\n"
      "mlae_stages = 9\nmlae_shots = 25\nmlae_noise_aware = yes\nseed = 17\nthreads = 2\n");
  EXPECT_EQ(c.algorithm, Algorithm::canonical_qae);
  EXPECT_EQ(c.qae_min_qubits, 2);
  EXPECT_EQ(c.qae_max_qubits, 6);
  EXPECT_EQ(c.qae_shots, 40);
  EXPECT_EQ(c.mlae.stages, 9);
  EXPECT_EQ(c.mlae.shots_per_stage, 25);
  EXPECT_TRUE(c.mlae_noise_aware);
  EXPECT_EQ(c.seed, 17u);
  EXPECT_EQ(c.threads, 2u);
}

}  // namespace
}  // namespace bae
