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

#include "bae/model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bae/rng.hpp"
#include "gtest/gtest.h"

namespace bae {
namespace {

TEST(model, AngleAmplitudeBoundaries) {
  EXPECT_DOUBLE_EQ(angle_from_amplitude(0.0), 0.0);
  EXPECT_DOUBLE_EQ(angle_from_amplitude(1.0), kHalfPi);
  EXPECT_NEAR(angle_from_amplitude(0.5), kPi / 4, 1e-15);
  EXPECT_NEAR(amplitude_from_angle(kPi / 4), 0.5, 1e-15);
}

TEST(model, AngleAmplitudeRoundTrip) {
  for (int i = 0; i <= 1000; ++i) {
    const double a = i / 1000.0;
    EXPECT_NEAR(amplitude_from_angle(angle_from_amplitude(a)), a, 1e-14);
  }
}

TEST(model, DomainViolationsThrow) {
  EXPECT_THROW(angle_from_amplitude(-0.1), std::invalid_argument);
  EXPECT_THROW(angle_from_amplitude(1.0001), std::invalid_argument);
  EXPECT_THROW(amplitude_from_angle(-1e-9), std::invalid_argument);
  EXPECT_THROW(amplitude_from_angle(2.0), std::invalid_argument);
  EXPECT_THROW(ideal_likelihood(0.1, -1, true), std::invalid_argument);
  EXPECT_THROW(NoiseModel::with_coherence_time(0.0), std::invalid_argument);
  EXPECT_THROW(decay_likelihood(1.0, -1.0, true), std::invalid_argument);
}

TEST(model, IdealLikelihoodExamples) {
  EXPECT_DOUBLE_EQ(ideal_likelihood(0.0, 5, true), 0.0);
  EXPECT_NEAR(ideal_likelihood(kPi / 4, 0, false), 0.5, 1e-15);
  EXPECT_NEAR(ideal_likelihood(kPi / 6, 1, true), 1.0, 1e-15);
}

TEST(model, NoisyLikelihoodExamples) {
  const NoiseModel noise = NoiseModel::with_coherence_time(100.0);
  for (double theta : {0.1, 0.7, 1.3}) {
    EXPECT_DOUBLE_EQ(noisy_likelihood(theta, noise, 0, true),
                     std::sin(theta) * std::sin(theta));
  }
  // Full depolarization.
  const NoiseModel short_lived = NoiseModel::with_coherence_time(1e-3);
  EXPECT_NEAR(noisy_likelihood(0.4, short_lived, 50, true), 0.5, 1e-12);
  // theta = 0, m = T: (1 - e^-1) / 2.
  const NoiseModel t20 = NoiseModel::with_coherence_time(20.0);
  EXPECT_NEAR(noisy_likelihood(0.0, t20, 20, true), 0.31606027941427883, 1e-15);
}

TEST(model, DecayLikelihoodExamples) {
  EXPECT_DOUBLE_EQ(decay_likelihood(123.0, 0.0, true), 1.0);
  EXPECT_NEAR(decay_likelihood(1.0, 1e4, true), 0.5, 1e-15);
  EXPECT_NEAR(decay_likelihood(3000.0, 3000.0, true), 0.6839397205857212, 1e-15);
  EXPECT_NEAR(decay_likelihood(3000.0, 3000.0, false), 1.0 - 0.6839397205857212, 1e-15);
}

TEST(model, LikelihoodProperties) {
  const std::vector<double> coherence = {5.0, 300.0, 1e5};
  for (int i = 0; i <= 200; ++i) {
    const double theta = kHalfPi * i / 200.0;
    for (Control m : {0, 1, 3, 17, 250, 4096}) {
      const double ideal = ideal_likelihood(theta, m, true);
      EXPECT_EQ(ideal + ideal_likelihood(theta, m, false), 1.0);
      EXPECT_EQ(noisy_likelihood(theta, NoiseModel::noiseless(), m, true), ideal);
      for (double t : coherence) {
        const NoiseModel noise = NoiseModel::with_coherence_time(t);
        const double p1 = noisy_likelihood(theta, noise, m, true);
        EXPECT_NEAR(p1 + noisy_likelihood(theta, noise, m, false), 1.0, 1e-15);
        const double floor = (1.0 - std::exp(-m / t)) / 2.0;
        EXPECT_GE(p1, floor - 1e-15);
        EXPECT_LE(p1, 1.0 - floor + 1e-15);
      }
    }
  }
}

TEST(model, ArgumentReductionForLargeControls) {
  // sin^2 is pi-periodic: shifting theta by pi/(2m+1) leaves it unchanged.
  const Control m = 1000000;
  const double theta = 0.3;
  const double shifted = theta + kPi / static_cast<double>(2 * m + 1);
  EXPECT_NEAR(ideal_likelihood(theta, m, true), ideal_likelihood(shifted, m, true), 1e-6);
}

TEST(model, SimulateBoundaries) {
  EXPECT_EQ(simulate_measurement({0.0, {}}, 0, 10, 1u).ones, 0);
  EXPECT_EQ(simulate_measurement({1.0, {}}, 0, 10, 1u).ones, 10);
  EXPECT_THROW(simulate_measurement({0.5, {}}, 0, 0, 1u), std::invalid_argument);
}

TEST(model, SimulateIsDeterministicPerSeed) {
  const AmplitudeModel truth{0.37, NoiseModel::with_coherence_time(50.0)};
  const Datum a = simulate_measurement(truth, 7, 1000, 99u);
  const Datum b = simulate_measurement(truth, 7, 1000, 99u);
  EXPECT_EQ(a.ones, b.ones);
  EXPECT_EQ(a.control, 7);
  EXPECT_EQ(a.shots, 1000);
}

TEST(model, SimulateFrequencyWithinFiveSigma) {
  const double p = std::pow(std::sin(5.0 * std::asin(std::sqrt(0.3))), 2);
  const Datum d = simulate_measurement({0.3, {}}, 2, 100000, 2024u);
  const double sigma = std::sqrt(p * (1 - p) / 1e5);
  EXPECT_NEAR(static_cast<double>(d.ones) / 1e5, p, 5 * sigma);
}

TEST(model, SimulateChiSquareAgainstAnalyticProbability) {
  // Chi-square with one degree of freedom; 10.828 is the 1e-3 critical value.
  const std::int64_t shots = 20000;
  std::uint64_t index = 0;
  for (double a : {0.05, 0.3, 0.77}) {
    for (Control m : {0, 3, 40}) {
      for (double t : {static_cast<double>(INFINITY), 60.0}) {
        AmplitudeModel truth{a, std::isinf(t) ? NoiseModel::noiseless()
                                              : NoiseModel::with_coherence_time(t)};
        const double p = noisy_likelihood(truth.angle(), truth.noise, m, true);
        const Datum d = simulate_measurement(truth, m, shots, derive_seed(11, index++));
        const double expected1 = p * shots;
        const double expected0 = (1 - p) * shots;
        const double o1 = static_cast<double>(d.ones);
        const double o0 = static_cast<double>(shots - d.ones);
        double chi2 = 0.0;
        if (expected1 > 0) chi2 += (o1 - expected1) * (o1 - expected1) / expected1;
        if (expected0 > 0) chi2 += (o0 - expected0) * (o0 - expected0) / expected0;
        EXPECT_LT(chi2, 10.828) << "a=" << a << " m=" << m << " T=" << t;
      }
    }
  }
}

TEST(model, QueryCost) {
  EXPECT_EQ(query_cost(0, 1), 1);
  EXPECT_EQ(query_cost(3, 2), 14);
  const std::vector<Datum> schedule = {{0, 1, 0}, {1, 1, 1}};
  EXPECT_EQ(query_cost(schedule), 4);
}

TEST(model, QueryCostAdditiveAndLinear) {
  std::vector<Datum> schedule;
  std::int64_t total = 0;
  for (Control m = 0; m < 30; m += 3) {
    schedule.push_back({m, 1 + m % 4, 0});
    total += query_cost(m, 1 + m % 4);
    EXPECT_EQ(query_cost(m, 7), 7 * query_cost(m, 1));
  }
  EXPECT_EQ(query_cost(schedule), total);
}

}  // namespace
}  // namespace bae
