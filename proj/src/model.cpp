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
#include <string>

namespace bae {
namespace {

void check_control(Control m) {
  if (m < 0) throw std::invalid_argument("control must be non-negative");
}

void check_angle(double theta) {
  if (!(theta >= 0.0 && theta <= kHalfPi)) {
    throw std::invalid_argument("Grover angle outside [0, pi/2]: " +
                                std::to_string(theta));
  }
}

double sin_squared_amplified(double theta, Control m) {
  double arg = std::fmod(static_cast<double>(2 * m + 1) * theta, kPi);
  double s = std::sin(arg);
  return s * s;
}

}  // namespace

double angle_from_amplitude(double amplitude) {
  if (!(amplitude >= 0.0 && amplitude <= 1.0)) {
    throw std::invalid_argument("amplitude outside [0, 1]: " +
                                std::to_string(amplitude));
  }
  return std::asin(std::sqrt(amplitude));
}

double amplitude_from_angle(double theta) {
  check_angle(theta);
  double s = std::sin(theta);
  return s * s;
}

NoiseModel NoiseModel::with_coherence_time(double coherence_time) {
  if (!(coherence_time > 0.0)) {
    throw std::invalid_argument("coherence time must be positive");
  }
  return NoiseModel(coherence_time);
}

double NoiseModel::damping(double time) const {
  if (is_noiseless() || time == 0.0) return 1.0;
  return std::exp(-time / coherence_time_);
}

double ideal_likelihood(double theta, Control m, bool outcome) {
  check_angle(theta);
  check_control(m);
  double p1 = sin_squared_amplified(theta, m);
  return outcome ? p1 : 1.0 - p1;
}

double noisy_likelihood(double theta, const NoiseModel& noise, Control m,
                        bool outcome) {
  check_angle(theta);
  check_control(m);
  double p1 = sin_squared_amplified(theta, m);
  double d = noise.damping(static_cast<double>(m));
  if (d != 1.0) p1 = d * p1 + (1.0 - d) / 2.0;
  return outcome ? p1 : 1.0 - p1;
}

double decay_likelihood(double coherence_time, double time, bool outcome) {
  if (!(coherence_time > 0.0)) {
    throw std::invalid_argument("coherence time must be positive");
  }
  if (!(time >= 0.0)) throw std::invalid_argument("time must be non-negative");
  double p1 = (1.0 + std::exp(-time / coherence_time)) / 2.0;
  return outcome ? p1 : 1.0 - p1;
}

Datum simulate_measurement(const AmplitudeModel& truth, Control m,
                           std::int64_t shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("shots must be positive");
  double p = noisy_likelihood(truth.angle(), truth.noise, m, true);
  std::binomial_distribution<std::int64_t> draw(shots, p);
  return Datum{m, shots, draw(rng)};
}

Datum simulate_measurement(const AmplitudeModel& truth, Control m,
                           std::int64_t shots, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_measurement(truth, m, shots, rng);
}

std::int64_t query_cost(Control m, std::int64_t shots) {
  check_control(m);
  if (shots < 0) throw std::invalid_argument("shots must be non-negative");
  return shots * (2 * m + 1);
}

std::int64_t query_cost(std::span<const Datum> schedule) {
  std::int64_t total = 0;
  for (const Datum& d : schedule) total += query_cost(d.control, d.shots);
  return total;
}

}  // namespace bae
