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

#ifndef BAE_MODEL_HPP_
#define BAE_MODEL_HPP_

#include <cstdint>
#include <limits>
#include <span>

#include "bae/rng.hpp"

namespace bae {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2;

/// Number of Grover-operator applications in a circuit. Zero is the plain
/// (non-amplified) measurement of the prepared state.
using Control = std::int64_t;

/// theta = arcsin(sqrt(a)). Throws std::invalid_argument outside [0, 1].
double angle_from_amplitude(double amplitude);
/// a = sin^2(theta). Throws std::invalid_argument outside [0, pi/2].
double amplitude_from_angle(double theta);

/// Exponential-decay noise. Time is measured in Grover applications.
class NoiseModel {
 public:
  NoiseModel() = default;
  static NoiseModel noiseless() { return {}; }
  static NoiseModel with_coherence_time(double coherence_time);

  bool is_noiseless() const { return coherence_time_ == kInfinite; }
  double coherence_time() const { return coherence_time_; }
  /// exp(-t/T); exactly 1 for the noiseless model or t = 0.
  double damping(double time) const;

 private:
  static constexpr double kInfinite = std::numeric_limits<double>::infinity();
  explicit NoiseModel(double t) : coherence_time_(t) {}
  double coherence_time_ = kInfinite;
};

/// The unknown system: amplitude plus (optionally) a finite coherence time.
struct AmplitudeModel {
  double amplitude = 0.0;
  NoiseModel noise;

  double angle() const { return angle_from_amplitude(amplitude); }
};

/// Outcome counts for `shots` repetitions of the circuit with `control`
/// Grover iterations.
struct Datum {
  Control control = 0;
  std::int64_t shots = 1;
  std::int64_t ones = 0;
};

/// sin^2((2m+1) theta) for outcome 1, its complement for outcome 0. The
/// argument is reduced modulo pi before evaluation.
double ideal_likelihood(double theta, Control m, bool outcome);

/// Damped likelihood e^{-m/T} sin^2((2m+1) theta) + (1 - e^{-m/T}) / 2.
double noisy_likelihood(double theta, const NoiseModel& noise, Control m,
                        bool outcome);

/// Decay of a reference state whose ideal outcome-1 probability is 1:
/// (1 + e^{-t/T}) / 2 for outcome 1.
double decay_likelihood(double coherence_time, double time, bool outcome);

/// Draws Binomial(shots, p) with p the outcome-1 probability of `truth`.
Datum simulate_measurement(const AmplitudeModel& truth, Control m,
                           std::int64_t shots, Rng& rng);
Datum simulate_measurement(const AmplitudeModel& truth, Control m,
                           std::int64_t shots, std::uint64_t seed);

/// Queries to the state-preparation operator: shots * (2m + 1).
std::int64_t query_cost(Control m, std::int64_t shots);
std::int64_t query_cost(std::span<const Datum> schedule);

}  // namespace bae

#endif  // BAE_MODEL_HPP_
