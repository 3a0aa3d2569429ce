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

#ifndef BAE_REFERENCE_HPP_
#define BAE_REFERENCE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bae/model.hpp"
#include "bae/trace.hpp"

namespace bae {

/// Outcome distribution of phase estimation with Fourier order K for
/// eigenphase exp(2 pi i phi):
///   P(x) = sin^2(K Delta pi) / (K^2 sin^2(Delta pi)),  Delta = |phi - x/K| mod 1,
/// with P(x) = 1 wherever |sin(Delta pi)| < 1e-12.
std::vector<double> qpe_outcome_distribution(double phi, std::int64_t fourier_order);

/// Canonical amplitude estimation: both Grover eigenphases (theta/pi and
/// 1 - theta/pi) are measured with probability 1/2 each.
std::vector<double> qae_outcome_distribution(double theta, std::int64_t fourier_order);

struct QaeResult {
  double estimate = 0.0;       // maximum-likelihood estimate
  double mode_estimate = 0.0;  // sin^2(pi x*/K) of the modal outcome
  double interval_lo = 0.0;    // search interval around the mode
  double interval_hi = 0.0;
  std::int64_t queries = 0;    // shots * K
  std::vector<std::int64_t> counts;
};

/// Samples `shots` outcomes from a 2^k-order QAE circuit and refines the
/// modal amplitude by maximum likelihood on a 10^4-point grid restricted to
/// the halfway interval between the mode and its representable neighbours.
QaeResult run_canonical_qae(double amplitude, int auxiliary_qubits,
                            std::int64_t shots, std::uint64_t seed);

struct ClassicalResult {
  double estimate = 0.0;
  std::int64_t queries = 0;
};

/// Sample mean of `shots` unamplified measurements.
ClassicalResult run_classical_baseline(double amplitude, std::int64_t shots,
                                       std::uint64_t seed);

/// Sample-mean trajectory with records at ten log-spaced checkpoints per
/// decade, from `first_checkpoint` shots up to `total_shots`.
RunTrace classical_trace(const AmplitudeModel& truth, std::int64_t total_shots,
                         std::uint64_t seed, std::int64_t first_checkpoint = 1);

struct MlaeSchedule {
  enum class Kind { lis, eis };
  Kind kind = Kind::eis;
  std::int64_t stages = 10;
  std::int64_t shots_per_stage = 100;

  /// LIS: 0, 1, ..., stages-1.  EIS: 0, 1, 2, 4, ..., 2^(stages-2).
  std::vector<Control> controls() const;
};

struct MlaeResult {
  double estimate = 0.0;
  std::int64_t queries = 0;
  std::vector<Datum> data;
};

/// Maximises the product likelihood over theta by a 10^4-point grid scan
/// followed by golden-section refinement of the best grid peaks. The
/// likelihood assumes the given coherence time (noiseless when absent).
double mlae_estimate(std::span<const Datum> data,
                     const std::optional<double>& assumed_coherence_time);

/// Data come from `truth` (including its noise); the estimator assumes
/// `assumed_coherence_time`. The trace holds one record per stage with the
/// estimate from all stages so far.
RunTrace mlae_trace(const AmplitudeModel& truth, const MlaeSchedule& schedule,
                    std::uint64_t seed,
                    const std::optional<double>& assumed_coherence_time = std::nullopt);

MlaeResult run_mlae(const AmplitudeModel& truth, const MlaeSchedule& schedule,
                    std::uint64_t seed,
                    const std::optional<double>& assumed_coherence_time = std::nullopt);

/// Canonical QAE as a single-record trace.
RunTrace canonical_qae_trace(double amplitude, int auxiliary_qubits,
                             std::int64_t shots, std::uint64_t seed);

}  // namespace bae

#endif  // BAE_REFERENCE_HPP_
