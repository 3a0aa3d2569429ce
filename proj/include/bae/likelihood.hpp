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

#ifndef BAE_LIKELIHOOD_HPP_
#define BAE_LIKELIHOOD_HPP_

#include <cstddef>
#include <span>

#include "bae/model.hpp"

namespace bae {

/// Single-shot outcome model over a parameter point. Particle filters and
/// experiment designers only ever need the outcome-1 probability; outcome 0
/// is its complement.
class Likelihood {
 public:
  virtual ~Likelihood() = default;
  virtual std::size_t dim() const = 0;
  virtual double prob_one(std::span<const double> point,
                          double control) const = 0;
};

/// Grover measurements over theta with a fixed (possibly infinite) coherence
/// time. Point layout: {theta}.
class GroverLikelihood final : public Likelihood {
 public:
  explicit GroverLikelihood(NoiseModel noise = NoiseModel::noiseless())
      : noise_(noise) {}
  std::size_t dim() const override { return 1; }
  double prob_one(std::span<const double> point,
                  double control) const override;
  const NoiseModel& noise() const { return noise_; }

 private:
  NoiseModel noise_;
};

/// Grover measurements with the coherence time as a second unknown.
/// Point layout: {theta, T}.
class JointGroverLikelihood final : public Likelihood {
 public:
  std::size_t dim() const override { return 2; }
  double prob_one(std::span<const double> point,
                  double control) const override;
};

/// Decay measurements at evolution time `control`. Point layout: {T}.
class DecayLikelihood final : public Likelihood {
 public:
  std::size_t dim() const override { return 1; }
  double prob_one(std::span<const double> point,
                  double control) const override;
};

}  // namespace bae

#endif  // BAE_LIKELIHOOD_HPP_
