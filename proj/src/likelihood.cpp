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

#include "bae/likelihood.hpp"

#include <cmath>

namespace bae {

double GroverLikelihood::prob_one(std::span<const double> point,
                                  double control) const {
  return noisy_likelihood(point[0], noise_, static_cast<Control>(control),
                          true);
}

double JointGroverLikelihood::prob_one(std::span<const double> point,
                                       double control) const {
  return noisy_likelihood(point[0], NoiseModel::with_coherence_time(point[1]),
                          static_cast<Control>(control), true);
}

double DecayLikelihood::prob_one(std::span<const double> point,
                                 double control) const {
  // T -> 0 is the fully decohered limit; the uniform prior on (0, max_T]
  // may place a particle on its closed lower edge.
  if (point[0] <= 0.0) return control > 0.0 ? 0.5 : 1.0;
  return decay_likelihood(point[0], control, true);
}

}  // namespace bae
