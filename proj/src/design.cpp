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

#include "bae/design.hpp"

#include <cmath>
#include <stdexcept>

namespace bae {

void DesignHyperparams::validate() const {
  if (nevals < 2) throw std::invalid_argument("nevals must be at least 2");
  if (k0 < 1) throw std::invalid_argument("k0 must be at least 1");
  if (top_rank < 1) throw std::invalid_argument("top_rank (R) must be at least 1");
  if (trigger_repetitions < 1) {
    throw std::invalid_argument("trigger_repetitions (T) must be at least 1");
  }
}

DesignWindow init_window(const DesignHyperparams& params) {
  params.validate();
  DesignWindow w;
  w.c_min = 0;
  w.c_max = static_cast<Control>(params.k0) * params.nevals;
  w.params = params;
  return w;
}

DesignWindow expand_window(const DesignWindow& window) {
  DesignWindow w = window;
  w.c_min = window.c_max;
  w.c_max = 2 * window.c_max;
  w.trigger_count = 0;
  return w;
}

std::vector<Control> control_grid(const DesignWindow& window) {
  if (!(window.c_min >= 0 && window.c_min < window.c_max)) {
    throw std::invalid_argument("design window needs 0 <= c_min < c_max");
  }
  const int n = window.params.nevals;
  const double span = static_cast<double>(window.c_max - window.c_min);
  std::vector<Control> grid;
  grid.reserve(n);
  for (int i = 0; i < n; ++i) {
    Control c = window.c_min +
                static_cast<Control>(std::llround(span * i / (n - 1)));
    if (grid.empty() || c != grid.back()) grid.push_back(c);
  }
  return grid;
}

double negative_variance_utility(const ParticleEnsemble& ensemble) {
  return -variance(ensemble, 0);
}

double ess_target_utility(const ParticleEnsemble& ensemble, double target) {
  return -std::abs(ess(ensemble.weights()) - target);
}

EnsembleUtility make_utility(const UtilitySpec& spec) {
  if (spec.kind == UtilitySpec::Kind::ess_target) {
    double target = spec.target;
    return [target](const ParticleEnsemble& e) {
      return ess_target_utility(e, target);
    };
  }
  return negative_variance_utility;
}

ControlChoice optimize_control(const ParticleEnsemble& ensemble,
                               const DesignWindow& window,
                               const UtilitySpec& utility,
                               const Likelihood& likelihood) {
  if (utility.kind == UtilitySpec::Kind::ess_target &&
      !(utility.target > 0.0 &&
        utility.target <= static_cast<double>(ensemble.size()))) {
    throw std::invalid_argument("ESS target must lie in (0, N]");
  }
  ControlChoice out;
  out.grid = control_grid(window);
  const EnsembleUtility fn = make_utility(utility);
  out.utilities.reserve(out.grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    out.utilities.push_back(average_expected_utility(
        ensemble, fn, static_cast<double>(out.grid[i]), likelihood));
    if (out.utilities[i] > out.utilities[best]) best = i;
  }
  out.control = out.grid[best];

  out.window = window;
  const std::size_t rank_from_top = out.grid.size() - 1 - best;
  if (rank_from_top < static_cast<std::size_t>(window.params.top_rank)) {
    ++out.window.trigger_count;
  }
  if (out.window.trigger_count >= window.params.trigger_repetitions) {
    out.window = expand_window(out.window);
  }
  return out;
}

}  // namespace bae
