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

#ifndef BAE_DESIGN_HPP_
#define BAE_DESIGN_HPP_

#include <vector>

#include "bae/likelihood.hpp"
#include "bae/model.hpp"
#include "bae/smc.hpp"

namespace bae {

struct DesignHyperparams {
  int nevals = 20;              // grid points per sweep
  int k0 = 2;                   // initial window is [0, k0 * nevals]
  int top_rank = 2;             // R: a choice among the R largest grid controls counts
  int trigger_repetitions = 3;  // T: counted choices needed to expand

  void validate() const;
};

/// Expanding search window for the next Grover count.
struct DesignWindow {
  Control c_min = 0;
  Control c_max = 0;
  int trigger_count = 0;
  DesignHyperparams params;
};

DesignWindow init_window(const DesignHyperparams& params);

/// [c_min, c_max] -> [c_max, 2 c_max] with the trigger counter reset.
DesignWindow expand_window(const DesignWindow& window);

/// At most `nevals` distinct, evenly spaced controls including both endpoints.
std::vector<Control> control_grid(const DesignWindow& window);

struct UtilitySpec {
  enum class Kind { negative_variance, ess_target };
  Kind kind = Kind::negative_variance;
  double target = 0.0;  // ESS target for Kind::ess_target

  static UtilitySpec negative_variance() { return {}; }
  static UtilitySpec ess_target(double target) {
    return {Kind::ess_target, target};
  }
};

/// -Var(theta) over the ensemble (first coordinate).
double negative_variance_utility(const ParticleEnsemble& ensemble);

/// -|ESS(weights) - target|.
double ess_target_utility(const ParticleEnsemble& ensemble, double target);

EnsembleUtility make_utility(const UtilitySpec& spec);

struct ControlChoice {
  Control control = 0;
  DesignWindow window;  // window to use on the next call
  std::vector<Control> grid;
  std::vector<double> utilities;
};

/// Greedy one-step look-ahead over the window grid. Ties resolve to the
/// smallest control. Expands the window once the chosen control has been
/// among the `top_rank` largest grid values `trigger_repetitions` times.
ControlChoice optimize_control(const ParticleEnsemble& ensemble,
                               const DesignWindow& window,
                               const UtilitySpec& utility,
                               const Likelihood& likelihood);

}  // namespace bae

#endif  // BAE_DESIGN_HPP_
