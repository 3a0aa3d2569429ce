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

#ifndef BAE_TESTS_GRID_ORACLE_HPP_
#define BAE_TESTS_GRID_ORACLE_HPP_

// Dense midpoint-rule quadrature over the Grover angle. Written directly
// from the likelihood formula so it shares no code with the particle filter.

#include <cmath>
#include <vector>

namespace bae::testing {

struct GridDatum {
  long long m;
  long long shots;
  long long ones;
};

struct GridPosterior {
  double mean_theta = 0.0;
  double var_theta = 0.0;
  double mean_amplitude = 0.0;
  double evidence = 0.0;
  std::vector<double> theta;
  std::vector<double> density;  // normalized posterior density on the grid
  double step = 0.0;
};

inline double grid_p1(double theta, long long m, double coherence_time) {
  const double s = std::sin((2.0 * m + 1.0) * theta);
  const double d = std::isinf(coherence_time) ? 1.0 : std::exp(-m / coherence_time);
  return d * s * s + (1.0 - d) / 2.0;
}

/// Posterior under the flat-amplitude prior (density sin 2 theta).
inline GridPosterior grid_posterior(const std::vector<GridDatum>& data,
                                    double coherence_time = INFINITY,
                                    int points = 100000) {
  GridPosterior g;
  const double half_pi = std::acos(0.0);
  g.step = half_pi / points;
  g.theta.resize(points);
  g.density.resize(points);
  double z = 0.0, m1 = 0.0, m2 = 0.0, ma = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = (i + 0.5) * g.step;
    double f = std::sin(2.0 * t);
    for (const GridDatum& d : data) {
      const double p = grid_p1(t, d.m, coherence_time);
      f *= std::pow(p, static_cast<double>(d.ones)) *
           std::pow(1.0 - p, static_cast<double>(d.shots - d.ones));
    }
    g.theta[i] = t;
    g.density[i] = f;
    z += f * g.step;
    m1 += t * f * g.step;
    m2 += t * t * f * g.step;
    ma += std::sin(t) * std::sin(t) * f * g.step;
  }
  for (double& f : g.density) f /= z;
  g.evidence = z;
  g.mean_theta = m1 / z;
  g.var_theta = m2 / z - g.mean_theta * g.mean_theta;
  g.mean_amplitude = ma / z;
  return g;
}

}  // namespace bae::testing

#endif  // BAE_TESTS_GRID_ORACLE_HPP_
