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

#ifndef BAE_SMC_HPP_
#define BAE_SMC_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "bae/likelihood.hpp"
#include "bae/model.hpp"
#include "bae/rng.hpp"

namespace bae {

/// Raised when every particle carries zero weight, i.e. the particle set no
/// longer represents the posterior.
class DegenerateEnsembleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One prior factor. `uniform_amplitude` is the Grover-angle image of a flat
/// prior on the amplitude: density sin(2 theta) on [0, pi/2].
struct PriorDim {
  enum class Kind { uniform, uniform_amplitude };
  Kind kind = Kind::uniform;
  double lo = 0.0;
  double hi = 1.0;
};

/// Product prior over a box.
class Prior {
 public:
  static Prior uniform_amplitude();
  static Prior uniform(double lo, double hi);
  /// Product of two independent priors; dimensions are concatenated.
  static Prior product(const Prior& first, const Prior& second);

  std::size_t dim() const { return dims_.size(); }
  const PriorDim& operator[](std::size_t d) const { return dims_[d]; }

  void sample(Rng& rng, std::span<double> out) const;
  /// Normalized log density; -inf outside the support.
  double log_density(std::span<const double> point) const;
  bool contains(std::span<const double> point) const;
  /// Folds `x` back into the support of dimension `d` by mirror reflection.
  double reflect(std::size_t d, double x) const;

 private:
  std::vector<PriorDim> dims_;
};

/// One assimilated experiment. `control` is a Grover count or an evolution
/// time depending on the likelihood it is paired with.
struct Observation {
  double control = 0.0;
  std::int64_t shots = 1;
  std::int64_t ones = 0;

  Observation() = default;
  Observation(double c, std::int64_t n, std::int64_t k)
      : control(c), shots(n), ones(k) {}
  explicit Observation(const Datum& d)
      : control(static_cast<double>(d.control)), shots(d.shots), ones(d.ones) {}
};

struct LiuWestKernel {
  double alpha = 0.98;
};

struct MetropolisKernel {
  int steps = 1;
};

struct ResampleConfig {
  std::variant<LiuWestKernel, MetropolisKernel> kernel = LiuWestKernel{};
  /// Resampling triggers when the post-update ESS falls below this value.
  double ess_threshold = 500.0;

  /// Liu-West(0.98) with threshold N/2.
  static ResampleConfig defaults_for(std::size_t particles);
  void validate(std::size_t particles) const;
};

/// Weighted particle approximation of a posterior. Weights are kept
/// normalized; the running log-evidence accumulates log(sum_i W_i) of the
/// pre-normalization reweighted weights of every update.
class ParticleEnsemble {
 public:
  /// Draws `particles` points from the prior with uniform weights.
  ParticleEnsemble(Prior prior, std::size_t particles, Rng& rng);
  /// Explicit points (row-major, prior.dim() values per particle).
  ParticleEnsemble(Prior prior, std::vector<double> positions,
                   std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  std::size_t dim() const { return prior_.dim(); }
  const Prior& prior() const { return prior_; }

  std::span<const double> position(std::size_t i) const {
    return {positions_.data() + i * dim(), dim()};
  }
  std::span<const double> positions() const { return positions_; }
  std::span<const double> weights() const { return weights_; }

  double evidence_log() const { return evidence_log_; }
  std::size_t update_count() const { return update_count_; }
  const std::vector<Observation>& history() const { return history_; }

  /// Sum-to-one rescaling. Throws DegenerateEnsembleError on all-zero weights.
  void normalize();

 private:
  friend void bayesian_update(ParticleEnsemble&, const Likelihood&,
                              const Observation&, const ResampleConfig&, Rng&);
  friend void resample(ParticleEnsemble&, const ResampleConfig&,
                       const Likelihood&, Rng&);
  friend ParticleEnsemble hypothetical_update(const ParticleEnsemble&,
                                              const Likelihood&,
                                              const Observation&);

  explicit ParticleEnsemble(Prior prior) : prior_(std::move(prior)) {}

  Prior prior_;
  std::vector<double> positions_;
  std::vector<double> weights_;
  double evidence_log_ = 0.0;
  std::size_t update_count_ = 0;
  std::vector<Observation> history_;
};

/// (sum w)^2 / sum w^2.
double ess(std::span<const double> weights);

/// log P(observation | point) for the ordered shot sequence (no binomial
/// coefficient): k log p + (n - k) log(1 - p).
double log_likelihood(const Likelihood& likelihood,
                      std::span<const double> point,
                      const Observation& observation);

/// Multiplies weights by the observation likelihood, accumulates evidence,
/// records the observation and resamples if the ESS drops below threshold.
void bayesian_update(ParticleEnsemble& ensemble, const Likelihood& likelihood,
                     const Observation& observation,
                     const ResampleConfig& config, Rng& rng);

/// Reweighted copy without resampling and without history; the input is
/// untouched.
ParticleEnsemble hypothetical_update(const ParticleEnsemble& ensemble,
                                     const Likelihood& likelihood,
                                     const Observation& observation);

/// Multinomial selection followed by the configured perturbation kernel;
/// weights become uniform.
void resample(ParticleEnsemble& ensemble, const ResampleConfig& config,
              const Likelihood& likelihood, Rng& rng);

/// Draws from N(alpha x + (1 - alpha) mean, sqrt(1 - alpha^2) std) per
/// dimension, reflected into the prior support. Modifies `point` in place.
void liu_west_kernel(std::span<double> point, std::span<const double> mean,
                     std::span<const double> std_dev, double alpha,
                     const Prior& prior, Rng& rng);

/// One random-walk Metropolis step targeting prior x likelihood(dataset).
/// Returns true when the proposal was accepted.
bool metropolis_kernel(std::span<double> point,
                       std::span<const Observation> dataset,
                       const Likelihood& likelihood, const Prior& prior,
                       std::span<const double> proposal_std, Rng& rng);

using PointFunction = std::function<double(std::span<const double>)>;

double expectation(const ParticleEnsemble& ensemble, const PointFunction& f);
/// Weighted mean and standard deviation of one coordinate.
double mean(const ParticleEnsemble& ensemble, std::size_t d = 0);
double variance(const ParticleEnsemble& ensemble, std::size_t d = 0);
/// Smallest value v of f with weighted CDF(v) >= q.
double weighted_quantile(const ParticleEnsemble& ensemble, const PointFunction& f,
                         double q);

/// Predictive probability of outcome 1 for a single shot at `control`.
double expected_outcome_probability(const ParticleEnsemble& ensemble,
                                    const Likelihood& likelihood,
                                    double control);

using EnsembleUtility = std::function<double(const ParticleEnsemble&)>;

/// sum_D P(D) * utility(posterior | D) over the two single-shot outcomes.
/// Outcomes with zero predictive probability contribute nothing.
double average_expected_utility(const ParticleEnsemble& ensemble,
                                const EnsembleUtility& utility, double control,
                                const Likelihood& likelihood);

/// Marginal likelihood of all assimilated data. Throws std::logic_error if no
/// update has been performed.
double evidence(const ParticleEnsemble& ensemble);

}  // namespace bae

#endif  // BAE_SMC_HPP_
