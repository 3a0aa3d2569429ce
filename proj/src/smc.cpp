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

#include "bae/smc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace bae {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// k log p + (n - k) log(1 - p) with 0 log 0 = 0.
double binomial_log_kernel(double p1, std::int64_t shots, std::int64_t ones) {
  double out = 0.0;
  if (ones > 0) out += static_cast<double>(ones) * std::log(p1);
  if (shots - ones > 0) out += static_cast<double>(shots - ones) * std::log1p(-p1);
  return out;
}

void check_observation(const Observation& o) {
  if (o.shots < 1 || o.ones < 0 || o.ones > o.shots) {
    throw std::invalid_argument("observation requires shots >= 1 and 0 <= ones <= shots");
  }
}

}  // namespace

Prior Prior::uniform_amplitude() {
  Prior p;
  p.dims_.push_back({PriorDim::Kind::uniform_amplitude, 0.0, kHalfPi});
  return p;
}

Prior Prior::uniform(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("uniform prior needs lo < hi");
  Prior p;
  p.dims_.push_back({PriorDim::Kind::uniform, lo, hi});
  return p;
}

Prior Prior::product(const Prior& first, const Prior& second) {
  Prior p = first;
  p.dims_.insert(p.dims_.end(), second.dims_.begin(), second.dims_.end());
  return p;
}

void Prior::sample(Rng& rng, std::span<double> out) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    const PriorDim& pd = dims_[d];
    double u = unit(rng);
    if (pd.kind == PriorDim::Kind::uniform_amplitude) {
      out[d] = std::asin(std::sqrt(u));
    } else {
      out[d] = pd.lo + u * (pd.hi - pd.lo);
    }
  }
}

bool Prior::contains(std::span<const double> point) const {
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    if (!(point[d] >= dims_[d].lo && point[d] <= dims_[d].hi)) return false;
  }
  return true;
}

double Prior::log_density(std::span<const double> point) const {
  double out = 0.0;
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    const PriorDim& pd = dims_[d];
    double x = point[d];
    if (!(x >= pd.lo && x <= pd.hi)) return kNegInf;
    if (pd.kind == PriorDim::Kind::uniform_amplitude) {
      out += std::log(std::sin(2.0 * x));
    } else {
      out -= std::log(pd.hi - pd.lo);
    }
  }
  return out;
}

double Prior::reflect(std::size_t d, double x) const {
  const PriorDim& pd = dims_[d];
  if (x >= pd.lo && x <= pd.hi) return x;
  double width = pd.hi - pd.lo;
  double y = std::fmod(x - pd.lo, 2.0 * width);
  if (y < 0.0) y += 2.0 * width;
  if (y > width) y = 2.0 * width - y;
  return std::clamp(pd.lo + y, pd.lo, pd.hi);
}

ResampleConfig ResampleConfig::defaults_for(std::size_t particles) {
  ResampleConfig c;
  c.ess_threshold = static_cast<double>(particles) / 2.0;
  return c;
}

void ResampleConfig::validate(std::size_t particles) const {
  if (!(ess_threshold > 0.0 && ess_threshold <= static_cast<double>(particles))) {
    throw std::invalid_argument("ess_threshold must lie in (0, N]");
  }
  if (const auto* lw = std::get_if<LiuWestKernel>(&kernel)) {
    if (!(lw->alpha > 0.0 && lw->alpha <= 1.0)) {
      throw std::invalid_argument("Liu-West alpha must lie in (0, 1]");
    }
  } else if (std::get<MetropolisKernel>(kernel).steps < 1) {
    throw std::invalid_argument("Metropolis kernel needs at least one step");
  }
}

ParticleEnsemble::ParticleEnsemble(Prior prior, std::size_t particles, Rng& rng)
    : prior_(std::move(prior)) {
  if (particles == 0) throw std::invalid_argument("ensemble needs particles");
  positions_.resize(particles * dim());
  for (std::size_t i = 0; i < particles; ++i) {
    prior_.sample(rng, {positions_.data() + i * dim(), dim()});
  }
  weights_.assign(particles, 1.0 / static_cast<double>(particles));
}

ParticleEnsemble::ParticleEnsemble(Prior prior, std::vector<double> positions,
                                   std::vector<double> weights)
    : prior_(std::move(prior)),
      positions_(std::move(positions)),
      weights_(std::move(weights)) {
  if (weights_.empty() || positions_.size() != weights_.size() * dim()) {
    throw std::invalid_argument("positions and weights disagree in length");
  }
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be non-negative");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (!prior_.contains(position(i))) {
      throw std::invalid_argument("particle outside the prior support");
    }
  }
  normalize();
}

void ParticleEnsemble::normalize() {
  double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (!(total > 0.0)) throw DegenerateEnsembleError("all particle weights are zero");
  for (double& w : weights_) w /= total;
}

double ess(std::span<const double> weights) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double w : weights) {
    sum += w;
    sum_sq += w * w;
  }
  if (!(sum_sq > 0.0)) throw DegenerateEnsembleError("ESS of all-zero weights");
  return sum * sum / sum_sq;
}

double log_likelihood(const Likelihood& likelihood,
                      std::span<const double> point,
                      const Observation& observation) {
  return binomial_log_kernel(likelihood.prob_one(point, observation.control),
                             observation.shots, observation.ones);
}

namespace {

// Reweights `weights` (normalized on input) in place and returns
// log(sum_i W_i). Leaves `weights` untouched on degeneracy.
double reweight(std::span<double> weights, std::span<const double> positions,
                std::size_t dim, const Likelihood& likelihood,
                const Observation& observation) {
  check_observation(observation);
  const std::size_t n = weights.size();
  std::vector<double> log_l(n, kNegInf);
  double max_log = kNegInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] == 0.0) continue;
    log_l[i] = log_likelihood(likelihood, positions.subspan(i * dim, dim),
                              observation);
    max_log = std::max(max_log, log_l[i]);
  }
  if (max_log == kNegInf) {
    throw DegenerateEnsembleError("observation has zero likelihood at every particle");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = weights[i] * std::exp(log_l[i] - max_log);
    total += weights[i];
  }
  for (double& w : weights) w /= total;
  return max_log + std::log(total);
}

}  // namespace

void bayesian_update(ParticleEnsemble& ensemble, const Likelihood& likelihood,
                     const Observation& observation,
                     const ResampleConfig& config, Rng& rng) {
  config.validate(ensemble.size());
  std::vector<double> weights = ensemble.weights_;
  double log_z = reweight(weights, ensemble.positions_, ensemble.dim(),
                          likelihood, observation);
  ensemble.weights_ = std::move(weights);
  ensemble.evidence_log_ += log_z;
  ++ensemble.update_count_;
  ensemble.history_.push_back(observation);
  if (ess(ensemble.weights_) < config.ess_threshold) {
    resample(ensemble, config, likelihood, rng);
  }
}

ParticleEnsemble hypothetical_update(const ParticleEnsemble& ensemble,
                                     const Likelihood& likelihood,
                                     const Observation& observation) {
  ParticleEnsemble out(ensemble.prior_);
  out.positions_ = ensemble.positions_;
  out.weights_ = ensemble.weights_;
  out.evidence_log_ = ensemble.evidence_log_;
  out.update_count_ = ensemble.update_count_;
  out.evidence_log_ += reweight(out.weights_, out.positions_, out.dim(),
                                likelihood, observation);
  ++out.update_count_;
  return out;
}

void liu_west_kernel(std::span<double> point, std::span<const double> mean,
                     std::span<const double> std_dev, double alpha,
                     const Prior& prior, Rng& rng) {
  const double spread = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  for (std::size_t d = 0; d < point.size(); ++d) {
    double mu = alpha * point[d] + (1.0 - alpha) * mean[d];
    double sigma = spread * std_dev[d];
    double x = mu;
    if (sigma > 0.0) x = std::normal_distribution<double>(mu, sigma)(rng);
    point[d] = prior.reflect(d, x);
  }
}

bool metropolis_kernel(std::span<double> point,
                       std::span<const Observation> dataset,
                       const Likelihood& likelihood, const Prior& prior,
                       std::span<const double> proposal_std, Rng& rng) {
  auto log_target = [&](std::span<const double> x) {
    double lp = prior.log_density(x);
    if (lp == kNegInf) return kNegInf;
    for (const Observation& o : dataset) {
      lp += log_likelihood(likelihood, x, o);
      if (lp == kNegInf) break;
    }
    return lp;
  };
  std::vector<double> proposal(point.begin(), point.end());
  for (std::size_t d = 0; d < proposal.size(); ++d) {
    if (proposal_std[d] > 0.0) {
      proposal[d] = prior.reflect(
          d, proposal[d] + std::normal_distribution<double>(0.0, proposal_std[d])(rng));
    }
  }
  double log_new = log_target(proposal);
  if (log_new == kNegInf) return false;
  double log_old = log_target(point);
  double log_ratio = log_new - log_old;
  if (log_ratio < 0.0) {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (!(std::log(u) < log_ratio)) return false;
  }
  std::copy(proposal.begin(), proposal.end(), point.begin());
  return true;
}

void resample(ParticleEnsemble& ensemble, const ResampleConfig& config,
              const Likelihood& likelihood, Rng& rng) {
  const std::size_t n = ensemble.size();
  const std::size_t dim = ensemble.dim();
  std::vector<double> mu(dim);
  std::vector<double> sd(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    mu[d] = mean(ensemble, d);
    sd[d] = std::sqrt(variance(ensemble, d));
  }

  std::vector<double> cdf(n);
  std::partial_sum(ensemble.weights_.begin(), ensemble.weights_.end(), cdf.begin());
  const double total = cdf.back();
  if (!(total > 0.0)) throw DegenerateEnsembleError("cannot resample zero weights");
  std::uniform_real_distribution<double> unit(0.0, total);
  std::vector<double> fresh(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    double u = unit(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t j = std::min<std::size_t>(it - cdf.begin(), n - 1);
    std::copy_n(ensemble.positions_.begin() + j * dim, dim, fresh.begin() + i * dim);
  }

  if (const auto* lw = std::get_if<LiuWestKernel>(&config.kernel)) {
    for (std::size_t i = 0; i < n; ++i) {
      liu_west_kernel({fresh.data() + i * dim, dim}, mu, sd, lw->alpha,
                      ensemble.prior_, rng);
    }
  } else {
    const auto& mh = std::get<MetropolisKernel>(config.kernel);
    std::vector<double> proposal_std(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      proposal_std[d] = 2.38 / std::sqrt(static_cast<double>(dim)) * sd[d];
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (int s = 0; s < mh.steps; ++s) {
        metropolis_kernel({fresh.data() + i * dim, dim}, ensemble.history_,
                          likelihood, ensemble.prior_, proposal_std, rng);
      }
    }
  }
  ensemble.positions_ = std::move(fresh);
  ensemble.weights_.assign(n, 1.0 / static_cast<double>(n));
}

double expectation(const ParticleEnsemble& ensemble, const PointFunction& f) {
  double total = 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    double w = ensemble.weights()[i];
    if (w == 0.0) continue;
    total += w;
    acc += w * f(ensemble.position(i));
  }
  if (!(total > 0.0)) throw DegenerateEnsembleError("expectation over zero weights");
  return acc / total;
}

double mean(const ParticleEnsemble& ensemble, std::size_t d) {
  double total = 0.0;
  double acc = 0.0;
  const auto pos = ensemble.positions();
  const std::size_t dim = ensemble.dim();
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    double w = ensemble.weights()[i];
    total += w;
    acc += w * pos[i * dim + d];
  }
  if (!(total > 0.0)) throw DegenerateEnsembleError("mean over zero weights");
  return acc / total;
}

double variance(const ParticleEnsemble& ensemble, std::size_t d) {
  const double mu = mean(ensemble, d);
  double total = 0.0;
  double acc = 0.0;
  const auto pos = ensemble.positions();
  const std::size_t dim = ensemble.dim();
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    double w = ensemble.weights()[i];
    double dx = pos[i * dim + d] - mu;
    total += w;
    acc += w * dx * dx;
  }
  return acc / total;
}

double weighted_quantile(const ParticleEnsemble& ensemble, const PointFunction& f,
                         double q) {
  std::vector<std::pair<double, double>> values;
  values.reserve(ensemble.size());
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    double w = ensemble.weights()[i];
    if (w == 0.0) continue;
    values.emplace_back(f(ensemble.position(i)), w);
    total += w;
  }
  if (values.empty()) throw DegenerateEnsembleError("quantile over zero weights");
  std::sort(values.begin(), values.end());
  double acc = 0.0;
  for (const auto& [v, w] : values) {
    acc += w;
    if (acc >= q * total) return v;
  }
  return values.back().first;
}

double expected_outcome_probability(const ParticleEnsemble& ensemble,
                                    const Likelihood& likelihood,
                                    double control) {
  return expectation(ensemble, [&](std::span<const double> x) {
    return likelihood.prob_one(x, control);
  });
}

double average_expected_utility(const ParticleEnsemble& ensemble,
                                const EnsembleUtility& utility, double control,
                                const Likelihood& likelihood) {
  const double p1 = expected_outcome_probability(ensemble, likelihood, control);
  double out = 0.0;
  for (int outcome = 0; outcome <= 1; ++outcome) {
    double p = outcome == 1 ? p1 : 1.0 - p1;
    if (!(p > 0.0)) continue;
    ParticleEnsemble posterior =
        hypothetical_update(ensemble, likelihood, Observation(control, 1, outcome));
    out += p * utility(posterior);
  }
  return out;
}

double evidence(const ParticleEnsemble& ensemble) {
  if (ensemble.update_count() == 0) {
    throw std::logic_error("evidence requested before any update");
  }
  return std::exp(ensemble.evidence_log());
}

}  // namespace bae
