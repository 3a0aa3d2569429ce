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

#include "bae/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bae {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMleGridPoints = 10000;

void check_fourier_order(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("Fourier order must be positive");
}

double representable_amplitude(std::int64_t j, std::int64_t fourier_order) {
  double s = std::sin(kPi * static_cast<double>(j) / static_cast<double>(fourier_order));
  return s * s;
}

double qpe_outcome_probability(double phi, std::int64_t fourier_order, std::int64_t x) {
  const double order = static_cast<double>(fourier_order);
  const double delta = std::fmod(std::abs(phi - static_cast<double>(x) / order), 1.0);
  const double den = std::sin(delta * kPi);
  if (std::abs(den) < 1e-12) return 1.0;
  const double num = std::sin(order * delta * kPi);
  return (num * num) / (order * order * den * den);
}

double qae_log_likelihood(double amplitude, std::span<const std::int64_t> counts) {
  const auto order = static_cast<std::int64_t>(counts.size());
  const double phi = angle_from_amplitude(amplitude) / kPi;
  double out = 0.0;
  for (std::int64_t x = 0; x < order; ++x) {
    if (counts[x] == 0) continue;
    const double p = 0.5 * (qpe_outcome_probability(phi, order, x) +
                            qpe_outcome_probability(1.0 - phi, order, x));
    if (p <= 0.0) return kNegInf;
    out += static_cast<double>(counts[x]) * std::log(p);
  }
  return out;
}

// Fisher-information standard deviation of the amplitude for Grover data.
double fisher_amplitude_std(std::span<const Datum> data, double theta,
                            const NoiseModel& noise) {
  double info = 0.0;
  for (const Datum& d : data) {
    const double k = static_cast<double>(2 * d.control + 1);
    const double damp = noise.damping(static_cast<double>(d.control));
    const double phase = k * theta;
    const double p = damp * std::sin(phase) * std::sin(phase) + (1.0 - damp) / 2.0;
    const double dp = damp * k * std::sin(2.0 * phase);
    const double var = p * (1.0 - p);
    double per_shot = var > 1e-300 ? dp * dp / var : 4.0 * k * k * damp * damp;
    info += static_cast<double>(d.shots) * per_shot;
  }
  if (!(info > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::abs(std::sin(2.0 * theta)) / std::sqrt(info);
}

NoiseModel assumed_noise(const std::optional<double>& coherence_time) {
  return coherence_time ? NoiseModel::with_coherence_time(*coherence_time)
                        : NoiseModel::noiseless();
}

}  // namespace

std::vector<double> qpe_outcome_distribution(double phi, std::int64_t fourier_order) {
  check_fourier_order(fourier_order);
  std::vector<double> p(fourier_order);
  for (std::int64_t x = 0; x < fourier_order; ++x) {
    p[x] = qpe_outcome_probability(phi, fourier_order, x);
  }
  return p;
}

std::vector<double> qae_outcome_distribution(double theta, std::int64_t fourier_order) {
  std::vector<double> p = qpe_outcome_distribution(theta / kPi, fourier_order);
  const std::vector<double> q = qpe_outcome_distribution(1.0 - theta / kPi, fourier_order);
  for (std::size_t x = 0; x < p.size(); ++x) p[x] = 0.5 * (p[x] + q[x]);
  return p;
}

QaeResult run_canonical_qae(double amplitude, int auxiliary_qubits,
                            std::int64_t shots, std::uint64_t seed) {
  if (auxiliary_qubits < 1 || auxiliary_qubits > 30) {
    throw std::invalid_argument("auxiliary qubit count must lie in [1, 30]");
  }
  if (shots < 1) throw std::invalid_argument("shots must be positive");
  const std::int64_t order = std::int64_t{1} << auxiliary_qubits;
  const std::vector<double> p =
      qae_outcome_distribution(angle_from_amplitude(amplitude), order);

  Rng rng(seed);
  std::discrete_distribution<std::int64_t> draw(p.begin(), p.end());
  QaeResult out;
  out.counts.assign(order, 0);
  for (std::int64_t s = 0; s < shots; ++s) ++out.counts[draw(rng)];
  out.queries = shots * order;

  // Outcomes x and K - x encode the same amplitude.
  const std::int64_t half = order / 2;
  std::vector<std::int64_t> folded(half + 1, 0);
  for (std::int64_t x = 0; x < order; ++x) folded[std::min(x, order - x)] += out.counts[x];
  const std::int64_t mode = std::max_element(folded.begin(), folded.end()) - folded.begin();
  out.mode_estimate = representable_amplitude(mode, order);

  out.interval_lo = mode == 0 ? 0.0
                              : 0.5 * (out.mode_estimate +
                                       representable_amplitude(mode - 1, order));
  out.interval_hi = mode == half ? 1.0
                                 : 0.5 * (out.mode_estimate +
                                          representable_amplitude(mode + 1, order));

  double best_a = out.mode_estimate;
  double best_ll = qae_log_likelihood(best_a, out.counts);
  const double width = out.interval_hi - out.interval_lo;
  for (int i = 0; i < kMleGridPoints; ++i) {
    double a = out.interval_lo + width * i / (kMleGridPoints - 1);
    double ll = qae_log_likelihood(a, out.counts);
    if (ll > best_ll) {
      best_ll = ll;
      best_a = a;
    }
  }
  out.estimate = best_a;
  return out;
}

RunTrace canonical_qae_trace(double amplitude, int auxiliary_qubits,
                             std::int64_t shots, std::uint64_t seed) {
  QaeResult r = run_canonical_qae(amplitude, auxiliary_qubits, shots, seed);
  RunTrace trace;
  trace.algorithm = "canonical_qae";
  trace.seed = seed;
  TraceRecord rec;
  rec.phase = Phase::schedule;
  rec.control = (std::int64_t{1} << auxiliary_qubits);
  rec.shots = shots;
  rec.cost = r.queries;
  rec.queries = r.queries;
  rec.estimate = r.estimate;
  rec.std_dev = std::numeric_limits<double>::quiet_NaN();
  trace.records.push_back(rec);
  trace.estimate = r.estimate;
  return trace;
}

ClassicalResult run_classical_baseline(double amplitude, std::int64_t shots,
                                       std::uint64_t seed) {
  Datum d = simulate_measurement(AmplitudeModel{amplitude, {}}, 0, shots, seed);
  return {static_cast<double>(d.ones) / static_cast<double>(shots), shots};
}

RunTrace classical_trace(const AmplitudeModel& truth, std::int64_t total_shots,
                         std::uint64_t seed, std::int64_t first_checkpoint) {
  if (total_shots < 1) throw std::invalid_argument("shots must be positive");
  if (first_checkpoint < 1)
    throw std::invalid_argument("first checkpoint must be positive");
  RunTrace trace;
  trace.algorithm = "classical";
  trace.seed = seed;
  Rng rng(seed);
  std::int64_t shots = 0;
  std::int64_t ones = 0;
  for (int k = 0;; ++k) {
    std::int64_t checkpoint = std::min<std::int64_t>(
        total_shots,
        std::max<std::int64_t>(first_checkpoint, std::llround(std::pow(10.0, k / 10.0))));
    if (checkpoint <= shots) {
      if (shots >= total_shots) break;
      continue;
    }
    Datum d = simulate_measurement(truth, 0, checkpoint - shots, rng);
    shots = checkpoint;
    ones += d.ones;
    TraceRecord rec;
    rec.step = static_cast<std::int64_t>(trace.records.size());
    rec.phase = Phase::schedule;
    rec.control = 0;
    rec.shots = d.shots;
    rec.ones = d.ones;
    rec.cost = d.shots;
    rec.queries = shots;
    const double p = static_cast<double>(ones) / static_cast<double>(shots);
    rec.estimate = p;
    rec.std_dev = std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
    trace.records.push_back(rec);
  }
  trace.estimate = trace.records.back().estimate;
  return trace;
}

std::vector<Control> MlaeSchedule::controls() const {
  if (stages < 1) throw std::invalid_argument("MLAE needs at least one stage");
  if (shots_per_stage < 1) throw std::invalid_argument("MLAE needs shots per stage");
  std::vector<Control> m;
  m.reserve(stages);
  for (std::int64_t s = 0; s < stages; ++s) {
    if (kind == Kind::lis) {
      m.push_back(s);
    } else {
      m.push_back(s == 0 ? 0 : (Control{1} << (s - 1)));
    }
  }
  return m;
}

double mlae_estimate(std::span<const Datum> data,
                     const std::optional<double>& assumed_coherence_time) {
  if (data.empty()) throw std::invalid_argument("MLAE needs data");
  const NoiseModel noise = assumed_noise(assumed_coherence_time);
  auto log_lik = [&](double theta) {
    double out = 0.0;
    for (const Datum& d : data) {
      double p = noisy_likelihood(theta, noise, d.control, true);
      if (d.ones > 0) out += static_cast<double>(d.ones) * std::log(p);
      if (d.shots - d.ones > 0) out += static_cast<double>(d.shots - d.ones) * std::log1p(-p);
    }
    return out;
  };

  const double step = kHalfPi / (kMleGridPoints - 1);
  std::vector<double> grid(kMleGridPoints);
  for (int i = 0; i < kMleGridPoints; ++i) grid[i] = log_lik(step * i);

  // Local maxima of the grid, best first.
  std::vector<int> peaks;
  for (int i = 0; i < kMleGridPoints; ++i) {
    bool left = i == 0 || grid[i] >= grid[i - 1];
    bool right = i == kMleGridPoints - 1 || grid[i] >= grid[i + 1];
    if (left && right && grid[i] > kNegInf) peaks.push_back(i);
  }
  if (peaks.empty()) return amplitude_from_angle(step * static_cast<double>(
      std::max_element(grid.begin(), grid.end()) - grid.begin()));
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return grid[a] != grid[b] ? grid[a] > grid[b] : a < b;
  });
  if (peaks.size() > 5) peaks.resize(5);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double best_theta = step * peaks.front();
  double best_ll = grid[peaks.front()];
  for (int i : peaks) {
    double lo = step * std::max(0, i - 1);
    double hi = step * std::min(kMleGridPoints - 1, i + 1);
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = log_lik(c);
    double fd = log_lik(d);
    for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
      if (fc >= fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - inv_phi * (hi - lo);
        fc = log_lik(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + inv_phi * (hi - lo);
        fd = log_lik(d);
      }
    }
    double theta = 0.5 * (lo + hi);
    double ll = log_lik(theta);
    if (ll > best_ll) {
      best_ll = ll;
      best_theta = theta;
    }
  }
  return amplitude_from_angle(std::clamp(best_theta, 0.0, kHalfPi));
}

RunTrace mlae_trace(const AmplitudeModel& truth, const MlaeSchedule& schedule,
                    std::uint64_t seed,
                    const std::optional<double>& assumed_coherence_time) {
  const std::vector<Control> controls = schedule.controls();
  const NoiseModel noise = assumed_noise(assumed_coherence_time);
  RunTrace trace;
  trace.algorithm = schedule.kind == MlaeSchedule::Kind::lis ? "mlae_lis" : "mlae_eis";
  trace.seed = seed;
  Rng rng(seed);
  std::vector<Datum> data;
  std::int64_t queries = 0;
  for (Control m : controls) {
    Datum d = simulate_measurement(truth, m, schedule.shots_per_stage, rng);
    data.push_back(d);
    TraceRecord rec;
    rec.step = static_cast<std::int64_t>(trace.records.size());
    rec.phase = Phase::schedule;
    rec.control = m;
    rec.shots = d.shots;
    rec.ones = d.ones;
    rec.cost = query_cost(m, d.shots);
    queries += rec.cost;
    rec.queries = queries;
    rec.estimate = mlae_estimate(data, assumed_coherence_time);
    rec.std_dev = fisher_amplitude_std(data, angle_from_amplitude(rec.estimate), noise);
    trace.records.push_back(rec);
  }
  trace.estimate = trace.records.back().estimate;
  return trace;
}

MlaeResult run_mlae(const AmplitudeModel& truth, const MlaeSchedule& schedule,
                    std::uint64_t seed,
                    const std::optional<double>& assumed_coherence_time) {
  const std::vector<Control> controls = schedule.controls();
  Rng rng(seed);
  MlaeResult out;
  for (Control m : controls) {
    out.data.push_back(simulate_measurement(truth, m, schedule.shots_per_stage, rng));
  }
  out.queries = query_cost(out.data);
  out.estimate = mlae_estimate(out.data, assumed_coherence_time);
  return out;
}

}  // namespace bae
