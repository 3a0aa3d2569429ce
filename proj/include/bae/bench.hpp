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

#ifndef BAE_BENCH_HPP_
#define BAE_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bae/bae.hpp"
#include "bae/reference.hpp"
#include "bae/trace.hpp"

namespace bae {

enum class Algorithm { bae, annealed_bae, classical, canonical_qae, mlae_lis, mlae_eis };

const char* algorithm_name(Algorithm algorithm);
/// Throws std::invalid_argument for unknown names.
Algorithm parse_algorithm(const std::string& name);

struct NoiseRule {
  bool enabled = false;
  double t_min = 2000.0;  // coherence times drawn uniformly from [t_min, t_max)
  double t_max = 5000.0;
};

struct BenchmarkConfig {
  Algorithm algorithm = Algorithm::bae;
  std::int64_t trials = 30;
  std::uint64_t seed = 0;
  int bins = 10;
  NoiseRule noise;
  unsigned threads = 0;  // 0: hardware concurrency

  BaeConfig bae;
  /// BAE: when the benchmark draws T_c, use it as the known coherence time.
  bool bae_known_noise = false;

  MlaeSchedule mlae;
  /// MLAE: assume the drawn T_c in the likelihood (noise-aware).
  bool mlae_noise_aware = false;

  int qae_min_qubits = 3;
  int qae_max_qubits = 8;
  std::int64_t qae_shots = 100;

  std::int64_t classical_shots = 100000;
  /// First recorded checkpoint; the default matches the BAE warm-up.
  std::int64_t classical_first_shots = 100;

  void validate() const;
};

/// One emitted benchmark point (one trace record of one trial).
struct BenchPoint {
  std::int64_t run_id = 0;
  std::string algorithm;
  double true_amplitude = 0.0;
  double true_t = 0.0;  // NaN when noiseless
  std::int64_t n_queries = 0;
  double estimate = 0.0;
  double sq_norm_error = 0.0;  // ((a - a_hat) / a)^2
  double norm_std = 0.0;       // std / a
  std::uint64_t seed = 0;
};

struct TrialFailure {
  std::int64_t run_id = 0;
  std::string message;
};

struct BenchmarkResult {
  std::vector<BenchPoint> points;
  std::vector<TrialFailure> failures;
};

/// Ground truth and algorithm seed of trial `index`.
struct TrialSetup {
  AmplitudeModel truth;
  std::uint64_t seed = 0;
};
TrialSetup trial_setup(const BenchmarkConfig& config, std::int64_t index);

/// Runs the configured algorithm on one trial.
RunTrace run_trial(const BenchmarkConfig& config, const TrialSetup& setup);

/// All trials, in parallel, with output ordered by trial then record.
BenchmarkResult run_benchmark(const BenchmarkConfig& config);

/// Points of one trace, errors normalized by the true amplitude.
std::vector<BenchPoint> trace_points(const RunTrace& trace, std::int64_t run_id,
                                     const AmplitudeModel& truth);

struct EstimatePair {
  double truth = 0.0;
  double estimate = 0.0;
};

struct NrmseResult {
  double value = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;  // pairs with zero true amplitude
};

/// sqrt(mean(((a - a_hat) / a)^2)). Pairs with a = 0 are skipped and counted
/// in `excluded`. Throws if no pair is usable.
NrmseResult nrmse(std::span<const EstimatePair> pairs);

/// Raw (x, y, s) sample: x queries, y squared normalized error, s normalized std.
struct XYPoint {
  double x = 0.0;
  double y = 0.0;
  double s = 0.0;
};

struct BinRecord {
  int bin = 0;
  double x_mean = 0.0;
  double rmse = 0.0;      // sqrt(mean y)
  double std_mean = 0.0;  // sqrt(mean s^2) over finite s; NaN if none
  std::size_t n_points = 0;
};

using BinnedSeries = std::vector<BinRecord>;

/// Equal-width bins in log(x) spanning the data; x and y are averaged
/// independently within each bin. Empty bins are omitted.
/// Per-bin statistic. `median` replaces each mean with the bin median (x,
/// y and s^2 taken independently); the output is then flagged as such.
enum class BinAverage { mean, median };

BinnedSeries bin_and_average(std::span<const XYPoint> points, int n_bins,
                             BinAverage average = BinAverage::mean);

std::vector<XYPoint> xy_points(std::span<const BenchPoint> points);

struct DummyAnchor {
  double x = 1.0;
  double sigma = 1.0;
};

/// x log-uniform on [x_min, x_max], z ~ N(mu, c / x) with c fixed by the
/// anchor, y = (z - mu)^2, s = c / x.
std::vector<XYPoint> generate_dummy_hl_data(std::size_t n_points, double x_min,
                                            double x_max, const DummyAnchor& anchor,
                                            double mu, std::uint64_t seed);

struct PowerLawFit {
  double slope = 0.0;  // m in y = B x^m
  double scale = 0.0;  // B
  double x0 = 0.0;
  double y0 = 0.0;

  double fitted(double x) const;
  double standard_quantum_limit(double x) const;  // y0 (x/x0)^(-1/2)
  double heisenberg_limit(double x) const;        // y0 (x/x0)^(-1)
};

/// Least squares of log y on log x; (x0, y0) is the fitted image of the first
/// point. Requires two distinct positive x values and positive y.
PowerLawFit fit_intercept(std::span<const double> xs, std::span<const double> ys);
PowerLawFit fit_intercept(const BinnedSeries& series);

// CSV formats.
inline constexpr const char* kPointsHeader =
    "run_id,algorithm,true_amplitude,true_T,n_queries,estimate,sq_norm_error,norm_std,seed";
inline constexpr const char* kBinnedHeader = "bin,x_mean,rmse,std_mean,n_points";
inline constexpr const char* kXYHeader = "x,y,s";

void write_points_csv(std::ostream& out, std::span<const BenchPoint> points);
/// Throws std::runtime_error on malformed input.
std::vector<BenchPoint> read_points_csv(std::istream& in);
/// Plain (x, y, s) points, as produced by the dummy generator.
void write_xy_csv(std::ostream& out, std::span<const XYPoint> points);
/// Reads either a raw points file or an x,y,s file, chosen by the header.
std::vector<XYPoint> read_xy_points(std::istream& in);
void write_binned_csv(std::ostream& out, const BinnedSeries& series);
void write_trace_csv(std::ostream& out, const RunTrace& trace,
                     const AmplitudeModel& truth);
void write_reference_lines_csv(std::ostream& out, const BinnedSeries& series,
                               const PowerLawFit& fit);

}  // namespace bae

#endif  // BAE_BENCH_HPP_
