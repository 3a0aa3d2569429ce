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

#include "bae/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <iterator>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace bae {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct AlgorithmName {
  Algorithm algorithm;
  const char* name;
};

constexpr AlgorithmName kAlgorithmNames[] = {
    {Algorithm::bae, "bae"},
    {Algorithm::annealed_bae, "annealed_bae"},
    {Algorithm::classical, "classical"},
    {Algorithm::canonical_qae, "canonical_qae"},
    {Algorithm::mlae_lis, "mlae_lis"},
    {Algorithm::mlae_eis, "mlae_eis"},
};

RunTrace canonical_qae_sweep(const BenchmarkConfig& config, const TrialSetup& setup) {
  RunTrace trace;
  trace.algorithm = "canonical_qae";
  trace.seed = setup.seed;
  for (int k = config.qae_min_qubits; k <= config.qae_max_qubits; ++k) {
    RunTrace one = canonical_qae_trace(setup.truth.amplitude, k, config.qae_shots,
                                       derive_seed(setup.seed, static_cast<std::uint64_t>(k)));
    TraceRecord rec = one.records.front();
    rec.step = static_cast<std::int64_t>(trace.records.size());
    trace.records.push_back(rec);
    trace.estimate = rec.estimate;
  }
  return trace;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

const char* algorithm_name(Algorithm algorithm) {
  for (const auto& entry : kAlgorithmNames) {
    if (entry.algorithm == algorithm) return entry.name;
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  for (const auto& entry : kAlgorithmNames) {
    if (name == entry.name) return entry.algorithm;
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

void BenchmarkConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (bins < 2) throw std::invalid_argument("bins must be at least 2");
  if (noise.enabled && !(noise.t_min > 0.0 && noise.t_min < noise.t_max)) {
    throw std::invalid_argument("noise range needs 0 < t_min < t_max");
  }
  if (qae_min_qubits < 1 || qae_max_qubits < qae_min_qubits || qae_max_qubits > 30) {
    throw std::invalid_argument("qae qubit range must satisfy 1 <= min <= max <= 30");
  }
  if (qae_shots < 1) throw std::invalid_argument("qae_shots must be positive");
  if (classical_shots < 1) throw std::invalid_argument("classical_shots must be positive");
  if (classical_first_shots < 1 || classical_first_shots > classical_shots) {
    throw std::invalid_argument("classical_first_shots must lie in [1, classical_shots]");
  }
  (void)mlae.controls();
  if (algorithm == Algorithm::bae || algorithm == Algorithm::annealed_bae) bae.validate();
}

TrialSetup trial_setup(const BenchmarkConfig& config, std::int64_t index) {
  const std::uint64_t trial_seed = derive_seed(config.seed, static_cast<std::uint64_t>(index));
  Rng rng(trial_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  TrialSetup setup;
  // a = 0 would make the normalized error undefined.
  do {
    setup.truth.amplitude = unit(rng);
  } while (setup.truth.amplitude == 0.0);
  if (config.noise.enabled) {
    std::uniform_real_distribution<double> coherence(config.noise.t_min, config.noise.t_max);
    setup.truth.noise = NoiseModel::with_coherence_time(coherence(rng));
  }
  setup.seed = derive_seed(trial_seed, 1);
  return setup;
}

RunTrace run_trial(const BenchmarkConfig& config, const TrialSetup& setup) {
  const std::optional<double> drawn_t =
      setup.truth.noise.is_noiseless()
          ? std::nullopt
          : std::optional<double>(setup.truth.noise.coherence_time());
  switch (config.algorithm) {
    case Algorithm::bae:
    case Algorithm::annealed_bae: {
      BaeConfig c = config.bae;
      if (config.bae_known_noise && drawn_t) c.noise = KnownNoise{*drawn_t};
      return config.algorithm == Algorithm::bae ? run_bae(c, setup.truth, setup.seed)
                                                : run_annealed_bae(c, setup.truth, setup.seed);
    }
    case Algorithm::classical:
      return classical_trace(setup.truth, config.classical_shots, setup.seed,
                             config.classical_first_shots);
    case Algorithm::canonical_qae:
      return canonical_qae_sweep(config, setup);
    case Algorithm::mlae_lis:
    case Algorithm::mlae_eis: {
      MlaeSchedule schedule = config.mlae;
      schedule.kind = config.algorithm == Algorithm::mlae_lis ? MlaeSchedule::Kind::lis
                                                              : MlaeSchedule::Kind::eis;
      return mlae_trace(setup.truth, schedule, setup.seed,
                        config.mlae_noise_aware ? drawn_t : std::nullopt);
    }
  }
  throw std::logic_error("unhandled algorithm");
}

std::vector<BenchPoint> trace_points(const RunTrace& trace, std::int64_t run_id,
                                     const AmplitudeModel& truth) {
  std::vector<BenchPoint> out;
  out.reserve(trace.records.size());
  const double a = truth.amplitude;
  for (const TraceRecord& rec : trace.records) {
    BenchPoint p;
    p.run_id = run_id;
    p.algorithm = trace.algorithm;
    p.true_amplitude = a;
    p.true_t = truth.noise.is_noiseless() ? kNaN : truth.noise.coherence_time();
    p.n_queries = rec.queries;
    p.estimate = rec.estimate;
    double rel = (a - rec.estimate) / a;
    p.sq_norm_error = rel * rel;
    p.norm_std = rec.std_dev / a;
    p.seed = trace.seed;
    out.push_back(std::move(p));
  }
  return out;
}

BenchmarkResult run_benchmark(const BenchmarkConfig& config) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.trials);
  std::vector<std::vector<BenchPoint>> per_trial(n);
  std::vector<std::optional<std::string>> errors(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const TrialSetup setup = trial_setup(config, static_cast<std::int64_t>(i));
      try {
        RunTrace trace = run_trial(config, setup);
        per_trial[i] = trace_points(trace, static_cast<std::int64_t>(i), setup.truth);
        if (trace.failure) errors[i] = *trace.failure;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  unsigned threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  BenchmarkResult result;
  for (std::size_t i = 0; i < n; ++i) {
    result.points.insert(result.points.end(), per_trial[i].begin(), per_trial[i].end());
    if (errors[i]) result.failures.push_back({static_cast<std::int64_t>(i), *errors[i]});
  }
  return result;
}

NrmseResult nrmse(std::span<const EstimatePair> pairs) {
  NrmseResult out;
  double acc = 0.0;
  for (const EstimatePair& p : pairs) {
    if (p.truth == 0.0) {
      ++out.excluded;
      continue;
    }
    double rel = (p.truth - p.estimate) / p.truth;
    acc += rel * rel;
    ++out.used;
  }
  if (out.used == 0) throw std::invalid_argument("nrmse needs a pair with non-zero amplitude");
  out.value = std::sqrt(acc / static_cast<double>(out.used));
  return out;
}

std::vector<XYPoint> xy_points(std::span<const BenchPoint> points) {
  std::vector<XYPoint> out;
  out.reserve(points.size());
  for (const BenchPoint& p : points) {
    out.push_back({static_cast<double>(p.n_queries), p.sq_norm_error, p.norm_std});
  }
  return out;
}

namespace {

double median_of(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace

BinnedSeries bin_and_average(std::span<const XYPoint> points, int n_bins, BinAverage average) {
  if (points.empty()) throw std::invalid_argument("no points to bin");
  if (n_bins < 1) throw std::invalid_argument("need at least one bin");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const XYPoint& p : points) {
    if (!(p.x > 0.0)) throw std::invalid_argument("binning needs positive x");
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  const double log_lo = std::log(lo);
  const double width = (std::log(hi) - log_lo) / n_bins;

  struct Bin {
    std::vector<double> x, y, s2;
  };
  std::vector<Bin> bins(static_cast<std::size_t>(n_bins));
  for (const XYPoint& p : points) {
    int b = width > 0.0 ? static_cast<int>((std::log(p.x) - log_lo) / width) : 0;
    b = std::clamp(b, 0, n_bins - 1);
    Bin& bin = bins[static_cast<std::size_t>(b)];
    bin.x.push_back(p.x);
    bin.y.push_back(p.y);
    if (std::isfinite(p.s)) bin.s2.push_back(p.s * p.s);
  }
  auto centre = [average](std::vector<double>& v) {
    if (average == BinAverage::median) return median_of(v);
    double sum = 0.0;
    for (double e : v) sum += e;
    return sum / static_cast<double>(v.size());
  };
  BinnedSeries out;
  for (int b = 0; b < n_bins; ++b) {
    Bin& bin = bins[static_cast<std::size_t>(b)];
    if (bin.x.empty()) continue;
    BinRecord r;
    r.bin = b;
    r.n_points = bin.x.size();
    r.x_mean = centre(bin.x);
    r.rmse = std::sqrt(centre(bin.y));
    r.std_mean = bin.s2.empty() ? kNaN : std::sqrt(centre(bin.s2));
    out.push_back(r);
  }
  return out;
}

std::vector<XYPoint> generate_dummy_hl_data(std::size_t n_points, double x_min,
                                            double x_max, const DummyAnchor& anchor,
                                            double mu, std::uint64_t seed) {
  if (!(x_min > 0.0 && x_min < x_max)) {
    throw std::invalid_argument("dummy data needs 0 < x_min < x_max");
  }
  if (!(anchor.x > 0.0 && anchor.sigma > 0.0)) {
    throw std::invalid_argument("dummy anchor needs positive x and sigma");
  }
  const double c = anchor.sigma * anchor.x;
  Rng rng(seed);
  std::uniform_real_distribution<double> log_x(std::log(x_min), std::log(x_max));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<XYPoint> out;
  out.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = std::exp(log_x(rng));
    const double sigma = c / x;
    const double z = mu + sigma * gauss(rng);
    out.push_back({x, (z - mu) * (z - mu), sigma});
  }
  return out;
}

double PowerLawFit::fitted(double x) const { return scale * std::pow(x, slope); }

double PowerLawFit::standard_quantum_limit(double x) const {
  return y0 * std::pow(x / x0, -0.5);
}

double PowerLawFit::heisenberg_limit(double x) const { return y0 * x0 / x; }

PowerLawFit fit_intercept(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("fit needs at least two (x, y) pairs");
  }
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0 && ys[i] > 0.0)) {
      throw std::invalid_argument("log-log fit needs positive x and y");
    }
    sx += std::log(xs[i]);
    sy += std::log(ys[i]);
  }
  const double n = static_cast<double>(xs.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(ys[i]) - my);
  }
  if (!(sxx > 1e-300)) throw std::invalid_argument("fit needs two distinct x values");
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.scale = std::exp(my - fit.slope * mx);
  fit.x0 = xs.front();
  fit.y0 = fit.fitted(fit.x0);
  return fit;
}

PowerLawFit fit_intercept(const BinnedSeries& series) {
  std::vector<double> xs, ys;
  for (const BinRecord& r : series) {
    xs.push_back(r.x_mean);
    ys.push_back(r.rmse);
  }
  return fit_intercept(xs, ys);
}

void write_points_csv(std::ostream& out, std::span<const BenchPoint> points) {
  out << kPointsHeader << '\n';
  for (const BenchPoint& p : points) {
    out << fmt::format("{},{},{},{},{},{},{},{},{}\n", p.run_id, p.algorithm,
                       p.true_amplitude, p.true_t, p.n_queries, p.estimate,
                       p.sq_norm_error, p.norm_std, p.seed);
  }
}

std::vector<BenchPoint> read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kPointsHeader) {
    throw std::runtime_error("unexpected points header: '" + line + "'");
  }
  std::vector<BenchPoint> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 9) {
      throw std::runtime_error(fmt::format("line {}: expected 9 fields, got {}", line_no, f.size()));
    }
    try {
      BenchPoint p;
      p.run_id = std::stoll(f[0]);
      p.algorithm = f[1];
      p.true_amplitude = std::stod(f[2]);
      p.true_t = std::stod(f[3]);
      p.n_queries = std::stoll(f[4]);
      p.estimate = std::stod(f[5]);
      p.sq_norm_error = std::stod(f[6]);
      p.norm_std = std::stod(f[7]);
      p.seed = std::stoull(f[8]);
      points.push_back(std::move(p));
    } catch (const std::logic_error&) {
      throw std::runtime_error(fmt::format("line {}: malformed number", line_no));
    }
  }
  return points;
}

void write_xy_csv(std::ostream& out, std::span<const XYPoint> points) {
  out << kXYHeader << '\n';
  for (const XYPoint& p : points) out << fmt::format("{},{},{}\n", p.x, p.y, p.s);
}

std::vector<XYPoint> read_xy_points(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) return {};
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header == kPointsHeader) {
    std::istringstream rest(header + '\n' + std::string(std::istreambuf_iterator<char>(in), {}));
    return xy_points(read_points_csv(rest));
  }
  if (header != kXYHeader) throw std::runtime_error("unexpected points header: '" + header + "'");
  std::vector<XYPoint> points;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 3) {
      throw std::runtime_error(fmt::format("line {}: expected 3 fields, got {}", line_no, f.size()));
    }
    try {
      points.push_back({std::stod(f[0]), std::stod(f[1]), std::stod(f[2])});
    } catch (const std::logic_error&) {
      throw std::runtime_error(fmt::format("line {}: malformed number", line_no));
    }
  }
  return points;
}

void write_binned_csv(std::ostream& out, const BinnedSeries& series) {
  out << kBinnedHeader << '\n';
  for (const BinRecord& r : series) {
    out << fmt::format("{},{},{},{},{}\n", r.bin, r.x_mean, r.rmse, r.std_mean, r.n_points);
  }
}

void write_trace_csv(std::ostream& out, const RunTrace& trace, const AmplitudeModel& truth) {
  auto opt = [](const std::optional<double>& v) {
    return v ? fmt::format("{}", *v) : std::string("none");
  };
  out << "# algorithm=" << trace.algorithm << '\n';
  out << "# seed=" << trace.seed << '\n';
  out << fmt::format("# true_amplitude={}\n", truth.amplitude);
  out << fmt::format("# true_T={}\n", truth.noise.is_noiseless() ? kNaN
                                                                  : truth.noise.coherence_time());
  out << fmt::format("# estimate={}\n", trace.estimate);
  out << "# log_evidence=" << opt(trace.log_evidence) << '\n';
  out << "# coherence_time_estimate=" << opt(trace.coherence_time_estimate) << '\n';
  out << "# offset_queries=" << trace.offset_queries << '\n';
  if (trace.failure) out << "# failure=" << *trace.failure << '\n';
  out << "step,phase,control,shots,ones,cost,n_queries,estimate,std\n";
  for (const TraceRecord& r : trace.records) {
    out << fmt::format("{},{},{},{},{},{},{},{},{}\n", r.step, phase_name(r.phase), r.control,
                       r.shots, r.ones, r.cost, r.queries, r.estimate, r.std_dev);
  }
}

void write_reference_lines_csv(std::ostream& out, const BinnedSeries& series,
                               const PowerLawFit& fit) {
  out << "x,fit,sql,hl\n";
  for (const BinRecord& r : series) {
    out << fmt::format("{},{},{},{}\n", r.x_mean, fit.fitted(r.x_mean),
                       fit.standard_quantum_limit(r.x_mean), fit.heisenberg_limit(r.x_mean));
  }
}

}  // namespace bae
