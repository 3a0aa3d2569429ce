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

// Command-line front end: run, bench, process, dummy.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "bae/bench.hpp"
#include "bae/config.hpp"

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string config_path;
  std::string out_path;
};

bae::BenchmarkConfig load_config(const GlobalOptions& g) {
  bae::ConfigMap entries;
  if (!g.config_path.empty()) {
    std::ifstream in(g.config_path);
    if (!in) throw std::runtime_error("cannot open config '" + g.config_path + "'");
    entries = bae::parse_config(in);
  }
  if (g.seed_given) entries["seed"] = std::to_string(g.seed);
  return bae::benchmark_config_from(entries);
}

// Writes through `body` to --out, or stdout when no path was given.
template <typename F>
void with_output(const std::string& path, F&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output '" + path + "'");
  body(out);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

struct RunOptions {
  std::optional<double> amplitude;
  std::optional<double> coherence_time;
  std::int64_t trial = 0;
};

int cmd_run(const GlobalOptions& g, const RunOptions& o) {
  const bae::BenchmarkConfig config = load_config(g);
  bae::TrialSetup setup = bae::trial_setup(config, o.trial);
  if (o.amplitude) {
    if (!(*o.amplitude > 0.0 && *o.amplitude <= 1.0)) {
      throw std::runtime_error("--amplitude must lie in (0, 1]");
    }
    setup.truth.amplitude = *o.amplitude;
  }
  if (o.coherence_time) {
    if (!(*o.coherence_time > 0.0)) throw std::runtime_error("--coherence-time must be positive");
    setup.truth.noise = bae::NoiseModel::with_coherence_time(*o.coherence_time);
  }
  const bae::RunTrace trace = bae::run_trial(config, setup);
  with_output(g.out_path, [&](std::ostream& out) { bae::write_trace_csv(out, trace, setup.truth); });
  std::cerr << fmt::format("{}: a = {}, estimate = {}, queries = {}\n", trace.algorithm,
                           setup.truth.amplitude, trace.estimate, trace.total_queries());
  if (trace.failure) {
    std::cerr << "run aborted: " << *trace.failure << '\n';
    return 1;
  }
  return 0;
}

int cmd_bench(const GlobalOptions& g) {
  const bae::BenchmarkConfig config = load_config(g);
  const bae::BenchmarkResult result = bae::run_benchmark(config);
  with_output(g.out_path, [&](std::ostream& out) { bae::write_points_csv(out, result.points); });
  for (const bae::TrialFailure& f : result.failures) {
    std::cerr << fmt::format("trial {} failed: {}\n", f.run_id, f.message);
  }
  std::cerr << fmt::format("{}: {} trials, {} points, {} failures\n",
                           bae::algorithm_name(config.algorithm), config.trials,
                           result.points.size(), result.failures.size());
  return result.points.empty() ? 1 : 0;
}

struct ProcessOptions {
  std::string input;
  std::string lines_path;
  int bins = 10;
  bool median = false;
};

int cmd_process(const GlobalOptions& g, const ProcessOptions& o) {
  std::vector<bae::XYPoint> points;
  if (o.input.empty() || o.input == "-") {
    points = bae::read_xy_points(std::cin);
  } else {
    std::ifstream in(o.input);
    if (!in) throw std::runtime_error("cannot open input '" + o.input + "'");
    points = bae::read_xy_points(in);
  }
  if (points.empty()) throw std::runtime_error("no points in input");
  if (o.bins < 1) throw std::runtime_error("--bins must be at least 1");

  const bae::BinnedSeries series = bae::bin_and_average(
      points, o.bins, o.median ? bae::BinAverage::median : bae::BinAverage::mean);
  with_output(g.out_path, [&](std::ostream& out) {
    if (o.median) out << "# average=median\n";
    bae::write_binned_csv(out, series);
  });
  if (series.size() < 2) {
    std::cerr << "fewer than two nonempty bins; no fit\n";
    return 0;
  }
  const bae::PowerLawFit fit = bae::fit_intercept(series);
  if (!o.lines_path.empty()) {
    with_output(o.lines_path,
                [&](std::ostream& out) { bae::write_reference_lines_csv(out, series, fit); });
  }
  std::cerr << fmt::format("slope={} scale={} x0={} y0={}\n", fit.slope, fit.scale, fit.x0,
                           fit.y0);
  return 0;
}

struct DummyOptions {
  std::size_t n = 10000;
  double x_min = 10.0;
  double x_max = 1e6;
  double anchor_x = 10.0;
  double anchor_sigma = 0.1;
  double mu = 0.5;
};

int cmd_dummy(const GlobalOptions& g, const DummyOptions& o) {
  const auto points = bae::generate_dummy_hl_data(o.n, o.x_min, o.x_max,
                                                  {o.anchor_x, o.anchor_sigma}, o.mu, g.seed);
  with_output(g.out_path, [&](std::ostream& out) { bae::write_xy_csv(out, points); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian amplitude estimation: runs, benchmarks and post-processing"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Global seed; overrides the config")
                       ->capture_default_str();
  app.add_option("--config", g.config_path, "Key = value config file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_path, "Output path (default: stdout)");

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Single run of the configured algorithm; writes a trace");
  run->add_option("--amplitude", run_opts.amplitude, "True amplitude (default: drawn)");
  run->add_option("--coherence-time", run_opts.coherence_time,
                  "True coherence time (default: config noise rule)");
  run->add_option("--trial", run_opts.trial, "Trial index used for the seed stream")
      ->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Benchmark trials; writes the raw points CSV");

  ProcessOptions proc_opts;
  auto* process =
      app.add_subcommand("process", "Bin raw points, fit the power law, emit reference lines");
  process->add_option("input", proc_opts.input, "Raw points or x,y,s CSV (default: stdin)");
  process->add_option("--bins", proc_opts.bins, "Number of log-width bins")->capture_default_str();
  process->add_option("--lines", proc_opts.lines_path, "Reference-lines CSV path");
  process->add_flag("--median", proc_opts.median, "Bin medians instead of means");

  DummyOptions dummy_opts;
  auto* dummy = app.add_subcommand("dummy", "Generate Heisenberg-scaling dummy points");
  dummy->add_option("-n,--points", dummy_opts.n, "Number of points")->capture_default_str();
  dummy->add_option("--x-min", dummy_opts.x_min)->capture_default_str();
  dummy->add_option("--x-max", dummy_opts.x_max)->capture_default_str();
  dummy->add_option("--anchor-x", dummy_opts.anchor_x)->capture_default_str();
  dummy->add_option("--anchor-sigma", dummy_opts.anchor_sigma)->capture_default_str();
  dummy->add_option("--mu", dummy_opts.mu)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  g.seed_given = seed_opt->count() > 0;

  try {
    if (*run) return cmd_run(g, run_opts);
    if (*bench) return cmd_bench(g);
    if (*process) return cmd_process(g, proc_opts);
    if (*dummy) return cmd_dummy(g, dummy_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
