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

#include "bae/config.hpp"

#include <cstdint>
#include <functional>
#include <istream>
#include <stdexcept>

#include <fmt/format.h>

namespace bae {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  std::int64_t out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw std::runtime_error(fmt::format("config key '{}': expected an integer, got '{}'", key, v));
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw std::runtime_error(fmt::format("config key '{}': expected a number, got '{}'", key, v));
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::runtime_error(fmt::format("config key '{}': expected true/false, got '{}'", key, v));
}

[[noreturn]] void bad_choice(const std::string& key, const std::string& v) {
  throw std::runtime_error(fmt::format("config key '{}': unsupported value '{}'", key, v));
}

}  // namespace

ConfigMap parse_config(std::istream& in) {
  ConfigMap out;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(fmt::format("config line {}: expected 'key = value'", line_no));
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::runtime_error(fmt::format("config line {}: empty key or value", line_no));
    }
    if (!out.emplace(key, value).second) {
      throw std::runtime_error(fmt::format("config line {}: duplicate key '{}'", line_no, key));
    }
  }
  return out;
}

BenchmarkConfig benchmark_config_from(const ConfigMap& entries) {
  BenchmarkConfig c;
  BaeConfig& b = c.bae;

  // Termination, noise mode and threshold depend on several keys; collect
  // them first and resolve after the loop.
  std::string termination = "max_queries";
  std::int64_t max_queries = 100000;
  std::int64_t max_iterations = 100;
  double target_std = 1e-3;
  std::string noise_mode = "none";
  double known_t = 0.0;
  PreEstimateNoise pre;
  std::string kernel = "metropolis";
  double alpha = 0.98;
  int mh_steps = 1;
  double ess_threshold = -1.0;
  std::string utility = "negative_variance";
  double ess_target = -1.0;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"algorithm", [&](auto&, auto& v) {
         try {
           c.algorithm = parse_algorithm(v);
         } catch (const std::invalid_argument&) {
           bad_choice("algorithm", v);
         }
       }},
      {"trials", [&](auto& k, auto& v) { c.trials = to_int(k, v); }},
      {"seed", [&](auto& k, auto& v) { c.seed = static_cast<std::uint64_t>(to_int(k, v)); }},
      {"bins", [&](auto& k, auto& v) { c.bins = static_cast<int>(to_int(k, v)); }},
      {"threads", [&](auto& k, auto& v) { c.threads = static_cast<unsigned>(to_int(k, v)); }},
      {"noise", [&](auto& k, auto& v) {
         if (v == "none") c.noise.enabled = false;
         else if (v == "uniform") c.noise.enabled = true;
         else bad_choice(k, v);
       }},
      {"noise_t_min", [&](auto& k, auto& v) { c.noise.t_min = to_double(k, v); }},
      {"noise_t_max", [&](auto& k, auto& v) { c.noise.t_max = to_double(k, v); }},
      {"warmup_shots", [&](auto& k, auto& v) { b.warmup_shots = to_int(k, v); }},
      {"particles", [&](auto& k, auto& v) { b.particles = static_cast<std::size_t>(to_int(k, v)); }},
      {"ess_threshold", [&](auto& k, auto& v) { ess_threshold = to_double(k, v); }},
      {"kernel", [&](auto& k, auto& v) {
         if (v != "liu_west" && v != "metropolis") bad_choice(k, v);
         kernel = v;
       }},
      {"liu_west_alpha", [&](auto& k, auto& v) { alpha = to_double(k, v); }},
      {"metropolis_steps", [&](auto& k, auto& v) { mh_steps = static_cast<int>(to_int(k, v)); }},
      {"nevals", [&](auto& k, auto& v) { b.design.nevals = static_cast<int>(to_int(k, v)); }},
      {"k0", [&](auto& k, auto& v) { b.design.k0 = static_cast<int>(to_int(k, v)); }},
      {"top_rank", [&](auto& k, auto& v) { b.design.top_rank = static_cast<int>(to_int(k, v)); }},
      {"trigger_repetitions",
       [&](auto& k, auto& v) { b.design.trigger_repetitions = static_cast<int>(to_int(k, v)); }},
      {"shots_per_control", [&](auto& k, auto& v) { b.shots_per_control = to_int(k, v); }},
      {"termination", [&](auto& k, auto& v) {
         if (v != "max_queries" && v != "max_iterations" && v != "target_std") bad_choice(k, v);
         termination = v;
       }},
      {"max_queries", [&](auto& k, auto& v) { max_queries = to_int(k, v); }},
      {"max_iterations", [&](auto& k, auto& v) { max_iterations = to_int(k, v); }},
      {"target_std", [&](auto& k, auto& v) { target_std = to_double(k, v); }},
      {"utility", [&](auto& k, auto& v) {
         if (v != "negative_variance" && v != "ess_target") bad_choice(k, v);
         utility = v;
       }},
      {"ess_target", [&](auto& k, auto& v) { ess_target = to_double(k, v); }},
      {"noise_mode", [&](auto& k, auto& v) {
         if (v != "none" && v != "known" && v != "pre_estimate") bad_choice(k, v);
         noise_mode = v;
       }},
      {"known_t", [&](auto& k, auto& v) { known_t = to_double(k, v); }},
      {"pre_max_t", [&](auto& k, auto& v) { pre.max_coherence_time = to_double(k, v); }},
      {"pre_shots", [&](auto& k, auto& v) { pre.shots = to_int(k, v); }},
      {"pre_times", [&](auto& k, auto& v) { pre.n_times = to_int(k, v); }},
      {"count_pre_estimation", [&](auto& k, auto& v) { b.count_pre_estimation = to_bool(k, v); }},
      {"mlae_stages", [&](auto& k, auto& v) { c.mlae.stages = to_int(k, v); }},
      {"mlae_shots", [&](auto& k, auto& v) { c.mlae.shots_per_stage = to_int(k, v); }},
      {"mlae_noise_aware", [&](auto& k, auto& v) { c.mlae_noise_aware = to_bool(k, v); }},
      {"qae_min_qubits", [&](auto& k, auto& v) { c.qae_min_qubits = static_cast<int>(to_int(k, v)); }},
      {"qae_max_qubits", [&](auto& k, auto& v) { c.qae_max_qubits = static_cast<int>(to_int(k, v)); }},
      {"qae_shots", [&](auto& k, auto& v) { c.qae_shots = to_int(k, v); }},
      {"classical_shots", [&](auto& k, auto& v) { c.classical_shots = to_int(k, v); }},
      {"classical_first_shots",
       [&](auto& k, auto& v) { c.classical_first_shots = to_int(k, v); }},
  };

  for (const auto& [key, value] : entries) {
    auto it = setters.find(key);
    if (it == setters.end()) throw std::runtime_error("unknown config key '" + key + "'");
    it->second(key, value);
  }

  if (termination == "max_queries") b.termination = MaxQueries{max_queries};
  else if (termination == "max_iterations") b.termination = MaxIterations{max_iterations};
  else b.termination = TargetStd{target_std};

  // "known" in a benchmark with drawn coherence times uses each trial's T_c;
  // otherwise known_t must be given.
  if (noise_mode == "none") {
    b.noise = NoNoise{};
  } else if (noise_mode == "known") {
    if (known_t > 0.0) {
      b.noise = KnownNoise{known_t};
    } else if (c.noise.enabled) {
      c.bae_known_noise = true;
    } else {
      throw std::runtime_error("noise_mode 'known' needs known_t or noise = uniform");
    }
  } else {
    b.noise = pre;
  }

  if (kernel == "liu_west") b.resample.kernel = LiuWestKernel{alpha};
  else b.resample.kernel = MetropolisKernel{mh_steps};
  b.resample.ess_threshold =
      ess_threshold > 0.0 ? ess_threshold : static_cast<double>(b.particles) / 2.0;

  // Without an explicit target the annealed variant picks its own target and
  // threshold (see run_annealed_bae).
  if (utility == "ess_target" || ess_target > 0.0) {
    b.utility = UtilitySpec::ess_target(ess_target > 0.0 ? ess_target
                                                         : default_ess_target(b.particles));
    if (ess_threshold <= 0.0) {
      b.resample.ess_threshold = default_annealed_threshold(b.particles);
    }
  }

  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid config: ") + e.what());
  }
  return c;
}

}  // namespace bae
