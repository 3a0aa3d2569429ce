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

#ifndef BAE_TRACE_HPP_
#define BAE_TRACE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bae/model.hpp"

namespace bae {

enum class Phase { warmup, adaptive, schedule };

const char* phase_name(Phase phase);

/// One assimilation step of an estimation run.
struct TraceRecord {
  std::int64_t step = 0;
  Phase phase = Phase::adaptive;
  Control control = 0;
  std::int64_t shots = 0;
  std::int64_t ones = 0;
  std::int64_t cost = 0;     // queries spent by this step
  std::int64_t queries = 0;  // cumulative queries, including any offset
  double estimate = 0.0;     // current amplitude estimate
  double std_dev = 0.0;      // current amplitude uncertainty (NaN if unknown)
};

/// Per-run trajectory shared by every algorithm so benchmarks treat them alike.
struct RunTrace {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> records;
  /// Queries spent before the first record (coherence-time pre-estimation),
  /// already folded into every record's cumulative count when counted.
  std::int64_t offset_queries = 0;
  double estimate = 0.0;
  std::optional<double> log_evidence;
  std::optional<double> coherence_time_estimate;
  /// Set when the run aborted early; records hold the partial trajectory.
  std::optional<std::string> failure;

  std::int64_t total_queries() const {
    return records.empty() ? offset_queries : records.back().queries;
  }
};

}  // namespace bae

#endif  // BAE_TRACE_HPP_
