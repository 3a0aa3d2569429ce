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

#ifndef BAE_CONFIG_HPP_
#define BAE_CONFIG_HPP_

#include <iosfwd>
#include <map>
#include <string>

#include "bae/bench.hpp"

namespace bae {

/// Flat `key = value` text. `#` starts a comment; blank lines are ignored.
/// Duplicate keys and lines without `=` are errors.
using ConfigMap = std::map<std::string, std::string>;

/// Throws std::runtime_error with the offending line number.
ConfigMap parse_config(std::istream& in);

/// Applies every entry on top of the defaults. Unknown keys or unparsable
/// values throw std::runtime_error naming the key. See README for the schema.
BenchmarkConfig benchmark_config_from(const ConfigMap& entries);

}  // namespace bae

#endif  // BAE_CONFIG_HPP_
