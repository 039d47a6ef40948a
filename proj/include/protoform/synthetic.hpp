// Copyright 2026 The Protoform Authors.
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

#ifndef PROTOFORM_SYNTHETIC_HPP_
#define PROTOFORM_SYNTHETIC_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "protoform/event_log.hpp"
#include "protoform/time.hpp"

namespace protoform {

struct TracePattern {
  std::vector<std::string> activities;
  double weight = 1.0;
};

// Inclusive bounds in whole seconds.
struct DelayRange {
  std::int64_t min_seconds = 60;
  std::int64_t max_seconds = 60;
};

struct AttributeGenerator {
  std::string name;
  // Exactly one of the two is used: category weights when non-empty,
  // otherwise the numeric range (uniform, inclusive).
  std::vector<std::pair<std::string, double>> category_weights;
  std::optional<std::pair<double, double>> numeric_range;
  bool integral = false;
};

struct SyntheticLogSpec {
  std::vector<TracePattern> trace_patterns;
  DelayRange default_delay;
  std::map<std::pair<std::string, std::string>, DelayRange> arc_delays;
  std::vector<AttributeGenerator> attribute_generators;
  std::int64_t case_count = 1;
  Instant start_window_begin = make_instant(2020, 1, 1);
  Instant start_window_end = make_instant(2021, 1, 1);
  std::uint64_t rng_seed = 0;
};

// Throws ConfigError when the spec breaks its invariants.
void check_spec(const SyntheticLogSpec& spec);

// Deterministic for a given spec (including rng_seed). Case attributes are
// case-level; case ids are "case-000001", "case-000002", ...
EventLog generate_synthetic_log(const SyntheticLogSpec& spec);

// Reads the JSON form used by the synth command:
//
//   {"patterns": [{"activities": ["A", "B"], "weight": 9}],
//    "default_delay": {"min": "1m", "max": "2m"},
//    "arc_delays": [{"source": "A", "target": "B", "min": 60, "max": 60}],
//    "attributes": [{"name": "sex", "categories": [["Male", 1], ["Female", 1]]},
//                   {"name": "age", "range": [40, 95], "integral": true}],
//    "case_count": 500, "start_window": ["2020-01-01", "2021-01-01"],
//    "seed": 7}
SyntheticLogSpec synthetic_spec_from_json(const nlohmann::json& document);

}  // namespace protoform

#endif  // PROTOFORM_SYNTHETIC_HPP_
