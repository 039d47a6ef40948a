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

#include "protoform/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "protoform/error.hpp"
#include "protoform/knowledge_base.hpp"

namespace protoform {

void check_spec(const SyntheticLogSpec& spec) {
  if (spec.trace_patterns.empty())
    throw ConfigError("synthetic spec needs at least one trace pattern");
  for (const auto& pattern : spec.trace_patterns) {
    if (pattern.activities.empty())
      throw ConfigError("trace pattern with no activities");
    if (!(pattern.weight > 0) || !std::isfinite(pattern.weight))
      throw ConfigError("trace pattern weights must be positive");
    for (const auto& activity : pattern.activities)
      if (activity.empty()) throw ConfigError("empty activity in trace pattern");
  }
  auto check_delay = [](const DelayRange& delay) {
    if (delay.min_seconds < 0 || delay.min_seconds > delay.max_seconds)
      throw ConfigError("delay range needs 0 <= min <= max");
  };
  check_delay(spec.default_delay);
  for (const auto& [arc, delay] : spec.arc_delays) check_delay(delay);
  if (spec.case_count < 1) throw ConfigError("case_count must be at least 1");
  if (!(spec.start_window_begin < spec.start_window_end))
    throw ConfigError("start window must be non-empty");
  for (const auto& generator : spec.attribute_generators) {
    if (generator.name.empty())
      throw ConfigError("attribute generator without a name");
    if (!generator.category_weights.empty()) {
      for (const auto& [label, weight] : generator.category_weights)
        if (!(weight > 0) || !std::isfinite(weight))
          throw ConfigError("category weights of '" + generator.name +
                            "' must be positive");
    } else if (generator.numeric_range) {
      if (!(generator.numeric_range->first <= generator.numeric_range->second))
        throw ConfigError("numeric range of '" + generator.name +
                          "' needs min <= max");
    } else {
      throw ConfigError("attribute generator '" + generator.name +
                        "' has neither categories nor a range");
    }
  }
}

EventLog generate_synthetic_log(const SyntheticLogSpec& spec) {
  check_spec(spec);
  std::mt19937_64 rng(spec.rng_seed);

  std::vector<double> pattern_weights;
  for (const auto& pattern : spec.trace_patterns)
    pattern_weights.push_back(pattern.weight);
  std::discrete_distribution<std::size_t> pick_pattern(pattern_weights.begin(),
                                                       pattern_weights.end());
  std::uniform_int_distribution<std::int64_t> pick_start(
      spec.start_window_begin.seconds, spec.start_window_end.seconds - 1);

  AttributeSchema schema;
  for (const auto& generator : spec.attribute_generators)
    schema[generator.name] = AttributeInfo{
        generator.category_weights.empty() ? AttributeKind::kNumeric
                                           : AttributeKind::kCategory,
        AttributeScope::kCase, false};

  std::vector<Case> cases;
  cases.reserve(static_cast<std::size_t>(spec.case_count));
  for (std::int64_t n = 1; n <= spec.case_count; ++n) {
    char id[32];
    std::snprintf(id, sizeof(id), "case-%06lld", static_cast<long long>(n));
    Case c{id, {}, {}, {}};
    const auto& pattern = spec.trace_patterns[pick_pattern(rng)];
    Instant at{pick_start(rng)};
    for (std::size_t i = 0; i < pattern.activities.size(); ++i) {
      if (i > 0) {
        DelayRange delay = spec.default_delay;
        auto it = spec.arc_delays.find(
            {pattern.activities[i - 1], pattern.activities[i]});
        if (it != spec.arc_delays.end()) delay = it->second;
        std::uniform_int_distribution<std::int64_t> pick_delay(
            delay.min_seconds, delay.max_seconds);
        at.seconds += pick_delay(rng);
      }
      c.trace.push_back(Event{pattern.activities[i], at, {}});
    }
    for (const auto& generator : spec.attribute_generators) {
      if (!generator.category_weights.empty()) {
        std::vector<double> weights;
        for (const auto& entry : generator.category_weights)
          weights.push_back(entry.second);
        std::discrete_distribution<std::size_t> pick(weights.begin(),
                                                     weights.end());
        c.attributes[generator.name] =
            generator.category_weights[pick(rng)].first;
      } else {
        std::uniform_real_distribution<double> pick(
            generator.numeric_range->first, generator.numeric_range->second);
        double value = pick(rng);
        if (generator.integral) value = std::round(value);
        c.attributes[generator.name] = value;
      }
    }
    cases.push_back(std::move(c));
  }
  return EventLog(std::move(cases), std::move(schema));
}

namespace {

DelayRange read_delay(const nlohmann::json& object) {
  if (!object.is_object() || !object.contains("min") || !object.contains("max"))
    throw ConfigError("delay needs min and max");
  return DelayRange{static_cast<std::int64_t>(std::llround(parse_quantity(object.at("min")))),
                    static_cast<std::int64_t>(std::llround(parse_quantity(object.at("max"))))};
}

Instant read_instant(const nlohmann::json& value) {
  if (!value.is_string()) throw ConfigError("instants must be ISO-8601 strings");
  auto instant = parse_iso8601(value.get<std::string>());
  if (!instant)
    throw ConfigError("'" + value.get<std::string>() + "' is not an ISO-8601 instant");
  return *instant;
}

}  // namespace

SyntheticLogSpec synthetic_spec_from_json(const nlohmann::json& document) {
  try {
    static const std::set<std::string> kKeys{
        "patterns",   "default_delay", "arc_delays", "attributes",
        "case_count", "start_window",  "seed"};
    if (!document.is_object()) throw ConfigError("synthetic spec must be an object");
    for (const auto& [key, value] : document.items())
      if (!kKeys.contains(key)) throw ConfigError("unknown key '" + key + "'");
    SyntheticLogSpec spec;
    for (const auto& pattern : document.at("patterns")) {
      spec.trace_patterns.push_back(
          {pattern.at("activities").get<std::vector<std::string>>(),
           pattern.value("weight", 1.0)});
    }
    if (document.contains("default_delay"))
      spec.default_delay = read_delay(document.at("default_delay"));
    if (document.contains("arc_delays")) {
      for (const auto& arc : document.at("arc_delays"))
        spec.arc_delays[{arc.at("source").get<std::string>(),
                         arc.at("target").get<std::string>()}] = read_delay(arc);
    }
    if (document.contains("attributes")) {
      for (const auto& attribute : document.at("attributes")) {
        AttributeGenerator generator;
        generator.name = attribute.at("name").get<std::string>();
        if (attribute.contains("categories")) {
          for (const auto& entry : attribute.at("categories"))
            generator.category_weights.emplace_back(entry.at(0).get<std::string>(),
                                                    entry.at(1).get<double>());
        }
        if (attribute.contains("range")) {
          const auto& range = attribute.at("range");
          generator.numeric_range = std::make_pair(range.at(0).get<double>(),
                                                   range.at(1).get<double>());
        }
        generator.integral = attribute.value("integral", false);
        spec.attribute_generators.push_back(std::move(generator));
      }
    }
    spec.case_count = document.value("case_count", std::int64_t{1});
    if (document.contains("start_window")) {
      const auto& window = document.at("start_window");
      spec.start_window_begin = read_instant(window.at(0));
      spec.start_window_end = read_instant(window.at(1));
    }
    spec.rng_seed = document.value("seed", std::uint64_t{0});
    check_spec(spec);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synthetic spec: ") + e.what());
  }
}

}  // namespace protoform
