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

// Random logs and knowledge bases for property and oracle tests.

#ifndef PROTOFORM_TESTS_FIXTURES_HPP_
#define PROTOFORM_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "protoform/event_log.hpp"
#include "protoform/fuzzy.hpp"
#include "protoform/knowledge_base.hpp"
#include "protoform/time.hpp"

namespace fixtures {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Sorted four-tuple from [lo, hi]; with probability 1/4 each edge collapses.
inline std::array<double, 4> random_corners(Rng& rng, double lo, double hi,
                                            bool allow_degenerate = true) {
  std::array<double, 4> v{};
  for (auto& x : v) x = uniform_real(rng, lo, hi);
  std::sort(v.begin(), v.end());
  if (allow_degenerate && uniform(rng, 0, 3) == 0) v[1] = v[0];
  if (allow_degenerate && uniform(rng, 0, 3) == 0) v[2] = v[3];
  return v;
}

inline protoform::Quantifier random_quantifier(Rng& rng, const std::string& name) {
  auto v = random_corners(rng, 0.0, 1.0);
  switch (uniform(rng, 0, 3)) {
    case 0:  // non-decreasing
      v[2] = v[3] = 1.0;
      break;
    case 1:  // non-increasing
      v[0] = v[1] = 0.0;
      break;
    default:
      break;
  }
  return protoform::Quantifier(name, {v[0], v[1], v[2], v[3]});
}

struct LogOptions {
  int max_cases = 50;
  int max_activities = 6;
  int max_trace = 8;
  // Integral seconds between events, drawn from [0, max_gap].
  int max_gap = 7200;
};

inline std::vector<std::string> activity_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('A' + i)));
  return names;
}

inline protoform::EventLog random_log(Rng& rng, const LogOptions& options = {}) {
  using namespace protoform;
  const int n_cases = uniform(rng, 1, options.max_cases);
  const auto activities = activity_names(uniform(rng, 1, options.max_activities));
  const std::array<std::string, 3> colors{"red", "green", "blue"};
  std::vector<Case> cases;
  const auto t0 = make_instant(2019, 1, 1).seconds;
  for (int i = 0; i < n_cases; ++i) {
    Case c;
    c.id = "c" + std::to_string(i);
    std::int64_t t = t0 + std::int64_t(uniform(rng, 0, 3 * 365)) * 86400 +
                     uniform(rng, 0, 86399);
    const int length = uniform(rng, 1, options.max_trace);
    for (int k = 0; k < length; ++k) {
      const auto& a = activities[std::size_t(uniform(rng, 0, int(activities.size()) - 1))];
      c.trace.push_back(Event{a, Instant{t}, {}});
      t += uniform(rng, 0, options.max_gap);
    }
    if (uniform(rng, 0, 9) != 0)
      c.attributes["color"] = colors[std::size_t(uniform(rng, 0, 2))];
    if (uniform(rng, 0, 9) != 0) c.attributes["age"] = double(uniform(rng, 0, 100));
    c.attributes["admitted"] = Instant{t0 + std::int64_t(uniform(rng, 0, 1000)) * 86400};
    cases.push_back(std::move(c));
  }
  AttributeSchema schema{
      {"color", {AttributeKind::kCategory, AttributeScope::kCase, false}},
      {"age", {AttributeKind::kNumeric, AttributeScope::kCase, false}},
      {"admitted", {AttributeKind::kInstant, AttributeScope::kCase, false}},
  };
  return EventLog(std::move(cases), std::move(schema));
}

inline protoform::LinguisticValue trapezoid_value(Rng& rng, const std::string& name,
                                                  double lo, double hi) {
  const auto v = random_corners(rng, lo, hi);
  return protoform::LinguisticValue(name, protoform::TrapezoidalMembership(v[0], v[1], v[2], v[3]));
}

inline protoform::KnowledgeBase random_kb(Rng& rng, const protoform::EventLog& log,
                                          bool crisp_only = false) {
  using namespace protoform;
  KnowledgeBase kb;
  const int n_quantifiers = uniform(rng, 1, 3);
  for (int i = 0; i < n_quantifiers; ++i)
    kb.quantifiers.push_back(random_quantifier(rng, "q" + std::to_string(i)));

  LinguisticVariable color{"color", "color", {}, {}, {}};
  color.values.emplace_back("red", CrispCategory{"red"});
  color.values.emplace_back("green", CrispCategory{"green"});
  color.values.emplace_back("blue", CrispCategory{"blue"});
  kb.variables.push_back(color);

  LinguisticVariable age{"age", "age", {}, {}, {}};
  if (crisp_only) {
    age.values.emplace_back("young", CrispInterval{0, 40});
    age.values.emplace_back("old", CrispInterval{40, 101});
  } else {
    age.values.push_back(trapezoid_value(rng, "young", 0, 60));
    age.values.push_back(trapezoid_value(rng, "old", 30, 100));
  }
  kb.variables.push_back(age);

  LinguisticVariable admitted{"admission", "admitted", {}, {}, {}};
  const double mid = double(make_instant(2020, 1, 1).seconds);
  admitted.values.emplace_back("early", CrispInterval{0, mid});
  admitted.values.emplace_back("late", CrispInterval{mid, 4e9});
  kb.variables.push_back(admitted);

  const auto& alphabet = log.activity_alphabet();
  std::vector<std::string> activities(alphabet.begin(), alphabet.end());
  auto pick = [&] { return activities[std::size_t(uniform(rng, 0, int(activities.size()) - 1))]; };
  DerivedAttributeSpec wait;
  wait.name = "wait";
  wait.kind = DerivedAttributeSpec::Kind::kWaitingTime;
  wait.source_activity = pick();
  wait.target_activity = pick();
  wait.aggregation = Aggregation(uniform(rng, 0, 2));
  kb.derived_specs.push_back(wait);
  DerivedAttributeSpec occurred;
  occurred.name = "occurred";
  occurred.kind = DerivedAttributeSpec::Kind::kActivityOccurred;
  occurred.activity = pick();
  kb.derived_specs.push_back(occurred);

  LinguisticVariable wait_var{"wait", "wait", {}, {}, {}};
  if (crisp_only) {
    wait_var.values.emplace_back("short", CrispInterval{-1e9, 3600});
    wait_var.values.emplace_back("long", CrispInterval{3600, 1e9});
  } else {
    wait_var.values.push_back(trapezoid_value(rng, "short", -3600, 7200));
    wait_var.values.push_back(trapezoid_value(rng, "long", 3600, 20000));
  }
  kb.variables.push_back(wait_var);
  LinguisticVariable occurred_var{"occurred", "occurred", {}, {}, {}};
  occurred_var.values.emplace_back("yes", CrispCategory{"yes"});
  kb.variables.push_back(occurred_var);

  LinguisticVariable after{"after", "", {}, {}, {}};
  if (crisp_only) {
    after.values.emplace_back("soon after",
                              TrapezoidalMembership(0, 0, 1800, 1800));
    after.values.emplace_back("before",
                              TrapezoidalMembership(-kUnbounded, -kUnbounded, -1, -1));
  } else {
    after.values.push_back(trapezoid_value(rng, "soon after", 0, 3600));
    after.values.push_back(trapezoid_value(rng, "late after", 1800, 20000));
    after.values.push_back(trapezoid_value(rng, "before", -7200, 0));
  }
  kb.relation_vocab.push_back(after);

  for (int year = 2019; year <= 2021; ++year)
    kb.intervals.emplace_back("year " + std::to_string(year),
                              make_instant(year, 1, 1), make_instant(year + 1, 1, 1));
  kb.expected_values.push_back(ExpectedValue{
      "age", "around 50", LinguisticValue("middle-aged", TrapezoidalMembership(30, 45, 55, 70)), ""});
  kb.expected_values.push_back(
      ExpectedValue{"color", "red", LinguisticValue("red", CrispCategory{"red"}), ""});
  kb.relation_aggregation = Aggregation(uniform(rng, 0, 2));
  kb.discovery = {uniform_real(rng, 0.0, 0.9), uniform(rng, 1, 3)};
  kb.limits.min_truth = 0.0;
  kb.limits.top_k = 1000;
  return kb;
}

}  // namespace fixtures

#endif  // PROTOFORM_TESTS_FIXTURES_HPP_
