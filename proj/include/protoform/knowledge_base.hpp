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

#ifndef PROTOFORM_KNOWLEDGE_BASE_HPP_
#define PROTOFORM_KNOWLEDGE_BASE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "protoform/fuzzy.hpp"
#include "protoform/process_mining.hpp"
#include "protoform/protoform.hpp"

namespace protoform {

struct Limits {
  double min_truth = 0.7;
  std::int64_t top_k = 20;
  double relevance_alpha = 0.05;
};

// How an activity is named as the subject ("patient evaluation") and as the
// object ("its inclusion") of a relation sentence.
struct ActivityPhrase {
  std::string subject;
  std::string object;
};

// Expert configuration: vocabularies, intervals, derived attributes and
// realization templates.
struct KnowledgeBase {
  std::vector<LinguisticVariable> variables;
  std::vector<Quantifier> quantifiers;
  std::vector<TimeInterval> intervals;
  std::vector<DerivedAttributeSpec> derived_specs;
  std::vector<ExpectedValue> expected_values;
  std::vector<LinguisticVariable> relation_vocab;
  std::map<Family, std::string> templates;
  Limits limits;
  DiscoveryThresholds discovery;
  std::map<std::string, ActivityPhrase> activity_phrases;
  Aggregation relation_aggregation = Aggregation::kFirst;

  // ConfigError on duplicate names or out-of-range limits.
  void validate() const;

  // KB template, or the built-in default.
  const std::string& template_for(Family family) const;
  const LinguisticVariable* find_variable(std::string_view name) const;
};

const std::map<Family, std::string>& default_templates();

// Durations accept plain seconds or a number with an s, m, h or d suffix;
// "inf" and "-inf" open a shoulder; ISO-8601 strings become instants.
double parse_quantity(const nlohmann::json& value);

// ConfigError naming the offending key on malformed input.
KnowledgeBase knowledge_base_from_json(const nlohmann::json& document);
KnowledgeBase load_knowledge_base(std::string_view json_text);
KnowledgeBase load_knowledge_base_file(const std::filesystem::path& path);

}  // namespace protoform

#endif  // PROTOFORM_KNOWLEDGE_BASE_HPP_
