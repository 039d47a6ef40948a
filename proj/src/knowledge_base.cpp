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

#include "protoform/knowledge_base.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "protoform/error.hpp"
#include "protoform/text.hpp"

namespace protoform {

using nlohmann::json;

const std::map<Family, std::string>& default_templates() {
  static const std::map<Family, std::string> templates{
      {Family::kType1, "{quantifier} patients had {summarizer}"},
      {Family::kType2, "{quantifier} patients with {qualifier} had {summarizer}"},
      {Family::kTemporalAttr, "In {interval}, {quantifier} patients had {summarizer}"},
      {Family::kTemporalAttrQualified,
       "In {interval}, {quantifier} patients with {qualifier} had {summarizer}"},
      {Family::kRelation,
       "In {interval}, in {quantifier} cases, {target} takes place {relation} "
       "{source}"},
      {Family::kRelationQualified,
       "In {interval}, in {quantifier} cases where patients had {qualifier}, "
       "{target} takes place {relation} {source}"},
      {Family::kDeviance,
       "In {interval}, {quantifier} patients had {summarizer}. However, "
       "{quantifier2} patients with {qualifier} had {summarizer2}"},
      {Family::kExpectationDeviance,
       "In {interval}, {attribute} is expected to be {expected}. However, "
       "{quantifier2} patients with {qualifier} had {summarizer2}"},
  };
  return templates;
}

const std::string& KnowledgeBase::template_for(Family family) const {
  if (auto it = templates.find(family); it != templates.end()) return it->second;
  return default_templates().at(family);
}

const LinguisticVariable* KnowledgeBase::find_variable(std::string_view name) const {
  for (const auto& variable : variables)
    if (variable.name == name) return &variable;
  return nullptr;
}

void KnowledgeBase::validate() const {
  auto unique = [](const auto& items, auto name_of, const char* what) {
    std::set<std::string> seen;
    for (const auto& item : items)
      if (!seen.insert(name_of(item)).second)
        throw ConfigError(std::string("duplicate ") + what + " '" +
                          name_of(item) + "'");
  };
  unique(variables, [](const LinguisticVariable& v) { return v.name; },
         "variable");
  unique(quantifiers, [](const Quantifier& q) { return q.name(); }, "quantifier");
  unique(intervals, [](const TimeInterval& t) { return t.name; }, "interval");
  unique(derived_specs, [](const DerivedAttributeSpec& d) { return d.name; },
         "derived attribute");
  unique(relation_vocab, [](const LinguisticVariable& v) { return v.name; },
         "relation variable");
  for (const auto* list : {&variables, &relation_vocab}) {
    for (const auto& variable : *list) {
      if (variable.values.empty())
        throw ConfigError("variable '" + variable.name + "' has no values");
      unique(variable.values, [](const LinguisticValue& v) { return v.name(); },
             ("value of variable " + variable.name).c_str());
    }
  }
  if (!(limits.min_truth >= 0.0 && limits.min_truth <= 1.0))
    throw ConfigError("min_truth " + format_number(limits.min_truth) +
                      " outside [0, 1]");
  if (limits.top_k < 1) throw ConfigError("top_k must be at least 1");
  if (!(limits.relevance_alpha > 0.0 && limits.relevance_alpha < 1.0))
    throw ConfigError("relevance_alpha " +
                      format_number(limits.relevance_alpha) + " outside (0, 1)");
  if (!(discovery.dependency_min >= 0.0 && discovery.dependency_min < 1.0))
    throw ConfigError("dependency_min " +
                      format_number(discovery.dependency_min) +
                      " outside [0, 1)");
  if (discovery.frequency_min < 1)
    throw ConfigError("frequency_min must be at least 1");
}

double parse_quantity(const json& value) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string())
    throw ConfigError("expected a number or a duration string, got " +
                      value.dump());
  const std::string text(trim(value.get<std::string>()));
  if (text == "inf" || text == "+inf") return kUnbounded;
  if (text == "-inf") return -kUnbounded;
  if (auto number = parse_number(text)) return *number;
  if (auto instant = parse_iso8601(text))
    return static_cast<double>(instant->seconds);
  if (text.size() > 1) {
    double scale = 0;
    switch (text.back()) {
      case 's':
        scale = 1;
        break;
      case 'm':
        scale = 60;
        break;
      case 'h':
        scale = 3600;
        break;
      case 'd':
        scale = 86400;
        break;
      default:
        break;
    }
    if (scale > 0) {
      if (auto number = parse_number(std::string_view(text).substr(0, text.size() - 1)))
        return *number * scale;
    }
  }
  throw ConfigError("cannot read quantity '" + text + "'");
}

namespace {

// Adds the JSON path of the failing entry to ConfigErrors raised inside.
template <typename F>
auto at_path(const std::string& path, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void allow_keys(const json& object, std::initializer_list<std::string_view> keys) {
  if (!object.is_object()) throw ConfigError("expected an object");
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (const auto allowed : keys) known = known || key == allowed;
    if (!known) throw ConfigError("unknown key '" + key + "'");
  }
}

std::string required_string(const json& object, const char* key) {
  if (!object.contains(key) || !object.at(key).is_string())
    throw ConfigError(std::string("missing string '") + key + "'");
  return object.at(key).get<std::string>();
}

std::string optional_string(const json& object, const char* key) {
  if (!object.contains(key)) return {};
  if (!object.at(key).is_string())
    throw ConfigError(std::string("'") + key + "' must be a string");
  return object.at(key).get<std::string>();
}

Instant required_instant(const json& object, const char* key) {
  const auto text = required_string(object, key);
  auto instant = parse_iso8601(trim(text));
  if (!instant) throw ConfigError("'" + text + "' is not an ISO-8601 instant");
  return *instant;
}

TrapezoidalMembership read_trapezoid(const json& value) {
  if (!value.is_array() || value.size() != 4)
    throw ConfigError("trapezoid must be a 4-element array [a, b, c, d]");
  return TrapezoidalMembership(parse_quantity(value[0]), parse_quantity(value[1]),
                               parse_quantity(value[2]), parse_quantity(value[3]));
}

LinguisticValue read_value(const json& object) {
  allow_keys(object, {"name", "trapezoid", "category", "interval"});
  const std::string name = required_string(object, "name");
  const int shapes = static_cast<int>(object.contains("trapezoid")) +
                     static_cast<int>(object.contains("category")) +
                     static_cast<int>(object.contains("interval"));
  if (shapes != 1)
    throw ConfigError("value '" + name +
                      "' needs exactly one of trapezoid, category, interval");
  if (object.contains("trapezoid"))
    return LinguisticValue(name, read_trapezoid(object.at("trapezoid")));
  if (object.contains("category")) {
    const auto& category = object.at("category");
    if (category.is_boolean() && category.get<bool>())
      return LinguisticValue(name, CrispCategory{name});
    if (!category.is_string())
      throw ConfigError("category of '" + name + "' must be a string");
    return LinguisticValue(name, CrispCategory{category.get<std::string>()});
  }
  const auto& interval = object.at("interval");
  if (!interval.is_array() || interval.size() != 2)
    throw ConfigError("interval of '" + name + "' must be [start, end]");
  return LinguisticValue(name, CrispInterval{parse_quantity(interval[0]),
                                             parse_quantity(interval[1])});
}

LinguisticVariable read_variable(const json& object) {
  allow_keys(object,
             {"name", "attribute", "values", "phrase", "repeat_phrase", "role"});
  LinguisticVariable variable;
  variable.name = required_string(object, "name");
  variable.attribute = optional_string(object, "attribute");
  if (variable.attribute.empty()) variable.attribute = variable.name;
  variable.phrase = optional_string(object, "phrase");
  variable.repeat_phrase = optional_string(object, "repeat_phrase");
  if (const auto role = optional_string(object, "role"); !role.empty()) {
    using Role = LinguisticVariable::Role;
    if (role == "both") {
      variable.role = Role::kBoth;
    } else if (role == "qualifier") {
      variable.role = Role::kQualifier;
    } else if (role == "summarizer") {
      variable.role = Role::kSummarizer;
    } else {
      throw ConfigError("role must be both, qualifier or summarizer");
    }
  }
  if (!object.contains("values") || !object.at("values").is_array())
    throw ConfigError("variable '" + variable.name + "' needs a values array");
  std::size_t i = 0;
  for (const auto& value : object.at("values")) {
    variable.values.push_back(at_path(
        "values[" + std::to_string(i++) + "]",
        [&] { return read_value(value); }));
  }
  return variable;
}

Quantifier read_quantifier(const json& object) {
  allow_keys(object, {"name", "trapezoid", "monotone"});
  std::optional<Monotonicity> declared;
  if (object.contains("monotone")) {
    declared = monotonicity_from_string(required_string(object, "monotone"));
    if (!declared)
      throw ConfigError("monotone must be non-decreasing, non-increasing or "
                        "unimodal");
  }
  if (!object.contains("trapezoid")) throw ConfigError("missing 'trapezoid'");
  return Quantifier(required_string(object, "name"),
                    read_trapezoid(object.at("trapezoid")), declared);
}

DerivedAttributeSpec read_derived(const json& object) {
  allow_keys(object,
             {"name", "kind", "source", "target", "activity", "aggregation"});
  DerivedAttributeSpec spec;
  spec.name = required_string(object, "name");
  const auto kind = required_string(object, "kind");
  auto parsed = derived_kind_from_string(kind);
  if (!parsed) throw ConfigError("unknown derived attribute kind '" + kind + "'");
  spec.kind = *parsed;
  using Kind = DerivedAttributeSpec::Kind;
  if (spec.kind == Kind::kWaitingTime || spec.kind == Kind::kTriggerCount) {
    spec.source_activity = required_string(object, "source");
    spec.target_activity = required_string(object, "target");
  }
  if (spec.kind == Kind::kActivityOccurred)
    spec.activity = required_string(object, "activity");
  if (object.contains("aggregation")) {
    const auto name = required_string(object, "aggregation");
    auto aggregation = aggregation_from_string(name);
    if (!aggregation) throw ConfigError("unknown aggregation '" + name + "'");
    spec.aggregation = *aggregation;
  }
  return spec;
}

template <typename T, typename F>
std::vector<T> read_list(const json& document, const char* key, F read) {
  std::vector<T> out;
  if (!document.contains(key)) return out;
  const auto& list = document.at(key);
  if (!list.is_array()) throw ConfigError(std::string("'") + key + "' must be an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = std::string(key) + "[" + std::to_string(i) + "]";
    out.push_back(at_path(path, [&] { return read(list[i], path); }));
  }
  return out;
}

}  // namespace

KnowledgeBase knowledge_base_from_json(const json& document) {
  allow_keys(document,
             {"variables", "quantifiers", "intervals", "derived_attributes",
              "expected_values", "relation_vocab", "templates", "limits",
              "discovery", "activity_phrases", "relation_aggregation"});
  KnowledgeBase kb;
  kb.variables = read_list<LinguisticVariable>(
      document, "variables",
      [](const json& v, const std::string&) { return read_variable(v); });
  kb.quantifiers = read_list<Quantifier>(
      document, "quantifiers",
      [](const json& v, const std::string&) { return read_quantifier(v); });
  kb.intervals = read_list<TimeInterval>(
      document, "intervals", [](const json& v, const std::string&) {
        allow_keys(v, {"name", "start", "end"});
        return TimeInterval(required_string(v, "name"),
                            required_instant(v, "start"),
                            required_instant(v, "end"));
      });
  kb.derived_specs = read_list<DerivedAttributeSpec>(
      document, "derived_attributes",
      [](const json& v, const std::string&) { return read_derived(v); });
  kb.expected_values = read_list<ExpectedValue>(
      document, "expected_values", [](const json& v, const std::string&) {
        allow_keys(v, {"attribute", "description", "value", "subject"});
        if (!v.contains("value")) throw ConfigError("missing 'value'");
        return ExpectedValue{required_string(v, "attribute"),
                             required_string(v, "description"),
                             read_value(v.at("value")),
                             optional_string(v, "subject")};
      });
  kb.relation_vocab = read_list<LinguisticVariable>(
      document, "relation_vocab",
      [](const json& v, const std::string&) { return read_variable(v); });

  if (document.contains("templates")) {
    at_path("templates", [&] {
      const auto& templates = document.at("templates");
      if (!templates.is_object()) throw ConfigError("expected an object");
      for (const auto& [key, value] : templates.items()) {
        auto family = family_from_string(key);
        if (!family) throw ConfigError("unknown family '" + key + "'");
        if (!value.is_string()) throw ConfigError("template must be a string");
        kb.templates[*family] = value.get<std::string>();
      }
    });
  }
  if (document.contains("limits")) {
    at_path("limits", [&] {
      const auto& limits = document.at("limits");
      allow_keys(limits, {"min_truth", "top_k", "relevance_alpha"});
      if (limits.contains("min_truth"))
        kb.limits.min_truth = limits.at("min_truth").get<double>();
      if (limits.contains("top_k"))
        kb.limits.top_k = limits.at("top_k").get<std::int64_t>();
      if (limits.contains("relevance_alpha"))
        kb.limits.relevance_alpha = limits.at("relevance_alpha").get<double>();
    });
  }
  if (document.contains("discovery")) {
    at_path("discovery", [&] {
      const auto& discovery = document.at("discovery");
      allow_keys(discovery, {"dependency_min", "frequency_min"});
      if (discovery.contains("dependency_min"))
        kb.discovery.dependency_min = discovery.at("dependency_min").get<double>();
      if (discovery.contains("frequency_min"))
        kb.discovery.frequency_min =
            discovery.at("frequency_min").get<std::int64_t>();
    });
  }
  if (document.contains("activity_phrases")) {
    at_path("activity_phrases", [&] {
      const auto& phrases = document.at("activity_phrases");
      if (!phrases.is_object()) throw ConfigError("expected an object");
      for (const auto& [activity, value] : phrases.items()) {
        allow_keys(value, {"subject", "object"});
        kb.activity_phrases[activity] = ActivityPhrase{
            optional_string(value, "subject"), optional_string(value, "object")};
      }
    });
  }
  if (document.contains("relation_aggregation")) {
    at_path("relation_aggregation", [&] {
      const auto name = document.at("relation_aggregation").get<std::string>();
      auto aggregation = aggregation_from_string(name);
      if (!aggregation) throw ConfigError("unknown aggregation '" + name + "'");
      kb.relation_aggregation = *aggregation;
    });
  }
  kb.validate();
  return kb;
}

KnowledgeBase load_knowledge_base(std::string_view json_text) {
  json document;
  try {
    document = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("knowledge base is not valid JSON: ") + e.what());
  }
  return knowledge_base_from_json(document);
}

KnowledgeBase load_knowledge_base_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open knowledge base '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return load_knowledge_base(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace protoform
