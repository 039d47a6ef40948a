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

#include "protoform/summarizer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <thread>

#include "protoform/error.hpp"

namespace protoform {

namespace {

struct PropertyChoice {
  const LinguisticVariable* variable;
  AttributeProperty property;
};

std::vector<PropertyChoice> property_choices(const KnowledgeBase& kb,
                                             bool qualifiers) {
  std::vector<PropertyChoice> out;
  for (const auto& variable : kb.variables)
    if (qualifiers ? variable.qualifies() : variable.summarizes())
      for (const auto& value : variable.values)
      out.push_back({&variable, {variable.attribute, value, variable.name}});
  return out;
}

std::vector<RelationProperty> relation_choices(const KnowledgeBase& kb,
                                               const CausalGraph& graph) {
  std::set<ActivityPair> pairs;
  for (const auto& [arc, info] : graph.arcs()) {
    pairs.insert(arc);
    pairs.insert({arc.second, arc.first});
  }
  std::vector<RelationProperty> out;
  for (const auto& [source, target] : pairs)
    for (const auto& variable : kb.relation_vocab)
      for (const auto& value : variable.values)
        out.push_back({source, target, value, variable.name,
                       kb.relation_aggregation});
  return out;
}

}  // namespace

void enumerate_candidates(const KnowledgeBase& kb, const CausalGraph& graph,
                          std::span<const Family> families,
                          const std::function<void(ProtoformInstance&&)>& sink) {
  const auto summaries = property_choices(kb, false);
  const auto qualifiers = property_choices(kb, true);
  const auto relations = relation_choices(kb, graph);
  auto wanted = [&](Family family) {
    return std::find(families.begin(), families.end(), family) != families.end();
  };
  auto emit = [&](Family family, auto&& fill) {
    ProtoformInstance p;
    p.family = family;
    fill(p);
    sink(std::move(p));
  };

  for (const Family family : kAllFamilies) {
    if (!wanted(family)) continue;
    switch (family) {
      case Family::kType1:
        for (const auto& q : kb.quantifiers)
          for (const auto& s : summaries)
            emit(family, [&](ProtoformInstance& p) {
              p.quantifier = q;
              p.summarizer = s.property;
            });
        break;
      case Family::kType2:
        for (const auto& q : kb.quantifiers)
          for (const auto& c : qualifiers)
            for (const auto& s : summaries) {
              if (s.property.attribute == c.property.attribute) continue;
              emit(family, [&](ProtoformInstance& p) {
                p.quantifier = q;
                p.qualifier = c.property;
                p.summarizer = s.property;
              });
            }
        break;
      case Family::kTemporalAttr:
        for (const auto& t : kb.intervals)
          for (const auto& q : kb.quantifiers)
            for (const auto& s : summaries)
              emit(family, [&](ProtoformInstance& p) {
                p.interval = t;
                p.quantifier = q;
                p.summarizer = s.property;
              });
        break;
      case Family::kTemporalAttrQualified:
        for (const auto& t : kb.intervals)
          for (const auto& q : kb.quantifiers)
            for (const auto& c : qualifiers)
              for (const auto& s : summaries) {
                if (s.property.attribute == c.property.attribute) continue;
                emit(family, [&](ProtoformInstance& p) {
                  p.interval = t;
                  p.quantifier = q;
                  p.qualifier = c.property;
                  p.summarizer = s.property;
                });
              }
        break;
      case Family::kRelation:
        for (const auto& t : kb.intervals)
          for (const auto& q : kb.quantifiers)
            for (const auto& r : relations)
              emit(family, [&](ProtoformInstance& p) {
                p.interval = t;
                p.quantifier = q;
                p.relation = r;
              });
        break;
      case Family::kRelationQualified:
        for (const auto& t : kb.intervals)
          for (const auto& q : kb.quantifiers)
            for (const auto& c : qualifiers)
              for (const auto& r : relations)
                emit(family, [&](ProtoformInstance& p) {
                  p.interval = t;
                  p.quantifier = q;
                  p.qualifier = c.property;
                  p.relation = r;
                });
        break;
      case Family::kDeviance:
        for (const auto& t : kb.intervals)
          for (const auto& q1 : kb.quantifiers)
            for (const auto& q2 : kb.quantifiers)
              for (const auto& c : qualifiers)
                for (const auto& variable : kb.variables) {
                  if (!variable.summarizes() ||
                      variable.attribute == c.property.attribute)
                    continue;
                  for (const auto& v1 : variable.values)
                    for (const auto& v2 : variable.values) {
                      if (v1.name() == v2.name()) continue;
                      emit(family, [&](ProtoformInstance& p) {
                        p.interval = t;
                        p.quantifier = q1;
                        p.quantifier2 = q2;
                        p.qualifier = c.property;
                        p.summarizer = AttributeProperty{variable.attribute, v1,
                                                         variable.name};
                        p.summarizer2 = AttributeProperty{variable.attribute, v2,
                                                          variable.name};
                      });
                    }
                }
        break;
      case Family::kExpectationDeviance:
        for (const auto& t : kb.intervals)
          for (const auto& q2 : kb.quantifiers)
            for (const auto& c : qualifiers)
              for (const auto& expected : kb.expected_values) {
                if (expected.attribute == c.property.attribute) continue;
                for (const auto& variable : kb.variables) {
                  if (!variable.summarizes() ||
                      variable.attribute != expected.attribute)
                    continue;
                  for (const auto& v2 : variable.values) {
                    if (v2.name() == expected.value.name()) continue;
                    emit(family, [&](ProtoformInstance& p) {
                      p.interval = t;
                      p.quantifier2 = q2;
                      p.qualifier = c.property;
                      p.expected = expected;
                      p.summarizer2 = AttributeProperty{variable.attribute, v2,
                                                        variable.name};
                    });
                  }
                }
              }
        break;
    }
  }
}

std::vector<ProtoformInstance> enumerate_candidates(
    const KnowledgeBase& kb, const CausalGraph& graph,
    std::span<const Family> families) {
  std::vector<ProtoformInstance> out;
  enumerate_candidates(kb, graph, families,
                       [&](ProtoformInstance&& p) { out.push_back(std::move(p)); });
  return out;
}

TestResult two_proportion_z_test(double x1, double n1, double x2, double n2) {
  if (!(n1 > 0) || !(n2 > 0)) return {};
  const double p1 = x1 / n1;
  const double p2 = x2 / n2;
  if (p1 == p2) return {};
  const double se = std::sqrt(p1 * (1 - p1) / n1 + p2 * (1 - p2) / n2);
  if (se == 0.0) return {p1 > p2 ? kUnbounded : -kUnbounded, 0.0};
  const double z = (p1 - p2) / se;
  return {z, std::erfc(std::fabs(z) / std::sqrt(2.0))};
}

bool deviance_relevance(const SubStatementStats& general,
                        const SubStatementStats& contrast, double alpha) {
  if (contrast.relevant_mass < kMinSubgroupSupport) return false;
  if (contrast.modal_value == general.summarizer_value) return false;
  const auto test = two_proportion_z_test(
      std::round(general.satisfying_mass), std::round(general.relevant_mass),
      std::round(contrast.satisfying_mass), std::round(contrast.relevant_mass));
  return test.p_value < alpha;
}

FilterResult evaluate_and_filter(std::span<const ProtoformInstance> candidates,
                                 const Evaluator& evaluator,
                                 const KnowledgeBase& kb,
                                 const EvaluateOptions& options) {
  struct Slot {
    std::optional<InstanceEvaluation> evaluation;
    bool keep = false;
    bool relevant = true;
    std::string error;
  };
  std::vector<Slot> slots(candidates.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < candidates.size(); i = next++) {
      auto& slot = slots[i];
      try {
        const auto& candidate = candidates[i];
        auto evaluation = evaluator.evaluate(candidate);
        if (is_deviance(candidate.family) && !evaluation.vacuous &&
            evaluation.general && evaluation.contrast)
          slot.relevant = deviance_relevance(*evaluation.general,
                                             *evaluation.contrast,
                                             kb.limits.relevance_alpha);
        slot.keep = !evaluation.vacuous &&
                    evaluation.truth.value() >= kb.limits.min_truth &&
                    (!is_deviance(candidate.family) || slot.relevant);
        slot.evaluation = std::move(evaluation);
      } catch (const Error& e) {
        slot.error = e.what();
      }
    }
  };
  unsigned threads = options.threads != 0
                         ? options.threads
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, candidates.size() / 256)));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  FilterResult result;
  result.evaluated = candidates.size();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    auto& slot = slots[i];
    if (!slot.error.empty()) {
      result.errors.push_back({i, std::move(slot.error)});
      continue;
    }
    if (slot.keep)
      result.kept.push_back({candidates[i], std::move(*slot.evaluation), slot.relevant});
  }
  return result;
}

namespace {

std::string property_phrase(const AttributeProperty& property,
                            const KnowledgeBase& kb, bool repeated) {
  const LinguisticVariable* variable = kb.find_variable(property.variable);
  std::string pattern;
  if (variable) {
    pattern = repeated && !variable->repeat_phrase.empty() ? variable->repeat_phrase
                                                           : variable->phrase;
  }
  if (pattern.empty())
    pattern = "{value} " + (variable ? variable->name : property.attribute);
  return fill_template(pattern, {{"value", property.value.name()}});
}

std::string activity_phrase(const std::string& activity, const KnowledgeBase& kb,
                            bool subject) {
  auto it = kb.activity_phrases.find(activity);
  if (it == kb.activity_phrases.end()) return activity;
  const std::string& phrase = subject ? it->second.subject : it->second.object;
  return phrase.empty() ? activity : phrase;
}

}  // namespace

std::string fill_template(const std::string& pattern,
                          const std::map<std::string, std::string>& slots) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size();) {
    const char ch = pattern[i];
    if ((ch == '{' || ch == '}') && i + 1 < pattern.size() && pattern[i + 1] == ch) {
      out += ch;
      i += 2;
      continue;
    }
    if (ch != '{') {
      out += ch;
      ++i;
      continue;
    }
    const auto close = pattern.find('}', i);
    if (close == std::string::npos)
      throw ConfigError("unterminated slot in template '" + pattern + "'");
    const std::string slot = pattern.substr(i + 1, close - i - 1);
    auto it = slots.find(slot);
    if (it == slots.end())
      throw ConfigError("template slot '" + slot + "' is not bound");
    out += it->second;
    i = close + 1;
  }
  return out;
}

std::map<std::string, std::string> bind_slots(const ProtoformInstance& p,
                                              const KnowledgeBase& kb) {
  std::map<std::string, std::string> slots;
  if (p.interval) slots["interval"] = p.interval->name;
  if (p.quantifier) slots["quantifier"] = p.quantifier->name();
  if (p.quantifier2) slots["quantifier2"] = p.quantifier2->name();
  if (p.qualifier) slots["qualifier"] = property_phrase(*p.qualifier, kb, false);
  if (p.summarizer) slots["summarizer"] = property_phrase(*p.summarizer, kb, false);
  if (p.summarizer2) slots["summarizer2"] = property_phrase(*p.summarizer2, kb, true);
  if (p.relation) {
    slots["source"] = activity_phrase(p.relation->source_activity, kb, false);
    slots["target"] = activity_phrase(p.relation->target_activity, kb, true);
    slots["relation"] = p.relation->value.name();
  }
  if (p.expected) {
    slots["expected"] = p.expected->description;
    slots["attribute"] = p.expected->subject.empty()
                             ? "the " + p.expected->attribute
                             : p.expected->subject;
  }
  return slots;
}

Realization realize(const ProtoformInstance& instance, const KnowledgeBase& kb) {
  Realization out;
  out.bindings = bind_slots(instance, kb);
  try {
    out.sentence = fill_template(kb.template_for(instance.family), out.bindings);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(to_string(instance.family)) + " template: " +
                      e.what());
  }
  if (!out.sentence.empty() && out.sentence[0] >= 'a' && out.sentence[0] <= 'z')
    out.sentence[0] = static_cast<char>(out.sentence[0] - 'a' + 'A');
  return out;
}

bool ranks_before(const ReportEntry& lhs, const ReportEntry& rhs) {
  if (lhs.truth != rhs.truth) return lhs.truth > rhs.truth;
  if (lhs.support != rhs.support) return lhs.support > rhs.support;
  return lhs.sentence < rhs.sentence;
}

void rank_entries(std::vector<ReportEntry>& entries) {
  std::sort(entries.begin(), entries.end(), ranks_before);
}

namespace {

std::string planning_key(const ProtoformInstance& p) {
  std::string key(to_string(p.family));
  key += '\x1e';
  if (p.interval) key += p.interval->name;
  key += '\x1e';
  if (p.quantifier) key += p.quantifier->name();
  key += '\x1f';
  if (p.quantifier2) key += p.quantifier2->name();
  key += '\x1e';
  if (p.qualifier) key += p.qualifier->attribute + '\x1f' + p.qualifier->value.name();
  key += '\x1e';
  if (p.relation) {
    key += p.relation->source_activity + '\x1f' + p.relation->target_activity;
  } else if (p.summarizer) {
    key += p.summarizer->attribute;
  } else if (p.expected) {
    key += p.expected->attribute;
  }
  return key;
}

}  // namespace

SummaryReport summarize(const EventLog& log, const KnowledgeBase& kb,
                        const SummarizeOptions& options) {
  if (log.empty()) throw ConfigError("event log has no cases");
  kb.validate();
  if (kb.quantifiers.empty())
    throw ConfigError("knowledge base defines no quantifiers");
  if (kb.variables.empty() && kb.relation_vocab.empty())
    throw ConfigError("knowledge base defines no variables");

  std::vector<Family> families = options.families;
  if (families.empty()) families.assign(std::begin(kAllFamilies), std::end(kAllFamilies));

  const auto graph = discover_causal_graph(build_dfg(log), kb.discovery);
  const auto derived = derive_case_attributes(log, graph, kb.derived_specs);
  const auto candidates = enumerate_candidates(kb, graph, families);
  const Evaluator evaluator(derived, graph, kb.variables);
  auto filtered = evaluate_and_filter(candidates, evaluator, kb,
                                      EvaluateOptions{options.threads});

  std::map<std::string, ReportEntry> best;
  for (const auto& kept : filtered.kept) {
    auto realization = realize(kept.instance, kb);
    ReportEntry entry{std::move(realization.sentence),
                      kept.instance.family,
                      kept.evaluation.truth.value(),
                      kept.evaluation.support,
                      kept.evaluation.vacuous,
                      kept.relevant,
                      std::move(realization.bindings)};
    const auto key = planning_key(kept.instance);
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(key, std::move(entry));
    } else if (ranks_before(entry, it->second)) {
      it->second = std::move(entry);
    }
  }

  SummaryReport report;
  report.candidate_count = candidates.size();
  report.errors = std::move(filtered.errors);
  for (auto& [key, entry] : best) report.entries.push_back(std::move(entry));
  rank_entries(report.entries);
  if (report.entries.size() > static_cast<std::size_t>(kb.limits.top_k))
    report.entries.resize(static_cast<std::size_t>(kb.limits.top_k));
  report.log_digest = log_digest(log);
  if (!options.reproducible) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    report.generated_at =
        Instant{std::chrono::duration_cast<std::chrono::seconds>(now).count()};
  }
  return report;
}

nlohmann::json to_json(const SummaryReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& entry : report.entries) {
    entries.push_back({{"sentence", entry.sentence},
                       {"family", std::string(to_string(entry.family))},
                       {"truth", entry.truth},
                       {"support", entry.support},
                       {"vacuous", entry.vacuous},
                       {"relevant", entry.relevant},
                       {"bindings", entry.bindings}});
  }
  return {{"generated_at", format_iso8601(report.generated_at)},
          {"log_digest", report.log_digest},
          {"entries", std::move(entries)}};
}

std::string to_text(const SummaryReport& report) {
  std::string out;
  for (const auto& entry : report.entries) {
    char prefix[32];
    std::snprintf(prefix, sizeof(prefix), "[truth=%.2f] ", entry.truth);
    out += prefix + entry.sentence + "\n";
  }
  return out;
}

}  // namespace protoform
