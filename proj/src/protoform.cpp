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

#include "protoform/protoform.hpp"

#include <algorithm>
#include <array>

#include "protoform/error.hpp"
#include "protoform/text.hpp"

namespace protoform {

TimeInterval::TimeInterval(std::string name, Instant start, Instant end)
    : name(std::move(name)), start(start), end(end) {
  if (!(start < end))
    throw ConfigError("time interval '" + this->name + "' needs start < end");
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kType1:
      return "TYPE1";
    case Family::kType2:
      return "TYPE2";
    case Family::kTemporalAttr:
      return "TEMPORAL_ATTR";
    case Family::kTemporalAttrQualified:
      return "TEMPORAL_ATTR_QUALIFIED";
    case Family::kRelation:
      return "RELATION";
    case Family::kRelationQualified:
      return "RELATION_QUALIFIED";
    case Family::kDeviance:
      return "DEVIANCE";
    case Family::kExpectationDeviance:
      return "EXPECTATION_DEVIANCE";
  }
  return "TYPE1";
}

std::optional<Family> family_from_string(std::string_view name) {
  for (const auto family : kAllFamilies)
    if (to_string(family) == name) return family;
  return std::nullopt;
}

bool is_deviance(Family family) {
  return family == Family::kDeviance || family == Family::kExpectationDeviance;
}

MembershipColumn interval_column(const EventLog& log,
                                 const TimeInterval& interval) {
  MembershipColumn column;
  column.reserve(log.size());
  for (const auto& c : log.cases())
    column.push_back(!c.trace.empty() && interval.contains(c.start()) ? 1.0 : 0.0);
  return column;
}

MembershipColumn property_column(const EventLog& log,
                                 const AttributeProperty& property) {
  auto it = log.schema().find(property.attribute);
  if (it == log.schema().end())
    throw LookupError("unknown attribute '" + property.attribute + "'");
  if (it->second.scope != AttributeScope::kCase)
    throw EvaluationError("attribute '" + property.attribute +
                          "' is not a case attribute");
  MembershipColumn column;
  column.reserve(log.size());
  for (const auto& c : log.cases()) {
    const AttributeValue* value = c.find_attribute(property.attribute);
    column.push_back(value ? property.value.evaluate(*value) : 0.0);
  }
  return column;
}

MembershipColumn relation_column(const EventLog& log, const CausalGraph& graph,
                                 const RelationProperty& relation) {
  for (const auto* activity :
       {&relation.source_activity, &relation.target_activity})
    if (!log.activity_alphabet().contains(*activity))
      throw LookupError("unknown activity '" + *activity + "'");
  MembershipColumn column;
  column.reserve(log.size());
  for (const auto& c : log.cases()) {
    const auto durations = case_relation_durations(
        c, graph, relation.source_activity, relation.target_activity);
    const auto duration = aggregate(durations, relation.aggregation);
    column.push_back(duration ? relation.value.evaluate(AttributeValue{*duration})
                              : 0.0);
  }
  return column;
}

Evaluation quantify(const Quantifier& q, std::span<const double> summarizer,
                    std::span<const std::span<const double>> referential) {
  const std::size_t n = summarizer.size();
  for (const auto& column : referential)
    if (column.size() != n)
      throw ContractViolation("membership columns differ in length");
  double satisfying = 0.0;
  double relevant = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 1.0;
    for (const auto& column : referential) r = std::min(r, column[i]);
    satisfying += std::min(r, summarizer[i]);
    relevant += r;
  }
  if (relevant == 0.0) return Evaluation{TruthDegree(0.0), satisfying, relevant, true};
  const double ratio = std::min(1.0, satisfying / relevant);
  return Evaluation{quantifier_eval(q, ratio), satisfying, relevant, false};
}

namespace {

void require_cases(const EventLog& log) {
  if (log.empty())
    throw VacuousStatementError("statement over an empty event log");
}

using Columns = std::vector<std::span<const double>>;

}  // namespace

Evaluation truth_type1(const EventLog& log, const Quantifier& q,
                       const AttributeProperty& summarizer) {
  require_cases(log);
  const auto summary = property_column(log, summarizer);
  return quantify(q, summary, {});
}

Evaluation truth_type2(const EventLog& log, const Quantifier& q,
                       const AttributeProperty& qualifier,
                       const AttributeProperty& summarizer) {
  require_cases(log);
  const auto qualified = property_column(log, qualifier);
  const auto summary = property_column(log, summarizer);
  const Columns referential{qualified};
  return quantify(q, summary, referential);
}

Evaluation truth_temporal(const EventLog& log, const Quantifier& q,
                          const TimeInterval& interval,
                          const AttributeProperty& summarizer) {
  require_cases(log);
  const auto within = interval_column(log, interval);
  const auto summary = property_column(log, summarizer);
  const Columns referential{within};
  return quantify(q, summary, referential);
}

Evaluation truth_temporal_qualified(const EventLog& log, const Quantifier& q,
                                    const TimeInterval& interval,
                                    const AttributeProperty& qualifier,
                                    const AttributeProperty& summarizer) {
  require_cases(log);
  const auto within = interval_column(log, interval);
  const auto qualified = property_column(log, qualifier);
  const auto summary = property_column(log, summarizer);
  const Columns referential{within, qualified};
  return quantify(q, summary, referential);
}

Evaluation truth_relation(const EventLog& log, const CausalGraph& graph,
                          const Quantifier& q, const TimeInterval& interval,
                          const RelationProperty& relation) {
  require_cases(log);
  const auto within = interval_column(log, interval);
  const auto summary = relation_column(log, graph, relation);
  const Columns referential{within};
  return quantify(q, summary, referential);
}

Evaluation truth_relation_qualified(const EventLog& log,
                                    const CausalGraph& graph,
                                    const Quantifier& q,
                                    const TimeInterval& interval,
                                    const AttributeProperty& qualifier,
                                    const RelationProperty& relation) {
  require_cases(log);
  const auto within = interval_column(log, interval);
  const auto qualified = property_column(log, qualifier);
  const auto summary = relation_column(log, graph, relation);
  const Columns referential{within, qualified};
  return quantify(q, summary, referential);
}

TruthDegree truth_deviance(TruthDegree s1, TruthDegree s2) {
  return std::min(s1, s2);
}

TruthDegree truth_expectation_deviance(TruthDegree s2) { return s2; }

void check_instance(const ProtoformInstance& p) {
  const std::string family(to_string(p.family));
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw ContractViolation(family + " instance: " + what);
  };
  need(p.quantifier.has_value() || p.family == Family::kExpectationDeviance,
       "missing quantifier");
  switch (p.family) {
    case Family::kType1:
      need(p.summarizer.has_value(), "missing summarizer");
      break;
    case Family::kType2:
      need(p.summarizer && p.qualifier, "missing qualifier or summarizer");
      break;
    case Family::kTemporalAttr:
      need(p.interval && p.summarizer, "missing interval or summarizer");
      break;
    case Family::kTemporalAttrQualified:
      need(p.interval && p.qualifier && p.summarizer,
           "missing interval, qualifier or summarizer");
      break;
    case Family::kRelation:
      need(p.interval && p.relation, "missing interval or relation");
      break;
    case Family::kRelationQualified:
      need(p.interval && p.qualifier && p.relation,
           "missing interval, qualifier or relation");
      break;
    case Family::kDeviance:
      need(p.interval && p.quantifier2 && p.qualifier && p.summarizer &&
               p.summarizer2,
           "needs interval, Q1, Q2, qualifier, P1 and P2");
      break;
    case Family::kExpectationDeviance:
      need(p.interval && p.quantifier2 && p.qualifier && p.summarizer2 &&
               p.expected,
           "needs interval, expected value, Q2, qualifier and P2");
      break;
  }
}

namespace {

std::string shape_key(const LinguisticValue& value) {
  std::string key = value.name() + '\x1f';
  if (const auto* t = std::get_if<TrapezoidalMembership>(&value.shape())) {
    for (const double p : {t->a(), t->b(), t->c(), t->d()})
      key += format_number(p) + ',';
  } else if (const auto* c = std::get_if<CrispCategory>(&value.shape())) {
    key += "=" + c->label;
  } else {
    const auto& i = std::get<CrispInterval>(value.shape());
    key += "[" + format_number(i.start) + "," + format_number(i.end);
  }
  return key;
}

}  // namespace

Evaluator::Evaluator(const EventLog& log, const CausalGraph& graph,
                     std::span<const LinguisticVariable> variables)
    : log_(log), graph_(graph), variables_(variables) {}

Evaluator::ColumnPtr Evaluator::memo(
    const std::string& key,
    const std::function<MembershipColumn()>& compute) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = columns_.find(key); it != columns_.end()) return it->second;
  }
  auto column = std::make_shared<const MembershipColumn>(compute());
  std::lock_guard lock(mutex_);
  return columns_.emplace(key, std::move(column)).first->second;
}

Evaluator::ColumnPtr Evaluator::interval(const TimeInterval& interval) const {
  return memo("T\x1f" + std::to_string(interval.start.seconds) + "\x1f" +
                  std::to_string(interval.end.seconds),
              [&] { return interval_column(log_, interval); });
}

Evaluator::ColumnPtr Evaluator::property(const AttributeProperty& property) const {
  return memo("P\x1f" + property.attribute + "\x1f" + shape_key(property.value),
              [&] { return property_column(log_, property); });
}

Evaluator::ColumnPtr Evaluator::relation(const RelationProperty& relation) const {
  return memo("R\x1f" + relation.source_activity + "\x1f" +
                  relation.target_activity + "\x1f" +
                  std::string(to_string(relation.aggregation)) + "\x1f" +
                  shape_key(relation.value),
              [&] { return relation_column(log_, graph_, relation); });
}

Evaluation Evaluator::temporal(const Quantifier& q, const TimeInterval* interval,
                               const AttributeProperty* qualifier,
                               std::span<const double> summary) const {
  ColumnPtr within = interval ? this->interval(*interval) : nullptr;
  ColumnPtr qualified = qualifier ? property(*qualifier) : nullptr;
  Columns referential;
  if (within) referential.emplace_back(*within);
  if (qualified) referential.emplace_back(*qualified);
  return quantify(q, summary, referential);
}

namespace {

std::string referential_key(const TimeInterval* interval,
                            const AttributeProperty* qualifier) {
  std::string key;
  if (interval)
    key += std::to_string(interval->start.seconds) + "\x1f" +
           std::to_string(interval->end.seconds);
  key += '\x1e';
  if (qualifier) key += qualifier->attribute + "\x1f" + shape_key(qualifier->value);
  return key;
}

}  // namespace

double Evaluator::referential_mass(const TimeInterval* interval,
                                   const AttributeProperty* qualifier) const {
  const std::string key = referential_key(interval, qualifier);
  {
    std::lock_guard lock(mutex_);
    if (auto it = masses_.find(key); it != masses_.end()) return it->second;
  }
  const ColumnPtr within = interval ? this->interval(*interval) : nullptr;
  const ColumnPtr qualified = qualifier ? property(*qualifier) : nullptr;
  double mass = 0.0;
  for (std::size_t i = 0; i < log_.size(); ++i) {
    double r = 1.0;
    if (within) r = std::min(r, (*within)[i]);
    if (qualified) r = std::min(r, (*qualified)[i]);
    mass += r;
  }
  std::lock_guard lock(mutex_);
  masses_.emplace(key, mass);
  return mass;
}

std::string Evaluator::modal_value(const TimeInterval& interval,
                                   const AttributeProperty* qualifier,
                                   const LinguisticVariable& variable) const {
  const std::string key = referential_key(&interval, qualifier) + '\x1e' +
                          variable.name + '\x1f' + variable.attribute;
  {
    std::lock_guard lock(mutex_);
    if (auto it = modes_.find(key); it != modes_.end()) return it->second;
  }
  const auto within = this->interval(interval);
  const ColumnPtr qualified = qualifier ? property(*qualifier) : nullptr;
  std::string modal;
  double best = -1.0;
  for (const auto& value : variable.values) {
    const auto column =
        property(AttributeProperty{variable.attribute, value, variable.name});
    double mass = 0.0;
    for (std::size_t i = 0; i < column->size(); ++i) {
      double r = (*within)[i];
      if (qualified) r = std::min(r, (*qualified)[i]);
      mass += std::min(r, (*column)[i]);
    }
    if (mass > best) {
      best = mass;
      modal = value.name();
    }
  }
  std::lock_guard lock(mutex_);
  return modes_.emplace(key, modal).first->second;
}

SubStatementStats Evaluator::stats(const TimeInterval& interval,
                                   const AttributeProperty* qualifier,
                                   const AttributeProperty& asserted,
                                   std::string_view variable,
                                   const Evaluation& evaluation) const {
  SubStatementStats out{evaluation.satisfying_mass, evaluation.relevant_mass,
                        asserted.value.name(), asserted.value.name()};
  for (const auto& v : variables_) {
    if (v.name == variable && v.attribute == asserted.attribute) {
      out.modal_value = modal_value(interval, qualifier, v);
      break;
    }
  }
  return out;
}

InstanceEvaluation Evaluator::evaluate(const ProtoformInstance& p) const {
  check_instance(p);
  const TimeInterval* interval = p.interval ? &*p.interval : nullptr;
  auto single = [](const Evaluation& e) {
    return InstanceEvaluation{e.truth, e.relevant_mass, e.vacuous, {}, {}};
  };
  const InstanceEvaluation vacuous{TruthDegree(0.0), 0.0, true, {}, {}};
  const AttributeProperty* qualifier = p.qualifier ? &*p.qualifier : nullptr;
  if (referential_mass(interval, qualifier) == 0.0) return vacuous;
  switch (p.family) {
    case Family::kType1:
    case Family::kType2:
    case Family::kTemporalAttr:
    case Family::kTemporalAttrQualified: {
      const auto summary = property(*p.summarizer);
      return single(temporal(*p.quantifier, interval, qualifier, *summary));
    }
    case Family::kRelation:
    case Family::kRelationQualified: {
      const auto summary = relation(*p.relation);
      return single(temporal(*p.quantifier, interval, qualifier, *summary));
    }
    case Family::kDeviance: {
      const auto p1 = property(*p.summarizer);
      const auto p2 = property(*p.summarizer2);
      const auto s1 = temporal(*p.quantifier, interval, nullptr, *p1);
      const auto s2 = temporal(*p.quantifier2, interval, &*p.qualifier, *p2);
      InstanceEvaluation out{truth_deviance(s1.truth, s2.truth), s2.relevant_mass,
                             s1.vacuous || s2.vacuous, {}, {}};
      out.general = stats(*interval, nullptr, *p.summarizer,
                          p.summarizer->variable, s1);
      out.contrast = stats(*interval, &*p.qualifier, *p.summarizer2,
                           p.summarizer2->variable, s2);
      return out;
    }
    case Family::kExpectationDeviance: {
      const AttributeProperty expected{p.expected->attribute, p.expected->value,
                                       p.summarizer2->variable};
      const auto p1 = property(expected);
      const auto p2 = property(*p.summarizer2);
      const auto s1 = temporal(*p.quantifier2, interval, nullptr, *p1);
      const auto s2 = temporal(*p.quantifier2, interval, &*p.qualifier, *p2);
      InstanceEvaluation out{truth_expectation_deviance(s2.truth),
                             s2.relevant_mass, s2.vacuous, {}, {}};
      out.general = stats(*interval, nullptr, expected, expected.variable, s1);
      out.contrast = stats(*interval, &*p.qualifier, *p.summarizer2,
                           p.summarizer2->variable, s2);
      return out;
    }
  }
  throw ContractViolation("unknown protoform family");
}

}  // namespace protoform
