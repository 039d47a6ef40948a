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

#ifndef PROTOFORM_PROTOFORM_HPP_
#define PROTOFORM_PROTOFORM_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "protoform/event_log.hpp"
#include "protoform/fuzzy.hpp"
#include "protoform/process_mining.hpp"
#include "protoform/time.hpp"

namespace protoform {

// Crisp half-open [start, end). A case belongs to it when its first event
// does.
struct TimeInterval {
  std::string name;
  Instant start;
  Instant end;

  TimeInterval(std::string name, Instant start, Instant end);
  bool contains(Instant t) const { return start <= t && t < end; }
};

// "<attribute> is <value>", e.g. admittance is emergency.
struct AttributeProperty {
  std::string attribute;
  LinguisticValue value;
  // Name of the variable the value was taken from; used for realization.
  std::string variable;
};

// "<target> takes place <value> <source>", evaluated on T_target - T_source.
struct RelationProperty {
  std::string source_activity;
  std::string target_activity;
  LinguisticValue value;
  std::string variable;
  // How a case with several bound pairs is reduced to one duration.
  Aggregation aggregation = Aggregation::kFirst;
};

struct ExpectedValue {
  std::string attribute;
  std::string description;  // e.g. "around 25 days"
  LinguisticValue value;    // reporting only; never evaluated for truth
  // Noun phrase naming the attribute; "the <attribute>" when empty.
  std::string subject;
};

enum class Family {
  kType1,
  kType2,
  kTemporalAttr,
  kTemporalAttrQualified,
  kRelation,
  kRelationQualified,
  kDeviance,
  kExpectationDeviance,
};

inline constexpr Family kAllFamilies[] = {
    Family::kType1,         Family::kType2,
    Family::kTemporalAttr,  Family::kTemporalAttrQualified,
    Family::kRelation,      Family::kRelationQualified,
    Family::kDeviance,      Family::kExpectationDeviance,
};

std::string_view to_string(Family family);
std::optional<Family> family_from_string(std::string_view name);
bool is_deviance(Family family);

// Outcome of one Zadeh Σ-count evaluation:
//   truth = μ_Q(satisfying_mass / relevant_mass)
// where relevant_mass sums the referential memberships (interval ∧ qualifier,
// or the case count when there is neither) and satisfying_mass sums
// referential ∧ summarizer. A zero relevant mass makes the statement vacuous
// with truth 0.
struct Evaluation {
  TruthDegree truth;
  double satisfying_mass = 0.0;
  double relevant_mass = 0.0;
  bool vacuous = false;

  double proportion() const {
    return relevant_mass > 0.0 ? satisfying_mass / relevant_mass : 0.0;
  }
};

using MembershipColumn = std::vector<double>;

// Per-case memberships, in log case order.
MembershipColumn interval_column(const EventLog& log, const TimeInterval& interval);
MembershipColumn property_column(const EventLog& log,
                                 const AttributeProperty& property);
MembershipColumn relation_column(const EventLog& log, const CausalGraph& graph,
                                 const RelationProperty& relation);

// The Σ-count kernel every truth operation reduces to. Referential columns
// are conjoined with min; an empty referential list means every case counts
// fully.
Evaluation quantify(const Quantifier& q, std::span<const double> summarizer,
                    std::span<const std::span<const double>> referential);

// Type-I "Q X's are A". VacuousStatementError on an empty log.
Evaluation truth_type1(const EventLog& log, const Quantifier& q,
                       const AttributeProperty& summarizer);
// Type-II "Q BX's are A".
Evaluation truth_type2(const EventLog& log, const Quantifier& q,
                       const AttributeProperty& qualifier,
                       const AttributeProperty& summarizer);
// "In Ti, Q patients had attribute P".
Evaluation truth_temporal(const EventLog& log, const Quantifier& q,
                          const TimeInterval& interval,
                          const AttributeProperty& summarizer);
// "In Ti, Q patients with attribute C had attribute P".
Evaluation truth_temporal_qualified(const EventLog& log, const Quantifier& q,
                                    const TimeInterval& interval,
                                    const AttributeProperty& qualifier,
                                    const AttributeProperty& summarizer);
// "In Ti, in Q cases R". Cases without a bound pair contribute μ_R = 0.
Evaluation truth_relation(const EventLog& log, const CausalGraph& graph,
                          const Quantifier& q, const TimeInterval& interval,
                          const RelationProperty& relation);
// "In Ti, in Q cases where patient had attribute C R".
Evaluation truth_relation_qualified(const EventLog& log,
                                    const CausalGraph& graph,
                                    const Quantifier& q,
                                    const TimeInterval& interval,
                                    const AttributeProperty& qualifier,
                                    const RelationProperty& relation);

// T(S1) ∧ T(S2) with the minimum t-norm.
TruthDegree truth_deviance(TruthDegree s1, TruthDegree s2);
// The expected-value statement is maximal by construction, so only S2 counts.
TruthDegree truth_expectation_deviance(TruthDegree s2);

// A fully bound protoform. Which optional members are set depends on the
// family (see check_instance).
struct ProtoformInstance {
  Family family = Family::kType1;
  std::optional<Quantifier> quantifier;   // Q, or Q1 for deviance
  std::optional<Quantifier> quantifier2;  // Q2, deviance families
  std::optional<TimeInterval> interval;
  std::optional<AttributeProperty> qualifier;
  std::optional<AttributeProperty> summarizer;   // P, or P1 for deviance
  std::optional<AttributeProperty> summarizer2;  // P2, deviance families
  std::optional<RelationProperty> relation;
  std::optional<ExpectedValue> expected;
};

// ContractViolation when the set members do not match the family.
void check_instance(const ProtoformInstance& instance);

// Satisfaction statistics of one side of a deviance composite.
struct SubStatementStats {
  double satisfying_mass = 0.0;
  double relevant_mass = 0.0;
  // Value the statement asserts.
  std::string summarizer_value;
  // Value of the summarizer's variable with the largest mass in the
  // statement's referential (first declared on ties).
  std::string modal_value;
};

struct InstanceEvaluation {
  TruthDegree truth;
  // Relevant mass of the statement (of S2 for deviance families).
  double support = 0.0;
  bool vacuous = false;
  std::optional<SubStatementStats> general;   // S1, deviance families
  std::optional<SubStatementStats> contrast;  // S2, deviance families
};

// Evaluates instances against one log and causal graph, memoizing membership
// columns and referential masses. Safe to share between threads.
class Evaluator {
 public:
  // `variables` supplies the value sets used to find modal values of
  // deviance sub-statements.
  Evaluator(const EventLog& log, const CausalGraph& graph,
            std::span<const LinguisticVariable> variables = {});

  InstanceEvaluation evaluate(const ProtoformInstance& instance) const;

  const EventLog& log() const { return log_; }
  const CausalGraph& graph() const { return graph_; }

 private:
  using ColumnPtr = std::shared_ptr<const MembershipColumn>;

  ColumnPtr interval(const TimeInterval& interval) const;
  ColumnPtr property(const AttributeProperty& property) const;
  ColumnPtr relation(const RelationProperty& relation) const;
  ColumnPtr memo(const std::string& key,
                 const std::function<MembershipColumn()>& compute) const;
  Evaluation temporal(const Quantifier& q, const TimeInterval* interval,
                      const AttributeProperty* qualifier,
                      std::span<const double> summary) const;
  // Zero when the interval/qualifier pair selects nobody; memoized.
  double referential_mass(const TimeInterval* interval,
                          const AttributeProperty* qualifier) const;
  std::string modal_value(const TimeInterval& interval,
                          const AttributeProperty* qualifier,
                          const LinguisticVariable& variable) const;
  SubStatementStats stats(const TimeInterval& interval,
                          const AttributeProperty* qualifier,
                          const AttributeProperty& asserted,
                          std::string_view variable,
                          const Evaluation& evaluation) const;

  const EventLog& log_;
  const CausalGraph& graph_;
  std::span<const LinguisticVariable> variables_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, ColumnPtr> columns_;
  mutable std::map<std::string, double> masses_;
  mutable std::map<std::string, std::string> modes_;
};

}  // namespace protoform

#endif  // PROTOFORM_PROTOFORM_HPP_
