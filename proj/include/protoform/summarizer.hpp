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

#ifndef PROTOFORM_SUMMARIZER_HPP_
#define PROTOFORM_SUMMARIZER_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "protoform/event_log.hpp"
#include "protoform/knowledge_base.hpp"
#include "protoform/process_mining.hpp"
#include "protoform/protoform.hpp"

namespace protoform {

// Emits every instance the knowledge base can build for the requested
// families, in declaration order, nested family -> interval -> quantifier ->
// qualifier -> summarizer. Qualifier and summarizer never share an
// attribute. Relation families range over both query directions of every
// causal arc.
void enumerate_candidates(const KnowledgeBase& kb, const CausalGraph& graph,
                          std::span<const Family> families,
                          const std::function<void(ProtoformInstance&&)>& sink);
std::vector<ProtoformInstance> enumerate_candidates(
    const KnowledgeBase& kb, const CausalGraph& graph,
    std::span<const Family> families);

struct TestResult {
  double z = 0.0;
  double p_value = 1.0;
};

// Unpooled two-proportion z-test on x1/n1 versus x2/n2 (two-sided).
TestResult two_proportion_z_test(double x1, double n1, double x2, double n2);

inline constexpr double kMinSubgroupSupport = 5.0;

// Whether a deviance composite says something the general statement does
// not: the subgroup has at least kMinSubgroupSupport relevant mass, its
// satisfaction proportion differs from the general one at level alpha
// (masses rounded to counts), and its modal summarizer value is not the value
// the general statement asserts.
bool deviance_relevance(const SubStatementStats& general,
                        const SubStatementStats& contrast, double alpha);

struct EvaluatedInstance {
  ProtoformInstance instance;
  InstanceEvaluation evaluation;
  bool relevant = true;
};

struct CandidateError {
  std::size_t index = 0;
  std::string message;
};

struct FilterResult {
  std::vector<EvaluatedInstance> kept;
  std::vector<CandidateError> errors;
  std::size_t evaluated = 0;
};

struct EvaluateOptions {
  // 0 picks the hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

// Evaluates every candidate and keeps those that are non-vacuous, reach
// kb.limits.min_truth and, for deviance families, pass deviance_relevance.
// A failing candidate is recorded in errors and does not stop the batch.
FilterResult evaluate_and_filter(std::span<const ProtoformInstance> candidates,
                                 const Evaluator& evaluator,
                                 const KnowledgeBase& kb,
                                 const EvaluateOptions& options = {});

struct Realization {
  std::string sentence;
  std::map<std::string, std::string> bindings;
};

// Slot values for an instance: interval, quantifier, quantifier2, qualifier,
// summarizer, summarizer2, source, target, relation, expected, attribute.
std::map<std::string, std::string> bind_slots(const ProtoformInstance& instance,
                                              const KnowledgeBase& kb);

// Substitutes the family template. ConfigError naming the slot when the
// template uses one the instance does not bind.
Realization realize(const ProtoformInstance& instance, const KnowledgeBase& kb);
std::string fill_template(const std::string& pattern,
                          const std::map<std::string, std::string>& slots);

struct ReportEntry {
  std::string sentence;
  Family family = Family::kType1;
  double truth = 0.0;
  double support = 0.0;
  bool vacuous = false;
  bool relevant = true;
  std::map<std::string, std::string> bindings;

  friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

// Truth descending, then support descending, then sentence ascending.
bool ranks_before(const ReportEntry& lhs, const ReportEntry& rhs);
void rank_entries(std::vector<ReportEntry>& entries);

struct SummaryReport {
  Instant generated_at;
  std::string log_digest;
  std::vector<ReportEntry> entries;
  // Per-candidate evaluation failures; not part of the serialized report.
  std::vector<CandidateError> errors;
  std::size_t candidate_count = 0;
};

struct SummarizeOptions {
  // Empty means every family.
  std::vector<Family> families;
  // Zeroes generated_at.
  bool reproducible = false;
  unsigned threads = 0;
};

// derive -> discover -> enumerate -> evaluate and filter -> keep the best
// sentence per (family, interval, quantifiers, qualifier, attribute) -> rank
// -> top_k.
// ConfigError on an empty log or a knowledge base without quantifiers.
SummaryReport summarize(const EventLog& log, const KnowledgeBase& kb,
                        const SummarizeOptions& options = {});

nlohmann::json to_json(const SummaryReport& report);
// One "[truth=0.xx] sentence" line per entry.
std::string to_text(const SummaryReport& report);

}  // namespace protoform

#endif  // PROTOFORM_SUMMARIZER_HPP_
