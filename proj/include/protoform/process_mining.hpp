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

#ifndef PROTOFORM_PROCESS_MINING_HPP_
#define PROTOFORM_PROCESS_MINING_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "protoform/event_log.hpp"

namespace protoform {

using ActivityPair = std::pair<std::string, std::string>;

// |x >_L y| for every ordered activity pair that occurs adjacently.
struct DirectlyFollowsGraph {
  std::map<ActivityPair, std::int64_t> counts;
  std::map<std::string, std::int64_t> activity_totals;

  std::int64_t count(std::string_view from, std::string_view to) const;
  // Associative, so per-chunk graphs can be reduced in any grouping.
  void merge(const DirectlyFollowsGraph& other);

  friend bool operator==(const DirectlyFollowsGraph&,
                         const DirectlyFollowsGraph&) = default;
};

DirectlyFollowsGraph build_dfg(const EventLog& log);
DirectlyFollowsGraph build_dfg(std::span<const Case> cases);

struct DiscoveryThresholds {
  double dependency_min = 0.9;
  std::int64_t frequency_min = 5;
};

struct CausalArc {
  double dependency = 0.0;
  std::int64_t count = 0;

  friend bool operator==(const CausalArc&, const CausalArc&) = default;
};

class CausalGraph {
 public:
  CausalGraph() = default;
  CausalGraph(std::set<std::string> activities,
              std::map<ActivityPair, CausalArc> arcs,
              DiscoveryThresholds thresholds);

  const std::set<std::string>& activities() const { return activities_; }
  const std::map<ActivityPair, CausalArc>& arcs() const { return arcs_; }
  const DiscoveryThresholds& thresholds() const { return thresholds_; }

  bool has_arc(std::string_view source, std::string_view target) const;
  const CausalArc* find_arc(std::string_view source,
                            std::string_view target) const;

 private:
  std::set<std::string> activities_;
  std::map<ActivityPair, CausalArc> arcs_;
  DiscoveryThresholds thresholds_;
};

// (|x>y| - |y>x|) / (|x>y| + |y>x| + 1)
double dependency_score(std::int64_t forward, std::int64_t backward);
// |x>x| / (|x>x| + 1)
double self_loop_score(std::int64_t loops);

// Keeps arc x->y iff |x>y| >= frequency_min and its dependency score is at
// least dependency_min. ContractViolation unless 0 <= dependency_min < 1
// and frequency_min >= 1.
CausalGraph discover_causal_graph(const DirectlyFollowsGraph& dfg,
                                  const DiscoveryThresholds& thresholds);

// Graphviz rendering; edges are labelled with dependency score and count.
std::string to_dot(const CausalGraph& graph);

struct RelationSample {
  std::string case_id;
  std::string source_activity;
  std::string target_activity;
  // T_target - T_source in seconds.
  double signed_duration = 0.0;

  friend bool operator==(const RelationSample&, const RelationSample&) = default;
};

// Signed durations of the bound (source, target) event pairs of every case.
//
// Empty when neither source->target nor target->source is an arc. Events are
// bound along the arc: each occurrence of the arc's target consumes the
// nearest preceding unconsumed occurrence of its source. When only the
// reverse arc exists the same bindings are reported with the sign flipped.
// LookupError when an activity is not in the log.
std::vector<RelationSample> compute_relation_samples(const EventLog& log,
                                                     const CausalGraph& graph,
                                                     std::string_view source,
                                                     std::string_view target);

// Per-case variant of the above, in binding order.
std::vector<double> case_relation_durations(const Case& c,
                                            const CausalGraph& graph,
                                            std::string_view source,
                                            std::string_view target);

enum class Aggregation { kFirst, kMean, kMax };

std::string_view to_string(Aggregation aggregation);
std::optional<Aggregation> aggregation_from_string(std::string_view name);
// Nullopt on an empty list.
std::optional<double> aggregate(std::span<const double> values,
                                Aggregation aggregation);

struct DerivedAttributeSpec {
  enum class Kind {
    kWaitingTime,
    kTriggerCount,
    kThroughputTime,
    kEventCount,
    kActivityOccurred
  };

  std::string name;
  Kind kind = Kind::kThroughputTime;
  std::string source_activity;  // waiting_time, trigger_count
  std::string target_activity;  // waiting_time, trigger_count
  std::string activity;         // activity_occurred
  Aggregation aggregation = Aggregation::kFirst;
};

std::string_view to_string(DerivedAttributeSpec::Kind kind);
std::optional<DerivedAttributeSpec::Kind> derived_kind_from_string(
    std::string_view name);

// Copy of the log with derived attributes filled in and registered in the
// schema. A waiting time is absent for cases without a bound sample.
// ConfigError for unknown activities or names clashing with raw attributes.
EventLog derive_case_attributes(const EventLog& log, const CausalGraph& graph,
                                std::span<const DerivedAttributeSpec> specs);

}  // namespace protoform

#endif  // PROTOFORM_PROCESS_MINING_HPP_
