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

#include "protoform/process_mining.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "protoform/error.hpp"
#include "protoform/text.hpp"

namespace protoform {

std::int64_t DirectlyFollowsGraph::count(std::string_view from,
                                         std::string_view to) const {
  auto it = counts.find({std::string(from), std::string(to)});
  return it == counts.end() ? 0 : it->second;
}

void DirectlyFollowsGraph::merge(const DirectlyFollowsGraph& other) {
  for (const auto& [pair, n] : other.counts) counts[pair] += n;
  for (const auto& [activity, n] : other.activity_totals)
    activity_totals[activity] += n;
}

DirectlyFollowsGraph build_dfg(std::span<const Case> cases) {
  DirectlyFollowsGraph dfg;
  for (const auto& c : cases) {
    for (std::size_t i = 0; i < c.trace.size(); ++i) {
      ++dfg.activity_totals[c.trace[i].activity];
      if (i + 1 < c.trace.size())
        ++dfg.counts[{c.trace[i].activity, c.trace[i + 1].activity}];
    }
  }
  return dfg;
}

DirectlyFollowsGraph build_dfg(const EventLog& log) {
  return build_dfg(std::span<const Case>(log.cases()));
}

CausalGraph::CausalGraph(std::set<std::string> activities,
                         std::map<ActivityPair, CausalArc> arcs,
                         DiscoveryThresholds thresholds)
    : activities_(std::move(activities)),
      arcs_(std::move(arcs)),
      thresholds_(thresholds) {}

const CausalArc* CausalGraph::find_arc(std::string_view source,
                                       std::string_view target) const {
  auto it = arcs_.find({std::string(source), std::string(target)});
  return it == arcs_.end() ? nullptr : &it->second;
}

bool CausalGraph::has_arc(std::string_view source,
                          std::string_view target) const {
  return find_arc(source, target) != nullptr;
}

double dependency_score(std::int64_t forward, std::int64_t backward) {
  return static_cast<double>(forward - backward) /
         static_cast<double>(forward + backward + 1);
}

double self_loop_score(std::int64_t loops) {
  return static_cast<double>(loops) / static_cast<double>(loops + 1);
}

CausalGraph discover_causal_graph(const DirectlyFollowsGraph& dfg,
                                  const DiscoveryThresholds& thresholds) {
  if (!(thresholds.dependency_min >= 0.0 && thresholds.dependency_min < 1.0))
    throw ContractViolation("dependency_min must lie in [0, 1)");
  if (thresholds.frequency_min < 1)
    throw ContractViolation("frequency_min must be at least 1");

  std::set<std::string> activities;
  for (const auto& [activity, n] : dfg.activity_totals) activities.insert(activity);
  std::map<ActivityPair, CausalArc> arcs;
  for (const auto& [pair, n] : dfg.counts) {
    activities.insert(pair.first);
    activities.insert(pair.second);
    if (n < thresholds.frequency_min) continue;
    const double score =
        pair.first == pair.second
            ? self_loop_score(n)
            : dependency_score(n, dfg.count(pair.second, pair.first));
    if (score >= thresholds.dependency_min) arcs.emplace(pair, CausalArc{score, n});
  }
  return CausalGraph(std::move(activities), std::move(arcs), thresholds);
}

namespace {

std::string dot_id(std::string_view name) {
  std::string out = "\"";
  for (const char ch : name) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const CausalGraph& graph) {
  std::ostringstream out;
  out << "digraph causal_graph {\n  rankdir=LR;\n";
  for (const auto& activity : graph.activities())
    out << "  " << dot_id(activity) << ";\n";
  for (const auto& [pair, arc] : graph.arcs()) {
    char score[32];
    std::snprintf(score, sizeof(score), "%.3f", arc.dependency);
    out << "  " << dot_id(pair.first) << " -> " << dot_id(pair.second)
        << " [label=\"" << score << " (" << arc.count << ")\", dependency="
        << format_number(arc.dependency) << ", count=" << arc.count << "];\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

// Durations T_to - T_from of the pairs bound along the arc from->to.
std::vector<double> bind_along(const Case& c, std::string_view from,
                               std::string_view to) {
  std::vector<double> durations;
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < c.trace.size(); ++i) {
    const auto& event = c.trace[i];
    if (event.activity == to && !open.empty()) {
      durations.push_back(event.timestamp - c.trace[open.back()].timestamp);
      open.pop_back();
    }
    if (event.activity == from) open.push_back(i);
  }
  return durations;
}

}  // namespace

std::vector<double> case_relation_durations(const Case& c,
                                            const CausalGraph& graph,
                                            std::string_view source,
                                            std::string_view target) {
  if (graph.has_arc(source, target)) return bind_along(c, source, target);
  if (graph.has_arc(target, source)) {
    auto durations = bind_along(c, target, source);
    for (auto& d : durations) d = -d;
    return durations;
  }
  return {};
}

std::vector<RelationSample> compute_relation_samples(const EventLog& log,
                                                     const CausalGraph& graph,
                                                     std::string_view source,
                                                     std::string_view target) {
  for (const auto activity : {source, target})
    if (!log.activity_alphabet().contains(std::string(activity)))
      throw LookupError("unknown activity '" + std::string(activity) + "'");
  std::vector<RelationSample> samples;
  for (const auto& c : log.cases()) {
    for (const double d : case_relation_durations(c, graph, source, target))
      samples.push_back(
          RelationSample{c.id, std::string(source), std::string(target), d});
  }
  return samples;
}

std::string_view to_string(Aggregation aggregation) {
  switch (aggregation) {
    case Aggregation::kFirst:
      return "first";
    case Aggregation::kMean:
      return "mean";
    case Aggregation::kMax:
      return "max";
  }
  return "first";
}

std::optional<Aggregation> aggregation_from_string(std::string_view name) {
  if (name == "first") return Aggregation::kFirst;
  if (name == "mean") return Aggregation::kMean;
  if (name == "max") return Aggregation::kMax;
  return std::nullopt;
}

std::optional<double> aggregate(std::span<const double> values,
                                Aggregation aggregation) {
  if (values.empty()) return std::nullopt;
  switch (aggregation) {
    case Aggregation::kFirst:
      return values.front();
    case Aggregation::kMean: {
      double sum = 0.0;
      for (const double v : values) sum += v;
      return sum / static_cast<double>(values.size());
    }
    case Aggregation::kMax:
      return *std::max_element(values.begin(), values.end());
  }
  return std::nullopt;
}

std::string_view to_string(DerivedAttributeSpec::Kind kind) {
  using Kind = DerivedAttributeSpec::Kind;
  switch (kind) {
    case Kind::kWaitingTime:
      return "waiting_time";
    case Kind::kTriggerCount:
      return "trigger_count";
    case Kind::kThroughputTime:
      return "throughput_time";
    case Kind::kEventCount:
      return "event_count";
    case Kind::kActivityOccurred:
      return "activity_occurred";
  }
  return "throughput_time";
}

std::optional<DerivedAttributeSpec::Kind> derived_kind_from_string(
    std::string_view name) {
  using Kind = DerivedAttributeSpec::Kind;
  for (const auto kind : {Kind::kWaitingTime, Kind::kTriggerCount,
                          Kind::kThroughputTime, Kind::kEventCount,
                          Kind::kActivityOccurred})
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

EventLog derive_case_attributes(const EventLog& log, const CausalGraph& graph,
                                std::span<const DerivedAttributeSpec> specs) {
  using Kind = DerivedAttributeSpec::Kind;
  AttributeSchema schema = log.schema();
  auto require_activity = [&](const DerivedAttributeSpec& spec,
                              const std::string& activity) {
    if (!log.activity_alphabet().contains(activity))
      throw ConfigError("derived attribute '" + spec.name +
                        "' references unknown activity '" + activity + "'");
  };
  for (const auto& spec : specs) {
    if (spec.name.empty()) throw ConfigError("derived attribute without a name");
    if (auto it = schema.find(spec.name); it != schema.end())
      throw ConfigError("derived attribute '" + spec.name +
                        (it->second.derived ? "' is declared twice"
                                            : "' clashes with a raw attribute"));
    switch (spec.kind) {
      case Kind::kWaitingTime:
      case Kind::kTriggerCount:
        require_activity(spec, spec.source_activity);
        require_activity(spec, spec.target_activity);
        break;
      case Kind::kActivityOccurred:
        require_activity(spec, spec.activity);
        break;
      default:
        break;
    }
    schema[spec.name] = AttributeInfo{spec.kind == Kind::kActivityOccurred
                                          ? AttributeKind::kCategory
                                          : AttributeKind::kNumeric,
                                      AttributeScope::kCase, true};
  }

  std::vector<Case> cases = log.cases();
  for (auto& c : cases) {
    for (const auto& spec : specs) {
      switch (spec.kind) {
        case Kind::kWaitingTime: {
          const auto durations = case_relation_durations(
              c, graph, spec.source_activity, spec.target_activity);
          if (auto value = aggregate(durations, spec.aggregation))
            c.derived_attributes[spec.name] = *value;
          break;
        }
        case Kind::kTriggerCount:
          c.derived_attributes[spec.name] = static_cast<double>(
              case_relation_durations(c, graph, spec.source_activity,
                                      spec.target_activity)
                  .size());
          break;
        case Kind::kThroughputTime:
          c.derived_attributes[spec.name] = c.end() - c.start();
          break;
        case Kind::kEventCount:
          c.derived_attributes[spec.name] = static_cast<double>(c.trace.size());
          break;
        case Kind::kActivityOccurred: {
          const bool seen = std::any_of(
              c.trace.begin(), c.trace.end(),
              [&](const Event& e) { return e.activity == spec.activity; });
          c.derived_attributes[spec.name] = std::string(seen ? "yes" : "no");
          break;
        }
      }
    }
  }
  return EventLog(std::move(cases), std::move(schema));
}

}  // namespace protoform
