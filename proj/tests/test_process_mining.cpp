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

#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "protoform/error.hpp"
#include "protoform/event_log.hpp"
#include "protoform/process_mining.hpp"

using namespace protoform;

namespace {

EventLog traces(const std::vector<std::vector<std::string>>& sequences) {
  std::vector<Case> cases;
  int id = 0;
  for (const auto& sequence : sequences) {
    Case c;
    c.id = std::to_string(id++);
    std::int64_t t = 0;
    for (const auto& a : sequence) c.trace.push_back({a, Instant{t += 60}, {}});
    cases.push_back(std::move(c));
  }
  return EventLog(std::move(cases), {});
}

EventLog sample_log() {
  return parse_event_log(
      "case_id,event_activity,case_sex,event_time\n"
      "20629,consultation,Male,2013-06-04 09:00\n"
      "20629,special-consultation,Male,2012-06-14 09:00\n"
      "20634,echocardiogram,Female,2012-06-21 09:00\n"
      "20634,consultation,Female,2012-06-21 10:00\n"
      "21657,echocardiogram,Male,2012-10-25 09:00\n"
      "21657,consultation,Male,2012-10-25 10:00\n",
      ColumnMapping{});
}

DirectlyFollowsGraph counts(std::map<ActivityPair, std::int64_t> pairs) {
  DirectlyFollowsGraph dfg;
  dfg.counts = std::move(pairs);
  for (const auto& [pair, n] : dfg.counts) {
    dfg.activity_totals[pair.first] += 0;
    dfg.activity_totals[pair.second] += 0;
  }
  return dfg;
}

}  // namespace

TEST_SUITE("process_mining") {
  TEST_CASE("directly-follows counts") {
    const auto dfg = build_dfg(traces(std::vector(10, std::vector<std::string>{"A", "B", "C"})));
    CHECK(dfg.counts.size() == 2);
    CHECK(dfg.count("A", "B") == 10);
    CHECK(dfg.count("B", "C") == 10);
    CHECK(dfg.count("A", "C") == 0);
    CHECK(dfg.activity_totals.at("A") == 10);

    const auto single = build_dfg(traces({{"A"}}));
    CHECK(single.counts.empty());
    CHECK(single.activity_totals.at("A") == 1);

    const auto loop = build_dfg(traces({{"A", "A", "B"}}));
    CHECK(loop.count("A", "A") == 1);
    CHECK(loop.count("A", "B") == 1);
    CHECK(loop.counts.size() == 2);
  }

  TEST_CASE("DFG matches brute-force adjacent pairs and merges associatively") {
    fixtures::Rng rng(17);
    for (int i = 0; i < 100; ++i) {
      const auto log = fixtures::random_log(rng);
      const auto dfg = build_dfg(log);
      CHECK(dfg.counts == oracle::adjacent_pairs(log));
      const auto& cases = log.cases();
      const std::size_t cut = cases.size() / 2;
      auto left = build_dfg(std::span(cases).subspan(0, cut));
      left.merge(build_dfg(std::span(cases).subspan(cut)));
      CHECK(left == dfg);
    }
  }

  TEST_CASE("dependency scores") {
    CHECK(dependency_score(10, 0) == 10.0 / 11.0);
    CHECK(dependency_score(5, 5) == 0.0);
    CHECK(dependency_score(0, 10) == -10.0 / 11.0);
    CHECK(self_loop_score(3) == 0.75);
  }

  TEST_CASE("discovery examples") {
    auto graph = discover_causal_graph(counts({{{"A", "B"}, 10}}), {0.5, 1});
    REQUIRE(graph.has_arc("A", "B"));
    CHECK(graph.find_arc("A", "B")->dependency == 10.0 / 11.0);
    CHECK(graph.find_arc("A", "B")->count == 10);
    CHECK_FALSE(graph.has_arc("B", "A"));

    graph = discover_causal_graph(counts({{{"A", "B"}, 5}, {{"B", "A"}, 5}}), {0.5, 1});
    CHECK(graph.arcs().empty());

    graph = discover_causal_graph(counts({{{"A", "A"}, 3}}), {0.5, 1});
    REQUIRE(graph.has_arc("A", "A"));
    CHECK(graph.find_arc("A", "A")->dependency == 0.75);

    graph = discover_causal_graph(counts({{{"A", "B"}, 4}}), {0.5, 5});
    CHECK(graph.arcs().empty());

    CHECK_THROWS_AS(discover_causal_graph(counts({}), {1.0, 1}), ContractViolation);
    CHECK_THROWS_AS(discover_causal_graph(counts({}), {-0.1, 1}), ContractViolation);
    CHECK_THROWS_AS(discover_causal_graph(counts({}), {0.5, 0}), ContractViolation);
  }

  TEST_CASE("raising a threshold never adds arcs") {
    fixtures::Rng rng(23);
    for (int i = 0; i < 100; ++i) {
      const auto dfg = build_dfg(fixtures::random_log(rng));
      const double d = fixtures::uniform_real(rng, 0, 0.9);
      const auto f = fixtures::uniform(rng, 1, 4);
      const auto base = discover_causal_graph(dfg, {d, f});
      const auto stricter_d =
          discover_causal_graph(dfg, {fixtures::uniform_real(rng, d, 0.99), f});
      const auto stricter_f =
          discover_causal_graph(dfg, {d, f + fixtures::uniform(rng, 0, 3)});
      for (const auto* g : {&stricter_d, &stricter_f})
        for (const auto& [arc, info] : g->arcs()) CHECK(base.has_arc(arc.first, arc.second));
      for (const auto& [arc, info] : base.arcs()) {
        CHECK(info.count >= f);
        CHECK(info.dependency >= d);
      }
    }
  }

  TEST_CASE("DOT export") {
    const auto graph = discover_causal_graph(
        build_dfg(traces(std::vector(10, std::vector<std::string>{"A", "B", "C"}))), {0.5, 1});
    const auto dot = to_dot(graph);
    CHECK(dot.starts_with("digraph"));
    CHECK(dot.find("\"A\" -> \"B\"") != std::string::npos);
    CHECK(dot.find("\"B\" -> \"C\"") != std::string::npos);
    CHECK(dot.find("\"A\" -> \"C\"") == std::string::npos);
  }

  TEST_CASE("relation samples on the sample log") {
    const auto log = sample_log();
    const auto graph = discover_causal_graph(build_dfg(log), {0.5, 1});
    REQUIRE(graph.has_arc("echocardiogram", "consultation"));

    const auto forward = compute_relation_samples(log, graph, "echocardiogram", "consultation");
    REQUIRE(forward.size() == 2);
    CHECK(forward[0].case_id == "20634");
    CHECK(forward[0].signed_duration == 3600.0);

    const auto backward = compute_relation_samples(log, graph, "consultation", "echocardiogram");
    REQUIRE(backward.size() == 2);
    CHECK(backward[0].case_id == "20634");
    CHECK(backward[0].signed_duration == -3600.0);

    CHECK(compute_relation_samples(log, graph, "echocardiogram", "special-consultation").empty());
    CHECK_THROWS_AS(compute_relation_samples(log, graph, "surgery", "consultation"), LookupError);
  }

  TEST_CASE("nearest preceding unmatched source") {
    Case c;
    c.id = "x";
    c.trace = {{"A", Instant{0}, {}}, {"A", Instant{10}, {}}, {"B", Instant{15}, {}},
               {"B", Instant{40}, {}}, {"B", Instant{50}, {}}};
    EventLog log({c}, {});
    CausalGraph graph({"A", "B"}, {{{"A", "B"}, {0.9, 3}}}, {});
    const auto samples = compute_relation_samples(log, graph, "A", "B");
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].signed_duration == 5.0);
    CHECK(samples[1].signed_duration == 40.0);
  }

  TEST_CASE("antisymmetry and zero-for-unrelated against the oracle") {
    fixtures::Rng rng(29);
    for (int i = 0; i < 100; ++i) {
      const auto log = fixtures::random_log(rng);
      const auto graph = discover_causal_graph(build_dfg(log), {fixtures::uniform_real(rng, 0, 0.9), 1});
      for (const auto& s : log.activity_alphabet()) {
        for (const auto& t : log.activity_alphabet()) {
          const auto forward = compute_relation_samples(log, graph, s, t);
          if (!oracle::has_arc(graph, s, t) && !oracle::has_arc(graph, t, s)) {
            CHECK(forward.empty());
            continue;
          }
          std::vector<double> expected;
          for (const auto& c : log.cases())
            for (double d : oracle::relation_durations(c, graph, s, t)) expected.push_back(d);
          std::vector<double> got;
          for (const auto& sample : forward) got.push_back(sample.signed_duration);
          CHECK(got == expected);
          if (s != t && !(graph.has_arc(s, t) && graph.has_arc(t, s))) {
            const auto backward = compute_relation_samples(log, graph, t, s);
            REQUIRE(backward.size() == forward.size());
            for (std::size_t k = 0; k < forward.size(); ++k)
              CHECK(backward[k].signed_duration == -forward[k].signed_duration);
          }
        }
      }
    }
  }

  TEST_CASE("aggregation") {
    const std::vector<double> v{3, 1, 8};
    CHECK(aggregate(v, Aggregation::kFirst) == 3.0);
    CHECK(aggregate(v, Aggregation::kMean) == 4.0);
    CHECK(aggregate(v, Aggregation::kMax) == 8.0);
    CHECK_FALSE(aggregate(std::span<const double>{}, Aggregation::kFirst));
    CHECK(aggregation_from_string("mean") == Aggregation::kMean);
    CHECK_FALSE(aggregation_from_string("median"));
  }

  TEST_CASE("derived case attributes") {
    const auto log = sample_log();
    const auto graph = discover_causal_graph(build_dfg(log), {0.5, 1});
    using Kind = DerivedAttributeSpec::Kind;
    std::vector<DerivedAttributeSpec> specs(5);
    specs[0] = {"wait", Kind::kWaitingTime, "echocardiogram", "consultation", "", Aggregation::kFirst};
    specs[1] = {"triggers", Kind::kTriggerCount, "echocardiogram", "consultation", "", Aggregation::kFirst};
    specs[2] = {"throughput", Kind::kThroughputTime, "", "", "", Aggregation::kFirst};
    specs[3] = {"events", Kind::kEventCount, "", "", "", Aggregation::kFirst};
    specs[4] = {"had_echo", Kind::kActivityOccurred, "", "", "echocardiogram", Aggregation::kFirst};
    const auto derived = derive_case_attributes(log, graph, specs);

    const auto& c = *derived.find_case("20634");
    CHECK(std::get<double>(*c.find_attribute("wait")) == 3600.0);
    CHECK(std::get<double>(*c.find_attribute("triggers")) == 1.0);
    CHECK(std::get<double>(*c.find_attribute("throughput")) == 3600.0);
    CHECK(std::get<double>(*c.find_attribute("events")) == 2.0);
    CHECK(std::get<std::string>(*c.find_attribute("had_echo")) == "yes");

    const auto& other = *derived.find_case("20629");
    CHECK(other.find_attribute("wait") == nullptr);
    CHECK(std::get<double>(*other.find_attribute("triggers")) == 0.0);
    CHECK(std::get<std::string>(*other.find_attribute("had_echo")) == "no");
    CHECK(derived.schema().at("wait").derived);
    CHECK(derived.schema().at("wait").kind == AttributeKind::kNumeric);

    const auto single = derive_case_attributes(traces({{"A"}}), CausalGraph{}, std::span(specs).subspan(2, 1));
    CHECK(std::get<double>(*single.cases()[0].find_attribute("throughput")) == 0.0);
  }

  TEST_CASE("derived attribute errors") {
    const auto log = sample_log();
    const auto graph = discover_causal_graph(build_dfg(log), {0.5, 1});
    using Kind = DerivedAttributeSpec::Kind;
    std::vector<DerivedAttributeSpec> bad{{"wait", Kind::kWaitingTime, "surgery", "consultation", "", Aggregation::kFirst}};
    CHECK_THROWS_AS(derive_case_attributes(log, graph, bad), ConfigError);
    bad = {{"sex", Kind::kEventCount, "", "", "", Aggregation::kFirst}};
    CHECK_THROWS_AS(derive_case_attributes(log, graph, bad), ConfigError);
    bad = {{"n", Kind::kEventCount, "", "", "", Aggregation::kFirst},
           {"n", Kind::kEventCount, "", "", "", Aggregation::kFirst}};
    CHECK_THROWS_AS(derive_case_attributes(log, graph, bad), ConfigError);
  }

  TEST_CASE("trigger count equals the number of samples") {
    fixtures::Rng rng(31);
    for (int i = 0; i < 50; ++i) {
      const auto log = fixtures::random_log(rng);
      const auto graph = discover_causal_graph(build_dfg(log), {0.3, 1});
      const auto s = *log.activity_alphabet().begin();
      const auto t = *log.activity_alphabet().rbegin();
      std::vector<DerivedAttributeSpec> specs{
          {"n", DerivedAttributeSpec::Kind::kTriggerCount, s, t, "", Aggregation::kFirst}};
      const auto derived = derive_case_attributes(log, graph, specs);
      const auto samples = compute_relation_samples(log, graph, s, t);
      double total = 0;
      for (const auto& c : derived.cases()) total += std::get<double>(*c.find_attribute("n"));
      CHECK(total == double(samples.size()));
    }
  }
}
