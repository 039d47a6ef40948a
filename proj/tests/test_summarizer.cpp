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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "protoform/error.hpp"
#include "protoform/knowledge_base.hpp"
#include "protoform/summarizer.hpp"
#include "protoform/synthetic.hpp"

using namespace protoform;

namespace {

LinguisticVariable categories(const std::string& name, std::vector<std::string> values,
                              LinguisticVariable::Role role = LinguisticVariable::Role::kBoth) {
  LinguisticVariable v{name, name, {}, {}, {}};
  for (const auto& value : values) v.values.emplace_back(value, CrispCategory{value});
  v.role = role;
  return v;
}

TimeInterval year(int y) {
  return TimeInterval("year " + std::to_string(y), make_instant(y, 1, 1),
                      make_instant(y + 1, 1, 1));
}

std::size_t count(const KnowledgeBase& kb, Family family) {
  const Family families[] = {family};
  return enumerate_candidates(kb, CausalGraph{}, families).size();
}

// Closed-form candidate counts per family.
std::size_t expected_count(const KnowledgeBase& kb, const CausalGraph& graph, Family family) {
  std::size_t summaries = 0, relation_values = 0;
  for (const auto& v : kb.variables)
    if (v.summarizes()) summaries += v.values.size();
  for (const auto& v : kb.relation_vocab) relation_values += v.values.size();
  std::set<ActivityPair> pairs;
  for (const auto& [arc, info] : graph.arcs()) {
    pairs.insert(arc);
    pairs.insert({arc.second, arc.first});
  }
  std::size_t qualified = 0, qualifiers = 0, deviance = 0, expectation = 0;
  for (const auto& c : kb.variables) {
    if (!c.qualifies()) continue;
    qualifiers += c.values.size();
    for (const auto& s : kb.variables) {
      if (!s.summarizes() || s.attribute == c.attribute) continue;
      qualified += c.values.size() * s.values.size();
      deviance += c.values.size() * s.values.size() * (s.values.size() - 1);
    }
    for (const auto& e : kb.expected_values) {
      if (e.attribute == c.attribute) continue;
      for (const auto& s : kb.variables) {
        if (!s.summarizes() || s.attribute != e.attribute) continue;
        std::size_t others = 0;
        for (const auto& v : s.values) others += v.name() != e.value.name();
        expectation += c.values.size() * others;
      }
    }
  }
  const std::size_t q = kb.quantifiers.size(), t = kb.intervals.size();
  const std::size_t r = pairs.size() * relation_values;
  switch (family) {
    case Family::kType1: return q * summaries;
    case Family::kType2: return q * qualified;
    case Family::kTemporalAttr: return t * q * summaries;
    case Family::kTemporalAttrQualified: return t * q * qualified;
    case Family::kRelation: return t * q * r;
    case Family::kRelationQualified: return t * q * qualifiers * r;
    case Family::kDeviance: return t * q * q * deviance;
    case Family::kExpectationDeviance: return t * q * expectation;
  }
  return 0;
}

SubStatementStats stats(double p, double n, std::string value, std::string modal) {
  return {std::round(p * n), n, std::move(value), std::move(modal)};
}

// 100 cases whose attributes a1..a3 hold "y" for the first 90, 80 and 79.
EventLog graded_log() {
  std::vector<Case> cases;
  for (int i = 0; i < 100; ++i) {
    Case c;
    c.id = std::to_string(i);
    c.trace = {{"A", make_instant(2020, 5, 1), {}}};
    c.attributes["a1"] = std::string(i < 90 ? "y" : "n");
    c.attributes["a2"] = std::string(i < 80 ? "y" : "n");
    c.attributes["a3"] = std::string(i < 79 ? "y" : "n");
    cases.push_back(std::move(c));
  }
  return EventLog(std::move(cases), {{"a1", {}}, {"a2", {}}, {"a3", {}}});
}

KnowledgeBase graded_kb() {
  KnowledgeBase kb;
  kb.quantifiers.emplace_back("proportionally", TrapezoidalMembership(0, 1, 1, 1));
  for (const char* name : {"a1", "a2", "a3"}) {
    auto v = categories(name, {"y"});
    v.role = LinguisticVariable::Role::kSummarizer;
    kb.variables.push_back(v);
  }
  kb.limits.min_truth = 0.8;
  return kb;
}

}  // namespace

TEST_SUITE("summarizer") {
  TEST_CASE("enumeration counts") {
    KnowledgeBase kb;
    kb.quantifiers.emplace_back("most", TrapezoidalMembership(0.4, 0.6, 1, 1));
    kb.intervals.push_back(year(2020));
    kb.variables.push_back(categories("triage", {"red", "yellow", "green"},
                                      LinguisticVariable::Role::kSummarizer));
    CHECK(count(kb, Family::kTemporalAttr) == 3);
    kb.variables.push_back(categories("admittance", {"emergency", "scheduled"},
                                      LinguisticVariable::Role::kQualifier));
    CHECK(count(kb, Family::kTemporalAttr) == 3);
    CHECK(count(kb, Family::kTemporalAttrQualified) == 6);
    kb.quantifiers.clear();
    CHECK(count(kb, Family::kTemporalAttr) == 0);
    CHECK(count(kb, Family::kType2) == 0);
  }

  TEST_CASE("enumeration matches the closed-form product") {
    fixtures::Rng rng(61);
    for (int round = 0; round < 30; ++round) {
      const auto log = fixtures::random_log(rng);
      auto kb = fixtures::random_kb(rng, log);
      if (round % 3 == 1) kb.variables[0].role = LinguisticVariable::Role::kQualifier;
      if (round % 3 == 2) kb.variables[1].role = LinguisticVariable::Role::kSummarizer;
      const auto graph = discover_causal_graph(build_dfg(log), kb.discovery);
      for (const auto family : kAllFamilies) {
        const Family one[] = {family};
        const auto candidates = enumerate_candidates(kb, graph, one);
        CHECK(candidates.size() == expected_count(kb, graph, family));
        for (const auto& p : candidates) {
          CHECK(p.family == family);
          CHECK_NOTHROW(check_instance(p));
          if (p.qualifier && p.summarizer)
            CHECK(p.qualifier->attribute != p.summarizer->attribute);
          if (p.qualifier && p.summarizer2)
            CHECK(p.qualifier->attribute != p.summarizer2->attribute);
        }
      }
    }
  }

  TEST_CASE("enumeration order is deterministic and follows the family order") {
    fixtures::Rng rng(67);
    const auto log = fixtures::random_log(rng);
    const auto kb = fixtures::random_kb(rng, log);
    const auto graph = discover_causal_graph(build_dfg(log), kb.discovery);
    const auto a = enumerate_candidates(kb, graph, kAllFamilies);
    const auto b = enumerate_candidates(kb, graph, kAllFamilies);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].family == b[i].family);
      CHECK(realize(a[i], kb).sentence == realize(b[i], kb).sentence);
      if (i) CHECK(int(a[i - 1].family) <= int(a[i].family));
    }
  }

  TEST_CASE("two-proportion z test") {
    const auto t = two_proportion_z_test(160, 200, 15, 50);
    CHECK(t.z == doctest::Approx(oracle::z_statistic(0.8, 200, 0.3, 50)));
    CHECK(t.z == doctest::Approx(7.07).epsilon(0.01));
    CHECK(t.p_value < 1e-9);
    CHECK(two_proportion_z_test(50, 100, 25, 50).p_value == 1.0);
  }

  TEST_CASE("deviance relevance") {
    CHECK(deviance_relevance(stats(0.8, 200, "normal", "normal"),
                             stats(0.3, 50, "normal", "short"), 0.05));
    CHECK_FALSE(deviance_relevance(stats(0.5, 200, "normal", "normal"),
                                   stats(0.5, 50, "normal", "short"), 0.05));
    CHECK_FALSE(deviance_relevance(stats(0.8, 200, "normal", "normal"),
                                   stats(0.0, 3, "normal", "short"), 0.05));
    // Significant, but the subgroup's typical value is the general one.
    CHECK_FALSE(deviance_relevance(stats(0.8, 200, "normal", "normal"),
                                   stats(0.3, 50, "normal", "normal"), 0.05));
  }

  TEST_CASE("filter threshold is inclusive") {
    const auto log = graded_log();
    const auto kb = graded_kb();
    const Evaluator evaluator(log, CausalGraph{}, kb.variables);
    const Family type1[] = {Family::kType1};
    const auto candidates = enumerate_candidates(kb, CausalGraph{}, type1);
    REQUIRE(candidates.size() == 3);
    const auto result = evaluate_and_filter(candidates, evaluator, kb);
    CHECK(result.evaluated == 3);
    REQUIRE(result.kept.size() == 2);
    CHECK(result.kept[0].evaluation.truth.value() == 0.9);
    CHECK(result.kept[1].evaluation.truth.value() == 0.8);
  }

  TEST_CASE("vacuous candidates are excluded and errors are isolated") {
    const auto log = graded_log();
    auto kb = graded_kb();
    kb.limits.min_truth = 0.0;
    const Evaluator evaluator(log, CausalGraph{}, kb.variables);
    std::vector<ProtoformInstance> candidates(3);
    for (auto& p : candidates) {
      p.family = Family::kTemporalAttr;
      p.quantifier = kb.quantifiers[0];
      p.interval = year(2020);
      p.summarizer = AttributeProperty{"a1", kb.variables[0].values[0], "a1"};
    }
    candidates[1].interval = year(2019);
    candidates[2].summarizer->attribute = "missing";
    const auto result = evaluate_and_filter(candidates, evaluator, kb);
    CHECK(result.evaluated == 3);
    REQUIRE(result.kept.size() == 1);
    REQUIRE(result.errors.size() == 1);
    CHECK(result.errors[0].index == 2);
    CHECK(result.errors[0].message.find("missing") != std::string::npos);
  }

  TEST_CASE("thread count does not change results") {
    fixtures::Rng rng(71);
    const auto log = fixtures::random_log(rng);
    const auto kb = fixtures::random_kb(rng, log);
    const auto graph = discover_causal_graph(build_dfg(log), kb.discovery);
    const auto derived = derive_case_attributes(log, graph, kb.derived_specs);
    const auto candidates = enumerate_candidates(kb, graph, kAllFamilies);
    const Evaluator e1(derived, graph, kb.variables), e8(derived, graph, kb.variables);
    const auto one = evaluate_and_filter(candidates, e1, kb, {1});
    const auto many = evaluate_and_filter(candidates, e8, kb, {8});
    REQUIRE(one.kept.size() == many.kept.size());
    for (std::size_t i = 0; i < one.kept.size(); ++i) {
      CHECK(one.kept[i].evaluation.truth == many.kept[i].evaluation.truth);
      CHECK(realize(one.kept[i].instance, kb).sentence ==
            realize(many.kept[i].instance, kb).sentence);
    }
  }

  TEST_CASE("templates") {
    CHECK(fill_template("{a} and {b}", {{"a", "x"}, {"b", "y"}}) == "x and y");
    CHECK(fill_template("{{literal}} {a}", {{"a", "x"}}) == "{literal} x");
    try {
      fill_template("In {interval}, {nope}", {{"interval", "2020"}});
      FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("'nope'") != std::string::npos);
    }
  }

  TEST_CASE("realization of the three target sentences") {
    KnowledgeBase kb;
    const Quantifier most("most", {0.4, 0.6, 1, 1});
    const Quantifier several("several", {0.2, 0.4, 0.6, 0.8});
    auto admittance = categories("admittance", {"emergency", "scheduled"});
    LinguisticVariable wait{"waiting time", "wait", {}, {}, {}};
    wait.values.emplace_back("a short", TrapezoidalMembership(0, 0, 5, 10));
    wait.values.emplace_back("a normal", TrapezoidalMembership(5, 10, 20, 30));
    wait.phrase = "{value} waiting time between the MS session of the patient and its intervention";
    wait.repeat_phrase = "{value} waiting time";
    kb.activity_phrases["evaluation"] = {"patient evaluation", ""};
    kb.activity_phrases["inclusion"] = {"", "its inclusion"};

    ProtoformInstance p;
    p.family = Family::kTemporalAttr;
    p.interval = year(2020);
    p.quantifier = most;
    p.summarizer = AttributeProperty{"admittance", admittance.values[0], "admittance"};
    CHECK(realize(p, kb).sentence == "In year 2020, most patients had emergency admittance");

    ProtoformInstance d;
    d.family = Family::kDeviance;
    d.interval = year(2019);
    d.quantifier = most;
    d.quantifier2 = several;
    d.qualifier = AttributeProperty{"admittance", admittance.values[0], "admittance"};
    d.summarizer = AttributeProperty{"wait", wait.values[1], "waiting time"};
    d.summarizer2 = AttributeProperty{"wait", wait.values[0], "waiting time"};
    kb.variables = {admittance, wait};
    CHECK(realize(d, kb).sentence ==
          "In year 2019, most patients had a normal waiting time between the MS session "
          "of the patient and its intervention. However, several patients with emergency "
          "admittance had a short waiting time");

    ProtoformInstance r;
    r.family = Family::kRelation;
    r.interval = year(2020);
    r.quantifier = most;
    r.relation = RelationProperty{"inclusion", "evaluation",
                                  LinguisticValue("shortly after", TrapezoidalMembership(10, 30, 120, 300)),
                                  "after"};
    const auto realized = realize(r, kb);
    CHECK(realized.sentence ==
          "In year 2020, in most cases, patient evaluation takes place shortly after its inclusion");
    CHECK(realized.bindings.at("relation") == "shortly after");

    ProtoformInstance e;
    e.family = Family::kExpectationDeviance;
    e.interval = year(2019);
    e.quantifier2 = several;
    e.qualifier = d.qualifier;
    e.expected = ExpectedValue{"wait", "around 25 days", wait.values[1], "the waiting time"};
    e.summarizer2 = d.summarizer2;
    CHECK(realize(e, kb).sentence ==
          "In year 2019, the waiting time is expected to be around 25 days. However, several "
          "patients with emergency admittance had a short waiting time");

    kb.templates[Family::kTemporalAttr] = "During {interval} {missing}";
    CHECK_THROWS_AS(realize(p, kb), ConfigError);
  }

  TEST_CASE("realization is injective on bindings") {
    fixtures::Rng rng(73);
    for (int round = 0; round < 5; ++round) {
      const auto log = fixtures::random_log(rng);
      const auto kb = fixtures::random_kb(rng, log);
      const auto graph = discover_causal_graph(build_dfg(log), kb.discovery);
      std::map<std::string, std::map<std::string, std::string>> seen;
      for (const auto& p : enumerate_candidates(kb, graph, kAllFamilies)) {
        auto r = realize(p, kb);
        auto [it, inserted] = seen.emplace(r.sentence, r.bindings);
        if (!inserted) CHECK(it->second == r.bindings);
      }
    }
  }

  TEST_CASE("ranking is a total order") {
    fixtures::Rng rng(79);
    std::vector<ReportEntry> entries;
    for (int i = 0; i < 200; ++i) {
      ReportEntry e;
      e.truth = fixtures::uniform(rng, 0, 4) / 4.0;
      e.support = fixtures::uniform(rng, 0, 3);
      e.sentence = std::string(1, char('a' + fixtures::uniform(rng, 0, 25))) + std::to_string(i);
      entries.push_back(e);
    }
    auto sorted = entries;
    rank_entries(sorted);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(entries.begin(), entries.end(), rng);
      auto again = entries;
      rank_entries(again);
      CHECK(again == sorted);
    }
    for (const auto& a : sorted) {
      CHECK_FALSE(ranks_before(a, a));
      for (const auto& b : sorted) {
        if (&a == &b) continue;
        CHECK(ranks_before(a, b) != ranks_before(b, a));
      }
    }
    for (std::size_t i = 1; i < sorted.size(); ++i) CHECK(ranks_before(sorted[i - 1], sorted[i]));
  }

  TEST_CASE("summarize end to end") {
    SyntheticLogSpec spec;
    spec.trace_patterns = {{{"inclusion", "evaluation"}, 1.0}};
    spec.attribute_generators = {{"admittance", {{"emergency", 9}, {"scheduled", 1}}, std::nullopt, false}};
    spec.case_count = 200;
    spec.rng_seed = 3;
    const auto log = generate_synthetic_log(spec);
    KnowledgeBase kb;
    kb.quantifiers.emplace_back("most", TrapezoidalMembership(0.4, 0.6, 1, 1));
    kb.intervals.push_back(year(2020));
    kb.variables.push_back(categories("admittance", {"emergency", "scheduled"}));
    kb.limits.min_truth = 0.5;

    const Family temporal[] = {Family::kTemporalAttr};
    auto report = summarize(log, kb, {{temporal[0]}, true, 0});
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].sentence == "In year 2020, most patients had emergency admittance");
    CHECK(report.entries[0].truth == 1.0);
    CHECK(report.generated_at == Instant{});

    report = summarize(log, kb, {{}, true, 0});
    for (const auto& e : report.entries) {
      CHECK_FALSE(e.vacuous);
      CHECK(e.truth >= kb.limits.min_truth);
    }
    kb.limits.top_k = 1;
    CHECK(summarize(log, kb, {{}, true, 0}).entries.size() == 1);

    const auto a = to_json(summarize(log, kb, {{}, true, 1})).dump();
    const auto b = to_json(summarize(log, kb, {{}, true, 8})).dump();
    CHECK(a == b);
    CHECK(to_text(report).starts_with("[truth=1.00] "));

    const auto json = to_json(report);
    for (const char* key : {"generated_at", "log_digest", "entries"}) CHECK(json.contains(key));
    for (const char* key : {"sentence", "family", "truth", "support", "vacuous", "relevant", "bindings"})
      CHECK(json["entries"][0].contains(key));
  }

  TEST_CASE("equal truth and support fall back to sentence order") {
    std::vector<Case> cases;
    for (int i = 0; i < 10; ++i)
      cases.push_back({std::to_string(i), {{"A", make_instant(2020, 2, 2), {}}},
                       {{"x", std::string("p")}, {"y", std::string("q")}}, {}});
    const EventLog log(std::move(cases), {{"x", {}}, {"y", {}}});
    KnowledgeBase kb;
    kb.quantifiers.emplace_back("all", TrapezoidalMembership(1, 1, 1, 1));
    kb.variables.push_back(categories("y", {"q"}, LinguisticVariable::Role::kSummarizer));
    kb.variables.push_back(categories("x", {"p"}, LinguisticVariable::Role::kSummarizer));
    const auto report = summarize(log, kb, {{Family::kType1}, true, 0});
    REQUIRE(report.entries.size() == 2);
    CHECK(report.entries[0].sentence == "All patients had p x");
    CHECK(report.entries[1].sentence == "All patients had q y");
  }

  TEST_CASE("planning keeps the best value per attribute") {
    std::vector<Case> cases;
    for (int i = 0; i < 10; ++i)
      cases.push_back({std::to_string(i), {{"A", make_instant(2020, 2, 2), {}}},
                       {{"wait", double(i < 9 ? 5 : 50)}}, {}});
    const EventLog log(std::move(cases), {{"wait", {AttributeKind::kNumeric, AttributeScope::kCase, false}}});
    KnowledgeBase kb;
    kb.quantifiers.emplace_back("most", TrapezoidalMembership(0.4, 0.6, 1, 1));
    LinguisticVariable wait{"wait", "wait", {}, {}, {}};
    wait.values.emplace_back("a really short", TrapezoidalMembership(0, 0, 4, 6));
    wait.values.emplace_back("a short", TrapezoidalMembership(0, 0, 10, 20));
    kb.variables.push_back(wait);
    kb.limits.min_truth = 0.1;
    const auto report = summarize(log, kb, {{Family::kType1}, true, 0});
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].sentence == "Most patients had a short wait");
  }

  TEST_CASE("summarize rejects empty inputs") {
    KnowledgeBase kb;
    kb.quantifiers.emplace_back("most", TrapezoidalMembership(0.4, 0.6, 1, 1));
    kb.variables.push_back(categories("x", {"p"}));
    CHECK_THROWS_AS(summarize(EventLog{}, kb), ConfigError);
    const EventLog log({{"1", {{"A", Instant{0}, {}}}, {}, {}}}, {});
    KnowledgeBase empty;
    CHECK_THROWS_AS(summarize(log, empty), ConfigError);
    empty.quantifiers = kb.quantifiers;
    CHECK_THROWS_AS(summarize(log, empty), ConfigError);
  }
}
