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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "protoform/error.hpp"
#include "protoform/event_log.hpp"
#include "protoform/fuzzy.hpp"
#include "protoform/knowledge_base.hpp"
#include "protoform/process_mining.hpp"
#include "protoform/summarizer.hpp"
#include "protoform/synthetic.hpp"

namespace py = pybind11;
using namespace protoform;

namespace {

char single_char(const std::string& text, const char* what) {
  if (text.size() != 1) throw ConfigError(std::string(what) + " must be one character");
  return text[0];
}

ColumnMapping mapping_from(const std::string& case_column, const std::string& activity_column,
                           const std::string& time_column, const std::string& time_format,
                           const std::string& delimiter) {
  ColumnMapping mapping;
  mapping.case_id_column = case_column;
  mapping.activity_column = activity_column;
  mapping.timestamp_column = time_column;
  mapping.timestamp_format = time_format;
  mapping.delimiter = single_char(delimiter, "delimiter");
  return mapping;
}

std::vector<Family> families_from(const std::optional<std::vector<std::string>>& names) {
  std::vector<Family> families;
  if (!names) return families;
  for (const auto& name : *names) {
    const auto family = family_from_string(name);
    if (!family) throw ConfigError("unknown family '" + name + "'");
    families.push_back(*family);
  }
  return families;
}

py::list findings_to_python(const ValidationReport& report) {
  py::list out;
  for (const auto& f : report.findings)
    out.append(py::make_tuple(std::string(to_string(f.level)), f.subject, f.message));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Linguistic summaries of event logs.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<LookupError>(m, "NotFoundError", error.ptr());
  py::register_exception<ContractViolation>(m, "ContractViolation", error.ptr());
  py::register_exception<EvaluationError>(m, "EvaluationError", error.ptr());
  py::register_exception<VacuousStatementError>(m, "VacuousStatementError", error.ptr());

  py::class_<EventLog>(m, "EventLog")
      .def("__len__", &EventLog::size)
      .def_property_readonly("event_count", &EventLog::event_count)
      .def_property_readonly("activities", &EventLog::activity_alphabet)
      .def_property_readonly("case_ids",
                             [](const EventLog& log) {
                               std::vector<std::string> ids;
                               for (const auto& c : log.cases()) ids.push_back(c.id);
                               return ids;
                             })
      .def("trace",
           [](const EventLog& log, const std::string& id) {
             const Case* c = log.find_case(id);
             if (!c) throw LookupError("unknown case '" + id + "'");
             std::vector<std::pair<std::string, double>> events;
             for (const auto& e : c->trace) events.emplace_back(e.activity, e.timestamp.seconds);
             return events;
           },
           py::arg("case_id"), "(activity, epoch seconds) pairs of one case")
      .def("digest", &log_digest)
      .def("to_csv",
           [](const EventLog& log, const std::string& time_format, const std::string& delimiter) {
             return write_event_log(log, {time_format, single_char(delimiter, "delimiter")});
           },
           py::arg("time_format") = "YYYY-MM-DD HH:MM:SS", py::arg("delimiter") = ",");

  py::class_<KnowledgeBase>(m, "KnowledgeBase")
      .def_property_readonly("variables",
                             [](const KnowledgeBase& kb) {
                               std::vector<std::string> names;
                               for (const auto& v : kb.variables) names.push_back(v.name);
                               return names;
                             })
      .def_property_readonly("quantifiers", [](const KnowledgeBase& kb) {
        std::vector<std::string> names;
        for (const auto& q : kb.quantifiers) names.push_back(q.name());
        return names;
      });

  py::class_<CausalGraph>(m, "CausalGraph")
      .def_property_readonly("activities", &CausalGraph::activities)
      .def_property_readonly("arcs",
                             [](const CausalGraph& g) {
                               std::vector<py::tuple> arcs;
                               for (const auto& [pair, arc] : g.arcs())
                                 arcs.push_back(py::make_tuple(pair.first, pair.second,
                                                               arc.dependency, arc.count));
                               return arcs;
                             })
      .def("has_arc", &CausalGraph::has_arc, py::arg("source"), py::arg("target"))
      .def("to_dot", &to_dot);

  m.def(
      "parse_event_log",
      [](const std::string& text, const std::string& case_column,
         const std::string& activity_column, const std::string& time_column,
         const std::string& time_format, const std::string& delimiter, bool strict) {
        return parse_event_log(
            std::string_view(text),
            mapping_from(case_column, activity_column, time_column, time_format, delimiter),
            ParseOptions{strict});
      },
      py::arg("text"), py::arg("case_column") = "case_id",
      py::arg("activity_column") = "event_activity", py::arg("time_column") = "event_time",
      py::arg("time_format") = "YYYY-MM-DD HH:MM", py::arg("delimiter") = ",",
      py::arg("strict") = true);

  m.def("validate_log", [](const EventLog& log) { return findings_to_python(validate_log(log)); },
        py::arg("log"), "(level, subject, message) tuples");

  m.def("load_knowledge_base",
        [](const std::string& text) { return load_knowledge_base(std::string_view(text)); },
        py::arg("json_text"));

  m.def(
      "generate_synthetic_log",
      [](const std::string& spec_json, std::optional<std::uint64_t> seed) {
        auto spec = synthetic_spec_from_json(nlohmann::json::parse(spec_json));
        if (seed) spec.rng_seed = *seed;
        return generate_synthetic_log(spec);
      },
      py::arg("spec_json"), py::arg("seed") = py::none());

  m.def(
      "discover",
      [](const EventLog& log, double dependency_min, std::int64_t frequency_min) {
        return discover_causal_graph(build_dfg(log), {dependency_min, frequency_min});
      },
      py::arg("log"), py::arg("dependency_min") = 0.9, py::arg("frequency_min") = 5);

  m.def("dependency_score", &dependency_score, py::arg("forward"), py::arg("backward"));

  m.def(
      "relation_samples",
      [](const EventLog& log, const CausalGraph& graph, const std::string& source,
         const std::string& target) {
        std::vector<std::pair<std::string, double>> out;
        for (const auto& s : compute_relation_samples(log, graph, source, target))
          out.emplace_back(s.case_id, s.signed_duration);
        return out;
      },
      py::arg("log"), py::arg("graph"), py::arg("source"), py::arg("target"),
      "(case id, signed seconds) pairs");

  m.def(
      "membership",
      [](double a, double b, double c, double d, double x) {
        return membership(TrapezoidalMembership(a, b, c, d), x).value();
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("x"));

  m.def(
      "quantifier_truth",
      [](double a, double b, double c, double d, double proportion) {
        return quantifier_eval(Quantifier("q", {a, b, c, d}), proportion).value();
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("proportion"));

  m.def(
      "summarize_json",
      [](const EventLog& log, const KnowledgeBase& kb,
         const std::optional<std::vector<std::string>>& families, bool reproducible,
         unsigned threads) {
        SummaryReport report;
        {
          py::gil_scoped_release release;
          report = summarize(log, kb, {families_from(families), reproducible, threads});
        }
        return to_json(report).dump();
      },
      py::arg("log"), py::arg("kb"), py::arg("families") = py::none(),
      py::arg("reproducible") = false, py::arg("threads") = 0);

  m.def(
      "summarize_text",
      [](const EventLog& log, const KnowledgeBase& kb,
         const std::optional<std::vector<std::string>>& families, bool reproducible,
         unsigned threads) {
        py::gil_scoped_release release;
        return to_text(summarize(log, kb, {families_from(families), reproducible, threads}));
      },
      py::arg("log"), py::arg("kb"), py::arg("families") = py::none(),
      py::arg("reproducible") = false, py::arg("threads") = 0);
}
