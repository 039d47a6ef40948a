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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "protoform/error.hpp"
#include "protoform/event_log.hpp"
#include "protoform/fuzzy.hpp"
#include "protoform/knowledge_base.hpp"
#include "protoform/process_mining.hpp"
#include "protoform/summarizer.hpp"
#include "protoform/synthetic.hpp"
#include "protoform/text.hpp"

namespace protoform::cli {

namespace {

struct RunConfig {
  std::string log_path;
  std::string kb_path;
  std::string spec_path;
  std::string case_column = "case_id";
  std::string activity_column = "event_activity";
  std::string time_column = "event_time";
  std::string time_format = "YYYY-MM-DD HH:MM";
  std::string synth_time_format = "YYYY-MM-DD HH:MM:SS";
  std::string delimiter = ",";
  std::string families;
  std::string format = "text";
  std::string out_path;
  std::optional<double> min_truth;
  std::optional<std::int64_t> top_k;
  std::optional<double> dependency_min;
  std::optional<std::int64_t> frequency_min;
  std::optional<std::uint64_t> seed;
  bool reproducible = false;
};

// Usage, configuration and input errors; always exit 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

ColumnMapping mapping_of(const RunConfig& config) {
  if (config.delimiter.size() != 1)
    throw UsageError("--delimiter must be a single character");
  ColumnMapping mapping;
  mapping.case_id_column = config.case_column;
  mapping.activity_column = config.activity_column;
  mapping.timestamp_column = config.time_column;
  mapping.timestamp_format = config.time_format;
  mapping.delimiter = config.delimiter[0];
  return mapping;
}

EventLog read_log(const RunConfig& config, const ParseOptions& options = {}) {
  if (config.log_path.empty()) throw UsageError("--log is required");
  std::ifstream in(config.log_path);
  if (!in) throw UsageError("cannot open log '" + config.log_path + "'");
  try {
    return parse_event_log(in, mapping_of(config), options);
  } catch (const Error& e) {
    throw UsageError(config.log_path + ": " + e.what());
  }
}

std::string kb_path_of(const RunConfig& config) {
  if (!config.kb_path.empty()) return config.kb_path;
  if (const char* env = std::getenv("PROTOFORM_KB")) return env;
  return {};
}

KnowledgeBase read_kb(const std::string& path) {
  if (path.empty()) throw UsageError("--kb is required (or set PROTOFORM_KB)");
  if (!std::filesystem::exists(path))
    throw UsageError("cannot open knowledge base '" + path + "'");
  return load_knowledge_base_file(path);
}

void check_ranges(const RunConfig& config) {
  if (config.min_truth && !(*config.min_truth >= 0.0 && *config.min_truth <= 1.0))
    throw UsageError("--min-truth " + format_number(*config.min_truth) +
                     " is outside [0, 1]");
  if (config.top_k && *config.top_k < 1)
    throw UsageError("--top-k must be at least 1");
  if (config.dependency_min &&
      !(*config.dependency_min >= 0.0 && *config.dependency_min < 1.0))
    throw UsageError("--dependency-min " + format_number(*config.dependency_min) +
                     " is outside [0, 1)");
  if (config.frequency_min && *config.frequency_min < 1)
    throw UsageError("--frequency-min must be at least 1");
  if (config.format != "text" && config.format != "json" && config.format != "both")
    throw UsageError("--format must be text, json or both");
}

std::vector<Family> parse_families(const std::string& list) {
  std::vector<Family> families;
  std::stringstream stream(list);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto name = std::string(trim(item));
    if (name.empty()) continue;
    auto family = family_from_string(name);
    if (!family) throw UsageError("unknown family '" + name + "'");
    families.push_back(*family);
  }
  return families;
}

void apply_overrides(const RunConfig& config, KnowledgeBase& kb) {
  if (config.min_truth) kb.limits.min_truth = *config.min_truth;
  if (config.top_k) kb.limits.top_k = *config.top_k;
  if (config.dependency_min) kb.discovery.dependency_min = *config.dependency_min;
  if (config.frequency_min) kb.discovery.frequency_min = *config.frequency_min;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << content;
}

int cmd_describe(const RunConfig& config, std::ostream& out, std::ostream& err) {
  check_ranges(config);
  const auto families = parse_families(config.families);
  auto kb = read_kb(kb_path_of(config));
  apply_overrides(config, kb);
  const auto log = read_log(config);
  SummarizeOptions options;
  options.families = families;
  options.reproducible = config.reproducible;
  const auto report = summarize(log, kb, options);
  for (const auto& error : report.errors)
    err << "warning: candidate " << error.index << ": " << error.message << "\n";
  const std::string json = to_json(report).dump(2) + "\n";
  if (config.format == "text") {
    emit(config.out_path, to_text(report), out);
  } else if (config.format == "json") {
    emit(config.out_path, json, out);
  } else if (config.out_path.empty()) {
    out << to_text(report) << "\n" << json;
  } else {
    emit(config.out_path, to_text(report), out);
    emit(config.out_path + ".json", json, out);
  }
  return kExitOk;
}

int cmd_discover(const RunConfig& config, std::ostream& out, std::ostream&) {
  check_ranges(config);
  DiscoveryThresholds thresholds;
  if (const auto path = kb_path_of(config); !path.empty())
    thresholds = read_kb(path).discovery;
  if (config.dependency_min) thresholds.dependency_min = *config.dependency_min;
  if (config.frequency_min) thresholds.frequency_min = *config.frequency_min;
  const auto log = read_log(config);
  if (log.empty()) throw UsageError(config.log_path + ": log has no cases");
  const auto graph = discover_causal_graph(build_dfg(log), thresholds);
  emit(config.out_path, to_dot(graph), out);
  return kExitOk;
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto kb_path = kb_path_of(config);
  if (config.log_path.empty() && kb_path.empty())
    throw UsageError("validate needs --log, --kb or both");
  ValidationReport report;
  if (!config.log_path.empty()) {
    const auto log = read_log(config, ParseOptions{.strict = false});
    const auto findings = validate_log(log);
    report.findings.insert(report.findings.end(), findings.findings.begin(),
                           findings.findings.end());
  }
  if (!kb_path.empty()) {
    const auto kb = read_kb(kb_path);
    for (const auto* list : {&kb.variables, &kb.relation_vocab}) {
      for (const auto& variable : *list) {
        const auto findings = validate_partition(variable);
        report.findings.insert(report.findings.end(), findings.findings.begin(),
                               findings.findings.end());
      }
    }
  }
  std::ostringstream text;
  for (const auto& finding : report.findings)
    text << to_string(finding.level) << " " << finding.subject << ": "
         << finding.message << "\n";
  text << report.size() << (report.size() == 1 ? " finding" : " findings") << "\n";
  emit(config.out_path, text.str(), out);
  return report.has_errors() ? kExitFindings : kExitOk;
}

int cmd_synth(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.spec_path.empty()) throw UsageError("--spec is required");
  std::ifstream in(config.spec_path);
  if (!in) throw UsageError("cannot open spec '" + config.spec_path + "'");
  SyntheticLogSpec spec;
  try {
    spec = synthetic_spec_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(config.spec_path + ": " + e.what());
  } catch (const Error& e) {
    throw UsageError(config.spec_path + ": " + e.what());
  }
  if (config.seed) spec.rng_seed = *config.seed;
  const auto log = generate_synthetic_log(spec);
  WriteOptions options;
  options.timestamp_format = config.synth_time_format;
  options.delimiter = mapping_of(config).delimiter;
  emit(config.out_path, write_event_log(log, options), out);
  return kExitOk;
}

void add_log_flags(CLI::App* command, RunConfig& config) {
  command->add_option("--log", config.log_path, "Event log (delimited text)");
  command->add_option("--case-column", config.case_column, "Case id column");
  command->add_option("--activity-column", config.activity_column,
                      "Activity column");
  command->add_option("--time-column", config.time_column, "Timestamp column");
  command->add_option("--time-format", config.time_format,
                      "Timestamp layout, e.g. \"YYYY-MM-DD HH:MM\"");
  command->add_option("--delimiter", config.delimiter, "Field delimiter");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Linguistic summaries of event logs"};
  app.name("protoform");
  app.require_subcommand(1);

  auto* describe = app.add_subcommand("describe", "Generate a linguistic summary");
  add_log_flags(describe, config);
  describe->add_option("--kb", config.kb_path, "Knowledge base (JSON)");
  describe->add_option("--families", config.families,
                       "Comma-separated protoform families");
  describe->add_option("--format", config.format, "text, json or both");
  describe->add_option("--out", config.out_path, "Output file");
  describe->add_option("--min-truth", config.min_truth, "Minimum truth degree");
  describe->add_option("--top-k", config.top_k, "Number of sentences");
  describe->add_option("--dependency-min", config.dependency_min,
                       "Dependency threshold");
  describe->add_option("--frequency-min", config.frequency_min,
                       "Frequency threshold");
  describe->add_flag("--reproducible", config.reproducible,
                     "Zero the generation timestamp");

  auto* discover = app.add_subcommand("discover", "Export the causal graph as DOT");
  add_log_flags(discover, config);
  discover->add_option("--kb", config.kb_path, "Knowledge base (thresholds)");
  discover->add_option("--out", config.out_path, "Output file");
  discover->add_option("--dependency-min", config.dependency_min,
                       "Dependency threshold");
  discover->add_option("--frequency-min", config.frequency_min,
                       "Frequency threshold");

  auto* validate = app.add_subcommand("validate", "Check a log and knowledge base");
  add_log_flags(validate, config);
  validate->add_option("--kb", config.kb_path, "Knowledge base (JSON)");
  validate->add_option("--out", config.out_path, "Output file");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic event log");
  synth->add_option("--spec", config.spec_path, "Generator spec (JSON)");
  synth->add_option("--seed", config.seed, "Overrides the spec seed");
  synth->add_option("--out", config.out_path, "Output file");
  synth->add_option("--time-format", config.synth_time_format,
                    "Timestamp layout");
  synth->add_option("--delimiter", config.delimiter, "Field delimiter");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (describe->parsed()) return cmd_describe(config, out, err);
    if (discover->parsed()) return cmd_discover(config, out, err);
    if (validate->parsed()) return cmd_validate(config, out, err);
    return cmd_synth(config, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace protoform::cli
