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

#include "protoform/event_log.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "protoform/error.hpp"
#include "protoform/text.hpp"

namespace protoform {

std::string_view to_string(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::kNumeric:
      return "numeric";
    case AttributeKind::kCategory:
      return "category";
    case AttributeKind::kInstant:
      return "instant";
  }
  return "category";
}

std::optional<AttributeKind> attribute_kind_from_string(std::string_view name) {
  if (name == "numeric") return AttributeKind::kNumeric;
  if (name == "category") return AttributeKind::kCategory;
  if (name == "instant") return AttributeKind::kInstant;
  return std::nullopt;
}

AttributeKind kind_of(const AttributeValue& value) {
  switch (value.index()) {
    case 0:
      return AttributeKind::kNumeric;
    case 1:
      return AttributeKind::kCategory;
    default:
      return AttributeKind::kInstant;
  }
}

std::string to_string(const AttributeValue& value) {
  if (const auto* number = std::get_if<double>(&value))
    return format_number(*number);
  if (const auto* text = std::get_if<std::string>(&value)) return *text;
  return format_iso8601(std::get<Instant>(value));
}

const AttributeValue* Case::find_attribute(std::string_view name) const {
  const std::string key(name);
  if (auto it = attributes.find(key); it != attributes.end())
    return &it->second;
  if (auto it = derived_attributes.find(key); it != derived_attributes.end())
    return &it->second;
  return nullptr;
}

Instant Case::start() const {
  return trace.empty() ? Instant{} : trace.front().timestamp;
}

Instant Case::end() const {
  return trace.empty() ? Instant{} : trace.back().timestamp;
}

EventLog::EventLog(std::vector<Case> cases, AttributeSchema schema)
    : cases_(std::move(cases)), schema_(std::move(schema)) {
  for (std::size_t i = 0; i < cases_.size(); ++i) {
    auto& c = cases_[i];
    if (!index_.emplace(c.id, i).second)
      throw ValidationError("duplicate case id '" + c.id + "'");
    std::stable_sort(c.trace.begin(), c.trace.end(),
                     [](const Event& lhs, const Event& rhs) {
                       return lhs.timestamp < rhs.timestamp;
                     });
    for (const auto& event : c.trace) alphabet_.insert(event.activity);
  }
}

std::size_t EventLog::event_count() const {
  std::size_t total = 0;
  for (const auto& c : cases_) total += c.trace.size();
  return total;
}

const Case* EventLog::find_case(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &cases_[it->second];
}

namespace {

struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

std::vector<std::string> split_record(std::string_view line, char delimiter,
                                      std::size_t line_number) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"' && trim(field).empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
      field.clear();
    } else if (ch == delimiter) {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else if (!was_quoted) {
      field += ch;
    } else if (ch != ' ' && ch != '\t') {
      throw ParseError(line_number, "unexpected character after quoted field");
    }
  }
  if (quoted) throw ParseError(line_number, "unterminated quoted field");
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

std::optional<AttributeValue> convert(const std::string& raw,
                                      AttributeKind kind) {
  switch (kind) {
    case AttributeKind::kNumeric:
      if (auto number = parse_number(raw)) return AttributeValue{*number};
      return std::nullopt;
    case AttributeKind::kInstant:
      if (auto instant = parse_iso8601(trim(raw))) return AttributeValue{*instant};
      return std::nullopt;
    case AttributeKind::kCategory:
      return AttributeValue{normalize_label(raw)};
  }
  return std::nullopt;
}

AttributeKind infer_kind(const std::vector<Row>& rows, std::size_t column) {
  bool numeric = true;
  bool instant = true;
  bool any = false;
  for (const auto& row : rows) {
    const auto& raw = row.fields[column];
    if (trim(raw).empty()) continue;
    any = true;
    numeric = numeric && parse_number(raw).has_value();
    instant = instant && parse_iso8601(trim(raw)).has_value();
    if (!numeric && !instant) break;
  }
  if (!any) return AttributeKind::kCategory;
  if (numeric) return AttributeKind::kNumeric;
  if (instant) return AttributeKind::kInstant;
  return AttributeKind::kCategory;
}

bool needs_quotes(std::string_view field, char delimiter) {
  return field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) !=
             std::string_view::npos ||
         trim(field).size() != field.size();
}

void write_field(std::ostream& out, std::string_view field, char delimiter) {
  if (!needs_quotes(field, delimiter)) {
    out << field;
    return;
  }
  out << '"';
  for (const char ch : field) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

struct AttributeColumn {
  std::size_t index;
  AttributeScope scope;
  std::string name;
  AttributeKind kind;
  bool explicit_kind;
};

}  // namespace

ColumnMapping ColumnMapping::for_schema(const AttributeSchema& schema,
                                        const WriteOptions& options) {
  ColumnMapping mapping;
  mapping.timestamp_format = options.timestamp_format;
  mapping.delimiter = options.delimiter;
  for (const auto& [name, info] : schema) {
    if (info.derived) continue;
    const bool case_level = info.scope == AttributeScope::kCase;
    mapping.columns[(case_level ? "case_" : "event_") + name] = ColumnRole{
        case_level ? ColumnRole::Role::kCaseAttribute
                   : ColumnRole::Role::kEventAttribute,
        name, info.kind};
  }
  return mapping;
}

ColumnMapping ColumnMapping::for_schema(const AttributeSchema& schema) {
  return for_schema(schema, WriteOptions{});
}

EventLog parse_event_log(std::istream& source, const ColumnMapping& mapping,
                         const ParseOptions& options) {
  const TimestampFormat time_format(mapping.timestamp_format);
  std::string line;
  std::size_t line_number = 0;
  std::vector<std::string> header;
  while (std::getline(source, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    header = split_record(line, mapping.delimiter, line_number);
    break;
  }
  if (header.empty()) throw ParseError(line_number, "missing header row");

  std::optional<std::size_t> case_col, activity_col, time_col;
  std::vector<AttributeColumn> attribute_columns;
  std::set<std::string> seen_columns;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& name = header[i];
    if (!seen_columns.insert(name).second)
      throw ConfigError("duplicate column '" + name + "' in header");
    if (name == mapping.case_id_column) {
      case_col = i;
      continue;
    }
    if (name == mapping.activity_column) {
      activity_col = i;
      continue;
    }
    if (name == mapping.timestamp_column) {
      time_col = i;
      continue;
    }
    ColumnRole role;
    if (auto it = mapping.columns.find(name); it != mapping.columns.end()) {
      role = it->second;
    } else if (name.rfind("case_", 0) == 0 && name.size() > 5) {
      role = {ColumnRole::Role::kCaseAttribute, name.substr(5), std::nullopt};
    } else if (name.rfind("event_", 0) == 0 && name.size() > 6) {
      role = {ColumnRole::Role::kEventAttribute, name.substr(6), std::nullopt};
    } else {
      role = {ColumnRole::Role::kEventAttribute, name, std::nullopt};
    }
    if (role.role == ColumnRole::Role::kIgnore) continue;
    if (role.attribute.empty()) role.attribute = name;
    attribute_columns.push_back(
        {i,
         role.role == ColumnRole::Role::kCaseAttribute ? AttributeScope::kCase
                                                       : AttributeScope::kEvent,
         role.attribute, role.kind.value_or(AttributeKind::kCategory),
         role.kind.has_value()});
  }
  if (!case_col)
    throw ConfigError("case id column '" + mapping.case_id_column +
                      "' not found in header");
  if (!activity_col)
    throw ConfigError("activity column '" + mapping.activity_column +
                      "' not found in header");
  if (!time_col)
    throw ConfigError("timestamp column '" + mapping.timestamp_column +
                      "' not found in header");

  std::vector<Row> rows;
  while (std::getline(source, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_record(line, mapping.delimiter, line_number);
    if (fields.size() != header.size())
      throw ParseError(line_number,
                       "expected " + std::to_string(header.size()) +
                           " fields, found " + std::to_string(fields.size()));
    rows.push_back({line_number, std::move(fields)});
  }

  AttributeSchema schema;
  for (auto& column : attribute_columns) {
    if (!column.explicit_kind) column.kind = infer_kind(rows, column.index);
    AttributeInfo info{column.kind, column.scope, false};
    auto [it, inserted] = schema.emplace(column.name, info);
    if (!inserted)
      throw ConfigError("attribute '" + column.name +
                        "' is mapped from more than one column");
  }

  std::vector<Case> cases;
  std::unordered_map<std::string, std::size_t> case_index;
  for (const auto& row : rows) {
    const std::string& case_id = row.fields[*case_col];
    const std::string activity = normalize_label(row.fields[*activity_col]);
    if (case_id.empty()) throw ParseError(row.line, "empty case id");
    if (activity.empty()) throw ParseError(row.line, "empty activity label");
    const auto timestamp = time_format.parse(trim(row.fields[*time_col]));
    if (!timestamp)
      throw ParseError(row.line, "cannot parse timestamp '" +
                                     row.fields[*time_col] + "' with format '" +
                                     mapping.timestamp_format + "'");

    auto [it, inserted] = case_index.emplace(case_id, cases.size());
    if (inserted) cases.push_back(Case{case_id, {}, {}, {}});
    Case& target = cases[it->second];
    Event event{activity, *timestamp, {}};

    for (const auto& column : attribute_columns) {
      const std::string& raw = row.fields[column.index];
      if (trim(raw).empty()) continue;
      auto value = convert(raw, column.kind);
      if (!value) {
        if (options.strict)
          throw ParseError(row.line, "value '" + raw + "' of attribute '" +
                                         column.name + "' is not " +
                                         std::string(to_string(column.kind)));
        value = AttributeValue{std::string(trim(raw))};
      }
      if (column.scope == AttributeScope::kEvent) {
        event.attributes[column.name] = std::move(*value);
        continue;
      }
      auto [slot, fresh] = target.attributes.emplace(column.name, *value);
      if (fresh || slot->second == *value) continue;
      if (options.strict)
        throw ValidationError("case '" + case_id + "' has conflicting values '" +
                              to_string(slot->second) + "' and '" +
                              to_string(*value) + "' for case attribute '" +
                              column.name + "' (line " +
                              std::to_string(row.line) + ")");
      event.attributes[column.name] = std::move(*value);
    }
    target.trace.push_back(std::move(event));
  }
  return EventLog(std::move(cases), std::move(schema));
}

EventLog parse_event_log(std::string_view text, const ColumnMapping& mapping,
                         const ParseOptions& options) {
  std::istringstream stream{std::string(text)};
  return parse_event_log(stream, mapping, options);
}

void write_event_log(std::ostream& out, const EventLog& log,
                     const WriteOptions& options) {
  const TimestampFormat time_format(options.timestamp_format);
  const char delimiter = options.delimiter;
  std::vector<std::string> case_attrs;
  std::vector<std::string> event_attrs;
  for (const auto& [name, info] : log.schema()) {
    if (info.derived) continue;
    (info.scope == AttributeScope::kCase ? case_attrs : event_attrs)
        .push_back(name);
  }
  out << "case_id" << delimiter << "event_activity" << delimiter
      << "event_time";
  for (const auto& name : case_attrs) {
    out << delimiter;
    write_field(out, "case_" + name, delimiter);
  }
  for (const auto& name : event_attrs) {
    out << delimiter;
    write_field(out, "event_" + name, delimiter);
  }
  out << '\n';
  for (const auto& c : log.cases()) {
    for (const auto& event : c.trace) {
      write_field(out, c.id, delimiter);
      out << delimiter;
      write_field(out, event.activity, delimiter);
      out << delimiter << time_format.format(event.timestamp);
      for (const auto& name : case_attrs) {
        out << delimiter;
        if (auto it = c.attributes.find(name); it != c.attributes.end())
          write_field(out, to_string(it->second), delimiter);
      }
      for (const auto& name : event_attrs) {
        out << delimiter;
        if (auto it = event.attributes.find(name); it != event.attributes.end())
          write_field(out, to_string(it->second), delimiter);
      }
      out << '\n';
    }
  }
}

std::string write_event_log(const EventLog& log, const WriteOptions& options) {
  std::ostringstream out;
  write_event_log(out, log, options);
  return out.str();
}

std::string_view to_string(FindingLevel level) {
  switch (level) {
    case FindingLevel::kInfo:
      return "info";
    case FindingLevel::kWarning:
      return "warning";
    case FindingLevel::kError:
      return "error";
  }
  return "error";
}

bool ValidationReport::has_errors() const {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) {
    return f.level == FindingLevel::kError;
  });
}

namespace {

void check_attribute(ValidationReport& report, const AttributeSchema& schema,
                     const std::string& case_id, const std::string& name,
                     const AttributeValue& value, AttributeScope scope) {
  auto it = schema.find(name);
  if (it == schema.end()) {
    report.findings.push_back({FindingLevel::kError, case_id,
                               "attribute '" + name + "' is not in the schema"});
    return;
  }
  if (it->second.scope != scope && scope == AttributeScope::kCase)
    report.findings.push_back(
        {FindingLevel::kError, case_id,
         "event-level attribute '" + name + "' stored on the case"});
  if (kind_of(value) != it->second.kind)
    report.findings.push_back(
        {FindingLevel::kError, case_id,
         "attribute '" + name + "' holds " +
             std::string(to_string(kind_of(value))) + " value '" +
             to_string(value) + "' but is declared " +
             std::string(to_string(it->second.kind))});
}

}  // namespace

ValidationReport validate_log(const EventLog& log) {
  ValidationReport report;
  const auto& schema = log.schema();
  for (const auto& c : log.cases()) {
    if (c.trace.empty()) {
      report.findings.push_back({FindingLevel::kError, c.id, "empty trace"});
      continue;
    }
    for (std::size_t i = 1; i < c.trace.size(); ++i) {
      if (c.trace[i].timestamp < c.trace[i - 1].timestamp) {
        report.findings.push_back(
            {FindingLevel::kError, c.id,
             "trace is not ordered by timestamp at position " +
                 std::to_string(i)});
        break;
      }
    }
    for (const auto& [name, value] : c.attributes)
      check_attribute(report, schema, c.id, name, value, AttributeScope::kCase);
    for (const auto& [name, value] : c.derived_attributes)
      check_attribute(report, schema, c.id, name, value, AttributeScope::kCase);
    for (const auto& event : c.trace) {
      if (event.activity.empty())
        report.findings.push_back(
            {FindingLevel::kError, c.id, "event with empty activity label"});
      for (const auto& [name, value] : event.attributes) {
        auto it = schema.find(name);
        if (it != schema.end() && it->second.scope == AttributeScope::kCase) {
          auto own = c.attributes.find(name);
          if (own == c.attributes.end() || own->second != value)
            report.findings.push_back(
                {FindingLevel::kError, c.id,
                 "case attribute '" + name + "' is not constant: '" +
                     (own == c.attributes.end() ? std::string()
                                                : to_string(own->second)) +
                     "' vs '" + to_string(value) + "'"});
          continue;
        }
        check_attribute(report, schema, c.id, name, value,
                        AttributeScope::kEvent);
      }
    }
  }
  return report;
}

std::string log_digest(const EventLog& log) {
  const std::string canonical = write_event_log(log);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : canonical) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace protoform
