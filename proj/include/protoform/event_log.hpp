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

#ifndef PROTOFORM_EVENT_LOG_HPP_
#define PROTOFORM_EVENT_LOG_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "protoform/time.hpp"

namespace protoform {

enum class AttributeKind { kNumeric, kCategory, kInstant };
enum class AttributeScope { kCase, kEvent };

std::string_view to_string(AttributeKind kind);
std::optional<AttributeKind> attribute_kind_from_string(std::string_view name);

using AttributeValue = std::variant<double, std::string, Instant>;
using AttributeMap = std::map<std::string, AttributeValue>;

AttributeKind kind_of(const AttributeValue& value);
std::string to_string(const AttributeValue& value);

struct AttributeInfo {
  AttributeKind kind = AttributeKind::kCategory;
  AttributeScope scope = AttributeScope::kCase;
  bool derived = false;

  friend bool operator==(const AttributeInfo&, const AttributeInfo&) = default;
};

using AttributeSchema = std::map<std::string, AttributeInfo>;

struct Event {
  std::string activity;
  Instant timestamp;
  AttributeMap attributes;

  friend bool operator==(const Event&, const Event&) = default;
};

struct Case {
  std::string id;
  std::vector<Event> trace;
  AttributeMap attributes;
  AttributeMap derived_attributes;

  // Raw attributes first, then derived ones. Null when absent.
  const AttributeValue* find_attribute(std::string_view name) const;
  // Timestamp of the first event; the case's anchor in time.
  Instant start() const;
  Instant end() const;

  friend bool operator==(const Case&, const Case&) = default;
};

// A multiset of cases with their activity alphabet and attribute schema.
// Immutable once built; traces are stable-sorted by timestamp on
// construction and case ids must be unique.
class EventLog {
 public:
  EventLog() = default;
  EventLog(std::vector<Case> cases, AttributeSchema schema);

  const std::vector<Case>& cases() const { return cases_; }
  const std::set<std::string>& activity_alphabet() const { return alphabet_; }
  const AttributeSchema& schema() const { return schema_; }
  std::size_t size() const { return cases_.size(); }
  bool empty() const { return cases_.empty(); }
  std::size_t event_count() const;

  const Case* find_case(std::string_view id) const;

  friend bool operator==(const EventLog& lhs, const EventLog& rhs) {
    return lhs.cases_ == rhs.cases_ && lhs.schema_ == rhs.schema_;
  }

 private:
  std::vector<Case> cases_;
  std::set<std::string> alphabet_;
  AttributeSchema schema_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct WriteOptions {
  std::string timestamp_format = "YYYY-MM-DD HH:MM:SS";
  char delimiter = ',';
};

struct ColumnRole {
  enum class Role { kCaseAttribute, kEventAttribute, kIgnore };
  Role role = Role::kCaseAttribute;
  // Defaults to the column name.
  std::string attribute;
  // Inferred from the column values when unset.
  std::optional<AttributeKind> kind;
};

// How the columns of a delimited file map onto the event log model.
//
// Columns without an explicit role are inferred: "case_<name>" becomes the
// case-level attribute <name>, "event_<name>" the event-level attribute
// <name>, anything else an event-level attribute named after the column.
// Inferred kinds are numeric when every non-empty value is a number, instant
// when every value is ISO-8601, and category otherwise.
struct ColumnMapping {
  std::string case_id_column = "case_id";
  std::string activity_column = "event_activity";
  std::string timestamp_column = "event_time";
  std::string timestamp_format = "YYYY-MM-DD HH:MM";
  char delimiter = ',';
  std::map<std::string, ColumnRole> columns;

  // Explicit roles reproducing the column layout write_event_log emits.
  static ColumnMapping for_schema(const AttributeSchema& schema,
                                  const WriteOptions& options);
  static ColumnMapping for_schema(const AttributeSchema& schema);
};

struct ParseOptions {
  // When false, conflicting case-level values and values that do not match
  // an explicitly declared kind are kept (the conflicting value is recorded on
  // the event) so validate_log can report them.
  bool strict = true;
};

EventLog parse_event_log(std::istream& source, const ColumnMapping& mapping,
                         const ParseOptions& options = {});
EventLog parse_event_log(std::string_view text, const ColumnMapping& mapping,
                         const ParseOptions& options = {});

// Writes raw (non-derived) data in the layout described by
// ColumnMapping::for_schema.
void write_event_log(std::ostream& out, const EventLog& log,
                     const WriteOptions& options = {});
std::string write_event_log(const EventLog& log,
                            const WriteOptions& options = {});

enum class FindingLevel { kInfo, kWarning, kError };
std::string_view to_string(FindingLevel level);

struct Finding {
  FindingLevel level = FindingLevel::kError;
  std::string subject;  // case id or variable name
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool has_errors() const;
  std::size_t size() const { return findings.size(); }
  bool empty() const { return findings.empty(); }
};

ValidationReport validate_log(const EventLog& log);

// Content hash of the canonical serialization, as 16 hex digits (FNV-1a).
std::string log_digest(const EventLog& log);

}  // namespace protoform

#endif  // PROTOFORM_EVENT_LOG_HPP_
