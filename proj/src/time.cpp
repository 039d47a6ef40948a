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

#include "protoform/time.hpp"

#include <chrono>
#include <cstdio>

#include "protoform/error.hpp"

namespace protoform {

namespace {

bool valid_date(int year, unsigned month, unsigned day) {
  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{month},
                                        std::chrono::day{day}};
  return ymd.ok();
}

std::optional<unsigned> read_digits(std::string_view text, std::size_t& pos,
                                    std::size_t width) {
  if (pos + width > text.size()) return std::nullopt;
  unsigned value = 0;
  for (std::size_t i = 0; i < width; ++i) {
    const char ch = text[pos + i];
    if (ch < '0' || ch > '9') return std::nullopt;
    value = value * 10 + static_cast<unsigned>(ch - '0');
  }
  pos += width;
  return value;
}

void append_padded(std::string& out, long long value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*lld", width, value);
  out += buf;
}

}  // namespace

Instant make_instant(int year, unsigned month, unsigned day, unsigned hour,
                     unsigned minute, unsigned second) {
  using namespace std::chrono;
  const sys_days days{year_month_day{std::chrono::year{year},
                                     std::chrono::month{month},
                                     std::chrono::day{day}}};
  return Instant{static_cast<std::int64_t>(days.time_since_epoch().count()) *
                     86400 +
                 static_cast<std::int64_t>(hour) * 3600 + minute * 60 + second};
}

TimestampFormat::TimestampFormat(std::string_view pattern)
    : pattern_(pattern) {
  bool seen_hour = false;
  std::size_t i = 0;
  auto starts = [&](std::string_view token) {
    return pattern.substr(i, token.size()) == token;
  };
  while (i < pattern.size()) {
    if (starts("YYYY")) {
      tokens_.push_back({Field::kYear, {}});
      i += 4;
    } else if (starts("MM")) {
      tokens_.push_back({seen_hour ? Field::kMinute : Field::kMonth, {}});
      i += 2;
    } else if (starts("DD")) {
      tokens_.push_back({Field::kDay, {}});
      i += 2;
    } else if (starts("HH")) {
      tokens_.push_back({Field::kHour, {}});
      seen_hour = true;
      i += 2;
    } else if (starts("SS")) {
      tokens_.push_back({Field::kSecond, {}});
      i += 2;
    } else {
      if (tokens_.empty() || tokens_.back().field != Field::kLiteral)
        tokens_.push_back({Field::kLiteral, {}});
      tokens_.back().literal += pattern[i];
      ++i;
    }
  }
  bool has_year = false;
  for (const auto& t : tokens_) has_year = has_year || t.field == Field::kYear;
  if (!has_year)
    throw ConfigError("timestamp format '" + pattern_ + "' has no YYYY field");
}

std::optional<Instant> TimestampFormat::parse(std::string_view text) const {
  int year = 1970;
  unsigned month = 1, day = 1, hour = 0, minute = 0, second = 0;
  std::size_t pos = 0;
  for (const auto& token : tokens_) {
    std::optional<unsigned> v;
    switch (token.field) {
      case Field::kLiteral:
        if (text.substr(pos, token.literal.size()) != token.literal)
          return std::nullopt;
        pos += token.literal.size();
        continue;
      case Field::kYear:
        v = read_digits(text, pos, 4);
        if (v) year = static_cast<int>(*v);
        break;
      case Field::kMonth:
        v = read_digits(text, pos, 2);
        if (v) month = *v;
        break;
      case Field::kDay:
        v = read_digits(text, pos, 2);
        if (v) day = *v;
        break;
      case Field::kHour:
        v = read_digits(text, pos, 2);
        if (v) hour = *v;
        break;
      case Field::kMinute:
        v = read_digits(text, pos, 2);
        if (v) minute = *v;
        break;
      case Field::kSecond:
        v = read_digits(text, pos, 2);
        if (v) second = *v;
        break;
    }
    if (!v) return std::nullopt;
  }
  if (pos != text.size()) return std::nullopt;
  if (!valid_date(year, month, day) || hour > 23 || minute > 59 || second > 59)
    return std::nullopt;
  return make_instant(year, month, day, hour, minute, second);
}

std::string TimestampFormat::format(Instant instant) const {
  using namespace std::chrono;
  const auto total = instant.seconds;
  auto days_count = total / 86400;
  auto rem = total % 86400;
  if (rem < 0) {
    rem += 86400;
    --days_count;
  }
  const year_month_day ymd{sys_days{days{days_count}}};
  std::string out;
  for (const auto& token : tokens_) {
    switch (token.field) {
      case Field::kLiteral:
        out += token.literal;
        break;
      case Field::kYear:
        append_padded(out, static_cast<int>(ymd.year()), 4);
        break;
      case Field::kMonth:
        append_padded(out, static_cast<unsigned>(ymd.month()), 2);
        break;
      case Field::kDay:
        append_padded(out, static_cast<unsigned>(ymd.day()), 2);
        break;
      case Field::kHour:
        append_padded(out, rem / 3600, 2);
        break;
      case Field::kMinute:
        append_padded(out, rem % 3600 / 60, 2);
        break;
      case Field::kSecond:
        append_padded(out, rem % 60, 2);
        break;
    }
  }
  return out;
}

std::optional<Instant> parse_iso8601(std::string_view text) {
  if (!text.empty() && text.back() == 'Z') text.remove_suffix(1);
  static const TimestampFormat kDate("YYYY-MM-DD");
  static const TimestampFormat kMinutes("YYYY-MM-DDTHH:MM");
  static const TimestampFormat kSeconds("YYYY-MM-DDTHH:MM:SS");
  std::string normalized(text);
  if (normalized.size() > 10 && normalized[10] == ' ') normalized[10] = 'T';
  for (const auto* format : {&kSeconds, &kMinutes, &kDate}) {
    if (auto instant = format->parse(normalized)) return instant;
  }
  return std::nullopt;
}

std::string format_iso8601(Instant instant) {
  static const TimestampFormat kSeconds("YYYY-MM-DDTHH:MM:SS");
  return kSeconds.format(instant) + "Z";
}

}  // namespace protoform
