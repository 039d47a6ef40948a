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

#ifndef PROTOFORM_TIME_HPP_
#define PROTOFORM_TIME_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace protoform {

// Seconds since 1970-01-01T00:00:00 UTC. Timestamps carry no zone.
struct Instant {
  std::int64_t seconds = 0;

  friend auto operator<=>(const Instant&, const Instant&) = default;
};

inline double operator-(Instant lhs, Instant rhs) {
  return static_cast<double>(lhs.seconds - rhs.seconds);
}

Instant make_instant(int year, unsigned month, unsigned day, unsigned hour = 0,
                     unsigned minute = 0, unsigned second = 0);

// A timestamp layout such as "YYYY-MM-DD HH:MM".
//
// Recognized fields: YYYY (year), MM (month, or minute once an HH field has
// been seen), DD (day), HH (hour, 24h), SS (second). Every other character
// is a literal that must match exactly. Missing fields default to the start
// of the enclosing unit.
class TimestampFormat {
 public:
  explicit TimestampFormat(std::string_view pattern = "YYYY-MM-DD HH:MM");

  std::optional<Instant> parse(std::string_view text) const;
  std::string format(Instant instant) const;
  const std::string& pattern() const { return pattern_; }

 private:
  enum class Field { kLiteral, kYear, kMonth, kDay, kHour, kMinute, kSecond };
  struct Token {
    Field field;
    std::string literal;
  };

  std::string pattern_;
  std::vector<Token> tokens_;
};

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM", "YYYY-MM-DDTHH:MM:SS", the same
// with a space separator, and an optional trailing "Z".
std::optional<Instant> parse_iso8601(std::string_view text);
std::string format_iso8601(Instant instant);

}  // namespace protoform

#endif  // PROTOFORM_TIME_HPP_
