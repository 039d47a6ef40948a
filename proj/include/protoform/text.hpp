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

#ifndef PROTOFORM_TEXT_HPP_
#define PROTOFORM_TEXT_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace protoform {

// Unicode NFC normalization followed by trimming of surrounding whitespace.
// Invalid UTF-8 is trimmed but otherwise passed through unchanged.
std::string normalize_label(std::string_view text);

std::string_view trim(std::string_view text);

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

// Strict parse: the whole (trimmed) text must be a finite decimal number.
std::optional<double> parse_number(std::string_view text);

}  // namespace protoform

#endif  // PROTOFORM_TEXT_HPP_
