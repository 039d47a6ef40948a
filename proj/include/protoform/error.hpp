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

#ifndef PROTOFORM_ERROR_HPP_
#define PROTOFORM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace protoform {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed delimited text or timestamp. Carries the 1-based source line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Data that parsed but breaks a model invariant (e.g. conflicting
// case-level attribute values).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Bad knowledge base, mapping, generator spec or command-line settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Unknown activity or attribute name.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Caller broke an operation precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Membership or truth evaluation failed for a specific value (kind mismatch,
// attribute that is not case-level, ...).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// A statement over an empty referential.
class VacuousStatementError : public Error {
 public:
  using Error::Error;
};

}  // namespace protoform

#endif  // PROTOFORM_ERROR_HPP_
