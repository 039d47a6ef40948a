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

#ifndef PROTOFORM_FUZZY_HPP_
#define PROTOFORM_FUZZY_HPP_

#include <compare>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "protoform/event_log.hpp"

namespace protoform {

// A degree of truth or membership in [0, 1].
class TruthDegree {
 public:
  constexpr TruthDegree() = default;
  // Throws ContractViolation outside [0, 1] (NaN included).
  explicit TruthDegree(double value);

  constexpr double value() const { return value_; }

  friend constexpr auto operator<=>(TruthDegree, TruthDegree) = default;

 private:
  double value_ = 0.0;
};

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// Trapezoid T[a,b,c,d] with a <= b <= c <= d.
//
//   0                x <= a or x > d
//   (x-a)/(b-a)      a < x <= b
//   1                b < x <= c
//   (d-x)/(d-c)      c < x <= d
//
// A degenerate left side (a == b) is a step that includes b, so crisp values
// written as T[s,s,e,e] hold exactly on [s, e]. A degenerate right side keeps
// the formula as is. Open shoulders use a = b = -inf or c = d = +inf;
// a lone infinite a or d is rejected.
class TrapezoidalMembership {
 public:
  TrapezoidalMembership(double a, double b, double c, double d);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

  double evaluate(double x) const {
    if (x > d_ || x != x) return 0.0;
    if (a_ == b_) {
      if (x < b_) return 0.0;
    } else {
      if (x <= a_) return 0.0;
      if (x <= b_) return (x - a_) / (b_ - a_);
    }
    if (x <= c_) return 1.0;
    return (d_ - x) / (d_ - c_);
  }

  friend bool operator==(const TrapezoidalMembership&,
                         const TrapezoidalMembership&) = default;

 private:
  double a_, b_, c_, d_;
};

TruthDegree membership(const TrapezoidalMembership& shape, double x);

struct CrispCategory {
  std::string label;

  friend bool operator==(const CrispCategory&, const CrispCategory&) = default;
};

// Half-open [start, end). Instants are compared through their seconds.
struct CrispInterval {
  double start;
  double end;

  friend bool operator==(const CrispInterval&, const CrispInterval&) = default;
};

using ValueShape = std::variant<TrapezoidalMembership, CrispCategory, CrispInterval>;

class LinguisticValue {
 public:
  LinguisticValue(std::string name, ValueShape shape);

  const std::string& name() const { return name_; }
  const ValueShape& shape() const { return shape_; }
  bool is_crisp() const {
    return !std::holds_alternative<TrapezoidalMembership>(shape_);
  }

  // Degree to which an attribute value has this property. Throws
  // EvaluationError when the value kind cannot be compared with the shape.
  double evaluate(const AttributeValue& x) const;

  friend bool operator==(const LinguisticValue&, const LinguisticValue&) = default;

 private:
  std::string name_;
  ValueShape shape_;
};

// 1 when x equals the category label (after NFC and trimming) or lies in the
// interval, 0 otherwise. ContractViolation for trapezoid values.
TruthDegree crisp_membership(const LinguisticValue& value, const AttributeValue& x);

struct LinguisticVariable {
  std::string name;
  std::string attribute;
  std::vector<LinguisticValue> values;
  // Realization of "<value> applied to this variable", with {value} standing
  // for the value name. Empty means "{value} <name>".
  std::string phrase;
  // Used instead of phrase when the same variable is mentioned a second time
  // in one sentence. Empty means phrase.
  std::string repeat_phrase;
  // Which statement slots the variable may fill.
  enum class Role { kBoth, kQualifier, kSummarizer };
  Role role = Role::kBoth;

  bool qualifies() const { return role != Role::kSummarizer; }
  bool summarizes() const { return role != Role::kQualifier; }

  const LinguisticValue* find(std::string_view value_name) const;
};

enum class Monotonicity { kNonDecreasing, kNonIncreasing, kUnimodal };

std::string_view to_string(Monotonicity monotonicity);
std::optional<Monotonicity> monotonicity_from_string(std::string_view name);

// Fuzzy quantifier over proportions in [0, 1] (Zadeh's model).
class Quantifier {
 public:
  // The flag is inferred from the trapezoid when not declared; a declared
  // flag that the trapezoid contradicts is a ConfigError.
  Quantifier(std::string name, TrapezoidalMembership shape,
             std::optional<Monotonicity> declared = std::nullopt);

  const std::string& name() const { return name_; }
  const TrapezoidalMembership& shape() const { return shape_; }
  Monotonicity monotonicity() const { return monotonicity_; }

 private:
  std::string name_;
  TrapezoidalMembership shape_;
  Monotonicity monotonicity_;
};

// ContractViolation when proportion is outside [0, 1].
TruthDegree quantifier_eval(const Quantifier& q, double proportion);

// ContractViolation on an empty list.
TruthDegree t_norm_min(std::span<const TruthDegree> degrees);
TruthDegree t_norm_min(std::initializer_list<TruthDegree> degrees);

// Invariant violations, coverage gaps and ordering problems of a partition.
ValidationReport validate_partition(const LinguisticVariable& variable);

}  // namespace protoform

#endif  // PROTOFORM_FUZZY_HPP_
