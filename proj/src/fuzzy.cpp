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

#include "protoform/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "protoform/error.hpp"
#include "protoform/text.hpp"

namespace protoform {

TruthDegree::TruthDegree(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw ContractViolation("truth degree " + format_number(value) +
                            " outside [0, 1]");
}

TrapezoidalMembership::TrapezoidalMembership(double a, double b, double c,
                                             double d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (std::isnan(a) || std::isnan(b) || std::isnan(c) || std::isnan(d))
    throw ConfigError("trapezoid with NaN parameter");
  if (!(a <= b && b <= c && c <= d))
    throw ConfigError("trapezoid [" + format_number(a) + ", " +
                      format_number(b) + ", " + format_number(c) + ", " +
                      format_number(d) + "] needs a <= b <= c <= d");
  if ((std::isinf(a) && a != b) || a == kUnbounded)
    throw ConfigError("open left shoulder needs a = b = -inf");
  if ((std::isinf(d) && c != d) || d == -kUnbounded)
    throw ConfigError("open right shoulder needs c = d = +inf");
}

TruthDegree membership(const TrapezoidalMembership& shape, double x) {
  return TruthDegree(shape.evaluate(x));
}

LinguisticValue::LinguisticValue(std::string name, ValueShape shape)
    : name_(std::move(name)), shape_(std::move(shape)) {
  if (name_.empty()) throw ConfigError("linguistic value without a name");
  if (auto* interval = std::get_if<CrispInterval>(&shape_)) {
    if (!(interval->start < interval->end))
      throw ConfigError("crisp interval of '" + name_ + "' needs start < end");
  }
  if (auto* category = std::get_if<CrispCategory>(&shape_))
    category->label = normalize_label(category->label);
}

namespace {

std::optional<double> as_number(const AttributeValue& x) {
  if (const auto* number = std::get_if<double>(&x)) return *number;
  if (const auto* instant = std::get_if<Instant>(&x))
    return static_cast<double>(instant->seconds);
  return std::nullopt;
}

}  // namespace

double LinguisticValue::evaluate(const AttributeValue& x) const {
  if (const auto* category = std::get_if<CrispCategory>(&shape_)) {
    const auto* text = std::get_if<std::string>(&x);
    if (!text)
      throw EvaluationError("category value '" + name_ +
                            "' compared with non-category " + to_string(x));
    return normalize_label(*text) == category->label ? 1.0 : 0.0;
  }
  const auto number = as_number(x);
  if (!number)
    throw EvaluationError("value '" + name_ +
                          "' compared with category '" + to_string(x) + "'");
  if (const auto* interval = std::get_if<CrispInterval>(&shape_))
    return *number >= interval->start && *number < interval->end ? 1.0 : 0.0;
  return std::get<TrapezoidalMembership>(shape_).evaluate(*number);
}

TruthDegree crisp_membership(const LinguisticValue& value,
                             const AttributeValue& x) {
  if (!value.is_crisp())
    throw ContractViolation("crisp_membership on trapezoid value '" +
                            value.name() + "'");
  return TruthDegree(value.evaluate(x));
}

const LinguisticValue* LinguisticVariable::find(std::string_view value_name) const {
  for (const auto& value : values)
    if (value.name() == value_name) return &value;
  return nullptr;
}

std::string_view to_string(Monotonicity monotonicity) {
  switch (monotonicity) {
    case Monotonicity::kNonDecreasing:
      return "non-decreasing";
    case Monotonicity::kNonIncreasing:
      return "non-increasing";
    case Monotonicity::kUnimodal:
      return "unimodal";
  }
  return "unimodal";
}

std::optional<Monotonicity> monotonicity_from_string(std::string_view name) {
  if (name == "non-decreasing") return Monotonicity::kNonDecreasing;
  if (name == "non-increasing") return Monotonicity::kNonIncreasing;
  if (name == "unimodal") return Monotonicity::kUnimodal;
  return std::nullopt;
}

Quantifier::Quantifier(std::string name, TrapezoidalMembership shape,
                       std::optional<Monotonicity> declared)
    : name_(std::move(name)), shape_(shape) {
  if (name_.empty()) throw ConfigError("quantifier without a name");
  if (shape.a() < 0.0 || shape.d() > 1.0)
    throw ConfigError("quantifier '" + name_ + "' must live inside [0, 1]");
  const bool rising = shape.c() == 1.0 && shape.d() == 1.0;
  const bool falling = shape.a() == 0.0 && shape.b() == 0.0;
  if (!declared) {
    monotonicity_ = rising    ? Monotonicity::kNonDecreasing
                    : falling ? Monotonicity::kNonIncreasing
                              : Monotonicity::kUnimodal;
    return;
  }
  const bool consistent =
      (*declared == Monotonicity::kNonDecreasing && rising) ||
      (*declared == Monotonicity::kNonIncreasing && falling) ||
      (*declared == Monotonicity::kUnimodal && !rising && !falling);
  if (!consistent)
    throw ConfigError("quantifier '" + name_ + "' is declared " +
                      std::string(to_string(*declared)) +
                      " but its trapezoid says otherwise");
  monotonicity_ = *declared;
}

TruthDegree quantifier_eval(const Quantifier& q, double proportion) {
  if (!(proportion >= 0.0 && proportion <= 1.0))
    throw ContractViolation("proportion " + format_number(proportion) +
                            " outside [0, 1]");
  return TruthDegree(q.shape().evaluate(proportion));
}

TruthDegree t_norm_min(std::span<const TruthDegree> degrees) {
  if (degrees.empty()) throw ContractViolation("t_norm_min of an empty list");
  return *std::min_element(degrees.begin(), degrees.end());
}

TruthDegree t_norm_min(std::initializer_list<TruthDegree> degrees) {
  return t_norm_min(std::span<const TruthDegree>(degrees.begin(), degrees.size()));
}

namespace {

// Where a value's membership is strictly positive.
struct Support {
  double lo;
  bool lo_closed;
  double hi;
  bool hi_closed;
  std::string name;
};

std::optional<Support> support_of(const LinguisticValue& value) {
  if (const auto* t = std::get_if<TrapezoidalMembership>(&value.shape())) {
    return Support{t->a(), t->a() == t->b(), t->d(), t->c() == t->d(),
                   value.name()};
  }
  if (const auto* i = std::get_if<CrispInterval>(&value.shape()))
    return Support{i->start, true, i->end, false, value.name()};
  return std::nullopt;
}

std::string describe_gap(double lo, bool lo_open, double hi, bool hi_open) {
  return std::string(lo_open ? "(" : "[") + format_number(lo) + ", " +
         format_number(hi) + (hi_open ? ")" : "]");
}

}  // namespace

ValidationReport validate_partition(const LinguisticVariable& variable) {
  ValidationReport report;
  auto add = [&](FindingLevel level, std::string message) {
    report.findings.push_back({level, variable.name, std::move(message)});
  };
  if (variable.name.empty()) add(FindingLevel::kError, "variable without a name");
  if (variable.values.empty()) {
    add(FindingLevel::kError, "variable has no values");
    return report;
  }
  std::set<std::string> names;
  for (const auto& value : variable.values)
    if (!names.insert(value.name()).second)
      add(FindingLevel::kError, "duplicate value name '" + value.name() + "'");

  const bool fuzzy = !variable.values.front().is_crisp();
  for (const auto& value : variable.values) {
    if (value.is_crisp() == fuzzy) {
      add(FindingLevel::kError,
          "value '" + value.name() + "' mixes trapezoid and crisp shapes");
      return report;
    }
  }
  if (std::holds_alternative<CrispCategory>(variable.values.front().shape())) {
    for (const auto& value : variable.values)
      if (!std::holds_alternative<CrispCategory>(value.shape()))
        add(FindingLevel::kError,
            "value '" + value.name() + "' mixes category and interval shapes");
    return report;
  }

  for (std::size_t i = 1; i < variable.values.size(); ++i) {
    const auto& prev = variable.values[i - 1];
    const auto& next = variable.values[i];
    bool ordered = true;
    if (const auto* p = std::get_if<TrapezoidalMembership>(&prev.shape())) {
      const auto& n = std::get<TrapezoidalMembership>(next.shape());
      ordered = p->b() <= n.b() && p->c() <= n.c();
    } else if (const auto* p = std::get_if<CrispInterval>(&prev.shape())) {
      if (const auto* n = std::get_if<CrispInterval>(&next.shape()))
        ordered = p->start <= n->start;
    }
    if (!ordered)
      add(FindingLevel::kWarning, "value '" + next.name() +
                                      "' is declared after '" + prev.name() +
                                      "' but lies before it");
  }

  std::vector<Support> supports;
  for (const auto& value : variable.values)
    if (auto support = support_of(value)) supports.push_back(*support);
  if (supports.empty()) return report;
  std::sort(supports.begin(), supports.end(),
            [](const Support& lhs, const Support& rhs) {
              return std::tie(lhs.lo, rhs.lo_closed) <
                     std::tie(rhs.lo, lhs.lo_closed);
            });
  double reach = supports.front().hi;
  bool reach_closed = supports.front().hi_closed;
  for (std::size_t i = 1; i < supports.size(); ++i) {
    const auto& s = supports[i];
    const bool gap = s.lo > reach ||
                     (s.lo == reach && !reach_closed && !s.lo_closed);
    if (gap)
      add(FindingLevel::kError,
          "gap over " + describe_gap(reach, reach_closed, s.lo, s.lo_closed) +
              ": no value has positive membership there");
    if (s.hi > reach || (s.hi == reach && s.hi_closed)) {
      reach = s.hi;
      reach_closed = s.hi_closed;
    }
  }
  return report;
}

}  // namespace protoform
