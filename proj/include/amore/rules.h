/*
 * Copyright 2026 The amore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AMORE_RULES_H_
#define AMORE_RULES_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "amore/ratio.h"
#include "amore/table.h"

namespace amore {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// Value range lo <= x < hi. Either side may be unbounded (+-infinity), which
// is how intervals touching the first or last grid are emitted; the bounded
// upper side is exclusive so that a rule selects exactly the rows of the
// grids it was built from.
struct Interval {
  double lo = -kUnbounded;
  double hi = kUnbounded;

  bool contains(double v) const { return v >= lo && v < hi; }
  bool has_lo() const { return lo != -kUnbounded; }
  bool has_hi() const { return hi != kUnbounded; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct CategoryEquals {
  std::string token;

  friend bool operator==(const CategoryEquals&, const CategoryEquals&) = default;
};

// A predicate on one column.
struct Rule {
  size_t feature = 0;
  std::variant<Interval, CategoryEquals> predicate;

  bool is_interval() const {
    return std::holds_alternative<Interval>(predicate);
  }
  const Interval& interval() const { return std::get<Interval>(predicate); }
  const CategoryEquals& category() const {
    return std::get<CategoryEquals>(predicate);
  }

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct RuleStats {
  int64_t support = 0;
  // Satisfying rows that are in the target.
  int64_t target_hits = 0;
  // Target size over the whole table.
  int64_t target_count = 0;
  double confidence = 0.0;
  double fitness = 0.0;
  // Ratio accepted at each extraction step, in extraction order.
  std::vector<CountRatio> steps;

  int64_t false_hits() const { return support - target_hits; }
};

// Conjunction of rules, at most one per feature, in extraction order.
struct RuleSet {
  std::vector<Rule> rules;
  RuleStats stats;
};

// Rows satisfying the rule. Missing values never satisfy a rule. Throws
// SchemaError when the feature index is out of range or its kind does not
// match the predicate.
RowMask RuleMask(const DataTable& table, const Rule& rule);
// Rows satisfying every rule; all rows for an empty list.
RowMask RuleSetMask(const DataTable& table, std::span<const Rule> rules);

// Rules sorted by feature index; used as the identity of a conjunction.
std::vector<Rule> CanonicalRules(std::span<const Rule> rules);

// Human-readable predicate, e.g. "age >= 40", "2.5 <= x < 7.5", "sex == F".
// Bounds are printed with 6 significant digits.
std::string DescribeRule(const DataTable& table, const Rule& rule);

}  // namespace amore

#endif  // AMORE_RULES_H_
