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

#include "amore/rules.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "amore/error.h"

namespace amore {
namespace {

std::string Short(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

const FeatureColumn& CheckedColumn(const DataTable& table, const Rule& rule) {
  if (rule.feature >= table.n_columns()) {
    throw Error(ErrorKind::kSchema, "rule refers to feature index " +
                                        std::to_string(rule.feature) +
                                        " outside the table");
  }
  const FeatureColumn& column = table.column(rule.feature);
  if (column.is_numeric() != rule.is_interval()) {
    throw Error(ErrorKind::kSchema, "rule kind does not match column '" +
                                        column.name() + "'");
  }
  return column;
}

}  // namespace

RowMask RuleMask(const DataTable& table, const Rule& rule) {
  const FeatureColumn& column = CheckedColumn(table, rule);
  RowMask mask(table.n_rows(), 0);
  if (rule.is_interval()) {
    const Interval& interval = rule.interval();
    const auto values = column.numeric_values();
    for (size_t n = 0; n < mask.size(); ++n) {
      // NaN fails both comparisons.
      mask[n] = interval.contains(values[n]) ? 1 : 0;
    }
    return mask;
  }
  const auto code = column.code_of(rule.category().token);
  if (!code) return mask;
  for (size_t n = 0; n < mask.size(); ++n) {
    mask[n] = column.code(n) == *code ? 1 : 0;
  }
  return mask;
}

RowMask RuleSetMask(const DataTable& table, std::span<const Rule> rules) {
  RowMask mask(table.n_rows(), 1);
  for (const Rule& rule : rules) {
    const RowMask one = RuleMask(table, rule);
    for (size_t n = 0; n < mask.size(); ++n) mask[n] &= one[n];
  }
  return mask;
}

std::vector<Rule> CanonicalRules(std::span<const Rule> rules) {
  std::vector<Rule> sorted(rules.begin(), rules.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Rule& a, const Rule& b) {
                     return a.feature < b.feature;
                   });
  return sorted;
}

std::string DescribeRule(const DataTable& table, const Rule& rule) {
  const std::string name = rule.feature < table.n_columns()
                               ? table.column(rule.feature).name()
                               : "#" + std::to_string(rule.feature);
  if (!rule.is_interval()) return name + " == " + rule.category().token;
  const Interval& interval = rule.interval();
  if (interval.has_lo() && interval.has_hi()) {
    return Short(interval.lo) + " <= " + name + " < " + Short(interval.hi);
  }
  if (interval.has_lo()) return name + " >= " + Short(interval.lo);
  if (interval.has_hi()) return name + " < " + Short(interval.hi);
  return name + " is present";
}

}  // namespace amore
