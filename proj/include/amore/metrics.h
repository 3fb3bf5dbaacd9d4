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

#ifndef AMORE_METRICS_H_
#define AMORE_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amore/rules.h"
#include "amore/table.h"
#include "amore/target.h"

namespace amore {

// Number of rows satisfying every rule (all rows for an empty rule set).
int64_t Support(const DataTable& table, std::span<const Rule> rules);

// Fraction of satisfying rows in the target. Throws ZeroSupportError.
double Confidence(const DataTable& table, const TargetIndicator& target,
                  std::span<const Rule> rules);

// (covered target rows - covered non-target rows) / target size. Throws
// NoTargetError for an empty target.
double Fitness(const DataTable& table, const TargetIndicator& target,
               std::span<const Rule> rules);

// The three metrics from integer counts.
double ConfidenceFromCounts(int64_t support, int64_t target_hits);
double FitnessFromCounts(int64_t support, int64_t target_hits,
                         int64_t target_count);

// Support, target hits, confidence and fitness of a rule set. Confidence is 0
// when nothing is covered. Step k relates the rows covered by the first k
// rules to those covered by the first k - 1, in rule order.
RuleStats Evaluate(const DataTable& table, const TargetIndicator& target,
                   std::span<const Rule> rules);

struct EvaluationReport {
  std::vector<RuleSet> rule_sets;
  int64_t target_count = 0;
  int64_t table_rows = 0;
};

// Aligned text table: one line per rule set with its rules and metrics.
std::string RenderReportText(const DataTable& table,
                             const EvaluationReport& report);

}  // namespace amore

#endif  // AMORE_METRICS_H_
