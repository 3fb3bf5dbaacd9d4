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

#include "amore/metrics.h"

#include <algorithm>
#include <cstdio>

#include "amore/error.h"

namespace amore {
namespace {

struct Counts {
  int64_t support = 0;
  int64_t target_hits = 0;
};

Counts CountCovered(const DataTable& table, const TargetIndicator& target,
                    std::span<const Rule> rules) {
  if (target.size() != table.n_rows()) {
    throw Error(ErrorKind::kShape, "target length does not match the table");
  }
  const RowMask mask = RuleSetMask(table, rules);
  Counts counts;
  for (size_t n = 0; n < mask.size(); ++n) {
    if (!mask[n]) continue;
    ++counts.support;
    if (target.flags[n]) ++counts.target_hits;
  }
  return counts;
}

}  // namespace

int64_t Support(const DataTable& table, std::span<const Rule> rules) {
  const RowMask mask = RuleSetMask(table, rules);
  return std::count(mask.begin(), mask.end(), uint8_t{1});
}

double ConfidenceFromCounts(int64_t support, int64_t target_hits) {
  if (support == 0) {
    throw Error(ErrorKind::kZeroSupport, "the rule set covers no rows");
  }
  return static_cast<double>(target_hits) / static_cast<double>(support);
}

double FitnessFromCounts(int64_t support, int64_t target_hits,
                         int64_t target_count) {
  if (target_count == 0) {
    throw Error(ErrorKind::kNoTarget, "the target subgroup is empty");
  }
  return static_cast<double>(2 * target_hits - support) /
         static_cast<double>(target_count);
}

double Confidence(const DataTable& table, const TargetIndicator& target,
                  std::span<const Rule> rules) {
  const Counts counts = CountCovered(table, target, rules);
  return ConfidenceFromCounts(counts.support, counts.target_hits);
}

double Fitness(const DataTable& table, const TargetIndicator& target,
               std::span<const Rule> rules) {
  const Counts counts = CountCovered(table, target, rules);
  return FitnessFromCounts(counts.support, counts.target_hits,
                           static_cast<int64_t>(target.count()));
}

RuleStats Evaluate(const DataTable& table, const TargetIndicator& target,
                   std::span<const Rule> rules) {
  const Counts counts = CountCovered(table, target, rules);
  RuleStats stats;
  stats.support = counts.support;
  stats.target_hits = counts.target_hits;
  stats.target_count = static_cast<int64_t>(target.count());
  stats.confidence = counts.support == 0
                         ? 0.0
                         : ConfidenceFromCounts(counts.support,
                                                counts.target_hits);
  stats.fitness =
      FitnessFromCounts(counts.support, counts.target_hits, stats.target_count);
  int64_t before_total = static_cast<int64_t>(table.n_rows());
  int64_t before_target = stats.target_count;
  for (size_t k = 1; k <= rules.size(); ++k) {
    const Counts prefix = CountCovered(table, target, rules.first(k));
    stats.steps.push_back(
        {prefix.target_hits, prefix.support, before_target, before_total});
    before_target = prefix.target_hits;
    before_total = prefix.support;
  }
  return stats;
}

std::string RenderReportText(const DataTable& table,
                             const EvaluationReport& report) {
  std::vector<std::string> descriptions;
  size_t width = std::string("rules").size();
  for (const RuleSet& set : report.rule_sets) {
    std::string text;
    for (const Rule& rule : set.rules) {
      if (!text.empty()) text += " AND ";
      text += DescribeRule(table, rule);
    }
    width = std::max(width, text.size());
    descriptions.push_back(std::move(text));
  }

  std::string out;
  char line[128];
  std::snprintf(line, sizeof(line), "target rows: %lld / %lld\n",
                static_cast<long long>(report.target_count),
                static_cast<long long>(report.table_rows));
  out += line;
  out += "  #  " + std::string("rules") + std::string(width - 5, ' ') +
         "    support  confidence   fitness\n";
  for (size_t i = 0; i < report.rule_sets.size(); ++i) {
    const RuleStats& stats = report.rule_sets[i].stats;
    std::snprintf(line, sizeof(line), "%3zu  ", i);
    out += line;
    out += descriptions[i] + std::string(width - descriptions[i].size(), ' ');
    std::snprintf(line, sizeof(line), "  %9lld  %10.4f  %8.4f\n",
                  static_cast<long long>(stats.support), stats.confidence,
                  stats.fitness);
    out += line;
  }
  return out;
}

}  // namespace amore
