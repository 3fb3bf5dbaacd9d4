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

#include "amore/json_io.h"

#include <cmath>
#include <string>

#include "amore/error.h"

namespace amore {
namespace {

using nlohmann::json;

json Bound(double v) {
  if (std::isinf(v)) return nullptr;
  return v;
}

double ReadBound(const json& j, const char* key, double unbounded) {
  if (!j.contains(key) || j.at(key).is_null()) return unbounded;
  if (!j.at(key).is_number()) {
    throw ParseError(0, key, "interval bound must be a number or null");
  }
  return j.at(key).get<double>();
}

}  // namespace

json RuleToJson(const DataTable& table, const Rule& rule) {
  json out;
  out["feature"] = table.column(rule.feature).name();
  if (rule.is_interval()) {
    out["op"] = "in_interval";
    out["lo"] = Bound(rule.interval().lo);
    out["hi"] = Bound(rule.interval().hi);
  } else {
    out["op"] = "eq";
    out["value"] = rule.category().token;
  }
  out["text"] = DescribeRule(table, rule);
  return out;
}

json RuleSetToJson(const DataTable& table, const RuleSet& rule_set) {
  json rules = json::array();
  for (const Rule& rule : rule_set.rules) {
    rules.push_back(RuleToJson(table, rule));
  }
  json steps = json::array();
  for (const CountRatio& step : rule_set.stats.steps) {
    steps.push_back(step.value());
  }
  return {{"rules", rules},
          {"support", rule_set.stats.support},
          {"target_hits", rule_set.stats.target_hits},
          {"confidence", rule_set.stats.confidence},
          {"fitness", rule_set.stats.fitness},
          {"step_ratios", steps}};
}

Rule RuleFromJson(const DataTable& table, const json& j) {
  if (!j.is_object() || !j.contains("feature") || !j.contains("op") ||
      !j.at("feature").is_string() || !j.at("op").is_string()) {
    throw ParseError(0, "rule", "rule needs string fields feature and op");
  }
  Rule rule;
  rule.feature = table.require_index(j.at("feature").get<std::string>());
  const bool numeric = table.column(rule.feature).is_numeric();
  const std::string op = j.at("op").get<std::string>();
  if (op == "in_interval") {
    if (!numeric) {
      throw Error(ErrorKind::kSchema,
                  "interval rule on categorical feature " +
                      j.at("feature").get<std::string>());
    }
    Interval interval;
    interval.lo = ReadBound(j, "lo", -kUnbounded);
    interval.hi = ReadBound(j, "hi", kUnbounded);
    rule.predicate = interval;
  } else if (op == "eq") {
    if (numeric) {
      throw Error(ErrorKind::kSchema, "equality rule on numeric feature " +
                                          j.at("feature").get<std::string>());
    }
    if (!j.contains("value") || !j.at("value").is_string()) {
      throw ParseError(0, "value", "equality rule needs a string value");
    }
    rule.predicate = CategoryEquals{j.at("value").get<std::string>()};
  } else {
    throw ParseError(0, "op", "unknown rule op '" + op + "'");
  }
  return rule;
}

std::vector<Rule> RulesFromJson(const DataTable& table, const json& rule_set) {
  const json* rules = &rule_set;
  if (rule_set.is_object()) {
    if (!rule_set.contains("rules")) {
      throw ParseError(0, "rules", "rule set has no rules array");
    }
    rules = &rule_set.at("rules");
  }
  if (!rules->is_array()) {
    throw ParseError(0, "rules", "rules must be an array");
  }
  std::vector<Rule> out;
  for (const json& rule : *rules) out.push_back(RuleFromJson(table, rule));
  return out;
}

json HistogramToJson(const DataTable& table, const GridHistogram& histogram) {
  json ratios = json::array();
  for (size_t g = 0; g < histogram.size(); ++g) {
    const CountRatio r = histogram.grid_ratio(g);
    ratios.push_back(r.empty() ? 0.0 : r.value());
  }
  return {{"feature", table.column(histogram.feature).name()},
          {"edges", histogram.edges},
          {"target_counts", histogram.target_counts},
          {"total_counts", histogram.total_counts},
          {"ratios", ratios},
          {"condition_total", histogram.condition_total},
          {"condition_target", histogram.condition_target}};
}

json FeatureSelectionToJson(const ImportanceMatrix& matrix,
                            const FeatureSelection& selection) {
  json itemsets = json::array();
  for (const FrequentItemset& itemset : selection.itemsets) {
    json names = json::array();
    for (uint32_t item : itemset.items) {
      names.push_back(matrix.feature_names()[item]);
    }
    itemsets.push_back({{"features", names}, {"count", itemset.count}});
  }
  json features = json::array();
  for (uint32_t item : selection.features) {
    features.push_back(matrix.feature_names()[item]);
  }
  return {{"j_th", selection.threshold},
          {"rows", matrix.rows()},
          {"itemsets", itemsets},
          {"features", features}};
}

}  // namespace amore
