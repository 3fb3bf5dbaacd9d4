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

// JSON forms of rules, rule sets, histograms and feature selections.
//
// Rule:     {"feature": name, "op": "in_interval", "lo": x|null, "hi": y|null,
//            "text": "..."}  or  {"feature": name, "op": "eq", "value": token,
//            "text": "..."}
//           A null bound is unbounded; lo is inclusive and hi exclusive.
//           Bounds carry full double precision so evaluation round-trips;
//           "text" shows them with 6 significant digits.
// Rule set: {"rules": [...], "support": int, "target_hits": int,
//            "confidence": float, "fitness": float, "step_ratios": [...]}

#ifndef AMORE_JSON_IO_H_
#define AMORE_JSON_IO_H_

#include <span>
#include <vector>

#include "amore/attribution.h"
#include "amore/binning.h"
#include "amore/rules.h"
#include "amore/table.h"
#include "json.hpp"

namespace amore {

nlohmann::json RuleToJson(const DataTable& table, const Rule& rule);
nlohmann::json RuleSetToJson(const DataTable& table, const RuleSet& rule_set);

// Resolves feature names against `table`. Throws SchemaError for unknown
// features or kind mismatches and ParseError for malformed entries.
Rule RuleFromJson(const DataTable& table, const nlohmann::json& json);
std::vector<Rule> RulesFromJson(const DataTable& table,
                                const nlohmann::json& rule_set);

// Edges, counts and per-grid ratios of a histogram for external plotting.
nlohmann::json HistogramToJson(const DataTable& table,
                               const GridHistogram& histogram);

nlohmann::json FeatureSelectionToJson(
    const ImportanceMatrix& matrix, const FeatureSelection& selection);

}  // namespace amore

#endif  // AMORE_JSON_IO_H_
