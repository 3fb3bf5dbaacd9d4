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

// Regional rule extraction.
//
// A rule set is grown one feature at a time. At each step every remaining
// feature proposes value ranges whose probability ratio
//
//   r = P(x_f in range | target, earlier rules) / P(x_f in range | earlier rules)
//
// exceeds 1, estimated from counts inside the rows satisfying the earlier
// rules. Numeric ranges come from a per-branch histogram: peaks of the ratio
// profile seed intervals that grow to neighbouring grids until the minimum
// support is met, and afterwards only while the ratio keeps rising. The best
// K proposals across features become children in a search tree; every
// root-to-node path is a candidate rule set.
//
// Because the target fraction inside the earlier rules times r equals the
// target fraction after adding the range, confidence grows strictly along
// every path.

#ifndef AMORE_EXTRACTION_H_
#define AMORE_EXTRACTION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "amore/binning.h"
#include "amore/ratio.h"
#include "amore/rules.h"
#include "amore/table.h"
#include "amore/target.h"

namespace amore {

struct ExtractionConfig {
  // Minimum number of rows a rule set must cover.
  int64_t min_support = 1;
  // Maximum number of rules in a rule set.
  size_t max_rules = 2;
  size_t n_grids = 7;
  // Candidate rules kept per tree node.
  size_t branching = 3;
  BinningStrategy strategy = BinningStrategy::kUniform;
  // Rule sets below this confidence are only chosen when none reach it.
  double confidence_floor = 0.8;
  // Seeds k-means binning.
  uint64_t seed = 0;

  // Throws ConfigError for out-of-range fields and InfeasibleConfigError when
  // min_support exceeds `n_rows`.
  void Validate(size_t n_rows) const;
};

// Per-grid ratios as decimals. Empty grids get 0. Throws NoTargetError when
// the conditioned target is empty.
std::vector<double> GridRatios(const GridHistogram& histogram);

// Grids whose ratio exceeds 1 and both neighbours (missing neighbours do not
// count), ordered by ratio descending then index ascending.
std::vector<size_t> FindPeaks(std::span<const double> ratios);
std::vector<size_t> FindPeaks(std::span<const CountRatio> ratios);

// A contiguous run of grids [first, last] of one histogram.
struct GridInterval {
  size_t first = 0;
  size_t last = 0;
  CountRatio ratio;

  int64_t support() const { return ratio.total_in; }
};

// Grows an interval from `start`. While support is below `min_support` it
// annexes the neighbour with the higher ratio (ties: larger support, then
// left). Once support suffices it annexes a neighbour only if that ratio
// exceeds both the other neighbour's and the interval's own. Returns nullopt
// if the result lacks support or its ratio is not above 1.
std::optional<GridInterval> GenFeatureInterval(const GridHistogram& histogram,
                                               size_t start,
                                               int64_t min_support);

// Interval covered by grids [first, last]; the outermost grids extend to
// infinity.
Interval GridRangeInterval(const GridHistogram& histogram, size_t first,
                           size_t last);

// Numeric value or category token of one sample; NaN or nullopt when missing.
using SampleValue = std::variant<double, std::optional<std::string>>;

// Values of one sample, indexed like the table's columns.
using SamplePoint = std::vector<SampleValue>;

SamplePoint SampleFromRow(const DataTable& table, size_t row);
// Looks up each of `table`'s columns by name in `source`. Throws SchemaError
// for a missing column.
SamplePoint SampleFromOtherTable(const DataTable& table,
                                 const DataTable& source, size_t row);

struct CandidateRule {
  Rule rule;
  CountRatio ratio;

  int64_t support() const { return ratio.total_in; }
};

// Ranking used everywhere a set of candidates is cut to K: ratio descending,
// support descending, feature ascending, range start ascending.
bool CandidateBefore(const CandidateRule& a, const CandidateRule& b);

// Histogram of a numeric feature over the conditioned rows, after merging.
GridHistogram ConditionedHistogram(const DataTable& table,
                                   const TargetIndicator& target,
                                   size_t feature, const RowMask& condition,
                                   const ExtractionConfig& config);

// Up to K candidate rules for one feature within the conditioned rows, all
// with ratio > 1 and support >= min_support. With `local` set, only rules
// containing that sample value are returned: standard candidates that
// already contain it, otherwise an interval grown from the grid holding it
// (values outside the range clamp to the boundary grid).
// Throws DegenerateFeatureError when a numeric feature has fewer than two
// distinct values in the conditioned rows.
std::vector<CandidateRule> GetCandidateRules(
    const DataTable& table, const TargetIndicator& target, size_t feature,
    const RowMask& condition, const ExtractionConfig& config,
    const SampleValue* local = nullptr);

// All candidate rule sets of the K-branch search tree, in depth-first order,
// deduplicated by their feature-sorted rules. Throws NoTargetError,
// InfeasibleConfigError, or ConfigError.
std::vector<RuleSet> ExtractRuleSets(const DataTable& table,
                                     const TargetIndicator& target,
                                     std::span<const size_t> feature_set,
                                     const ExtractionConfig& config);

// Same search restricted to rules that contain `sample`; returns the best
// resulting rule set, or nullopt when no rule with ratio > 1 exists.
std::optional<RuleSet> ExtractLocal(const DataTable& table,
                                    const TargetIndicator& target,
                                    std::span<const size_t> feature_set,
                                    const SamplePoint& sample,
                                    const ExtractionConfig& config);

// Highest fitness among rule sets with confidence >= floor; if none qualify,
// highest fitness overall. Ties: higher confidence, fewer rules, larger
// support. Throws EmptyResultError on empty input.
const RuleSet& SelectBest(std::span<const RuleSet> rule_sets,
                          double confidence_floor);

}  // namespace amore

#endif  // AMORE_EXTRACTION_H_
