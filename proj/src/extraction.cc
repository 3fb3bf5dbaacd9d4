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

#include "amore/extraction.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <set>

#include "amore/error.h"
#include "amore/metrics.h"

namespace amore {
namespace {

// Peak detection shared by the decimal and exact ratio forms.
template <typename T, typename AboveOne, typename Cmp>
std::vector<size_t> Peaks(std::span<const T> ratios, AboveOne above_one,
                          Cmp compare) {
  std::vector<size_t> peaks;
  for (size_t i = 0; i < ratios.size(); ++i) {
    if (!above_one(ratios[i])) continue;
    if (i > 0 && compare(ratios[i], ratios[i - 1]) <= 0) continue;
    if (i + 1 < ratios.size() && compare(ratios[i], ratios[i + 1]) <= 0) {
      continue;
    }
    peaks.push_back(i);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](size_t a, size_t b) {
    return compare(ratios[a], ratios[b]) > 0;
  });
  return peaks;
}

std::vector<CountRatio> ExactGridRatios(const GridHistogram& histogram) {
  std::vector<CountRatio> ratios;
  ratios.reserve(histogram.size());
  for (size_t g = 0; g < histogram.size(); ++g) {
    ratios.push_back(histogram.grid_ratio(g));
  }
  return ratios;
}

// Bit-exact text identity of a feature-sorted conjunction.
std::string ConjunctionKey(std::span<const Rule> rules) {
  std::string key;
  for (const Rule& rule : CanonicalRules(rules)) {
    key += std::to_string(rule.feature);
    if (rule.is_interval()) {
      char bytes[2 * sizeof(double)];
      std::memcpy(bytes, &rule.interval().lo, sizeof(double));
      std::memcpy(bytes + sizeof(double), &rule.interval().hi, sizeof(double));
      key += 'i';
      key.append(bytes, sizeof(bytes));
    } else {
      key += 'c';
      key += std::to_string(rule.category().token.size());
      key += ':';
      key += rule.category().token;
    }
    key += ';';
  }
  return key;
}

RuleStats StatsFromStep(const CountRatio& last, std::vector<CountRatio> steps,
                        int64_t target_count) {
  RuleStats stats;
  stats.support = last.total_in;
  stats.target_hits = last.target_in;
  stats.target_count = target_count;
  stats.confidence = ConfidenceFromCounts(stats.support, stats.target_hits);
  stats.fitness =
      FitnessFromCounts(stats.support, stats.target_hits, target_count);
  stats.steps = std::move(steps);
  return stats;
}

class TreeSearch {
 public:
  TreeSearch(const DataTable& table, const TargetIndicator& target,
             const ExtractionConfig& config, const SamplePoint* sample)
      : table_(table),
        target_(target),
        config_(config),
        sample_(sample),
        target_count_(static_cast<int64_t>(target.count())) {}

  std::vector<RuleSet> Run(std::span<const size_t> feature_set) {
    const RowMask everything(table_.n_rows(), 1);
    std::vector<size_t> remaining(feature_set.begin(), feature_set.end());
    Grow({}, {}, everything, remaining);
    return std::move(out_);
  }

 private:
  void Grow(const std::vector<Rule>& rules, const std::vector<CountRatio>& steps,
            const RowMask& condition, const std::vector<size_t>& remaining) {
    if (remaining.empty()) return;
    std::vector<CandidateRule> pool;
    for (size_t feature : remaining) {
      const SampleValue* local =
          sample_ == nullptr ? nullptr : &(*sample_)[feature];
      try {
        std::vector<CandidateRule> found = GetCandidateRules(
            table_, target_, feature, condition, config_, local);
        pool.insert(pool.end(), found.begin(), found.end());
      } catch (const Error& e) {
        // A feature can run out of distinct values inside a branch.
        if (e.kind() != ErrorKind::kDegenerateFeature) throw;
      }
    }
    std::sort(pool.begin(), pool.end(), CandidateBefore);
    if (pool.size() > config_.branching) pool.resize(config_.branching);

    for (const CandidateRule& candidate : pool) {
      std::vector<Rule> child_rules = rules;
      child_rules.push_back(candidate.rule);
      std::vector<CountRatio> child_steps = steps;
      child_steps.push_back(candidate.ratio);
      Emit(child_rules, child_steps);
      if (child_rules.size() >= config_.max_rules) continue;

      RowMask child_condition = RuleMask(table_, candidate.rule);
      for (size_t n = 0; n < child_condition.size(); ++n) {
        child_condition[n] &= condition[n];
      }
      std::vector<size_t> child_remaining;
      for (size_t feature : remaining) {
        if (feature != candidate.rule.feature) {
          child_remaining.push_back(feature);
        }
      }
      Grow(child_rules, child_steps, child_condition, child_remaining);
    }
  }

  void Emit(const std::vector<Rule>& rules,
            const std::vector<CountRatio>& steps) {
    if (!seen_.insert(ConjunctionKey(rules)).second) return;
    RuleSet set;
    set.rules = rules;
    set.stats = StatsFromStep(steps.back(), steps, target_count_);
    out_.push_back(std::move(set));
  }

  const DataTable& table_;
  const TargetIndicator& target_;
  const ExtractionConfig& config_;
  const SamplePoint* sample_;
  const int64_t target_count_;
  std::set<std::string> seen_;
  std::vector<RuleSet> out_;
};

void CheckSearchInputs(const DataTable& table, const TargetIndicator& target,
                       std::span<const size_t> feature_set,
                       const ExtractionConfig& config) {
  config.Validate(table.n_rows());
  if (target.size() != table.n_rows()) {
    throw Error(ErrorKind::kShape, "target length does not match the table");
  }
  if (target.count() == 0) {
    throw Error(ErrorKind::kNoTarget, "the target subgroup is empty");
  }
  if (feature_set.empty()) {
    throw Error(ErrorKind::kConfig, "the feature set is empty");
  }
  std::set<size_t> unique;
  for (size_t feature : feature_set) {
    if (feature >= table.n_columns()) {
      throw Error(ErrorKind::kSchema, "feature index " +
                                          std::to_string(feature) +
                                          " is outside the table");
    }
    if (!unique.insert(feature).second) {
      throw Error(ErrorKind::kConfig, "feature '" +
                                          table.column(feature).name() +
                                          "' is listed twice");
    }
  }
}

}  // namespace

void ExtractionConfig::Validate(size_t n_rows) const {
  if (min_support < 1) {
    throw Error(ErrorKind::kConfig, "minimum support must be at least 1");
  }
  if (max_rules < 1) {
    throw Error(ErrorKind::kConfig, "maximum rule count must be at least 1");
  }
  if (branching < 1) {
    throw Error(ErrorKind::kConfig, "branching factor K must be at least 1");
  }
  if (n_grids < 2) {
    throw Error(ErrorKind::kConfig, "number of grids must be at least 2");
  }
  if (!(confidence_floor >= 0.0 && confidence_floor <= 1.0)) {
    throw Error(ErrorKind::kConfig, "confidence lower bound must be in [0, 1]");
  }
  if (min_support > static_cast<int64_t>(n_rows)) {
    throw Error(ErrorKind::kInfeasibleConfig,
                "minimum support " + std::to_string(min_support) +
                    " exceeds the " + std::to_string(n_rows) + " table rows");
  }
}

std::vector<double> GridRatios(const GridHistogram& histogram) {
  if (histogram.condition_target == 0) {
    throw Error(ErrorKind::kNoTarget,
                "no target rows satisfy the current conditions");
  }
  std::vector<double> ratios;
  ratios.reserve(histogram.size());
  for (size_t g = 0; g < histogram.size(); ++g) {
    ratios.push_back(histogram.grid_ratio(g).value());
  }
  return ratios;
}

std::vector<size_t> FindPeaks(std::span<const double> ratios) {
  return Peaks<double>(
      ratios, [](double r) { return r > 1.0; },
      [](double a, double b) { return a < b ? -1 : (a > b ? 1 : 0); });
}

std::vector<size_t> FindPeaks(std::span<const CountRatio> ratios) {
  return Peaks<CountRatio>(
      ratios, [](const CountRatio& r) { return r.exceeds_one(); },
      [](const CountRatio& a, const CountRatio& b) { return Compare(a, b); });
}

std::optional<GridInterval> GenFeatureInterval(const GridHistogram& histogram,
                                               size_t start,
                                               int64_t min_support) {
  if (start >= histogram.size()) {
    throw Error(ErrorKind::kRange, "start grid is outside the histogram");
  }
  GridInterval interval{start, start, histogram.grid_ratio(start)};

  while (true) {
    const bool has_left = interval.first > 0;
    const bool has_right = interval.last + 1 < histogram.size();
    if (!has_left && !has_right) break;
    const size_t left = interval.first - (has_left ? 1 : 0);
    const size_t right = interval.last + 1;

    // Neighbour whose ratio is strictly higher than the other's; nullopt on
    // a tie. A lone neighbour wins by default.
    std::optional<size_t> higher;
    int ratio_order = 0;
    if (has_left && has_right) {
      ratio_order = Compare(histogram.grid_ratio(left),
                            histogram.grid_ratio(right));
      if (ratio_order > 0) higher = left;
      if (ratio_order < 0) higher = right;
    } else {
      higher = has_left ? left : right;
    }

    std::optional<size_t> annex;
    if (interval.support() < min_support) {
      if (higher) {
        annex = higher;
      } else {
        annex = histogram.total_counts[right] > histogram.total_counts[left]
                    ? right
                    : left;
      }
    } else if (interval.ratio.exceeds_one()) {
      if (higher &&
          Compare(histogram.grid_ratio(*higher), interval.ratio) > 0) {
        annex = higher;
      }
    }
    if (!annex) break;
    if (*annex == left && has_left) {
      interval.first = left;
    } else {
      interval.last = right;
    }
    interval.ratio = histogram.range_ratio(interval.first, interval.last);
  }

  if (interval.support() < min_support || !interval.ratio.exceeds_one()) {
    return std::nullopt;
  }
  return interval;
}

Interval GridRangeInterval(const GridHistogram& histogram, size_t first,
                           size_t last) {
  Interval interval;
  if (first > 0) interval.lo = histogram.edges[first];
  if (last + 1 < histogram.size()) interval.hi = histogram.edges[last + 1];
  return interval;
}

SamplePoint SampleFromRow(const DataTable& table, size_t row) {
  if (row >= table.n_rows()) {
    throw Error(ErrorKind::kRange, "row " + std::to_string(row) +
                                       " is outside the table's " +
                                       std::to_string(table.n_rows()) +
                                       " rows");
  }
  SamplePoint sample;
  for (const FeatureColumn& column : table.columns()) {
    if (column.is_numeric()) {
      sample.emplace_back(column.numeric(row));
    } else if (column.is_missing(row)) {
      sample.emplace_back(std::optional<std::string>());
    } else {
      sample.emplace_back(
          std::optional<std::string>(column.categories()[column.code(row)]));
    }
  }
  return sample;
}

SamplePoint SampleFromOtherTable(const DataTable& table,
                                 const DataTable& source, size_t row) {
  if (row >= source.n_rows()) {
    throw Error(ErrorKind::kRange, "sample row " + std::to_string(row) +
                                       " is outside the sample table");
  }
  SamplePoint sample;
  for (const FeatureColumn& column : table.columns()) {
    const FeatureColumn& other = source.column(source.require_index(column.name()));
    if (other.is_numeric() != column.is_numeric()) {
      throw Error(ErrorKind::kSchema,
                  "sample column '" + column.name() + "' has a different kind");
    }
    if (column.is_numeric()) {
      sample.emplace_back(other.numeric(row));
    } else if (other.is_missing(row)) {
      sample.emplace_back(std::optional<std::string>());
    } else {
      sample.emplace_back(
          std::optional<std::string>(other.categories()[other.code(row)]));
    }
  }
  return sample;
}

bool CandidateBefore(const CandidateRule& a, const CandidateRule& b) {
  const int by_ratio = Compare(a.ratio, b.ratio);
  if (by_ratio != 0) return by_ratio > 0;
  if (a.support() != b.support()) return a.support() > b.support();
  if (a.rule.feature != b.rule.feature) return a.rule.feature < b.rule.feature;
  if (a.rule.is_interval() && b.rule.is_interval()) {
    return a.rule.interval().lo < b.rule.interval().lo;
  }
  if (!a.rule.is_interval() && !b.rule.is_interval()) {
    return a.rule.category().token < b.rule.category().token;
  }
  return false;
}

GridHistogram ConditionedHistogram(const DataTable& table,
                                   const TargetIndicator& target,
                                   size_t feature, const RowMask& condition,
                                   const ExtractionConfig& config) {
  const FeatureColumn& column = table.column(feature);
  const auto values = column.numeric_values();
  std::vector<double> inside;
  for (size_t n = 0; n < values.size(); ++n) {
    if (condition[n]) inside.push_back(values[n]);
  }
  std::vector<double> edges =
      MakeGrids(inside, config.n_grids, config.strategy, config.seed);
  return MergeGrids(
      CountGrids(std::move(edges), values, target.flags, condition, feature));
}

std::vector<CandidateRule> GetCandidateRules(const DataTable& table,
                                             const TargetIndicator& target,
                                             size_t feature,
                                             const RowMask& condition,
                                             const ExtractionConfig& config,
                                             const SampleValue* local) {
  if (feature >= table.n_columns()) {
    throw Error(ErrorKind::kSchema, "feature index " + std::to_string(feature) +
                                        " is outside the table");
  }
  if (condition.size() != table.n_rows() || target.size() != table.n_rows()) {
    throw Error(ErrorKind::kShape, "condition or target length mismatch");
  }
  const FeatureColumn& column = table.column(feature);
  std::vector<CandidateRule> candidates;

  if (column.is_numeric()) {
    std::optional<double> sample_value;
    if (local != nullptr) {
      const double* v = std::get_if<double>(local);
      if (v == nullptr || std::isnan(*v)) {
        throw Error(ErrorKind::kDomain, "sample has no numeric value for '" +
                                            column.name() + "'");
      }
      sample_value = *v;
    }
    const GridHistogram histogram =
        ConditionedHistogram(table, target, feature, condition, config);
    if (histogram.condition_target == 0) {
      throw Error(ErrorKind::kNoTarget,
                  "no target rows satisfy the current conditions");
    }
    const std::vector<CountRatio> ratios = ExactGridRatios(histogram);
    std::vector<GridInterval> intervals;
    for (size_t peak : FindPeaks(std::span<const CountRatio>(ratios))) {
      auto grown = GenFeatureInterval(histogram, peak, config.min_support);
      if (!grown) continue;
      const bool duplicate = std::any_of(
          intervals.begin(), intervals.end(), [&](const GridInterval& seen) {
            return seen.first == grown->first && seen.last == grown->last;
          });
      if (!duplicate) intervals.push_back(*grown);
    }
    if (sample_value) {
      std::erase_if(intervals, [&](const GridInterval& g) {
        return !GridRangeInterval(histogram, g.first, g.last)
                    .contains(*sample_value);
      });
      if (intervals.empty()) {
        const size_t start = GridIndex(histogram.edges, *sample_value);
        if (auto grown =
                GenFeatureInterval(histogram, start, config.min_support)) {
          intervals.push_back(*grown);
        }
      }
    }
    for (const GridInterval& g : intervals) {
      candidates.push_back(
          {Rule{feature, GridRangeInterval(histogram, g.first, g.last)},
           g.ratio});
    }
  } else {
    std::optional<int32_t> only_code;
    if (local != nullptr) {
      const auto* token = std::get_if<std::optional<std::string>>(local);
      if (token == nullptr || !token->has_value()) {
        throw Error(ErrorKind::kDomain, "sample has no category for '" +
                                            column.name() + "'");
      }
      only_code = column.code_of(**token);
      // A category never seen in the table cannot form a rule.
      if (!only_code) return candidates;
    }
    const size_t n_categories = column.categories().size();
    std::vector<int64_t> target_in(n_categories, 0);
    std::vector<int64_t> total_in(n_categories, 0);
    int64_t condition_total = 0;
    int64_t condition_target = 0;
    for (size_t n = 0; n < table.n_rows(); ++n) {
      if (!condition[n]) continue;
      ++condition_total;
      if (target.flags[n]) ++condition_target;
      const int32_t code = column.code(n);
      if (code == kMissingCode) continue;
      ++total_in[code];
      if (target.flags[n]) ++target_in[code];
    }
    if (condition_target == 0) {
      throw Error(ErrorKind::kNoTarget,
                  "no target rows satisfy the current conditions");
    }
    for (size_t c = 0; c < n_categories; ++c) {
      if (only_code && static_cast<int32_t>(c) != *only_code) continue;
      const CountRatio ratio{target_in[c], total_in[c], condition_target,
                             condition_total};
      if (ratio.total_in < config.min_support || !ratio.exceeds_one()) continue;
      candidates.push_back(
          {Rule{feature, CategoryEquals{column.categories()[c]}}, ratio});
    }
  }

  std::sort(candidates.begin(), candidates.end(), CandidateBefore);
  if (candidates.size() > config.branching) {
    candidates.resize(config.branching);
  }
  return candidates;
}

std::vector<RuleSet> ExtractRuleSets(const DataTable& table,
                                     const TargetIndicator& target,
                                     std::span<const size_t> feature_set,
                                     const ExtractionConfig& config) {
  CheckSearchInputs(table, target, feature_set, config);
  return TreeSearch(table, target, config, nullptr).Run(feature_set);
}

std::optional<RuleSet> ExtractLocal(const DataTable& table,
                                    const TargetIndicator& target,
                                    std::span<const size_t> feature_set,
                                    const SamplePoint& sample,
                                    const ExtractionConfig& config) {
  CheckSearchInputs(table, target, feature_set, config);
  if (sample.size() != table.n_columns()) {
    throw Error(ErrorKind::kShape, "sample width does not match the table");
  }
  const std::vector<RuleSet> sets =
      TreeSearch(table, target, config, &sample).Run(feature_set);
  if (sets.empty()) return std::nullopt;
  return SelectBest(sets, config.confidence_floor);
}

const RuleSet& SelectBest(std::span<const RuleSet> rule_sets,
                          double confidence_floor) {
  if (rule_sets.empty()) {
    throw Error(ErrorKind::kEmptyResult, "there are no candidate rule sets");
  }
  // True when a is preferred over b.
  auto better = [](const RuleSet& a, const RuleSet& b) {
    const RuleStats& sa = a.stats;
    const RuleStats& sb = b.stats;
    // fitness = (2 * hits - support) / target_count.
    const Int128 fit_a = static_cast<Int128>(2 * sa.target_hits - sa.support) *
                         std::max<int64_t>(sb.target_count, 1);
    const Int128 fit_b = static_cast<Int128>(2 * sb.target_hits - sb.support) *
                         std::max<int64_t>(sa.target_count, 1);
    if (fit_a != fit_b) return fit_a > fit_b;
    const int by_confidence = CompareFractions(sa.target_hits, sa.support,
                                               sb.target_hits, sb.support);
    if (by_confidence != 0) return by_confidence > 0;
    if (a.rules.size() != b.rules.size()) {
      return a.rules.size() < b.rules.size();
    }
    return sa.support > sb.support;
  };

  const RuleSet* best = nullptr;
  for (const RuleSet& set : rule_sets) {
    if (set.stats.confidence < confidence_floor) continue;
    if (best == nullptr || better(set, *best)) best = &set;
  }
  if (best != nullptr) return *best;
  for (const RuleSet& set : rule_sets) {
    if (best == nullptr || better(set, *best)) best = &set;
  }
  return *best;
}

}  // namespace amore
