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

#include "amore/synth.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "amore/error.h"
#include "amore/metrics.h"
#include "amore/random.h"

namespace amore {
namespace {

constexpr size_t kMaxSyntheticFeatures = 3;
constexpr int kMaxRejections = 1000000;

bool Inside(const Rectangle& rect, std::span<const double> point) {
  for (size_t f = 0; f < rect.size(); ++f) {
    if (!(point[f] >= rect[f].first && point[f] < rect[f].second)) return false;
  }
  return true;
}

bool Overlap(const Rectangle& a, const Rectangle& b) {
  for (size_t f = 0; f < a.size(); ++f) {
    if (a[f].second <= b[f].first || b[f].second <= a[f].first) return false;
  }
  return true;
}

void ValidateSpec(const PlantedSpec& spec, const Rectangle& domain) {
  if (spec.n_features == 0 || spec.n_features > kMaxSyntheticFeatures) {
    throw Error(ErrorKind::kSpec, "synthetic data supports 1 to 3 features");
  }
  if (domain.size() != spec.n_features) {
    throw Error(ErrorKind::kSpec, "domain must give one range per feature");
  }
  for (const auto& [lo, hi] : domain) {
    if (!(lo < hi)) throw Error(ErrorKind::kSpec, "empty feature domain");
  }
  if (!(spec.background_rate >= 0.0 && spec.background_rate <= 1.0)) {
    throw Error(ErrorKind::kSpec, "background rate must be in [0, 1]");
  }
  double total_weight = 0.0;
  for (const PlantedMode& mode : spec.modes) {
    if (mode.bounds.size() != spec.n_features) {
      throw Error(ErrorKind::kSpec, "mode rectangle has the wrong dimension");
    }
    if (!(mode.purity >= 0.0 && mode.purity <= 1.0)) {
      throw Error(ErrorKind::kSpec, "mode purity must be in [0, 1]");
    }
    if (!(mode.weight >= 0.0)) {
      throw Error(ErrorKind::kSpec, "mode weight must be non-negative");
    }
    total_weight += mode.weight;
    for (size_t f = 0; f < spec.n_features; ++f) {
      const auto [lo, hi] = mode.bounds[f];
      if (!(lo < hi) || lo < domain[f].first || hi > domain[f].second) {
        throw Error(ErrorKind::kSpec, "mode rectangle leaves the domain");
      }
    }
  }
  if (total_weight > 1.0 + 1e-12) {
    throw Error(ErrorKind::kSpec, "mode weights sum to more than 1");
  }
  for (size_t a = 0; a < spec.modes.size(); ++a) {
    for (size_t b = a + 1; b < spec.modes.size(); ++b) {
      if (Overlap(spec.modes[a].bounds, spec.modes[b].bounds)) {
        throw Error(ErrorKind::kSpec, "planted rectangles overlap");
      }
    }
  }
}

// One candidate predicate of the oracle with its row mask.
struct OracleRange {
  Rule rule;
  RowMask mask;
};

std::vector<OracleRange> FeatureRanges(const DataTable& table, size_t feature,
                                       size_t n_grids, BinningStrategy strategy,
                                       uint64_t seed) {
  std::vector<OracleRange> ranges;
  const FeatureColumn& column = table.column(feature);
  if (!column.is_numeric()) {
    for (const std::string& token : column.categories()) {
      Rule rule{feature, CategoryEquals{token}};
      ranges.push_back({rule, RuleMask(table, rule)});
    }
    return ranges;
  }
  std::vector<double> edges;
  try {
    edges = MakeGrids(column.numeric_values(), n_grids, strategy, seed);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kDegenerateFeature) return ranges;
    throw;
  }
  const size_t grids = edges.size() - 1;
  for (size_t first = 0; first < grids; ++first) {
    for (size_t last = first; last < grids; ++last) {
      Interval interval;
      if (first > 0) interval.lo = edges[first];
      if (last + 1 < grids) interval.hi = edges[last + 1];
      Rule rule{feature, interval};
      ranges.push_back({rule, RuleMask(table, rule)});
    }
  }
  return ranges;
}

struct Best {
  std::vector<Rule> rules;
  int64_t support = 0;
  int64_t hits = 0;
};

// Same preference order as SelectBest with a shared target size.
bool Prefer(int64_t support, int64_t hits, size_t n_rules, const Best& best) {
  const int64_t fit = 2 * hits - support;
  const int64_t best_fit = 2 * best.hits - best.support;
  if (fit != best_fit) return fit > best_fit;
  const int by_confidence =
      CompareFractions(hits, support, best.hits, best.support);
  if (by_confidence != 0) return by_confidence > 0;
  if (n_rules != best.rules.size()) return n_rules < best.rules.size();
  return support > best.support;
}

}  // namespace

SyntheticData GenSynthetic(const PlantedSpec& spec) {
  Rectangle domain = spec.domain;
  if (domain.empty()) domain.assign(spec.n_features, {0.0, 1.0});
  ValidateSpec(spec, domain);

  Rng rng(spec.seed);
  const size_t d = spec.n_features;
  std::vector<std::vector<double>> columns(d);
  SyntheticData data;
  data.target.label = "1";
  std::vector<double> point(d);

  auto add_row = [&](int mode, double rate) {
    for (size_t f = 0; f < d; ++f) columns[f].push_back(point[f]);
    data.target.flags.push_back(Bernoulli(rng, rate) ? 1 : 0);
    data.mode_of_row.push_back(mode);
  };

  size_t planted_rows = 0;
  for (size_t m = 0; m < spec.modes.size(); ++m) {
    const PlantedMode& mode = spec.modes[m];
    const size_t rows = static_cast<size_t>(
        std::llround(mode.weight * static_cast<double>(spec.n_rows)));
    for (size_t i = 0; i < rows && planted_rows < spec.n_rows; ++i) {
      for (size_t f = 0; f < d; ++f) {
        point[f] = UniformReal(rng, mode.bounds[f].first, mode.bounds[f].second);
      }
      add_row(static_cast<int>(m), mode.purity);
      ++planted_rows;
    }
    data.rectangles.push_back(mode.bounds);
  }

  for (size_t i = planted_rows; i < spec.n_rows; ++i) {
    int attempts = 0;
    while (true) {
      for (size_t f = 0; f < d; ++f) {
        point[f] = UniformReal(rng, domain[f].first, domain[f].second);
      }
      const bool covered = std::any_of(
          spec.modes.begin(), spec.modes.end(),
          [&](const PlantedMode& mode) { return Inside(mode.bounds, point); });
      if (!covered) break;
      if (++attempts > kMaxRejections) {
        throw Error(ErrorKind::kSpec, "rectangles cover the whole domain");
      }
    }
    add_row(-1, spec.background_rate);
  }

  std::vector<FeatureColumn> table_columns;
  for (size_t f = 0; f < d; ++f) {
    table_columns.push_back(
        FeatureColumn::Numeric("x" + std::to_string(f), std::move(columns[f])));
  }
  data.table = DataTable(std::move(table_columns));
  return data;
}

PlantedSpec TwoModeSpec(size_t n_rows, double background_rate, uint64_t seed) {
  PlantedSpec spec;
  spec.n_rows = n_rows;
  spec.n_features = 2;
  spec.domain = {{0.0, 1.0}, {0.0, 1.0}};
  spec.background_rate = background_rate;
  spec.seed = seed;
  // A larger mode low on both axes and a smaller one high on both.
  spec.modes.push_back({{{0.1, 0.4}, {0.1, 0.4}}, 1.0, 0.35});
  spec.modes.push_back({{{0.6, 0.8}, {0.6, 0.8}}, 1.0, 0.30});
  return spec;
}

RuleSet BruteForceBest(const DataTable& table, const TargetIndicator& target,
                       size_t n_grids, size_t max_rules, int64_t min_support,
                       BinningStrategy strategy, uint64_t seed,
                       const OracleLimits& limits) {
  if (table.n_columns() > limits.max_features || n_grids > limits.max_grids ||
      max_rules > limits.max_rules) {
    throw Error(ErrorKind::kTooLarge,
                "brute-force oracle is limited to " +
                    std::to_string(limits.max_features) + " features, " +
                    std::to_string(limits.max_grids) + " grids and " +
                    std::to_string(limits.max_rules) + " rules");
  }
  if (max_rules < 1) {
    throw Error(ErrorKind::kConfig, "maximum rule count must be at least 1");
  }
  if (target.size() != table.n_rows()) {
    throw Error(ErrorKind::kShape, "target length does not match the table");
  }
  const int64_t target_count = static_cast<int64_t>(target.count());
  if (target_count == 0) {
    throw Error(ErrorKind::kNoTarget, "the target subgroup is empty");
  }

  std::vector<std::vector<OracleRange>> ranges;
  for (size_t f = 0; f < table.n_columns(); ++f) {
    ranges.push_back(FeatureRanges(table, f, n_grids, strategy, seed));
  }

  std::optional<Best> best;
  auto consider = [&](std::vector<const OracleRange*> picked) {
    int64_t support = 0;
    int64_t hits = 0;
    for (size_t n = 0; n < table.n_rows(); ++n) {
      bool all = true;
      for (const OracleRange* range : picked) {
        if (!range->mask[n]) {
          all = false;
          break;
        }
      }
      if (!all) continue;
      ++support;
      if (target.flags[n]) ++hits;
    }
    if (support < min_support) return;
    if (best && !Prefer(support, hits, picked.size(), *best)) return;
    Best next;
    for (const OracleRange* range : picked) next.rules.push_back(range->rule);
    next.support = support;
    next.hits = hits;
    best = std::move(next);
  };

  const size_t d = table.n_columns();
  for (size_t a = 0; a < d; ++a) {
    for (const OracleRange& ra : ranges[a]) consider({&ra});
  }
  if (max_rules >= 2) {
    for (size_t a = 0; a < d; ++a) {
      for (size_t b = a + 1; b < d; ++b) {
        for (const OracleRange& ra : ranges[a]) {
          for (const OracleRange& rb : ranges[b]) consider({&ra, &rb});
        }
      }
    }
  }
  if (!best) {
    throw Error(ErrorKind::kEmptyResult,
                "no grid-aligned rule set reaches the minimum support");
  }

  RuleSet result;
  result.rules = best->rules;
  result.stats = Evaluate(table, target, result.rules);
  return result;
}

}  // namespace amore
