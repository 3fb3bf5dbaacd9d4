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

// Planted-rectangle datasets and an exhaustive grid-aligned rule oracle for
// small instances.

#ifndef AMORE_SYNTH_H_
#define AMORE_SYNTH_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "amore/binning.h"
#include "amore/rules.h"
#include "amore/table.h"
#include "amore/target.h"

namespace amore {

// [lo, hi) per feature.
using Rectangle = std::vector<std::pair<double, double>>;

struct PlantedMode {
  Rectangle bounds;
  // Probability that a row inside the rectangle is in the target.
  double purity = 1.0;
  // Fraction of all rows drawn inside the rectangle.
  double weight = 0.0;
};

struct PlantedSpec {
  size_t n_rows = 0;
  size_t n_features = 2;
  // Per-feature [lo, hi) domain; defaults to [0, 1) when empty.
  Rectangle domain;
  std::vector<PlantedMode> modes;
  // Target probability outside every rectangle.
  double background_rate = 0.0;
  uint64_t seed = 0;
};

struct SyntheticData {
  DataTable table;
  TargetIndicator target;
  std::vector<Rectangle> rectangles;
  // Mode index per row, -1 for background rows.
  std::vector<int> mode_of_row;
};

// Rows of each mode are drawn uniformly in its rectangle; the remaining rows
// uniformly over the domain outside all rectangles. Columns are named x0, x1,
// ... Uses std::mt19937_64 seeded with spec.seed. Throws SpecError for
// overlapping rectangles, out-of-domain bounds, bad rates, or more than three
// features.
SyntheticData GenSynthetic(const PlantedSpec& spec);

// The two-mode 2D layout used by the acceptance suite and `amore synth`.
PlantedSpec TwoModeSpec(size_t n_rows, double background_rate, uint64_t seed);

struct OracleLimits {
  size_t max_features = 3;
  size_t max_grids = 8;
  size_t max_rules = 2;
};

// Exhaustive search for the highest-fitness conjunction of at most
// `max_rules` per-feature grid ranges with support >= min_support. Grids are
// built once per feature over all rows (no per-branch re-binning), and a
// range touching the first or last grid is open on that side. Ties prefer
// higher confidence, fewer rules, then larger support. Throws TooLargeError
// beyond `limits` and EmptyResultError when nothing is feasible.
RuleSet BruteForceBest(const DataTable& table, const TargetIndicator& target,
                       size_t n_grids, size_t max_rules, int64_t min_support,
                       BinningStrategy strategy, uint64_t seed = 0,
                       const OracleLimits& limits = {});

}  // namespace amore

#endif  // AMORE_SYNTH_H_
