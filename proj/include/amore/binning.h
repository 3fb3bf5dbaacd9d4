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

#ifndef AMORE_BINNING_H_
#define AMORE_BINNING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "amore/ratio.h"

namespace amore {

enum class BinningStrategy { kUniform, kKMeans, kQuantile };

std::string_view StrategyName(BinningStrategy strategy);
std::optional<BinningStrategy> ParseStrategy(std::string_view name);

// Grid edges for the non-missing (non-NaN) values.
//
// uniform:  equal widths over [min, max].
// kmeans:   1D k-means (k-means++ seeding from `seed`, Lloyd iterations until
//           assignments settle or 100 rounds); inner edges sit halfway
//           between sorted centers.
// quantile: equal-frequency edges from linearly interpolated quantiles.
//
// Edges are strictly ascending with the first at min and the last at max;
// coinciding edges are collapsed so fewer than `n_grids` grids may result.
// Throws DegenerateFeatureError with fewer than two distinct values and
// ConfigError when n_grids < 2.
std::vector<double> MakeGrids(std::span<const double> values, size_t n_grids,
                              BinningStrategy strategy, uint64_t seed = 0);

// Grid holding `value`. Grid i covers [edges[i], edges[i+1]) and the last grid
// is closed on the right. Values outside the edges clamp to the boundary grid.
size_t GridIndex(std::span<const double> edges, double value);

// Per-grid target/total counts over the rows selected by a condition mask.
struct GridHistogram {
  size_t feature = 0;
  std::vector<double> edges;
  std::vector<int64_t> target_counts;
  std::vector<int64_t> total_counts;
  // Rows satisfying the earlier rules (missing values in this feature
  // included), and those of them in the target.
  int64_t condition_total = 0;
  int64_t condition_target = 0;

  size_t size() const { return total_counts.size(); }

  // Ratio of grids [first, last] taken together.
  CountRatio range_ratio(size_t first, size_t last) const;
  CountRatio grid_ratio(size_t grid) const { return range_ratio(grid, grid); }
};

// Counts only rows with condition_mask set and a non-missing value.
GridHistogram CountGrids(std::vector<double> edges,
                         std::span<const double> values,
                         std::span<const uint8_t> target_flags,
                         std::span<const uint8_t> condition_mask,
                         size_t feature = 0);

// Repeats until nothing changes: merge runs of consecutive non-empty grids
// whose target/total ratios are equal (exact cross-multiplication), then fold
// the leftmost empty grid into the neighbour with the higher ratio (ties and
// empty neighbours go left). Counts are conserved and edges stay ascending.
GridHistogram MergeGrids(GridHistogram histogram);

}  // namespace amore

#endif  // AMORE_BINNING_H_
