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

#include "amore/binning.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "amore/error.h"
#include "amore/random.h"

namespace amore {
namespace {

constexpr int kMaxLloydIterations = 100;

std::vector<double> CollapseEdges(std::vector<double> edges) {
  std::vector<double> out;
  out.reserve(edges.size());
  for (double e : edges) {
    if (out.empty() || e > out.back()) out.push_back(e);
  }
  return out;
}

std::vector<double> UniformEdges(double lo, double hi, size_t n_grids) {
  std::vector<double> edges(n_grids + 1);
  const double width = (hi - lo) / static_cast<double>(n_grids);
  for (size_t i = 0; i < n_grids; ++i) {
    edges[i] = lo + width * static_cast<double>(i);
  }
  edges[n_grids] = hi;
  return edges;
}

std::vector<double> QuantileEdges(const std::vector<double>& sorted,
                                  size_t n_grids) {
  std::vector<double> edges(n_grids + 1);
  const double last = static_cast<double>(sorted.size() - 1);
  for (size_t i = 0; i <= n_grids; ++i) {
    const double position =
        last * static_cast<double>(i) / static_cast<double>(n_grids);
    const size_t below = static_cast<size_t>(std::floor(position));
    const size_t above = std::min(below + 1, sorted.size() - 1);
    const double fraction = position - static_cast<double>(below);
    edges[i] = sorted[below] + fraction * (sorted[above] - sorted[below]);
  }
  edges.front() = sorted.front();
  edges.back() = sorted.back();
  return edges;
}

// k-means++ seeding followed by Lloyd iterations on 1D data.
std::vector<double> KMeansCenters(const std::vector<double>& sorted, size_t k,
                                  uint64_t seed) {
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() <= k) return distinct;

  Rng rng(seed);
  const size_t n = sorted.size();
  std::vector<double> centers;
  centers.push_back(sorted[UniformIndex(rng, n)]);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (centers.size() < k) {
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double d = sorted[i] - centers.back();
      nearest[i] = std::min(nearest[i], d * d);
      total += nearest[i];
    }
    if (total <= 0.0) break;
    const double pick = UnitDouble(rng) * total;
    double running = 0.0;
    size_t chosen = n - 1;
    for (size_t i = 0; i < n; ++i) {
      running += nearest[i];
      if (running > pick && nearest[i] > 0.0) {
        chosen = i;
        break;
      }
    }
    centers.push_back(sorted[chosen]);
  }

  std::vector<size_t> assignment(n, k);
  for (int iteration = 0; iteration < kMaxLloydIterations; ++iteration) {
    std::sort(centers.begin(), centers.end());
    bool changed = false;
    std::vector<double> sums(centers.size(), 0.0);
    std::vector<size_t> counts(centers.size(), 0);
    for (size_t i = 0; i < n; ++i) {
      size_t best = 0;
      double best_distance = std::abs(sorted[i] - centers[0]);
      for (size_t c = 1; c < centers.size(); ++c) {
        const double distance = std::abs(sorted[i] - centers[c]);
        if (distance < best_distance) {
          best = c;
          best_distance = distance;
        }
      }
      if (assignment[i] != best) {
        assignment[i] = best;
        changed = true;
      }
      sums[best] += sorted[i];
      ++counts[best];
    }
    for (size_t c = 0; c < centers.size(); ++c) {
      if (counts[c] > 0) centers[c] = sums[c] / static_cast<double>(counts[c]);
    }
    if (!changed) break;
  }
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  return centers;
}

std::vector<double> KMeansEdges(const std::vector<double>& sorted,
                                size_t n_grids, uint64_t seed) {
  const std::vector<double> centers = KMeansCenters(sorted, n_grids, seed);
  std::vector<double> edges;
  edges.push_back(sorted.front());
  for (size_t c = 0; c + 1 < centers.size(); ++c) {
    edges.push_back(centers[c] + (centers[c + 1] - centers[c]) / 2.0);
  }
  edges.push_back(sorted.back());
  return edges;
}

void MergeAdjacent(GridHistogram& h, size_t left) {
  h.target_counts[left] += h.target_counts[left + 1];
  h.total_counts[left] += h.total_counts[left + 1];
  h.target_counts.erase(h.target_counts.begin() + left + 1);
  h.total_counts.erase(h.total_counts.begin() + left + 1);
  h.edges.erase(h.edges.begin() + left + 1);
}

bool MergeEqualRatios(GridHistogram& h) {
  bool changed = false;
  size_t i = 0;
  while (i + 1 < h.size()) {
    const bool both_filled = h.total_counts[i] > 0 && h.total_counts[i + 1] > 0;
    if (both_filled &&
        CompareFractions(h.target_counts[i], h.total_counts[i],
                         h.target_counts[i + 1], h.total_counts[i + 1]) == 0) {
      MergeAdjacent(h, i);
      changed = true;
    } else {
      ++i;
    }
  }
  return changed;
}

bool MergeFirstEmpty(GridHistogram& h) {
  if (h.size() < 2) return false;
  for (size_t i = 0; i < h.size(); ++i) {
    if (h.total_counts[i] != 0) continue;
    bool to_left;
    if (i == 0) {
      to_left = false;
    } else if (i + 1 == h.size()) {
      to_left = true;
    } else {
      to_left = CompareFractions(h.target_counts[i - 1], h.total_counts[i - 1],
                                 h.target_counts[i + 1],
                                 h.total_counts[i + 1]) >= 0;
    }
    MergeAdjacent(h, to_left ? i - 1 : i);
    return true;
  }
  return false;
}

}  // namespace

std::string_view StrategyName(BinningStrategy strategy) {
  switch (strategy) {
    case BinningStrategy::kUniform: return "uniform";
    case BinningStrategy::kKMeans: return "kmeans";
    case BinningStrategy::kQuantile: return "quantile";
  }
  return "uniform";
}

std::optional<BinningStrategy> ParseStrategy(std::string_view name) {
  if (name == "uniform") return BinningStrategy::kUniform;
  if (name == "kmeans") return BinningStrategy::kKMeans;
  if (name == "quantile") return BinningStrategy::kQuantile;
  return std::nullopt;
}

std::vector<double> MakeGrids(std::span<const double> values, size_t n_grids,
                              BinningStrategy strategy, uint64_t seed) {
  if (n_grids < 2) {
    throw Error(ErrorKind::kConfig, "number of grids must be at least 2");
  }
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (double v : values) {
    if (!std::isnan(v)) sorted.push_back(v);
  }
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty() || sorted.front() == sorted.back()) {
    throw Error(ErrorKind::kDegenerateFeature,
                "binning needs at least two distinct values");
  }
  switch (strategy) {
    case BinningStrategy::kUniform:
      return CollapseEdges(UniformEdges(sorted.front(), sorted.back(), n_grids));
    case BinningStrategy::kQuantile:
      return CollapseEdges(QuantileEdges(sorted, n_grids));
    case BinningStrategy::kKMeans:
      return CollapseEdges(KMeansEdges(sorted, n_grids, seed));
  }
  return {};
}

size_t GridIndex(std::span<const double> edges, double value) {
  const size_t grids = edges.size() - 1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), value);
  if (it == edges.begin()) return 0;
  return std::min(static_cast<size_t>(it - edges.begin()) - 1, grids - 1);
}

CountRatio GridHistogram::range_ratio(size_t first, size_t last) const {
  CountRatio ratio;
  ratio.condition_target = condition_target;
  ratio.condition_total = condition_total;
  for (size_t g = first; g <= last; ++g) {
    ratio.target_in += target_counts[g];
    ratio.total_in += total_counts[g];
  }
  return ratio;
}

GridHistogram CountGrids(std::vector<double> edges,
                         std::span<const double> values,
                         std::span<const uint8_t> target_flags,
                         std::span<const uint8_t> condition_mask,
                         size_t feature) {
  if (values.size() != target_flags.size() ||
      values.size() != condition_mask.size()) {
    throw Error(ErrorKind::kShape, "grid counting inputs differ in length");
  }
  if (edges.size() < 2) {
    throw Error(ErrorKind::kShape, "a histogram needs at least two edges");
  }
  GridHistogram h;
  h.feature = feature;
  h.edges = std::move(edges);
  h.target_counts.assign(h.edges.size() - 1, 0);
  h.total_counts.assign(h.edges.size() - 1, 0);
  for (size_t n = 0; n < values.size(); ++n) {
    if (!condition_mask[n]) continue;
    ++h.condition_total;
    if (target_flags[n]) ++h.condition_target;
    if (std::isnan(values[n])) continue;
    const size_t g = GridIndex(h.edges, values[n]);
    ++h.total_counts[g];
    if (target_flags[n]) ++h.target_counts[g];
  }
  return h;
}

GridHistogram MergeGrids(GridHistogram histogram) {
  while (true) {
    const bool merged_equal = MergeEqualRatios(histogram);
    const bool merged_empty = MergeFirstEmpty(histogram);
    if (!merged_equal && !merged_empty) break;
  }
  return histogram;
}

}  // namespace amore
