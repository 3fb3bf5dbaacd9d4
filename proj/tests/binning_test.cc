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

#include <cmath>
#include <numeric>
#include <vector>

#include "amore/error.h"
#include "amore/random.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace amore {
namespace {

using Counts = std::vector<std::pair<int64_t, int64_t>>;

GridHistogram FromCounts(const Counts& counts) {
  GridHistogram h;
  for (size_t i = 0; i <= counts.size(); ++i) {
    h.edges.push_back(static_cast<double>(i));
  }
  for (const auto& [target, total] : counts) {
    h.target_counts.push_back(target);
    h.total_counts.push_back(total);
    h.condition_target += target;
    h.condition_total += total;
  }
  return h;
}

Counts ToCounts(const GridHistogram& h) {
  Counts out;
  for (size_t g = 0; g < h.size(); ++g) {
    out.emplace_back(h.target_counts[g], h.total_counts[g]);
  }
  return out;
}

TEST(MakeGridsTest, UniformEqualWidth) {
  const std::vector<double> values = {0, 3, 7, 10};
  EXPECT_EQ(MakeGrids(values, 5, BinningStrategy::kUniform),
            (std::vector<double>{0, 2, 4, 6, 8, 10}));
}

TEST(MakeGridsTest, KMeansTwoPointMasses) {
  const std::vector<double> values = {0, 0, 0, 10, 10, 10};
  EXPECT_EQ(MakeGrids(values, 2, BinningStrategy::kKMeans, 7),
            (std::vector<double>{0, 5, 10}));
}

TEST(MakeGridsTest, QuantileLinearInterpolation) {
  const std::vector<double> values = {1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_EQ(MakeGrids(values, 4, BinningStrategy::kQuantile),
            (std::vector<double>{1, 2.75, 4.5, 6.25, 8}));
}

TEST(MakeGridsTest, DuplicateEdgesCollapse) {
  const std::vector<double> values = {0, 0, 0, 0, 0, 0, 1};
  const auto edges = MakeGrids(values, 4, BinningStrategy::kQuantile);
  EXPECT_EQ(edges, (std::vector<double>{0, 1}));
}

TEST(MakeGridsTest, IgnoresMissingValues) {
  const std::vector<double> values = {NAN, 0, 10, NAN};
  EXPECT_EQ(MakeGrids(values, 2, BinningStrategy::kUniform),
            (std::vector<double>{0, 5, 10}));
}

TEST(MakeGridsTest, SingleValueIsDegenerate) {
  const std::vector<double> values = {3, 3, 3};
  try {
    MakeGrids(values, 4, BinningStrategy::kUniform);
    FAIL() << "expected DegenerateFeatureError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateFeature);
  }
}

TEST(MakeGridsTest, TooFewGridsIsConfigError) {
  const std::vector<double> values = {0, 1};
  EXPECT_THROW(MakeGrids(values, 1, BinningStrategy::kUniform), Error);
}

TEST(MakeGridsTest, KMeansIsSeedDeterministic) {
  Rng rng(9);
  std::vector<double> values(500);
  for (double& v : values) v = UniformReal(rng, -5, 5);
  EXPECT_EQ(MakeGrids(values, 6, BinningStrategy::kKMeans, 3),
            MakeGrids(values, 6, BinningStrategy::kKMeans, 3));
}

TEST(MakeGridsTest, StrategyNamesRoundTrip) {
  for (BinningStrategy s : {BinningStrategy::kUniform, BinningStrategy::kKMeans,
                            BinningStrategy::kQuantile}) {
    EXPECT_EQ(ParseStrategy(StrategyName(s)), s);
  }
  EXPECT_FALSE(ParseStrategy("bogus").has_value());
}

TEST(GridIndexTest, HalfOpenWithClosedLastGrid) {
  const std::vector<double> edges = {0, 2.5, 5, 7.5, 10};
  EXPECT_EQ(GridIndex(edges, 0.0), 0u);
  EXPECT_EQ(GridIndex(edges, 2.5), 1u);
  EXPECT_EQ(GridIndex(edges, 7.4), 2u);
  EXPECT_EQ(GridIndex(edges, 10.0), 3u);
  EXPECT_EQ(GridIndex(edges, -3.0), 0u);
  EXPECT_EQ(GridIndex(edges, 42.0), 3u);
}

TEST(CountGridsTest, BinningFixture) {
  const auto fixture = testing::BinningFixture();
  const auto values = fixture.table.column(0).numeric_values();
  const RowMask all(fixture.table.n_rows(), 1);
  const GridHistogram h =
      CountGrids(MakeGrids(values, 4, BinningStrategy::kUniform), values,
                 fixture.target.flags, all);
  EXPECT_EQ(h.edges, (std::vector<double>{0, 2.5, 5, 7.5, 10}));
  EXPECT_EQ(ToCounts(h), (Counts{{1, 5}, {3, 5}, {5, 5}, {1, 5}}));
  EXPECT_EQ(h.condition_total, 20);
  EXPECT_EQ(h.condition_target, 10);
}

TEST(CountGridsTest, EmptyConditionGivesZeros) {
  const auto fixture = testing::BinningFixture();
  const auto values = fixture.table.column(0).numeric_values();
  const RowMask none(fixture.table.n_rows(), 0);
  const GridHistogram h = CountGrids({0, 5, 10}, values, fixture.target.flags,
                                     none);
  EXPECT_EQ(ToCounts(h), (Counts{{0, 0}, {0, 0}}));
  EXPECT_EQ(h.condition_total, 0);
}

TEST(CountGridsTest, MissingValuesAreSkipped) {
  const std::vector<double> values = {1, NAN, 9};
  const RowMask target = {1, 1, 0};
  const RowMask all = {1, 1, 1};
  const GridHistogram h = CountGrids({0, 5, 10}, values, target, all);
  EXPECT_EQ(ToCounts(h), (Counts{{1, 1}, {0, 1}}));
  EXPECT_EQ(h.condition_total, 3);
  EXPECT_EQ(h.condition_target, 2);
}

TEST(CountGridsTest, AllInOneGrid) {
  const std::vector<double> values = {1, 2, 3};
  const RowMask target = {1, 0, 1};
  const RowMask all = {1, 1, 1};
  const GridHistogram h = CountGrids({0, 5, 10}, values, target, all);
  EXPECT_EQ(ToCounts(h), (Counts{{2, 3}, {0, 0}}));
}

TEST(MergeGridsTest, WorkedExample) {
  const GridHistogram merged =
      MergeGrids(FromCounts({{1, 2}, {2, 4}, {0, 0}, {3, 3}}));
  EXPECT_EQ(ToCounts(merged), (Counts{{3, 6}, {3, 3}}));
  EXPECT_EQ(merged.edges, (std::vector<double>{0, 2, 4}));
}

TEST(MergeGridsTest, NothingToMerge) {
  const GridHistogram h = FromCounts({{1, 4}, {3, 4}, {0, 4}});
  const GridHistogram merged = MergeGrids(h);
  EXPECT_EQ(ToCounts(merged), ToCounts(h));
  EXPECT_EQ(merged.edges, h.edges);
}

TEST(MergeGridsTest, AllEmpty) {
  const GridHistogram merged = MergeGrids(FromCounts({{0, 0}, {0, 0}, {0, 0}}));
  EXPECT_EQ(ToCounts(merged), (Counts{{0, 0}}));
  EXPECT_EQ(merged.edges, (std::vector<double>{0, 3}));
}

TEST(MergeGridsTest, EmptyGridTiesGoLeft) {
  const GridHistogram merged = MergeGrids(FromCounts({{1, 2}, {0, 0}, {2, 4}}));
  // Equal neighbours: step 1 does not see them as adjacent, the empty grid
  // joins the left one, then the equal ratios merge.
  EXPECT_EQ(ToCounts(merged), (Counts{{3, 6}}));
}

TEST(MergeGridsTest, PropertiesOnRandomHistograms) {
  Rng rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    Counts counts(1 + UniformIndex(rng, 10));
    for (auto& [target, total] : counts) {
      total = Bernoulli(rng, 0.3) ? 0 : static_cast<int64_t>(UniformIndex(rng, 6));
      target = total == 0 ? 0 : static_cast<int64_t>(UniformIndex(rng, total + 1));
    }
    const GridHistogram h = FromCounts(counts);
    const GridHistogram once = MergeGrids(h);
    const GridHistogram twice = MergeGrids(once);
    EXPECT_EQ(ToCounts(twice), ToCounts(once));
    EXPECT_EQ(twice.edges, once.edges);
    EXPECT_EQ(std::accumulate(once.target_counts.begin(),
                              once.target_counts.end(), int64_t{0}),
              h.condition_target);
    EXPECT_EQ(std::accumulate(once.total_counts.begin(),
                              once.total_counts.end(), int64_t{0}),
              h.condition_total);
    ASSERT_EQ(once.edges.size(), once.size() + 1);
    EXPECT_EQ(once.edges.front(), h.edges.front());
    EXPECT_EQ(once.edges.back(), h.edges.back());
    for (size_t i = 1; i < once.edges.size(); ++i) {
      EXPECT_LT(once.edges[i - 1], once.edges[i]);
    }
  }
}

}  // namespace
}  // namespace amore
