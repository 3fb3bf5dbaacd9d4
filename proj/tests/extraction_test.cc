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

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "amore/error.h"
#include "amore/metrics.h"
#include "amore/random.h"
#include "amore/synth.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace amore {
namespace {

GridHistogram FixtureHistogram() {
  const auto fixture = testing::BinningFixture();
  const auto values = fixture.table.column(0).numeric_values();
  const RowMask all(fixture.table.n_rows(), 1);
  return CountGrids({0, 2.5, 5, 7.5, 10}, values, fixture.target.flags, all);
}

ExtractionConfig FixtureConfig() {
  ExtractionConfig config;
  config.n_grids = 4;
  config.min_support = 8;
  config.max_rules = 1;
  return config;
}

// Values 0.5, 1.5, ... with five rows per unit grid; targets per grid given.
testing::LabeledTable GridTable(const std::vector<int>& targets_per_grid) {
  std::vector<double> values;
  testing::LabeledTable out;
  for (size_t g = 0; g < targets_per_grid.size(); ++g) {
    for (int i = 0; i < 5; ++i) {
      values.push_back(static_cast<double>(g) + 0.1 + 0.2 * i);
      out.target.flags.push_back(i < targets_per_grid[g] ? 1 : 0);
    }
  }
  std::vector<FeatureColumn> columns;
  columns.push_back(FeatureColumn::Numeric("x", values));
  out.table = DataTable(std::move(columns));
  return out;
}

TEST(GridRatiosTest, Fixture) {
  const auto ratios = GridRatios(FixtureHistogram());
  ASSERT_EQ(ratios.size(), 4u);
  EXPECT_DOUBLE_EQ(ratios[0], 0.4);
  EXPECT_DOUBLE_EQ(ratios[1], 1.2);
  EXPECT_DOUBLE_EQ(ratios[2], 2.0);
  EXPECT_DOUBLE_EQ(ratios[3], 0.4);
}

TEST(GridRatiosTest, UniformDensityGivesOne) {
  GridHistogram h;
  h.edges = {0, 1, 2, 3};
  h.target_counts = {2, 4, 1};
  h.total_counts = {4, 8, 2};
  h.condition_target = 7;
  h.condition_total = 14;
  for (double r : GridRatios(h)) EXPECT_DOUBLE_EQ(r, 1.0);
}

TEST(GridRatiosTest, EmptyGridGivesZero) {
  GridHistogram h;
  h.edges = {0, 1, 2};
  h.target_counts = {2, 0};
  h.total_counts = {4, 0};
  h.condition_target = 2;
  h.condition_total = 4;
  EXPECT_EQ(GridRatios(h)[1], 0.0);
}

TEST(GridRatiosTest, NoTargetIsError) {
  GridHistogram h;
  h.edges = {0, 1};
  h.target_counts = {0};
  h.total_counts = {4};
  h.condition_total = 4;
  try {
    GridRatios(h);
    FAIL() << "expected NoTargetError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoTarget);
  }
}

TEST(FindPeaksTest, Examples) {
  const std::vector<double> interior = {0.4, 1.2, 2.0, 0.4};
  EXPECT_EQ(FindPeaks(interior), std::vector<size_t>{2});
  const std::vector<double> boundary = {2.0, 0.5, 1.8};
  EXPECT_EQ(FindPeaks(boundary), (std::vector<size_t>{0, 2}));
  const std::vector<double> flat = {1.0, 0.9};
  EXPECT_TRUE(FindPeaks(flat).empty());
  const std::vector<double> ordered = {1.5, 0.5, 3.0, 0.1, 1.5};
  EXPECT_EQ(FindPeaks(ordered), (std::vector<size_t>{2, 0, 4}));
}

TEST(GenFeatureIntervalTest, FixtureGrowsToTwoGrids) {
  const auto grown = GenFeatureInterval(FixtureHistogram(), 2, 8);
  ASSERT_TRUE(grown.has_value());
  EXPECT_EQ(grown->first, 1u);
  EXPECT_EQ(grown->last, 2u);
  EXPECT_EQ(grown->ratio, (CountRatio{8, 10, 10, 20}));
  EXPECT_DOUBLE_EQ(grown->ratio.value(), 1.6);
  EXPECT_EQ(grown->support(), 10);
}

TEST(GenFeatureIntervalTest, SupportedPeakStaysSingle) {
  const auto grown = GenFeatureInterval(FixtureHistogram(), 2, 5);
  ASSERT_TRUE(grown.has_value());
  EXPECT_EQ(grown->first, 2u);
  EXPECT_EQ(grown->last, 2u);
}

TEST(GenFeatureIntervalTest, InfeasibleSupportIsNone) {
  EXPECT_FALSE(GenFeatureInterval(FixtureHistogram(), 2, 21).has_value());
}

TEST(GenFeatureIntervalTest, GrowthStrictlyIncreasesSupport) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    GridHistogram h;
    const size_t grids = 2 + UniformIndex(rng, 8);
    for (size_t g = 0; g <= grids; ++g) h.edges.push_back(double(g));
    for (size_t g = 0; g < grids; ++g) {
      const int64_t total = 1 + static_cast<int64_t>(UniformIndex(rng, 9));
      const int64_t target =
          static_cast<int64_t>(UniformIndex(rng, static_cast<size_t>(total) + 1));
      h.total_counts.push_back(total);
      h.target_counts.push_back(target);
      h.condition_total += total;
      h.condition_target += target;
    }
    if (h.condition_target == 0) continue;
    const int64_t s_min =
        1 + static_cast<int64_t>(UniformIndex(rng, h.condition_total));
    for (size_t start = 0; start < grids; ++start) {
      const auto grown = GenFeatureInterval(h, start, s_min);
      if (!grown) continue;
      EXPECT_LE(grown->first, start);
      EXPECT_GE(grown->last, start);
      EXPECT_GE(grown->support(), s_min);
      EXPECT_TRUE(grown->ratio.exceeds_one());
      EXPECT_EQ(grown->ratio, h.range_ratio(grown->first, grown->last));
    }
  }
}

TEST(GetCandidateRulesTest, CategoricalScreen) {
  std::vector<std::optional<std::string>> tokens;
  testing::LabeledTable t;
  for (int i = 0; i < 5; ++i) {
    tokens.push_back("A");
    t.target.flags.push_back(i < 4 ? 1 : 0);
  }
  for (int i = 0; i < 5; ++i) {
    tokens.push_back("B");
    t.target.flags.push_back(i < 1 ? 1 : 0);
  }
  std::vector<FeatureColumn> columns;
  columns.push_back(FeatureColumn::Categorical("c", tokens));
  t.table = DataTable(std::move(columns));
  ExtractionConfig config;
  config.min_support = 5;
  const RowMask all(10, 1);
  const auto candidates = GetCandidateRules(t.table, t.target, 0, all, config);
  ASSERT_EQ(candidates.size(), 1u);
  EXPECT_EQ(candidates[0].rule.category().token, "A");
  EXPECT_DOUBLE_EQ(candidates[0].ratio.value(), 1.6);
  EXPECT_EQ(candidates[0].support(), 5);
}

TEST(GetCandidateRulesTest, NoCategoryAboveOne) {
  std::vector<std::optional<std::string>> tokens = {"A", "A", "B", "B"};
  testing::LabeledTable t;
  t.target.flags = {1, 0, 1, 0};
  std::vector<FeatureColumn> columns;
  columns.push_back(FeatureColumn::Categorical("c", tokens));
  t.table = DataTable(std::move(columns));
  const RowMask all(4, 1);
  EXPECT_TRUE(
      GetCandidateRules(t.table, t.target, 0, all, ExtractionConfig{}).empty());
}

TEST(GetCandidateRulesTest, NumericFixtureTopOne) {
  const auto fixture = testing::BinningFixture();
  ExtractionConfig config = FixtureConfig();
  config.branching = 1;
  const RowMask all(20, 1);
  const auto candidates =
      GetCandidateRules(fixture.table, fixture.target, 0, all, config);
  ASSERT_EQ(candidates.size(), 1u);
  EXPECT_EQ(candidates[0].rule.interval(), (Interval{2.5, 7.5}));
  EXPECT_EQ(candidates[0].ratio, (CountRatio{8, 10, 10, 20}));
}

TEST(GetCandidateRulesTest, ConstantFeatureIsDegenerate) {
  std::vector<FeatureColumn> columns;
  columns.push_back(FeatureColumn::Numeric("x", {1, 1, 1}));
  const DataTable table(std::move(columns));
  TargetIndicator target;
  target.flags = {1, 0, 0};
  const RowMask all(3, 1);
  try {
    GetCandidateRules(table, target, 0, all, ExtractionConfig{});
    FAIL() << "expected DegenerateFeatureError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateFeature);
  }
}

TEST(ExtractRuleSetsTest, FixtureSingleRule) {
  const auto fixture = testing::BinningFixture();
  const std::vector<size_t> features = {0};
  const auto sets =
      ExtractRuleSets(fixture.table, fixture.target, features, FixtureConfig());
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_EQ(sets[0].rules.size(), 1u);
  EXPECT_EQ(sets[0].stats.support, 10);
  EXPECT_EQ(sets[0].stats.target_hits, 8);
  EXPECT_DOUBLE_EQ(sets[0].stats.confidence, 0.8);
  EXPECT_DOUBLE_EQ(sets[0].stats.fitness, 0.6);
}

TEST(ExtractRuleSetsTest, TargetEverywhereGivesNothing) {
  auto fixture = testing::BinningFixture();
  fixture.target.flags.assign(20, 1);
  const std::vector<size_t> features = {0};
  EXPECT_TRUE(
      ExtractRuleSets(fixture.table, fixture.target, features, FixtureConfig())
          .empty());
}

TEST(ExtractRuleSetsTest, SupportAboveRowsIsInfeasible) {
  const auto fixture = testing::BinningFixture();
  ExtractionConfig config = FixtureConfig();
  config.min_support = 21;
  const std::vector<size_t> features = {0};
  try {
    ExtractRuleSets(fixture.table, fixture.target, features, config);
    FAIL() << "expected InfeasibleConfigError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInfeasibleConfig);
  }
}

TEST(ExtractRuleSetsTest, ZeroMaxRulesIsConfigError) {
  const auto fixture = testing::BinningFixture();
  ExtractionConfig config = FixtureConfig();
  config.max_rules = 0;
  const std::vector<size_t> features = {0};
  try {
    ExtractRuleSets(fixture.table, fixture.target, features, config);
    FAIL() << "expected ConfigError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
}

TEST(ExtractRuleSetsTest, EmptyTargetIsNoTarget) {
  auto fixture = testing::BinningFixture();
  fixture.target.flags.assign(20, 0);
  const std::vector<size_t> features = {0};
  try {
    ExtractRuleSets(fixture.table, fixture.target, features, FixtureConfig());
    FAIL() << "expected NoTargetError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoTarget);
  }
}

TEST(ExtractRuleSetsTest, TwoModeDataGivesTwoRuleSetAbovePrior) {
  const SyntheticData data = GenSynthetic(TwoModeSpec(2000, 0.05, 7));
  ExtractionConfig config;
  config.n_grids = 10;
  config.min_support = 100;
  const std::vector<size_t> features = {0, 1};
  const auto sets = ExtractRuleSets(data.table, data.target, features, config);
  const double prior = static_cast<double>(data.target.count()) / 2000.0;
  bool found = false;
  for (const RuleSet& set : sets) {
    if (set.rules.size() == 2 && set.stats.confidence > prior) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(ExtractRuleSetsTest, PropertiesOnRandomTables) {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t rows = 50 + UniformIndex(rng, 250);
    const auto t = testing::RandomTable(rng, rows, 3, trial % 2 == 0);
    ExtractionConfig config;
    config.n_grids = 3 + UniformIndex(rng, 6);
    config.min_support = 1 + static_cast<int64_t>(UniformIndex(rng, rows / 4));
    config.max_rules = 1 + UniformIndex(rng, 3);
    config.strategy = static_cast<BinningStrategy>(UniformIndex(rng, 3));
    const std::vector<size_t> features = {0, 1, 2};
    const auto sets = ExtractRuleSets(t.table, t.target, features, config);
    const auto again = ExtractRuleSets(t.table, t.target, features, config);
    ASSERT_EQ(sets.size(), again.size());
    const int64_t target_count = static_cast<int64_t>(t.target.count());
    for (size_t i = 0; i < sets.size(); ++i) {
      const RuleSet& set = sets[i];
      EXPECT_EQ(set.rules, again[i].rules);
      EXPECT_GE(set.stats.support, config.min_support);
      EXPECT_LE(set.rules.size(), config.max_rules);
      const RuleStats direct = Evaluate(t.table, t.target, set.rules);
      EXPECT_EQ(direct.support, set.stats.support);
      EXPECT_EQ(direct.target_hits, set.stats.target_hits);
      EXPECT_EQ(direct.steps, set.stats.steps);
      // Confidence before step k times r_k equals confidence after it.
      int64_t hits = target_count;
      int64_t support = static_cast<int64_t>(rows);
      ASSERT_EQ(set.stats.steps.size(), set.rules.size());
      for (const CountRatio& step : set.stats.steps) {
        EXPECT_EQ(step.condition_target, hits);
        EXPECT_EQ(step.condition_total, support);
        EXPECT_TRUE(step.exceeds_one());
        EXPECT_EQ(CompareFractions(step.target_in, step.total_in, hits, support),
                  1);
        hits = step.target_in;
        support = step.total_in;
      }
    }
  }
}

TEST(ExtractLocalTest, InsideIntervalMatchesGlobal) {
  const auto fixture = testing::BinningFixture();
  const std::vector<size_t> features = {0};
  const SamplePoint sample = {SampleValue(6.0)};
  const auto local = ExtractLocal(fixture.table, fixture.target, features,
                                  sample, FixtureConfig());
  ASSERT_TRUE(local.has_value());
  const auto global =
      ExtractRuleSets(fixture.table, fixture.target, features, FixtureConfig());
  EXPECT_EQ(local->rules, global[0].rules);
}

TEST(ExtractLocalTest, GrowthFromLowGridReachesPeak) {
  const auto fixture = testing::BinningFixture();
  const std::vector<size_t> features = {0};
  const SamplePoint sample = {SampleValue(8.0)};
  const auto local = ExtractLocal(fixture.table, fixture.target, features,
                                  sample, FixtureConfig());
  // Grid 3 annexes grid 2 to reach support; ratio 6/10 over 10/20 = 1.2.
  ASSERT_TRUE(local.has_value());
  EXPECT_EQ(local->rules[0].interval(), (Interval{5.0, kUnbounded}));
  EXPECT_EQ(local->stats.support, 10);
  EXPECT_EQ(local->stats.target_hits, 6);
}

TEST(ExtractLocalTest, OutlierHasNoRule) {
  const auto t = GridTable({0, 0, 5, 5});
  ExtractionConfig config;
  config.n_grids = 4;
  config.min_support = 8;
  config.max_rules = 1;
  const std::vector<size_t> features = {0};
  const SamplePoint sample = {SampleValue(0.5)};
  EXPECT_FALSE(
      ExtractLocal(t.table, t.target, features, sample, config).has_value());
  const SamplePoint far = {SampleValue(-100.0)};
  EXPECT_FALSE(
      ExtractLocal(t.table, t.target, features, far, config).has_value());
  const SamplePoint high = {SampleValue(100.0)};
  EXPECT_TRUE(
      ExtractLocal(t.table, t.target, features, high, config).has_value());
}

RuleSet WithStats(int64_t support, int64_t hits, int64_t target_count,
                  size_t n_rules) {
  RuleSet set;
  set.rules.resize(n_rules);
  set.stats.support = support;
  set.stats.target_hits = hits;
  set.stats.target_count = target_count;
  set.stats.confidence = ConfidenceFromCounts(support, hits);
  set.stats.fitness = FitnessFromCounts(support, hits, target_count);
  return set;
}

TEST(SelectBestTest, ConfidenceFloorFilters) {
  // confidence 0.993 / fitness 0.202 against 0.515 / 0.033.
  const std::vector<RuleSet> sets = {WithStats(2736, 2717, 13379, 1),
                                     WithStats(14501, 7468, 13379, 1)};
  EXPECT_EQ(&SelectBest(sets, 0.8), &sets[0]);
}

TEST(SelectBestTest, FloorFilterBeatsHigherFitness) {
  const std::vector<RuleSet> sets = {WithStats(100, 70, 100, 1),
                                     WithStats(20, 19, 100, 1)};
  EXPECT_EQ(&SelectBest(sets, 0.9), &sets[1]);
  EXPECT_EQ(&SelectBest(sets, 0.0), &sets[0]);
}

TEST(SelectBestTest, FallbackToMaxFitness) {
  const std::vector<RuleSet> sets = {WithStats(10, 6, 50, 1),
                                     WithStats(40, 25, 50, 2)};
  EXPECT_EQ(&SelectBest(sets, 0.99), &sets[1]);
}

TEST(SelectBestTest, TiesPreferConfidenceThenFewerRules) {
  // Fitness 10/T for both; the second is more confident.
  const std::vector<RuleSet> by_confidence = {WithStats(30, 20, 50, 1),
                                              WithStats(10, 10, 50, 2)};
  EXPECT_EQ(&SelectBest(by_confidence, 0.0), &by_confidence[1]);
  const std::vector<RuleSet> by_rules = {WithStats(10, 10, 50, 2),
                                         WithStats(10, 10, 50, 1)};
  EXPECT_EQ(&SelectBest(by_rules, 0.0), &by_rules[1]);
}

TEST(SelectBestTest, EmptyIsEmptyResult) {
  try {
    SelectBest({}, 0.8);
    FAIL() << "expected EmptyResultError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyResult);
  }
}

TEST(CountRatioTest, MergedRatioLiesBetween) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const int64_t beta_a = 1 + static_cast<int64_t>(UniformIndex(rng, 1000));
    const int64_t beta_b = 1 + static_cast<int64_t>(UniformIndex(rng, 1000));
    const int64_t alpha_a = static_cast<int64_t>(UniformIndex(rng, beta_a + 1));
    const int64_t alpha_b = static_cast<int64_t>(UniformIndex(rng, beta_b + 1));
    const int order = CompareFractions(alpha_a, beta_a, alpha_b, beta_b);
    if (order == 0) continue;
    const int64_t alpha = alpha_a + alpha_b;
    const int64_t beta = beta_a + beta_b;
    EXPECT_EQ(CompareFractions(alpha_a, beta_a, alpha, beta), order);
    EXPECT_EQ(CompareFractions(alpha, beta, alpha_b, beta_b), order);
  }
}

}  // namespace
}  // namespace amore
