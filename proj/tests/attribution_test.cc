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

#include "amore/attribution.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "amore/error.h"
#include "amore/random.h"
#include "gtest/gtest.h"

namespace amore {
namespace {

ImportanceMatrix WorkedMatrix() {
  ImportanceMatrix matrix({"f0", "f1", "f2"});
  for (const std::vector<double>& row :
       std::vector<std::vector<double>>{
           {0.7, 0.2, 0.1}, {0.6, 0.3, 0.1}, {0.5, 0.4, 0.1}}) {
    matrix.AddRow(row);
  }
  return matrix;
}

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

TEST(IntegratedGradientTest, LinearClosedForm) {
  const DifferentiableScorer scorer{ScorerKind::kLinear, {2.0, -1.0}, 0.0};
  const std::vector<double> baseline = {1, 1};
  const std::vector<double> test = {0, 0};
  EXPECT_EQ(IntegratedGradient(scorer, baseline, test, 1),
            (std::vector<double>{2.0, -1.0}));
}

TEST(IntegratedGradientTest, ZeroDisplacement) {
  const DifferentiableScorer scorer{ScorerKind::kLogistic, {0.3, 2.0}, 0.5};
  const std::vector<double> x = {0.4, -1.0};
  for (double v : IntegratedGradient(scorer, x, x, 20)) EXPECT_EQ(v, 0.0);
}

TEST(IntegratedGradientTest, LogisticCompleteness) {
  const DifferentiableScorer scorer{ScorerKind::kLogistic, {1.0, 0.0}, 0.0};
  const std::vector<double> baseline = {2, 0};
  const std::vector<double> test = {0, 0};
  const auto ig = IntegratedGradient(scorer, baseline, test, 1000);
  EXPECT_NEAR(ig[0], 0.3808, 1e-4);
  EXPECT_EQ(ig[1], 0.0);
  EXPECT_NEAR(ig[0] + ig[1], Sigmoid(2.0) - Sigmoid(0.0), 1e-6);
}

TEST(IntegratedGradientTest, LengthMismatchIsShapeError) {
  const DifferentiableScorer scorer{ScorerKind::kLinear, {1.0, 1.0}, 0.0};
  const std::vector<double> a = {1, 2};
  const std::vector<double> b = {1};
  try {
    IntegratedGradient(scorer, a, b);
    FAIL() << "expected ShapeError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kShape);
  }
}

TEST(ImportanceScoresTest, DirectFormula) {
  const std::vector<double> j = {0.3, -0.1};
  const auto scores = ImportanceScores(j, 0.7, 0.5, 1e-9);
  ASSERT_TRUE(scores.has_value());
  EXPECT_NEAR((*scores)[0], 1.5, 1e-12);
  EXPECT_NEAR((*scores)[1], 0.5, 1e-12);
}

TEST(ImportanceScoresTest, NegativeShift) {
  const std::vector<double> j = {0.0, 0.0, 0.4};
  const auto scores = ImportanceScores(j, 0.1, 0.5, 1e-9);
  ASSERT_TRUE(scores.has_value());
  EXPECT_EQ(*scores, (std::vector<double>{0.0, 0.0, 1.0}));
}

TEST(ImportanceScoresTest, DegenerateShiftSkips) {
  const std::vector<double> j = {0.3};
  EXPECT_FALSE(ImportanceScores(j, 0.5, 0.5, 1e-9).has_value());
}

TEST(BuildImportanceMatrixTest, OneRowPerNonSkippedPair) {
  const DifferentiableScorer scorer{ScorerKind::kLinear, {1.0, 2.0}, 0.0};
  const std::vector<Sample> one = {{0, 0}};
  const std::vector<Sample> other = {{1, 1}};
  EXPECT_EQ(BuildImportanceMatrix(scorer, one, other, {"a", "b"}).rows(), 1u);

  // The second baseline equals the first test sample.
  const std::vector<Sample> baselines = {{0, 0}, {1, 0}};
  const std::vector<Sample> tests = {{1, 0}, {0, 1}, {2, 2}};
  const ImportanceMatrix matrix =
      BuildImportanceMatrix(scorer, baselines, tests, {"a", "b"});
  EXPECT_EQ(matrix.rows(), 5u);
  EXPECT_EQ(matrix.pair_index().size(), 5u);
  for (size_t r = 0; r < matrix.rows(); ++r) {
    EXPECT_NE(matrix.pair_index()[r], (std::pair<size_t, size_t>{1, 0}));
  }
}

TEST(BuildImportanceMatrixTest, AllSkippedIsEmptyMatrix) {
  const DifferentiableScorer scorer{ScorerKind::kLinear, {1.0}, 0.0};
  const std::vector<Sample> samples = {{3.0}};
  try {
    BuildImportanceMatrix(scorer, samples, samples, {"a"});
    FAIL() << "expected EmptyMatrixError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyMatrix);
  }
}

TEST(LoadImportanceMatrixTest, ZerosAndIdentity) {
  std::istringstream zeros("a,b,c\n0,0,0\n0,0,0\n0,0,0\n0,0,0\n");
  const ImportanceMatrix z = ParseImportanceMatrix(zeros);
  EXPECT_EQ(z.rows(), 4u);
  EXPECT_EQ(z.cols(), 3u);
  std::istringstream small("a,b\n0.7,0.2\n0.6,0.3\n");
  const ImportanceMatrix m = ParseImportanceMatrix(small);
  EXPECT_EQ(m.at(0, 0), 0.7);
  EXPECT_EQ(m.at(1, 1), 0.3);
  std::ostringstream out;
  WriteImportanceMatrix(out, m);
  EXPECT_EQ(out.str(), "a,b\n0.7,0.2\n0.6,0.3\n");
}

TEST(LoadImportanceMatrixTest, RaggedRowIsParseError) {
  std::istringstream in("a,b\n0.7\n");
  EXPECT_THROW(ParseImportanceMatrix(in), ParseError);
}

TEST(LoadImportanceMatrixTest, NegativeScoreIsDomainError) {
  std::istringstream in("a,b\n0.7,-0.1\n");
  try {
    ParseImportanceMatrix(in);
    FAIL() << "expected DomainError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
}

TEST(ScanThresholdTest, WorkedMatrix) {
  EXPECT_DOUBLE_EQ(ScanThreshold(WorkedMatrix(), 1.0), 0.3);
}

TEST(ScanThresholdTest, SingleFeatureReturnsMinimum) {
  ImportanceMatrix matrix({"a"});
  for (double v : {0.4, 0.2, 0.9}) matrix.AddRow(std::vector<double>{v});
  EXPECT_DOUBLE_EQ(ScanThreshold(matrix, 1.0), 0.2);
}

TEST(ScanThresholdTest, AllZeroIsNoFeature) {
  ImportanceMatrix matrix({"a", "b"});
  matrix.AddRow(std::vector<double>{0, 0});
  try {
    ScanThreshold(matrix, 1.0);
    FAIL() << "expected NoFeatureError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoFeature);
  }
}

TEST(ScanThresholdTest, JumpPastOneKeepsTwoFeatures) {
  ImportanceMatrix matrix({"a", "b"});
  matrix.AddRow(std::vector<double>{0.5, 0.5});
  matrix.AddRow(std::vector<double>{0.5, 0.5});
  EXPECT_DOUBLE_EQ(ScanThreshold(matrix, 1.0), 0.5);
}

TEST(ScanThresholdTest, GammaOutOfRangeIsConfigError) {
  try {
    ScanThreshold(WorkedMatrix(), 0.0);
    FAIL() << "expected ConfigError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
}

TEST(QualifyingFeaturesTest, MonotoneOnRandomMatrices) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t cols = 1 + UniformIndex(rng, 6);
    std::vector<std::string> names;
    for (size_t c = 0; c < cols; ++c) names.push_back("f" + std::to_string(c));
    ImportanceMatrix matrix(names);
    std::vector<double> values;
    for (size_t r = 0; r < 1 + UniformIndex(rng, 30); ++r) {
      std::vector<double> row(cols);
      for (double& v : row) {
        v = std::round(UnitDouble(rng) * 20.0) / 20.0;
        values.push_back(v);
      }
      matrix.AddRow(row);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    size_t previous = cols;
    for (double t : values) {
      const size_t q = QualifyingFeatures(matrix, t, 0.9);
      EXPECT_LE(q, previous);
      previous = q;
    }
  }
}

TEST(ToFeatureSequencesTest, WorkedMatrix) {
  const ImportanceMatrix matrix = WorkedMatrix();
  EXPECT_EQ(ToFeatureSequences(matrix, 0.3),
            (std::vector<ItemSet>{{0}, {0, 1}, {0, 1}}));
  EXPECT_TRUE(ToFeatureSequences(matrix, 0.8).empty());
  for (const ItemSet& set : ToFeatureSequences(matrix, 0.0)) {
    EXPECT_EQ(set, (ItemSet{0, 1, 2}));
  }
}

TEST(ToFeatureSequencesTest, SetsShrinkAsThresholdRises) {
  Rng rng(8);
  ImportanceMatrix matrix({"a", "b", "c", "d"});
  for (int r = 0; r < 40; ++r) {
    std::vector<double> row(4);
    for (double& v : row) v = UnitDouble(rng);
    matrix.AddRow(row);
  }
  for (double low = 0.0; low < 1.0; low += 0.1) {
    const double high = low + 0.05;
    for (size_t r = 0; r < matrix.rows(); ++r) {
      std::vector<uint32_t> at_low, at_high;
      for (uint32_t c = 0; c < 4; ++c) {
        if (matrix.at(r, c) >= low) at_low.push_back(c);
        if (matrix.at(r, c) >= high) at_high.push_back(c);
      }
      EXPECT_TRUE(std::includes(at_low.begin(), at_low.end(), at_high.begin(),
                                at_high.end()));
    }
    EXPECT_LE(ToFeatureSequences(matrix, high).size(),
              ToFeatureSequences(matrix, low).size());
  }
}

TEST(SelectFrequentFeaturesTest, WorkedMatrix) {
  const FeatureSelection selection =
      SelectFrequentFeatures(WorkedMatrix(), 1.0, 2, 3);
  EXPECT_DOUBLE_EQ(selection.threshold, 0.3);
  EXPECT_EQ(selection.features, (ItemSet{0, 1}));
  const std::vector<FrequentItemset> expected = {
      {{0}, 3}, {{1}, 2}, {{0, 1}, 2}};
  EXPECT_EQ(selection.itemsets, expected);
}

TEST(SelectFrequentFeaturesTest, OneFeature) {
  ImportanceMatrix matrix({"only"});
  matrix.AddRow(std::vector<double>{0.3});
  matrix.AddRow(std::vector<double>{0.6});
  EXPECT_EQ(SelectFrequentFeatures(matrix, 1.0, 1, 3).features, ItemSet{0});
}

TEST(SelectFrequentFeaturesTest, MinCountAboveRowsIsEmptyResult) {
  try {
    SelectFrequentFeatures(WorkedMatrix(), 1.0, 4, 3);
    FAIL() << "expected EmptyResultError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyResult);
  }
}

TEST(SamplingTest, CentroidsAndBalancedSubset) {
  const std::vector<Sample> samples = {{0, 0}, {2, 2}, {10, 10}, {12, 14}};
  const std::vector<int> classes = {0, 0, 1, 1};
  const auto centroids = ClassCentroids(samples, classes);
  ASSERT_EQ(centroids.size(), 2u);
  EXPECT_EQ(centroids[0], (Sample{1, 1}));
  EXPECT_EQ(centroids[1], (Sample{11, 12}));

  std::vector<int> many(100, 0);
  for (size_t i = 80; i < 100; ++i) many[i] = 1;
  const auto picked = BalancedSample(many, 10, 42);
  EXPECT_EQ(picked.size(), 10u);
  EXPECT_EQ(std::count_if(picked.begin(), picked.end(),
                          [&](size_t i) { return many[i] == 1; }),
            5);
  EXPECT_EQ(picked, BalancedSample(many, 10, 42));
}

}  // namespace
}  // namespace amore
