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

// Feature importance from integrated gradients and selection of features
// that are frequently important together.

#ifndef AMORE_ATTRIBUTION_H_
#define AMORE_ATTRIBUTION_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amore/itemsets.h"

namespace amore {

inline constexpr double kDefaultShiftEpsilon = 1e-9;
inline constexpr size_t kDefaultIntegrationSteps = 50;
inline constexpr double kDefaultGamma = 0.99;

using Sample = std::vector<double>;

enum class ScorerKind { kLinear, kLogistic };

// Built-in differentiable model: w.x + b, optionally through a sigmoid.
struct DifferentiableScorer {
  ScorerKind kind = ScorerKind::kLinear;
  std::vector<double> weights;
  double bias = 0.0;

  double Evaluate(std::span<const double> x) const;
  // Gradient with respect to x, written into `out` (size D).
  void Gradient(std::span<const double> x, std::span<double> out) const;
};

// Attribution of G(baseline) - G(test) to each feature, integrating the
// gradient along the straight path from `test` to `baseline` with a midpoint
// rule of `steps` points. Linear scorers use the closed form
// w_i * (baseline_i - test_i). Throws ShapeError on length mismatch and
// ConfigError when steps == 0.
std::vector<double> IntegratedGradient(const DifferentiableScorer& scorer,
                                       std::span<const double> baseline,
                                       std::span<const double> test,
                                       size_t steps = kDefaultIntegrationSteps);

// |j_i / (y - y_tilde)| per feature, or nullopt when |y - y_tilde| < eps.
std::optional<std::vector<double>> ImportanceScores(std::span<const double> j,
                                                    double y, double y_tilde,
                                                    double eps);

// Rows of non-negative importance scores, one column per feature.
class ImportanceMatrix {
 public:
  explicit ImportanceMatrix(std::vector<std::string> feature_names);

  // Throws ShapeError for a wrong width and DomainError for negative or
  // non-finite scores.
  void AddRow(std::span<const double> scores);
  void AddRow(std::span<const double> scores, size_t baseline, size_t test);

  size_t rows() const { return rows_; }
  size_t cols() const { return feature_names_.size(); }
  bool empty() const { return rows_ == 0; }
  double at(size_t row, size_t col) const { return scores_[row * cols() + col]; }
  std::span<const double> row(size_t r) const {
    return std::span<const double>(scores_).subspan(r * cols(), cols());
  }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  // (baseline, test) ids per row; empty when loaded from a file.
  const std::vector<std::pair<size_t, size_t>>& pair_index() const {
    return pair_index_;
  }

 private:
  std::vector<std::string> feature_names_;
  std::vector<double> scores_;
  std::vector<std::pair<size_t, size_t>> pair_index_;
  size_t rows_ = 0;
};

// One row per (baseline, test) pair whose output shift is at least eps.
// Throws EmptyMatrixError when every pair is skipped.
ImportanceMatrix BuildImportanceMatrix(const DifferentiableScorer& scorer,
                                       std::span<const Sample> baselines,
                                       std::span<const Sample> tests,
                                       std::vector<std::string> feature_names,
                                       size_t steps = kDefaultIntegrationSteps,
                                       double eps = kDefaultShiftEpsilon);

// CSV with a header of feature names. Throws ParseError for ragged or
// unparseable rows and DomainError for negative scores.
ImportanceMatrix ParseImportanceMatrix(std::istream& input);
ImportanceMatrix LoadImportanceMatrix(const std::filesystem::path& path);
void WriteImportanceMatrix(std::ostream& output, const ImportanceMatrix& matrix);

// Rows a feature must cover: ceil(gamma * rows). Throws ConfigError unless
// gamma is in (0, 1] and the result is at least 1.
size_t RequiredCoverage(size_t rows, double gamma);

// Number of features whose score is >= t in at least ceil(gamma * rows) rows.
size_t QualifyingFeatures(const ImportanceMatrix& matrix, double t,
                          double gamma);

// Smallest positive score value t (scanning distinct values upwards) at which
// exactly one feature qualifies. If the count drops from >= 2 straight to 0,
// the last t with >= 2 qualifying features is returned. Throws NoFeatureError
// when no positive t qualifies any feature.
double ScanThreshold(const ImportanceMatrix& matrix, double gamma);

// Per row, the features scoring >= j_th. Empty sets are dropped.
std::vector<ItemSet> ToFeatureSequences(const ImportanceMatrix& matrix,
                                        double j_th);

struct FeatureSelection {
  double threshold = 0.0;
  std::vector<FrequentItemset> itemsets;
  ItemSet features;
};

// Threshold scan, transaction conversion, FP-Growth and final pick.
FeatureSelection SelectFrequentFeatures(const ImportanceMatrix& matrix,
                                        double gamma, size_t c_min,
                                        size_t k_max);

// Mean sample per class, ordered by class id.
std::vector<Sample> ClassCentroids(std::span<const Sample> samples,
                                   std::span<const int> classes);

// Seeded random subset with up to m / n_classes indices per class, returned
// in class order. Classes with fewer members contribute all of them.
std::vector<size_t> BalancedSample(std::span<const int> classes, size_t m,
                                   uint64_t seed);

}  // namespace amore

#endif  // AMORE_ATTRIBUTION_H_
