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
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "amore/error.h"
#include "amore/random.h"
#include "amore/table.h"

namespace amore {
namespace {

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void CheckWidth(const DifferentiableScorer& scorer, std::span<const double> x,
                const char* what) {
  if (x.size() != scorer.weights.size()) {
    throw Error(ErrorKind::kShape, std::string(what) + " has " +
                                       std::to_string(x.size()) +
                                       " features, scorer expects " +
                                       std::to_string(scorer.weights.size()));
  }
}

// need-th largest score of the column: the feature has at least `need` scores
// >= t exactly when t <= this value.
double CoverageLevel(const ImportanceMatrix& matrix, size_t col, size_t need) {
  std::vector<double> column(matrix.rows());
  for (size_t r = 0; r < matrix.rows(); ++r) column[r] = matrix.at(r, col);
  std::nth_element(column.begin(), column.begin() + (need - 1), column.end(),
                   std::greater<double>());
  return column[need - 1];
}

}  // namespace

double DifferentiableScorer::Evaluate(std::span<const double> x) const {
  CheckWidth(*this, x, "sample");
  double z = bias;
  for (size_t i = 0; i < x.size(); ++i) z += weights[i] * x[i];
  return kind == ScorerKind::kLogistic ? Sigmoid(z) : z;
}

void DifferentiableScorer::Gradient(std::span<const double> x,
                                    std::span<double> out) const {
  CheckWidth(*this, x, "sample");
  double scale = 1.0;
  if (kind == ScorerKind::kLogistic) {
    const double s = Evaluate(x);
    scale = s * (1.0 - s);
  }
  for (size_t i = 0; i < weights.size(); ++i) out[i] = scale * weights[i];
}

std::vector<double> IntegratedGradient(const DifferentiableScorer& scorer,
                                       std::span<const double> baseline,
                                       std::span<const double> test,
                                       size_t steps) {
  if (steps == 0) {
    throw Error(ErrorKind::kConfig, "integration steps must be at least 1");
  }
  CheckWidth(scorer, baseline, "baseline");
  CheckWidth(scorer, test, "test sample");
  const size_t d = baseline.size();
  std::vector<double> attribution(d, 0.0);
  if (scorer.kind == ScorerKind::kLinear) {
    for (size_t i = 0; i < d; ++i) {
      attribution[i] = scorer.weights[i] * (baseline[i] - test[i]);
    }
    return attribution;
  }

  std::vector<double> point(d);
  std::vector<double> gradient(d);
  std::vector<double> integral(d, 0.0);
  for (size_t s = 0; s < steps; ++s) {
    const double lambda =
        (static_cast<double>(s) + 0.5) / static_cast<double>(steps);
    for (size_t i = 0; i < d; ++i) {
      point[i] = test[i] + lambda * (baseline[i] - test[i]);
    }
    scorer.Gradient(point, gradient);
    for (size_t i = 0; i < d; ++i) integral[i] += gradient[i];
  }
  for (size_t i = 0; i < d; ++i) {
    attribution[i] = (baseline[i] - test[i]) * integral[i] /
                     static_cast<double>(steps);
  }
  return attribution;
}

std::optional<std::vector<double>> ImportanceScores(std::span<const double> j,
                                                    double y, double y_tilde,
                                                    double eps) {
  const double shift = y - y_tilde;
  if (!(std::abs(shift) >= eps)) return std::nullopt;
  std::vector<double> scores(j.size());
  for (size_t i = 0; i < j.size(); ++i) scores[i] = std::abs(j[i] / shift);
  return scores;
}

ImportanceMatrix::ImportanceMatrix(std::vector<std::string> feature_names)
    : feature_names_(std::move(feature_names)) {}

void ImportanceMatrix::AddRow(std::span<const double> scores) {
  if (scores.size() != cols()) {
    throw Error(ErrorKind::kShape, "importance row has " +
                                       std::to_string(scores.size()) +
                                       " scores, expected " +
                                       std::to_string(cols()));
  }
  for (double s : scores) {
    if (!std::isfinite(s) || s < 0.0) {
      throw Error(ErrorKind::kDomain,
                  "importance scores must be finite and non-negative");
    }
  }
  scores_.insert(scores_.end(), scores.begin(), scores.end());
  ++rows_;
}

void ImportanceMatrix::AddRow(std::span<const double> scores, size_t baseline,
                              size_t test) {
  AddRow(scores);
  pair_index_.emplace_back(baseline, test);
}

ImportanceMatrix BuildImportanceMatrix(const DifferentiableScorer& scorer,
                                       std::span<const Sample> baselines,
                                       std::span<const Sample> tests,
                                       std::vector<std::string> feature_names,
                                       size_t steps, double eps) {
  if (baselines.empty() || tests.empty()) {
    throw Error(ErrorKind::kConfig,
                "at least one baseline and one test sample are required");
  }
  if (feature_names.size() != scorer.weights.size()) {
    throw Error(ErrorKind::kShape, "feature names do not match scorer width");
  }
  ImportanceMatrix matrix(std::move(feature_names));
  for (size_t b = 0; b < baselines.size(); ++b) {
    const double y = scorer.Evaluate(baselines[b]);
    for (size_t m = 0; m < tests.size(); ++m) {
      const double y_tilde = scorer.Evaluate(tests[m]);
      const std::vector<double> j =
          IntegratedGradient(scorer, baselines[b], tests[m], steps);
      if (auto scores = ImportanceScores(j, y, y_tilde, eps)) {
        matrix.AddRow(*scores, b, m);
      }
    }
  }
  if (matrix.empty()) {
    throw Error(ErrorKind::kEmptyMatrix,
                "every baseline/test pair has a degenerate output shift");
  }
  return matrix;
}

ImportanceMatrix ParseImportanceMatrix(std::istream& input) {
  std::string line;
  if (!std::getline(input, line)) {
    throw Error(ErrorKind::kParse, "importance matrix has no header");
  }
  std::vector<std::string> names = SplitCsvRecord(line);
  ImportanceMatrix matrix(names);
  std::vector<double> row;
  size_t line_no = 0;
  while (std::getline(input, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++line_no;
    const std::vector<std::string> fields = SplitCsvRecord(line);
    if (fields.size() != names.size()) {
      throw ParseError(line_no, "", "importance row " +
                                        std::to_string(line_no) + " has " +
                                        std::to_string(fields.size()) +
                                        " fields, expected " +
                                        std::to_string(names.size()));
    }
    row.assign(fields.size(), 0.0);
    for (size_t c = 0; c < fields.size(); ++c) {
      std::string_view text = fields[c];
      while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
      }
      while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
        text.remove_suffix(1);
      }
      const auto [end, ec] =
          std::from_chars(text.data(), text.data() + text.size(), row[c]);
      if (text.empty() || ec != std::errc() ||
          end != text.data() + text.size()) {
        throw ParseError(line_no, names[c],
                         "importance row " + std::to_string(line_no) +
                             ", column '" + names[c] + "': cannot parse '" +
                             fields[c] + "'");
      }
    }
    matrix.AddRow(row);
  }
  return matrix;
}

ImportanceMatrix LoadImportanceMatrix(const std::filesystem::path& path) {
  std::ifstream input(path);
  if (!input) {
    throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  }
  return ParseImportanceMatrix(input);
}

void WriteImportanceMatrix(std::ostream& output,
                           const ImportanceMatrix& matrix) {
  for (size_t c = 0; c < matrix.cols(); ++c) {
    if (c > 0) output << ',';
    output << matrix.feature_names()[c];
  }
  output << '\n';
  for (size_t r = 0; r < matrix.rows(); ++r) {
    for (size_t c = 0; c < matrix.cols(); ++c) {
      if (c > 0) output << ',';
      output << FormatDouble(matrix.at(r, c));
    }
    output << '\n';
  }
}

size_t RequiredCoverage(size_t rows, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(ErrorKind::kConfig, "gamma must lie in (0, 1]");
  }
  // The small slack keeps e.g. 0.99 * 100 at 99 despite binary rounding.
  const double need = std::ceil(gamma * static_cast<double>(rows) - 1e-9);
  if (need < 1.0) {
    throw Error(ErrorKind::kConfig,
                "gamma times the number of rows must be at least 1");
  }
  return static_cast<size_t>(need);
}

size_t QualifyingFeatures(const ImportanceMatrix& matrix, double t,
                          double gamma) {
  const size_t need = RequiredCoverage(matrix.rows(), gamma);
  size_t qualifying = 0;
  for (size_t c = 0; c < matrix.cols(); ++c) {
    size_t covered = 0;
    for (size_t r = 0; r < matrix.rows(); ++r) {
      if (matrix.at(r, c) >= t) ++covered;
    }
    if (covered >= need) ++qualifying;
  }
  return qualifying;
}

double ScanThreshold(const ImportanceMatrix& matrix, double gamma) {
  if (matrix.empty() || matrix.cols() == 0) {
    throw Error(ErrorKind::kEmptyMatrix, "importance matrix is empty");
  }
  const size_t need = RequiredCoverage(matrix.rows(), gamma);

  // A feature qualifies at t exactly when t <= its coverage level, so
  // qual(t) = #{levels >= t}.
  std::vector<double> levels(matrix.cols());
  for (size_t c = 0; c < matrix.cols(); ++c) {
    levels[c] = CoverageLevel(matrix, c, need);
  }
  std::sort(levels.begin(), levels.end());
  auto qual = [&](double t) {
    return static_cast<size_t>(
        levels.end() - std::lower_bound(levels.begin(), levels.end(), t));
  };

  std::vector<double> candidates;
  for (size_t r = 0; r < matrix.rows(); ++r) {
    for (double s : matrix.row(r)) {
      if (s > 0.0) candidates.push_back(s);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  std::optional<double> last_multi;
  for (double t : candidates) {
    const size_t q = qual(t);
    if (q == 1) return t;
    if (q == 0) break;
    last_multi = t;
  }
  if (last_multi) return *last_multi;
  throw Error(ErrorKind::kNoFeature,
              "no positive importance threshold is reached by any feature in "
              "enough rows");
}

std::vector<ItemSet> ToFeatureSequences(const ImportanceMatrix& matrix,
                                        double j_th) {
  std::vector<ItemSet> sequences;
  for (size_t r = 0; r < matrix.rows(); ++r) {
    ItemSet items;
    for (size_t c = 0; c < matrix.cols(); ++c) {
      if (matrix.at(r, c) >= j_th) items.push_back(static_cast<uint32_t>(c));
    }
    if (!items.empty()) sequences.push_back(std::move(items));
  }
  return sequences;
}

FeatureSelection SelectFrequentFeatures(const ImportanceMatrix& matrix,
                                        double gamma, size_t c_min,
                                        size_t k_max) {
  if (c_min < 1) throw Error(ErrorKind::kConfig, "c_min must be at least 1");
  if (k_max < 1) throw Error(ErrorKind::kConfig, "k_max must be at least 1");
  FeatureSelection selection;
  selection.threshold = ScanThreshold(matrix, gamma);
  const std::vector<ItemSet> sequences =
      ToFeatureSequences(matrix, selection.threshold);
  selection.itemsets = FpGrowth(sequences, c_min, k_max);
  selection.features = PickFeatureSet(selection.itemsets);
  return selection;
}

std::vector<Sample> ClassCentroids(std::span<const Sample> samples,
                                   std::span<const int> classes) {
  if (samples.size() != classes.size()) {
    throw Error(ErrorKind::kShape, "samples and classes differ in length");
  }
  std::map<int, std::pair<Sample, size_t>> sums;
  for (size_t n = 0; n < samples.size(); ++n) {
    auto& [sum, count] = sums[classes[n]];
    if (sum.empty()) sum.assign(samples[n].size(), 0.0);
    for (size_t i = 0; i < sum.size(); ++i) sum[i] += samples[n][i];
    ++count;
  }
  std::vector<Sample> centroids;
  for (auto& [label, entry] : sums) {
    auto& [sum, count] = entry;
    for (double& v : sum) v /= static_cast<double>(count);
    centroids.push_back(std::move(sum));
  }
  return centroids;
}

std::vector<size_t> BalancedSample(std::span<const int> classes, size_t m,
                                   uint64_t seed) {
  std::map<int, std::vector<size_t>> members;
  for (size_t n = 0; n < classes.size(); ++n) members[classes[n]].push_back(n);
  if (members.empty()) return {};
  const size_t per_class = std::max<size_t>(m / members.size(), 1);
  Rng rng(seed);
  std::vector<size_t> picked;
  for (auto& [label, rows] : members) {
    Shuffle(rows, rng);
    const size_t take = std::min(per_class, rows.size());
    std::vector<size_t> chosen(rows.begin(), rows.begin() + take);
    std::sort(chosen.begin(), chosen.end());
    picked.insert(picked.end(), chosen.begin(), chosen.end());
  }
  return picked;
}

}  // namespace amore
