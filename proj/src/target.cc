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

#include "amore/target.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "amore/error.h"

namespace amore {

size_t TargetIndicator::count() const {
  return static_cast<size_t>(std::count_if(flags.begin(), flags.end(),
                                           [](uint8_t f) { return f != 0; }));
}

TargetIndicator MakeTarget(std::span<const double> probabilities,
                           double threshold, std::string label) {
  if (!std::isfinite(threshold)) {
    throw Error(ErrorKind::kDomain, "prediction threshold must be finite");
  }
  TargetIndicator target;
  target.label = std::move(label);
  target.flags.reserve(probabilities.size());
  for (size_t n = 0; n < probabilities.size(); ++n) {
    const double p = probabilities[n];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::kDomain, "probability at row " +
                                          std::to_string(n + 1) +
                                          " is outside [0, 1]");
    }
    target.flags.push_back(p > threshold ? 1 : 0);
  }
  return target;
}

TargetIndicator TargetFromColumn(const FeatureColumn& column,
                                 std::string_view target_class) {
  TargetIndicator target;
  target.label = std::string(target_class);
  target.flags.assign(column.size(), 0);
  if (column.is_numeric()) {
    double wanted = 0.0;
    const auto [end, ec] = std::from_chars(
        target_class.data(), target_class.data() + target_class.size(), wanted);
    if (ec != std::errc() || end != target_class.data() + target_class.size()) {
      throw Error(ErrorKind::kDomain, "target class '" +
                                          std::string(target_class) +
                                          "' is not numeric");
    }
    for (size_t n = 0; n < column.size(); ++n) {
      target.flags[n] = column.numeric(n) == wanted ? 1 : 0;
    }
    return target;
  }
  const auto code = column.code_of(target_class);
  if (!code) return target;
  for (size_t n = 0; n < column.size(); ++n) {
    target.flags[n] = column.code(n) == *code ? 1 : 0;
  }
  return target;
}

double RocThreshold(std::span<const double> probabilities,
                    std::span<const uint8_t> labels) {
  if (probabilities.size() != labels.size()) {
    throw Error(ErrorKind::kShape, "probabilities and labels differ in length");
  }
  const size_t positives = static_cast<size_t>(
      std::count_if(labels.begin(), labels.end(), [](uint8_t l) { return l; }));
  const size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorKind::kDegenerateLabels,
                "ROC threshold needs both classes in the labels");
  }

  std::vector<size_t> order(probabilities.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return probabilities[a] < probabilities[b];
  });

  // Sweep thresholds upwards. Before the sweep every row is predicted
  // positive; each distinct probability value we pass flips its rows to
  // negative.
  size_t true_pos = positives;
  size_t false_pos = negatives;
  const double lowest = probabilities[order.front()];
  double best_threshold =
      std::nextafter(lowest, -std::numeric_limits<double>::infinity());
  // Compare TPR - FPR exactly: tp/P - fp/N  <=>  tp*N - fp*P.
  auto score = [&](size_t tp, size_t fp) {
    return static_cast<long double>(tp) * negatives -
           static_cast<long double>(fp) * positives;
  };
  long double best_score = score(true_pos, false_pos);

  size_t i = 0;
  while (i < order.size()) {
    const double value = probabilities[order[i]];
    while (i < order.size() && probabilities[order[i]] == value) {
      if (labels[order[i]]) {
        --true_pos;
      } else {
        --false_pos;
      }
      ++i;
    }
    if (i == order.size()) break;
    const double candidate = value + (probabilities[order[i]] - value) / 2.0;
    const long double candidate_score = score(true_pos, false_pos);
    if (candidate_score > best_score) {
      best_score = candidate_score;
      best_threshold = candidate;
    }
  }
  return best_threshold;
}

}  // namespace amore
