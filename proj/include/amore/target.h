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

#ifndef AMORE_TARGET_H_
#define AMORE_TARGET_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amore/table.h"

namespace amore {

// Row-aligned membership of the subgroup being explained.
struct TargetIndicator {
  RowMask flags;
  std::string label = "1";

  size_t size() const { return flags.size(); }
  size_t count() const;
};

// flags[n] = probabilities[n] > threshold. Throws DomainError for
// probabilities outside [0, 1] or a non-finite threshold.
TargetIndicator MakeTarget(std::span<const double> probabilities,
                           double threshold, std::string label = "1");

// Rows whose cell equals `target_class`. Numeric columns compare by value;
// missing cells are never in the target.
TargetIndicator TargetFromColumn(const FeatureColumn& column,
                                 std::string_view target_class);

// Threshold maximizing TPR - FPR under the strict `p > threshold` rule.
// Candidates are the midpoints between consecutive distinct probabilities plus
// one value just below the minimum; the smallest maximizer wins. Throws
// DegenerateLabelsError when only one class is present.
double RocThreshold(std::span<const double> probabilities,
                    std::span<const uint8_t> labels);

}  // namespace amore

#endif  // AMORE_TARGET_H_
