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

#ifndef AMORE_RATIO_H_
#define AMORE_RATIO_H_

#include <cstdint>

namespace amore {

using Int128 = __int128;

// Compares a_num/a_den with b_num/b_den for non-negative numerators and
// positive denominators. A zero denominator stands for the value 0.
inline int CompareFractions(int64_t a_num, int64_t a_den, int64_t b_num,
                            int64_t b_den) {
  if (a_den == 0) a_num = 0, a_den = 1;
  if (b_den == 0) b_num = 0, b_den = 1;
  const Int128 lhs = static_cast<Int128>(a_num) * b_den;
  const Int128 rhs = static_cast<Int128>(b_num) * a_den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

// Probability ratio of a value range, held as the four counts it is estimated
// from:
//
//   (target_in / condition_target) / (total_in / condition_total)
//
// `condition_*` count the rows satisfying the earlier rules; `*_in` count the
// subset of those also inside the range. All comparisons are exact.
struct CountRatio {
  int64_t target_in = 0;
  int64_t total_in = 0;
  int64_t condition_target = 0;
  int64_t condition_total = 0;

  // Zero when the range or the conditioned target is empty.
  double value() const {
    if (total_in == 0 || condition_target == 0) return 0.0;
    return (static_cast<double>(target_in) * condition_total) /
           (static_cast<double>(total_in) * condition_target);
  }

  bool empty() const { return total_in == 0 || condition_target == 0; }

  // Strictly above 1, i.e. target_in * condition_total >
  // total_in * condition_target.
  bool exceeds_one() const {
    return !empty() && static_cast<Int128>(target_in) * condition_total >
                           static_cast<Int128>(total_in) * condition_target;
  }

  friend bool operator==(const CountRatio&, const CountRatio&) = default;
};

// Three-way comparison of the ratio values. Empty ratios compare as 0.
inline int Compare(const CountRatio& a, const CountRatio& b) {
  const bool a_zero = a.empty() || a.target_in == 0;
  const bool b_zero = b.empty() || b.target_in == 0;
  if (a_zero || b_zero) return a_zero == b_zero ? 0 : (a_zero ? -1 : 1);
  // Numerators and denominators are products of two counts; the cross
  // products have four factors and need 128 bits.
  const Int128 lhs = static_cast<Int128>(a.target_in) * a.condition_total *
                     b.total_in * b.condition_target;
  const Int128 rhs = static_cast<Int128>(b.target_in) * b.condition_total *
                     a.total_in * a.condition_target;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace amore

#endif  // AMORE_RATIO_H_
