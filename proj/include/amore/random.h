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

#ifndef AMORE_RANDOM_H_
#define AMORE_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace amore {

// All seeded randomness goes through std::mt19937_64, whose output sequence
// is fixed by the standard. The helpers below avoid std distributions, whose
// algorithms differ between standard libraries.
using Rng = std::mt19937_64;

// Uniform in [0, 1) from the top 53 bits.
inline double UnitDouble(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double UniformReal(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * UnitDouble(rng);
}

// Uniform in [0, n); n must be positive.
inline size_t UniformIndex(Rng& rng, size_t n) {
  return static_cast<size_t>(UnitDouble(rng) * static_cast<double>(n));
}

inline bool Bernoulli(Rng& rng, double p) { return UnitDouble(rng) < p; }

template <typename T>
void Shuffle(std::vector<T>& items, Rng& rng) {
  for (size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[UniformIndex(rng, i)]);
  }
}

}  // namespace amore

#endif  // AMORE_RANDOM_H_
