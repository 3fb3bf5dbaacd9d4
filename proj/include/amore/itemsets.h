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

#ifndef AMORE_ITEMSETS_H_
#define AMORE_ITEMSETS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace amore {

// Sorted, duplicate-free feature indices.
using ItemSet = std::vector<uint32_t>;

struct FrequentItemset {
  ItemSet items;
  size_t count = 0;

  friend bool operator==(const FrequentItemset&,
                         const FrequentItemset&) = default;
};

// Orders by size ascending, then count descending, then items
// lexicographically.
bool CanonicalLess(const FrequentItemset& a, const FrequentItemset& b);

// Mines every itemset with support >= min_count and at most max_length items
// using an FP-tree. Items inside a transaction may be unsorted or repeated;
// they are normalized first. Output is in canonical order.
std::vector<FrequentItemset> FpGrowth(std::span<const ItemSet> transactions,
                                      size_t min_count, size_t max_length);

// Longest itemset, then most frequent, then lexicographically smallest.
// Throws EmptyResultError on empty input.
ItemSet PickFeatureSet(std::span<const FrequentItemset> itemsets);

}  // namespace amore

#endif  // AMORE_ITEMSETS_H_
