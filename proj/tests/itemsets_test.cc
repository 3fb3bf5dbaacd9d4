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

#include "amore/itemsets.h"

#include <algorithm>
#include <vector>

#include "amore/error.h"
#include "amore/random.h"
#include "gtest/gtest.h"

namespace amore {
namespace {

// Every subset of the item universe, counted directly.
std::vector<FrequentItemset> BruteForce(const std::vector<ItemSet>& transactions,
                                        uint32_t universe, size_t min_count,
                                        size_t max_length) {
  std::vector<FrequentItemset> out;
  for (uint32_t mask = 1; mask < (1u << universe); ++mask) {
    ItemSet items;
    for (uint32_t i = 0; i < universe; ++i) {
      if (mask & (1u << i)) items.push_back(i);
    }
    if (items.size() > max_length) continue;
    size_t count = 0;
    for (const ItemSet& t : transactions) {
      if (std::includes(t.begin(), t.end(), items.begin(), items.end())) {
        ++count;
      }
    }
    if (count >= min_count) out.push_back({items, count});
  }
  std::sort(out.begin(), out.end(), CanonicalLess);
  return out;
}

TEST(FpGrowthTest, WorkedExample) {
  // a = 0, b = 1, c = 2.
  const std::vector<ItemSet> transactions = {{0, 1}, {1, 2}, {0, 1, 2}, {1}};
  const std::vector<FrequentItemset> expected = {
      {{1}, 4}, {{0}, 2}, {{2}, 2}, {{0, 1}, 2}, {{1, 2}, 2}};
  EXPECT_EQ(FpGrowth(transactions, 2, 3), expected);
}

TEST(FpGrowthTest, EmptyInput) {
  EXPECT_TRUE(FpGrowth({}, 1, 3).empty());
}

TEST(FpGrowthTest, SingleTransaction) {
  const std::vector<ItemSet> transactions = {{0}};
  const std::vector<FrequentItemset> expected = {{{0}, 1}};
  EXPECT_EQ(FpGrowth(transactions, 1, 1), expected);
}

TEST(FpGrowthTest, MatchesBruteForceAndIsDownwardClosed) {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const uint32_t universe = 1 + static_cast<uint32_t>(UniformIndex(rng, 10));
    const size_t n = UniformIndex(rng, 40);
    std::vector<ItemSet> transactions(n);
    for (ItemSet& t : transactions) {
      for (uint32_t i = 0; i < universe; ++i) {
        if (Bernoulli(rng, 0.4)) t.push_back(i);
      }
    }
    const size_t min_count = 1 + UniformIndex(rng, 4);
    const size_t max_length = 1 + UniformIndex(rng, 5);
    const auto got = FpGrowth(transactions, min_count, max_length);
    ASSERT_EQ(got, BruteForce(transactions, universe, min_count, max_length));
    for (const FrequentItemset& set : got) {
      for (size_t drop = 0; drop < set.items.size() && set.items.size() > 1;
           ++drop) {
        ItemSet subset = set.items;
        subset.erase(subset.begin() + static_cast<std::ptrdiff_t>(drop));
        EXPECT_TRUE(std::any_of(got.begin(), got.end(), [&](const auto& o) {
          return o.items == subset && o.count >= set.count;
        }));
      }
    }
  }
}

TEST(PickFeatureSetTest, LongestThenLexicographic) {
  const std::vector<FrequentItemset> sets = {
      {{0}, 3}, {{0, 1}, 2}, {{1, 2}, 2}};
  EXPECT_EQ(PickFeatureSet(sets), (ItemSet{0, 1}));
}

TEST(PickFeatureSetTest, LongestThenMostFrequent) {
  const std::vector<FrequentItemset> sets = {{{0, 1}, 2}, {{1, 2}, 3}};
  EXPECT_EQ(PickFeatureSet(sets), (ItemSet{1, 2}));
}

TEST(PickFeatureSetTest, Single) {
  const std::vector<FrequentItemset> sets = {{{0}, 5}};
  EXPECT_EQ(PickFeatureSet(sets), ItemSet{0});
}

TEST(PickFeatureSetTest, EmptyIsEmptyResult) {
  try {
    PickFeatureSet({});
    FAIL() << "expected EmptyResultError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyResult);
  }
}

}  // namespace
}  // namespace amore
