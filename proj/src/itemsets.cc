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
#include <map>
#include <utility>

#include "amore/error.h"

namespace amore {
namespace {

// A transaction of the (conditional) database with its multiplicity.
struct WeightedPath {
  std::vector<uint32_t> items;
  size_t weight = 0;
};

class FpTree {
 public:
  static constexpr size_t kNoParent = static_cast<size_t>(-1);

  struct Node {
    uint32_t item = 0;
    size_t count = 0;
    size_t parent = kNoParent;
    // Next node carrying the same item (header-table chain).
    size_t next_same = kNoParent;
    std::vector<std::pair<uint32_t, size_t>> children;
  };

  // Builds the tree from weighted paths, keeping only items whose total weight
  // reaches `min_count`. Items on each path are ordered by descending
  // frequency, ties by ascending item.
  FpTree(const std::vector<WeightedPath>& paths, size_t min_count) {
    std::map<uint32_t, size_t> frequency;
    for (const auto& path : paths) {
      for (uint32_t item : path.items) frequency[item] += path.weight;
    }
    for (const auto& [item, count] : frequency) {
      if (count >= min_count) ranked_.push_back({item, count});
    }
    std::sort(ranked_.begin(), ranked_.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    std::map<uint32_t, size_t> rank;
    for (size_t r = 0; r < ranked_.size(); ++r) rank[ranked_[r].first] = r;
    heads_.assign(ranked_.size(), kNoParent);
    tails_.assign(ranked_.size(), kNoParent);

    nodes_.push_back(Node{});  // root
    std::vector<uint32_t> ordered;
    for (const auto& path : paths) {
      ordered.clear();
      for (uint32_t item : path.items) {
        if (rank.count(item)) ordered.push_back(item);
      }
      std::sort(ordered.begin(), ordered.end(), [&](uint32_t a, uint32_t b) {
        return rank[a] < rank[b];
      });
      Insert(ordered, path.weight, rank);
    }
  }

  // (item, total count) pairs, most frequent first.
  const std::vector<std::pair<uint32_t, size_t>>& ranked() const {
    return ranked_;
  }

  // Prefix paths leading to every node of the item at `rank_index`.
  std::vector<WeightedPath> ConditionalBase(size_t rank_index) const {
    std::vector<WeightedPath> base;
    for (size_t id = heads_[rank_index]; id != kNoParent;
         id = nodes_[id].next_same) {
      WeightedPath path;
      path.weight = nodes_[id].count;
      for (size_t up = nodes_[id].parent; up != 0; up = nodes_[up].parent) {
        path.items.push_back(nodes_[up].item);
      }
      if (!path.items.empty()) base.push_back(std::move(path));
    }
    return base;
  }

 private:
  void Insert(const std::vector<uint32_t>& items, size_t weight,
              std::map<uint32_t, size_t>& rank) {
    size_t current = 0;
    for (uint32_t item : items) {
      size_t child = kNoParent;
      for (const auto& [child_item, child_id] : nodes_[current].children) {
        if (child_item == item) {
          child = child_id;
          break;
        }
      }
      if (child == kNoParent) {
        child = nodes_.size();
        Node node;
        node.item = item;
        node.parent = current;
        nodes_.push_back(std::move(node));
        nodes_[current].children.push_back({item, child});
        const size_t r = rank[item];
        if (heads_[r] == kNoParent) {
          heads_[r] = child;
        } else {
          nodes_[tails_[r]].next_same = child;
        }
        tails_[r] = child;
      }
      nodes_[child].count += weight;
      current = child;
    }
  }

  std::vector<Node> nodes_;
  std::vector<std::pair<uint32_t, size_t>> ranked_;
  std::vector<size_t> heads_;
  std::vector<size_t> tails_;
};

void Mine(const FpTree& tree, const ItemSet& suffix, size_t min_count,
          size_t max_length, std::vector<FrequentItemset>& out) {
  const auto& ranked = tree.ranked();
  for (size_t r = ranked.size(); r-- > 0;) {
    ItemSet items = suffix;
    items.push_back(ranked[r].first);
    std::sort(items.begin(), items.end());
    out.push_back({items, ranked[r].second});
    if (items.size() >= max_length) continue;
    const std::vector<WeightedPath> base = tree.ConditionalBase(r);
    if (base.empty()) continue;
    const FpTree conditional(base, min_count);
    if (!conditional.ranked().empty()) {
      Mine(conditional, items, min_count, max_length, out);
    }
  }
}

}  // namespace

bool CanonicalLess(const FrequentItemset& a, const FrequentItemset& b) {
  if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
  if (a.count != b.count) return a.count > b.count;
  return a.items < b.items;
}

std::vector<FrequentItemset> FpGrowth(std::span<const ItemSet> transactions,
                                      size_t min_count, size_t max_length) {
  std::vector<FrequentItemset> out;
  if (transactions.empty() || max_length == 0) return out;
  min_count = std::max<size_t>(min_count, 1);

  std::vector<WeightedPath> paths;
  paths.reserve(transactions.size());
  for (const auto& transaction : transactions) {
    WeightedPath path{transaction, 1};
    std::sort(path.items.begin(), path.items.end());
    path.items.erase(std::unique(path.items.begin(), path.items.end()),
                     path.items.end());
    paths.push_back(std::move(path));
  }
  const FpTree tree(paths, min_count);
  Mine(tree, {}, min_count, max_length, out);
  std::sort(out.begin(), out.end(), CanonicalLess);
  return out;
}

ItemSet PickFeatureSet(std::span<const FrequentItemset> itemsets) {
  if (itemsets.empty()) {
    throw Error(ErrorKind::kEmptyResult, "no frequent feature set was found");
  }
  const FrequentItemset* best = &itemsets.front();
  for (const auto& candidate : itemsets) {
    if (candidate.items.size() != best->items.size()) {
      if (candidate.items.size() > best->items.size()) best = &candidate;
    } else if (candidate.count != best->count) {
      if (candidate.count > best->count) best = &candidate;
    } else if (candidate.items < best->items) {
      best = &candidate;
    }
  }
  return best->items;
}

}  // namespace amore
