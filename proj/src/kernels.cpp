// Copyright 2026 The mkpbound Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mkpb/kernels.hpp"

#include <algorithm>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

namespace mkpb {

std::vector<std::size_t> density_order(std::span<const KernelItem> items) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const __int128 lhs = static_cast<__int128>(items[a].profit) * items[b].weight;
    const __int128 rhs = static_cast<__int128>(items[b].profit) * items[a].weight;
    if (lhs != rhs) return lhs > rhs;
    return items[a].weight > items[b].weight;
  });
  return order;
}

Rational dantzig_bound(std::span<const KernelItem> items, Weight capacity) {
  Rational value = 0;
  Weight left = capacity;
  Profit whole = 0;
  for (std::size_t j : density_order(items)) {
    if (left <= 0) break;
    const auto& it = items[j];
    if (it.weight <= left) {
      whole += it.profit;
      left -= it.weight;
    } else {
      value = make_rational(it.profit) * left / make_rational(it.weight);
      break;
    }
  }
  value += make_rational(whole);
  return value;
}

namespace {

// Decision table for the weight-indexed DP, one bit per (item, capacity).
class DecisionBits {
 public:
  DecisionBits(std::size_t rows, std::size_t cols)
      : cols_(cols), bits_((rows * cols + 63) / 64, 0) {}
  void set(std::size_t r, std::size_t c) {
    const std::size_t k = r * cols_ + c;
    bits_[k >> 6] |= std::uint64_t{1} << (k & 63);
  }
  bool get(std::size_t r, std::size_t c) const {
    const std::size_t k = r * cols_ + c;
    return (bits_[k >> 6] >> (k & 63)) & 1;
  }

 private:
  std::size_t cols_;
  std::vector<std::uint64_t> bits_;
};

KnapsackResult solve_dp(std::span<const KernelItem> items,
                        const std::vector<std::size_t>& candidates, Weight capacity) {
  const std::size_t cols = static_cast<std::size_t>(capacity) + 1;
  std::vector<Profit> best(cols, 0);
  DecisionBits take(candidates.size(), cols);
  for (std::size_t r = 0; r < candidates.size(); ++r) {
    const auto& it = items[candidates[r]];
    for (Weight c = capacity; c >= it.weight; --c) {
      const Profit with = best[c - it.weight] + it.profit;
      if (with > best[c]) {
        best[c] = with;
        take.set(r, static_cast<std::size_t>(c));
      }
    }
  }
  KnapsackResult res;
  res.value = best[cols - 1];
  res.upper_bound = res.value;
  Weight c = capacity;
  for (std::size_t r = candidates.size(); r-- > 0;) {
    if (take.get(r, static_cast<std::size_t>(c))) {
      res.chosen.push_back(candidates[r]);
      c -= items[candidates[r]].weight;
    }
  }
  std::sort(res.chosen.begin(), res.chosen.end());
  return res;
}

// Depth-first branch-and-bound over items in density order with Dantzig
// pruning.
class KnapsackBnb {
 public:
  KnapsackBnb(std::span<const KernelItem> items, std::vector<std::size_t> order,
              std::int64_t node_budget)
      : items_(items), order_(std::move(order)), budget_(node_budget) {}

  KnapsackResult run(Weight capacity) {
    current_.clear();
    dfs(0, capacity, 0);
    KnapsackResult res;
    res.value = best_;
    res.chosen = best_set_;
    std::sort(res.chosen.begin(), res.chosen.end());
    res.exact = !aborted_;
    res.upper_bound = aborted_ ? std::max(best_, bound(0, capacity)) : best_;
    return res;
  }

 private:
  // floor of the fractional bound over order_[k..].
  Profit bound(std::size_t k, Weight left) const {
    Profit total = 0;
    for (; k < order_.size(); ++k) {
      const auto& it = items_[order_[k]];
      if (it.weight <= left) {
        total += it.profit;
        left -= it.weight;
      } else {
        total += static_cast<Profit>(static_cast<__int128>(it.profit) * left / it.weight);
        break;
      }
    }
    return total;
  }

  void dfs(std::size_t k, Weight left, Profit value) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (value > best_) {
      best_ = value;
      best_set_ = current_;
    }
    if (k == order_.size()) return;
    if (value + bound(k, left) <= best_) return;
    const auto& it = items_[order_[k]];
    if (it.weight <= left) {
      current_.push_back(order_[k]);
      dfs(k + 1, left - it.weight, value + it.profit);
      current_.pop_back();
      if (aborted_) return;
    }
    dfs(k + 1, left, value);
  }

  std::span<const KernelItem> items_;
  std::vector<std::size_t> order_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  Profit best_ = 0;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_set_;
};

}  // namespace

KnapsackResult solve_knapsack_01(std::span<const KernelItem> items, Weight capacity,
                                 const KnapsackLimits& limits) {
  if (capacity <= 0 || items.empty()) return {};
  std::vector<std::size_t> candidates;
  for (std::size_t j : density_order(items)) {
    if (items[j].weight <= capacity && items[j].profit > 0) candidates.push_back(j);
  }
  if (candidates.empty()) return {};

  const auto cells = static_cast<__int128>(candidates.size()) * (capacity + 1);
  if (capacity <= limits.dp_capacity_limit && cells <= limits.dp_cell_limit) {
    return solve_dp(items, candidates, capacity);
  }
  KnapsackBnb bnb(items, std::move(candidates), limits.node_budget);
  return bnb.run(capacity);
}

SubsetSumResult solve_subset_sum(std::span<const Weight> weights, Weight capacity,
                                 const SubsetSumLimits& limits) {
  if (capacity <= 0) return {0, true};
  if (capacity > limits.bitset_capacity_limit) {
    std::vector<KernelItem> items;
    items.reserve(weights.size());
    for (Weight w : weights) items.push_back({w, w});
    const auto res = solve_knapsack_01(items, capacity, limits.fallback);
    return {res.exact ? res.value : std::min<Weight>(res.upper_bound, capacity), res.exact};
  }
  const auto cols = static_cast<std::size_t>(capacity) + 1;
  boost::dynamic_bitset<> reach(cols);
  reach.set(0);
  for (Weight w : weights) {
    if (w > capacity || w <= 0) continue;
    reach |= reach << static_cast<std::size_t>(w);
    if (reach.test(cols - 1)) return {capacity, true};
  }
  for (std::size_t c = cols - 1; c > 0; --c) {
    if (reach.test(c)) return {static_cast<Weight>(c), true};
  }
  return {0, true};
}

std::vector<std::size_t> subset_sum_witness(std::span<const Weight> weights,
                                            Weight capacity) {
  if (capacity <= 0) return {};
  const auto cols = static_cast<std::size_t>(capacity) + 1;
  std::vector<int> from(cols, -1);
  std::vector<char> reach(cols, 0);
  reach[0] = 1;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const Weight w = weights[j];
    if (w > capacity || w <= 0) continue;
    for (Weight s = capacity; s >= w; --s) {
      if (!reach[s] && reach[s - w]) {
        reach[s] = 1;
        from[s] = static_cast<int>(j);
      }
    }
  }
  Weight s = capacity;
  while (s > 0 && !reach[s]) --s;
  std::vector<std::size_t> chosen;
  while (s > 0) {
    const auto j = static_cast<std::size_t>(from[s]);
    chosen.push_back(j);
    s -= weights[j];
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace mkpb
