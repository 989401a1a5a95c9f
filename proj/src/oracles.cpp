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

#include "mkpb/oracles.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "mkpb/kernels.hpp"
#include "mkpb/relaxations.hpp"

namespace mkpb {

void OracleLimits::validate() const {
  if (max_items < 1) throw std::invalid_argument("max_items must be positive");
  if (node_budget < 1) throw std::invalid_argument("node_budget must be positive");
  if (time_budget.count() < 1) throw std::invalid_argument("time_budget must be positive");
}

namespace {

class MkpEnumerator {
 public:
  explicit MkpEnumerator(const MkpInstance& instance)
      : items_(instance.items()),
        free_(instance.capacities()),
        current_(instance.num_items(), kUnassigned) {}

  MkpSolution run() {
    best_.assignment = current_;
    best_.value = 0;
    visit(0, 0);
    return best_;
  }

 private:
  void visit(std::size_t j, Profit value) {
    if (j == items_.size()) {
      if (value > best_.value) {
        best_.value = value;
        best_.assignment = current_;
      }
      return;
    }
    for (std::size_t i = 0; i < free_.size(); ++i) {
      if (items_[j].weight > free_[i]) continue;
      free_[i] -= items_[j].weight;
      current_[j] = static_cast<int>(i);
      visit(j + 1, value + items_[j].profit);
      free_[i] += items_[j].weight;
    }
    current_[j] = kUnassigned;
    visit(j + 1, value);
  }

  const std::vector<Item>& items_;
  std::vector<Weight> free_;
  std::vector<int> current_;
  MkpSolution best_;
};

class BsmkpEnumerator {
 public:
  BsmkpEnumerator(const BsmkpInstance& instance, std::int64_t node_budget)
      : instance_(instance),
        node_budget_(node_budget),
        left_(instance.num_classes()),
        counts_(instance.num_knapsacks(), std::vector<std::int64_t>(instance.num_classes(), 0)) {
    for (std::size_t t = 0; t < left_.size(); ++t) left_[t] = instance.classes()[t].bound;
  }

  BsmkpSolution run() {
    best_.counts = counts_;
    best_.value = 0;
    visit(0, 0, instance_.capacities().empty() ? 0 : instance_.capacities()[0], Rational(0));
    best_.exact = true;
    best_.upper_bound = best_.value;
    return best_;
  }

 private:
  void visit(std::size_t i, std::size_t t, Weight room, const Rational& value) {
    const std::size_t m = instance_.num_knapsacks();
    const std::size_t classes = instance_.num_classes();
    if (++nodes_ > node_budget_) {
      throw TooLarge("brute_force_bsmkp: enumeration exceeds the node budget");
    }
    if (i == m) {
      if (value > best_.value) {
        best_.value = value;
        best_.counts = counts_;
      }
      return;
    }
    // Optimistic: every copy not yet placed still earns its profit.
    Rational reach = value;
    for (std::size_t u = 0; u < classes; ++u) {
      if (sgn(instance_.classes()[u].profit) > 0) reach += instance_.classes()[u].profit * left_[u];
    }
    if (reach <= best_.value) return;
    if (t == classes) {
      visit(i + 1, 0, i + 1 < m ? instance_.capacities()[i + 1] : 0, value);
      return;
    }
    const auto& cls = instance_.classes()[t];
    const std::int64_t most = std::min(left_[t], room / cls.size);
    for (std::int64_t y = most; y >= 0; --y) {
      counts_[i][t] = y;
      left_[t] -= y;
      visit(i, t + 1, room - y * cls.size, value + cls.profit * y);
      left_[t] += y;
    }
    counts_[i][t] = 0;
  }

  const BsmkpInstance& instance_;
  std::int64_t node_budget_;
  std::int64_t nodes_ = 0;
  std::vector<std::int64_t> left_;
  std::vector<std::vector<std::int64_t>> counts_;
  BsmkpSolution best_;
};

// Item-to-knapsack branch-and-bound.
class MkpBranchAndBound {
 public:
  MkpBranchAndBound(const MkpInstance& instance, const OracleLimits& limits)
      : instance_(instance), limits_(limits), free_(instance.capacities()) {
    const auto& items = instance.items();
    density_ = density_order(items);
    // Branch on heavy items first: they constrain the free rooms early and
    // leave the suffix bound to small items, which fragment less.
    order_ = density_;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return items[a].weight > items[b].weight;
    });
    const std::size_t n = order_.size();
    suffix_min_weight_.assign(n + 1, std::numeric_limits<Weight>::max());
    for (std::size_t k = n; k-- > 0;) {
      suffix_min_weight_[k] = std::min(suffix_min_weight_[k + 1], items[order_[k]].weight);
    }
    build_surrogate_table();
  }

  BnbResult run() {
    const auto& items = instance_.items();
    start_ = std::chrono::steady_clock::now();
    current_.assign(items.size(), kUnassigned);
    greedy_incumbent();

    // Root bound: surrogate, then a one-seed sequential relaxation.
    root_upper_ = remaining_bound(0);
    try {
      SequenceParams one_seed;
      one_seed.it_max = 1;
      const Profit z_seq = floor_to_int64(sequential_bound(instance_, one_seed).z_seq);
      root_upper_ = std::min(root_upper_, z_seq);
    } catch (const std::exception&) {
      // The surrogate bound alone is still valid.
    }

    if (best_.value < root_upper_) dfs(0, 0);
    BnbResult result;
    result.best = best_;
    result.lower = best_.value;
    result.exact = !aborted_;
    result.upper = result.exact ? best_.value : std::max(best_.value, root_upper_);
    result.nodes = nodes_;
    return result;
  }

 private:
  static constexpr std::int64_t kMaxTableCells = 4'000'000;

  void build_surrogate_table() {
    const std::size_t n = order_.size();
    table_width_ = instance_.total_capacity() + 1;
    if (static_cast<__int128>(n + 1) * table_width_ > kMaxTableCells) {
      table_width_ = 0;
      return;
    }
    const auto& items = instance_.items();
    table_.assign((n + 1) * static_cast<std::size_t>(table_width_), 0);
    for (std::size_t k = n; k-- > 0;) {
      const auto& it = items[order_[k]];
      const Profit* next = &table_[(k + 1) * table_width_];
      Profit* row = &table_[k * table_width_];
      for (Weight c = 0; c < table_width_; ++c) {
        row[c] = next[c];
        if (it.weight <= c) row[c] = std::max(row[c], next[c - it.weight] + it.profit);
      }
    }
  }

  // Upper bound on the profit still obtainable from order_[k..].
  Profit remaining_bound(std::size_t k) const {
    Weight room = 0;
    for (Weight f : free_) {
      if (f >= suffix_min_weight_[k]) room += f;
    }
    if (table_width_ > 0) return table_[k * table_width_ + static_cast<std::size_t>(room)];
    Profit total = 0;
    const auto& items = instance_.items();
    for (; k < order_.size() && room > 0; ++k) {
      const auto& it = items[order_[k]];
      if (it.weight <= room) {
        total += it.profit;
        room -= it.weight;
      } else {
        total += static_cast<Profit>(static_cast<__int128>(it.profit) * room / it.weight);
        room = 0;
      }
    }
    return total;
  }

  void greedy_incumbent() {
    const auto& items = instance_.items();
    std::vector<Weight> free = instance_.capacities();
    best_.assignment.assign(items.size(), kUnassigned);
    best_.value = 0;
    for (std::size_t j : density_) {
      int pick = kUnassigned;
      for (std::size_t i = 0; i < free.size(); ++i) {
        if (items[j].weight <= free[i] && (pick == kUnassigned || free[i] < free[pick])) {
          pick = static_cast<int>(i);
        }
      }
      if (pick == kUnassigned) continue;
      free[pick] -= items[j].weight;
      best_.assignment[j] = pick;
      best_.value += items[j].profit;
    }
  }

  bool out_of_budget() {
    if (++nodes_ > limits_.node_budget) return true;
    if ((nodes_ & 4095) == 0 &&
        std::chrono::steady_clock::now() - start_ > limits_.time_budget) {
      return true;
    }
    return false;
  }

  void dfs(std::size_t k, Profit value) {
    if (aborted_ || done_) return;
    if (out_of_budget()) {
      aborted_ = true;
      return;
    }
    if (value > best_.value) {
      best_.value = value;
      best_.assignment = current_;
      if (best_.value >= root_upper_) {
        done_ = true;
        return;
      }
    }
    const auto& items = instance_.items();
    // Items that fit nowhere are skipped without branching.
    while (k < order_.size() &&
           items[order_[k]].weight > *std::max_element(free_.begin(), free_.end())) {
      ++k;
    }
    if (k == order_.size()) return;
    if (value + remaining_bound(k) <= best_.value) return;

    const std::size_t j = order_[k];
    const Weight w = items[j].weight;
    // Knapsacks with equal free room lead to symmetric subtrees; try each
    // distinct room once, tightest first.
    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < free_.size(); ++i) {
      if (free_[i] >= w) targets.push_back(i);
    }
    std::stable_sort(targets.begin(), targets.end(),
                     [&](std::size_t a, std::size_t b) { return free_[a] < free_[b]; });
    Weight last_room = -1;
    for (std::size_t i : targets) {
      if (free_[i] == last_room) continue;
      last_room = free_[i];
      free_[i] -= w;
      current_[j] = static_cast<int>(i);
      dfs(k + 1, value + items[j].profit);
      current_[j] = kUnassigned;
      free_[i] += w;
      if (aborted_ || done_) return;
    }
    dfs(k + 1, value);
  }

  const MkpInstance& instance_;
  OracleLimits limits_;
  std::vector<std::size_t> density_;
  std::vector<std::size_t> order_;
  std::vector<Weight> suffix_min_weight_;
  std::vector<Profit> table_;
  Weight table_width_ = 0;
  std::vector<Weight> free_;
  std::vector<int> current_;
  MkpSolution best_;
  Profit root_upper_ = 0;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  bool done_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

MkpSolution brute_force_mkp(const MkpInstance& instance, const OracleLimits& limits) {
  limits.validate();
  if (instance.num_items() > limits.max_items) {
    throw TooLarge("brute_force_mkp: " + std::to_string(instance.num_items()) +
                   " items exceed the limit of " + std::to_string(limits.max_items));
  }
  return MkpEnumerator(instance).run();
}

BsmkpSolution brute_force_bsmkp(const BsmkpInstance& instance, const OracleLimits& limits) {
  limits.validate();
  return BsmkpEnumerator(instance, limits.node_budget).run();
}

BnbResult bnb_mkp(const MkpInstance& instance, const OracleLimits& limits) {
  limits.validate();
  return MkpBranchAndBound(instance, limits).run();
}

}  // namespace mkpb
