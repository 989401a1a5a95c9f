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

// Single-knapsack primitives: the greedy fractional (Dantzig) bound, an exact
// 0-1 knapsack solver and a subset-sum solver.

#ifndef MKPB_KERNELS_HPP_
#define MKPB_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mkpb/instance.hpp"
#include "mkpb/rational.hpp"

namespace mkpb {

// Profit may be zero here, unlike MKP items.
using KernelItem = Item;

// Indices sorted by profit/weight descending, ties by larger weight then lower
// index. Every density-ordered routine in the library uses this order.
std::vector<std::size_t> density_order(std::span<const KernelItem> items);

// Value of the continuous relaxation of the single 0-1 knapsack.
Rational dantzig_bound(std::span<const KernelItem> items, Weight capacity);

struct KnapsackLimits {
  // Weight-indexed DP is used up to this capacity, branch-and-bound above.
  Weight dp_capacity_limit = 1'000'000;
  // Cap on DP decision-table cells (items x capacity) before falling back.
  std::int64_t dp_cell_limit = std::int64_t{1} << 31;
  std::int64_t node_budget = 50'000'000;
};

struct KnapsackResult {
  Profit value = 0;                 // best feasible value found
  std::vector<std::size_t> chosen;  // ascending item indices attaining `value`
  bool exact = true;
  Profit upper_bound = 0;           // equals `value` when exact
};

KnapsackResult solve_knapsack_01(std::span<const KernelItem> items, Weight capacity,
                                 const KnapsackLimits& limits = {});

struct SubsetSumLimits {
  Weight bitset_capacity_limit = 10'000'000;
  KnapsackLimits fallback;
};

struct SubsetSumResult {
  Weight value = 0;
  bool exact = true;
};

// Largest subset sum of `weights` not exceeding `capacity`.
SubsetSumResult solve_subset_sum(std::span<const Weight> weights, Weight capacity,
                                 const SubsetSumLimits& limits = {});

// Debug helper: a subset (ascending indices) attaining solve_subset_sum's value.
std::vector<std::size_t> subset_sum_witness(std::span<const Weight> weights,
                                            Weight capacity);

}  // namespace mkpb

#endif  // MKPB_KERNELS_HPP_
