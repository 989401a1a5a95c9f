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

// Exact solver for the Bounded Sequential Multiple Knapsack Problem.
//
// With sizes s_1 | s_2 | ... | s_L, let A_l = sum_i floor(c_i / s_l) be the
// number of size-s_l slots across all knapsacks. Taking K_u items of size s_u
// for every level u is packable into the knapsacks iff, for every level l,
//
//   sum_{u >= l} K_u * (s_u / s_l) <= A_l.
//
// Items of one size are interchangeable except for profit, so for a fixed
// K_l the best choice is the K_l most profitable ones. The solver therefore
// optimises only the per-level counts, by dynamic programming over levels from
// the largest size down, and recovers a per-knapsack placement afterwards by
// largest-first filling (realize_assignment).

#ifndef MKPB_BSMKP_HPP_
#define MKPB_BSMKP_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mkpb/instance.hpp"

namespace mkpb {

struct SlotProfile {
  std::vector<Weight> levels;            // ascending divisibility chain
  std::vector<std::int64_t> slot_caps;   // A_l per level
};

// Throws InstanceError (divisibility violation) if `sizes`, once sorted, is
// not a divisibility chain.
SlotProfile slot_capacities(std::span<const Weight> capacities,
                            std::span<const Weight> sizes);

// The aggregate packability predicate above; level_counts[l] is K_l.
bool nested_slots_feasible(const SlotProfile& profile,
                           std::span<const std::int64_t> level_counts);

// Signals that per-class totals violate the nested slot constraints or the
// class bounds. Reaching it from solve_bsmkp means a solver bug.
class InfeasibleCounts : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Per-knapsack counts (indexed [knapsack][class]) packing exactly
// `class_totals[t]` items of every class t.
std::vector<std::vector<std::int64_t>> realize_assignment(
    const BsmkpInstance& instance, std::span<const std::int64_t> class_totals);

struct BsmkpOptions {
  enum class Strategy { kAuto, kDynamicProgramming, kBranchAndBound };

  Strategy strategy = Strategy::kAuto;
  // kAuto switches to branch-and-bound when the DP would evaluate more
  // transitions than this.
  std::int64_t state_space_limit = 100'000'000;
  std::int64_t node_budget = 20'000'000;
};

BsmkpSolution solve_bsmkp(const BsmkpInstance& instance, const BsmkpOptions& options = {});

}  // namespace mkpb

#endif  // MKPB_BSMKP_HPP_
