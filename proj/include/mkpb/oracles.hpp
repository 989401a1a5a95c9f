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

// Exact reference solvers. The two brute-force enumerators only use the
// model definitions and share no code with the bound computations; bnb_mkp
// is the desk-scale optimum provider for the benchmark harness.

#ifndef MKPB_ORACLES_HPP_
#define MKPB_ORACLES_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "mkpb/instance.hpp"

namespace mkpb {

struct OracleLimits {
  std::size_t max_items = 12;          // brute_force_mkp refuses larger n
  std::int64_t node_budget = 20'000'000;
  std::chrono::milliseconds time_budget{60'000};

  void validate() const;
};

class TooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Enumerates every assignment (items in index order, knapsacks in index order,
// "unassigned" last) with capacity pruning. Ties keep the first optimum met.
MkpSolution brute_force_mkp(const MkpInstance& instance, const OracleLimits& limits = {});

// Enumerates per-knapsack count matrices with capacity and bound pruning.
// Throws TooLarge once more than limits.node_budget nodes are visited.
BsmkpSolution brute_force_bsmkp(const BsmkpInstance& instance,
                                const OracleLimits& limits = {});

struct BnbResult {
  MkpSolution best;     // feasible, value == lower
  Profit lower = 0;
  Profit upper = 0;     // == lower when exact
  bool exact = false;
  std::int64_t nodes = 0;
};

// Depth-first item-to-knapsack branching in profit-density order. Every node
// is bounded by the surrogate bound of the remaining items over the remaining
// room; the root is additionally bounded by a one-seed sequential bound.
// Never throws on budget exhaustion: returns the open interval instead.
BnbResult bnb_mkp(const MkpInstance& instance, const OracleLimits& limits = {});

}  // namespace mkpb

#endif  // MKPB_ORACLES_HPP_
