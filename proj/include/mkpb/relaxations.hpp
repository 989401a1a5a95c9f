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

// Upper bounds for the multiple knapsack problem.
//
//  - lp_bound:         continuous relaxation of the assignment model.
//  - surrogate_bound:  all capacity rows aggregated with equal multipliers,
//                      i.e. one 0-1 knapsack of capacity sum_i c_i.
//  - sequential_bound: every item is cut into pieces whose sizes come from a
//                      divisibility chain S, with profit proportional to
//                      size; the resulting BSMKP instance is solved exactly.
//                      Its optimum lies between z_MKP and the LP bound. Several
//                      chains are tried (one per seed item) and the smallest
//                      optimum is returned.

#ifndef MKPB_RELAXATIONS_HPP_
#define MKPB_RELAXATIONS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mkpb/bsmkp.hpp"
#include "mkpb/instance.hpp"
#include "mkpb/kernels.hpp"
#include "mkpb/rational.hpp"

namespace mkpb {

// Replaces every capacity by the largest subset sum of item weights that fits
// it. The MKP optimum is unchanged. Knapsacks whose subset-sum solve was not
// exact, or that no item fits, keep their capacity and are listed in
// `untightened` when it is non-null.
MkpInstance tighten_capacities(const MkpInstance& instance,
                               std::vector<std::size_t>* untightened = nullptr);

// Internal consistency failure of the LP witness.
class WitnessFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// z_LP. Also builds the fractional assignment that attains it and checks it
// against the relaxed model; throws WitnessFailure if that check fails.
Rational lp_bound(const MkpInstance& instance);

struct SurrogateBound {
  Profit value = 0;  // an upper bound on z_MKP in every case
  bool exact = true; // false: knapsack search hit its budget, value is its bound
};

SurrogateBound surrogate_bound(const MkpInstance& instance,
                               const KnapsackLimits& limits = {});

struct SequenceParams {
  std::int64_t q_max = 10;
  std::int64_t l_max = 5;
  std::int64_t it_max = 10;

  // Throws std::invalid_argument unless q_max >= 2, l_max >= 2, it_max >= 1.
  void validate() const;
};

class DegenerateItem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ReferenceSize {
  Weight q = 0;
  Weight s_bar = 0;
};

// Largest q in [2, q_cap] minimising w mod q, and s_bar = w - (w mod q).
// Throws DegenerateItem if w < 2 or q_cap < 2.
ReferenceSize reference_size(Weight w, Weight q_cap);

struct SequenceBuild {
  std::size_t seed_item = 0;
  Weight q_cap = 0;
  Weight q = 0;
  Weight s_bar = 0;
  std::vector<Weight> sequence;  // ascending; contains 1 and s_bar
};

// Starts from {1, s_bar} and scans s_bar - q, s_bar - 2q, ..., q, q - 1, ..., 2,
// accepting a value when the set stays a divisibility chain, until the set
// has l_max members.
SequenceBuild build_sequence(Weight w, const SequenceParams& params,
                             std::size_t seed_item = 0);

// Cuts every item greedily by the sizes of `sequence` (largest first) into
// pieces of profit (p_j / w_j) * size. Capacities are copied unchanged.
BsmkpInstance split_items(const MkpInstance& instance, const std::vector<Weight>& sequence);

struct SequentialIteration {
  std::optional<std::size_t> seed_item;  // empty for the unit-size fallback
  std::vector<Weight> sequence;
  std::optional<Rational> z_seq;  // empty when the solve failed or was inexact
  bool cached = false;            // same sequence as an earlier iteration
  double millis = 0.0;
  std::string error;
};

struct SequentialOptions {
  // Seed items to visit, in order. Empty: descending weight, ties by index.
  std::vector<std::size_t> seed_order;
  BsmkpOptions solver;
};

struct SequentialResult {
  Rational z_seq;
  std::vector<SequentialIteration> trace;
};

// Throws std::runtime_error if no iteration produced a bound.
SequentialResult sequential_bound(const MkpInstance& instance,
                                  const SequenceParams& params = {},
                                  const SequentialOptions& options = {});

}  // namespace mkpb

#endif  // MKPB_RELAXATIONS_HPP_
