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

#include "mkpb/relaxations.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

namespace mkpb {

MkpInstance tighten_capacities(const MkpInstance& instance,
                               std::vector<std::size_t>* untightened) {
  std::vector<Weight> weights;
  weights.reserve(instance.num_items());
  for (const auto& item : instance.items()) weights.push_back(item.weight);

  std::vector<Weight> caps = instance.capacities();
  // Knapsacks with equal capacity share one subset-sum solve.
  std::map<Weight, SubsetSumResult> solved;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    auto it = solved.find(caps[i]);
    if (it == solved.end()) it = solved.emplace(caps[i], solve_subset_sum(weights, caps[i])).first;
    const SubsetSumResult& res = it->second;
    if (res.exact && res.value >= 1) {
      caps[i] = res.value;
    } else if (untightened != nullptr) {
      untightened->push_back(i);
    }
  }
  return instance.with_capacities(std::move(caps));
}

Rational lp_bound(const MkpInstance& instance) {
  const auto& items = instance.items();
  const Weight total_cap = instance.total_capacity();

  // Greedy fractions of the aggregated knapsack.
  std::vector<Rational> fraction(items.size(), Rational(0));
  Weight left = total_cap;
  for (std::size_t j : density_order(items)) {
    if (left <= 0) break;
    if (items[j].weight <= left) {
      fraction[j] = 1;
      left -= items[j].weight;
    } else {
      fraction[j] = make_rational(left, items[j].weight);
      left = 0;
    }
  }
  const Rational value = dantzig_bound(items, total_cap);

  // Spread every item over the knapsacks in proportion to capacity:
  // x_ij = x_j * c_i / C.
  const Rational total = make_rational(total_cap);
  Rational objective = 0;
  for (std::size_t i = 0; i < instance.num_knapsacks(); ++i) {
    const Rational share = make_rational(instance.capacities()[i]) / total;
    Rational load = 0;
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (sgn(fraction[j]) == 0) continue;
      const Rational x = fraction[j] * share;
      if (sgn(x) < 0 || x > 1) throw WitnessFailure("LP witness entry outside [0, 1]");
      load += x * items[j].weight;
      objective += x * items[j].profit;
    }
    if (load > instance.capacities()[i]) throw WitnessFailure("LP witness overfills a knapsack");
  }
  for (const auto& f : fraction) {
    if (f > 1) throw WitnessFailure("LP witness assigns an item more than once");
  }
  if (objective != value) throw WitnessFailure("LP witness objective differs from the bound");
  return value;
}

SurrogateBound surrogate_bound(const MkpInstance& instance, const KnapsackLimits& limits) {
  const auto res = solve_knapsack_01(instance.items(), instance.total_capacity(), limits);
  return {res.exact ? res.value : res.upper_bound, res.exact};
}

void SequenceParams::validate() const {
  if (q_max < 2) throw std::invalid_argument("q_max must be at least 2");
  if (l_max < 2) throw std::invalid_argument("l_max must be at least 2");
  if (it_max < 1) throw std::invalid_argument("it_max must be at least 1");
}

ReferenceSize reference_size(Weight w, Weight q_cap) {
  if (w < 2) throw DegenerateItem("reference size needs a weight of at least 2");
  if (q_cap < 2) throw DegenerateItem("reference size needs Q >= 2");
  ReferenceSize best{2, w - w % 2};
  Weight best_mod = w % 2;
  for (Weight q = 3; q <= q_cap; ++q) {
    if (w % q <= best_mod) {
      best_mod = w % q;
      best = {q, w - best_mod};
    }
  }
  return best;
}

namespace {

bool keeps_chain(const std::vector<Weight>& chain, Weight t) {
  for (Weight s : chain) {
    if (s == t) return false;
    if (s < t ? t % s != 0 : s % t != 0) return false;
  }
  return true;
}

bool is_divisibility_chain(std::vector<Weight> sizes) {
  std::sort(sizes.begin(), sizes.end());
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    if (sizes[i] < 1 || sizes[i + 1] % sizes[i] != 0) return false;
  }
  return !sizes.empty() && sizes.front() >= 1;
}

}  // namespace

SequenceBuild build_sequence(Weight w, const SequenceParams& params, std::size_t seed_item) {
  params.validate();
  SequenceBuild build;
  build.seed_item = seed_item;
  build.q_cap = std::min<Weight>(params.q_max, w);
  const ReferenceSize ref = reference_size(w, build.q_cap);
  build.q = ref.q;
  build.s_bar = ref.s_bar;

  std::vector<Weight>& chain = build.sequence;
  chain = {1, ref.s_bar};
  auto full = [&] { return static_cast<std::int64_t>(chain.size()) >= params.l_max; };
  auto consider = [&](Weight t) {
    if (keeps_chain(chain, t)) chain.push_back(t);
  };
  for (Weight t = ref.s_bar - ref.q; t >= ref.q && !full(); t -= ref.q) consider(t);
  for (Weight t = ref.q - 1; t >= 2 && !full(); --t) consider(t);
  std::sort(chain.begin(), chain.end());
  return build;
}

BsmkpInstance split_items(const MkpInstance& instance, const std::vector<Weight>& sequence) {
  if (!is_divisibility_chain(sequence) ||
      std::find(sequence.begin(), sequence.end(), Weight{1}) == sequence.end()) {
    throw std::invalid_argument("split sequence must be a divisibility chain containing 1");
  }
  std::vector<Weight> descending = sequence;
  std::sort(descending.begin(), descending.end(), std::greater<>());
  descending.erase(std::unique(descending.begin(), descending.end()), descending.end());

  RawBsmkp raw;
  raw.capacities = instance.capacities();
  raw.name = instance.name();
  for (const auto& item : instance.items()) {
    Weight residual = item.weight;
    for (Weight s : descending) {
      const std::int64_t copies = residual / s;
      if (copies == 0) continue;
      raw.classes.push_back({s, make_rational(item.profit * s, item.weight), copies});
      residual -= copies * s;
    }
  }
  return validate_bsmkp(std::move(raw));
}

SequentialResult sequential_bound(const MkpInstance& instance, const SequenceParams& params,
                                  const SequentialOptions& options) {
  params.validate();
  const auto& items = instance.items();

  std::vector<std::size_t> seeds = options.seed_order;
  if (seeds.empty()) {
    seeds.resize(items.size());
    std::iota(seeds.begin(), seeds.end(), std::size_t{0});
    std::stable_sort(seeds.begin(), seeds.end(), [&](std::size_t a, std::size_t b) {
      return items[a].weight > items[b].weight;
    });
  }
  std::erase_if(seeds, [&](std::size_t j) { return j >= items.size() || items[j].weight < 2; });
  if (static_cast<std::int64_t>(seeds.size()) > params.it_max) {
    seeds.resize(static_cast<std::size_t>(params.it_max));
  }

  SequentialResult result;
  std::map<std::vector<Weight>, std::optional<Rational>> memo;
  auto run = [&](std::optional<std::size_t> seed, std::vector<Weight> sequence) {
    SequentialIteration it;
    it.seed_item = seed;
    it.sequence = std::move(sequence);
    const auto start = std::chrono::steady_clock::now();
    if (auto hit = memo.find(it.sequence); hit != memo.end()) {
      it.cached = true;
      it.z_seq = hit->second;
    } else {
      try {
        const BsmkpSolution sol = solve_bsmkp(split_items(instance, it.sequence), options.solver);
        if (sol.exact) {
          it.z_seq = sol.value;
        } else {
          it.error = "BSMKP search budget exhausted";
        }
      } catch (const std::exception& e) {
        it.error = e.what();
      }
      memo.emplace(it.sequence, it.z_seq);
    }
    it.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          start).count();
    result.trace.push_back(std::move(it));
  };

  for (std::size_t j : seeds) run(j, build_sequence(items[j].weight, params, j).sequence);
  // Only unit weights: the unit chain is the one sequence available.
  if (seeds.empty()) run(std::nullopt, {1});

  bool found = false;
  for (const auto& it : result.trace) {
    if (!it.z_seq) continue;
    if (!found || *it.z_seq < result.z_seq) result.z_seq = *it.z_seq;
    found = true;
  }
  if (!found) throw std::runtime_error("no sequential relaxation could be solved");
  return result;
}

}  // namespace mkpb
