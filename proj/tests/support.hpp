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

// Test-only oracles and random instance builders. Nothing here calls into
// the library's solvers, so agreement with them is meaningful.

#ifndef MKPB_TESTS_SUPPORT_HPP_
#define MKPB_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mkpb/instance.hpp"
#include "mkpb/rational.hpp"

namespace mkpb::testing {

class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : engine_(seed * 0x9e3779b97f4a7c15ULL + 7) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

inline MkpInstance random_mkp(TestRng& rng, int n_max, int m_max, Weight w_max,
                              Profit p_max = 50) {
  RawMkp raw;
  const auto n = rng.uniform(1, n_max);
  const auto m = rng.uniform(1, m_max);
  Weight total = 0;
  for (int j = 0; j < n; ++j) {
    raw.items.push_back({rng.uniform(1, p_max), rng.uniform(1, w_max)});
    total += raw.items.back().weight;
  }
  for (int i = 0; i < m; ++i) {
    raw.capacities.push_back(rng.uniform(1, std::max<Weight>(1, total * 2 / (3 * m))));
  }
  return validate_mkp(std::move(raw));
}

// Best 0-1 knapsack value by trying all 2^n subsets.
inline Profit enumerate_knapsack(const std::vector<Item>& items, Weight capacity) {
  const std::size_t n = items.size();
  Profit best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Weight w = 0;
    Profit p = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> j & 1) {
        w += items[j].weight;
        p += items[j].profit;
      }
    }
    if (w <= capacity) best = std::max(best, p);
  }
  return best;
}

// Best subset sum not above `capacity`, by enumeration.
inline Weight enumerate_subset_sum(const std::vector<Weight>& weights, Weight capacity) {
  Weight best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << weights.size()); ++mask) {
    Weight w = 0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      if (mask >> j & 1) w += weights[j];
    }
    if (w <= capacity) best = std::max(best, w);
  }
  return best;
}

// Can counts[l] items of size sizes[l] be packed into the knapsacks? Plain
// backtracking over every (item, knapsack) choice, no slot reasoning; failed
// (item, sorted free rooms) states are memoized.
inline bool placement_exists(std::vector<Weight> free, const std::vector<Weight>& sizes,
                             const std::vector<std::int64_t>& counts) {
  std::vector<Weight> pieces;
  for (std::size_t l = 0; l < sizes.size(); ++l) {
    for (std::int64_t k = 0; k < counts[l]; ++k) pieces.push_back(sizes[l]);
  }
  std::set<std::pair<std::size_t, std::vector<Weight>>> failed;
  std::function<bool(std::size_t)> place = [&](std::size_t k) {
    if (k == pieces.size()) return true;
    std::vector<Weight> key = free;
    std::sort(key.begin(), key.end());
    if (failed.count({k, key})) return false;
    for (auto& f : free) {
      if (f < pieces[k]) continue;
      f -= pieces[k];
      const bool ok = place(k + 1);
      f += pieces[k];
      if (ok) return true;
    }
    failed.insert({k, std::move(key)});
    return false;
  };
  return place(0);
}

// Random divisibility chain of 1..max_levels sizes with top size <= max_size.
inline std::vector<Weight> random_chain(TestRng& rng, int max_levels, Weight max_size) {
  const auto levels = rng.uniform(1, max_levels);
  std::vector<Weight> chain{rng.uniform(1, 3)};
  for (int l = 1; l < levels; ++l) {
    const Weight next = chain.back() * rng.uniform(2, 4);
    if (next > max_size) break;
    chain.push_back(next);
  }
  return chain;
}

inline Rational random_profit(TestRng& rng) {
  return make_rational(rng.uniform(0, 40), rng.uniform(1, 6));
}

// Tiny BSMKP: at most 3 size levels, 6 classes, 3 knapsacks, bounds <= 3.
inline BsmkpInstance random_tiny_bsmkp(TestRng& rng) {
  const auto sizes = random_chain(rng, 3, 12);
  RawBsmkp raw;
  const auto classes = rng.uniform(1, 6);
  for (int t = 0; t < classes; ++t) {
    const Weight s = sizes[static_cast<std::size_t>(rng.uniform(0, sizes.size() - 1))];
    raw.classes.push_back({s, random_profit(rng), rng.uniform(1, 3)});
  }
  const auto m = rng.uniform(1, 3);
  for (int i = 0; i < m; ++i) raw.capacities.push_back(rng.uniform(1, 20));
  return validate_bsmkp(std::move(raw));
}

// Drops the t_*_ms columns from suite CSV text; everything else must be
// reproducible byte for byte.
inline std::string strip_timing_columns(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  std::vector<bool> keep;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      out += line + "\n";
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (keep.empty()) {
      for (const auto& name : cells) keep.push_back(name.rfind("t_", 0) != 0);
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c < keep.size() && keep[c]) out += cells[c] + ",";
    }
    out += "\n";
  }
  return out;
}

}  // namespace mkpb::testing

#endif  // MKPB_TESTS_SUPPORT_HPP_
