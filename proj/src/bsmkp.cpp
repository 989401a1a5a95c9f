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

#include "mkpb/bsmkp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mkpb {

SlotProfile slot_capacities(std::span<const Weight> capacities,
                            std::span<const Weight> sizes) {
  SlotProfile profile;
  profile.levels.assign(sizes.begin(), sizes.end());
  std::sort(profile.levels.begin(), profile.levels.end());
  profile.levels.erase(std::unique(profile.levels.begin(), profile.levels.end()),
                       profile.levels.end());
  std::vector<Violation> violations;
  for (std::size_t l = 0; l < profile.levels.size(); ++l) {
    if (profile.levels[l] < 1) {
      violations.push_back({Violation::Kind::kNonPositiveValue, "size", l});
    } else if (l + 1 < profile.levels.size() &&
               profile.levels[l + 1] % profile.levels[l] != 0) {
      violations.push_back({Violation::Kind::kDivisibilityViolation, "size", l,
                            profile.levels[l], profile.levels[l + 1]});
    }
  }
  if (!violations.empty()) throw InstanceError(std::move(violations));

  for (Weight s : profile.levels) {
    std::int64_t slots = 0;
    for (Weight c : capacities) slots += c / s;
    profile.slot_caps.push_back(slots);
  }
  return profile;
}

bool nested_slots_feasible(const SlotProfile& profile,
                           std::span<const std::int64_t> level_counts) {
  const std::size_t levels = profile.levels.size();
  if (level_counts.size() != levels) return false;
  // units[l] = sum_{u >= l} K_u * s_u / s_l, built from the top level down.
  __int128 units = 0;
  for (std::size_t l = levels; l-- > 0;) {
    if (level_counts[l] < 0) return false;
    if (l + 1 < levels) units *= profile.levels[l + 1] / profile.levels[l];
    units += level_counts[l];
    if (units > profile.slot_caps[l]) return false;
  }
  return true;
}

std::vector<std::vector<std::int64_t>> realize_assignment(
    const BsmkpInstance& instance, std::span<const std::int64_t> class_totals) {
  const auto& classes = instance.classes();
  if (class_totals.size() != classes.size()) {
    throw InfeasibleCounts("class total vector has the wrong length");
  }
  std::vector<Weight> free = instance.capacities();
  std::vector<std::vector<std::int64_t>> counts(
      instance.num_knapsacks(), std::vector<std::int64_t>(classes.size(), 0));

  // Classes are stored by ascending size: walk them backwards so every
  // knapsack load is a multiple of the size being placed.
  for (std::size_t t = classes.size(); t-- > 0;) {
    std::int64_t left = class_totals[t];
    if (left < 0 || left > classes[t].bound) {
      throw InfeasibleCounts("class " + std::to_string(t) + " total outside [0, bound]");
    }
    const Weight s = classes[t].size;
    for (std::size_t i = 0; i < free.size() && left > 0; ++i) {
      const std::int64_t take = std::min(left, free[i] / s);
      counts[i][t] += take;
      free[i] -= take * s;
      left -= take;
    }
    if (left > 0) {
      throw InfeasibleCounts("no free slot of size " + std::to_string(s) +
                             " for class " + std::to_string(t));
    }
  }
  return counts;
}

namespace {

// Best total profit for taking k items of one size: the k most profitable,
// in the instance's class order (profit descending, then class index).
class LevelCurve {
 public:
  LevelCurve(const BsmkpInstance& instance, Weight size, std::int64_t slot_cap)
      : size_(size) {
    Rational base = 0;
    const auto& classes = instance.classes();
    for (std::size_t t = 0; t < classes.size() && total_ < slot_cap; ++t) {
      if (classes[t].size != size) continue;
      const std::int64_t count = std::min(classes[t].bound, slot_cap - total_);
      runs_.push_back({t, total_, count, classes[t].profit, base});
      base += classes[t].profit * count;
      total_ += count;
    }
    full_ = base;
    approx_.resize(static_cast<std::size_t>(total_) + 1);
    for (const auto& run : runs_) {
      const double b = run.base.get_d();
      const double p = run.profit.get_d();
      for (std::int64_t i = 0; i < run.count; ++i) {
        approx_[static_cast<std::size_t>(run.start + i)] = b + static_cast<double>(i) * p;
      }
    }
    approx_.back() = full_.get_d();
  }

  Weight size() const { return size_; }
  std::int64_t max_count() const { return total_; }
  double approx(std::int64_t k) const { return approx_[static_cast<std::size_t>(k)]; }

  Rational exact(std::int64_t k) const {
    if (k >= total_) return full_;
    auto it = std::upper_bound(runs_.begin(), runs_.end(), k,
                               [](std::int64_t v, const Run& r) { return v < r.start; });
    --it;
    return it->base + it->profit * (k - it->start);
  }

  void distribute(std::int64_t k, std::vector<std::int64_t>& class_totals) const {
    for (const auto& run : runs_) {
      if (k <= 0) break;
      const std::int64_t take = std::min(k, run.count);
      class_totals[run.cls] += take;
      k -= take;
    }
  }

  struct Run {
    std::size_t cls;
    std::int64_t start;
    std::int64_t count;
    Rational profit;
    Rational base;
  };
  const std::vector<Run>& runs() const { return runs_; }

 private:
  Weight size_;
  std::vector<Run> runs_;
  std::int64_t total_ = 0;
  Rational full_;
  std::vector<double> approx_;
};


struct LevelPlan {
  std::vector<std::int64_t> counts;  // K_l per level
  Rational value;
  bool exact = true;
  Rational upper_bound;
};

bool nearly_equal(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Best candidate seen for one DP cell. Candidates are compared in double
// precision and re-compared exactly whenever the doubles are close, so the
// winner is the one an all-rational comparison would pick.
struct Cell {
  double value_d = 0.0;
  std::int64_t prev = -1;  // slots used above; -1 while the cell is empty
  std::int64_t take = 0;   // items taken at this level
  bool have_exact = false;
  Rational value;
};

// Offers candidate (take, prev) with approximate value `cand_d`; `exact_of`
// computes a candidate's exact value on demand.
template <typename ExactFn>
void offer(Cell& cell, double cand_d, std::int64_t take, std::int64_t prev,
           const ExactFn& exact_of) {
  if (cell.prev < 0 || (cand_d > cell.value_d && !nearly_equal(cand_d, cell.value_d))) {
    cell.value_d = cand_d;
    cell.prev = prev;
    cell.take = take;
    cell.have_exact = false;
    return;
  }
  if (cand_d < cell.value_d && !nearly_equal(cand_d, cell.value_d)) return;
  if (!cell.have_exact) {
    cell.value = exact_of(cell.take, cell.prev);
    cell.have_exact = true;
  }
  Rational exact = exact_of(take, prev);
  if (exact > cell.value) {
    cell.value = std::move(exact);
    cell.value_d = cand_d;
    cell.prev = prev;
    cell.take = take;
  }
}

class LevelProblem {
 public:
  LevelProblem(const BsmkpInstance& instance, SlotProfile profile)
      : profile_(std::move(profile)) {
    for (std::size_t l = 0; l < profile_.levels.size(); ++l) {
      curves_.emplace_back(instance, profile_.levels[l], profile_.slot_caps[l]);
    }
  }

  std::size_t levels() const { return curves_.size(); }
  const LevelCurve& curve(std::size_t l) const { return curves_[l]; }
  std::int64_t slots(std::size_t l) const { return profile_.slot_caps[l]; }
  std::int64_t ratio(std::size_t l) const {
    return profile_.levels[l + 1] / profile_.levels[l];
  }

  // Number of (state, take) transitions the DP would evaluate.
  std::int64_t transition_estimate() const {
    constexpr std::int64_t kHuge = std::int64_t{1} << 60;
    const std::size_t n = levels();
    std::int64_t states = curves_.back().max_count() + 1;
    std::int64_t total = states;
    for (std::size_t l = n - 1; l-- > 0;) {
      const std::int64_t r = ratio(l);
      const std::int64_t v = std::min(states, slots(l) / r + 1);
      const std::int64_t per_state = l == 0 ? 1 : curves_[l].max_count() + 1;
      if (per_state > 0 && v > (kHuge - total) / per_state) return kHuge;
      total += v * per_state;
      states = std::min(slots(l), curves_[l].max_count() + r * (v - 1)) + 1;
    }
    return total;
  }

  LevelPlan solve_dp() const {
    const std::size_t n = levels();
    LevelPlan plan;
    plan.counts.assign(n, 0);
    if (n == 1) {
      plan.counts[0] = std::min(curves_[0].max_count(), slots(0));
      plan.value = curves_[0].exact(plan.counts[0]);
      plan.upper_bound = plan.value;
      return plan;
    }

    // g[v]: best profit of the levels processed so far when they occupy
    // exactly v slots of the lowest processed level.
    const LevelCurve& top = curves_.back();
    std::vector<Rational> g(static_cast<std::size_t>(top.max_count()) + 1);
    std::vector<double> g_d(g.size());
    std::vector<char> valid(g.size(), 1);
    for (std::size_t v = 0; v < g.size(); ++v) {
      g[v] = top.exact(static_cast<std::int64_t>(v));
      g_d[v] = g[v].get_d();
    }

    std::vector<std::vector<std::int64_t>> parent(n);
    std::vector<std::vector<std::int64_t>> taken(n);
    for (std::size_t l = n - 1; l-- > 1;) {
      const LevelCurve& cur = curves_[l];
      const std::int64_t r = ratio(l);
      const std::int64_t v_max = std::min(static_cast<std::int64_t>(g.size()) - 1, slots(l) / r);
      const std::int64_t u_max = std::min(slots(l), cur.max_count() + r * v_max);
      std::vector<Cell> cells(static_cast<std::size_t>(u_max) + 1);
      auto exact_of = [&](std::int64_t k, std::int64_t v) -> Rational { return cur.exact(k) + g[v]; };

      for (std::int64_t v = 0; v <= v_max; ++v) {
        if (!valid[v]) continue;
        const std::int64_t k_max = std::min(cur.max_count(), slots(l) - r * v);
        for (std::int64_t k = 0; k <= k_max; ++k) {
          offer(cells[static_cast<std::size_t>(k + r * v)], g_d[v] + cur.approx(k), k, v,
                exact_of);
        }
      }

      std::vector<Rational> next(cells.size());
      std::vector<double> next_d(cells.size(), 0.0);
      std::vector<char> next_valid(cells.size(), 0);
      parent[l].assign(cells.size(), -1);
      taken[l].assign(cells.size(), 0);
      for (std::size_t u = 0; u < cells.size(); ++u) {
        Cell& cell = cells[u];
        if (cell.prev < 0) continue;
        next[u] = cell.have_exact ? std::move(cell.value) : exact_of(cell.take, cell.prev);
        next_d[u] = next[u].get_d();
        next_valid[u] = 1;
        parent[l][u] = cell.prev;
        taken[l][u] = cell.take;
      }
      g = std::move(next);
      g_d = std::move(next_d);
      valid = std::move(next_valid);
    }

    // The smallest size takes as many of its best items as slots allow.
    const LevelCurve& bottom = curves_[0];
    const std::int64_t r = ratio(0);
    const std::int64_t v_max = std::min(static_cast<std::int64_t>(g.size()) - 1, slots(0) / r);
    auto exact_of = [&](std::int64_t k, std::int64_t v) -> Rational { return bottom.exact(k) + g[v]; };
    Cell best;
    for (std::int64_t v = 0; v <= v_max; ++v) {
      if (!valid[v]) continue;
      const std::int64_t k = std::min(bottom.max_count(), slots(0) - r * v);
      offer(best, g_d[v] + bottom.approx(k), k, v, exact_of);
    }
    if (!best.have_exact) best.value = exact_of(best.take, best.prev);

    plan.counts[0] = best.take;
    std::int64_t u = best.prev;
    for (std::size_t l = 1; l + 1 < n; ++l) {
      plan.counts[l] = taken[l][u];
      u = parent[l][u];
    }
    plan.counts[n - 1] = u;
    plan.value = std::move(best.value);
    plan.upper_bound = plan.value;
    return plan;
  }

  // Depth-first search over per-level counts from the largest size down,
  // pruned by a fractional bound over the remaining sizes.
  LevelPlan solve_bnb(std::int64_t node_budget) const {
    Search search(*this, node_budget);
    search.current.assign(levels(), 0);
    search.best.counts.assign(levels(), 0);
    search.best.value = 0;
    search.dfs(levels() - 1, 0, Rational(0));
    LevelPlan plan = std::move(search.best);
    plan.exact = !search.aborted;
    plan.upper_bound = plan.value;
    if (search.aborted) {
      Rational root = search.relaxation(levels() - 1, 0);
      if (root > plan.upper_bound) plan.upper_bound = std::move(root);
    }
    return plan;
  }

 private:
  struct Piece {
    Rational profit;
    Weight size;
    std::int64_t count;
  };

  struct Search {
    Search(const LevelProblem& p, std::int64_t node_budget) : problem(p), budget(node_budget) {
      prepare();
    }

    const LevelProblem& problem;
    std::int64_t budget;
    std::int64_t nodes = 0;
    bool aborted = false;
    std::vector<std::int64_t> current;
    LevelPlan best;
    // by_density[l]: pieces of levels 0..l, profit density descending.
    std::vector<std::vector<Piece>> by_density;

    void prepare() {
      std::vector<Piece> pool;
      for (std::size_t l = 0; l < problem.levels(); ++l) {
        const LevelCurve& c = problem.curve(l);
        for (const auto& run : c.runs()) pool.push_back({run.profit, c.size(), run.count});
        std::vector<Piece> sorted = pool;
        std::stable_sort(sorted.begin(), sorted.end(), [](const Piece& a, const Piece& b) {
          return a.profit * b.size > b.profit * a.size;
        });
        by_density.push_back(std::move(sorted));
      }
    }

    // Upper bound for levels 0..l when the levels above hold `above` slots
    // of level l + 1 (zero at the top).
    Rational relaxation(std::size_t l, std::int64_t above) const {
      const auto& levels = problem.profile_.levels;
      Weight room = problem.slots(0) * levels[0];
      if (l + 1 < problem.levels()) room -= above * levels[l + 1];
      Rational total = 0;
      for (const auto& piece : by_density[l]) {
        if (room <= 0) break;
        const Weight need = piece.size * piece.count;
        if (need <= room) {
          total += piece.profit * piece.count;
          room -= need;
        } else {
          total += piece.profit * room / piece.size;
          room = 0;
        }
      }
      return total;
    }

    void dfs(std::size_t l, std::int64_t above, const Rational& value) {
      if (++nodes > budget) {
        aborted = true;
        return;
      }
      const bool is_top = l + 1 == problem.levels();
      const std::int64_t avail =
          is_top ? problem.slots(l) : problem.slots(l) - problem.ratio(l) * above;
      const LevelCurve& cur = problem.curve(l);
      const std::int64_t k_max = std::min(cur.max_count(), avail);
      if (l == 0) {
        current[0] = k_max;
        Rational total = value + cur.exact(k_max);
        if (total > best.value) {
          best.value = std::move(total);
          best.counts = current;
        }
        return;
      }
      if (value + relaxation(l, above) <= best.value) return;
      for (std::int64_t k = k_max; k >= 0; --k) {
        current[l] = k;
        const std::int64_t used = is_top ? k : k + problem.ratio(l) * above;
        dfs(l - 1, used, value + cur.exact(k));
        if (aborted) return;
      }
      current[l] = 0;
    }
  };

  SlotProfile profile_;
  std::vector<LevelCurve> curves_;
};

}  // namespace

BsmkpSolution solve_bsmkp(const BsmkpInstance& instance, const BsmkpOptions& options) {
  const auto& sizes = instance.sizes();
  LevelProblem problem(instance, slot_capacities(instance.capacities(), sizes));

  using Strategy = BsmkpOptions::Strategy;
  Strategy strategy = options.strategy;
  if (strategy == Strategy::kAuto) {
    strategy = problem.transition_estimate() > options.state_space_limit
                   ? Strategy::kBranchAndBound
                   : Strategy::kDynamicProgramming;
  }
  LevelPlan plan = strategy == Strategy::kDynamicProgramming
                       ? problem.solve_dp()
                       : problem.solve_bnb(options.node_budget);

  std::vector<std::int64_t> totals(instance.num_classes(), 0);
  for (std::size_t l = 0; l < problem.levels(); ++l) {
    problem.curve(l).distribute(plan.counts[l], totals);
  }
  BsmkpSolution solution;
  solution.counts = realize_assignment(instance, totals);
  solution.value = solution_value(instance, solution.counts);
  if (solution.value != plan.value) {
    throw std::logic_error("BSMKP placement value differs from the level plan value");
  }
  solution.exact = plan.exact;
  solution.upper_bound = plan.upper_bound;
  return solution;
}

}  // namespace mkpb
