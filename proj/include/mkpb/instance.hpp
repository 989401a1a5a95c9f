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

// Instance and solution types for the 0-1 Multiple Knapsack Problem (MKP)
// and for the Bounded Sequential Multiple Knapsack Problem (BSMKP), plus the
// plain-text file formats for both.
//
// MKP text format (LF line endings, '#' lines are comments):
//   n m
//   p_1 w_1
//   ...
//   p_n w_n
//   c_1
//   ...
//   c_m
//
// BSMKP text format:
//   L m
//   s_t v_num v_den b_t      (L lines)
//   c_i                      (m lines)
//
// A leading "# name: <id>" comment carries the optional instance name.

#ifndef MKPB_INSTANCE_HPP_
#define MKPB_INSTANCE_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mkpb/rational.hpp"

namespace mkpb {

using Weight = std::int64_t;
using Profit = std::int64_t;

struct Item {
  Profit profit = 0;
  Weight weight = 0;

  friend bool operator==(const Item&, const Item&) = default;
};

struct Violation {
  enum class Kind { kEmptyInstance, kNonPositiveValue, kDivisibilityViolation };

  Kind kind;
  std::string field;      // "profit", "weight", "capacity", "size", "bound", ...
  std::size_t index = 0;  // position within `field`
  std::int64_t size_a = 0;  // divisibility violations: size_a does not divide size_b
  std::int64_t size_b = 0;

  std::string message() const;
};

// Thrown by the validators and readers; carries every violation found.
class InstanceError : public std::runtime_error {
 public:
  explicit InstanceError(std::vector<Violation> violations);
  explicit InstanceError(const std::string& parse_message);

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Unvalidated MKP data as read from a file or produced by a generator.
struct RawMkp {
  std::vector<Item> items;
  std::vector<Weight> capacities;
  std::string name;
};

class MkpInstance {
 public:
  const std::vector<Item>& items() const { return items_; }
  const std::vector<Weight>& capacities() const { return capacities_; }
  const std::string& name() const { return name_; }

  std::size_t num_items() const { return items_.size(); }
  std::size_t num_knapsacks() const { return capacities_.size(); }
  Weight total_capacity() const;
  Weight total_weight() const;
  Weight max_capacity() const;
  // No item fits any knapsack.
  bool degenerate() const;

  // Same items, capacities replaced. The new capacities must be positive.
  MkpInstance with_capacities(std::vector<Weight> capacities) const;

  friend bool operator==(const MkpInstance&, const MkpInstance&) = default;

 private:
  friend MkpInstance validate_mkp(RawMkp raw);
  MkpInstance() = default;

  std::vector<Item> items_;
  std::vector<Weight> capacities_;
  std::string name_;
};

inline constexpr int kUnassigned = -1;

struct MkpSolution {
  std::vector<int> assignment;  // knapsack index per item or kUnassigned
  Profit value = 0;
};

// True if `solution` respects capacities and its value matches its assignment.
bool is_feasible(const MkpInstance& instance, const MkpSolution& solution);

struct BsmkpClass {
  Weight size = 0;
  Rational profit;
  std::int64_t bound = 0;

  friend bool operator==(const BsmkpClass&, const BsmkpClass&) = default;
};

struct RawBsmkp {
  std::vector<BsmkpClass> classes;
  std::vector<Weight> capacities;
  std::string name;
};

class BsmkpInstance {
 public:
  const std::vector<BsmkpClass>& classes() const { return classes_; }
  const std::vector<Weight>& capacities() const { return capacities_; }
  const std::string& name() const { return name_; }
  // Distinct class sizes, ascending; each divides the next.
  const std::vector<Weight>& sizes() const { return sizes_; }

  std::size_t num_classes() const { return classes_.size(); }
  std::size_t num_knapsacks() const { return capacities_.size(); }

  friend bool operator==(const BsmkpInstance&, const BsmkpInstance&) = default;

 private:
  friend BsmkpInstance validate_bsmkp(RawBsmkp raw);
  BsmkpInstance() = default;

  std::vector<BsmkpClass> classes_;
  std::vector<Weight> capacities_;
  std::vector<Weight> sizes_;
  std::string name_;
};

struct BsmkpSolution {
  // counts[i][t]: items of class t placed in knapsack i.
  std::vector<std::vector<std::int64_t>> counts;
  Rational value;
  // False when a resource limit stopped the search; `value` is then the best
  // feasible value found and `upper_bound` a valid bound on the optimum.
  bool exact = true;
  Rational upper_bound;
};

// Checks capacity and class-bound constraints and recomputes the value.
bool is_feasible(const BsmkpInstance& instance, const BsmkpSolution& solution);
Rational solution_value(const BsmkpInstance& instance,
                        const std::vector<std::vector<std::int64_t>>& counts);

MkpInstance validate_mkp(RawMkp raw);

// Classes sharing (size, profit) are merged by summing their bounds; classes
// come out sorted by (size ascending, profit descending).
BsmkpInstance validate_bsmkp(RawBsmkp raw);

RawBsmkp to_raw(const BsmkpInstance& instance);
RawMkp to_raw(const MkpInstance& instance);

MkpInstance read_mkp(std::istream& in);
void write_mkp(std::ostream& out, const MkpInstance& instance);
MkpInstance read_mkp_file(const std::string& path);
void write_mkp_file(const std::string& path, const MkpInstance& instance);

BsmkpInstance read_bsmkp(std::istream& in);
void write_bsmkp(std::ostream& out, const BsmkpInstance& instance);

}  // namespace mkpb

#endif  // MKPB_INSTANCE_HPP_
