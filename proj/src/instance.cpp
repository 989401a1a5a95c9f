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

#include "mkpb/instance.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

namespace mkpb {

std::string Violation::message() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kEmptyInstance:
      os << "empty instance: no " << field;
      break;
    case Kind::kNonPositiveValue:
      os << "non-positive value in " << field << "[" << index << "]";
      break;
    case Kind::kDivisibilityViolation:
      os << "sizes " << size_a << " and " << size_b << " break the divisibility chain";
      break;
  }
  return os.str();
}

namespace {

std::string join_messages(const std::vector<Violation>& violations) {
  std::string out = "invalid instance:";
  for (const auto& v : violations) out += " " + v.message() + ";";
  return out;
}

void check_capacities(const std::vector<Weight>& capacities,
                      std::vector<Violation>& out) {
  if (capacities.empty()) {
    out.push_back({Violation::Kind::kEmptyInstance, "capacities"});
  }
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    if (capacities[i] < 1) {
      out.push_back({Violation::Kind::kNonPositiveValue, "capacity", i});
    }
  }
}

}  // namespace

InstanceError::InstanceError(std::vector<Violation> violations)
    : std::runtime_error(join_messages(violations)),
      violations_(std::move(violations)) {}

InstanceError::InstanceError(const std::string& parse_message)
    : std::runtime_error(parse_message) {}

Weight MkpInstance::total_capacity() const {
  return std::accumulate(capacities_.begin(), capacities_.end(), Weight{0});
}

Weight MkpInstance::total_weight() const {
  Weight total = 0;
  for (const auto& item : items_) total += item.weight;
  return total;
}

Weight MkpInstance::max_capacity() const {
  return *std::max_element(capacities_.begin(), capacities_.end());
}

bool MkpInstance::degenerate() const {
  const Weight cmax = max_capacity();
  return std::none_of(items_.begin(), items_.end(),
                      [cmax](const Item& it) { return it.weight <= cmax; });
}

MkpInstance MkpInstance::with_capacities(std::vector<Weight> capacities) const {
  return validate_mkp({items_, std::move(capacities), name_});
}

MkpInstance validate_mkp(RawMkp raw) {
  std::vector<Violation> violations;
  if (raw.items.empty()) {
    violations.push_back({Violation::Kind::kEmptyInstance, "items"});
  }
  for (std::size_t j = 0; j < raw.items.size(); ++j) {
    if (raw.items[j].profit < 1) {
      violations.push_back({Violation::Kind::kNonPositiveValue, "profit", j});
    }
    if (raw.items[j].weight < 1) {
      violations.push_back({Violation::Kind::kNonPositiveValue, "weight", j});
    }
  }
  check_capacities(raw.capacities, violations);
  if (!violations.empty()) throw InstanceError(std::move(violations));

  MkpInstance inst;
  inst.items_ = std::move(raw.items);
  inst.capacities_ = std::move(raw.capacities);
  inst.name_ = std::move(raw.name);
  return inst;
}

RawMkp to_raw(const MkpInstance& instance) {
  return {instance.items(), instance.capacities(), instance.name()};
}

bool is_feasible(const MkpInstance& instance, const MkpSolution& solution) {
  if (solution.assignment.size() != instance.num_items()) return false;
  std::vector<Weight> load(instance.num_knapsacks(), 0);
  Profit value = 0;
  for (std::size_t j = 0; j < solution.assignment.size(); ++j) {
    const int k = solution.assignment[j];
    if (k == kUnassigned) continue;
    if (k < 0 || static_cast<std::size_t>(k) >= instance.num_knapsacks()) return false;
    load[k] += instance.items()[j].weight;
    value += instance.items()[j].profit;
  }
  for (std::size_t i = 0; i < load.size(); ++i) {
    if (load[i] > instance.capacities()[i]) return false;
  }
  return value == solution.value;
}

BsmkpInstance validate_bsmkp(RawBsmkp raw) {
  std::vector<Violation> violations;
  if (raw.classes.empty()) {
    violations.push_back({Violation::Kind::kEmptyInstance, "classes"});
  }
  for (std::size_t t = 0; t < raw.classes.size(); ++t) {
    const auto& c = raw.classes[t];
    if (c.size < 1) violations.push_back({Violation::Kind::kNonPositiveValue, "size", t});
    if (c.bound < 1) violations.push_back({Violation::Kind::kNonPositiveValue, "bound", t});
    if (sgn(c.profit) < 0) {
      violations.push_back({Violation::Kind::kNonPositiveValue, "profit", t});
    }
  }
  check_capacities(raw.capacities, violations);
  if (!violations.empty()) throw InstanceError(std::move(violations));

  std::vector<Weight> sizes;
  for (const auto& c : raw.classes) sizes.push_back(c.size);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    if (sizes[l + 1] % sizes[l] != 0) {
      violations.push_back({Violation::Kind::kDivisibilityViolation, "size", l,
                            sizes[l], sizes[l + 1]});
    }
  }
  if (!violations.empty()) throw InstanceError(std::move(violations));

  // Merge by (size, profit); order by size ascending, profit descending.
  auto key_less = [](const BsmkpClass& a, const BsmkpClass& b) {
    if (a.size != b.size) return a.size < b.size;
    return a.profit > b.profit;
  };
  std::stable_sort(raw.classes.begin(), raw.classes.end(), key_less);
  std::vector<BsmkpClass> merged;
  for (auto& c : raw.classes) {
    if (!merged.empty() && merged.back().size == c.size && merged.back().profit == c.profit) {
      merged.back().bound += c.bound;
    } else {
      merged.push_back(std::move(c));
    }
  }

  BsmkpInstance inst;
  inst.classes_ = std::move(merged);
  inst.capacities_ = std::move(raw.capacities);
  inst.sizes_ = std::move(sizes);
  inst.name_ = std::move(raw.name);
  return inst;
}

RawBsmkp to_raw(const BsmkpInstance& instance) {
  return {instance.classes(), instance.capacities(), instance.name()};
}

Rational solution_value(const BsmkpInstance& instance,
                        const std::vector<std::vector<std::int64_t>>& counts) {
  Rational value = 0;
  for (const auto& row : counts) {
    for (std::size_t t = 0; t < row.size() && t < instance.num_classes(); ++t) {
      if (row[t] != 0) value += instance.classes()[t].profit * row[t];
    }
  }
  return value;
}

bool is_feasible(const BsmkpInstance& instance, const BsmkpSolution& solution) {
  if (solution.counts.size() != instance.num_knapsacks()) return false;
  std::vector<std::int64_t> used(instance.num_classes(), 0);
  for (std::size_t i = 0; i < solution.counts.size(); ++i) {
    const auto& row = solution.counts[i];
    if (row.size() != instance.num_classes()) return false;
    Weight load = 0;
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (row[t] < 0) return false;
      load += row[t] * instance.classes()[t].size;
      used[t] += row[t];
    }
    if (load > instance.capacities()[i]) return false;
  }
  for (std::size_t t = 0; t < used.size(); ++t) {
    if (used[t] > instance.classes()[t].bound) return false;
  }
  return solution_value(instance, solution.counts) == solution.value;
}

namespace {

// Splits the stream into data tokens, skipping '#' comment lines and picking
// up an optional "# name:" header.
struct TokenStream {
  std::vector<std::string> tokens;
  std::string name;
  std::size_t pos = 0;

  explicit TokenStream(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (line[first] == '#') {
        const std::string tag = "# name:";
        if (line.compare(first, tag.size(), tag) == 0) {
          name = line.substr(first + tag.size());
          const auto b = name.find_first_not_of(' ');
          name = b == std::string::npos ? "" : name.substr(b);
        }
        continue;
      }
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
    }
  }

  std::int64_t next_int(const char* what) {
    if (pos >= tokens.size()) {
      throw InstanceError(std::string("unexpected end of input reading ") + what);
    }
    const std::string& tok = tokens[pos++];
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) {
      throw InstanceError(std::string("malformed integer '") + tok + "' reading " + what);
    }
    return v;
  }

  void expect_end() const {
    if (pos != tokens.size()) throw InstanceError("trailing data after instance");
  }
};

void write_name(std::ostream& out, const std::string& name) {
  if (!name.empty()) out << "# name: " << name << '\n';
}

}  // namespace

MkpInstance read_mkp(std::istream& in) {
  TokenStream ts(in);
  const std::int64_t n = ts.next_int("n");
  const std::int64_t m = ts.next_int("m");
  if (n < 0 || m < 0) throw InstanceError("negative n or m");
  RawMkp raw;
  raw.name = ts.name;
  raw.items.resize(static_cast<std::size_t>(n));
  for (auto& item : raw.items) {
    item.profit = ts.next_int("profit");
    item.weight = ts.next_int("weight");
  }
  raw.capacities.resize(static_cast<std::size_t>(m));
  for (auto& c : raw.capacities) c = ts.next_int("capacity");
  ts.expect_end();
  return validate_mkp(std::move(raw));
}

void write_mkp(std::ostream& out, const MkpInstance& instance) {
  write_name(out, instance.name());
  out << instance.num_items() << ' ' << instance.num_knapsacks() << '\n';
  for (const auto& item : instance.items()) out << item.profit << ' ' << item.weight << '\n';
  for (Weight c : instance.capacities()) out << c << '\n';
}

MkpInstance read_mkp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_mkp(in);
}

void write_mkp_file(const std::string& path, const MkpInstance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_mkp(out, instance);
  if (!out) throw std::runtime_error("write failed: " + path);
}

BsmkpInstance read_bsmkp(std::istream& in) {
  TokenStream ts(in);
  const std::int64_t num_classes = ts.next_int("L");
  const std::int64_t m = ts.next_int("m");
  if (num_classes < 0 || m < 0) throw InstanceError("negative L or m");
  RawBsmkp raw;
  raw.name = ts.name;
  for (std::int64_t t = 0; t < num_classes; ++t) {
    BsmkpClass c;
    c.size = ts.next_int("size");
    const std::int64_t num = ts.next_int("profit numerator");
    const std::int64_t den = ts.next_int("profit denominator");
    if (den < 1) throw InstanceError("profit denominator must be positive");
    c.profit = make_rational(num, den);
    c.bound = ts.next_int("bound");
    raw.classes.push_back(std::move(c));
  }
  raw.capacities.resize(static_cast<std::size_t>(m));
  for (auto& c : raw.capacities) c = ts.next_int("capacity");
  ts.expect_end();
  return validate_bsmkp(std::move(raw));
}

void write_bsmkp(std::ostream& out, const BsmkpInstance& instance) {
  write_name(out, instance.name());
  out << instance.num_classes() << ' ' << instance.num_knapsacks() << '\n';
  for (const auto& c : instance.classes()) {
    out << c.size << ' ' << c.profit.get_num().get_str() << ' '
        << c.profit.get_den().get_str() << ' ' << c.bound << '\n';
  }
  for (Weight c : instance.capacities()) out << c << '\n';
}

}  // namespace mkpb
