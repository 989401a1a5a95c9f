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

#include "mkpb/generator.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace mkpb {
namespace {

constexpr int kMaxCapacityRetries = 100;

// Substream ids. Capacity retries use kCapacityStream + attempt.
constexpr std::uint64_t kWeightStream = 1;
constexpr std::uint64_t kProfitStream = 2;
constexpr std::uint64_t kCapacityStream = 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string to_string(Family family) {
  return family == Family::kPisinger ? "pisinger" : "small";
}

std::string to_string(Correlation correlation) {
  switch (correlation) {
    case Correlation::kUncorrelated: return "uncorrelated";
    case Correlation::kWeakly: return "weakly";
    case Correlation::kStrongly: return "strongly";
    case Correlation::kSubsetSum: return "subset_sum";
  }
  return "?";
}

Family parse_family(const std::string& text) {
  if (text == "pisinger") return Family::kPisinger;
  if (text == "small") return Family::kSmall;
  throw std::invalid_argument("unknown family: " + text);
}

Correlation parse_correlation(const std::string& text) {
  if (text == "uncorrelated") return Correlation::kUncorrelated;
  if (text == "weakly") return Correlation::kWeakly;
  if (text == "strongly") return Correlation::kStrongly;
  if (text == "subset_sum") return Correlation::kSubsetSum;
  throw std::invalid_argument("unknown correlation: " + text);
}

void GenSpec::validate() const {
  if (n < 1 || m < 1) throw std::invalid_argument("n and m must be positive");
  if (family == Family::kSmall) {
    if (correlation == Correlation::kSubsetSum) {
      throw std::invalid_argument("the SMALL family has no subset-sum class");
    }
    if (!sigma || (*sigma != 0.25 && *sigma != 0.5 && *sigma != 0.75)) {
      throw std::invalid_argument("SMALL instances need sigma in {0.25, 0.5, 0.75}");
    }
  } else {
    if (sigma) throw std::invalid_argument("sigma applies to the SMALL family only");
    if (range < 10) throw std::invalid_argument("range R must be at least 10");
  }
}

std::string GenSpec::stem() const {
  std::ostringstream os;
  os << to_string(family) << '_' << to_string(correlation) << "_n" << n << "_m" << m << "_R";
  if (family == Family::kSmall) {
    os << *sigma;
  } else {
    os << range;
  }
  os << "_s" << seed;
  return os.str();
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream * 0xd1342543de82ef95ULL))) {}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  // Rejection sampling onto [0, span).
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return lo + static_cast<std::int64_t>(x % span);
}

double Rng::unit_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

MkpInstance gen_pisinger(const GenSpec& spec) {
  spec.validate();
  if (spec.family != Family::kPisinger) throw std::invalid_argument("not a Pisinger spec");
  const std::int64_t R = spec.range;
  Rng weights_rng(spec.seed, kWeightStream);
  Rng profits_rng(spec.seed, kProfitStream);

  RawMkp raw;
  raw.name = spec.stem();
  raw.items.resize(spec.n);
  Weight total = 0;
  for (auto& item : raw.items) {
    item.weight = weights_rng.uniform(10, R);
    total += item.weight;
  }
  for (auto& item : raw.items) {
    switch (spec.correlation) {
      case Correlation::kUncorrelated:
        item.profit = profits_rng.uniform(10, R);
        break;
      case Correlation::kWeakly:
        do {
          item.profit = profits_rng.uniform(item.weight - R / 10, item.weight + R / 10);
        } while (item.profit < 1);
        break;
      case Correlation::kStrongly:
        item.profit = item.weight + 10;
        break;
      case Correlation::kSubsetSum:
        item.profit = item.weight;
        break;
    }
  }

  // First m-1 capacities in [0.4 W/m, 0.6 W/m]; the last one brings the
  // total to floor(W/2).
  const auto m = static_cast<std::int64_t>(spec.m);
  const std::int64_t lo = (4 * total + 10 * m - 1) / (10 * m);
  const std::int64_t hi = std::max(lo, (6 * total) / (10 * m));
  for (int attempt = 0; attempt < kMaxCapacityRetries; ++attempt) {
    Rng cap_rng(spec.seed, kCapacityStream + static_cast<std::uint64_t>(attempt));
    raw.capacities.assign(spec.m, 0);
    Weight assigned = 0;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < spec.m; ++i) {
      raw.capacities[i] = cap_rng.uniform(lo, hi);
      assigned += raw.capacities[i];
      ok = ok && raw.capacities[i] >= 1;
    }
    raw.capacities.back() = total / 2 - assigned;
    if (ok && raw.capacities.back() >= 1) return validate_mkp(std::move(raw));
  }
  throw DegenerateDraw("no positive capacity vector after " +
                       std::to_string(kMaxCapacityRetries) + " draws for " + spec.stem());
}

MkpInstance gen_small(const GenSpec& spec) {
  spec.validate();
  if (spec.family != Family::kSmall) throw std::invalid_argument("not a SMALL spec");
  Rng weights_rng(spec.seed, kWeightStream);
  Rng profits_rng(spec.seed, kProfitStream);

  RawMkp raw;
  raw.name = spec.stem();
  raw.items.resize(spec.n);
  Weight total = 0;
  for (auto& item : raw.items) {
    item.weight = weights_rng.uniform(1, 1000);
    total += item.weight;
  }
  for (auto& item : raw.items) {
    switch (spec.correlation) {
      case Correlation::kUncorrelated:
        item.profit = profits_rng.uniform(1, 1000);
        break;
      case Correlation::kWeakly: {
        // round(0.6 w + theta); 0.6 w never ends in .5, so this is exact.
        const std::int64_t theta = profits_rng.uniform(1, 400);
        item.profit = (6 * item.weight + 10 * theta + 5) / 10;
        break;
      }
      case Correlation::kStrongly:
        item.profit = item.weight + 200;
        break;
      case Correlation::kSubsetSum:
        throw std::invalid_argument("the SMALL family has no subset-sum class");
    }
  }

  const double sigma = *spec.sigma;
  for (int attempt = 0; attempt < kMaxCapacityRetries; ++attempt) {
    Rng cap_rng(spec.seed, kCapacityStream + static_cast<std::uint64_t>(attempt));
    std::vector<double> lambda(spec.m);
    double sum = 0.0;
    for (double& l : lambda) {
      l = cap_rng.unit_open();
      sum += l;
    }
    raw.capacities.assign(spec.m, 0);
    bool ok = true;
    for (std::size_t i = 0; i < spec.m; ++i) {
      raw.capacities[i] =
          static_cast<Weight>(std::floor(sigma * (lambda[i] / sum) * static_cast<double>(total)));
      ok = ok && raw.capacities[i] >= 1;
    }
    if (ok) return validate_mkp(std::move(raw));
  }
  throw DegenerateDraw("no positive capacity vector after " +
                       std::to_string(kMaxCapacityRetries) + " draws for " + spec.stem());
}

MkpInstance generate(const GenSpec& spec) {
  return spec.family == Family::kPisinger ? gen_pisinger(spec) : gen_small(spec);
}

}  // namespace mkpb
