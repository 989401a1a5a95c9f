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

#include <gtest/gtest.h>

#include <sstream>

#include "mkpb/generator.hpp"

namespace mkpb {
namespace {

GenSpec pisinger(Correlation corr, std::size_t n, std::size_t m, std::uint64_t seed,
                 std::int64_t range = 1000) {
  GenSpec spec;
  spec.family = Family::kPisinger;
  spec.correlation = corr;
  spec.n = n;
  spec.m = m;
  spec.range = range;
  spec.seed = seed;
  return spec;
}

GenSpec small(Correlation corr, std::size_t n, std::size_t m, double sigma, std::uint64_t seed) {
  GenSpec spec;
  spec.family = Family::kSmall;
  spec.correlation = corr;
  spec.n = n;
  spec.m = m;
  spec.sigma = sigma;
  spec.seed = seed;
  return spec;
}

std::string as_text(const MkpInstance& inst) {
  std::ostringstream os;
  write_mkp(os, inst);
  return os.str();
}

TEST(GenSpec, Validation) {
  EXPECT_NO_THROW(pisinger(Correlation::kSubsetSum, 5, 2, 1).validate());
  EXPECT_THROW(small(Correlation::kSubsetSum, 5, 2, 0.5, 1).validate(), std::invalid_argument);
  EXPECT_THROW(small(Correlation::kWeakly, 5, 2, 0.3, 1).validate(), std::invalid_argument);
  GenSpec no_sigma = small(Correlation::kWeakly, 5, 2, 0.5, 1);
  no_sigma.sigma.reset();
  EXPECT_THROW(no_sigma.validate(), std::invalid_argument);
  GenSpec stray_sigma = pisinger(Correlation::kWeakly, 5, 2, 1);
  stray_sigma.sigma = 0.5;
  EXPECT_THROW(stray_sigma.validate(), std::invalid_argument);
  EXPECT_THROW(pisinger(Correlation::kWeakly, 0, 2, 1).validate(), std::invalid_argument);
}

TEST(GenSpec, FileNames) {
  EXPECT_EQ(pisinger(Correlation::kUncorrelated, 60, 30, 42).file_name(),
            "pisinger_uncorrelated_n60_m30_R1000_s42.mkp");
  EXPECT_EQ(small(Correlation::kWeakly, 20, 10, 0.25, 3).file_name(),
            "small_weakly_n20_m10_R0.25_s3.mkp");
  EXPECT_EQ(parse_correlation("subset_sum"), Correlation::kSubsetSum);
  EXPECT_EQ(parse_family("small"), Family::kSmall);
  EXPECT_THROW(parse_correlation("strong"), std::invalid_argument);
}

TEST(Rng, RangeAndDeterminism) {
  Rng a(7, 1), b(7, 1), c(7, 2);
  bool differs = false;
  for (int k = 0; k < 1000; ++k) {
    const auto x = a.uniform(-3, 3);
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 3);
    EXPECT_EQ(x, b.uniform(-3, 3));
    differs = differs || x != c.uniform(-3, 3);
    const double u = a.unit_open();
    b.unit_open();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_TRUE(differs);
}

TEST(Pisinger, UncorrelatedRangesAndCapacityIdentity) {
  const MkpInstance inst = generate(pisinger(Correlation::kUncorrelated, 60, 30, 42));
  EXPECT_EQ(inst.name(), "pisinger_uncorrelated_n60_m30_R1000_s42");
  for (const auto& it : inst.items()) {
    EXPECT_GE(it.weight, 10);
    EXPECT_LE(it.weight, 1000);
    EXPECT_GE(it.profit, 10);
    EXPECT_LE(it.profit, 1000);
  }
  EXPECT_EQ(inst.total_capacity(), inst.total_weight() / 2);
}

TEST(Pisinger, CorrelationRules) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const MkpInstance strongly = generate(pisinger(Correlation::kStrongly, 40, 4, seed));
    for (const auto& it : strongly.items()) EXPECT_EQ(it.profit, it.weight + 10);
    const MkpInstance subset = generate(pisinger(Correlation::kSubsetSum, 40, 4, seed));
    for (const auto& it : subset.items()) EXPECT_EQ(it.profit, it.weight);
    const MkpInstance weakly = generate(pisinger(Correlation::kWeakly, 40, 4, seed, 100));
    for (const auto& it : weakly.items()) {
      EXPECT_GE(it.profit, 1);
      EXPECT_GE(it.profit, it.weight - 10);
      EXPECT_LE(it.profit, it.weight + 10);
    }
    for (const MkpInstance* inst : {&strongly, &subset, &weakly}) {
      EXPECT_EQ(inst->total_capacity(), inst->total_weight() / 2);
    }
  }
}

TEST(Pisinger, FirstCapacitiesInBand) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const MkpInstance inst = generate(pisinger(Correlation::kUncorrelated, 50, 5, seed));
    const Weight w = inst.total_weight();
    for (std::size_t i = 0; i + 1 < inst.num_knapsacks(); ++i) {
      const Weight c = inst.capacities()[i];
      EXPECT_GE(10 * 5 * c, 4 * w);
      EXPECT_LE(10 * 5 * c, 6 * w);
    }
  }
}

TEST(Pisinger, ManyItemsRespectRanges) {
  // 10^4 items per class.
  for (Correlation corr : {Correlation::kUncorrelated, Correlation::kWeakly,
                           Correlation::kStrongly, Correlation::kSubsetSum}) {
    const MkpInstance inst = generate(pisinger(corr, 10'000, 20, 5));
    for (const auto& it : inst.items()) {
      ASSERT_GE(it.weight, 10);
      ASSERT_LE(it.weight, 1000);
      ASSERT_GE(it.profit, 1);
      if (corr == Correlation::kUncorrelated) {
        ASSERT_GE(it.profit, 10);
        ASSERT_LE(it.profit, 1000);
      }
    }
  }
}

TEST(Small, CorrelationRulesAndCapacities) {
  for (double sigma : {0.25, 0.5, 0.75}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const MkpInstance strongly = generate(small(Correlation::kStrongly, 30, 6, sigma, seed));
      for (const auto& it : strongly.items()) EXPECT_EQ(it.profit, it.weight + 200);
      const MkpInstance weakly = generate(small(Correlation::kWeakly, 30, 6, sigma, seed));
      for (const auto& it : weakly.items()) {
        // round(0.6 w + theta) with theta in [1, 400]
        EXPECT_GE(10 * it.profit, 6 * it.weight + 10 - 5);
        EXPECT_LE(10 * it.profit, 6 * it.weight + 4000 + 5);
      }
      const MkpInstance unc = generate(small(Correlation::kUncorrelated, 30, 6, sigma, seed));
      for (const auto& it : unc.items()) {
        EXPECT_GE(it.profit, 1);
        EXPECT_LE(it.profit, 1000);
        EXPECT_GE(it.weight, 1);
        EXPECT_LE(it.weight, 1000);
      }
      for (const MkpInstance* inst : {&strongly, &weakly, &unc}) {
        const double bound = sigma * static_cast<double>(inst->total_weight());
        EXPECT_LE(static_cast<double>(inst->total_capacity()), bound);
        EXPECT_GE(static_cast<double>(inst->total_capacity()), bound - 6.0);
      }
    }
  }
}

TEST(Generators, Deterministic) {
  const GenSpec a = pisinger(Correlation::kWeakly, 100, 10, 77);
  EXPECT_EQ(as_text(generate(a)), as_text(generate(a)));
  const GenSpec b = small(Correlation::kUncorrelated, 20, 10, 0.5, 77);
  EXPECT_EQ(as_text(generate(b)), as_text(generate(b)));
  GenSpec c = a;
  c.seed = 78;
  EXPECT_NE(as_text(generate(a)), as_text(generate(c)));
}

TEST(Generators, CorrelationDoesNotPerturbWeights) {
  // Separate substreams: the weights depend only on the seed.
  const MkpInstance u = generate(pisinger(Correlation::kUncorrelated, 30, 3, 9));
  const MkpInstance s = generate(pisinger(Correlation::kStrongly, 30, 3, 9));
  for (std::size_t j = 0; j < 30; ++j) EXPECT_EQ(u.items()[j].weight, s.items()[j].weight);
  EXPECT_EQ(u.capacities(), s.capacities());
}

TEST(Generators, DegenerateDrawAfterRetries) {
  // One item of weight <= 1000 spread over 600 knapsacks at sigma = 0.25:
  // some capacity always rounds down to zero.
  GenSpec tiny = small(Correlation::kUncorrelated, 1, 600, 0.25, 1);
  EXPECT_THROW(generate(tiny), DegenerateDraw);
}

}  // namespace
}  // namespace mkpb
