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

// Seeded random MKP instances in the style of Pisinger's generator (used for
// the FK and large benchmark families) and of the Kataoka-Yamada SMALL set.
// Output is a pure function of the GenSpec, identical on every platform.

#ifndef MKPB_GENERATOR_HPP_
#define MKPB_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "mkpb/instance.hpp"

namespace mkpb {

enum class Family { kPisinger, kSmall };
enum class Correlation { kUncorrelated, kWeakly, kStrongly, kSubsetSum };

std::string to_string(Family family);
std::string to_string(Correlation correlation);
// Accept the names produced by to_string; throw std::invalid_argument.
Family parse_family(const std::string& text);
Correlation parse_correlation(const std::string& text);

struct GenSpec {
  Family family = Family::kPisinger;
  std::size_t n = 0;
  std::size_t m = 0;
  Correlation correlation = Correlation::kUncorrelated;
  std::int64_t range = 1000;     // R, Pisinger family only
  std::optional<double> sigma;   // 0.25, 0.5 or 0.75; SMALL family only
  std::uint64_t seed = 0;

  void validate() const;
  // "<family>_<corr>_n<N>_m<M>_R<R|sigma>_s<seed>" (no extension).
  std::string stem() const;
  std::string file_name() const { return stem() + ".mkp"; }
};

// No valid capacity vector after the retry limit.
class DegenerateDraw : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Portable random source: std::mt19937_64 (whose output sequence is fixed by
// the standard) with our own range reduction, since the standard
// distributions differ between library implementations.
class Rng {
 public:
  // Independent stream `stream` derived from `seed` by SplitMix64 mixing.
  Rng(std::uint64_t seed, std::uint64_t stream);

  // Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  // Uniform double in the open interval (0, 1).
  double unit_open();

 private:
  std::mt19937_64 engine_;
};

MkpInstance gen_pisinger(const GenSpec& spec);
MkpInstance gen_small(const GenSpec& spec);
MkpInstance generate(const GenSpec& spec);

}  // namespace mkpb

#endif  // MKPB_GENERATOR_HPP_
