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

#ifndef MKPB_RATIONAL_HPP_
#define MKPB_RATIONAL_HPP_

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace mkpb {

// Exact rational in canonical (reduced, positive denominator) form.
using Rational = mpq_class;

static_assert(sizeof(long) == sizeof(std::int64_t), "LP64 platform required");

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

// floor(r) as a 64-bit integer. Caller guarantees range.
std::int64_t floor_to_int64(const Rational& r);

// Decimal rendering with `places` digits after the point, rounding half away
// from zero. places == 0 renders an integer.
std::string to_decimal(const Rational& r, int places);

// "num/den" or "num" when integral.
std::string to_fraction_string(const Rational& r);

// Parses "num", "num/den" or a finite decimal such as "-12.375".
Rational parse_rational(const std::string& text);

}  // namespace mkpb

#endif  // MKPB_RATIONAL_HPP_
