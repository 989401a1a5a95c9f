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

#include "mkpb/rational.hpp"

#include <stdexcept>

namespace mkpb {

std::int64_t floor_to_int64(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("rational floor out of range");
  return static_cast<std::int64_t>(q.get_si());
}

std::string to_decimal(const Rational& r, int places) {
  mpz_class scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const bool negative = sgn(r) < 0;
  Rational mag = negative ? Rational(-r) : r;
  // round(|r| * 10^places) with halves going up, i.e. away from zero overall.
  mpz_class scaled_num = mag.get_num() * scale * 2 + mag.get_den();
  mpz_class scaled_den = mag.get_den() * 2;
  mpz_class rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());

  mpz_class int_part;
  mpz_class frac_part;
  mpz_fdiv_qr(int_part.get_mpz_t(), frac_part.get_mpz_t(), rounded.get_mpz_t(),
              scale.get_mpz_t());
  std::string out = (negative && rounded != 0) ? "-" : "";
  out += int_part.get_str();
  if (places > 0) {
    std::string frac = frac_part.get_str();
    out += '.';
    out += std::string(static_cast<std::size_t>(places) - frac.size(), '0');
    out += frac;
  }
  return out;
}

std::string to_fraction_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rational r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t frac_len = text.size() - dot - 1;
  mpz_class num;
  if (digits.empty() || digits == "-" || num.set_str(digits, 10) != 0) {
    throw std::invalid_argument("bad decimal: " + text);
  }
  mpz_class den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace mkpb
