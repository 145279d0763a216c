/*
 * Copyright 2026 The qpdlog Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qpdlog/bignat.hpp"

#include "qpdlog/errors.hpp"

namespace qpdlog {

BigNat parse_bignat(std::string_view text) {
  if (text.empty()) throw InvalidInput("empty integer");
  BigNat v = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw InvalidInput("not a decimal integer: " + std::string(text));
    }
    v = v * 10 + (ch - '0');
  }
  return v;
}

std::string to_string(const BigNat& x) { return x.str(); }

BigNat mod_floor(const BigNat& a, const BigNat& n) {
  BigNat r = a % n;
  if (r < 0) r += n;
  return r;
}

BigNat ipow(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigNat(base), static_cast<unsigned>(exp));
}

Xgcd xgcd(const BigNat& a, const BigNat& b) {
  BigNat r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigNat quo = r0 / r1;
    BigNat tmp = r0 - quo * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - quo * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - quo * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  return {r0, s0, t0};
}

std::optional<BigNat> inv_mod(const BigNat& a, const BigNat& n) {
  Xgcd e = xgcd(mod_floor(a, n), n);
  if (e.g != 1) return std::nullopt;
  return mod_floor(e.s, n);
}

}  // namespace qpdlog
