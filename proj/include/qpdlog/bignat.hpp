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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace qpdlog {

// Arbitrary precision integer. Used for nonnegative quantities such as
// N = q^{kl} - 1 and exponents mod N; signed intermediates are allowed.
using BigNat = boost::multiprecision::cpp_int;

BigNat parse_bignat(std::string_view text);
std::string to_string(const BigNat& x);

// Least nonnegative residue of a mod n (n > 0).
BigNat mod_floor(const BigNat& a, const BigNat& n);

BigNat ipow(std::uint64_t base, std::uint64_t exp);

struct Xgcd {
  BigNat g;
  BigNat s;
  BigNat t;
};

// g = gcd(a, b) >= 0 with s*a + t*b = g, computed by the classical
// extended Euclidean recurrence on the given representatives.
Xgcd xgcd(const BigNat& a, const BigNat& b);

std::optional<BigNat> inv_mod(const BigNat& a, const BigNat& n);

inline unsigned msb_or_zero(const BigNat& x) {
  return x == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(x));
}

inline bool fits_u64(const BigNat& x) {
  return x >= 0 && msb_or_zero(x) < 64;
}

}  // namespace qpdlog
