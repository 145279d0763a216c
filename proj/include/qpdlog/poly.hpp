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
#include <span>
#include <utility>
#include <vector>

#include "qpdlog/bignat.hpp"
#include "qpdlog/field.hpp"
#include "qpdlog/rng.hpp"

namespace qpdlog {

// Univariate polynomial over one tower level, little-endian, no trailing
// zero coefficient. The zero polynomial has no coefficients.
struct DensePoly {
  LevelId level = 0;
  std::vector<FieldElt> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const FieldElt& lead() const { return c.back(); }

  friend bool operator==(const DensePoly&, const DensePoly&) = default;
};

// Polynomial arithmetic over a fixed field. Cheap to construct; holds only a
// reference to the field, which must outlive it.
class PolyRing {
 public:
  explicit PolyRing(const Field& K) : K_(&K) {}

  const Field& field() const { return *K_; }
  LevelId level() const { return K_->id(); }

  DensePoly zero() const;
  DensePoly one() const;
  DensePoly x() const;
  DensePoly constant(const FieldElt& c) const;
  // c X^n.
  DensePoly monomial(const FieldElt& c, int n) const;
  // Takes ownership of the coefficients and strips trailing zeros.
  DensePoly make(std::vector<FieldElt> coeffs) const;
  // X - r.
  DensePoly linear(const FieldElt& r) const;
  DensePoly from_roots(std::span<const FieldElt> roots) const;

  void normalize(DensePoly& f) const;
  void check(const DensePoly& f) const;

  DensePoly add(const DensePoly& f, const DensePoly& g) const;
  DensePoly sub(const DensePoly& f, const DensePoly& g) const;
  DensePoly neg(const DensePoly& f) const;
  DensePoly mul(const DensePoly& f, const DensePoly& g) const;
  DensePoly sqr(const DensePoly& f) const { return mul(f, f); }
  DensePoly scale(const DensePoly& f, const FieldElt& c) const;
  // f * X^n.
  DensePoly shift(const DensePoly& f, int n) const;
  DensePoly pow(const DensePoly& f, std::uint64_t e) const;

  std::pair<DensePoly, DensePoly> divrem(const DensePoly& f, const DensePoly& g) const;
  DensePoly rem(const DensePoly& f, const DensePoly& g) const;
  DensePoly quo(const DensePoly& f, const DensePoly& g) const;
  // Quotient when g divides f exactly; throws otherwise.
  DensePoly exact_div(const DensePoly& f, const DensePoly& g) const;
  bool divides(const DensePoly& g, const DensePoly& f) const;

  DensePoly monic(const DensePoly& f) const;
  bool is_monic(const DensePoly& f) const;
  FieldElt eval(const DensePoly& f, const FieldElt& x) const;
  DensePoly derivative(const DensePoly& f) const;

  // Monic gcd; gcd(0, 0) = 0.
  DensePoly gcd(const DensePoly& f, const DensePoly& g) const;
  struct Xgcd {
    DensePoly g;
    DensePoly s;
    DensePoly t;
  };
  // s*f + t*g = g with g monic (or zero when f = g = 0).
  Xgcd xgcd(const DensePoly& f, const DensePoly& g) const;

  DensePoly mulmod(const DensePoly& f, const DensePoly& g, const DensePoly& m) const;
  DensePoly powmod(const DensePoly& base, const BigNat& e, const DensePoly& m) const;
  DensePoly powmod(const DensePoly& base, std::uint64_t e, const DensePoly& m) const;

  // Applies a -> a^{q^j} to every coefficient.
  DensePoly frob_coeffs(const DensePoly& f, std::uint64_t j = 1) const;
  // Applies a -> a^{p^s} to every coefficient.
  DensePoly frob_pow_coeffs(const DensePoly& f, std::uint64_t s) const;

  DensePoly random(int max_degree, Rng& rng) const;
  DensePoly random_monic(int degree, Rng& rng) const;

  // Degree first, then coefficients high-degree-first.
  int compare(const DensePoly& f, const DensePoly& g) const;

 private:
  const Field* K_;
};

// The map g -> g^{p^s} on K[X]/(m), where K = F_p[T]/(f) and m is monic of
// degree n >= 1. Stores X^{j p^s} mod m for j < n, so each application costs
// about n^2 field multiplications.
class QuotientFrobenius {
 public:
  QuotientFrobenius(const PolyRing& ring, const DensePoly& modulus, std::uint64_t s);

  // Image of g (which must be reduced mod the modulus).
  DensePoly apply(const DensePoly& g) const;
  DensePoly apply(const DensePoly& g, std::uint64_t times) const;
  const DensePoly& modulus() const { return mod_; }
  // X^{p^s} mod modulus.
  const DensePoly& x_image() const { return x_img_; }

 private:
  const PolyRing* ring_;
  DensePoly mod_;
  std::uint64_t s_;
  std::vector<DensePoly> table_;
  DensePoly x_img_;
};

// Exponent step for the |K|-power map: |K| = (p^s)^{steps}, preferring
// q-power steps when F_q is a subfield.
struct FrobeniusStep {
  std::uint64_t s;
  std::uint64_t steps;
};
FrobeniusStep field_order_step(const Field& K);

}  // namespace qpdlog
