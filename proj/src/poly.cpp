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

#include "qpdlog/poly.hpp"

#include <algorithm>

#include "qpdlog/errors.hpp"

namespace qpdlog {

void PolyRing::normalize(DensePoly& f) const {
  while (!f.c.empty() && K_->is_zero(f.c.back())) f.c.pop_back();
  f.level = K_->id();
}

void PolyRing::check(const DensePoly& f) const {
  if (f.level != K_->id()) throw ArithmeticError("polynomial level mismatch");
  if (!f.c.empty() && K_->is_zero(f.c.back())) throw ArithmeticError("polynomial not normalized");
}

DensePoly PolyRing::zero() const { return DensePoly{K_->id(), {}}; }

DensePoly PolyRing::one() const { return constant(K_->one()); }

DensePoly PolyRing::x() const { return monomial(K_->one(), 1); }

DensePoly PolyRing::constant(const FieldElt& c) const {
  DensePoly f{K_->id(), {c}};
  normalize(f);
  return f;
}

DensePoly PolyRing::monomial(const FieldElt& c, int n) const {
  if (K_->is_zero(c)) return zero();
  DensePoly f{K_->id(), std::vector<FieldElt>(n + 1, K_->zero())};
  f.c[n] = c;
  return f;
}

DensePoly PolyRing::make(std::vector<FieldElt> coeffs) const {
  for (const auto& a : coeffs) K_->check(a);
  DensePoly f{K_->id(), std::move(coeffs)};
  normalize(f);
  return f;
}

DensePoly PolyRing::linear(const FieldElt& r) const {
  return DensePoly{K_->id(), {K_->neg(r), K_->one()}};
}

DensePoly PolyRing::from_roots(std::span<const FieldElt> roots) const {
  DensePoly f = one();
  for (const auto& r : roots) f = mul(f, linear(r));
  return f;
}

DensePoly PolyRing::add(const DensePoly& f, const DensePoly& g) const {
  const DensePoly& big = f.c.size() >= g.c.size() ? f : g;
  const DensePoly& small = f.c.size() >= g.c.size() ? g : f;
  DensePoly h = big;
  for (std::size_t j = 0; j < small.c.size(); ++j) h.c[j] = K_->add(h.c[j], small.c[j]);
  normalize(h);
  return h;
}

DensePoly PolyRing::sub(const DensePoly& f, const DensePoly& g) const {
  DensePoly h = f;
  if (h.c.size() < g.c.size()) h.c.resize(g.c.size(), K_->zero());
  for (std::size_t j = 0; j < g.c.size(); ++j) h.c[j] = K_->sub(h.c[j], g.c[j]);
  normalize(h);
  return h;
}

DensePoly PolyRing::neg(const DensePoly& f) const {
  DensePoly h = f;
  for (auto& a : h.c) a = K_->neg(a);
  return h;
}

DensePoly PolyRing::mul(const DensePoly& f, const DensePoly& g) const {
  if (f.is_zero() || g.is_zero()) return zero();
  const std::size_t nf = f.c.size(), ng = g.c.size();
  if (nf == 1 || ng == 1) {
    const DensePoly& p = nf == 1 ? g : f;
    const FieldElt& c = nf == 1 ? f.c[0] : g.c[0];
    return scale(p, c);
  }
  const int A = K_->acc_size();
  const std::size_t n = nf + ng - 1;
  std::vector<std::uint64_t> acc(n * A, 0);
  const std::uint64_t room = K_->acc_headroom();
  std::uint64_t used = 0;
  for (std::size_t i = 0; i < nf; ++i) {
    if (used == room) {
      for (std::size_t t = 0; t < n; ++t) K_->fold_acc(acc.data() + t * A);
      used = 0;
    }
    const std::uint32_t* a = f.c[i].c.data();
    for (std::size_t j = 0; j < ng; ++j) {
      K_->mul_acc(acc.data() + (i + j) * A, a, g.c[j].c.data());
    }
    ++used;
  }
  DensePoly h{K_->id(), std::vector<FieldElt>(n)};
  for (std::size_t t = 0; t < n; ++t) h.c[t] = K_->reduce(acc.data() + t * A);
  normalize(h);
  return h;
}

DensePoly PolyRing::scale(const DensePoly& f, const FieldElt& c) const {
  if (K_->is_zero(c)) return zero();
  if (K_->is_one(c)) return f;
  DensePoly h = f;
  for (auto& a : h.c) a = K_->mul(a, c);
  return h;
}

DensePoly PolyRing::shift(const DensePoly& f, int n) const {
  if (f.is_zero() || n == 0) return f;
  DensePoly h{K_->id(), std::vector<FieldElt>(n, K_->zero())};
  h.c.insert(h.c.end(), f.c.begin(), f.c.end());
  return h;
}

DensePoly PolyRing::pow(const DensePoly& f, std::uint64_t e) const {
  DensePoly r = one();
  DensePoly b = f;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = sqr(b);
  }
  return r;
}

std::pair<DensePoly, DensePoly> PolyRing::divrem(const DensePoly& f, const DensePoly& g) const {
  if (g.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (f.degree() < g.degree()) return {zero(), f};
  const int dg = g.degree();
  const int dq = f.degree() - dg;
  const bool monic_g = K_->is_one(g.lead());
  const FieldElt lead_inv = monic_g ? K_->one() : K_->inv(g.lead());
  DensePoly r = f;
  DensePoly q{K_->id(), std::vector<FieldElt>(dq + 1, K_->zero())};
  for (int i = dq; i >= 0; --i) {
    FieldElt coef = monic_g ? r.c[i + dg] : K_->mul(r.c[i + dg], lead_inv);
    if (K_->is_zero(coef)) continue;
    for (int j = 0; j < dg; ++j) {
      if (!K_->is_zero(g.c[j])) r.c[i + j] = K_->sub(r.c[i + j], K_->mul(coef, g.c[j]));
    }
    r.c[i + dg] = K_->zero();
    q.c[i] = std::move(coef);
  }
  r.c.resize(dg);
  normalize(r);
  normalize(q);
  return {std::move(q), std::move(r)};
}

DensePoly PolyRing::rem(const DensePoly& f, const DensePoly& g) const {
  if (g.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (f.degree() < g.degree()) return f;
  return divrem(f, g).second;
}

DensePoly PolyRing::quo(const DensePoly& f, const DensePoly& g) const { return divrem(f, g).first; }

DensePoly PolyRing::exact_div(const DensePoly& f, const DensePoly& g) const {
  auto [q, r] = divrem(f, g);
  if (!r.is_zero()) throw ArithmeticError("polynomial division is not exact");
  return q;
}

bool PolyRing::divides(const DensePoly& g, const DensePoly& f) const {
  return rem(f, g).is_zero();
}

DensePoly PolyRing::monic(const DensePoly& f) const {
  if (f.is_zero()) return f;
  if (K_->is_one(f.lead())) return f;
  return scale(f, K_->inv(f.lead()));
}

bool PolyRing::is_monic(const DensePoly& f) const { return !f.is_zero() && K_->is_one(f.lead()); }

FieldElt PolyRing::eval(const DensePoly& f, const FieldElt& x) const {
  FieldElt r = K_->zero();
  for (auto it = f.c.rbegin(); it != f.c.rend(); ++it) r = K_->add(K_->mul(r, x), *it);
  return r;
}

DensePoly PolyRing::derivative(const DensePoly& f) const {
  if (f.degree() < 1) return zero();
  DensePoly h{K_->id(), std::vector<FieldElt>(f.c.size() - 1)};
  for (std::size_t j = 1; j < f.c.size(); ++j) {
    h.c[j - 1] = K_->scale(f.c[j], static_cast<std::uint32_t>(j % K_->p()));
  }
  normalize(h);
  return h;
}

DensePoly PolyRing::gcd(const DensePoly& f, const DensePoly& g) const {
  DensePoly a = f, b = g;
  while (!b.is_zero()) {
    DensePoly r = rem(a, monic(b));
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

PolyRing::Xgcd PolyRing::xgcd(const DensePoly& f, const DensePoly& g) const {
  DensePoly r0 = f, r1 = g;
  DensePoly s0 = one(), s1 = zero();
  DensePoly t0 = zero(), t1 = one();
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    DensePoly s2 = sub(s0, mul(q, s1));
    DensePoly t2 = sub(t0, mul(q, t1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const FieldElt li = K_->inv(r0.lead());
  return {scale(r0, li), scale(s0, li), scale(t0, li)};
}

DensePoly PolyRing::mulmod(const DensePoly& f, const DensePoly& g, const DensePoly& m) const {
  return rem(mul(f, g), m);
}

DensePoly PolyRing::powmod(const DensePoly& base, const BigNat& e, const DensePoly& m) const {
  if (m.is_zero()) throw ArithmeticError("zero modulus");
  if (e < 0) throw ArithmeticError("negative exponent");
  DensePoly b = rem(base, m);
  DensePoly r = rem(one(), m);
  if (e == 0) return r;
  const unsigned top = msb_or_zero(e);
  for (int bit = static_cast<int>(top); bit >= 0; --bit) {
    r = mulmod(r, r, m);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) r = mulmod(r, b, m);
  }
  return r;
}

DensePoly PolyRing::powmod(const DensePoly& base, std::uint64_t e, const DensePoly& m) const {
  return powmod(base, BigNat(e), m);
}

DensePoly PolyRing::frob_coeffs(const DensePoly& f, std::uint64_t j) const {
  DensePoly h = f;
  for (auto& a : h.c) a = K_->frob(a, j);
  return h;
}

DensePoly PolyRing::frob_pow_coeffs(const DensePoly& f, std::uint64_t s) const {
  DensePoly h = f;
  for (auto& a : h.c) a = K_->frob_pow(a, s);
  return h;
}

DensePoly PolyRing::random(int max_degree, Rng& rng) const {
  DensePoly f{K_->id(), {}};
  for (int j = 0; j <= max_degree; ++j) f.c.push_back(K_->random(rng));
  normalize(f);
  return f;
}

DensePoly PolyRing::random_monic(int degree, Rng& rng) const {
  DensePoly f{K_->id(), {}};
  for (int j = 0; j < degree; ++j) f.c.push_back(K_->random(rng));
  f.c.push_back(K_->one());
  return f;
}

int PolyRing::compare(const DensePoly& f, const DensePoly& g) const {
  if (f.degree() != g.degree()) return f.degree() < g.degree() ? -1 : 1;
  for (int j = f.degree(); j >= 0; --j) {
    const int c = K_->compare(f.c[j], g.c[j]);
    if (c) return c;
  }
  return 0;
}

// ---------------------------------------------------------------------------

QuotientFrobenius::QuotientFrobenius(const PolyRing& ring, const DensePoly& modulus,
                                     std::uint64_t s)
    : ring_(&ring), mod_(ring.monic(modulus)), s_(s) {
  if (mod_.degree() < 1) throw ArithmeticError("quotient modulus must have positive degree");
  const Field& K = ring.field();
  const int n = mod_.degree();
  x_img_ = ring.powmod(ring.x(), ipow(K.p(), s), mod_);
  table_.reserve(n);
  table_.push_back(ring.one());
  for (int j = 1; j < n; ++j) table_.push_back(ring.mulmod(table_.back(), x_img_, mod_));
}

DensePoly QuotientFrobenius::apply(const DensePoly& g) const {
  const Field& K = ring_->field();
  const int n = mod_.degree();
  if (g.degree() >= n) throw ArithmeticError("quotient frobenius input not reduced");
  const int A = K.acc_size();
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(n) * A, 0);
  const std::uint64_t room = K.acc_headroom();
  std::uint64_t used = 0;
  for (int j = 0; j <= g.degree(); ++j) {
    if (K.is_zero(g.c[j])) continue;
    if (used == room) {
      for (int t = 0; t < n; ++t) K.fold_acc(acc.data() + static_cast<std::size_t>(t) * A);
      used = 0;
    }
    const FieldElt a = K.frob_pow(g.c[j], s_);
    const DensePoly& col = table_[j];
    for (int t = 0; t <= col.degree(); ++t) {
      K.mul_acc(acc.data() + static_cast<std::size_t>(t) * A, a.c.data(), col.c[t].c.data());
    }
    ++used;
  }
  DensePoly h{K.id(), std::vector<FieldElt>(n)};
  for (int t = 0; t < n; ++t) h.c[t] = K.reduce(acc.data() + static_cast<std::size_t>(t) * A);
  ring_->normalize(h);
  return h;
}

DensePoly QuotientFrobenius::apply(const DensePoly& g, std::uint64_t times) const {
  DensePoly h = g;
  for (std::uint64_t t = 0; t < times; ++t) h = apply(h);
  return h;
}

FrobeniusStep field_order_step(const Field& K) {
  const int m = K.degree(), i = K.q_exponent();
  if (m % i == 0) return {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(m / i)};
  return {1, static_cast<std::uint64_t>(m)};
}

}  // namespace qpdlog
