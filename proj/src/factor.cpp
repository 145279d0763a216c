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

#include "qpdlog/factor.hpp"

#include <algorithm>

#include "qpdlog/errors.hpp"

namespace qpdlog {

namespace {

// X^{|K|} mod f through the quotient Frobenius map.
DensePoly x_to_field_order(const PolyRing& ring, const DensePoly& f) {
  const FrobeniusStep st = field_order_step(ring.field());
  QuotientFrobenius fr(ring, f, st.s);
  return fr.apply(fr.x_image(), st.steps - 1);
}

DensePoly pth_root(const PolyRing& ring, const DensePoly& f) {
  const Field& K = ring.field();
  const std::uint32_t p = K.p();
  std::vector<FieldElt> c;
  for (std::size_t j = 0; j < f.c.size(); j += p) {
    c.push_back(K.frob_pow(f.c[j], static_cast<std::uint64_t>(K.degree() - 1)));
  }
  return ring.make(std::move(c));
}

void sort_factors(const PolyRing& ring, std::vector<FactorPower>& v) {
  std::sort(v.begin(), v.end(), [&](const FactorPower& a, const FactorPower& b) {
    const int c = ring.compare(a.poly, b.poly);
    return c != 0 ? c < 0 : a.multiplicity < b.multiplicity;
  });
}

void sort_elements(const Field& K, std::vector<FieldElt>& v) {
  std::sort(v.begin(), v.end(),
            [&](const FieldElt& a, const FieldElt& b) { return K.compare(a, b) < 0; });
}

// h^{1 + P + ... + P^{n-1}} mod the Frobenius modulus, P being the map's power.
DensePoly frobenius_norm(const PolyRing& ring, const QuotientFrobenius& fr, const DensePoly& h,
                         std::uint64_t n) {
  const DensePoly& m = fr.modulus();
  DensePoly acc = h;
  std::uint64_t j = 1;
  int top = 63;
  while (top > 0 && !((n >> top) & 1)) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    acc = ring.mulmod(acc, fr.apply(acc, j), m);
    j *= 2;
    if ((n >> bit) & 1) {
      acc = ring.mulmod(h, fr.apply(acc), m);
      j += 1;
    }
  }
  return acc;
}

DensePoly split_once(const PolyRing& ring, const DensePoly& g, int r, Rng& rng) {
  const Field& K = ring.field();
  const int n = g.degree();
  if (K.p() == 2) {
    QuotientFrobenius sq(ring, g, 1);
    const std::uint64_t total = static_cast<std::uint64_t>(r) * K.degree();
    for (;;) {
      DensePoly h = ring.random(n - 1, rng);
      if (h.degree() < 1) continue;
      DensePoly t = h, acc = h;
      for (std::uint64_t j = 1; j < total; ++j) {
        t = sq.apply(t);
        acc = ring.add(acc, t);
      }
      DensePoly d = ring.gcd(acc, g);
      if (d.degree() > 0 && d.degree() < n) return d;
    }
  }
  const FrobeniusStep st = field_order_step(K);
  QuotientFrobenius fr(ring, g, st.s);
  const BigNat half = (ipow(K.p(), st.s) - 1) / 2;
  for (;;) {
    DensePoly h = ring.random(n - 1, rng);
    if (h.degree() < 1) continue;
    DensePoly y = frobenius_norm(ring, fr, h, static_cast<std::uint64_t>(r) * st.steps);
    y = ring.powmod(y, half, g);
    DensePoly d = ring.gcd(ring.sub(y, ring.one()), g);
    if (d.degree() > 0 && d.degree() < n) return d;
  }
}

}  // namespace

DensePoly split_equal_degree_once(const PolyRing& ring, const DensePoly& f, int r, Rng& rng) {
  const DensePoly g = ring.monic(f);
  if (g.degree() <= r || g.degree() % r != 0) {
    throw ArithmeticError("equal degree split: nothing to split");
  }
  return ring.monic(split_once(ring, g, r, rng));
}

std::vector<FactorPower> squarefree_decomposition(const PolyRing& ring, const DensePoly& f) {
  if (f.is_zero()) throw ArithmeticError("squarefree decomposition of zero");
  std::vector<FactorPower> out;
  const DensePoly m = ring.monic(f);
  if (m.degree() < 1) return out;
  DensePoly c = ring.gcd(m, ring.derivative(m));
  DensePoly w = ring.exact_div(m, c);
  int i = 1;
  while (w.degree() > 0) {
    DensePoly y = ring.gcd(w, c);
    DensePoly z = ring.exact_div(w, y);
    if (z.degree() > 0) out.push_back({std::move(z), i});
    ++i;
    c = ring.exact_div(c, y);
    w = std::move(y);
  }
  if (c.degree() > 0) {
    const int p = static_cast<int>(ring.field().p());
    for (auto& [g, j] : squarefree_decomposition(ring, pth_root(ring, c))) {
      out.push_back({std::move(g), j * p});
    }
  }
  return out;
}

std::vector<FactorPower> distinct_degree(const PolyRing& ring, const DensePoly& f) {
  std::vector<FactorPower> out;
  DensePoly g = ring.monic(f);
  if (g.degree() < 1) return out;
  const FrobeniusStep st = field_order_step(ring.field());
  QuotientFrobenius fr(ring, g, st.s);
  const DensePoly x = ring.rem(ring.x(), g);
  DensePoly h = x;
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    // fr is tied to the original modulus; reduce afterwards.
    h = fr.apply(h, st.steps);
    DensePoly hd = ring.rem(h, g);
    DensePoly gd = ring.gcd(ring.sub(hd, ring.rem(ring.x(), g)), g);
    if (gd.degree() > 0) {
      out.push_back({gd, d});
      g = ring.exact_div(g, gd);
    }
  }
  if (g.degree() > 0) out.push_back({g, g.degree()});
  return out;
}

std::vector<DensePoly> equal_degree(const PolyRing& ring, const DensePoly& f, int r, Rng& rng) {
  DensePoly g = ring.monic(f);
  if (g.degree() < 1) return {};
  if (g.degree() % r != 0) throw ArithmeticError("equal degree split: degree mismatch");
  if (g.degree() == r) return {g};
  DensePoly d = split_once(ring, g, r, rng);
  std::vector<DensePoly> a = equal_degree(ring, d, r, rng);
  std::vector<DensePoly> b = equal_degree(ring, ring.exact_div(g, d), r, rng);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Factorization factor(const PolyRing& ring, const DensePoly& f, Rng& rng) {
  if (f.is_zero()) throw ArithmeticError("factorization of the zero polynomial");
  Factorization out{f.lead(), {}};
  for (const auto& [sq, mult] : squarefree_decomposition(ring, f)) {
    for (const auto& [part, d] : distinct_degree(ring, sq)) {
      for (auto& irr : equal_degree(ring, part, d, rng)) {
        out.factors.push_back({std::move(irr), mult});
      }
    }
  }
  sort_factors(ring, out.factors);
  return out;
}

bool is_irreducible(const PolyRing& ring, const DensePoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const DensePoly g = ring.monic(f);
  const int n = g.degree();
  if (ring.field().is_zero(g.c[0])) return false;
  std::vector<int> checks;
  for (int r = 2, rest = n; rest > 1; ++r) {
    if (rest % r == 0) {
      checks.push_back(n / r);
      while (rest % r == 0) rest /= r;
    }
  }
  const FrobeniusStep st = field_order_step(ring.field());
  QuotientFrobenius fr(ring, g, st.s);
  const DensePoly x = ring.x();
  DensePoly h = x;
  for (int j = 1; j <= n; ++j) {
    h = fr.apply(h, st.steps);
    if (j == n) break;
    const bool early = j <= 2 && 2 * j <= n;
    if (early || std::find(checks.begin(), checks.end(), j) != checks.end()) {
      if (ring.gcd(ring.sub(h, x), g).degree() > 0) return false;
    }
  }
  return h == x;
}

bool splits_distinct(const PolyRing& ring, const DensePoly& f) {
  if (f.is_zero()) throw ArithmeticError("split test of the zero polynomial");
  if (f.degree() < 1) return true;
  const DensePoly g = ring.monic(f);
  return x_to_field_order(ring, g) == ring.rem(ring.x(), g);
}

bool splits_completely(const PolyRing& ring, const DensePoly& f) {
  if (f.is_zero()) throw ArithmeticError("split test of the zero polynomial");
  for (const auto& [g, mult] : squarefree_decomposition(ring, f)) {
    if (!splits_distinct(ring, g)) return false;
  }
  return true;
}

std::vector<FieldElt> distinct_roots(const PolyRing& ring, const DensePoly& f, Rng& rng) {
  if (f.is_zero()) throw ArithmeticError("roots of the zero polynomial");
  std::vector<FieldElt> out;
  if (f.degree() < 1) return out;
  const Field& K = ring.field();
  const DensePoly m = ring.monic(f);
  const DensePoly g = ring.gcd(ring.sub(x_to_field_order(ring, m), ring.x()), m);
  for (const auto& lin : equal_degree(ring, g, 1, rng)) out.push_back(K.neg(lin.c[0]));
  sort_elements(K, out);
  return out;
}

std::vector<FieldElt> roots(const PolyRing& ring, const DensePoly& f, Rng& rng) {
  std::vector<FieldElt> out;
  DensePoly m = ring.monic(f);
  for (const auto& r : distinct_roots(ring, f, rng)) {
    const DensePoly lin = ring.linear(r);
    for (;;) {
      auto [q, rem] = ring.divrem(m, lin);
      if (!rem.is_zero()) break;
      out.push_back(r);
      m = std::move(q);
    }
  }
  sort_elements(ring.field(), out);
  return out;
}

DensePoly random_irreducible(const PolyRing& ring, int degree, Rng& rng, int max_attempts) {
  if (degree < 1) throw InvalidInput("irreducible polynomials have positive degree");
  for (int t = 0; t < max_attempts; ++t) {
    DensePoly f = ring.random_monic(degree, rng);
    if (is_irreducible(ring, f)) return f;
  }
  throw BudgetExhausted("no irreducible polynomial found within the attempt cap");
}

}  // namespace qpdlog
