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

// Naive reference arithmetic used as an independent oracle in tests. Kept
// deliberately simple: schoolbook F_p[X] with int64 vectors, and brute-force
// enumeration over tiny fields.

#include <cstdint>
#include <ostream>
#include <vector>

#include "qpdlog/field.hpp"
#include "qpdlog/rng.hpp"

namespace qpdlog {

inline void PrintTo(const FieldElt& x, std::ostream* os) {
  *os << "L" << int(x.level) << "[";
  for (std::size_t j = 0; j < x.c.size(); ++j) *os << (j ? "," : "") << x.c[j];
  *os << "]";
}

}  // namespace qpdlog

namespace oracle {

using Vec = std::vector<std::int64_t>;

inline void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::int64_t inv_p(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, b = ((a % p) + p) % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline Vec mul(const Vec& a, const Vec& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

inline Vec sub(Vec a, const Vec& b, std::int64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t j = 0; j < b.size(); ++j) a[j] = ((a[j] - b[j]) % p + p) % p;
  trim(a);
  return a;
}

inline Vec mod(Vec a, const Vec& m, std::int64_t p) {
  trim(a);
  const std::int64_t li = inv_p(m.back(), p);
  while (a.size() >= m.size()) {
    const std::size_t s = a.size() - m.size();
    const std::int64_t c = a.back() * li % p;
    for (std::size_t j = 0; j < m.size(); ++j) a[s + j] = ((a[s + j] - c * m[j]) % p + p) % p;
    trim(a);
  }
  return a;
}

inline Vec gcd(Vec a, Vec b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Vec r = mod(a, b, p);
    a = b;
    b = r;
  }
  if (!a.empty()) {
    const std::int64_t li = inv_p(a.back(), p);
    for (auto& v : a) v = v * li % p;
  }
  return a;
}

// x^(p^n) mod m computed by n repeated p-th powers (each by repeated
// multiplication; fine for the tiny inputs used here).
inline Vec frob_x(const Vec& m, std::int64_t p, int n) {
  Vec x = mod(Vec{0, 1}, m, p);
  for (int t = 0; t < n; ++t) {
    Vec r{1};
    for (std::int64_t e = 0; e < p; ++e) r = mod(mul(r, x, p), m, p);
    x = r;
  }
  return x;
}

// Rabin test over F_p done naively.
inline bool irreducible(const Vec& f, std::int64_t p) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 1) return false;
  const Vec x = mod(Vec{0, 1}, f, p);
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    if (gcd(sub(frob_x(f, p, d), x, p), f, p).size() > 1) return false;
  }
  return frob_x(f, p, n) == x;
}

// Field element multiplication by schoolbook product and reduction.
inline Vec field_mul(const qpdlog::Field& K, const Vec& a, const Vec& b) {
  Vec m(K.modulus().begin(), K.modulus().end());
  Vec r = mod(mul(a, b, K.p()), m, K.p());
  r.resize(K.degree(), 0);
  return r;
}

inline Vec to_vec(const qpdlog::FieldElt& x) { return Vec(x.c.begin(), x.c.end()); }

}  // namespace oracle
