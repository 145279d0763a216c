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

#include "qpdlog/norm.hpp"

#include "qpdlog/errors.hpp"

namespace qpdlog {

DensePoly embed_poly(const FieldTower& tower, const DensePoly& f, LevelId to) {
  DensePoly g{to, {}};
  g.c.reserve(f.c.size());
  for (const auto& a : f.c) g.c.push_back(tower.embed(a, to));
  return g;
}

std::optional<DensePoly> restrict_poly(const FieldTower& tower, const DensePoly& f, LevelId to) {
  DensePoly g{to, {}};
  g.c.reserve(f.c.size());
  for (const auto& a : f.c) {
    auto r = tower.restrict_to(a, to);
    if (!r) return std::nullopt;
    g.c.push_back(std::move(*r));
  }
  return g;
}

DensePoly norm_to_base(const FieldTower& tower, const DensePoly& f, LevelId target) {
  if (f.is_zero()) throw ArithmeticError("norm of the zero polynomial");
  const Field& big = tower.field(f.level);
  const Field& small = tower.field(target);
  if (target > f.level || big.degree() % small.degree() != 0) {
    throw InvalidInput("norm target is not a subfield");
  }
  const PolyRing ring(big);
  const int r = big.degree() / small.degree();
  const auto s = static_cast<std::uint64_t>(small.degree());
  DensePoly acc = f, conj = f;
  for (int j = 1; j < r; ++j) {
    conj = ring.frob_pow_coeffs(conj, s);
    acc = ring.mul(acc, conj);
  }
  auto res = restrict_poly(tower, acc, target);
  if (!res) throw Error("norm does not descend to the target level");
  return *res;
}

DensePoly min_poly(const FieldTower& tower, const FieldElt& r, LevelId over) {
  const Field& big = tower.field(r.level);
  const Field& small = tower.field(over);
  if (over > r.level) throw InvalidInput("min_poly: base level above element level");
  const PolyRing ring(big);
  const auto s = static_cast<std::uint64_t>(small.degree());
  DensePoly acc = ring.linear(r);
  FieldElt c = big.frob_pow(r, s);
  while (!(c == r)) {
    acc = ring.mul(acc, ring.linear(c));
    c = big.frob_pow(c, s);
  }
  auto res = restrict_poly(tower, acc, over);
  if (!res) throw Error("minimal polynomial does not descend");
  return *res;
}

int coefficient_field_degree(const FieldTower& tower, const DensePoly& f, int base_degree) {
  const Field& K = tower.field(f.level);
  const int m = K.degree();
  for (int d = base_degree; d <= m; d += base_degree) {
    if (m % d != 0) continue;
    bool ok = true;
    for (const auto& a : f.c) {
      if (!K.in_subfield(a, d)) {
        ok = false;
        break;
      }
    }
    if (ok) return d;
  }
  return m;
}

}  // namespace qpdlog
