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

#include "qpdlog/bluher.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_map>

#include "qpdlog/errors.hpp"
#include "qpdlog/factor.hpp"
#include "qpdlog/poly.hpp"

namespace qpdlog {

namespace {

// Value of the map, or nullopt when u is in F_{q^2}.
std::optional<FieldElt> bluher_value(const Field& K, const FieldElt& u) {
  const FieldElt uq = K.frob(u, 1);
  const FieldElt uq2 = K.frob(uq, 1);
  if (uq2 == u) return std::nullopt;
  const FieldElt num = K.sub(u, uq2);  // (u - u^{q^2})^{q+1}
  const FieldElt den = K.sub(u, uq);   // (u - u^q)^{q^2+1}
  const FieldElt n = K.mul(K.frob(num, 1), num);
  const FieldElt d = K.mul(K.frob(den, 2), den);
  return K.div(n, d);
}

}  // namespace

BluherSample bluher_from_u(const FieldTower& tower, const FieldElt& u, bool check) {
  const Field& K = tower.field(u.level);
  K.check(u);
  auto B = bluher_value(K, u);
  if (!B) throw InvalidInput("u lies in F_{q^2}");
  if (check && !is_bluher(tower, *B)) {
    throw Error("internal: Bluher image failed the split test");
  }
  return {u.level, u, std::move(*B)};
}

bool is_bluher(const FieldTower& tower, const FieldElt& B) {
  const Field& K = tower.field(B.level);
  K.check(B);
  if (K.is_zero(B)) throw InvalidInput("B must be nonzero");
  const PolyRing R(K);
  const int q = static_cast<int>(tower.q());
  // X^{q+1} - BX + B
  DensePoly f = R.monomial(K.one(), q + 1);
  f.c[1] = K.neg(B);
  f.c[0] = B;
  return splits_distinct(R, f);
}

BluherImage enumerate_bluher(const FieldTower& tower, LevelId level, std::uint64_t cap) {
  const Field& K = tower.field(level);
  if (!K.enumerable() || K.order() > cap) {
    throw InvalidInput("level too large for exhaustive Bluher enumeration");
  }
  const std::uint64_t size = static_cast<std::uint64_t>(K.order());
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  BluherImage img;
  img.level = level;
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    auto B = bluher_value(K, K.from_index(idx));
    if (!B) continue;
    ++img.domain_size;
    ++counts[K.index_of(*B)];
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [b, c] : sorted) img.entries.emplace_back(K.from_index(b), c);
  const int kd = K.q_degree();
  img.estimate = std::pow(static_cast<double>(tower.q()), kd - 3);
  return img;
}

std::vector<bool> bluher_table(const FieldTower& tower, LevelId level, std::uint64_t cap) {
  const Field& K = tower.field(level);
  const BluherImage img = enumerate_bluher(tower, level, cap);
  std::vector<bool> table(static_cast<std::size_t>(K.order()), false);
  for (const auto& [B, c] : img.entries) table[K.index_of(B)] = true;
  return table;
}

}  // namespace qpdlog
