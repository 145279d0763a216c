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
#include <utility>
#include <vector>

#include "qpdlog/field.hpp"

namespace qpdlog {

// An element B of a level K for which X^{q+1} - BX + B splits with distinct
// roots over K, together with the parameter u that produced it.
struct BluherSample {
  LevelId level = 0;
  FieldElt u;
  FieldElt B;
};

// B = (u - u^{q^2})^{q+1} / (u - u^q)^{q^2+1}; u must not lie in F_{q^2}.
// With `check` set the split property is asserted on the result.
BluherSample bluher_from_u(const FieldTower& tower, const FieldElt& u, bool check = true);

// The split test without constructing u; B must be nonzero.
bool is_bluher(const FieldTower& tower, const FieldElt& B);

struct BluherImage {
  LevelId level = 0;
  // (B, number of u mapping to it), B in index order.
  std::vector<std::pair<FieldElt, std::uint64_t>> entries;
  std::uint64_t domain_size = 0;  // |K \ F_{q^2}|
  double estimate = 0;            // q^{kD-3}
};

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 22;

// Image of the map over all of K \ F_{q^2}; throws when |K| exceeds the cap.
BluherImage enumerate_bluher(const FieldTower& tower, LevelId level,
                             std::uint64_t cap = kDefaultEnumerationCap);

// Membership bitmap indexed by Field::index_of, built from the image.
std::vector<bool> bluher_table(const FieldTower& tower, LevelId level,
                               std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace qpdlog
