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

// Shared setups for the module tests. Built once per process.

#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>

#include "qpdlog/setup.hpp"

namespace fixtures {

inline const qpdlog::Setup& kummer(std::uint32_t p, int i, int k, int emax) {
  static std::map<std::tuple<std::uint32_t, int, int, int>, std::unique_ptr<qpdlog::Setup>> cache;
  auto& slot = cache[{p, i, k, emax}];
  if (!slot) {
    slot = std::make_unique<qpdlog::Setup>(qpdlog::make_kummer(qpdlog::FieldTower::build(p, i, k, emax)));
  }
  return *slot;
}

// A general setup over F_{q^k} with the requested deg h1 (or any if negative),
// the first one found from consecutive seeds.
inline const qpdlog::Setup& general(std::uint32_t p, int i, int k, int l, int emax, int h1_degree) {
  static std::map<std::tuple<std::uint32_t, int, int, int, int, int>,
                  std::unique_ptr<qpdlog::Setup>>
      cache;
  auto& slot = cache[{p, i, k, l, emax, h1_degree}];
  if (!slot) {
    auto tower = qpdlog::FieldTower::build(p, i, k, emax);
    for (std::uint64_t seed = 1; seed < 1000; ++seed) {
      qpdlog::Rng rng(seed);
      auto s = qpdlog::search_general(tower, l, rng, 5000);
      if (s && (h1_degree < 0 || s->h1.degree() == h1_degree)) {
        slot = std::make_unique<qpdlog::Setup>(std::move(*s));
        break;
      }
    }
    if (!slot) throw std::runtime_error("fixture: no general setup found");
  }
  return *slot;
}

}  // namespace fixtures
