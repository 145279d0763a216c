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

#include "qpdlog/rng.hpp"

#include "qpdlog/errors.hpp"

namespace qpdlog {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("Rng::below: zero bound");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

BigNat Rng::below(const BigNat& bound) {
  if (bound <= 0) throw InvalidInput("Rng::below: nonpositive bound");
  if (fits_u64(bound)) return BigNat(below(static_cast<std::uint64_t>(bound)));
  const unsigned bits = msb_or_zero(bound) + 1;
  const unsigned words = (bits + 63) / 64;
  for (;;) {
    BigNat r = 0;
    for (unsigned w = 0; w < words; ++w) r = (r << 64) | BigNat(next());
    r &= (BigNat(1) << bits) - 1;
    if (r < bound) return r;
  }
}

Rng Rng::child(std::string_view label) const {
  // FNV-1a over the label, then the integer derivation.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return child(h);
}

}  // namespace qpdlog
