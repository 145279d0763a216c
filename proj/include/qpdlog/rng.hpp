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
#include <random>
#include <string_view>

#include "qpdlog/bignat.hpp"

namespace qpdlog {

// Named deterministic random stream.
//
// The raw generator is std::mt19937_64, whose output sequence is fixed by the
// standard; bounded sampling is done here (not with std distributions, whose
// algorithms are implementation-defined) so that streams are bit-identical
// across platforms. Child streams depend only on the parent's seed and the
// label, never on how much of the parent has been consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [0, bound); bound > 0.
  BigNat below(const BigNat& bound);

  Rng child(std::uint64_t label) const { return Rng(mix(seed_ ^ mix(label + 0x51ed2705u))); }
  Rng child(std::string_view label) const;
  Rng child(std::string_view label, std::uint64_t index) const {
    return child(label).child(index);
  }

  static std::uint64_t mix(std::uint64_t z) {
    // SplitMix64 finalizer.
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace qpdlog
