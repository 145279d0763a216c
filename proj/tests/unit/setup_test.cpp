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

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "qpdlog/errors.hpp"
#include "qpdlog/factor.hpp"
#include "qpdlog/setup.hpp"

using namespace qpdlog;

namespace {

// Degree-4 irreducibility over a small field by trial division with every
// monic polynomial of degree 1 and 2.
bool quartic_irreducible_bruteforce(const PolyRing& R, const DensePoly& f) {
  const Field& K = R.field();
  const auto n = static_cast<std::uint64_t>(K.order());
  for (std::uint64_t a = 0; a < n; ++a) {
    if (R.divides(R.make({K.from_index(a), K.one()}), f)) return false;
    for (std::uint64_t b = 0; b < n; ++b) {
      if (R.divides(R.make({K.from_index(b), K.from_index(a), K.one()}), f)) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Setup, MinLiftExponent) {
  EXPECT_EQ(min_lift_exponent(2), 4);   // 16 > 8
  EXPECT_EQ(min_lift_exponent(3), 4);   // 16 > 12
  EXPECT_EQ(min_lift_exponent(4), 5);   // 32 > 16
  EXPECT_EQ(min_lift_exponent(6), 5);   // 32 > 24
  EXPECT_EQ(default_emax(2), 3);
}

TEST(Setup, KummerQ3K4PicksLeastNonSquare) {
  const qpdlog::Setup& s = fixtures::kummer(3, 1, 4, 1);
  EXPECT_TRUE(validate_setup(s).empty());
  EXPECT_EQ(s.flavor, Flavor::kKummer);
  EXPECT_EQ(s.l, 2);
  EXPECT_EQ(s.N, BigNat(6560));
  const Field& K = s.base();
  const PolyRing R(K);
  const FieldElt a = s.h0.c[1];
  EXPECT_EQ(s.h1, R.one());
  // X^2 - a is irreducible iff a is a non-square: a^40 = -1.
  EXPECT_EQ(K.pow(a, std::uint64_t{40}), K.from_int(-1));
  for (std::uint64_t idx = 1; idx < K.index_of(a); ++idx) {
    EXPECT_EQ(K.pow(K.from_index(idx), std::uint64_t{40}), K.one());
  }
  // X (X^{q-1} - a) = X^q - aX.
  EXPECT_EQ(R.mul(R.x(), s.I), s.frobenius_relation());
}

TEST(Setup, KummerQ5K2MatchesExhaustiveScan) {
  const qpdlog::Setup& s = fixtures::kummer(5, 1, 2, 0);
  EXPECT_TRUE(validate_setup(s).empty());
  const Field& K = s.base();
  const PolyRing R(K);
  EXPECT_EQ(s.l, 4);
  std::uint64_t first = 0;
  for (std::uint64_t idx = 1; idx < 25; ++idx) {
    DensePoly I = R.sub(R.monomial(K.one(), 4), R.constant(K.from_index(idx)));
    if (quartic_irreducible_bruteforce(R, I)) {
      first = idx;
      break;
    }
  }
  ASSERT_NE(first, 0u);
  EXPECT_EQ(K.index_of(s.h0.c[1]), first);
}

TEST(Setup, SearchQ2K4L3) {
  auto tower = build_setup_tower(2, 1, 4, 3);
  Rng rng(7);
  SearchStats st;
  auto s = search_general(tower, 3, rng, 10000, &st);
  ASSERT_TRUE(s.has_value());
  EXPECT_TRUE(validate_setup(*s).empty());
  EXPECT_EQ(s->I.degree(), 3);
  EXPECT_EQ(s->N, BigNat(4095));
  EXPECT_EQ(st.hits, 1u);
  EXPECT_LE(st.coprime, st.trials);
  const PolyRing R = s->base_ring();
  auto [quo, rem] = R.divrem(s->frobenius_relation(), s->I);
  EXPECT_TRUE(rem.is_zero());
  EXPECT_LE(quo.degree(), 2 + 2 - 3 + 1);
}

TEST(Setup, SearchRejectsOutOfRangeL) {
  auto tower = build_setup_tower(2, 1, 4, 3);
  Rng rng(1);
  EXPECT_THROW(search_general(tower, 5, rng, 10), InvalidInput);
  EXPECT_THROW(search_general(tower, 0, rng, 10), InvalidInput);
}

TEST(Setup, EveryFoundSetupValidates) {
  auto tower = build_setup_tower(2, 1, 4, 3);
  for (int l = 1; l <= 4; ++l) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Rng rng(seed);
      auto s = search_general(tower, l, rng, 20000);
      if (!s) continue;
      EXPECT_TRUE(validate_setup(*s).empty()) << "l=" << l << " seed=" << seed;
      EXPECT_EQ(s->I.degree(), l);
      // l = q + 2 forces deg h1 = 2.
      if (l == 4) EXPECT_EQ(s->h1.degree(), 2);
    }
  }
}

TEST(Setup, ValidateReportsTampering) {
  const qpdlog::Setup& good = fixtures::general(2, 1, 4, 3, 1, 2);
  const PolyRing R = good.base_ring();
  qpdlog::Setup bad = good;
  bad.I = R.add(bad.I, R.one());
  auto v = validate_setup(bad);
  EXPECT_FALSE(v.empty());
  bool divisibility = false;
  for (const auto& msg : v) divisibility |= msg.find("divide") != std::string::npos;
  EXPECT_TRUE(divisibility);

  qpdlog::Setup shared = good;
  shared.h0 = R.x();
  shared.h1 = R.x();
  v = validate_setup(shared);
  bool coprime = false;
  for (const auto& msg : v) coprime |= msg.find("coprime") != std::string::npos;
  EXPECT_TRUE(coprime);

  qpdlog::Setup wrong_n = good;
  wrong_n.N += 1;
  EXPECT_FALSE(validate_setup(wrong_n).empty());
}

TEST(Setup, JsonRoundTripAndTamper) {
  const qpdlog::Setup& s = fixtures::general(2, 1, 4, 3, 1, -1);
  const auto j = setup_to_json(s);
  const qpdlog::Setup back = setup_from_json(j);
  EXPECT_EQ(back.h0, s.h0);
  EXPECT_EQ(back.h1, s.h1);
  EXPECT_EQ(back.I, s.I);
  EXPECT_EQ(back.N, s.N);
  EXPECT_EQ(setup_to_json(back).dump(), j.dump());

  auto bad = j;
  bad["defining_polys"]["4"] = std::vector<int>{1, 1, 1, 1, 1};
  EXPECT_THROW(setup_from_json(bad), ValidationError);
  auto bad_n = j;
  bad_n["N"] = "4096";
  EXPECT_THROW(setup_from_json(bad_n), ValidationError);
}

TEST(FactorBase, GeneralSizeWithQuadraticH1) {
  const qpdlog::Setup& s = fixtures::general(2, 1, 4, 3, 1, 2);
  FactorBase fb(s);
  EXPECT_EQ(fb.size(), 256u);
  ASSERT_TRUE(fb.h1_index().has_value());
  EXPECT_EQ(fb.element(*fb.h1_index()), s.h1);
  std::set<std::vector<std::uint64_t>> seen;
  const Field& K = s.base();
  for (std::uint64_t j = 0; j < fb.size(); ++j) {
    const DensePoly f = fb.element(j);
    ASSERT_EQ(fb.index_of(f), j);
    std::vector<std::uint64_t> key;
    for (const auto& c : f.c) key.push_back(K.index_of(c));
    EXPECT_TRUE(seen.insert(key).second);
  }
  EXPECT_THROW(fb.element(fb.size()), InvalidInput);
}

TEST(FactorBase, KummerSize) {
  const qpdlog::Setup& s = fixtures::kummer(3, 1, 4, 1);
  FactorBase fb(s);
  EXPECT_EQ(fb.size(), 6560u);
  EXPECT_FALSE(fb.h1_index().has_value());
  EXPECT_EQ(fb.index_of(s.h1), fb.constant_index(s.base().one()));
  for (std::uint64_t j = 0; j < fb.size(); j += 37) EXPECT_EQ(fb.index_of(fb.element(j)), j);
  EXPECT_FALSE(fb.index_of(s.I).has_value());
}

TEST(FactorBase, EvalProduct) {
  const qpdlog::Setup& s = fixtures::kummer(3, 1, 4, 1);
  FactorBase fb(s);
  const PolyRing R = s.base_ring();
  EXPECT_EQ(eval_product(s, fb, {}), R.one());
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const std::uint64_t i = rng.below(fb.size()), j = rng.below(fb.size());
    const BigNat e(rng.below(1000));
    DensePoly want = target_mul(s, target_pow(s, fb.element(i), e), fb.element(j));
    EXPECT_EQ(eval_product(s, fb, {{i, e}, {j, BigNat(1)}}), want);
    // Negative exponents are read mod N.
    EXPECT_TRUE(target_is_one(s, eval_product(s, fb, {{i, e}, {i, -e}})));
  }
}

TEST(Target, ReduceIsMultiplicative) {
  const qpdlog::Setup& s = fixtures::general(2, 1, 4, 3, 1, -1);
  const PolyRing R = s.base_ring();
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    DensePoly f = R.random(8, rng), g = R.random(8, rng);
    EXPECT_EQ(target_reduce(s, R.mul(f, g)),
              target_mul(s, target_reduce(s, f), target_reduce(s, g)));
  }
  for (int t = 0; t < 20; ++t) {
    DensePoly z = target_random_nonzero(s, rng);
    EXPECT_TRUE(target_is_one(s, target_mul(s, z, target_inv(s, z))));
    EXPECT_TRUE(target_is_one(s, target_pow(s, z, s.N)));
  }
}

TEST(Setup, KummerHasNoTrapsWarnings) {
  const qpdlog::Setup& s = fixtures::kummer(3, 1, 4, 1);
  EXPECT_FALSE(guardrail_warnings(s).empty());
}
