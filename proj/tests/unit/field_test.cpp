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

#include "oracle.hpp"
#include "qpdlog/errors.hpp"
#include "qpdlog/field.hpp"
#include "qpdlog/poly.hpp"

using namespace qpdlog;

namespace {

FieldElt elt(const Field& K, std::vector<std::uint32_t> c) { return K.from_coeffs(c); }

}  // namespace

TEST(Tower, PrimeFieldOnly) {
  auto t = FieldTower::build(2, 1, 1, 0);
  EXPECT_EQ(t->num_levels(), 1u);
  EXPECT_EQ(t->field(0).modulus(), (std::vector<std::uint32_t>{0, 1}));
}

TEST(Tower, F4Modulus) {
  auto t = FieldTower::build(2, 2, 1, 0);
  const Field& K = t->field(t->q_level());
  EXPECT_EQ(K.modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
  // T * (T+1) = 1
  EXPECT_TRUE(K.is_one(K.mul(elt(K, {0, 1}), elt(K, {1, 1}))));
  // With q = 4 the q-power map is the identity on F_4.
  EXPECT_EQ(K.frob(elt(K, {0, 1}), 1), elt(K, {0, 1}));
}

TEST(Tower, F4OverF2Frobenius) {
  // q = 2, k = 2: the base level is F_4 and the q-power map sends T to T+1.
  auto t = FieldTower::build(2, 1, 2, 0);
  const Field& K = t->at(1);
  EXPECT_EQ(K.frob(elt(K, {0, 1}), 1), elt(K, {1, 1}));
}

TEST(Tower, F9Square) {
  auto t = FieldTower::build(3, 2, 1, 0);
  const Field& K = t->field(t->q_level());
  EXPECT_EQ(K.modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(K.sqr(elt(K, {1, 1})), elt(K, {0, 2}));
}

TEST(Tower, RejectsCompositeAndOverBudget) {
  EXPECT_THROW(FieldTower::build(4, 1, 1, 0), InvalidInput);
  EXPECT_THROW(FieldTower::build(3, 1, 4, 6), InvalidInput);  // degree 256 > 128
  TowerOptions big{256};
  EXPECT_NO_THROW(FieldTower::build(2, 1, 4, 3, big));
}

TEST(Tower, LeastIrreducibleMatchesBruteForce) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int m = 1; m <= (p == 2 ? 7 : 4); ++m) {
      auto f = least_irreducible(p, m);
      oracle::Vec fv(f.begin(), f.end());
      ASSERT_TRUE(oracle::irreducible(fv, p)) << p << " " << m;
      // Every monic candidate with a smaller high-first value is reducible.
      std::uint64_t value = 0;
      for (int j = m - 1; j >= 0; --j) value = value * p + f[j];
      for (std::uint64_t v = 0; v < value; ++v) {
        oracle::Vec c(m + 1, 0);
        std::uint64_t t = v;
        for (int j = 0; j < m; ++j) {
          c[j] = static_cast<std::int64_t>(t % p);
          t /= p;
        }
        c[m] = 1;
        EXPECT_FALSE(oracle::irreducible(c, p)) << "smaller irreducible for p=" << p;
      }
    }
  }
}

TEST(Tower, Ladder3_4_2) {
  auto t = FieldTower::build(3, 1, 4, 2);
  ASSERT_EQ(t->num_levels(), 4u);
  const int degs[] = {1, 4, 8, 16};
  for (LevelId id = 0; id < 4; ++id) {
    const Field& K = t->field(id);
    EXPECT_EQ(K.degree(), degs[id]);
    oracle::Vec fv(K.modulus().begin(), K.modulus().end());
    EXPECT_TRUE(oracle::irreducible(fv, 3));
  }
  EXPECT_EQ(t->level(1), 1);
  EXPECT_EQ(t->level(4), 3);
  // Each embedding root is a root of the smaller modulus.
  for (LevelId id = 0; id + 1 < 4; ++id) {
    const Field& big = t->field(id + 1);
    const FieldElt& r = t->embedding_root(id);
    PolyRing ring(big);
    std::vector<FieldElt> c;
    for (auto v : t->field(id).modulus()) c.push_back(big.from_int(v));
    EXPECT_TRUE(big.is_zero(ring.eval(ring.make(c), r)));
  }
}

TEST(Tower, EmbeddingsAreHomomorphismsAndRestrict) {
  auto t = FieldTower::build(2, 2, 3, 2);
  Rng rng(7);
  for (LevelId a = 0; a < t->num_levels(); ++a) {
    for (LevelId b = a; b < t->num_levels(); ++b) {
      const Field& A = t->field(a);
      const Field& B = t->field(b);
      for (int it = 0; it < 20; ++it) {
        FieldElt x = A.random(rng), y = A.random(rng);
        EXPECT_EQ(t->embed(A.mul(x, y), b), B.mul(t->embed(x, b), t->embed(y, b)));
        EXPECT_EQ(t->embed(A.add(x, y), b), B.add(t->embed(x, b), t->embed(y, b)));
        auto back = t->restrict_to(t->embed(x, b), a);
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, x);
      }
      if (b > a) {
        // A generic element of B is not in A.
        FieldElt z = B.generator();
        EXPECT_FALSE(t->restrict_to(z, a).has_value());
      }
    }
  }
}

TEST(Field, MatchesSchoolbookOracle) {
  auto t = FieldTower::build(3, 1, 4, 3);
  Rng rng(11);
  for (LevelId id = 0; id < t->num_levels(); ++id) {
    const Field& K = t->field(id);
    for (int it = 0; it < 50; ++it) {
      FieldElt x = K.random(rng), y = K.random(rng);
      EXPECT_EQ(oracle::to_vec(K.mul(x, y)), oracle::field_mul(K, oracle::to_vec(x), oracle::to_vec(y)));
    }
  }
}

TEST(Field, AxiomsAtEveryLevel) {
  for (auto [p, i, k, e] : std::vector<std::tuple<int, int, int, int>>{
           {2, 1, 4, 3}, {3, 1, 4, 2}, {2, 2, 3, 2}, {5, 1, 2, 2}, {7, 1, 4, 1}}) {
    auto t = FieldTower::build(p, i, k, e);
    Rng rng(p * 100 + k);
    for (LevelId id = 0; id < t->num_levels(); ++id) {
      const Field& K = t->field(id);
      for (int it = 0; it < 30; ++it) {
        FieldElt a = K.random(rng), b = K.random(rng), c = K.random(rng);
        EXPECT_EQ(K.mul(K.mul(a, b), c), K.mul(a, K.mul(b, c)));
        EXPECT_EQ(K.mul(a, K.add(b, c)), K.add(K.mul(a, b), K.mul(a, c)));
        EXPECT_EQ(K.add(a, K.neg(a)), K.zero());
        EXPECT_EQ(K.sub(a, b), K.add(a, K.neg(b)));
        if (!K.is_zero(a)) {
          EXPECT_TRUE(K.is_one(K.mul(a, K.inv(a))));
          EXPECT_TRUE(K.is_one(K.pow(a, K.order() - 1)));
          EXPECT_EQ(K.pow_signed(a, -3), K.inv(K.pow(a, std::uint64_t{3})));
        }
        // Frobenius is multiplicative and has the right order.
        EXPECT_EQ(K.frob(K.mul(a, b)), K.mul(K.frob(a), K.frob(b)));
        EXPECT_EQ(K.frob_pow(a, 1), K.pow(a, static_cast<std::uint64_t>(p)));
        if (K.q_degree()) {
          EXPECT_EQ(K.frob(a, K.q_degree()), a);
          EXPECT_EQ(K.frob(K.frob_inv(a)), a);
        }
      }
      EXPECT_THROW(K.inv(K.zero()), ArithmeticError);
    }
    // F_q is fixed by the q-power map at every level above it.
    const Field& Fq = t->field(t->q_level());
    for (int it = 0; it < 10; ++it) {
      FieldElt a = Fq.random(rng);
      for (LevelId id = t->q_level(); id < t->num_levels(); ++id) {
        FieldElt up = t->embed(a, id);
        EXPECT_EQ(t->field(id).frob(up, 3), up);
      }
    }
  }
}

TEST(Field, IndexRoundTripAndLevelCheck) {
  auto t = FieldTower::build(3, 1, 2, 1);
  const Field& K = t->field(t->level(1));
  for (std::uint64_t v = 0; v < 9; ++v) EXPECT_EQ(K.index_of(K.from_index(v)), v);
  const Field& L = t->field(t->level(2));
  EXPECT_THROW(L.check(K.one()), ArithmeticError);
}
