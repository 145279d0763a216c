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

#include "fixtures.hpp"
#include "oracle.hpp"
#include "qpdlog/bluher.hpp"
#include "qpdlog/elim.hpp"
#include "qpdlog/errors.hpp"
#include "qpdlog/factor.hpp"
#include "qpdlog/norm.hpp"

using namespace qpdlog;

namespace {

const qpdlog::Setup& general() { return fixtures::general(2, 1, 4, 3, 3, 2); }
const qpdlog::Setup& kummer() { return fixtures::kummer(3, 1, 4, 2); }

DensePoly random_eliminable(const Eliminator& el, LevelId level, int degree, Rng& rng,
                            bool allow_degenerate = true) {
  const PolyRing R(el.setup().tower->field(level));
  for (;;) {
    DensePoly Q = random_irreducible(R, degree, rng);
    const TrapReport rep = el.trap_report(level, Q);
    if (!rep.eliminable()) continue;
    if (!allow_degenerate && rep.degenerate) continue;
    return Q;
  }
}

// Residue of w0 h0 + w1 h1 modulo Q.
DensePoly lattice_residue(const Eliminator& el, LevelId level, const DensePoly& w0,
                          const DensePoly& w1, const DensePoly& Q) {
  const PolyRing R(el.setup().tower->field(level));
  return R.rem(R.add(R.mul(w0, el.h0_at(level)), R.mul(w1, el.h1_at(level))), Q);
}

void expect_rewrite_shape(const Rewrite& rw, std::uint64_t q) {
  for (const auto& f : rw.factors) EXPECT_LE(f.poly.degree(), 1);
  if (!rw.degenerate) EXPECT_LE(rw.factors.size(), q + 2);
}

}  // namespace

TEST(Lattice, BasisVectorsSatisfyCongruence) {
  for (const qpdlog::Setup* s : {&general(), &kummer()}) {
    Eliminator el(*s);
    Rng rng(1);
    for (int D : {1, 2}) {
      const LevelId lv = s->tower->level(D);
      const PolyRing R(s->tower->field(lv));
      for (int t = 0; t < 40; ++t) {
        DensePoly Q = random_irreducible(R, 2, rng);
        if (el.trap_report(lv, Q).h1_root) continue;
        Q = R.scale(Q, s->tower->field(lv).random_nonzero(rng));
        const Lattice2 lat = el.lattice_basis(lv, Q);
        if (lat.degenerate) {
          const DensePoly P = R.add(el.h0_at(lv), R.scale(el.h1_at(lv), lat.w1));
          EXPECT_EQ(R.scale(P, lat.w), Q);
          continue;
        }
        EXPECT_TRUE(lattice_residue(el, lv, R.one(), R.make({lat.u1, lat.u0}), Q).is_zero());
        EXPECT_TRUE(lattice_residue(el, lv, R.x(), R.make({lat.v1, lat.v0}), Q).is_zero());
      }
    }
  }
}

TEST(Lattice, DegenerateMatchesProjectiveScan) {
  const qpdlog::Setup& s = general();
  Eliminator el(s);
  const LevelId lv = s.base_level();
  const Field& K = s.base();
  const PolyRing R(K);
  const auto n = static_cast<std::uint64_t>(K.order());
  int degenerate = 0, total = 0;
  for (std::uint64_t b = 0; b < n; ++b) {
    for (std::uint64_t c = 0; c < n; ++c) {
      const DensePoly Q = R.make({K.from_index(c), K.from_index(b), K.one()});
      if (!is_irreducible(R, Q) || el.trap_report(lv, Q).h1_root) continue;
      ++total;
      // Exhaustive over P^1(K): (1 : w1) and (0 : 1).
      bool scan = R.divides(Q, el.h1_at(lv));
      for (std::uint64_t w = 0; w < n && !scan; ++w) {
        scan = R.divides(Q, R.add(el.h0_at(lv), R.scale(el.h1_at(lv), K.from_index(w))));
      }
      const bool lat = el.lattice_basis(lv, Q).degenerate;
      EXPECT_EQ(lat, scan);
      EXPECT_EQ(el.trap_report(lv, Q).degenerate, scan);
      degenerate += lat;
    }
  }
  EXPECT_GT(total, 0);
  EXPECT_GT(degenerate, 0);
}

TEST(Lattice, KummerNeverDegenerate) {
  const qpdlog::Setup& s = kummer();
  Eliminator el(s);
  Rng rng(2);
  for (int D : {1, 2, 4}) {
    const LevelId lv = s.tower->level(D);
    const PolyRing R(s.tower->field(lv));
    for (int t = 0; t < 30; ++t) {
      EXPECT_FALSE(el.lattice_basis(lv, random_irreducible(R, 2, rng)).degenerate);
    }
  }
}

TEST(Lattice, RejectsBadInput) {
  const qpdlog::Setup& s = general();
  Eliminator el(s);
  const PolyRing R = s.base_ring();
  const LevelId lv = s.base_level();
  EXPECT_THROW(el.lattice_basis(lv, R.mul(R.x(), R.x())), InvalidInput);
  EXPECT_THROW(el.lattice_basis(lv, R.x()), InvalidInput);
  EXPECT_THROW(el.lattice_basis(lv, s.h1), InvalidInput);
  EXPECT_THROW(el.trap_report(lv, R.pow(R.x(), 3)), InvalidInput);
}

TEST(Traps, KummerIsTrapFree) {
  const qpdlog::Setup& s = kummer();
  Eliminator el(s);
  Rng rng(3);
  const LevelId lv = s.base_level();
  const PolyRing R(s.base());
  for (int deg : {2, 4, 8}) {
    for (int t = 0; t < 20; ++t) {
      const DensePoly Q = random_irreducible(R, deg, rng);
      if (Q == s.I) continue;
      EXPECT_TRUE(el.is_good(lv, Q)) << deg << ": " << el.trap_report(lv, Q).describe();
    }
  }
  EXPECT_THROW(el.trap_report(lv, random_irreducible(R, 3, rng)), InvalidInput);
}

TEST(Traps, FactorsOfFrobeniusRelationAreLevel0) {
  const qpdlog::Setup& s = fixtures::general(2, 1, 4, 2, 2, -1);
  Eliminator el(s);
  const PolyRing R = s.base_ring();
  Rng rng(4);
  const Factorization fz = factor(R, s.frobenius_relation(), rng);
  int quadratics = 0;
  for (const auto& f : fz.factors) {
    if (f.poly.degree() != 2) continue;
    ++quadratics;
    const TrapReport rep = el.trap_report(s.base_level(), f.poly);
    EXPECT_TRUE(rep.level0);
    EXPECT_FALSE(rep.good());
    try {
      el.eliminate_quadratic(s.base_level(), f.poly, rng);
      ADD_FAILURE() << "trap was eliminated";
    } catch (const TrapError& e) {
      EXPECT_EQ(e.kind(), TrapError::Kind::kLevel0);
    }
  }
  EXPECT_GT(quadratics, 0);
}

TEST(Traps, StarConditionsAgreeWithFlags) {
  for (const qpdlog::Setup* s : {&general(), &fixtures::general(2, 1, 4, 2, 2, -1), &kummer()}) {
    Eliminator el(*s);
    Rng rng(5);
    for (int D : {1, 2}) {
      const LevelId lv = s->tower->level(D);
      const PolyRing R(s->tower->field(lv));
      int checked = 0;
      for (int t = 0; t < 150; ++t) {
        const DensePoly Q = random_irreducible(R, 2, rng);
        const TrapReport rep = el.trap_report(lv, Q);
        if (rep.h1_root || rep.degenerate) continue;
        const StarResult st = el.check_star_conditions(lv, Q);
        ++checked;
        if (!st.star) EXPECT_TRUE(rep.level0);
        if (!st.starstar) EXPECT_TRUE(rep.level_kd);
        if (rep.good()) EXPECT_TRUE(st.star && st.starstar);
        // aF (A - rho1)(A - rho2) is F(A) = aF A^2 + bF A + cF.
        const auto& d = st.data;
        const Field& L = s->tower->field(d.rho1.level);
        const FieldElt a = s->tower->embed(d.aF, d.rho1.level);
        EXPECT_EQ(L.neg(L.mul(a, L.add(d.rho1, d.rho2))), s->tower->embed(d.bF, d.rho1.level));
        EXPECT_EQ(L.mul(a, L.mul(d.rho1, d.rho2)), s->tower->embed(d.cF, d.rho1.level));
      }
      EXPECT_GT(checked, 0);
    }
  }
}

TEST(Elim, QuadraticRewritesVerify) {
  for (const qpdlog::Setup* s : {&general(), &kummer()}) {
    Eliminator el(*s);
    Rng rng(6);
    for (int D : {1, 2, 4}) {
      const LevelId lv = s->tower->level(D);
      for (int t = 0; t < (D == 4 ? 3 : 15); ++t) {
        const DensePoly Q = random_eliminable(el, lv, 2, rng);
        const Rewrite rw = el.eliminate_quadratic(lv, Q, rng);
        EXPECT_TRUE(el.verify_rewrite(rw)) << "D=" << D;
        expect_rewrite_shape(rw, s->q());
        if (!rw.degenerate) {
          ASSERT_TRUE(rw.B.has_value());
          EXPECT_TRUE(is_bluher(*s->tower, *rw.B));
        }
        Rewrite broken = rw;
        const Field& K = s->tower->field(lv);
        broken.unit = K.add(broken.unit, K.one());
        if (!K.is_zero(broken.unit)) EXPECT_FALSE(el.verify_rewrite(broken));
      }
    }
  }
}

TEST(Elim, CandidatesSplitIffBluher) {
  const qpdlog::Setup& s = general();
  Eliminator el(s);
  Rng rng(7);
  const LevelId lv = s.tower->level(2);
  const Field& K = s.tower->field(lv);
  const PolyRing R(K);
  const std::uint64_t q = s.q();
  const DensePoly Q = random_eliminable(el, lv, 2, rng, false);
  const Lattice2 lat = el.lattice_basis(lv, Q);
  int hits = 0;
  for (std::uint64_t idx = 0; idx < 256; ++idx) {
    const FieldElt a = K.from_index(idx);
    const FieldElt b = K.add(K.mul(lat.u0, a), lat.v0);
    const FieldElt c = K.add(K.mul(lat.u1, a), lat.v1);
    DensePoly f = R.make({c, b, a, K.one()});  // q = 2: X^3 + aX^2 + bX + c
    const bool valid = !(c == K.mul(a, b)) && !(b == K.frob(a, 1));
    auto cand = el.try_candidate(lat, a, rng);
    if (!valid) {
      EXPECT_FALSE(cand.has_value());
      continue;
    }
    EXPECT_EQ(cand.has_value(), splits_distinct(R, f));
    if (cand) {
      ++hits;
      EXPECT_EQ(cand->roots.size(), q + 1);
      EXPECT_EQ(R.from_roots(cand->roots), f);
    }
  }
  EXPECT_GT(hits, 0);
}

TEST(Elim, DegenerateRewriteIdentity) {
  const qpdlog::Setup& s = general();
  Eliminator el(s);
  const Field& K = s.base();
  const PolyRing R(K);
  const LevelId lv = s.base_level();
  const auto n = static_cast<std::uint64_t>(K.order());
  Rng rng(8);
  int seen = 0;
  for (std::uint64_t w = 0; w < n; ++w) {
    DensePoly P = R.add(s.h0, R.scale(s.h1, K.from_index(w)));
    if (P.degree() != 2 || !is_irreducible(R, P)) continue;
    const Lattice2 lat = el.lattice_basis(lv, P);
    ASSERT_TRUE(lat.degenerate);
    // (w0^{1/q} X + w1^{1/q})^q = w0 X^q + w1.
    const DensePoly lin = R.make({K.frob_inv(lat.w1), K.frob_inv(lat.w0)});
    EXPECT_EQ(R.pow(lin, s.q()), R.make({lat.w1, K.zero(), lat.w0}));
    ElimConfig cfg;
    cfg.check_descendants = false;
    Eliminator loose(s, cfg);
    const Rewrite rw = loose.eliminate_quadratic(lv, P, rng);
    EXPECT_TRUE(rw.degenerate);
    EXPECT_TRUE(loose.verify_rewrite(rw));
    ++seen;
  }
  EXPECT_GT(seen, 0);
}

TEST(Elim, PropTrapPairs) {
  const qpdlog::Setup& s = general();
  Eliminator el(s);
  Rng rng(9);
  const LevelId lv = s.tower->level(2);
  const PolyRing R(s.tower->field(lv));
  int pairs = 0;
  for (int t = 0; t < 10; ++t) {
    const DensePoly Q = random_eliminable(el, lv, 2, rng, false);
    const Lattice2 lat = el.lattice_basis(lv, Q);
    const auto cands = el.find_candidates(lat, 2, 20000, rng);
    if (cands.size() < 2) continue;
    auto f = [&](const SplitCandidate& c) {
      DensePoly g = R.monomial(R.field().one(), 3);
      g.c[2] = c.a;
      g.c[1] = c.b;
      g.c[0] = c.c;
      return g;
    };
    auto num = [&](const SplitCandidate& c) {
      return R.add(R.mul(R.make({c.a, R.field().one()}), el.h0_at(lv)),
                   R.mul(R.make({c.c, c.b}), el.h1_at(lv)));
    };
    EXPECT_EQ(R.gcd(f(cands[0]), f(cands[1])), R.one());
    EXPECT_EQ(R.gcd(num(cands[0]), num(cands[1])), R.monic(Q));
    ++pairs;
  }
  EXPECT_GT(pairs, 0);
}

TEST(Elim, PoliciesAgree) {
  const qpdlog::Setup& s = general();
  for (SearchPolicy p : {SearchPolicy::kExhaustive, SearchPolicy::kBluherDriven}) {
    ElimConfig cfg;
    cfg.policy = p;
    Eliminator el(s, cfg);
    Rng rng(10);
    for (int D : {1, 2}) {
      const LevelId lv = s.tower->level(D);
      for (int t = 0; t < 5; ++t) {
        const DensePoly Q = random_eliminable(el, lv, 2, rng);
        EXPECT_TRUE(el.verify_rewrite(el.eliminate_quadratic(lv, Q, rng))) << to_string(p);
      }
    }
  }
  EXPECT_EQ(parse_policy("bluher"), SearchPolicy::kBluherDriven);
  EXPECT_THROW(parse_policy("groebner"), InvalidInput);
}

TEST(Elim, EvenDegreeRewrites) {
  for (const qpdlog::Setup* s : {&general(), &kummer()}) {
    Eliminator el(*s);
    Rng rng(11);
    const LevelId lv = s->base_level();
    for (int deg : {4, 8}) {
      for (int t = 0; t < 4; ++t) {
        const DensePoly Q = random_eliminable(el, lv, deg, rng);
        const Rewrite rw = el.eliminate_even(lv, Q, rng);
        EXPECT_TRUE(el.verify_rewrite(rw)) << deg;
        std::int64_t weighted = 0;
        for (const auto& f : rw.factors) {
          EXPECT_EQ((deg / 2) % f.poly.degree(), 0);
          EXPECT_TRUE(is_irreducible(PolyRing(s->base()), f.poly));
          const std::int64_t power = (deg / 2) / f.poly.degree();
          weighted += 1;
          EXPECT_EQ(std::abs(f.exp) % power, 0) << "norm exponents carry d1";
        }
        EXPECT_LE(weighted, static_cast<std::int64_t>(s->q() + 2));
      }
    }
  }
}

TEST(Elim, QuadraticFactorNormsBack) {
  const qpdlog::Setup& s = kummer();
  const FieldTower& T = *s.tower;
  Rng rng(12);
  const PolyRing R(s.base());
  for (int deg : {4, 8}) {
    const DensePoly Q = random_irreducible(R, deg, rng);
    const LevelId up = T.level(deg / 2);
    const PolyRing RE(T.field(up));
    const auto parts = equal_degree(RE, embed_poly(T, Q, up), 2, rng);
    ASSERT_EQ(static_cast<int>(parts.size()), deg / 2);
    for (const auto& g : parts) EXPECT_EQ(norm_to_base(T, g, s.base_level()), Q);
  }
}
