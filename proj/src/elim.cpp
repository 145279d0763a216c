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

#include "qpdlog/elim.hpp"

#include <algorithm>

#include "qpdlog/bluher.hpp"
#include "qpdlog/factor.hpp"
#include "qpdlog/norm.hpp"

namespace qpdlog {

namespace {

const FieldElt& coeff_or(const DensePoly& f, int i, const FieldElt& zero) {
  return i < static_cast<int>(f.c.size()) ? f.c[i] : zero;
}

// Inverse of f modulo a monic m; nullopt when they share a factor.
std::optional<DensePoly> inverse_mod(const PolyRing& R, const DensePoly& f, const DensePoly& m) {
  auto x = R.xgcd(R.rem(f, m), m);
  if (x.g.degree() != 0) return std::nullopt;
  return R.rem(x.s, m);
}

void merge_factors(const PolyRing& R, std::vector<RewriteFactor>& fs) {
  std::sort(fs.begin(), fs.end(), [&](const RewriteFactor& x, const RewriteFactor& y) {
    return R.compare(x.poly, y.poly) < 0;
  });
  std::vector<RewriteFactor> out;
  for (auto& f : fs) {
    if (!out.empty() && out.back().poly == f.poly) {
      out.back().exp += f.exp;
    } else {
      out.push_back(std::move(f));
    }
  }
  std::erase_if(out, [](const RewriteFactor& f) { return f.exp == 0; });
  fs = std::move(out);
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string TrapReport::describe() const {
  std::string out;
  auto add = [&](bool flag, const char* name) {
    if (!flag) return;
    if (!out.empty()) out += ", ";
    out += name;
  };
  add(h1_root, "h1_root");
  add(level0, "level0");
  add(level_kd, "level_kd");
  add(subfield_image, "subfield_image");
  add(degenerate, "degenerate");
  return out.empty() ? "good" : out;
}

namespace {

std::string trap_message(TrapError::Kind kind) {
  switch (kind) {
    case TrapError::Kind::kLevel0: return "trap of level 0: Q divides h1 X^q - h0";
    case TrapError::Kind::kLevelKd: return "trap of level kD: Q divides h1 X^(q^(kD+1)) - h0";
    case TrapError::Kind::kSubfieldImage: return "trap: h0/h1 maps a root of Q into the half field";
    case TrapError::Kind::kH1Root: return "Q shares a root with h1";
  }
  return "trap";
}

}  // namespace

TrapError::TrapError(Kind kind, TrapReport report)
    : Error(trap_message(kind)), kind_(kind), report_(report) {}

std::string to_string(SearchPolicy p) {
  switch (p) {
    case SearchPolicy::kRandom: return "random";
    case SearchPolicy::kExhaustive: return "exhaustive";
    case SearchPolicy::kBluherDriven: return "bluher";
  }
  return "random";
}

SearchPolicy parse_policy(const std::string& s) {
  if (s == "random") return SearchPolicy::kRandom;
  if (s == "exhaustive") return SearchPolicy::kExhaustive;
  if (s == "bluher") return SearchPolicy::kBluherDriven;
  throw InvalidInput("unknown search policy '" + s + "'");
}

Eliminator::Eliminator(const Setup& s, ElimConfig cfg) : s_(&s), cfg_(cfg) {
  const FieldTower& T = *s.tower;
  const LevelId base = T.base_level();
  h0_.resize(T.num_levels());
  h1_.resize(T.num_levels());
  for (std::size_t id = base; id < T.num_levels(); ++id) {
    h0_[id] = embed_poly(T, s.h0, static_cast<LevelId>(id));
    h1_[id] = embed_poly(T, s.h1, static_cast<LevelId>(id));
  }
  h1_monic_ = s.base_ring().monic(s.h1);
}

Lattice2 Eliminator::lattice_basis(LevelId level, const DensePoly& Q) const {
  const Field& K = s_->tower->field(level);
  const PolyRing R(K);
  if (Q.level != level || Q.degree() != 2) throw InvalidInput("lattice_basis needs a quadratic");
  if (!is_irreducible(R, Q)) throw InvalidInput("Q is reducible");
  const DensePoly Qm = R.monic(Q);
  auto h1inv = inverse_mod(R, h1_at(level), Qm);
  if (!h1inv) throw InvalidInput("Q shares a root with h1");
  const DensePoly H = R.rem(R.mul(h0_at(level), *h1inv), Qm);
  const DensePoly U = R.neg(H);
  const DensePoly V = R.rem(R.neg(R.shift(H, 1)), Qm);
  const FieldElt z = K.zero();

  Lattice2 lat;
  lat.level = level;
  lat.Q = Q;
  lat.u0 = coeff_or(U, 1, z);
  lat.u1 = coeff_or(U, 0, z);
  lat.v0 = coeff_or(V, 1, z);
  lat.v1 = coeff_or(V, 0, z);
  lat.degenerate = K.is_zero(lat.u0);
  if (lat.degenerate) {
    lat.w0 = K.one();
    lat.w1 = lat.u1;
    const DensePoly P = R.add(h0_at(level), R.scale(h1_at(level), lat.w1));
    if (P.is_zero()) throw Error("internal: h0 and h1 are proportional");
    lat.w = K.div(Q.lead(), P.lead());
  } else {
    lat.w0 = z;
    lat.w1 = z;
    lat.w = z;
  }
  return lat;
}

TrapReport Eliminator::trap_report(LevelId level, const DensePoly& Q) const {
  const Field& K = s_->tower->field(level);
  const PolyRing R(K);
  const int n = Q.degree();
  if (Q.level != level || n < 2 || n % 2 != 0) {
    throw InvalidInput("trap roots are defined for even degree only");
  }
  const int d = n / 2;
  const DensePoly Qm = R.monic(Q);
  const DensePoly& h0 = h0_at(level);
  const DensePoly& h1 = h1_at(level);

  TrapReport rep;
  auto h1inv = inverse_mod(R, h1, Qm);
  if (!h1inv) {
    rep.h1_root = true;
    return rep;
  }
  const QuotientFrobenius F(R, Qm, static_cast<std::uint64_t>(s_->tower->i()));
  const DensePoly& xq = F.x_image();
  rep.level0 = R.rem(R.sub(R.mul(h1, xq), h0), Qm).is_zero();

  const auto half = static_cast<std::uint64_t>(K.q_degree()) * static_cast<std::uint64_t>(d);
  const DensePoly xk = F.apply(xq, half);  // X^{q^{kDd+1}}
  rep.level_kd = R.rem(R.sub(R.mul(h1, xk), h0), Qm).is_zero();

  const DensePoly ratio = R.rem(R.mul(h0, *h1inv), Qm);
  rep.subfield_image = F.apply(ratio, half) == ratio;
  // For a quadratic, a constant ratio is exactly a constant lattice vector.
  rep.degenerate = d == 1 && ratio.degree() <= 0;
  return rep;
}

StarResult Eliminator::check_star_conditions(LevelId level, const DensePoly& Q) const {
  const FieldTower& T = *s_->tower;
  const Lattice2 lat = lattice_basis(level, Q);
  if (lat.degenerate) throw InvalidInput("star conditions need a nondegenerate lattice");
  const int D = T.rel_degree(level);
  if (!T.has_level(2 * D)) throw InvalidInput("tower lacks the quadratic extension level");
  const Field& K = T.field(level);
  const LevelId up = T.level(2 * D);
  const Field& L = T.field(up);

  StarResult res;
  auto& sd = res.data;
  sd.aF = K.neg(lat.u0);
  sd.bF = K.sub(lat.u1, lat.v0);
  sd.cF = lat.v1;
  sd.dF = K.neg(lat.v0);

  const PolyRing RL(L);
  const FieldElt a = T.embed(sd.aF, up);
  const FieldElt dd = T.embed(sd.dF, up);
  const DensePoly F = RL.make({T.embed(sd.cF, up), T.embed(sd.bF, up), a});
  Rng rng(0);
  const auto rts = roots(RL, F, rng);
  if (rts.size() != 2) throw Error("internal: quadratic without two roots in its extension");
  sd.rho1 = rts[0];
  sd.rho2 = rts[1];
  const FieldElt r1q = L.frob(sd.rho1, 1);
  res.star = !L.is_zero(L.add(L.add(r1q, L.mul(a, sd.rho2)), dd));
  res.starstar = !L.is_zero(L.add(L.add(r1q, L.mul(a, sd.rho1)), dd));
  return res;
}

std::shared_ptr<const std::vector<bool>> Eliminator::table(LevelId level) const {
  const Field& K = s_->tower->field(level);
  if (!K.enumerable() || K.order() > cfg_.table_cap || K.q_degree() == 0) return nullptr;
  std::lock_guard lock(mu_);
  auto it = tables_.find(level);
  if (it != tables_.end()) return it->second;
  auto t = std::make_shared<const std::vector<bool>>(
      bluher_table(*s_->tower, level, cfg_.table_cap));
  tables_.emplace(level, t);
  return t;
}

std::optional<SplitCandidate> Eliminator::try_candidate(const Lattice2& lat, const FieldElt& a,
                                                        Rng& rng) const {
  const Field& K = s_->tower->field(lat.level);
  const PolyRing R(K);
  const std::uint64_t q = s_->q();
  const FieldElt aq = K.frob(a, 1);
  FieldElt b = K.add(K.mul(lat.u0, a), lat.v0);
  FieldElt c = K.add(K.mul(lat.u1, a), lat.v1);
  const FieldElt ab = K.mul(a, b);
  if (c == ab || b == aq) return std::nullopt;
  FieldElt B = K.div(K.pow(K.sub(b, aq), q + 1), K.pow(K.sub(c, ab), q));

  // X^{q+1} + a X^q + b X + c
  DensePoly f = R.monomial(K.one(), static_cast<int>(q + 1));
  f.c[q] = a;
  f.c[1] = K.add(f.c[1], b);
  f.c[0] = K.add(f.c[0], c);

  if (auto t = table(lat.level)) {
    if (!(*t)[K.index_of(B)]) return std::nullopt;
  } else if (!splits_distinct(R, f)) {
    return std::nullopt;
  }
  auto rts = distinct_roots(R, f, rng);
  if (rts.size() != q + 1) throw Error("internal: Bluher membership and root count disagree");
  return SplitCandidate{a, std::move(b), std::move(c), std::move(B), std::move(rts)};
}

std::vector<SplitCandidate> Eliminator::find_candidates(const Lattice2& lat, std::size_t want,
                                                        std::uint64_t trials, Rng& rng) const {
  const Field& K = s_->tower->field(lat.level);
  std::vector<SplitCandidate> out;
  for (std::uint64_t t = 0; t < trials && out.size() < want; ++t) {
    const FieldElt a = K.random(rng);
    if (std::any_of(out.begin(), out.end(), [&](const auto& c) { return c.a == a; })) continue;
    if (auto c = try_candidate(lat, a, rng)) out.push_back(std::move(*c));
  }
  return out;
}

std::optional<Rewrite> Eliminator::build_rewrite(const Lattice2& lat,
                                                 const SplitCandidate& cand) const {
  const Field& K = s_->tower->field(lat.level);
  const PolyRing R(K);
  const DensePoly lin = R.make({cand.a, K.one()});
  const DensePoly w1 = R.make({cand.c, cand.b});
  const DensePoly num = R.add(R.mul(lin, h0_at(lat.level)), R.mul(w1, h1_at(lat.level)));
  if (num.is_zero()) return std::nullopt;
  auto [cof, rem] = R.divrem(num, lat.Q);
  if (!rem.is_zero()) throw Error("internal: lattice vector not divisible by Q");

  Rewrite rw;
  rw.level = lat.level;
  rw.lhs = lat.Q;
  rw.h1_exp = 1;
  rw.unit = K.inv(cof.lead());
  rw.a = cand.a;
  rw.B = cand.B;
  for (const auto& r : cand.roots) rw.factors.push_back({R.linear(r), 1});
  if (cof.degree() >= 1) rw.factors.push_back({R.monic(cof), -1});
  merge_factors(R, rw.factors);
  return rw;
}

Rewrite Eliminator::degenerate_rewrite(const Lattice2& lat) const {
  const Field& K = s_->tower->field(lat.level);
  const PolyRing R(K);
  // Q = w (h0 + w1 h1) = w h1 (X^q + w1) = w h1 (X + w1^{1/q})^q mod I.
  Rewrite rw;
  rw.level = lat.level;
  rw.lhs = lat.Q;
  rw.degenerate = true;
  rw.h1_exp = 1;
  rw.unit = lat.w;
  rw.factors.push_back({R.linear(K.neg(K.frob_inv(lat.w1))), static_cast<std::int64_t>(s_->q())});
  return rw;
}

bool Eliminator::acceptable_descendant(const DensePoly& f) const {
  const PolyRing R = s_->base_ring();
  if (f.degree() <= 1) return true;
  const DensePoly fm = R.monic(f);
  if (fm == h1_monic_) return true;
  if (fm == s_->I) return false;
  if (f.degree() % 2 != 0) return false;
  return trap_report(s_->base_level(), fm).eliminable();
}

bool Eliminator::descendants_ok(const Rewrite& rw) const {
  const FieldTower& T = *s_->tower;
  const Field& K = T.field(rw.level);
  const LevelId base = T.base_level();
  for (const auto& f : rw.factors) {
    if (f.poly.degree() != 1) {
      if (f.poly.level == base && !acceptable_descendant(f.poly)) return false;
      continue;
    }
    const FieldElt r = K.neg(f.poly.c[0]);
    if (T.restrict_to(r, base)) continue;
    if (!acceptable_descendant(min_poly(T, r, base))) return false;
  }
  return true;
}

std::optional<Rewrite> Eliminator::search(const Lattice2& lat, Rng& rng,
                                          std::uint64_t& tried) const {
  const FieldTower& T = *s_->tower;
  const Field& K = T.field(lat.level);
  const PolyRing R(K);
  const std::uint64_t q = s_->q();
  const std::uint64_t trials = cfg_.random_trials ? cfg_.random_trials : 16 * q * q * q + 64;
  int rejected = 0;

  auto attempt = [&](const FieldElt& a) -> std::optional<Rewrite> {
    ++tried;
    auto cand = try_candidate(lat, a, rng);
    if (!cand) return std::nullopt;
    auto rw = build_rewrite(lat, *cand);
    if (!rw) return std::nullopt;
    if (cfg_.check_descendants && !descendants_ok(*rw)) {
      if (++rejected > cfg_.descendant_retries) {
        throw BudgetExhausted("every splitting candidate produced a bad descendant");
      }
      return std::nullopt;
    }
    rw->candidates = tried;
    return rw;
  };

  auto exhaustive = [&]() -> std::optional<Rewrite> {
    if (!K.enumerable() || K.order() > cfg_.exhaustive_cap) return std::nullopt;
    const auto size = static_cast<std::uint64_t>(K.order());
    const std::uint64_t start = rng.below(size);
    for (std::uint64_t j = 0; j < size; ++j) {
      if (auto rw = attempt(K.from_index((start + j) % size))) return rw;
    }
    return std::nullopt;
  };

  switch (cfg_.policy) {
    case SearchPolicy::kRandom:
      for (std::uint64_t t = 0; t < trials; ++t) {
        if (auto rw = attempt(K.random(rng))) return rw;
      }
      break;
    case SearchPolicy::kExhaustive:
      break;
    case SearchPolicy::kBluherDriven: {
      // Roots in A of B F(A)^q - G(A)^{q+1}, where F = c - ab and G = b - a^q
      // as functions of a along the lattice line.
      const DensePoly Fa = R.make({lat.v1, K.sub(lat.u1, lat.v0), K.neg(lat.u0)});
      DensePoly Ga = R.make({lat.v0, lat.u0});
      Ga = R.sub(Ga, R.monomial(K.one(), static_cast<int>(q)));
      const DensePoly Fq = R.pow(Fa, q);
      const DensePoly Gq1 = R.pow(Ga, q + 1);
      const std::uint64_t samples = std::max<std::uint64_t>(16, trials / (q * q));
      for (std::uint64_t t = 0; t < samples; ++t) {
        FieldElt u = K.random(rng);
        if (K.frob(u, 2) == u) continue;
        const BluherSample bs = bluher_from_u(T, u, false);
        const DensePoly P = R.sub(R.scale(Fq, bs.B), Gq1);
        if (P.degree() < 1) continue;
        for (const auto& a : distinct_roots(R, P, rng)) {
          if (auto rw = attempt(a)) return rw;
        }
      }
      break;
    }
  }
  return exhaustive();
}

Rewrite Eliminator::eliminate_quadratic(LevelId level, const DensePoly& Q, Rng& rng) const {
  const PolyRing R(s_->tower->field(level));
  if (Q.level != level || Q.degree() != 2) throw InvalidInput("eliminate_quadratic needs a quadratic");
  if (!is_irreducible(R, Q)) throw InvalidInput("Q is reducible");
  const TrapReport rep = trap_report(level, Q);
  if (rep.h1_root) throw TrapError(TrapError::Kind::kH1Root, rep);
  if (rep.level0) throw TrapError(TrapError::Kind::kLevel0, rep);
  const Lattice2 lat = lattice_basis(level, Q);
  if (lat.degenerate) {
    Rewrite rw = degenerate_rewrite(lat);
    if (cfg_.check_descendants && !descendants_ok(rw)) {
      throw BudgetExhausted("degenerate rewrite has a bad descendant");
    }
    return rw;
  }
  if (rep.level_kd) throw TrapError(TrapError::Kind::kLevelKd, rep);
  std::uint64_t tried = 0;
  auto rw = search(lat, rng, tried);
  if (!rw) throw BudgetExhausted("no splitting candidate after " + std::to_string(tried) + " trials");
  return std::move(*rw);
}

Rewrite Eliminator::eliminate_even(LevelId level, const DensePoly& Q, Rng& rng) const {
  const FieldTower& T = *s_->tower;
  const Field& K = T.field(level);
  const PolyRing R(K);
  const int n = Q.degree();
  if (Q.level != level || !is_pow2(n) || n < 2) {
    throw InvalidInput("eliminate_even needs a degree that is a power of two");
  }
  const int d = n / 2;
  if (d == 1) return eliminate_quadratic(level, Q, rng);
  if (!is_irreducible(R, Q)) throw InvalidInput("Q is reducible");
  const TrapReport rep = trap_report(level, Q);
  if (rep.h1_root) throw TrapError(TrapError::Kind::kH1Root, rep);
  if (rep.level0) throw TrapError(TrapError::Kind::kLevel0, rep);
  if (rep.level_kd) throw TrapError(TrapError::Kind::kLevelKd, rep);

  const int D = T.rel_degree(level);
  if (!T.has_level(D * d)) throw InvalidInput("tower too short for this elimination");
  const LevelId up = T.level(D * d);
  const Field& E = T.field(up);
  const PolyRing RE(E);

  // One quadratic factor over the extension, then the least of its conjugates.
  DensePoly g = RE.monic(embed_poly(T, Q, up));
  while (g.degree() > 2) {
    DensePoly h = split_equal_degree_once(RE, g, 2, rng);
    DensePoly other = RE.exact_div(g, h);
    g = h.degree() <= other.degree() ? std::move(h) : std::move(other);
  }
  const auto step = static_cast<std::uint64_t>(K.degree());
  DensePoly best = g, conj = g;
  for (int j = 1; j < d; ++j) {
    conj = RE.frob_pow_coeffs(conj, step);
    if (RE.compare(conj, best) < 0) best = conj;
  }

  const Rewrite sub = eliminate_quadratic(up, best, rng);

  Rewrite rw;
  rw.level = level;
  rw.lhs = Q;
  rw.degenerate = sub.degenerate;
  rw.a = sub.a;
  rw.B = sub.B;
  rw.candidates = sub.candidates;
  rw.h1_exp = sub.h1_exp * d;
  for (const auto& f : sub.factors) {
    if (f.poly.degree() != 1) throw Error("internal: quadratic rewrite with a nonlinear factor");
    const DensePoly mp = min_poly(T, E.neg(f.poly.c[0]), level);
    rw.factors.push_back({mp, f.exp * (d / mp.degree())});
  }
  FieldElt nu = sub.unit, c = sub.unit;
  for (int j = 1; j < d; ++j) {
    c = E.frob_pow(c, step);
    nu = E.mul(nu, c);
  }
  auto low = T.restrict_to(nu, level);
  if (!low) throw Error("internal: unit norm does not descend");
  rw.unit = K.mul(Q.lead(), *low);
  merge_factors(R, rw.factors);
  return rw;
}

bool Eliminator::verify_rewrite(const Rewrite& rw) const {
  const FieldTower& T = *s_->tower;
  const LevelId base = T.base_level();
  const PolyRing R(T.field(rw.level));
  const int D = T.rel_degree(rw.level);
  const DensePoly lhs = target_reduce(*s_, norm_to_base(T, rw.lhs, base));
  DensePoly rhs = target_reduce(*s_, norm_to_base(T, R.constant(rw.unit), base));
  rhs = target_mul(*s_, rhs, target_pow(*s_, s_->h1, BigNat(rw.h1_exp) * D));
  for (const auto& f : rw.factors) {
    rhs = target_mul(*s_, rhs, target_pow(*s_, norm_to_base(T, f.poly, base), BigNat(f.exp)));
  }
  return lhs == rhs;
}

}  // namespace qpdlog
