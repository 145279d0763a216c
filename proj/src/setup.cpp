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

#include "qpdlog/setup.hpp"

#include <algorithm>

#include "qpdlog/codec.hpp"
#include "qpdlog/errors.hpp"
#include "qpdlog/factor.hpp"

namespace qpdlog {

std::string to_string(Flavor f) { return f == Flavor::kKummer ? "kummer" : "general"; }

DensePoly Setup::frobenius_relation() const {
  const PolyRing R = base_ring();
  return R.sub(R.shift(h1, static_cast<int>(q())), h0);
}

int min_lift_exponent(int l) {
  int e = 0;
  while ((1LL << e) <= 4LL * l) ++e;
  return e;
}

int default_emax(int l) { return std::max(0, min_lift_exponent(l) - 1); }

std::shared_ptr<const FieldTower> build_setup_tower(std::uint32_t p, int i, int k, int l,
                                                    TowerOptions opts) {
  return FieldTower::build(p, i, k, default_emax(l), opts);
}

namespace {

Setup finish(std::shared_ptr<const FieldTower> tower, Flavor flavor, DensePoly h0, DensePoly h1,
             DensePoly I) {
  Setup s;
  s.tower = std::move(tower);
  s.flavor = flavor;
  s.h0 = std::move(h0);
  s.h1 = std::move(h1);
  s.I = std::move(I);
  s.l = s.I.degree();
  s.N = s.base().order();
  s.N = boost::multiprecision::pow(s.N, static_cast<unsigned>(s.l)) - 1;
  return s;
}

}  // namespace

Setup make_kummer(std::shared_ptr<const FieldTower> tower) {
  const Field& K = tower->at(1);
  const PolyRing R(K);
  if (!K.enumerable()) throw InvalidInput("base field too large for the Kummer scan");
  const std::uint64_t q = tower->q();
  const std::uint64_t size = static_cast<std::uint64_t>(K.order());
  for (std::uint64_t idx = 1; idx < size; ++idx) {
    const FieldElt a = K.from_index(idx);
    DensePoly I = R.sub(R.monomial(K.one(), static_cast<int>(q - 1)), R.constant(a));
    if (!is_irreducible(R, I)) continue;
    return finish(std::move(tower), Flavor::kKummer, R.monomial(a, 1), R.one(), std::move(I));
  }
  throw InvalidInput("no a makes X^(q-1) - a irreducible for these parameters");
}

std::optional<Setup> search_general(std::shared_ptr<const FieldTower> tower, int l, Rng& rng,
                                    std::uint64_t budget, SearchStats* stats) {
  const std::uint64_t q = tower->q();
  if (l < 1 || static_cast<std::uint64_t>(l) > q + 2) {
    throw InvalidInput("l must lie in [1, q+2]");
  }
  const Field& K = tower->at(1);
  const PolyRing R(K);
  std::vector<int> strata;
  for (int d = 0; d <= 2; ++d) {
    if (q + d >= static_cast<std::uint64_t>(l)) strata.push_back(d);
  }
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  for (std::uint64_t t = 0; t < budget; ++t) {
    ++st.trials;
    const int d = strata[rng.below(strata.size())];
    DensePoly h1 = R.random_monic(d, rng);
    DensePoly h0 = R.random(2, rng);
    if (h0.is_zero() || R.gcd(h0, h1).degree() != 0) continue;
    ++st.coprime;
    const DensePoly rel = R.sub(R.shift(h1, static_cast<int>(q)), h0);
    if (rel.degree() < l) continue;
    Rng frng = rng.child(t);
    const Factorization fz = factor(R, rel, frng);
    for (const auto& [g, mult] : fz.factors) {
      if (g.degree() != l) continue;
      ++st.hits;
      return finish(std::move(tower), Flavor::kGeneral, std::move(h0), std::move(h1), g);
    }
  }
  return std::nullopt;
}

std::vector<std::string> validate_setup(const Setup& s) {
  std::vector<std::string> v;
  if (!s.tower) return {"missing field tower"};
  const LevelId base = s.base_level();
  const PolyRing R = s.base_ring();
  const Field& K = s.base();
  for (auto [name, f] : {std::pair{"h0", &s.h0}, {"h1", &s.h1}, {"I", &s.I}}) {
    if (f->level != base) v.push_back(std::string(name) + " is not over F_{q^k}");
  }
  if (!v.empty()) return v;
  if (s.h0.is_zero() || s.h1.is_zero()) v.push_back("h0 and h1 must be nonzero");
  if (s.h0.degree() > 2 || s.h1.degree() > 2) v.push_back("h0 and h1 must have degree at most 2");
  if (!s.h0.is_zero() && !s.h1.is_zero() && R.gcd(s.h0, s.h1).degree() != 0) {
    v.push_back("h0 and h1 are not coprime");
  }
  if (s.l < 1 || s.I.degree() != s.l) v.push_back("I does not have degree l");
  if (!R.is_monic(s.I)) v.push_back("I is not monic");
  if (s.I.degree() >= 1 && !is_irreducible(R, s.I)) v.push_back("I is not irreducible");
  if (s.I.degree() >= 1 && !s.h1.is_zero() && !R.divides(s.I, s.frobenius_relation())) {
    v.push_back("I does not divide h1 X^q - h0");
  }
  BigNat n = boost::multiprecision::pow(K.order(), static_cast<unsigned>(std::max(s.l, 0))) - 1;
  if (s.N != n) v.push_back("N differs from q^(kl) - 1");
  if (s.flavor == Flavor::kKummer) {
    const bool shape = s.h1 == R.one() && s.h0.degree() == 1 && K.is_zero(s.h0.c[0]) &&
                       static_cast<std::uint64_t>(s.l) + 1 == s.q() &&
                       s.I == R.sub(R.monomial(K.one(), s.l), R.constant(s.h0.c[1]));
    if (!shape) v.push_back("Kummer setup must have h1 = 1, h0 = aX, I = X^(q-1) - a");
  }
  return v;
}

std::vector<std::string> guardrail_warnings(const Setup& s) {
  std::vector<std::string> w;
  const std::uint64_t q = s.q();
  if (q <= 61) w.push_back("q <= 61: outside the range covered by the elimination theorem");
  std::uint64_t r = q;
  bool power_of_4 = false;
  while (r > 1 && r % 4 == 0) r /= 4;
  power_of_4 = r == 1 && q > 1;
  if (power_of_4) w.push_back("q is a power of 4: outside the range covered by the theorem");
  if (s.k() < 18) w.push_back("k < 18: outside the range covered by the elimination theorem");
  return w;
}

nlohmann::json setup_to_json(const Setup& s) {
  const FieldTower& t = *s.tower;
  nlohmann::json defs = nlohmann::json::object();
  for (LevelId id = 0; id < t.num_levels(); ++id) {
    const Field& K = t.field(id);
    defs[std::to_string(K.degree())] = K.modulus();
  }
  return {
      {"p", t.p()},
      {"i", t.i()},
      {"k", t.k()},
      {"emax", t.emax()},
      {"flavor", to_string(s.flavor)},
      {"h0", encode_poly(t, s.h0)},
      {"h1", encode_poly(t, s.h1)},
      {"I", encode_poly(t, s.I)},
      {"l", s.l},
      {"N", to_string(s.N)},
      {"defining_polys", defs},
  };
}

Setup setup_from_json(const nlohmann::json& j, TowerOptions opts) {
  Setup s;
  try {
    const auto p = j.at("p").get<std::uint32_t>();
    const int i = j.at("i").get<int>();
    const int k = j.at("k").get<int>();
    const int l = j.at("l").get<int>();
    const int emax = j.contains("emax") ? j.at("emax").get<int>() : default_emax(l);
    s.tower = FieldTower::build(p, i, k, emax, opts);
    const std::string flavor = j.at("flavor").get<std::string>();
    if (flavor == "kummer") {
      s.flavor = Flavor::kKummer;
    } else if (flavor == "general") {
      s.flavor = Flavor::kGeneral;
    } else {
      throw InvalidInput("unknown setup flavor '" + flavor + "'");
    }
    const LevelId base = s.tower->base_level();
    s.h0 = decode_poly(*s.tower, j.at("h0"), base, base);
    s.h1 = decode_poly(*s.tower, j.at("h1"), base, base);
    s.I = decode_poly(*s.tower, j.at("I"), base, base);
    s.l = l;
    s.N = boost::multiprecision::pow(s.base().order(), static_cast<unsigned>(std::max(l, 0))) - 1;
    if (j.contains("N") && parse_bignat(j.at("N").get<std::string>()) != s.N) {
      throw ValidationError("stored N differs from q^(kl) - 1");
    }
    if (j.contains("defining_polys")) {
      for (const auto& [deg, poly] : j.at("defining_polys").items()) {
        auto id = s.tower->level_by_degree(std::stoi(deg));
        if (!id || s.tower->field(*id).modulus() != poly.get<std::vector<std::uint32_t>>()) {
          throw ValidationError("stored defining polynomial of degree " + deg +
                                " does not match the rebuilt tower");
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed setup file: ") + e.what());
  }
  auto v = validate_setup(s);
  if (!v.empty()) throw ValidationError("setup failed validation: " + v.front());
  return s;
}

// ---------------------------------------------------------------------------

DensePoly target_reduce(const Setup& s, const DensePoly& f) { return s.base_ring().rem(f, s.I); }

DensePoly target_mul(const Setup& s, const DensePoly& a, const DensePoly& b) {
  return s.base_ring().mulmod(a, b, s.I);
}

DensePoly target_pow(const Setup& s, const DensePoly& a, const BigNat& e) {
  const PolyRing R = s.base_ring();
  if (e < 0) return R.powmod(target_inv(s, a), BigNat(-e), s.I);
  return R.powmod(a, e, s.I);
}

DensePoly target_inv(const Setup& s, const DensePoly& a) {
  const PolyRing R = s.base_ring();
  const DensePoly r = R.rem(a, s.I);
  if (r.is_zero()) throw ArithmeticError("inverse of zero in the target field");
  auto x = R.xgcd(r, s.I);
  return R.rem(x.s, s.I);
}

DensePoly target_random_nonzero(const Setup& s, Rng& rng) {
  const PolyRing R = s.base_ring();
  for (;;) {
    DensePoly f = R.random(s.l - 1, rng);
    if (!f.is_zero()) return f;
  }
}

bool target_is_one(const Setup& s, const DensePoly& a) {
  return target_reduce(s, a) == s.base_ring().one();
}

// ---------------------------------------------------------------------------

FactorBase::FactorBase(const Setup& s) : s_(&s) {
  const Field& K = s.base();
  if (!K.enumerable() || msb_or_zero(K.order()) >= 31) {
    throw InvalidInput("base field too large to index the factor base");
  }
  base_size_ = static_cast<std::uint64_t>(K.order());
  size_ = base_size_ * base_size_ - 1;
  if (s.h1.degree() == 2) {
    h1_index_ = size_;
    ++size_;
  }
}

std::uint64_t FactorBase::constant_index(const FieldElt& c) const {
  const std::uint64_t v = s_->base().index_of(c);
  if (v == 0) throw ArithmeticError("zero is not in the factor base");
  return v - 1;
}

std::optional<std::uint64_t> FactorBase::index_of(const DensePoly& f) const {
  const Field& K = s_->base();
  if (f.level != s_->base_level() || f.is_zero()) return std::nullopt;
  if (f.degree() == 0) return constant_index(f.c[0]);
  if (f.degree() == 1) {
    return (base_size_ - 1) + (K.index_of(f.c[1]) - 1) * base_size_ + K.index_of(f.c[0]);
  }
  if (h1_index_ && f == s_->h1) return h1_index_;
  return std::nullopt;
}

DensePoly FactorBase::element(std::uint64_t idx) const {
  const Field& K = s_->base();
  const PolyRing R(K);
  if (idx >= size_) throw InvalidInput("factor base index out of range");
  if (h1_index_ && idx == *h1_index_) return s_->h1;
  if (idx < base_size_ - 1) return R.constant(K.from_index(idx + 1));
  const std::uint64_t rest = idx - (base_size_ - 1);
  const std::uint64_t a1 = rest / base_size_ + 1, a0 = rest % base_size_;
  return R.make({K.from_index(a0), K.from_index(a1)});
}

DensePoly eval_product(const Setup& s, const FactorBase& fb, const SparseRelation& r) {
  const PolyRing R = s.base_ring();
  DensePoly acc = R.one();
  for (const auto& [idx, e] : r) {
    const BigNat ex = mod_floor(e, s.N);
    if (ex == 0) continue;
    acc = R.mulmod(acc, R.powmod(fb.element(idx), ex, s.I), s.I);
  }
  return R.rem(acc, s.I);
}

}  // namespace qpdlog
