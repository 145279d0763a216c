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

#include "qpdlog/descent.hpp"

#include <chrono>

#include "qpdlog/codec.hpp"
#include "qpdlog/errors.hpp"
#include "qpdlog/factor.hpp"

namespace qpdlog {

namespace {

// Raised when a lift has used up its elimination budget; unlike
// BudgetExhausted it is not absorbed by node-level retries.
struct LiftAbandoned {};

using PolyKey = std::vector<std::uint32_t>;

PolyKey key_of(const DensePoly& f) {
  PolyKey k;
  for (const auto& c : f.c) k.insert(k.end(), c.c.begin(), c.c.end());
  return k;
}

struct Partial {
  std::map<std::uint64_t, BigNat> exps;
  FieldElt unit;
};

class Run {
 public:
  Run(const Eliminator& el, const FactorBase& fb, const DescentConfig& cfg, DescentStats& st,
      ProofLog& log)
      : el_(el), s_(el.setup()), fb_(fb), cfg_(cfg), st_(st), log_(log), K_(s_.base()),
        R_(K_), h1_monic_(R_.monic(s_.h1)) {}

  Partial decompose(const DensePoly& Q, int depth, const Rng& rng) {
    if (Q.degree() <= 1) return {{{*fb_.index_of(Q), BigNat(1)}}, K_.one()};
    if (fb_.h1_index() && Q == h1_monic_) {
      return {{{*fb_.h1_index(), BigNat(1)}}, K_.inv(s_.h1.lead())};
    }
    const PolyKey key = key_of(Q);
    if (auto it = cache_.find(key); it != cache_.end()) {
      ++st_.cache_hits;
      return it->second;
    }
    for (int attempt = 0; attempt <= cfg_.backtrack_budget; ++attempt) {
      if (attempt > 0) ++st_.backtracks;
      Rng r = rng.child(static_cast<std::uint64_t>(attempt));
      try {
        Partial out = expand(Q, depth, attempt, r);
        cache_.emplace(key, out);
        return out;
      } catch (const BudgetExhausted&) {
      }
    }
    throw BudgetExhausted("descent node exhausted its retries");
  }

 private:
  Partial expand(const DensePoly& Q, int depth, int attempt, Rng& r) {
    if (++elims_ > cfg_.elim_budget) throw LiftAbandoned{};
    Rewrite rw = el_.eliminate_even(s_.base_level(), Q, r);
    ++st_.eliminations;
    st_.candidates += rw.candidates;

    Partial out{{}, rw.unit};
    const std::uint64_t h1_idx = fb_.h1_index() ? *fb_.h1_index() : *fb_.index_of(s_.h1);
    if (rw.h1_exp != 0) out.exps[h1_idx] += rw.h1_exp;
    for (std::size_t i = 0; i < rw.factors.size(); ++i) {
      const auto& f = rw.factors[i];
      const Partial sub = decompose(f.poly, depth + 1, r.child(1000 + i));
      for (const auto& [idx, e] : sub.exps) {
        out.exps[idx] = mod_floor(out.exps[idx] + e * f.exp, s_.N);
      }
      out.unit = K_.mul(out.unit, K_.pow_signed(sub.unit, f.exp));
    }
    log_.steps.push_back({depth, attempt, std::move(rw)});
    return out;
  }

  const Eliminator& el_;
  const Setup& s_;
  const FactorBase& fb_;
  const DescentConfig& cfg_;
  DescentStats& st_;
  ProofLog& log_;
  const Field& K_;
  PolyRing R_;
  DensePoly h1_monic_;
  std::map<PolyKey, Partial> cache_;
  std::uint64_t elims_ = 0;
};

}  // namespace

DensePoly lift_candidate(const Setup& s, const DensePoly& z, int e, Rng& rng, FieldElt* scale) {
  const PolyRing R = s.base_ring();
  const int deg = (1 << e) - s.l;
  if (deg < 1) throw InvalidInput("lift degree must exceed l");
  const DensePoly r = R.random_monic(deg, rng);
  const FieldElt c = s.base().random_nonzero(rng);
  if (scale) *scale = c;
  return R.add(R.mul(s.I, r), R.scale(target_reduce(s, z), c));
}

Lift lift_target(const Eliminator& el, const DensePoly& z, int e, Rng& rng, std::uint64_t budget) {
  const Setup& s = el.setup();
  const PolyRing R = s.base_ring();
  if (target_reduce(s, z).is_zero()) throw InvalidInput("cannot lift zero");
  Lift out;
  for (std::uint64_t t = 0; t < budget; ++t) {
    ++out.tries;
    FieldElt c;
    DensePoly Q = lift_candidate(s, z, e, rng, &c);
    if (!is_irreducible(R, Q)) continue;
    if (!el.trap_report(s.base_level(), Q).eliminable()) continue;
    out.poly = std::move(Q);
    out.scale = std::move(c);
    return out;
  }
  throw BudgetExhausted("no irreducible eliminable lift within " + std::to_string(budget) +
                        " tries");
}

DescentResult descend(const Eliminator& el, const DensePoly& z, const DescentConfig& cfg,
                      Rng& rng) {
  const auto t0 = std::chrono::steady_clock::now();
  const Setup& s = el.setup();
  const Field& K = s.base();
  if (z.level != s.base_level()) throw InvalidInput("target element must be over F_{q^k}");
  if (target_reduce(s, z).is_zero()) throw InvalidInput("cannot descend zero");
  const int e = cfg.e > 0 ? cfg.e : min_lift_exponent(s.l);
  if ((1 << e) <= s.l) throw InvalidInput("lift degree must exceed l");
  if (!s.tower->has_level(1 << (e - 1))) {
    throw InvalidInput("tower too short for lift exponent " + std::to_string(e));
  }
  const FactorBase fb(s);

  DescentResult res;
  for (int restart = 0; restart <= cfg.restart_budget; ++restart) {
    Rng lift_rng = rng.child("lift", static_cast<std::uint64_t>(restart));
    Lift lift = lift_target(el, z, e, lift_rng, cfg.lift_budget);
    res.stats.lift_tries += lift.tries;
    ++res.stats.lifts;
    ProofLog log{lift.poly, lift.scale, {}};
    Run run(el, fb, cfg, res.stats, log);
    Partial p;
    try {
      p = run.decompose(lift.poly, 0, rng.child("tree", static_cast<std::uint64_t>(restart)));
    } catch (const BudgetExhausted&) {
      continue;
    } catch (const LiftAbandoned&) {
      continue;
    }
    // z = scale^{-1} lift = scale^{-1} unit prod F^e.
    const FieldElt c = K.mul(K.inv(lift.scale), p.unit);
    auto& exps = p.exps;
    const std::uint64_t ci = fb.constant_index(c);
    exps[ci] = mod_floor(exps[ci] + 1, s.N);
    for (auto& [idx, v] : exps) {
      v = mod_floor(v, s.N);
      if (v != 0) res.relation.emplace(idx, v);
    }
    if (!verify_relation(s, fb, z, res.relation)) {
      throw Error("internal: descent produced a relation that does not verify");
    }
    res.proof = std::move(log);
    res.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
  }
  throw BudgetExhausted("descent failed after " + std::to_string(cfg.restart_budget + 1) +
                        " lifts");
}

bool verify_relation(const Setup& s, const FactorBase& fb, const DensePoly& z,
                     const RelationVec& r) {
  SparseRelation sparse;
  for (const auto& [idx, e] : r) {
    if (idx >= fb.size()) return false;
    sparse.emplace_back(idx, e);
  }
  return eval_product(s, fb, sparse) == target_reduce(s, z);
}

bool replay_proof(const Eliminator& el, const DensePoly& z, const ProofLog& log) {
  const Setup& s = el.setup();
  const PolyRing R = s.base_ring();
  if (target_reduce(s, log.lift) != target_reduce(s, R.scale(z, log.scale))) return false;
  for (const auto& step : log.steps) {
    if (!el.verify_rewrite(step.rewrite)) return false;
  }
  return true;
}

nlohmann::json relation_to_json(const RelationVec& r) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [idx, e] : r) j[std::to_string(idx)] = to_string(e);
  return j;
}

RelationVec relation_from_json(const nlohmann::json& j, const BigNat& N) {
  RelationVec r;
  if (!j.is_object()) throw InvalidInput("relation must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    std::uint64_t idx = 0;
    try {
      idx = std::stoull(k);
    } catch (const std::exception&) {
      throw InvalidInput("bad factor-base index '" + k + "'");
    }
    const BigNat e = mod_floor(v.is_string() ? parse_bignat(v.get<std::string>())
                                             : BigNat(v.get<std::int64_t>()),
                               N);
    if (e != 0) r[idx] = e;
  }
  return r;
}

nlohmann::json rewrite_to_json(const FieldTower& tower, const Rewrite& rw) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : rw.factors) {
    factors.push_back({{"poly", encode_poly(tower, f.poly)}, {"exp", f.exp}});
  }
  nlohmann::json j = {
      {"level", tower.rel_degree(rw.level)},
      {"lhs", encode_poly(tower, rw.lhs)},
      {"factors", factors},
      {"h1_exp", rw.h1_exp},
      {"unit", encode_element(tower, rw.unit)},
      {"degenerate", rw.degenerate},
      {"candidates", rw.candidates},
  };
  if (rw.a) j["a"] = encode_element(tower, *rw.a);
  if (rw.B) j["B"] = encode_element(tower, *rw.B);
  return j;
}

nlohmann::json proof_to_json(const FieldTower& tower, const ProofLog& log) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& st : log.steps) {
    auto j = rewrite_to_json(tower, st.rewrite);
    j["depth"] = st.depth;
    j["attempt"] = st.attempt;
    steps.push_back(std::move(j));
  }
  return {{"lift", encode_poly(tower, log.lift)},
          {"scale", encode_element(tower, log.scale)},
          {"steps", steps}};
}

nlohmann::json stats_to_json(const DescentStats& st) {
  return {{"lift_tries", st.lift_tries},     {"lifts", st.lifts},
          {"eliminations", st.eliminations}, {"backtracks", st.backtracks},
          {"cache_hits", st.cache_hits},     {"candidates", st.candidates},
          {"wall_ms", st.wall_ms}};
}

}  // namespace qpdlog
