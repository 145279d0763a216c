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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpdlog/errors.hpp"
#include "qpdlog/field.hpp"
#include "qpdlog/poly.hpp"
#include "qpdlog/rng.hpp"
#include "qpdlog/setup.hpp"

namespace qpdlog {

struct TrapReport {
  bool h1_root = false;
  bool level0 = false;          // Q | h1 X^q - h0
  bool level_kd = false;        // Q | h1 X^{q^{kDd+1}} - h0
  bool subfield_image = false;  // (h0/h1)(tau) in F_{q^{kDd}}
  bool degenerate = false;      // quadratic with a constant lattice vector

  bool good() const { return !(h1_root || level0 || level_kd || subfield_image || degenerate); }
  // Subfield images reduce to degenerate quadratics, which have a direct rewrite.
  bool eliminable() const { return !(h1_root || level0 || level_kd); }
  std::string describe() const;
};

// Raised when a quadratic cannot be eliminated because it is a trap.
class TrapError : public Error {
 public:
  enum class Kind { kLevel0, kLevelKd, kSubfieldImage, kH1Root };
  TrapError(Kind kind, TrapReport report);
  Kind kind() const { return kind_; }
  const TrapReport& report() const { return report_; }

 private:
  Kind kind_;
  TrapReport report_;
};

// Basis of {(w0, w1) : w0 h0 + w1 h1 = 0 mod Q} for an irreducible quadratic.
struct Lattice2 {
  LevelId level = 0;
  DensePoly Q;
  bool degenerate = false;
  // Nondegenerate: basis (1, u0 X + u1), (X, v0 X + v1).
  FieldElt u0, u1, v0, v1;
  // Degenerate: Q = w (w0 h0 + w1 h1) with constants w0, w1, w.
  FieldElt w0, w1, w;
};

struct StarConditionData {
  FieldElt aF, bF, cF, dF;  // -u0, u1 - v0, v1, -v0
  FieldElt rho1, rho2;      // roots of aF A^2 + bF A + cF in the quadratic extension
};

struct StarResult {
  bool star = false;      // rho1^q + aF rho2 + dF != 0
  bool starstar = false;  // rho1^q + aF rho1 + dF != 0
  StarConditionData data;
};

struct RewriteFactor {
  DensePoly poly;  // monic irreducible at the rewrite's level
  std::int64_t exp = 0;
};

// lhs = unit * h1^{h1_exp} * prod factor^{exp}, read in the target field after
// norming everything down to F_{q^k}.
struct Rewrite {
  LevelId level = 0;
  DensePoly lhs;
  std::vector<RewriteFactor> factors;
  std::int64_t h1_exp = 0;
  FieldElt unit;
  bool degenerate = false;
  std::optional<FieldElt> a;  // the successful candidate, when nondegenerate
  std::optional<FieldElt> B;
  std::uint64_t candidates = 0;
};

// A triple with (X + a, bX + c) in the lattice for which
// X^{q+1} + a X^q + b X + c splits with distinct roots.
struct SplitCandidate {
  FieldElt a, b, c, B;
  std::vector<FieldElt> roots;
};

enum class SearchPolicy { kRandom, kExhaustive, kBluherDriven };

std::string to_string(SearchPolicy p);
SearchPolicy parse_policy(const std::string& s);

struct ElimConfig {
  SearchPolicy policy = SearchPolicy::kRandom;
  // Successful candidates discarded for bad descendants before giving up.
  int descendant_retries = 64;
  // Random candidates per quadratic; 0 means 16 q^3 + 64.
  std::uint64_t random_trials = 0;
  // Exhaustive scans are allowed for levels of at most this size.
  std::uint64_t exhaustive_cap = std::uint64_t{1} << 16;
  // Levels of at most this size get a precomputed Bluher membership table.
  std::uint64_t table_cap = std::uint64_t{1} << 16;
  bool check_descendants = true;
};

// Degree-2 and degree-2d elimination over one setup. Thread-safe: the only
// mutable state is a lazily filled cache of Bluher tables.
class Eliminator {
 public:
  explicit Eliminator(const Setup& s, ElimConfig cfg = {});

  const Setup& setup() const { return *s_; }
  const ElimConfig& config() const { return cfg_; }
  const DensePoly& h0_at(LevelId level) const { return h0_.at(level); }
  const DensePoly& h1_at(LevelId level) const { return h1_.at(level); }

  Lattice2 lattice_basis(LevelId level, const DensePoly& Q) const;
  // Q irreducible of even degree at `level`.
  TrapReport trap_report(LevelId level, const DensePoly& Q) const;
  bool is_good(LevelId level, const DensePoly& Q) const { return trap_report(level, Q).good(); }
  // Needs the level of twice the degree in the tower.
  StarResult check_star_conditions(LevelId level, const DensePoly& Q) const;

  // Candidate test for one value of a; nullopt when the triple is rejected.
  std::optional<SplitCandidate> try_candidate(const Lattice2& lat, const FieldElt& a,
                                             Rng& rng) const;
  // Up to `want` distinct successful candidates from random a.
  std::vector<SplitCandidate> find_candidates(const Lattice2& lat, std::size_t want,
                                              std::uint64_t trials, Rng& rng) const;

  Rewrite eliminate_quadratic(LevelId level, const DensePoly& Q, Rng& rng) const;
  Rewrite eliminate_even(LevelId level, const DensePoly& Q, Rng& rng) const;

  // Exact target-field check of a rewrite's identity.
  bool verify_rewrite(const Rewrite& rw) const;

  // Whether a polynomial over F_{q^k} produced by an elimination can itself be
  // handled: linear, equal to h1, or irreducible good and not I.
  bool acceptable_descendant(const DensePoly& f) const;

 private:
  std::shared_ptr<const std::vector<bool>> table(LevelId level) const;
  std::optional<Rewrite> build_rewrite(const Lattice2& lat, const SplitCandidate& cand) const;
  Rewrite degenerate_rewrite(const Lattice2& lat) const;
  bool descendants_ok(const Rewrite& rw) const;
  // Runs the configured search; nullopt when every allowed candidate failed.
  std::optional<Rewrite> search(const Lattice2& lat, Rng& rng, std::uint64_t& tried) const;

  const Setup* s_;
  ElimConfig cfg_;
  std::vector<DensePoly> h0_, h1_;  // per level
  DensePoly h1_monic_;
  mutable std::mutex mu_;
  mutable std::map<LevelId, std::shared_ptr<const std::vector<bool>>> tables_;
};

}  // namespace qpdlog
