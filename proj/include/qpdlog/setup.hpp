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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpdlog/bignat.hpp"
#include "qpdlog/field.hpp"
#include "qpdlog/poly.hpp"
#include "qpdlog/rng.hpp"

namespace qpdlog {

enum class Flavor { kKummer, kGeneral };

std::string to_string(Flavor f);

// The field setup: coprime h0, h1 of degree <= 2 over F_{q^k} and a degree-l
// irreducible factor I of h1 X^q - h0. The target field is F_{q^k}[X]/(I).
struct Setup {
  std::shared_ptr<const FieldTower> tower;
  Flavor flavor = Flavor::kGeneral;
  DensePoly h0;
  DensePoly h1;
  DensePoly I;
  int l = 0;
  BigNat N;  // q^{kl} - 1

  std::uint64_t q() const { return tower->q(); }
  int k() const { return tower->k(); }
  LevelId base_level() const { return tower->base_level(); }
  const Field& base() const { return tower->field(base_level()); }
  PolyRing base_ring() const { return PolyRing(base()); }
  // h1 X^q - h0 at level 1.
  DensePoly frobenius_relation() const;
};

// Smallest e with 2^e > 4l.
int min_lift_exponent(int l);
// Tower height needed to run descents with lift exponent e.
int default_emax(int l);

std::shared_ptr<const FieldTower> build_setup_tower(std::uint32_t p, int i, int k, int l,
                                                    TowerOptions opts = {});

// h1 = 1, h0 = aX, I = X^{q-1} - a with the least a (by index) that makes I
// irreducible.
Setup make_kummer(std::shared_ptr<const FieldTower> tower);

struct SearchStats {
  std::uint64_t trials = 0;
  std::uint64_t coprime = 0;
  std::uint64_t hits = 0;
};

// Random (h0, h1) stratified by deg h1; returns the first hit or nullopt
// after `budget` trials.
std::optional<Setup> search_general(std::shared_ptr<const FieldTower> tower, int l, Rng& rng,
                                    std::uint64_t budget, SearchStats* stats = nullptr);

// Every violated invariant, as readable text; empty means valid.
std::vector<std::string> validate_setup(const Setup& s);
// Notes for parameters outside the regime where the theory applies.
std::vector<std::string> guardrail_warnings(const Setup& s);

nlohmann::json setup_to_json(const Setup& s);
// Rebuilds the tower, checks the stored defining polynomials and re-validates.
Setup setup_from_json(const nlohmann::json& j, TowerOptions opts = {});

// --- target field F_{q^{kl}} = F_{q^k}[X]/(I) ------------------------------

DensePoly target_reduce(const Setup& s, const DensePoly& f);
DensePoly target_mul(const Setup& s, const DensePoly& a, const DensePoly& b);
DensePoly target_pow(const Setup& s, const DensePoly& a, const BigNat& e);
DensePoly target_inv(const Setup& s, const DensePoly& a);
DensePoly target_random_nonzero(const Setup& s, Rng& rng);
bool target_is_one(const Setup& s, const DensePoly& a);

// --- factor base -------------------------------------------------------------

// All nonzero polynomials of degree <= 1 over F_{q^k} (constants first, then
// linear ones by leading then constant coefficient), then h1 if deg h1 = 2.
// Elements are computed from their position, never stored.
class FactorBase {
 public:
  explicit FactorBase(const Setup& s);

  std::uint64_t size() const { return size_; }
  std::optional<std::uint64_t> index_of(const DensePoly& f) const;
  DensePoly element(std::uint64_t idx) const;
  // Position of the constant c (nonzero).
  std::uint64_t constant_index(const FieldElt& c) const;
  std::optional<std::uint64_t> h1_index() const { return h1_index_; }

 private:
  const Setup* s_;
  std::uint64_t base_size_;  // q^k
  std::uint64_t size_;
  std::optional<std::uint64_t> h1_index_;
};

using SparseRelation = std::vector<std::pair<std::uint64_t, BigNat>>;

// prod element(j)^{e_j} reduced mod I.
DensePoly eval_product(const Setup& s, const FactorBase& fb, const SparseRelation& r);

}  // namespace qpdlog
