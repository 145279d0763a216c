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
#include <vector>

#include <nlohmann/json.hpp>

#include "qpdlog/bignat.hpp"
#include "qpdlog/elim.hpp"
#include "qpdlog/rng.hpp"
#include "qpdlog/setup.hpp"

namespace qpdlog {

struct DescentConfig {
  int e = 0;  // lift degree 2^e; 0 picks the least e with 2^e > 4l
  std::uint64_t lift_budget = 100000;   // candidate lifts per attempt
  std::uint64_t elim_budget = 200000;   // eliminations per lift before giving it up
  int backtrack_budget = 4;             // extra attempts per node
  int restart_budget = 16;              // fresh lifts per descent
};

// Factor-base index -> exponent mod N. Zero exponents are never stored.
using RelationVec = std::map<std::uint64_t, BigNat>;

struct ProofStep {
  int depth = 0;
  int attempt = 0;
  Rewrite rewrite;  // at the base level
};

struct ProofLog {
  DensePoly lift;    // monic irreducible; lift = scale * z mod I
  FieldElt scale;
  std::vector<ProofStep> steps;  // every elimination performed, failed subtrees included
};

struct DescentStats {
  std::uint64_t lift_tries = 0;
  std::uint64_t lifts = 0;
  std::uint64_t eliminations = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t candidates = 0;  // split candidates tried, summed over eliminations
  double wall_ms = 0;
};

struct DescentResult {
  RelationVec relation;
  ProofLog proof;
  DescentStats stats;
};

struct Lift {
  DensePoly poly;
  FieldElt scale;
  std::uint64_t tries = 0;
};

// I r + c z for random monic r of degree 2^e - l and random nonzero c.
DensePoly lift_candidate(const Setup& s, const DensePoly& z, int e, Rng& rng, FieldElt* scale);

// First candidate that is irreducible and eliminable.
Lift lift_target(const Eliminator& el, const DensePoly& z, int e, Rng& rng, std::uint64_t budget);

// z != 0 in the target field, given by any representative over F_{q^k}.
// The returned relation is always verified.
DescentResult descend(const Eliminator& el, const DensePoly& z, const DescentConfig& cfg, Rng& rng);

bool verify_relation(const Setup& s, const FactorBase& fb, const DensePoly& z,
                     const RelationVec& r);

// Re-checks every rewrite of the log, and the lift identity.
bool replay_proof(const Eliminator& el, const DensePoly& z, const ProofLog& log);

nlohmann::json relation_to_json(const RelationVec& r);
RelationVec relation_from_json(const nlohmann::json& j, const BigNat& N);
nlohmann::json rewrite_to_json(const FieldTower& tower, const Rewrite& rw);
nlohmann::json proof_to_json(const FieldTower& tower, const ProofLog& log);
nlohmann::json stats_to_json(const DescentStats& st);

}  // namespace qpdlog
