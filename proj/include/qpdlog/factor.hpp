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

#include <vector>

#include "qpdlog/poly.hpp"
#include "qpdlog/rng.hpp"

namespace qpdlog {

struct FactorPower {
  DensePoly poly;  // monic irreducible
  int multiplicity;
};

struct Factorization {
  FieldElt unit;  // leading coefficient of the input
  std::vector<FactorPower> factors;  // sorted by PolyRing::compare
};

// Squarefree decomposition of a monic polynomial: pairs (g_j, j) with g_j
// squarefree, pairwise coprime and f = prod g_j^j.
std::vector<FactorPower> squarefree_decomposition(const PolyRing& ring, const DensePoly& f);

// For squarefree monic f: pairs (g_d, d) where g_d is the product of the
// irreducible factors of degree d.
std::vector<FactorPower> distinct_degree(const PolyRing& ring, const DensePoly& f);

// Splits a squarefree monic f whose irreducible factors all have degree r.
std::vector<DensePoly> equal_degree(const PolyRing& ring, const DensePoly& f, int r, Rng& rng);

// One nontrivial factor of a squarefree monic f whose irreducible factors
// all have degree r (f must have at least two of them).
DensePoly split_equal_degree_once(const PolyRing& ring, const DensePoly& f, int r, Rng& rng);

Factorization factor(const PolyRing& ring, const DensePoly& f, Rng& rng);

bool is_irreducible(const PolyRing& ring, const DensePoly& f);

// Every irreducible factor is linear (repeated roots allowed).
bool splits_completely(const PolyRing& ring, const DensePoly& f);

// f divides X^{|K|} - X, i.e. f splits with distinct roots.
bool splits_distinct(const PolyRing& ring, const DensePoly& f);

// Roots with multiplicity, sorted by Field::compare.
std::vector<FieldElt> roots(const PolyRing& ring, const DensePoly& f, Rng& rng);
std::vector<FieldElt> distinct_roots(const PolyRing& ring, const DensePoly& f, Rng& rng);

// Monic irreducible of the given degree, sampled uniformly.
DensePoly random_irreducible(const PolyRing& ring, int degree, Rng& rng, int max_attempts = 100000);

}  // namespace qpdlog
