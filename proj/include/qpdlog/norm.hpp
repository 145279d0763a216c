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

#include <optional>

#include "qpdlog/field.hpp"
#include "qpdlog/poly.hpp"

namespace qpdlog {

DensePoly embed_poly(const FieldTower& tower, const DensePoly& f, LevelId to);
// Coefficient-wise restriction; nullopt when some coefficient is not in `to`.
std::optional<DensePoly> restrict_poly(const FieldTower& tower, const DensePoly& f, LevelId to);

// Product of the conjugates of f under Gal(level(f) / target), with
// coefficients in `target`. The target's degree must divide f's.
DensePoly norm_to_base(const FieldTower& tower, const DensePoly& f, LevelId target);

// Minimal polynomial of r over the level `over` (monic, irreducible there).
DensePoly min_poly(const FieldTower& tower, const FieldElt& r, LevelId over);

// Absolute degree of the smallest subfield (among divisors of the level's
// degree) that contains the coefficients of f and has degree divisible by
// `base_degree`.
int coefficient_field_degree(const FieldTower& tower, const DensePoly& f, int base_degree);

}  // namespace qpdlog
