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

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qpdlog/field.hpp"
#include "qpdlog/poly.hpp"

namespace qpdlog {

// Element text form "p^m:[c0,c1,...]".
std::string encode_element(const FieldTower& tower, const FieldElt& x);
FieldElt decode_element(const FieldTower& tower, std::string_view text);

// Polynomials are JSON arrays of element strings, little-endian. An empty
// array is the zero polynomial at `zero_level`; for nonempty input all
// coefficients must share one level, which must equal `expect` when given.
nlohmann::json encode_poly(const FieldTower& tower, const DensePoly& f);
DensePoly decode_poly(const FieldTower& tower, const nlohmann::json& j, LevelId zero_level,
                      std::optional<LevelId> expect = std::nullopt);

// Compact human form, e.g. "X^2 + (2T+1)X + 1", for logs and CLI output.
std::string format_poly(const FieldTower& tower, const DensePoly& f);

}  // namespace qpdlog
