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

#include "qpdlog/codec.hpp"

#include <charconv>
#include <sstream>

#include "qpdlog/errors.hpp"

namespace qpdlog {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidInput("bad " + std::string(what) + " in element encoding: '" + std::string(s) +
                       "'");
  }
  return v;
}

}  // namespace

std::string encode_element(const FieldTower& tower, const FieldElt& x) {
  const Field& K = tower.field(x.level);
  K.check(x);
  std::string out = std::to_string(K.p()) + "^" + std::to_string(K.degree()) + ":[";
  for (std::size_t j = 0; j < x.c.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(x.c[j]);
  }
  out += ']';
  return out;
}

FieldElt decode_element(const FieldTower& tower, std::string_view text) {
  const auto caret = text.find('^');
  const auto colon = text.find(':');
  if (caret == std::string_view::npos || colon == std::string_view::npos || colon < caret) {
    throw InvalidInput("element encoding must look like p^m:[c0,...]");
  }
  const std::uint64_t p = parse_uint(text.substr(0, caret), "characteristic");
  const std::uint64_t m = parse_uint(text.substr(caret + 1, colon - caret - 1), "degree");
  if (p != tower.p()) throw InvalidInput("element characteristic does not match the tower");
  auto level = tower.level_by_degree(static_cast<int>(m));
  if (!level) throw InvalidInput("no tower level of degree " + std::to_string(m));
  std::string_view body = trim(text.substr(colon + 1));
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw InvalidInput("element coefficients must be bracketed");
  }
  body = body.substr(1, body.size() - 2);
  std::vector<std::uint32_t> c;
  while (!trim(body).empty()) {
    const auto comma = body.find(',');
    const std::uint64_t v = parse_uint(body.substr(0, comma), "coefficient");
    if (v >= p) throw InvalidInput("coefficient not reduced mod p");
    c.push_back(static_cast<std::uint32_t>(v));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  if (c.size() != m) throw InvalidInput("element has wrong number of coefficients");
  return tower.field(*level).from_coeffs(c);
}

nlohmann::json encode_poly(const FieldTower& tower, const DensePoly& f) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& a : f.c) j.push_back(encode_element(tower, a));
  return j;
}

DensePoly decode_poly(const FieldTower& tower, const nlohmann::json& j, LevelId zero_level,
                      std::optional<LevelId> expect) {
  if (!j.is_array()) throw InvalidInput("polynomial must be a JSON array");
  DensePoly f{expect.value_or(zero_level), {}};
  for (const auto& e : j) {
    if (!e.is_string()) throw InvalidInput("polynomial coefficients must be strings");
    FieldElt a = decode_element(tower, e.get<std::string>());
    if (f.c.empty() && !expect) f.level = a.level;
    if (a.level != f.level) throw InvalidInput("polynomial coefficients at mixed levels");
    f.c.push_back(std::move(a));
  }
  const PolyRing ring(tower.field(f.level));
  if (!f.c.empty() && tower.field(f.level).is_zero(f.c.back())) {
    throw InvalidInput("polynomial encoding has a zero leading coefficient");
  }
  ring.check(f);
  return f;
}

std::string format_poly(const FieldTower& tower, const DensePoly& f) {
  if (f.is_zero()) return "0";
  const Field& K = tower.field(f.level);
  auto elt = [&](const FieldElt& a) {
    std::ostringstream os;
    bool first = true;
    int terms = 0;
    for (int j = K.degree() - 1; j >= 0; --j) {
      if (!a.c[j]) continue;
      ++terms;
      if (!first) os << '+';
      first = false;
      if (j == 0 || a.c[j] != 1) os << a.c[j];
      if (j >= 1) os << 'T';
      if (j >= 2) os << '^' << j;
    }
    std::string s = os.str();
    return terms > 1 ? "(" + s + ")" : s;
  };
  std::ostringstream os;
  bool first = true;
  for (int d = f.degree(); d >= 0; --d) {
    const FieldElt& a = f.c[d];
    if (K.is_zero(a)) continue;
    if (!first) os << " + ";
    first = false;
    if (d == 0 || !K.is_one(a)) os << elt(a);
    if (d >= 1) os << 'X';
    if (d >= 2) os << '^' << d;
  }
  return os.str();
}

}  // namespace qpdlog
