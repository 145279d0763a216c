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
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "qpdlog/bignat.hpp"
#include "qpdlog/rng.hpp"

namespace qpdlog {

// Hard ceiling on the absolute degree of any level (stack buffers are sized
// from it). The configurable arithmetic budget must not exceed it.
inline constexpr int kMaxAbsDegree = 256;
inline constexpr int kDefaultDegreeBudget = 128;

using Coeffs = boost::container::small_vector<std::uint32_t, 16>;

// Position of a level in its tower's chain of fields, ordered by degree.
using LevelId = std::uint8_t;

// Element of one tower level: coefficients over F_p, little-endian in the
// level generator. Length always equals the level's absolute degree.
struct FieldElt {
  LevelId level = 0;
  Coeffs c;

  friend bool operator==(const FieldElt& a, const FieldElt& b) {
    return a.level == b.level && a.c == b.c;
  }
};

// F_p[T]/(f) for a monic irreducible f. Elements are value types; the field
// itself is immutable after construction and safe to share between threads.
class Field {
 public:
  // `modulus` is monic of degree >= 1, little-endian, entries reduced mod p.
  // `q_exp` is i in q = p^i.
  Field(std::uint32_t p, int q_exp, std::vector<std::uint32_t> modulus, LevelId id);

  std::uint32_t p() const { return p_; }
  int degree() const { return m_; }
  int q_exponent() const { return q_exp_; }
  // log_q |K|, or 0 when F_q is not a subfield.
  int q_degree() const { return m_ % q_exp_ == 0 ? m_ / q_exp_ : 0; }
  LevelId id() const { return id_; }
  const BigNat& order() const { return order_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  // True when |K| fits an index (enumeration helpers below).
  bool enumerable() const { return m_ * log2p_ < 63.0; }

  FieldElt zero() const;
  FieldElt one() const;
  FieldElt from_int(std::int64_t v) const;
  FieldElt from_coeffs(std::span<const std::uint32_t> c) const;
  FieldElt generator() const;
  FieldElt from_index(std::uint64_t idx) const;
  std::uint64_t index_of(const FieldElt& x) const;

  bool is_zero(const FieldElt& x) const;
  bool is_one(const FieldElt& x) const;

  FieldElt add(const FieldElt& a, const FieldElt& b) const;
  FieldElt sub(const FieldElt& a, const FieldElt& b) const;
  FieldElt neg(const FieldElt& a) const;
  FieldElt mul(const FieldElt& a, const FieldElt& b) const;
  FieldElt sqr(const FieldElt& a) const { return mul(a, a); }
  FieldElt scale(const FieldElt& a, std::uint32_t s) const;
  FieldElt inv(const FieldElt& a) const;
  FieldElt div(const FieldElt& a, const FieldElt& b) const { return mul(a, inv(b)); }
  FieldElt pow(const FieldElt& a, const BigNat& e) const;
  FieldElt pow(const FieldElt& a, std::uint64_t e) const;
  // a^e for a signed exponent; a must be nonzero when e < 0.
  FieldElt pow_signed(const FieldElt& a, std::int64_t e) const;

  // a^{q^j}.
  FieldElt frob(const FieldElt& a, std::uint64_t j = 1) const;
  // a^{p^s}.
  FieldElt frob_pow(const FieldElt& a, std::uint64_t s) const;
  // a^{1/q}.
  FieldElt frob_inv(const FieldElt& a) const;
  // a lies in the subfield of absolute degree `sub_degree` (which divides m).
  bool in_subfield(const FieldElt& a, int sub_degree) const;

  FieldElt random(Rng& rng) const;
  FieldElt random_nonzero(Rng& rng) const;

  // Lexicographic order, high-degree coefficient first.
  int compare(const FieldElt& a, const FieldElt& b) const;

  // Lazy-reduction kernels. An accumulator has acc_size() slots; mul_acc adds
  // the unreduced product a*b. acc_headroom() products may be accumulated
  // before reduce_into must be called.
  int acc_size() const { return 2 * m_ - 1; }
  std::uint64_t acc_headroom() const { return headroom_; }
  void mul_acc(std::uint64_t* acc, const std::uint32_t* a, const std::uint32_t* b) const;
  void reduce_into(std::uint64_t* acc, std::uint32_t* out) const;
  FieldElt reduce(std::uint64_t* acc) const;
  // Partial reduction mod p that restores full headroom.
  void fold_acc(std::uint64_t* acc) const;

  std::uint32_t inv_p(std::uint32_t v) const { return inv_table_[v]; }

  void check(const FieldElt& x) const;

 private:
  void apply_matrix(const std::vector<std::uint32_t>& mat, const std::uint32_t* in,
                    std::uint32_t* out) const;
  FieldElt apply_matrix(const std::vector<std::uint32_t>& mat, const FieldElt& a) const;

  std::uint32_t p_;
  int q_exp_;
  int m_;
  LevelId id_;
  double log2p_;
  std::vector<std::uint32_t> modulus_;
  // Nonzero low terms of -modulus: T^m = sum neg_terms_[t].second * T^first.
  std::vector<std::pair<int, std::uint32_t>> neg_terms_;
  BigNat order_;
  std::uint64_t headroom_;
  std::vector<std::uint32_t> inv_table_;
  // Column j holds the image of T^j; m*m entries each.
  std::vector<std::uint32_t> frob_p_mat_;
  std::vector<std::uint32_t> frob_q_mat_;
};

struct TowerOptions {
  int degree_budget = kDefaultDegreeBudget;
};

// The chain F_p ⊂ F_q ⊂ F_{q^k} ⊂ F_{q^{2k}} ⊂ ... ⊂ F_{q^{k 2^emax}} with
// deterministic defining polynomials and embeddings between adjacent members.
class FieldTower {
 public:
  static std::shared_ptr<const FieldTower> build(std::uint32_t p, int i, int k, int emax,
                                                 TowerOptions opts = {});

  std::uint32_t p() const { return p_; }
  int i() const { return i_; }
  int k() const { return k_; }
  int emax() const { return emax_; }
  std::uint64_t q() const { return q_; }

  LevelId prime_level() const { return 0; }
  LevelId q_level() const { return q_level_; }
  LevelId base_level() const { return level(1); }
  // Level F_{q^{kD}}, D a power of two not above 2^emax.
  LevelId level(int D) const;
  bool has_level(int D) const;
  // D for levels at or above the base level, 0 for F_p / F_q below it.
  int rel_degree(LevelId id) const;

  std::size_t num_levels() const { return fields_.size(); }
  const Field& field(LevelId id) const { return fields_.at(id); }
  const Field& at(int D) const { return field(level(D)); }
  std::optional<LevelId> level_by_degree(int abs_degree) const;

  // Image of x in a level of larger or equal degree.
  FieldElt embed(const FieldElt& x, LevelId to) const;
  // Preimage of x in a smaller level, if x lies in it.
  std::optional<FieldElt> restrict_to(const FieldElt& x, LevelId to) const;
  // Image of the generator of `from` in level from+1.
  const FieldElt& embedding_root(LevelId from) const { return roots_.at(from); }

 private:
  struct Restriction {
    std::vector<int> rows;              // pivot rows of the embedding matrix
    std::vector<std::uint32_t> inverse;  // m_small x m_small, row-major
  };

  FieldTower() = default;
  FieldElt embed_step(const FieldElt& x) const;
  std::optional<FieldElt> restrict_step(const FieldElt& x) const;

  std::uint32_t p_ = 0;
  int i_ = 0;
  int k_ = 0;
  int emax_ = 0;
  std::uint64_t q_ = 0;
  LevelId q_level_ = 0;
  std::vector<Field> fields_;
  std::vector<LevelId> d_levels_;  // d_levels_[e] = level(2^e)
  std::vector<FieldElt> roots_;
  std::vector<std::vector<std::uint32_t>> up_;  // column j = image of T^j
  std::vector<Restriction> down_;
};

bool is_prime_u32(std::uint32_t n);

// Lexicographically least monic irreducible polynomial of degree m over F_p,
// coefficients compared high-degree-first. Little-endian result.
std::vector<std::uint32_t> least_irreducible(std::uint32_t p, int m);

}  // namespace qpdlog
