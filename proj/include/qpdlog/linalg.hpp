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
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpdlog/bignat.hpp"

namespace qpdlog {

// Entries are kept as least residues in 32-bit words. N < 2^31 keeps two
// products and their sum inside 64 bits.
using ZnVector = std::vector<std::uint32_t>;

class ZnMatrix {
 public:
  ZnMatrix() = default;
  ZnMatrix(const BigNat& N, std::size_t rows, std::size_t cols);

  const BigNat& N() const { return N_; }
  std::uint32_t modulus() const { return n_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const BigNat& v);
  void set(std::size_t i, std::size_t j, std::uint64_t v) { data_[i * cols_ + j] = v % n_; }

  std::uint32_t* row(std::size_t i) { return data_.data() + i * cols_; }
  const std::uint32_t* row(std::size_t i) const { return data_.data() + i * cols_; }

  bool row_is_zero(std::size_t i) const;

  friend bool operator==(const ZnMatrix&, const ZnMatrix&) = default;

 private:
  BigNat N_;
  std::uint32_t n_ = 1;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint32_t> data_;
};

// swap(i, j), or (r_i, r_j) <- (s r_i + t r_j, s2 r_i + t2 r_j).
struct RowOp {
  enum class Kind : std::uint8_t { kSwap, kCombine };
  Kind kind = Kind::kSwap;
  std::uint32_t i = 0, j = 0;
  std::uint32_t s = 1, t = 0, s2 = 0, t2 = 1;
};

using TransformLog = std::vector<RowOp>;

// s t2 - t s2 is +1 or -1 mod n; swaps always are.
bool is_unimodular(const RowOp& op, std::uint32_t n);

void apply_op(const RowOp& op, ZnMatrix& m);
void apply_op(const RowOp& op, ZnVector& v, std::uint32_t n);
void apply_log(const TransformLog& log, ZnMatrix& m);
void apply_log(const TransformLog& log, ZnVector& v, std::uint32_t n);

struct EchelonResult {
  ZnMatrix R;
  std::vector<ZnVector> carried;
  TransformLog log;        // empty unless requested
  std::size_t zero_rows = 0;  // rows 0 .. zero_rows-1 are zero
  std::size_t ops = 0;
};

// Columns right to left. Each column's active entries are folded into the
// bottom active row, which then retires; a unit entry is used as the pivot
// when one exists. Zero rows end up on top.
EchelonResult lower_row_echelon(ZnMatrix R, std::vector<ZnVector> carried, bool record_log);

struct FinalSolve {
  std::optional<BigNat> x;  // alpha + x beta = 0 mod N
  BigNat gcd;               // gcd(beta, N)
};

FinalSolve solve_final(const BigNat& alpha1, const BigNat& beta1, const BigNat& N);

nlohmann::json log_to_json(const TransformLog& log);
TransformLog log_from_json(const nlohmann::json& j);

}  // namespace qpdlog
