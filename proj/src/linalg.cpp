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

#include "qpdlog/linalg.hpp"

#include <numeric>

#include "qpdlog/errors.hpp"

namespace qpdlog {

namespace {

// Barrett reduction of 64-bit values by a fixed 32-bit modulus.
struct Reducer {
  std::uint64_t n;
  unsigned __int128 mu;  // floor(2^64 / n)

  explicit Reducer(std::uint32_t m)
      : n(m), mu((static_cast<unsigned __int128>(1) << 64) / m) {}

  std::uint32_t operator()(std::uint64_t x) const {
    const auto q = static_cast<std::uint64_t>((x * mu) >> 64);
    std::uint64_t r = x - q * n;
    if (r >= n) r -= n;
    return static_cast<std::uint32_t>(r);
  }
};

std::uint32_t to_u32(const BigNat& v, const BigNat& N) {
  return static_cast<std::uint32_t>(mod_floor(v, N));
}

// s x + t y = g over the integers, x, y >= 0 not both zero.
void xgcd_u64(std::int64_t x, std::int64_t y, std::int64_t& g, std::int64_t& s, std::int64_t& t) {
  std::int64_t r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  g = r0;
  s = s0;
  t = t0;
}

std::uint32_t inv_u32(std::uint32_t a, std::uint32_t n) {
  std::int64_t g, s, t;
  xgcd_u64(a, n, g, s, t);
  s %= static_cast<std::int64_t>(n);
  if (s < 0) s += n;
  return static_cast<std::uint32_t>(s);
}

void combine_rows(std::uint32_t* a, std::uint32_t* b, std::size_t len, const RowOp& op,
                  const Reducer& red) {
  for (std::size_t k = 0; k < len; ++k) {
    const std::uint64_t x = a[k], y = b[k];
    if ((x | y) == 0) continue;
    a[k] = red(op.s * x + op.t * y);
    b[k] = red(op.s2 * x + op.t2 * y);
  }
}

class Echelon {
 public:
  Echelon(EchelonResult& out, bool record)
      : out_(out), record_(record), n_(out.R.modulus()), red_(n_) {}

  void run() {
    ZnMatrix& R = out_.R;
    const std::size_t rows = R.rows();
    if (rows == 0) return;
    std::size_t bottom = rows;  // rows [0, bottom) are active
    std::vector<std::uint32_t> hits;
    std::vector<std::uint32_t> nz;
    for (std::size_t jj = R.cols(); jj-- > 0 && bottom > 0;) {
      hits.clear();
      for (std::size_t i = 0; i < bottom; ++i) {
        if (R.at(i, jj)) hits.push_back(static_cast<std::uint32_t>(i));
      }
      if (hits.empty()) continue;
      const std::uint32_t b = static_cast<std::uint32_t>(bottom - 1);
      const std::size_t len = jj + 1;

      // Prefer a unit pivot, taken from the bottom of the active block.
      std::optional<std::uint32_t> unit;
      for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
        if (std::gcd(R.at(*it, jj), n_) == 1) {
          unit = *it;
          break;
        }
      }
      if (unit) {
        if (*unit != b) {
          emit({RowOp::Kind::kSwap, *unit, b});
          std::swap_ranges(R.row(*unit), R.row(*unit) + len, R.row(b));
          hits.clear();
          for (std::size_t i = 0; i < bottom; ++i) {
            if (R.at(i, jj)) hits.push_back(static_cast<std::uint32_t>(i));
          }
        }
        const std::uint32_t* p = R.row(b);
        nz.clear();
        for (std::size_t k = 0; k < jj; ++k) {
          if (p[k]) nz.push_back(static_cast<std::uint32_t>(k));
        }
        const std::uint32_t uinv = inv_u32(p[jj], n_);
        for (const std::uint32_t i : hits) {
          if (i == b) continue;
          std::uint32_t* r = R.row(i);
          const std::uint32_t c = red(std::uint64_t{r[jj]} * uinv);
          const std::uint64_t f = c ? n_ - c : 0;
          RowOp op{RowOp::Kind::kCombine, i, b, 1, static_cast<std::uint32_t>(f), 0, 1};
          for (const std::uint32_t k : nz) r[k] = red(r[k] + f * p[k]);
          r[jj] = 0;
          emit(op);
        }
      } else {
        for (const std::uint32_t i : hits) {
          if (i == b) continue;
          std::uint32_t* r = R.row(i);
          std::uint32_t* p = R.row(b);
          const std::uint32_t x = r[jj], y = p[jj];
          if (y == 0) {
            emit({RowOp::Kind::kSwap, i, b});
            std::swap_ranges(r, r + len, p);
            continue;
          }
          std::int64_t g, s, t;
          xgcd_u64(x, y, g, s, t);
          const std::int64_t sn = static_cast<std::int64_t>(n_);
          auto red_signed = [&](std::int64_t v) {
            v %= sn;
            return static_cast<std::uint32_t>(v < 0 ? v + sn : v);
          };
          const std::uint32_t xg = static_cast<std::uint32_t>(x / g);
          const RowOp op{RowOp::Kind::kCombine, i, b,
                         static_cast<std::uint32_t>((y / g) % n_),
                         xg % n_ ? n_ - xg % n_ : 0,
                         red_signed(s), red_signed(t)};
          combine_rows(r, p, len, op, red_);
          emit(op);
        }
      }
      bottom = b;
    }
    out_.zero_rows = bottom;
  }

 private:
  std::uint32_t red(std::uint64_t x) const { return red_(x); }

  void emit(const RowOp& op) {
    ++out_.ops;
    for (auto& v : out_.carried) apply_op(op, v, n_);
    if (record_) out_.log.push_back(op);
  }

  EchelonResult& out_;
  bool record_;
  std::uint32_t n_;
  Reducer red_;
};

}  // namespace

ZnMatrix::ZnMatrix(const BigNat& N, std::size_t rows, std::size_t cols)
    : N_(N), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (N < 2 || msb_or_zero(N) >= 31) throw InvalidInput("matrix modulus must lie in [2, 2^31)");
  n_ = static_cast<std::uint32_t>(N);
}

void ZnMatrix::set(std::size_t i, std::size_t j, const BigNat& v) {
  data_[i * cols_ + j] = to_u32(v, N_);
}

bool ZnMatrix::row_is_zero(std::size_t i) const {
  const std::uint32_t* r = row(i);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (r[j]) return false;
  }
  return true;
}

bool is_unimodular(const RowOp& op, std::uint32_t n) {
  if (op.kind == RowOp::Kind::kSwap) return op.i != op.j;
  if (op.i == op.j) return false;
  const BigNat det = mod_floor(BigNat(op.s) * op.t2 - BigNat(op.t) * op.s2, BigNat(n));
  return det == 1 || det == BigNat(n) - 1;
}

void apply_op(const RowOp& op, ZnMatrix& m) {
  std::uint32_t* a = m.row(op.i);
  std::uint32_t* b = m.row(op.j);
  if (op.kind == RowOp::Kind::kSwap) {
    std::swap_ranges(a, a + m.cols(), b);
    return;
  }
  combine_rows(a, b, m.cols(), op, Reducer(m.modulus()));
}

void apply_op(const RowOp& op, ZnVector& v, std::uint32_t n) {
  if (op.kind == RowOp::Kind::kSwap) {
    std::swap(v[op.i], v[op.j]);
    return;
  }
  const std::uint64_t x = v[op.i], y = v[op.j];
  v[op.i] = static_cast<std::uint32_t>((op.s * x + op.t * y) % n);
  v[op.j] = static_cast<std::uint32_t>((op.s2 * x + op.t2 * y) % n);
}

void apply_log(const TransformLog& log, ZnMatrix& m) {
  for (const auto& op : log) apply_op(op, m);
}

void apply_log(const TransformLog& log, ZnVector& v, std::uint32_t n) {
  for (const auto& op : log) apply_op(op, v, n);
}

EchelonResult lower_row_echelon(ZnMatrix R, std::vector<ZnVector> carried, bool record_log) {
  for (const auto& v : carried) {
    if (v.size() != R.rows()) throw InvalidInput("carried vector length must match row count");
    for (auto x : v) {
      if (x >= R.modulus()) throw InvalidInput("carried vector entries must be reduced");
    }
  }
  EchelonResult out;
  out.R = std::move(R);
  out.carried = std::move(carried);
  Echelon(out, record_log).run();
  return out;
}

FinalSolve solve_final(const BigNat& alpha1, const BigNat& beta1, const BigNat& N) {
  if (N < 1) throw InvalidInput("modulus must be positive");
  FinalSolve out;
  const BigNat b = mod_floor(beta1, N);
  out.gcd = boost::multiprecision::gcd(b, N);
  if (N == 1) out.gcd = 1;
  if (out.gcd != 1) return out;
  const auto inv = inv_mod(b, N);
  out.x = mod_floor(-alpha1 * *inv, N);
  return out;
}

nlohmann::json log_to_json(const TransformLog& log) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& op : log) {
    if (op.kind == RowOp::Kind::kSwap) {
      j.push_back({"swap", op.i, op.j});
    } else {
      j.push_back({"combine", op.i, op.j, op.s, op.t, op.s2, op.t2});
    }
  }
  return j;
}

TransformLog log_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("transform log must be a JSON array");
  TransformLog log;
  for (const auto& e : j) {
    if (!e.is_array() || e.empty() || !e[0].is_string()) throw InvalidInput("bad log entry");
    RowOp op;
    const auto kind = e[0].get<std::string>();
    if (kind == "swap" && e.size() == 3) {
      op.kind = RowOp::Kind::kSwap;
    } else if (kind == "combine" && e.size() == 7) {
      op.kind = RowOp::Kind::kCombine;
      op.s = e[3].get<std::uint32_t>();
      op.t = e[4].get<std::uint32_t>();
      op.s2 = e[5].get<std::uint32_t>();
      op.t2 = e[6].get<std::uint32_t>();
    } else {
      throw InvalidInput("bad log entry '" + e.dump() + "'");
    }
    op.i = e[1].get<std::uint32_t>();
    op.j = e[2].get<std::uint32_t>();
    log.push_back(op);
  }
  return log;
}

}  // namespace qpdlog
