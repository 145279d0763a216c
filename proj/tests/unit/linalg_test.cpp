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

#include <gtest/gtest.h>

#include "qpdlog/errors.hpp"
#include "qpdlog/linalg.hpp"
#include "qpdlog/rng.hpp"

using namespace qpdlog;

namespace {

using Dense = std::vector<std::vector<std::int64_t>>;

// Plain int64 matrices as the reference side.
Dense to_dense(const ZnMatrix& m) {
  Dense d(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m.at(i, j);
  return d;
}

Dense matmul(const Dense& a, const Dense& b, std::int64_t n) {
  Dense c(a.size(), std::vector<std::int64_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % n;
  return c;
}

// U as a matrix: the log replayed on the identity, one elementary step at a time.
Dense replay_identity(const TransformLog& log, std::size_t rows, std::int64_t n) {
  Dense u(rows, std::vector<std::int64_t>(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;
  for (const auto& op : log) {
    auto& a = u[op.i];
    auto& b = u[op.j];
    if (op.kind == RowOp::Kind::kSwap) {
      std::swap(a, b);
      continue;
    }
    for (std::size_t k = 0; k < rows; ++k) {
      const std::int64_t x = a[k], y = b[k];
      a[k] = (op.s * x + op.t * y) % n;
      b[k] = (op.s2 * x + op.t2 * y) % n;
    }
  }
  return u;
}

ZnMatrix random_matrix(std::uint64_t n, std::size_t rows, std::size_t cols, Rng& rng,
                       double density = 1.0) {
  ZnMatrix m(BigNat(n), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (density < 1.0 && rng.below(1000) >= density * 1000) continue;
      m.set(i, j, rng.below(n));
    }
  return m;
}

ZnVector random_vector(std::uint64_t n, std::size_t len, Rng& rng) {
  ZnVector v(len);
  for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(n));
  return v;
}

int last_nonzero(const ZnMatrix& m, std::size_t i) {
  for (std::size_t j = m.cols(); j-- > 0;) {
    if (m.at(i, j)) return static_cast<int>(j);
  }
  return -1;
}

void check_echelon(const ZnMatrix& R, const std::vector<ZnVector>& carried) {
  const std::uint32_t n = R.modulus();
  const EchelonResult res = lower_row_echelon(R, carried, true);
  // Replaying the log reproduces R'.
  ZnMatrix replay = R;
  apply_log(res.log, replay);
  EXPECT_EQ(replay, res.R);
  for (const auto& op : res.log) EXPECT_TRUE(is_unimodular(op, n));
  // R' = U R with U built independently.
  const Dense U = replay_identity(res.log, R.rows(), n);
  EXPECT_EQ(matmul(U, to_dense(R), n), to_dense(res.R));
  // Carried vectors: U v equals the echelon's carried output.
  for (std::size_t c = 0; c < carried.size(); ++c) {
    Dense col(R.rows(), std::vector<std::int64_t>(1));
    for (std::size_t i = 0; i < R.rows(); ++i) col[i][0] = carried[c][i];
    const Dense want = matmul(U, col, n);
    for (std::size_t i = 0; i < R.rows(); ++i) EXPECT_EQ(res.carried[c][i], want[i][0]);
  }
  // Shape: zero rows on top, then strictly increasing last-nonzero columns.
  if (R.rows() > R.cols()) EXPECT_GE(res.zero_rows, R.rows() - R.cols());
  for (std::size_t i = 0; i < res.zero_rows; ++i) EXPECT_TRUE(res.R.row_is_zero(i));
  int prev = -1;
  for (std::size_t i = res.zero_rows; i < R.rows(); ++i) {
    const int ln = last_nonzero(res.R, i);
    EXPECT_GT(ln, prev);
    prev = ln;
  }
  EXPECT_EQ(res.ops, res.log.size());
  // Without logging the result is the same.
  const EchelonResult quiet = lower_row_echelon(R, carried, false);
  EXPECT_EQ(quiet.R, res.R);
  EXPECT_EQ(quiet.carried, res.carried);
  EXPECT_TRUE(quiet.log.empty());
}

}  // namespace

TEST(Linalg, SpecColumnFourSix) {
  ZnMatrix m(BigNat(10), 2, 1);
  m.set(0, 0, std::uint64_t{4});
  m.set(1, 0, std::uint64_t{6});
  const EchelonResult res = lower_row_echelon(m, {}, true);
  ASSERT_EQ(res.log.size(), 1u);
  const RowOp& op = res.log[0];
  EXPECT_EQ(op.kind, RowOp::Kind::kCombine);
  EXPECT_EQ(std::vector<std::uint32_t>({op.s, op.t, op.s2, op.t2}),
            std::vector<std::uint32_t>({3, 8, 9, 1}));
  EXPECT_EQ(res.R.at(0, 0), 0u);
  EXPECT_EQ(res.R.at(1, 0), 2u);
  EXPECT_EQ(res.zero_rows, 1u);
}

TEST(Linalg, ZeroMatrixUnchanged) {
  ZnMatrix m(BigNat(6560), 5, 4);
  const EchelonResult res = lower_row_echelon(m, {ZnVector(5, 3)}, true);
  EXPECT_EQ(res.R, m);
  EXPECT_TRUE(res.log.empty());
  EXPECT_EQ(res.zero_rows, 5u);
  EXPECT_EQ(res.carried[0], ZnVector(5, 3));
}

TEST(Linalg, Random9x8Mod1000) {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const ZnMatrix R = random_matrix(1000, 9, 8, rng);
    check_echelon(R, {random_vector(1000, 9, rng), random_vector(1000, 9, rng)});
  }
}

TEST(Linalg, RandomShapesAndModuli) {
  Rng rng(2);
  for (std::uint64_t n : {1000u, 6560u, 4095u, 2u, 97u, 2147483647u}) {
    for (int t = 0; t < 10; ++t) {
      const std::size_t cols = 1 + rng.below(24);
      const std::size_t rows = cols + 1;
      const double density = t % 2 ? 0.15 : 1.0;
      check_echelon(random_matrix(n, rows, cols, rng, density),
                    {random_vector(n, rows, rng), random_vector(n, rows, rng)});
    }
  }
}

TEST(Linalg, NonUnitColumnsOnly) {
  // Every entry even mod 6560 forces the gcd path.
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    ZnMatrix R(BigNat(6560), 7, 6);
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 6; ++j) R.set(i, j, 2 * rng.below(3280));
    check_echelon(R, {random_vector(6560, 7, rng)});
  }
}

TEST(Linalg, RowsFewerThanColumns) {
  Rng rng(4);
  check_echelon(random_matrix(4095, 3, 8, rng), {});
}

TEST(Linalg, Unimodularity) {
  EXPECT_TRUE(is_unimodular({RowOp::Kind::kCombine, 0, 1, 3, 8, 9, 1}, 10));
  EXPECT_TRUE(is_unimodular({RowOp::Kind::kCombine, 0, 1, 0, 1, 1, 0}, 10));  // det -1
  EXPECT_FALSE(is_unimodular({RowOp::Kind::kCombine, 0, 1, 2, 0, 0, 1}, 10));
  EXPECT_FALSE(is_unimodular({RowOp::Kind::kCombine, 1, 1, 1, 0, 0, 1}, 10));
  EXPECT_TRUE(is_unimodular({RowOp::Kind::kSwap, 0, 1}, 10));
  EXPECT_FALSE(is_unimodular({RowOp::Kind::kSwap, 2, 2}, 10));
}

TEST(Linalg, LogJsonRoundTrip) {
  Rng rng(5);
  const EchelonResult res = lower_row_echelon(random_matrix(6560, 6, 5, rng), {}, true);
  const TransformLog back = log_from_json(log_to_json(res.log));
  ASSERT_EQ(back.size(), res.log.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    EXPECT_EQ(back[k].kind, res.log[k].kind);
    EXPECT_EQ(back[k].i, res.log[k].i);
    EXPECT_EQ(back[k].t2, res.log[k].t2);
  }
  EXPECT_THROW(log_from_json({{"rotate", 1, 2}}), InvalidInput);
  EXPECT_THROW(log_from_json(nlohmann::json::object()), InvalidInput);
}

TEST(Linalg, RejectsBadInput) {
  EXPECT_THROW(ZnMatrix(BigNat(1), 2, 2), InvalidInput);
  EXPECT_THROW(ZnMatrix(BigNat(1) << 31, 2, 2), InvalidInput);
  ZnMatrix m(BigNat(10), 3, 2);
  EXPECT_THROW(lower_row_echelon(m, {ZnVector(2, 0)}, false), InvalidInput);
  EXPECT_THROW(lower_row_echelon(m, {ZnVector(3, 10)}, false), InvalidInput);
}

TEST(SolveFinal, SpecExamples) {
  const FinalSolve a = solve_final(BigNat(3), BigNat(7), BigNat(10));
  ASSERT_TRUE(a.x);
  EXPECT_EQ(*a.x, BigNat(1));
  const FinalSolve b = solve_final(BigNat(4), BigNat(1), BigNat(10));
  ASSERT_TRUE(b.x);
  EXPECT_EQ(*b.x, BigNat(6));
  const FinalSolve c = solve_final(BigNat(3), BigNat(4), BigNat(10));
  EXPECT_FALSE(c.x);
  EXPECT_EQ(c.gcd, BigNat(2));
  const FinalSolve z = solve_final(BigNat(0), BigNat(1), BigNat(10));
  EXPECT_EQ(*z.x, BigNat(0));
}

TEST(SolveFinal, SolvesCongruence) {
  Rng rng(6);
  const BigNat N(6560);
  for (int t = 0; t < 200; ++t) {
    const BigNat alpha = rng.below(N), beta = rng.below(N);
    const FinalSolve r = solve_final(alpha, beta, N);
    if (r.x) {
      EXPECT_EQ(mod_floor(alpha + *r.x * beta, N), 0);
      EXPECT_EQ(r.gcd, 1);
    } else {
      EXPECT_GT(r.gcd, 1);
      EXPECT_EQ(N % r.gcd, 0);
    }
  }
}
