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

#include "qpdlog/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qpdlog/errors.hpp"
#include "qpdlog/factor.hpp"
#include "qpdlog/poly.hpp"

namespace qpdlog {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint32_t p, int q_exp, std::vector<std::uint32_t> modulus, LevelId id)
    : p_(p), q_exp_(q_exp), m_(static_cast<int>(modulus.size()) - 1), id_(id),
      log2p_(std::log2(static_cast<double>(p))), modulus_(std::move(modulus)) {
  if (m_ < 1 || m_ > kMaxAbsDegree) throw InvalidInput("field degree out of range");
  if (modulus_.back() != 1) throw InvalidInput("field modulus must be monic");
  for (int t = 0; t < m_; ++t) {
    if (modulus_[t] != 0) neg_terms_.emplace_back(t, (p_ - modulus_[t]) % p_);
  }
  order_ = ipow(p_, static_cast<std::uint64_t>(m_));
  const std::uint64_t per = static_cast<std::uint64_t>(m_) * (p_ - 1) * (p_ - 1);
  headroom_ = per == 0 ? std::numeric_limits<std::uint64_t>::max()
                       : (std::numeric_limits<std::uint64_t>::max() - p_) / per / 2;
  inv_table_.assign(p_, 0);
  for (std::uint32_t v = 1; v < p_; ++v) {
    std::uint64_t r = 1, b = v, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    inv_table_[v] = static_cast<std::uint32_t>(r);
  }

  // Frobenius matrices: column j is (T^j)^p, resp. (T^j)^q.
  auto build = [&](std::uint64_t power) {
    std::vector<std::uint32_t> mat(static_cast<std::size_t>(m_) * m_);
    FieldElt tp = pow(generator(), power);
    FieldElt cur = one();
    for (int j = 0; j < m_; ++j) {
      std::copy(cur.c.begin(), cur.c.end(), mat.begin() + static_cast<std::ptrdiff_t>(j) * m_);
      cur = mul(cur, tp);
    }
    return mat;
  };
  frob_p_mat_ = build(p_);
  std::uint64_t q = 1;
  for (int t = 0; t < q_exp_; ++t) q *= p_;
  frob_q_mat_ = build(q);
}

void Field::check(const FieldElt& x) const {
  if (x.level != id_ || static_cast<int>(x.c.size()) != m_) {
    throw ArithmeticError("field element does not belong to level " + std::to_string(id_));
  }
}

FieldElt Field::zero() const {
  FieldElt z;
  z.level = id_;
  z.c.assign(m_, 0);
  return z;
}

FieldElt Field::one() const {
  FieldElt z = zero();
  z.c[0] = 1;
  return z;
}

FieldElt Field::from_int(std::int64_t v) const {
  FieldElt z = zero();
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  z.c[0] = static_cast<std::uint32_t>(r);
  return z;
}

FieldElt Field::from_coeffs(std::span<const std::uint32_t> c) const {
  if (static_cast<int>(c.size()) != m_) throw InvalidInput("coefficient vector has wrong length");
  FieldElt z = zero();
  for (int j = 0; j < m_; ++j) {
    if (c[j] >= p_) throw InvalidInput("coefficient not reduced mod p");
    z.c[j] = c[j];
  }
  return z;
}

FieldElt Field::generator() const {
  FieldElt z = zero();
  if (m_ == 1) {
    // F_p[T]/(T - a): the generator is a itself.
    z.c[0] = (p_ - modulus_[0]) % p_;
  } else {
    z.c[1] = 1;
  }
  return z;
}

FieldElt Field::from_index(std::uint64_t idx) const {
  FieldElt z = zero();
  for (int j = 0; j < m_ && idx; ++j) {
    z.c[j] = static_cast<std::uint32_t>(idx % p_);
    idx /= p_;
  }
  return z;
}

std::uint64_t Field::index_of(const FieldElt& x) const {
  std::uint64_t v = 0;
  for (int j = m_ - 1; j >= 0; --j) v = v * p_ + x.c[j];
  return v;
}

bool Field::is_zero(const FieldElt& x) const {
  for (auto v : x.c) {
    if (v) return false;
  }
  return true;
}

bool Field::is_one(const FieldElt& x) const {
  if (x.c[0] != 1) return false;
  for (int j = 1; j < m_; ++j) {
    if (x.c[j]) return false;
  }
  return true;
}

FieldElt Field::add(const FieldElt& a, const FieldElt& b) const {
  FieldElt z = a;
  for (int j = 0; j < m_; ++j) {
    std::uint32_t s = z.c[j] + b.c[j];
    z.c[j] = s >= p_ ? s - p_ : s;
  }
  return z;
}

FieldElt Field::sub(const FieldElt& a, const FieldElt& b) const {
  FieldElt z = a;
  for (int j = 0; j < m_; ++j) {
    z.c[j] = z.c[j] >= b.c[j] ? z.c[j] - b.c[j] : z.c[j] + p_ - b.c[j];
  }
  return z;
}

FieldElt Field::neg(const FieldElt& a) const {
  FieldElt z = a;
  for (auto& v : z.c) v = v ? p_ - v : 0;
  return z;
}

FieldElt Field::scale(const FieldElt& a, std::uint32_t s) const {
  FieldElt z = a;
  s %= p_;
  for (auto& v : z.c) v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * s % p_);
  return z;
}

void Field::mul_acc(std::uint64_t* acc, const std::uint32_t* a, const std::uint32_t* b) const {
  for (int i = 0; i < m_; ++i) {
    const std::uint64_t ai = a[i];
    if (!ai) continue;
    std::uint64_t* row = acc + i;
    for (int j = 0; j < m_; ++j) row[j] += ai * b[j];
  }
}

void Field::fold_acc(std::uint64_t* acc) const {
  const int n = acc_size();
  for (int j = 0; j < n; ++j) acc[j] %= p_;
}

void Field::reduce_into(std::uint64_t* acc, std::uint32_t* out) const {
  const int n = acc_size();
  for (int j = 0; j < n; ++j) acc[j] %= p_;
  for (int i = n - 1; i >= m_; --i) {
    const std::uint64_t c = acc[i] % p_;
    if (!c) continue;
    const int base = i - m_;
    for (const auto& [t, coef] : neg_terms_) acc[base + t] += c * coef;
  }
  for (int j = 0; j < m_; ++j) out[j] = static_cast<std::uint32_t>(acc[j] % p_);
}

FieldElt Field::reduce(std::uint64_t* acc) const {
  FieldElt z;
  z.level = id_;
  z.c.resize(m_);
  reduce_into(acc, z.c.data());
  return z;
}

FieldElt Field::mul(const FieldElt& a, const FieldElt& b) const {
  std::uint64_t acc[2 * kMaxAbsDegree];
  std::fill(acc, acc + acc_size(), 0);
  mul_acc(acc, a.c.data(), b.c.data());
  return reduce(acc);
}

FieldElt Field::inv(const FieldElt& a) const {
  if (is_zero(a)) throw ArithmeticError("inverse of zero");
  // Extended Euclid over F_p[T] on (modulus, a); tracks the cofactor of a.
  using V = std::vector<std::int64_t>;
  const std::int64_t p = p_;
  auto trim = [](V& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  V r0(modulus_.begin(), modulus_.end()), r1(a.c.begin(), a.c.end());
  V s0{0}, s1{1};
  trim(r1);
  while (r1.size() > 1) {
    // r0 = quo * r1 + rem
    V quo(r0.size() - r1.size() + 1, 0);
    const std::int64_t lead_inv = inv_table_[r1.back()];
    while (r0.size() >= r1.size()) {
      const std::size_t shift = r0.size() - r1.size();
      const std::int64_t coef = r0.back() * lead_inv % p;
      quo[shift] = coef;
      for (std::size_t j = 0; j < r1.size(); ++j) {
        r0[shift + j] = ((r0[shift + j] - coef * r1[j]) % p + p) % p;
      }
      trim(r0);
      if (r0.empty()) break;
    }
    // s_new = s0 - quo * s1
    V prod(quo.size() + s1.size() - 1, 0);
    for (std::size_t i = 0; i < quo.size(); ++i) {
      for (std::size_t j = 0; j < s1.size(); ++j) prod[i + j] = (prod[i + j] + quo[i] * s1[j]) % p;
    }
    V s2(std::max(s0.size(), prod.size()), 0);
    for (std::size_t j = 0; j < s2.size(); ++j) {
      std::int64_t v = (j < s0.size() ? s0[j] : 0) - (j < prod.size() ? prod[j] : 0);
      s2[j] = ((v % p) + p) % p;
    }
    trim(s2);
    // r0 now holds the remainder.
    std::swap(r0, r1);
    if (r1.empty()) throw ArithmeticError("field modulus is not irreducible");
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const std::int64_t c_inv = inv_table_[r1[0]];
  FieldElt z = zero();
  for (std::size_t j = 0; j < s1.size() && j < static_cast<std::size_t>(m_); ++j) {
    z.c[j] = static_cast<std::uint32_t>(s1[j] * c_inv % p);
  }
  return z;
}

FieldElt Field::pow(const FieldElt& a, const BigNat& e) const {
  if (e < 0) throw ArithmeticError("negative exponent");
  FieldElt r = one();
  if (e == 0) return r;
  const unsigned top = msb_or_zero(e);
  for (int b = static_cast<int>(top); b >= 0; --b) {
    r = sqr(r);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(b))) r = mul(r, a);
  }
  return r;
}

FieldElt Field::pow(const FieldElt& a, std::uint64_t e) const {
  FieldElt r = one();
  FieldElt b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = sqr(b);
  }
  return r;
}

FieldElt Field::pow_signed(const FieldElt& a, std::int64_t e) const {
  if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
  return pow(inv(a), static_cast<std::uint64_t>(-(e + 1)) + 1);
}

void Field::apply_matrix(const std::vector<std::uint32_t>& mat, const std::uint32_t* in,
                         std::uint32_t* out) const {
  std::uint64_t acc[kMaxAbsDegree];
  std::fill(acc, acc + m_, 0);
  for (int j = 0; j < m_; ++j) {
    const std::uint64_t v = in[j];
    if (!v) continue;
    const std::uint32_t* col = mat.data() + static_cast<std::ptrdiff_t>(j) * m_;
    for (int r = 0; r < m_; ++r) acc[r] += v * col[r];
  }
  for (int r = 0; r < m_; ++r) out[r] = static_cast<std::uint32_t>(acc[r] % p_);
}

FieldElt Field::apply_matrix(const std::vector<std::uint32_t>& mat, const FieldElt& a) const {
  FieldElt z = zero();
  apply_matrix(mat, a.c.data(), z.c.data());
  return z;
}

FieldElt Field::frob_pow(const FieldElt& a, std::uint64_t s) const {
  s %= static_cast<std::uint64_t>(m_);
  FieldElt z = a;
  const std::uint64_t qs = s / q_exp_;
  const std::uint64_t ps = s % q_exp_;
  for (std::uint64_t t = 0; t < qs; ++t) z = apply_matrix(frob_q_mat_, z);
  for (std::uint64_t t = 0; t < ps; ++t) z = apply_matrix(frob_p_mat_, z);
  return z;
}

FieldElt Field::frob(const FieldElt& a, std::uint64_t j) const {
  const std::uint64_t m = static_cast<std::uint64_t>(m_);
  const std::uint64_t s = (static_cast<std::uint64_t>(q_exp_) % m) * (j % m) % m;
  if (s % q_exp_ == 0) {
    FieldElt z = a;
    for (std::uint64_t t = 0; t < s / q_exp_; ++t) z = apply_matrix(frob_q_mat_, z);
    return z;
  }
  return frob_pow(a, s);
}

FieldElt Field::frob_inv(const FieldElt& a) const {
  const int m = m_;
  const int s = (m - q_exp_ % m) % m;
  return frob_pow(a, static_cast<std::uint64_t>(s));
}

bool Field::in_subfield(const FieldElt& a, int sub_degree) const {
  if (sub_degree <= 0 || m_ % sub_degree != 0) return false;
  return frob_pow(a, static_cast<std::uint64_t>(sub_degree)) == a;
}

FieldElt Field::random(Rng& rng) const {
  FieldElt z = zero();
  for (auto& v : z.c) v = static_cast<std::uint32_t>(rng.below(p_));
  return z;
}

FieldElt Field::random_nonzero(Rng& rng) const {
  for (;;) {
    FieldElt z = random(rng);
    if (!is_zero(z)) return z;
  }
}

int Field::compare(const FieldElt& a, const FieldElt& b) const {
  for (int j = m_ - 1; j >= 0; --j) {
    if (a.c[j] != b.c[j]) return a.c[j] < b.c[j] ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> least_irreducible(std::uint32_t p, int m) {
  if (m == 1) return {0, 1};
  const Field fp(p, 1, {0, 1}, 0);
  const PolyRing ring(fp);
  // Candidates in increasing order of the integer sum c_j p^j; the constant
  // term must be nonzero.
  std::vector<std::uint32_t> low(m, 0);
  low[0] = 1;
  for (;;) {
    std::vector<FieldElt> c;
    c.reserve(m + 1);
    for (int j = 0; j < m; ++j) c.push_back(fp.from_int(low[j]));
    c.push_back(fp.one());
    if (is_irreducible(ring, ring.make(std::move(c)))) {
      std::vector<std::uint32_t> out(low.begin(), low.end());
      out.push_back(1);
      return out;
    }
    int j = 0;
    while (j < m && ++low[j] == p) low[j++] = 0;
    if (j == m) throw Error("no irreducible polynomial found");
    if (low[0] == 0) low[0] = 1;
  }
}

namespace {

// Solves for a left inverse of a full-column-rank m_big x m_small matrix
// given column-major as `cols`.
struct LeftInverse {
  std::vector<int> rows;
  std::vector<std::uint32_t> inverse;
};

LeftInverse left_inverse(const std::vector<std::uint32_t>& cols, int m_big, int m_small,
                         std::uint32_t p, const Field& helper) {
  // Row-major working copy.
  std::vector<std::vector<std::int64_t>> a(m_big, std::vector<std::int64_t>(m_small));
  for (int j = 0; j < m_small; ++j) {
    for (int r = 0; r < m_big; ++r) a[r][j] = cols[static_cast<std::size_t>(j) * m_big + r];
  }
  std::vector<int> perm(m_big);
  for (int r = 0; r < m_big; ++r) perm[r] = r;
  for (int c = 0; c < m_small; ++c) {
    int piv = -1;
    for (int r = c; r < m_big; ++r) {
      if (a[r][c] % p != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw Error("embedding matrix is rank deficient");
    std::swap(a[c], a[piv]);
    std::swap(perm[c], perm[piv]);
    const std::int64_t iv = helper.inv_p(static_cast<std::uint32_t>(a[c][c] % p));
    for (int j = 0; j < m_small; ++j) a[c][j] = a[c][j] * iv % p;
    for (int r = 0; r < m_big; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const std::int64_t f = a[r][c];
      for (int j = 0; j < m_small; ++j) a[r][j] = ((a[r][j] - f * a[c][j]) % p + p) % p;
    }
  }
  LeftInverse out;
  out.rows.assign(perm.begin(), perm.begin() + m_small);
  // Invert the selected square block by Gauss-Jordan.
  const int n = m_small;
  std::vector<std::vector<std::int64_t>> s(n, std::vector<std::int64_t>(2 * n, 0));
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < n; ++j) {
      s[r][j] = cols[static_cast<std::size_t>(j) * m_big + out.rows[r]];
    }
    s[r][n + r] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r) {
      if (s[r][c] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw Error("restriction block is singular");
    std::swap(s[c], s[piv]);
    const std::int64_t iv = helper.inv_p(static_cast<std::uint32_t>(s[c][c]));
    for (auto& v : s[c]) v = v * iv % p;
    for (int r = 0; r < n; ++r) {
      if (r == c || s[r][c] == 0) continue;
      const std::int64_t f = s[r][c];
      for (int j = 0; j < 2 * n; ++j) s[r][j] = ((s[r][j] - f * s[c][j]) % p + p) % p;
    }
  }
  out.inverse.resize(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < n; ++j) out.inverse[static_cast<std::size_t>(r) * n + j] =
        static_cast<std::uint32_t>(s[r][n + j]);
  }
  return out;
}

}  // namespace

std::shared_ptr<const FieldTower> FieldTower::build(std::uint32_t p, int i, int k, int emax,
                                                    TowerOptions opts) {
  if (p >= (1u << 16) || !is_prime_u32(p)) {
    throw InvalidInput("characteristic must be a prime below 2^16, got " + std::to_string(p));
  }
  if (i < 1 || k < 1 || emax < 0 || emax > 16) throw InvalidInput("bad tower parameters");
  if (opts.degree_budget < 1 || opts.degree_budget > kMaxAbsDegree) {
    throw InvalidInput("degree budget out of range");
  }
  const long long top = static_cast<long long>(i) * k << emax;
  if (top > opts.degree_budget) {
    throw InvalidInput("tower degree " + std::to_string(top) + " exceeds arithmetic budget " +
                       std::to_string(opts.degree_budget));
  }
  std::uint64_t q = 1;
  for (int t = 0; t < i; ++t) q *= p;
  if (q < 2) throw InvalidInput("q must be at least 2");

  std::shared_ptr<FieldTower> t(new FieldTower());
  t->p_ = p;
  t->i_ = i;
  t->k_ = k;
  t->emax_ = emax;
  t->q_ = q;

  std::vector<int> degrees{1, i, i * k};
  for (int e = 1; e <= emax; ++e) degrees.push_back((i * k) << e);
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());

  for (std::size_t id = 0; id < degrees.size(); ++id) {
    t->fields_.emplace_back(p, i, least_irreducible(p, degrees[id]), static_cast<LevelId>(id));
    if (degrees[id] == i) t->q_level_ = static_cast<LevelId>(id);
    for (int e = 0; e <= emax; ++e) {
      if (((i * k) << e) == degrees[id]) {
        if (static_cast<int>(t->d_levels_.size()) <= e) t->d_levels_.resize(e + 1);
        t->d_levels_[e] = static_cast<LevelId>(id);
      }
    }
  }

  // Embeddings between adjacent levels: the lexicographically least root of
  // the smaller defining polynomial inside the larger field.
  for (std::size_t id = 0; id + 1 < t->fields_.size(); ++id) {
    const Field& small = t->fields_[id];
    const Field& big = t->fields_[id + 1];
    const PolyRing ring(big);
    std::vector<FieldElt> c;
    for (auto v : small.modulus()) c.push_back(big.from_int(v));
    Rng rng(0x656d6265ULL + id);
    std::vector<FieldElt> rs = distinct_roots(ring, ring.make(std::move(c)), rng);
    if (rs.empty()) throw Error("defining polynomial has no root in the next level");
    const FieldElt* best = &rs[0];
    for (const auto& r : rs) {
      if (big.compare(r, *best) < 0) best = &r;
    }
    t->roots_.push_back(*best);
    const int ms = small.degree(), mb = big.degree();
    std::vector<std::uint32_t> cols(static_cast<std::size_t>(ms) * mb);
    FieldElt cur = big.one();
    for (int j = 0; j < ms; ++j) {
      std::copy(cur.c.begin(), cur.c.end(), cols.begin() + static_cast<std::ptrdiff_t>(j) * mb);
      cur = big.mul(cur, *best);
    }
    LeftInverse li = left_inverse(cols, mb, ms, p, big);
    t->up_.push_back(std::move(cols));
    t->down_.push_back({std::move(li.rows), std::move(li.inverse)});
  }
  return t;
}

LevelId FieldTower::level(int D) const {
  if (D < 1 || (D & (D - 1)) != 0) throw InvalidInput("tower level must be a power of two");
  int e = 0;
  while ((1 << e) < D) ++e;
  if (e > emax_) {
    throw InvalidInput("level " + std::to_string(D) + " is not in the tower (emax=" +
                       std::to_string(emax_) + ")");
  }
  return d_levels_[e];
}

bool FieldTower::has_level(int D) const {
  if (D < 1 || (D & (D - 1)) != 0) return false;
  int e = 0;
  while ((1 << e) < D) ++e;
  return e <= emax_;
}

int FieldTower::rel_degree(LevelId id) const {
  const int m = field(id).degree();
  const int base = i_ * k_;
  return (m >= base && m % base == 0) ? m / base : 0;
}

std::optional<LevelId> FieldTower::level_by_degree(int abs_degree) const {
  for (const auto& f : fields_) {
    if (f.degree() == abs_degree) return f.id();
  }
  return std::nullopt;
}

FieldElt FieldTower::embed_step(const FieldElt& x) const {
  const Field& small = fields_[x.level];
  const Field& big = fields_[x.level + 1];
  const auto& cols = up_[x.level];
  const int ms = small.degree(), mb = big.degree();
  std::uint64_t acc[kMaxAbsDegree];
  std::fill(acc, acc + mb, 0);
  for (int j = 0; j < ms; ++j) {
    const std::uint64_t v = x.c[j];
    if (!v) continue;
    const std::uint32_t* col = cols.data() + static_cast<std::ptrdiff_t>(j) * mb;
    for (int r = 0; r < mb; ++r) acc[r] += v * col[r];
  }
  FieldElt z = big.zero();
  for (int r = 0; r < mb; ++r) z.c[r] = static_cast<std::uint32_t>(acc[r] % p_);
  return z;
}

std::optional<FieldElt> FieldTower::restrict_step(const FieldElt& x) const {
  const LevelId to = static_cast<LevelId>(x.level - 1);
  const Field& small = fields_[to];
  const Restriction& rs = down_[to];
  const int ms = small.degree();
  FieldElt z = small.zero();
  for (int r = 0; r < ms; ++r) {
    std::uint64_t acc = 0;
    for (int j = 0; j < ms; ++j) {
      acc += static_cast<std::uint64_t>(rs.inverse[static_cast<std::size_t>(r) * ms + j]) *
             x.c[rs.rows[j]];
    }
    z.c[r] = static_cast<std::uint32_t>(acc % p_);
  }
  if (!(embed_step(z) == x)) return std::nullopt;
  return z;
}

FieldElt FieldTower::embed(const FieldElt& x, LevelId to) const {
  fields_.at(x.level).check(x);
  if (to < x.level) throw ArithmeticError("embed: target level is smaller");
  FieldElt z = x;
  while (z.level < to) z = embed_step(z);
  return z;
}

std::optional<FieldElt> FieldTower::restrict_to(const FieldElt& x, LevelId to) const {
  fields_.at(x.level).check(x);
  if (to > x.level) throw ArithmeticError("restrict: target level is larger");
  FieldElt z = x;
  while (z.level > to) {
    auto r = restrict_step(z);
    if (!r) return std::nullopt;
    z = std::move(*r);
  }
  return z;
}

}  // namespace qpdlog
