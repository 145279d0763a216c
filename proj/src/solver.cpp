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

#include "qpdlog/solver.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

#include "qpdlog/codec.hpp"
#include "qpdlog/errors.hpp"

namespace qpdlog {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_nonzero(const Setup& s, const DensePoly& z, const char* what) {
  if (z.level != s.base_level()) {
    throw InvalidInput(std::string(what) + " must be given over F_{q^k}");
  }
  if (target_reduce(s, z).is_zero()) throw InvalidInput(std::string(what) + " must be nonzero");
}

DensePoly power_product(const Setup& s, const DensePoly& g, const DensePoly& h, const BigNat& a,
                        const BigNat& b) {
  return target_mul(s, target_pow(s, g, a), target_pow(s, h, b));
}

void add_stats(DescentStats& acc, const DescentStats& st) {
  acc.lift_tries += st.lift_tries;
  acc.lifts += st.lifts;
  acc.eliminations += st.eliminations;
  acc.backtracks += st.backtracks;
  acc.cache_hits += st.cache_hits;
  acc.candidates += st.candidates;
  acc.wall_ms += st.wall_ms;
}

}  // namespace

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  if (const char* env = std::getenv("QPDLOG_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::vector<RelationRow> collect_relations(const Eliminator& el, const DensePoly& g,
                                           const DensePoly& h, const SolveConfig& cfg,
                                           const Rng& round, const Progress& progress) {
  const Setup& s = el.setup();
  require_nonzero(s, g, "g");
  require_nonzero(s, h, "h");
  const FactorBase fb(s);
  const std::size_t total = fb.size() + 1;
  std::vector<RelationRow> rows(total);

  std::atomic<std::size_t> next{0}, done{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::exception_ptr error;
  std::size_t error_row = 0;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total || failed.load()) return;
      try {
        Rng row = round.child("row", i);
        RelationRow& out = rows[i];
        out.alpha = row.below(s.N);
        out.beta = row.below(s.N);
        const DensePoly z = power_product(s, g, h, out.alpha, out.beta);
        Rng d = row.child("descent");
        DescentResult res = descend(el, z, cfg.descent, d);
        out.exps = std::move(res.relation);
        out.stats = res.stats;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error || i < error_row) {
          error = std::current_exception();
          error_row = i;
        }
        failed = true;
        return;
      }
      const std::size_t n = done.fetch_add(1) + 1;
      if (progress) progress(n, total);
    }
  };

  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const BudgetExhausted& e) {
      throw BudgetExhausted("relation row " + std::to_string(error_row) + ": " + e.what());
    }
  }
  return rows;
}

RelationSystem build_system(const Setup& s, const std::vector<RelationRow>& rows) {
  const FactorBase fb(s);
  RelationSystem sys{ZnMatrix(s.N, rows.size(), fb.size()), ZnVector(rows.size()),
                     ZnVector(rows.size())};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [idx, e] : rows[i].exps) {
      if (idx >= fb.size()) throw InvalidInput("relation index out of range");
      sys.R.set(i, idx, e);
    }
    sys.alpha[i] = static_cast<std::uint32_t>(mod_floor(rows[i].alpha, s.N));
    sys.beta[i] = static_cast<std::uint32_t>(mod_floor(rows[i].beta, s.N));
  }
  return sys;
}

std::vector<std::size_t> verify_rows(const Setup& s, const DensePoly& g, const DensePoly& h,
                                     const std::vector<RelationRow>& rows) {
  const FactorBase fb(s);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const DensePoly z = power_product(s, g, h, rows[i].alpha, rows[i].beta);
    const bool stored_ok = !rows[i].z || target_reduce(s, *rows[i].z) == z;
    if (!stored_ok || !verify_relation(s, fb, z, rows[i].exps)) bad.push_back(i);
  }
  return bad;
}

std::vector<std::size_t> verify_stored_rows(const Setup& s, const std::vector<RelationRow>& rows) {
  const FactorBase fb(s);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].z || !verify_relation(s, fb, *rows[i].z, rows[i].exps)) bad.push_back(i);
  }
  return bad;
}

RunReport solve_dlp(const Setup& s, const DensePoly& g, const DensePoly& h, const SolveConfig& cfg,
                    const Progress& progress) {
  const auto t0 = Clock::now();
  require_nonzero(s, g, "g");
  require_nonzero(s, h, "h");
  if (cfg.max_outer_retries < 0) throw InvalidInput("max_outer_retries must be >= 0");
  const FactorBase fb(s);
  // Fails early when N does not fit the matrix representation.
  (void)ZnMatrix(s.N, 1, 1);

  RunReport rep;
  rep.q = s.q();
  rep.k = s.k();
  rep.l = s.l;
  rep.N = s.N;
  rep.m = fb.size();
  rep.q_log2_l = std::pow(static_cast<double>(s.q()), std::log2(static_cast<double>(s.l)));
  rep.seed = cfg.seed;
  rep.threads = cfg.threads;

  const Eliminator el(s);
  const Rng master(cfg.seed);
  for (int round = 0; round <= cfg.max_outer_retries; ++round) {
    RoundReport rr;
    auto t1 = Clock::now();
    const auto rows =
        collect_relations(el, g, h, cfg, master.child("round", static_cast<std::uint64_t>(round)),
                          progress);
    rr.relation_ms = ms_since(t1);
    for (const auto& row : rows) {
      add_stats(rr.descents, row.stats);
      rr.max_descent_ms = std::max(rr.max_descent_ms, row.stats.wall_ms);
    }

    t1 = Clock::now();
    RelationSystem sys = build_system(s, rows);
    const EchelonResult ech =
        lower_row_echelon(std::move(sys.R), {std::move(sys.alpha), std::move(sys.beta)}, false);
    rr.echelon_ms = ms_since(t1);
    rr.echelon_ops = ech.ops;
    if (!ech.R.row_is_zero(0)) throw Error("internal: first row not cleared by echelon");
    rr.alpha1 = ech.carried[0][0];
    rr.beta1 = ech.carried[1][0];
    if (cfg.check_step3) {
      rr.step3_ok = target_is_one(s, power_product(s, g, h, rr.alpha1, rr.beta1));
      if (!rr.step3_ok) throw Error("internal: g^alpha1 h^beta1 != 1 after echelon");
    }

    const FinalSolve fin = solve_final(rr.alpha1, rr.beta1, s.N);
    rr.gcd = fin.gcd;
    rep.rounds.push_back(rr);
    if (fin.x) {
      if (target_reduce(s, target_pow(s, g, *fin.x)) != target_reduce(s, h)) {
        throw Error("internal: solution failed verification");
      }
      rep.x = fin.x;
      break;
    }
  }
  rep.outer_retries = static_cast<int>(rep.rounds.size()) - 1;
  rep.wall_ms = ms_since(t0);
  return rep;
}

Membership membership_test(const Setup& s, const DensePoly& g, const DensePoly& h, int rounds,
                           const SolveConfig& cfg, const Progress& progress) {
  if (rounds < 1) throw InvalidInput("membership test needs at least one round");
  SolveConfig c = cfg;
  c.max_outer_retries = rounds - 1;
  Membership out;
  out.report = solve_dlp(s, g, h, c, progress);
  out.member = out.report.x.has_value();
  out.x = out.report.x;
  for (const auto& r : out.report.rounds) {
    if (r.gcd != 1) out.gcds.push_back(r.gcd);
  }
  return out;
}

DensePoly decode_target(const Setup& s, const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("target element must be a JSON array");
  return target_reduce(s, decode_poly(*s.tower, j, s.base_level(), s.base_level()));
}

nlohmann::json encode_target(const Setup& s, const DensePoly& z) {
  return encode_poly(*s.tower, target_reduce(s, z));
}

nlohmann::json row_to_json(const RelationRow& row) {
  return {{"alpha", to_string(row.alpha)},
          {"beta", to_string(row.beta)},
          {"exps", relation_to_json(row.exps)}};
}

void write_relations(std::ostream& os, const Setup& s, const std::vector<RelationRow>& rows,
                     const DensePoly* g, const DensePoly* h) {
  for (const auto& row : rows) {
    nlohmann::json j = row_to_json(row);
    if (g && h) j["z"] = encode_target(s, power_product(s, *g, *h, row.alpha, row.beta));
    os << j.dump() << '\n';
  }
}

std::vector<RelationRow> read_relations(std::istream& is, const Setup& s) {
  std::vector<RelationRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      RelationRow row;
      row.alpha = mod_floor(parse_bignat(j.at("alpha").get<std::string>()), s.N);
      row.beta = mod_floor(parse_bignat(j.at("beta").get<std::string>()), s.N);
      row.exps = relation_from_json(j.at("exps"), s.N);
      if (j.contains("z")) row.z = decode_target(s, j["z"]);
      rows.push_back(std::move(row));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput("relations line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& rr : r.rounds) {
    rounds.push_back({{"alpha1", to_string(rr.alpha1)},
                      {"beta1", to_string(rr.beta1)},
                      {"gcd", to_string(rr.gcd)},
                      {"step3_ok", rr.step3_ok},
                      {"relation_ms", rr.relation_ms},
                      {"echelon_ms", rr.echelon_ms},
                      {"echelon_ops", rr.echelon_ops},
                      {"max_descent_ms", rr.max_descent_ms},
                      {"descents", stats_to_json(rr.descents)}});
  }
  nlohmann::json j = {
      {"x", r.x ? nlohmann::json(to_string(*r.x)) : nlohmann::json(nullptr)},
      {"verified", r.x.has_value()},
      {"outer_retries", r.outer_retries},
      {"rounds", rounds},
      {"wall_ms", r.wall_ms},
      {"params",
       {{"q", r.q}, {"k", r.k}, {"l", r.l}, {"N", to_string(r.N)}, {"m", r.m}, {"seed", r.seed},
        {"threads", r.threads}}},
      {"complexity", {{"q_pow_log2_l", r.q_log2_l}}},
  };
  return j;
}

}  // namespace qpdlog
