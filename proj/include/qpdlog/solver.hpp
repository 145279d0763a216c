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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpdlog/descent.hpp"
#include "qpdlog/linalg.hpp"

namespace qpdlog {

struct SolveConfig {
  std::uint64_t seed = 1;
  int threads = 1;
  int max_outer_retries = 8;  // extra rounds after the first
  DescentConfig descent;
  bool check_step3 = true;  // g^alpha1 h^beta1 = 1 after echelon
};

struct RelationRow {
  BigNat alpha;
  BigNat beta;
  RelationVec exps;
  DescentStats stats;
  std::optional<DensePoly> z;  // g^alpha h^beta, when read from a file that has it
};

// Called after each finished row with (done, total); may run on any worker.
using Progress = std::function<void(std::size_t, std::size_t)>;

// m+1 rows, row i from stream round.child("row", i), so the output does not
// depend on the thread count.
std::vector<RelationRow> collect_relations(const Eliminator& el, const DensePoly& g,
                                           const DensePoly& h, const SolveConfig& cfg,
                                           const Rng& round, const Progress& progress = {});

// Row-major (m+1) x m matrix and the alpha, beta columns.
struct RelationSystem {
  ZnMatrix R;
  ZnVector alpha;
  ZnVector beta;
};
RelationSystem build_system(const Setup& s, const std::vector<RelationRow>& rows);

// Checks every row against g^alpha h^beta; returns the failing row indices.
// Rows carrying z are also checked against it.
std::vector<std::size_t> verify_rows(const Setup& s, const DensePoly& g, const DensePoly& h,
                                     const std::vector<RelationRow>& rows);
// Same against each row's stored z only; rows without z fail.
std::vector<std::size_t> verify_stored_rows(const Setup& s, const std::vector<RelationRow>& rows);

struct RoundReport {
  BigNat alpha1;
  BigNat beta1;
  BigNat gcd;
  bool step3_ok = true;
  double relation_ms = 0;
  double echelon_ms = 0;
  std::size_t echelon_ops = 0;
  DescentStats descents;  // summed over rows
  double max_descent_ms = 0;
};

struct RunReport {
  std::optional<BigNat> x;  // g^x = h, checked
  int outer_retries = 0;
  std::vector<RoundReport> rounds;
  double wall_ms = 0;
  std::uint64_t q = 0;
  int k = 0;
  int l = 0;
  BigNat N;
  std::uint64_t m = 0;
  double q_log2_l = 0;  // q^{log2 l}, reference point only
  std::uint64_t seed = 0;
  int threads = 1;
};

RunReport solve_dlp(const Setup& s, const DensePoly& g, const DensePoly& h, const SolveConfig& cfg,
                    const Progress& progress = {});

struct Membership {
  bool member = false;
  std::optional<BigNat> x;
  std::vector<BigNat> gcds;  // one per obstructed round
  RunReport report;
};

// Up to `rounds` solve rounds; any success certifies membership.
Membership membership_test(const Setup& s, const DensePoly& g, const DensePoly& h, int rounds,
                           const SolveConfig& cfg, const Progress& progress = {});

// Target elements on the command line and in files: a JSON array of element
// strings, as for polynomials, reduced mod I on input.
DensePoly decode_target(const Setup& s, const nlohmann::json& j);
nlohmann::json encode_target(const Setup& s, const DensePoly& z);

// One JSON object per line: {"alpha", "beta", "exps"} plus "z" when given.
nlohmann::json row_to_json(const RelationRow& row);
void write_relations(std::ostream& os, const Setup& s, const std::vector<RelationRow>& rows,
                     const DensePoly* g = nullptr, const DensePoly* h = nullptr);
std::vector<RelationRow> read_relations(std::istream& is, const Setup& s);

nlohmann::json report_to_json(const RunReport& r);

// threads > 0 wins; otherwise QPDLOG_THREADS, otherwise 1.
int resolve_threads(int threads);

}  // namespace qpdlog
