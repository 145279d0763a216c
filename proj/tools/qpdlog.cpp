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

// qpdlog command line tool.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qpdlog/bluher.hpp"
#include "qpdlog/codec.hpp"
#include "qpdlog/descent.hpp"
#include "qpdlog/elim.hpp"
#include "qpdlog/errors.hpp"
#include "qpdlog/linalg.hpp"
#include "qpdlog/setup.hpp"
#include "qpdlog/solver.hpp"

using namespace qpdlog;
using nlohmann::json;

namespace {

constexpr int kExitBudget = 2;
constexpr int kExitInput = 3;
constexpr int kExitValidation = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput("bad JSON in " + what + ": " + e.what());
  }
}

// Inline JSON, or @path to read it from a file.
json json_arg(const std::string& arg, const std::string& what) {
  if (!arg.empty() && arg[0] == '@') return parse_json(read_file(arg.substr(1)), what);
  return parse_json(arg, what);
}

Setup load_setup(const std::string& path) {
  return setup_from_json(parse_json(read_file(path), path));
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw InvalidInput("cannot write '" + out + "'");
  f << j.dump(2) << '\n';
}

void progress_bar(std::size_t done, std::size_t total) {
  if (done == total || done % 64 == 0) {
    std::fprintf(stderr, "\rrelations %zu/%zu", done, total);
    if (done == total) std::fputc('\n', stderr);
  }
}

struct DescentOpts {
  int e = 0;
  std::uint64_t lift_budget = DescentConfig{}.lift_budget;
  std::uint64_t elim_budget = DescentConfig{}.elim_budget;
  int backtrack_budget = DescentConfig{}.backtrack_budget;
  int restart_budget = DescentConfig{}.restart_budget;

  void add(CLI::App* app) {
    app->add_option("--e", e, "lift exponent, 0 for the least with 2^e > 4l");
    app->add_option("--lift-budget", lift_budget);
    app->add_option("--elim-budget", elim_budget);
    app->add_option("--backtrack-budget", backtrack_budget);
    app->add_option("--restart-budget", restart_budget);
  }
  DescentConfig config() const {
    return {e, lift_budget, elim_budget, backtrack_budget, restart_budget};
  }
};

double since_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

json bench_descents(const Setup& s, int count, std::uint64_t seed) {
  const Eliminator el(s);
  const FactorBase fb(s);
  Rng gen(seed);
  json runs = json::array();
  double total = 0;
  for (int t = 0; t < count; ++t) {
    const DensePoly z = target_random_nonzero(s, gen);
    Rng rng = gen.child("descent", static_cast<std::uint64_t>(t));
    const DescentResult r = descend(el, z, {}, rng);
    total += r.stats.wall_ms;
    runs.push_back(stats_to_json(r.stats));
  }
  return {{"q", s.q()}, {"k", s.k()}, {"l", s.l}, {"descents", count},
          {"mean_ms", total / count}, {"runs", runs}};
}

json bench_solve(std::uint32_t p, int k, int l, int count, std::uint64_t seed, int threads) {
  auto tower = build_setup_tower(p, 1, k, l);
  std::optional<Setup> s;
  for (std::uint64_t sd = seed; !s; ++sd) {
    Rng rng(sd);
    s = search_general(tower, l, rng, 20000);
  }
  Rng gen(seed);
  json runs = json::array();
  for (int t = 0; t < count; ++t) {
    const DensePoly g = target_random_nonzero(*s, gen);
    const DensePoly h = target_pow(*s, g, gen.below(s->N));
    SolveConfig cfg;
    cfg.seed = seed + t;
    cfg.threads = threads;
    const RunReport rep = solve_dlp(*s, g, h, cfg);
    runs.push_back({{"verified", rep.x.has_value()},
                    {"outer_retries", rep.outer_retries},
                    {"wall_ms", rep.wall_ms}});
  }
  return {{"q", s->q()}, {"k", k}, {"l", l}, {"N", to_string(s->N)}, {"runs", runs}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete logarithms in small-characteristic finite fields"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help");  // -h is taken by --h
  app.fallthrough();
  std::string out;
  app.add_option("-o,--out", out, "write the JSON result here instead of stdout");

  // setup
  auto* setup_cmd = app.add_subcommand("setup", "create a field setup");
  setup_cmd->require_subcommand(1);
  std::uint32_t p = 3;
  int fi = 1, k = 4, l = 2, emax = -1, h1_degree = -1;
  std::uint64_t seed = 1, budget = 100000;
  auto* kummer_cmd = setup_cmd->add_subcommand("kummer", "h1 = 1, h0 = aX, I = X^{q-1} - a");
  kummer_cmd->add_option("--p", p)->required();
  kummer_cmd->add_option("--i", fi, "q = p^i");
  kummer_cmd->add_option("--k", k)->required();
  kummer_cmd->add_option("--emax", emax, "tower height, default from l");
  auto* search_cmd = setup_cmd->add_subcommand("search", "random search for h0, h1, I");
  search_cmd->add_option("--p", p)->required();
  search_cmd->add_option("--i", fi);
  search_cmd->add_option("--k", k)->required();
  search_cmd->add_option("--l", l)->required();
  search_cmd->add_option("--emax", emax);
  search_cmd->add_option("--h1-degree", h1_degree, "only accept this deg h1");
  search_cmd->add_option("--seed", seed);
  search_cmd->add_option("--budget", budget, "trials per seed");

  // solve
  std::string relations_path;
  std::string setup_path, g_arg, h_arg, z_arg, relations_out;
  int threads = 0, max_retries = SolveConfig{}.max_outer_retries, rounds = 0;
  DescentOpts dopts;
  auto* solve_cmd = app.add_subcommand("solve", "find x with g^x = h");
  solve_cmd->add_option("--setup", setup_path)->required();
  solve_cmd->add_option("--g", g_arg, "target element: JSON array or @file")->required();
  solve_cmd->add_option("--h", h_arg)->required();
  solve_cmd->add_option("--seed", seed);
  solve_cmd->add_option("--threads", threads, "default QPDLOG_THREADS or 1");
  solve_cmd->add_option("--max-retries", max_retries);
  solve_cmd->add_option("--membership", rounds, "decide h in <g> with this many rounds");
  solve_cmd->add_option("--relations-out", relations_out, "JSON-lines dump of the last round");
  dopts.add(solve_cmd);

  // descend
  auto* descend_cmd = app.add_subcommand("descend", "express z over the factor base");
  descend_cmd->add_option("--setup", setup_path)->required();
  descend_cmd->add_option("--z", z_arg)->required();
  descend_cmd->add_option("--seed", seed);
  bool with_proof = true;
  descend_cmd->add_flag("!--no-proof", with_proof, "omit the proof log");
  dopts.add(descend_cmd);

  // eliminate
  std::string poly_arg, policy = "random";
  int level = 1;
  auto* elim_cmd = app.add_subcommand("eliminate", "rewrite one even-degree polynomial");
  elim_cmd->add_option("--setup", setup_path)->required();
  elim_cmd->add_option("--Q,--poly", poly_arg, "JSON array of coefficients, low first")
      ->required();
  elim_cmd->add_option("--level", level, "relative degree D of the coefficient field");
  elim_cmd->add_option("--seed", seed);
  elim_cmd->add_option("--policy", policy, "random, exhaustive or bluher");

  // bluher
  std::uint64_t cap = kDefaultEnumerationCap;
  bool enumerate = false;
  std::string u_arg;
  auto* bluher_cmd = app.add_subcommand("bluher", "the Bluher map over one level");
  auto* bl_setup = bluher_cmd->add_option("--setup", setup_path, "take the tower from a setup");
  auto* bl_p = bluher_cmd->add_option("--p", p);
  bluher_cmd->add_option("--i", fi);
  auto* bl_k = bluher_cmd->add_option("--k", k);
  bl_setup->excludes(bl_p)->excludes(bl_k);
  bl_p->needs(bl_k);
  bluher_cmd->add_option("--level", level, "relative degree D, a power of 2");
  bluher_cmd->add_option("--cap", cap, "largest field to enumerate");
  bluher_cmd->add_flag("--enumerate", enumerate, "one JSON line per B in the image");
  bluher_cmd->add_option("--u", u_arg, "map this element instead");

  // echelon
  std::string rows_out, log_out;
  auto* ech_cmd = app.add_subcommand("echelon", "row-reduce a relations file");
  ech_cmd->add_option("--setup", setup_path)->required();
  ech_cmd->add_option("--relations", relations_path)->required();
  ech_cmd->add_option("--rows-out", rows_out, "transformed relations, same format");
  ech_cmd->add_option("--log-out", log_out, "transform log sidecar");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "check a setup or a relations file");
  verify_cmd->add_option("--setup", setup_path)->required();
  verify_cmd->add_option("--relations", relations_path);
  verify_cmd->add_option("--g", g_arg);
  verify_cmd->add_option("--h", h_arg);

  // sample
  std::string exp_arg;
  auto* sample_cmd = app.add_subcommand("sample", "random nonzero target element, or g^x");
  sample_cmd->add_option("--setup", setup_path)->required();
  sample_cmd->add_option("--seed", seed);
  sample_cmd->add_option("--g", g_arg, "raise this element instead");
  sample_cmd->add_option("--x", exp_arg, "exponent for --g");

  // bench
  std::string suite = "small";
  auto* bench_cmd = app.add_subcommand("bench", "timing runs");
  bench_cmd->add_option("--suite", suite)->check(CLI::IsMember({"small", "medium"}));
  bench_cmd->add_option("--seed", seed);
  bench_cmd->add_option("--threads", threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*kummer_cmd) {
      const int height = emax >= 0 ? emax : default_emax(static_cast<int>(ipow(p, fi)) - 1);
      const Setup s = make_kummer(FieldTower::build(p, fi, k, height));
      for (const auto& w : guardrail_warnings(s)) std::cerr << "note: " << w << '\n';
      emit(setup_to_json(s), out);
      return 0;
    }
    if (*search_cmd) {
      TowerOptions opts;
      auto tower = emax >= 0 ? FieldTower::build(p, fi, k, emax, opts)
                             : build_setup_tower(p, fi, k, l, opts);
      for (std::uint64_t sd = seed; sd < seed + 1000; ++sd) {
        Rng rng(sd);
        auto s = search_general(tower, l, rng, budget);
        if (!s || (h1_degree >= 0 && s->h1.degree() != h1_degree)) continue;
        for (const auto& w : guardrail_warnings(*s)) std::cerr << "note: " << w << '\n';
        json j = setup_to_json(*s);
        j["search_seed"] = sd;
        emit(j, out);
        return 0;
      }
      std::cerr << "error: no setup found\n";
      return kExitBudget;
    }
    if (*solve_cmd) {
      const Setup s = load_setup(setup_path);
      const DensePoly g = decode_target(s, json_arg(g_arg, "--g"));
      const DensePoly h = decode_target(s, json_arg(h_arg, "--h"));
      SolveConfig cfg;
      cfg.seed = seed;
      cfg.threads = resolve_threads(threads);
      cfg.max_outer_retries = max_retries;
      cfg.descent = dopts.config();
      RunReport rep;
      json j;
      if (rounds > 0) {
        const Membership m = membership_test(s, g, h, rounds, cfg, progress_bar);
        rep = m.report;
        j = report_to_json(rep);
        j["member"] = m.member ? "member" : "probably_not_member";
      } else {
        rep = solve_dlp(s, g, h, cfg, progress_bar);
        j = report_to_json(rep);
      }
      if (!relations_out.empty()) {
        // Re-collect the final round so the dump matches the reported x.
        const Eliminator el(s);
        const auto rows = collect_relations(
            el, g, h, cfg,
            Rng(cfg.seed).child("round", static_cast<std::uint64_t>(rep.rounds.size() - 1)));
        std::ofstream f(relations_out);
        if (!f) throw InvalidInput("cannot write '" + relations_out + "'");
        write_relations(f, s, rows, &g, &h);
      }
      emit(j, out);
      return rep.x || rounds > 0 ? 0 : kExitBudget;
    }
    if (*descend_cmd) {
      const Setup s = load_setup(setup_path);
      const DensePoly z = decode_target(s, json_arg(z_arg, "--z"));
      const Eliminator el(s);
      Rng rng(seed);
      const DescentResult r = descend(el, z, dopts.config(), rng);
      json j = {{"relation", relation_to_json(r.relation)},
                {"verified", true},
                {"stats", stats_to_json(r.stats)}};
      if (with_proof) j["proof"] = proof_to_json(*s.tower, r.proof);
      emit(j, out);
      return 0;
    }
    if (*elim_cmd) {
      const Setup s = load_setup(setup_path);
      if (!s.tower->has_level(level)) throw InvalidInput("no level " + std::to_string(level));
      const LevelId lv = s.tower->level(level);
      ElimConfig ec;
      ec.policy = parse_policy(policy);
      const Eliminator el(s, ec);
      const DensePoly Q = decode_poly(*s.tower, json_arg(poly_arg, "--poly"), lv, lv);
      Rng rng(seed);
      const Rewrite rw = el.eliminate_even(lv, Q, rng);
      json j = rewrite_to_json(*s.tower, rw);
      j["verified"] = el.verify_rewrite(rw);
      emit(j, out);
      return j["verified"].get<bool>() ? 0 : kExitValidation;
    }
    if (*bluher_cmd) {
      int e = 0;
      while ((1 << e) < level) ++e;
      if ((1 << e) != level) throw InvalidInput("--level must be a power of 2");
      std::shared_ptr<const FieldTower> tower;
      if (!setup_path.empty()) {
        tower = load_setup(setup_path).tower;
        if (!tower->has_level(level)) throw InvalidInput("setup tower has no such level");
      } else {
        if (!*bl_p) throw InvalidInput("give --setup or --p and --k");
        tower = FieldTower::build(p, fi, k, e);
      }
      const LevelId lv = tower->level(level);
      if (!u_arg.empty()) {
        const FieldElt u = decode_element(*tower, u_arg);
        if (u.level != lv) throw InvalidInput("--u must lie in the chosen level");
        const BluherSample bs = bluher_from_u(*tower, u);
        emit({{"u", encode_element(*tower, u)}, {"B", encode_element(*tower, bs.B)}}, out);
        return 0;
      }
      const BluherImage img = enumerate_bluher(*tower, lv, cap);
      std::ostringstream lines;
      if (enumerate) {
        for (const auto& [B, count] : img.entries) {
          lines << json{{"B", encode_element(*tower, B)}, {"preimages", count}}.dump() << '\n';
        }
      }
      lines << json{{"count", img.entries.size()},
                    {"estimate_q^(kD-3)", img.estimate},
                    {"domain_size", img.domain_size},
                    {"q", tower->q()},
                    {"kD", tower->k() * level}}
                   .dump()
            << '\n';
      if (out.empty()) {
        std::cout << lines.str();
      } else {
        std::ofstream f(out);
        if (!f) throw InvalidInput("cannot write '" + out + "'");
        f << lines.str();
      }
      return 0;
    }
    if (*ech_cmd) {
      const Setup s = load_setup(setup_path);
      std::ifstream in(relations_path);
      if (!in) throw InvalidInput("cannot open '" + relations_path + "'");
      const auto rows = read_relations(in, s);
      RelationSystem sys = build_system(s, rows);
      const EchelonResult res = lower_row_echelon(
          std::move(sys.R), {std::move(sys.alpha), std::move(sys.beta)}, !log_out.empty());
      if (!rows_out.empty()) {
        std::ofstream f(rows_out);
        if (!f) throw InvalidInput("cannot write '" + rows_out + "'");
        for (std::size_t i = 0; i < res.R.rows(); ++i) {
          RelationRow row;
          row.alpha = res.carried[0][i];
          row.beta = res.carried[1][i];
          for (std::size_t j = 0; j < res.R.cols(); ++j) {
            if (res.R.at(i, j)) row.exps[j] = res.R.at(i, j);
          }
          f << row_to_json(row).dump() << '\n';
        }
      }
      if (!log_out.empty()) {
        std::ofstream f(log_out);
        if (!f) throw InvalidInput("cannot write '" + log_out + "'");
        f << log_to_json(res.log).dump() << '\n';
      }
      const FinalSolve fin = solve_final(res.carried[0][0], res.carried[1][0], s.N);
      emit({{"rows", res.R.rows()},
            {"zero_rows", res.zero_rows},
            {"ops", res.ops},
            {"alpha1", std::to_string(res.carried[0][0])},
            {"beta1", std::to_string(res.carried[1][0])},
            {"gcd", to_string(fin.gcd)},
            {"x", fin.x ? json(to_string(*fin.x)) : json(nullptr)}},
           out);
      return 0;
    }
    if (*verify_cmd) {
      const Setup s = load_setup(setup_path);  // validates
      json j = {{"setup", "valid"}};
      int rc = 0;
      if (!relations_path.empty()) {
        std::ifstream in(relations_path);
        if (!in) throw InvalidInput("cannot open '" + relations_path + "'");
        const auto rows = read_relations(in, s);
        std::vector<std::size_t> bad;
        if (!g_arg.empty() || !h_arg.empty()) {
          if (g_arg.empty() || h_arg.empty()) throw InvalidInput("give both --g and --h");
          bad = verify_rows(s, decode_target(s, json_arg(g_arg, "--g")),
                            decode_target(s, json_arg(h_arg, "--h")), rows);
        } else {
          bad = verify_stored_rows(s, rows);
        }
        j["rows"] = rows.size();
        j["failed"] = bad;
        if (!bad.empty()) rc = kExitValidation;
      }
      emit(j, out);
      return rc;
    }
    if (*sample_cmd) {
      const Setup s = load_setup(setup_path);
      DensePoly z;
      if (!g_arg.empty()) {
        if (exp_arg.empty()) throw InvalidInput("--g needs --x");
        z = target_pow(s, decode_target(s, json_arg(g_arg, "--g")), parse_bignat(exp_arg));
      } else {
        Rng rng(seed);
        z = target_random_nonzero(s, rng);
      }
      if (out.empty()) {
        std::cout << encode_target(s, z).dump() << '\n';
      } else {
        emit(encode_target(s, z), out);
      }
      return 0;
    }
    if (*bench_cmd) {
      const int t = resolve_threads(threads);
      const auto t0 = std::chrono::steady_clock::now();
      json j = {{"suite", suite}, {"seed", seed}, {"threads", t}};
      if (suite == "small") {
        j["descent_q3k4"] = bench_descents(make_kummer(build_setup_tower(3, 1, 4, 2)), 10, seed);
        j["solve_q2k3l3"] = bench_solve(2, 3, 3, 2, seed, t);
      } else {
        j["descent_q3k4"] = bench_descents(make_kummer(build_setup_tower(3, 1, 4, 2)), 25, seed);
        j["descent_q5k4"] = bench_descents(make_kummer(build_setup_tower(5, 1, 4, 4)), 3, seed);
        j["solve_q2k4l3"] = bench_solve(2, 4, 3, 2, seed, t);
      }
      j["wall_ms"] = since_ms(t0);
      emit(j, out);
      return 0;
    }
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const TrapError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
