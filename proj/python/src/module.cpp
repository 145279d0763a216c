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

// Python bindings. Structured results cross the boundary as JSON text and
// are decoded on the Python side, so big integers stay exact.

#include <memory>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpdlog/bluher.hpp"
#include "qpdlog/codec.hpp"
#include "qpdlog/descent.hpp"
#include "qpdlog/errors.hpp"
#include "qpdlog/linalg.hpp"
#include "qpdlog/setup.hpp"
#include "qpdlog/solver.hpp"

namespace py = pybind11;
using namespace qpdlog;
using nlohmann::json;

namespace {

struct PySetup {
  std::shared_ptr<const Setup> s;
  std::shared_ptr<const Eliminator> el;

  explicit PySetup(Setup setup)
      : s(std::make_shared<const Setup>(std::move(setup))),
        el(std::make_shared<const Eliminator>(*s)) {}

  DensePoly target(const std::string& enc) const { return decode_target(*s, json::parse(enc)); }
  std::string encode(const DensePoly& z) const { return encode_target(*s, z).dump(); }
};

PySetup kummer(std::uint32_t p, int i, int k, int emax) {
  if (emax < 0) emax = default_emax(static_cast<int>(ipow(p, i)) - 1);
  return PySetup(make_kummer(FieldTower::build(p, i, k, emax)));
}

PySetup search(std::uint32_t p, int i, int k, int l, std::uint64_t seed, std::uint64_t budget,
               int h1_degree) {
  auto tower = build_setup_tower(p, i, k, l);
  for (std::uint64_t sd = seed; sd < seed + 1000; ++sd) {
    Rng rng(sd);
    auto s = search_general(tower, l, rng, budget);
    if (s && (h1_degree < 0 || s->h1.degree() == h1_degree)) return PySetup(std::move(*s));
  }
  throw BudgetExhausted("no setup found");
}

std::string descend_json(const PySetup& ps, const std::string& z, std::uint64_t seed, int e,
                         bool proof) {
  DescentConfig cfg;
  cfg.e = e;
  Rng rng(seed);
  DescentResult r;
  {
    py::gil_scoped_release nogil;
    r = descend(*ps.el, ps.target(z), cfg, rng);
  }
  json j = {{"relation", relation_to_json(r.relation)}, {"stats", stats_to_json(r.stats)}};
  if (proof) j["proof"] = proof_to_json(*ps.s->tower, r.proof);
  return j.dump();
}

bool verify_json(const PySetup& ps, const std::string& z, const std::string& relation) {
  const FactorBase fb(*ps.s);
  return verify_relation(*ps.s, fb, ps.target(z), relation_from_json(json::parse(relation), ps.s->N));
}

std::string solve_json(const PySetup& ps, const std::string& g, const std::string& h,
                       std::uint64_t seed, int threads, int max_retries, int rounds) {
  SolveConfig cfg;
  cfg.seed = seed;
  cfg.threads = resolve_threads(threads);
  cfg.max_outer_retries = max_retries;
  const DensePoly gz = ps.target(g), hz = ps.target(h);
  py::gil_scoped_release nogil;
  if (rounds > 0) {
    const Membership m = membership_test(*ps.s, gz, hz, rounds, cfg);
    json j = report_to_json(m.report);
    j["member"] = m.member;
    return j.dump();
  }
  return report_to_json(solve_dlp(*ps.s, gz, hz, cfg)).dump();
}

std::string bluher_json(std::uint32_t p, int i, int k, int level) {
  int e = 0;
  while ((1 << e) < level) ++e;
  if ((1 << e) != level) throw InvalidInput("level must be a power of 2");
  auto tower = FieldTower::build(p, i, k, e);
  const BluherImage img = enumerate_bluher(*tower, tower->level(level));
  json image = json::array();
  json counts = json::array();
  for (const auto& [B, c] : img.entries) {
    image.push_back(encode_element(*tower, B));
    counts.push_back(c);
  }
  return json{{"image", image}, {"counts", counts}, {"domain_size", img.domain_size}}.dump();
}

std::string echelon_json(const std::vector<std::vector<std::uint64_t>>& rows,
                         const std::string& N, const std::vector<std::vector<std::uint64_t>>& carried) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  ZnMatrix R(parse_bignat(N), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidInput("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) R.set(i, j, rows[i][j]);
  }
  std::vector<ZnVector> cv;
  for (const auto& v : carried) {
    ZnVector z;
    for (auto x : v) z.push_back(static_cast<std::uint32_t>(x % R.modulus()));
    cv.push_back(std::move(z));
  }
  const EchelonResult res = lower_row_echelon(std::move(R), std::move(cv), true);
  json out_rows = json::array();
  for (std::size_t i = 0; i < res.R.rows(); ++i) {
    out_rows.push_back(std::vector<std::uint32_t>(res.R.row(i), res.R.row(i) + cols));
  }
  return json{{"rows", out_rows},
              {"carried", res.carried},
              {"zero_rows", res.zero_rows},
              {"log", log_to_json(res.log)}}
      .dump();
}

std::string solve_final_json(const std::string& a, const std::string& b, const std::string& N) {
  const FinalSolve f = solve_final(parse_bignat(a), parse_bignat(b), parse_bignat(N));
  return json{{"x", f.x ? json(to_string(*f.x)) : json(nullptr)}, {"gcd", to_string(f.gcd)}}.dump();
}

}  // namespace

PYBIND11_MODULE(_qpdlog, m) {
  m.doc() = "Discrete logarithms in small-characteristic finite fields";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<PySetup>(m, "Setup")
      .def_static("kummer", &kummer, py::arg("p"), py::arg("i") = 1, py::arg("k"),
                  py::arg("emax") = -1)
      .def_static("search", &search, py::arg("p"), py::arg("i") = 1, py::arg("k"), py::arg("l"),
                  py::arg("seed") = 1, py::arg("budget") = 100000, py::arg("h1_degree") = -1)
      .def_static("from_json",
                  [](const std::string& text) { return PySetup(setup_from_json(json::parse(text))); })
      .def("to_json", [](const PySetup& ps) { return setup_to_json(*ps.s).dump(); })
      .def_property_readonly("q", [](const PySetup& ps) { return ps.s->q(); })
      .def_property_readonly("k", [](const PySetup& ps) { return ps.s->k(); })
      .def_property_readonly("l", [](const PySetup& ps) { return ps.s->l; })
      .def_property_readonly("N", [](const PySetup& ps) { return to_string(ps.s->N); })
      .def_property_readonly("factor_base_size",
                             [](const PySetup& ps) { return FactorBase(*ps.s).size(); })
      .def("validate", [](const PySetup& ps) { return validate_setup(*ps.s); })
      .def("random_target",
           [](const PySetup& ps, std::uint64_t seed) {
             Rng rng(seed);
             return ps.encode(target_random_nonzero(*ps.s, rng));
           })
      .def("power", [](const PySetup& ps, const std::string& z, const std::string& x) {
        return ps.encode(target_pow(*ps.s, ps.target(z), parse_bignat(x)));
      });

  m.def("descend", &descend_json, py::arg("setup"), py::arg("z"), py::arg("seed") = 1,
        py::arg("e") = 0, py::arg("proof") = false);
  m.def("verify_relation", &verify_json);
  m.def("solve", &solve_json, py::arg("setup"), py::arg("g"), py::arg("h"), py::arg("seed") = 1,
        py::arg("threads") = 0, py::arg("max_retries") = 8, py::arg("rounds") = 0);
  m.def("bluher_image", &bluher_json, py::arg("p"), py::arg("i") = 1, py::arg("k"),
        py::arg("level") = 1);
  m.def("echelon", &echelon_json, py::arg("rows"), py::arg("N"),
        py::arg("carried") = std::vector<std::vector<std::uint64_t>>{});
  m.def("solve_final", &solve_final_json);
}
