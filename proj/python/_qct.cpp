// Copyright 2026 The QCT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qct/cheat_opt.hpp"
#include "qct/classical.hpp"
#include "qct/dilation.hpp"
#include "qct/dk_protocol.hpp"
#include "qct/errors.hpp"
#include "qct/io.hpp"
#include "qct/linalg.hpp"
#include "qct/protocol.hpp"

namespace py = pybind11;
using namespace qct;

namespace {

using Table = Eigen::Matrix<double, 3, 3, Eigen::RowMajor>;
using Counts = Eigen::Matrix<std::uint64_t, 3, 3, Eigen::RowMajor>;

Table to_table(const OutcomeDistribution& d) {
  Table t;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) t(a, b) = d.table()[a][b];
  }
  return t;
}

Counts to_counts(const CountTable& c) {
  Counts t;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) t(a, b) = c[a][b];
  }
  return t;
}

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const io::Json& j) { return j.dump(); }

SearchConfig make_config(std::size_t restarts, long long budget, std::uint64_t seed,
                         std::optional<double> claimed_bound) {
  SearchConfig c;
  c.restarts = restarts;
  c.budget = budget;
  c.seed = seed;
  c.claimed_bound = claimed_bound;
  return c;
}

}  // namespace

PYBIND11_MODULE(_qct, m) {
  m.doc() = "Quantum coin-tossing protocol simulator (native core)";

  auto base = py::register_exception<Error>(m, "QctError", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ProtocolError>(m, "ProtocolError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());

  py::enum_<Party>(m, "Party").value("ALICE", Party::kAlice).value("BOB", Party::kBob);

  // linear algebra
  m.def("partial_trace", &partial_trace, py::arg("m"), py::arg("dims"), py::arg("keep"));
  m.def("trace_norm", &trace_norm);
  m.def("fidelity", &fidelity, py::arg("rho"), py::arg("sigma"));
  m.def("helstrom", py::overload_cast<const CMatrix&, const CMatrix&, double>(&helstrom),
        py::arg("rho0"), py::arg("rho1"), py::arg("prior") = 0.5);

  py::class_<Strategy>(m, "Strategy")
      .def_readonly("party", &Strategy::party)
      .def("to_json", [](const Strategy& s) { return dump(io::to_json(s)); })
      .def_static("from_json", [](const std::string& text) { return io::strategy_from_json(io::parse(text)); });

  py::class_<Protocol>(m, "Protocol")
      .def_readonly("rounds", &Protocol::rounds)
      .def_readonly("alice", &Protocol::alice)
      .def_readonly("bob", &Protocol::bob)
      .def("to_json", [](const Protocol& p) { return dump(io::to_json(p)); })
      .def_static("from_json", [](const std::string& text) { return io::protocol_from_json(io::parse(text)); })
      .def("with_strategy", &with_strategy, py::arg("replacement"));

  m.def("run_exact", [](const Protocol& p) { return to_table(run_exact(p)); });
  m.def("sample", [](const Protocol& p, std::uint64_t n, std::uint64_t seed) { return to_counts(sample(p, n, seed)); },
        py::arg("protocol"), py::arg("n"), py::arg("seed") = 0);
  m.def("forcing_probability", &forcing_probability, py::arg("protocol"), py::arg("cheater"),
        py::arg("target"), py::arg("replacement"));

  auto dk = m.def_submodule("dk", "The three-dimensional protocol and its published attacks");
  dk.def("honest", &dk::build_dk_honest, py::arg("bob_fiducial") = 2);
  dk.def("bob_cheat", &dk::build_bob_cheat, py::arg("target"));
  dk.def("alice_cheat", &dk::build_alice_cheat, py::arg("target"));
  dk.def("psi", &dk::psi, py::arg("bit"));
  dk.def("psi_tilde", &dk::psi_tilde, py::arg("bit"));

  m.def(
      "dilate",
      [](const Protocol& context, Party party, std::size_t opponents, std::uint64_t seed) {
        const Strategy& s = party == Party::kAlice ? context.alice : context.bob;
        const PureStrategy pure = unitary_normal_form(s);
        const DilationReport report = verify_normal_form(context, s, pure, opponents, seed);
        return py::make_tuple(pure.strategy, dump(io::to_json(report)));
      },
      py::arg("protocol"), py::arg("party"), py::arg("opponents") = 20, py::arg("seed") = 0);

  m.def(
      "alice_preparation_bound",
      [](const CVector& psi0, const CVector& psi1, const Dims& dims, std::size_t mailbox_factor,
         std::size_t restarts, long long budget, std::uint64_t seed, std::optional<double> claimed_bound) {
        const auto r = alice_preparation_bound(psi0, psi1, dims, mailbox_factor,
                                               make_config(restarts, budget, seed, claimed_bound));
        return py::make_tuple(r.value, r.argmax, r.evaluations, r.diagnostics);
      },
      py::arg("psi0"), py::arg("psi1"), py::arg("dims"), py::arg("mailbox_factor"), py::arg("restarts") = 32,
      py::arg("budget") = 20000, py::arg("seed") = 0, py::arg("claimed_bound") = py::none());

  m.def(
      "optimize_cheat",
      [](const Protocol& p, const std::string& family, Party party, int target, std::size_t restarts,
         long long budget, std::uint64_t seed, std::optional<double> claimed_bound) {
        const CheatFamily f = dk::family_by_name(family, party, target, p);
        return dump(io::to_json(optimize_cheat(p, f, target, make_config(restarts, budget, seed, claimed_bound))));
      },
      py::arg("protocol"), py::arg("family"), py::arg("party"), py::arg("target"), py::arg("restarts") = 32,
      py::arg("budget") = 20000, py::arg("seed") = 0, py::arg("claimed_bound") = py::none());

  py::class_<ClassicalProtocol>(m, "ClassicalProtocol")
      .def("to_json", [](const ClassicalProtocol& c) { return dump(io::to_json(c)); })
      .def_static("from_json", [](const std::string& text) { return io::classical_from_json(io::parse(text)); })
      .def_static("xor", &classical_xor)
      .def_static("dictator", &classical_dictator);

  m.def("classical_distribution", [](const ClassicalProtocol& c) { return to_table(classical_distribution(c)); });
  m.def(
      "solve_winning",
      [](const ClassicalProtocol& c, int winner_outcome) {
        const WinningResult r = solve_winning(c, winner_outcome);
        return py::make_tuple(r.party, r.value, to_string(r.forced), dump(io::to_json(r.strategy, c)));
      },
      py::arg("protocol"), py::arg("winner_outcome"));
  m.def("for_each_fair_protocol", &for_each_fair_protocol, py::arg("max_rounds"), py::arg("callback"));
}
