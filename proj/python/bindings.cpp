// Copyright 2026 The oqcc Authors
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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oqcc/compiler.hpp"
#include "oqcc/errors.hpp"
#include "oqcc/serialize.hpp"
#include "oqcc/simulator.hpp"

namespace py = pybind11;
using namespace oqcc;

namespace {

using Ops = std::vector<ComplexMatrix>;

CanonicalGenerator make_generator(const ComplexMatrix& h, const Ops& ls) {
  return CanonicalGenerator::from_operators(HermitianMatrix::from(h), ls);
}

py::dict report_dict(const Diagnostics& diag) {
  py::dict d;
  d["warnings"] = diag.warnings;
  d["level_defects"] = diag.level_defects;
  d["degenerate"] = diag.degenerate;
  return d;
}

}  // namespace

PYBIND11_MODULE(_oqcc, m) {
  m.doc() = "Dense open-system control compiler and simulator";

  static py::exception<Error> error(m, "OqccError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error)(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("expm", &expm, py::arg("a"));
  m.def(
      "polar",
      [](const ComplexMatrix& a) {
        PolarFactors f = polar(a);
        return std::make_pair(f.unitary, f.positive.matrix());
      },
      py::arg("a"), "Returns (U, P) with a = U P, U unitary, P positive.");
  m.def(
      "heig",
      [](const ComplexMatrix& h) {
        EigenSystem es = heig(HermitianMatrix::from(h));
        return std::make_pair(es.eigenvalues, es.eigenvectors);
      },
      py::arg("h"));

  m.def(
      "apply_channel",
      [](const Ops& kraus, const ComplexMatrix& rho) { return apply(KrausChannel(kraus), DensityMatrix(rho)).matrix(); },
      py::arg("kraus"), py::arg("rho"));
  m.def(
      "choi", [](const Ops& kraus) { return choi(KrausChannel(kraus)).matrix.matrix(); }, py::arg("kraus"));
  m.def(
      "channel_distance",
      [](const Ops& a, const Ops& b) { return channel_distance(KrausChannel(a), KrausChannel(b)); }, py::arg("a"),
      py::arg("b"));
  m.def(
      "propagate",
      [](const ComplexMatrix& h, const Ops& ls, const ComplexMatrix& rho, double t) {
        return propagate(make_generator(h, ls), DensityMatrix(rho), t).matrix();
      },
      py::arg("hamiltonian"), py::arg("lindblad"), py::arg("rho"), py::arg("time"));

  py::class_<ControlProgram>(m, "Program")
      .def_property_readonly("dim", [](const ControlProgram& p) { return p.dim; })
      .def("to_json", [](const ControlProgram& p) { return program_to_json(p).dump(); })
      .def_static(
          "from_json", [](const std::string& s) { return program_from_json(Json::parse(s)); }, py::arg("text"))
      .def("stats",
           [](const ControlProgram& p) {
             const ProgramStats s = program_stats(p);
             py::dict d;
             d["branches"] = s.branch_count;
             d["measurements"] = s.measurements;
             d["steps"] = s.steps;
             return d;
           })
      .def("kraus", [](const ControlProgram& p) { return extract_channel(p).operators(); })
      .def("superoperator", [](const ControlProgram& p) { return program_superoperator(p).matrix; })
      .def(
          "branches",
          [](const ControlProgram& p, const ComplexMatrix& rho) {
            std::vector<std::pair<ComplexMatrix, std::string>> out;
            for (auto& b : run_branches(p, DensityMatrix(rho), branch_cap_from_env()))
              out.emplace_back(std::move(b.rho), std::move(b.record));
            return out;
          },
          py::arg("rho"), "Unnormalized branch states and their outcome records.")
      .def(
          "simulate",
          [](const ControlProgram& p, const ComplexMatrix& rho) {
            ComplexMatrix acc = ComplexMatrix::Zero(p.dim, p.dim);
            for (const auto& b : run_branches(p, DensityMatrix(rho), branch_cap_from_env())) acc += b.rho;
            return acc;
          },
          py::arg("rho"))
      .def(
          "trajectories",
          [](const ControlProgram& p, const ComplexMatrix& rho, std::size_t count, std::uint64_t seed,
             unsigned workers) {
            TrajectoryResult r;
            {
              py::gil_scoped_release release;
              r = run_trajectories(p, TrajectoryConfig{seed, count, DensityMatrix(rho), workers});
            }
            return std::make_pair(r.estimate, r.standard_error);
          },
          py::arg("rho"), py::arg("count"), py::arg("seed") = 0, py::arg("workers") = 1,
          "Returns (estimate, standard_error).")
      .def("__eq__", [](const ControlProgram& a, const ControlProgram& b) { return a == b; });

  m.def(
      "compile_channel",
      [](const Ops& kraus) {
        Diagnostics diag;
        const KrausChannel ch(kraus);
        ControlProgram p = ch.size() == 2 ? synth_two_outcome(ch, &diag) : synth_multi_outcome(kraus, &diag);
        return std::make_pair(std::move(p), report_dict(diag));
      },
      py::arg("kraus"), "Returns (program, diagnostics).");
  m.def(
      "compile_lindblad",
      [](const ComplexMatrix& h, const Ops& ls, double time, std::size_t steps) {
        Diagnostics diag;
        ControlProgram p = synth_lindblad(make_generator(h, ls), time, steps, &diag);
        return std::make_pair(std::move(p), report_dict(diag));
      },
      py::arg("hamiltonian"), py::arg("lindblad"), py::arg("time"), py::arg("steps"));
  m.def(
      "verify", [](const ControlProgram& p, const Ops& kraus) { return verify(p, KrausChannel(kraus)).distance; },
      py::arg("program"), py::arg("kraus"), "Choi distance between the program and a channel.");
  m.def(
      "commutator_step",
      [](const ComplexMatrix& h1, const ComplexMatrix& h2, double dt) {
        return commutator_step(HermitianMatrix::from(h1), HermitianMatrix::from(h2), dt);
      },
      py::arg("h1"), py::arg("h2"), py::arg("dt"));
}
