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

#include "oqcc/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "oqcc/errors.hpp"

namespace oqcc {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::kParse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_error(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) parse_error(std::string(what) + " must be finite");
  return x;
}

Index count(const Json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) parse_error(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < 0) parse_error(std::string(what) + " must be non-negative");
  return static_cast<Index>(v);
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array");
  return j;
}

Json list_to_json(const InstructionList& list);

Json instruction_to_json(const Instruction& ins) {
  Json j;
  if (const auto* u = std::get_if<UnitaryOp>(&ins.op)) {
    j["type"] = "unitary";
    j["matrix"] = matrix_to_json(u->matrix);
  } else if (const auto* m = std::get_if<MeasureOp>(&ins.op)) {
    j["type"] = "measure";
    j["gamma_t"] = m->gamma_t;
    Json segs = Json::array();
    for (const auto& s : m->schedule.segments()) {
      segs.push_back(Json{{"V", matrix_to_json(s.v)}, {"duration", s.duration}});
    }
    j["schedule"] = std::move(segs);
  } else if (const auto* b = std::get_if<BranchOp>(&ins.op)) {
    j["type"] = "branch";
    j["on0"] = list_to_json(b->on0);
    j["on1"] = list_to_json(b->on1);
  } else {
    const auto& r = std::get<RepeatOp>(ins.op);
    j["type"] = "repeat";
    j["count"] = r.count;
    j["body"] = list_to_json(r.body);
  }
  return j;
}

Json list_to_json(const InstructionList& list) {
  Json a = Json::array();
  for (const auto& ins : list) a.push_back(instruction_to_json(ins));
  return a;
}

InstructionList list_from_json(const Json& j);

Instruction instruction_from_json(const Json& j) {
  const Json& type = field(j, "type");
  if (!type.is_string()) parse_error("instruction type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "unitary") return Instruction{UnitaryOp{matrix_from_json(field(j, "matrix"))}};
  if (t == "measure") {
    std::vector<ScheduleSegment> segs;
    for (const auto& s : array(field(j, "schedule"), "schedule")) {
      segs.push_back(ScheduleSegment{matrix_from_json(field(s, "V")), number(field(s, "duration"), "duration")});
    }
    return Instruction{MeasureOp{number(field(j, "gamma_t"), "gamma_t"), AveragingSchedule(std::move(segs))}};
  }
  if (t == "branch") {
    return Instruction{BranchOp{list_from_json(field(j, "on0")), list_from_json(field(j, "on1"))}};
  }
  if (t == "repeat") {
    return Instruction{RepeatOp{static_cast<std::size_t>(count(field(j, "count"), "count")),
                                list_from_json(field(j, "body"))}};
  }
  parse_error("unknown instruction type \"" + t + "\"");
}

InstructionList list_from_json(const Json& j) {
  InstructionList out;
  for (const auto& e : array(j, "instruction list")) out.push_back(instruction_from_json(e));
  return out;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) data.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const Index rows = count(field(j, "rows"), "rows");
  const Index cols = count(field(j, "cols"), "cols");
  if (rows < 1 || cols < 1) parse_error("matrix must have rows >= 1 and cols >= 1");
  const Json& data = array(field(j, "data"), "data");
  if (static_cast<Index>(data.size()) != rows * cols) parse_error("matrix data length != rows * cols");
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) {
      const Json& e = data[static_cast<std::size_t>(i * cols + k)];
      if (!e.is_array() || e.size() != 2) parse_error("matrix entries must be [re, im] pairs");
      m(i, k) = Complex(number(e[0], "entry"), number(e[1], "entry"));
    }
  }
  return m;
}

Json channel_to_json(const KrausChannel& ch) {
  Json ops = Json::array();
  for (const auto& a : ch.operators()) ops.push_back(matrix_to_json(a));
  return Json{{"dim", ch.d_in()}, {"kraus", std::move(ops)}};
}

KrausChannel channel_from_json(const Json& j) {
  const Index d = count(field(j, "dim"), "dim");
  std::vector<ComplexMatrix> ops;
  for (const auto& m : array(field(j, "kraus"), "kraus")) {
    ops.push_back(matrix_from_json(m));
    if (ops.back().rows() != d || ops.back().cols() != d) parse_error("Kraus operator shape != dim");
  }
  return KrausChannel(std::move(ops));
}

CanonicalGenerator GeneratorFile::to_generator(std::vector<TraceAdjustment>* adjustments) const {
  const HermitianMatrix h = HermitianMatrix::from(hamiltonian);
  if (h.dim() != dim) parse_error("H shape != dim");
  if (form == "canonical") return CanonicalGenerator::from_operators(h, lindblad, adjustments);
  if (basis != "gellmann") parse_error("unsupported basis \"" + basis + "\"");
  return canonicalize(GKSGenerator(h, OperatorBasis::gellmann(dim), HermitianMatrix::from(coefficients)));
}

Json generator_to_json(const GeneratorFile& g) {
  Json j{{"dim", g.dim}, {"H", matrix_to_json(g.hamiltonian)}, {"form", g.form}};
  if (g.form == "canonical") {
    Json ops = Json::array();
    for (const auto& l : g.lindblad) ops.push_back(matrix_to_json(l));
    j["lindblad"] = std::move(ops);
  } else {
    j["A"] = matrix_to_json(g.coefficients);
    j["basis"] = g.basis;
  }
  return j;
}

GeneratorFile generator_from_json(const Json& j) {
  GeneratorFile g;
  g.dim = count(field(j, "dim"), "dim");
  if (g.dim < 1) parse_error("dim must be >= 1");
  g.hamiltonian = matrix_from_json(field(j, "H"));
  if (g.hamiltonian.rows() != g.dim || g.hamiltonian.cols() != g.dim) parse_error("H shape != dim");
  const Json& form = field(j, "form");
  if (!form.is_string()) parse_error("form must be a string");
  g.form = form.get<std::string>();
  if (g.form == "canonical") {
    for (const auto& m : array(field(j, "lindblad"), "lindblad")) {
      g.lindblad.push_back(matrix_from_json(m));
      if (g.lindblad.back().rows() != g.dim || g.lindblad.back().cols() != g.dim) {
        parse_error("Lindblad operator shape != dim");
      }
    }
  } else if (g.form == "gks") {
    g.coefficients = matrix_from_json(field(j, "A"));
    const Index n = g.dim * g.dim - 1;
    if (g.coefficients.rows() != n || g.coefficients.cols() != n) parse_error("A must be (dim^2 - 1) square");
    const Json& basis = field(j, "basis");
    if (!basis.is_string()) parse_error("basis must be a string");
    g.basis = basis.get<std::string>();
  } else {
    parse_error("form must be \"canonical\" or \"gks\"");
  }
  return g;
}

GeneratorFile generator_file_of(const CanonicalGenerator& g) {
  GeneratorFile f;
  f.dim = g.dim();
  f.hamiltonian = g.hamiltonian().matrix();
  f.form = "canonical";
  f.lindblad = g.lindblad_ops();
  return f;
}

Json program_to_json(const ControlProgram& p) {
  return Json{{"dim", p.dim}, {"instructions", list_to_json(p.instructions)}};
}

ControlProgram program_from_json(const Json& j) {
  ControlProgram p{count(field(j, "dim"), "dim"), list_from_json(field(j, "instructions"))};
  validate(p);
  return p;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    parse_error("\"" + path + "\": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write \"" + path + "\"");
  out << j.dump() << '\n';
}

}  // namespace oqcc
