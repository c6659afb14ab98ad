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

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "oqcc/compiler.hpp"
#include "oqcc/random.hpp"
#include "oqcc/serialize.hpp"
#include "test_util.hpp"

using namespace oqcc;
using namespace testutil;

namespace {

ControlProgram random_program(Index d, Rng& rng) {
  InstructionList inner{Instruction{MeasureOp{0.37, compile_schedule(random_unit_trace_psd(d, rng))}},
                        Instruction{BranchOp{{Instruction{UnitaryOp{random_unitary(d, rng)}}}, {}}}};
  return ControlProgram{d,
                        {Instruction{UnitaryOp{random_unitary(d, rng)}}, Instruction{RepeatOp{3, inner}},
                         Instruction{MeasureOp{1.1, compile_schedule(random_unit_trace_psd(d, rng))}},
                         Instruction{BranchOp{inner, {Instruction{UnitaryOp{random_unitary(d, rng)}}}}}}};
}

}  // namespace

TEST_CASE("matrix JSON layout", "[serialize]") {
  const ComplexMatrix m = mat2(Complex(1, 2), 3, Complex(0, -4), 0.1);
  const Json j = matrix_to_json(m);
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 2);
  REQUIRE(j["data"].size() == 4);
  CHECK(j["data"][1][0] == 3.0);  // row-major
  CHECK(j["data"][2][1] == -4.0);
  CHECK(matrix_from_json(j) == m);
  CHECK(matrix_from_json(Json::parse(j.dump())) == m);
}

TEST_CASE("matrix JSON rejects malformed input", "[serialize]") {
  auto bad = [](const char* text) {
    return throws_kind(ErrorKind::kParse, [&] { matrix_from_json(Json::parse(text)); });
  };
  CHECK(bad(R"({"rows": 1, "cols": 2, "data": [[1, 0]]})"));
  CHECK(bad(R"({"rows": 1, "cols": 1, "data": [[1]]})"));
  CHECK(bad(R"({"rows": 1, "cols": 1, "data": [["a", 0]]})"));
  CHECK(bad(R"({"rows": -1, "cols": 1, "data": []})"));
  CHECK(bad(R"({"cols": 1, "data": [[1, 0]]})"));
  CHECK(bad(R"([1, 2])"));
}

TEST_CASE("channel and generator round trips", "[serialize][property]") {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 2 + trial % 3;
    const KrausChannel ch = random_channel(d, 1 + trial % 3, rng);
    const KrausChannel back = channel_from_json(Json::parse(channel_to_json(ch).dump()));
    REQUIRE(back.size() == ch.size());
    for (std::size_t k = 0; k < ch.size(); ++k) CHECK(back.operators()[k] == ch.operators()[k]);

    GeneratorFile g;
    g.dim = d;
    g.hamiltonian = random_hermitian(d, rng).matrix();
    if (trial % 2 == 0) {
      g.form = "canonical";
      g.lindblad = {random_ginibre(d, d, rng), random_ginibre(d, d, rng)};
    } else {
      g.form = "gks";
      const ComplexMatrix a = random_ginibre(d * d - 1, d * d - 1, rng);
      g.coefficients = HermitianMatrix::symmetrized(a * a.adjoint()).matrix();
    }
    CHECK(generator_from_json(Json::parse(generator_to_json(g).dump())) == g);
    CHECK_NOTHROW(g.to_generator());
  }
}

TEST_CASE("channel file validation", "[serialize]") {
  Json j = channel_to_json(amplitude_damping(0.3));
  j["kraus"].erase(1);
  CHECK(throws_kind(ErrorKind::kCompletenessViolation, [&] { channel_from_json(j); }));
  Json k = channel_to_json(amplitude_damping(0.3));
  k["dim"] = 3;
  CHECK(throws_kind(ErrorKind::kParse, [&] { channel_from_json(k); }));
}

TEST_CASE("generator file validation", "[serialize]") {
  GeneratorFile g = generator_file_of(CanonicalGenerator(HermitianMatrix::from(sz()), {sminus()}));
  Json j = generator_to_json(g);
  j["form"] = "other";
  CHECK(throws_kind(ErrorKind::kParse, [&] { generator_from_json(j); }));
  Json h = generator_to_json(g);
  h["H"] = matrix_to_json(sminus());
  CHECK_THROWS_AS(generator_from_json(h).to_generator(), Error);
  // Non-traceless canonical operators are adjusted and reported.
  g.lindblad = {sminus() + id(2)};
  std::vector<TraceAdjustment> adj;
  g.to_generator(&adj);
  CHECK(adj.size() == 1);
}

TEST_CASE("program round trips", "[serialize][property]") {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const ControlProgram p = random_program(2 + trial % 3, rng);
    const ControlProgram back = program_from_json(Json::parse(program_to_json(p).dump()));
    CHECK(back == p);
    CHECK(program_to_json(back).dump() == program_to_json(p).dump());
  }
  const ControlProgram ad = synth_two_outcome(amplitude_damping(0.36));
  CHECK(program_from_json(program_to_json(ad)) == ad);
}

TEST_CASE("program parsing validates structure", "[serialize]") {
  auto parse = [](const char* text) { program_from_json(Json::parse(text)); };
  CHECK(throws_kind(ErrorKind::kParse, [&] { parse(R"({"dim": 2, "instructions": [{"type": "nope"}]})"); }));
  CHECK(throws_kind(ErrorKind::kMalformedProgram, [&] {
    parse(R"({"dim": 2, "instructions": [{"type": "branch", "on0": [], "on1": []}]})");
  }));
  CHECK(throws_kind(ErrorKind::kMalformedProgram, [&] {
    parse(R"({"dim": 2, "instructions": [{"type": "measure", "gamma_t": 0.3,
              "schedule": [{"V": {"rows": 2, "cols": 2, "data": [[1,0],[0,0],[0,0],[1,0]]}, "duration": 1}]}]})");
  }));
  CHECK(throws_kind(ErrorKind::kMalformedProgram, [&] {
    parse(R"({"dim": 2, "instructions": [{"type": "unitary", "matrix": {"rows": 2, "cols": 2,
              "data": [[1,0],[1,0],[0,0],[1,0]]}}]})");
  }));
  CHECK_NOTHROW(parse(R"({"dim": 2, "instructions": []})"));
}

TEST_CASE("file helpers", "[serialize]") {
  const auto dir = std::filesystem::temp_directory_path() / "oqcc_serialize_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "m.json").string();
  write_json_file(path, matrix_to_json(sx()));
  CHECK(matrix_from_json(read_json_file(path)) == sx());
  CHECK(throws_kind(ErrorKind::kParse, [&] { read_json_file((dir / "missing.json").string()); }));
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{not json";
  }
  CHECK(throws_kind(ErrorKind::kParse, [&] { read_json_file((dir / "bad.json").string()); }));
  std::filesystem::remove_all(dir);
}
