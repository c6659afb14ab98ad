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

#pragma once

// JSON file formats. Numbers are written as shortest round-trip decimal
// doubles, so parse(emit(x)) == x bit for bit.
//
//   matrix:    {"rows": r, "cols": c, "data": [[re, im], ...]}   row-major
//   channel:   {"dim": d, "kraus": [matrix, ...]}
//   generator: {"dim": d, "H": matrix, "form": "canonical", "lindblad": [matrix, ...]}
//              {"dim": d, "H": matrix, "form": "gks", "A": matrix, "basis": "gellmann"}
//   program:   {"dim": d, "instructions": [instruction, ...]} where instruction is
//              {"type": "unitary", "matrix": matrix}
//              {"type": "measure", "gamma_t": x, "schedule": [{"V": matrix, "duration": x}, ...]}
//              {"type": "branch", "on0": [...], "on1": [...]}
//              {"type": "repeat", "count": n, "body": [...]}

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oqcc/channels.hpp"
#include "oqcc/lindblad.hpp"
#include "oqcc/program.hpp"

namespace oqcc {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const Json& j);

/// The generator file as written, before validation into a generator.
struct GeneratorFile {
  Index dim = 0;
  ComplexMatrix hamiltonian;
  std::string form = "canonical";
  std::vector<ComplexMatrix> lindblad;  // canonical form
  ComplexMatrix coefficients;           // gks form
  std::string basis = "gellmann";

  /// Canonical generator; gks input is canonicalized, non-traceless
  /// canonical operators are adjusted (see CanonicalGenerator::from_operators).
  CanonicalGenerator to_generator(std::vector<TraceAdjustment>* adjustments = nullptr) const;

  bool operator==(const GeneratorFile&) const = default;
};

Json generator_to_json(const GeneratorFile& g);
GeneratorFile generator_from_json(const Json& j);
GeneratorFile generator_file_of(const CanonicalGenerator& g);

Json program_to_json(const ControlProgram& p);
/// Parses and validates.
ControlProgram program_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace oqcc
