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

// Control-program instruction set. A program is a list of instructions over a
// d-dimensional system; a Measure must be immediately followed by the Branch
// that consumes its outcome (Branch with two empty lists discards it).

#include <cstddef>
#include <variant>
#include <vector>

#include "oqcc/matcore.hpp"
#include "oqcc/primitive.hpp"

namespace oqcc {

struct Instruction;
using InstructionList = std::vector<Instruction>;

struct UnitaryOp {
  ComplexMatrix matrix;
};

struct MeasureOp {
  double gamma_t = 0.0;
  AveragingSchedule schedule;
};

struct BranchOp {
  InstructionList on0;
  InstructionList on1;
};

struct RepeatOp {
  std::size_t count = 0;
  InstructionList body;
};

struct Instruction {
  std::variant<UnitaryOp, MeasureOp, BranchOp, RepeatOp> op;
};

struct ControlProgram {
  Index dim = 0;
  InstructionList instructions;
};

/// Throws MalformedProgram on structural errors and shape mismatches.
void validate(const ControlProgram& p);

/// Kraus pair a measurement realizes: cos / sin of gamma_t times the
/// schedule's realized operator.
EffectivePair measurement_pair(const MeasureOp& m);

struct ProgramStats {
  double branch_count = 1.0;     // leaves of the outcome tree (may exceed 2^64)
  std::size_t measurements = 0;  // longest path
  std::size_t steps = 0;         // unitaries + measurements on the longest path
};

ProgramStats program_stats(const ControlProgram& p);

bool operator==(const Instruction& a, const Instruction& b);
bool operator==(const ControlProgram& a, const ControlProgram& b);

}  // namespace oqcc
