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

// Synthesis of control programs from target evolutions. Every pass emits
// only unitaries, Yes-No measurements with averaging schedules, and branches
// on the measured bit.

#include <string>
#include <vector>

#include "oqcc/channels.hpp"
#include "oqcc/lindblad.hpp"
#include "oqcc/program.hpp"

namespace oqcc {

/// Non-fatal events recorded during synthesis.
struct Diagnostics {
  std::vector<std::string> warnings;
  /// Completeness defect of the working operator set at each cascade level.
  std::vector<double> level_defects;
  bool degenerate = false;
};

struct SynthesisReport {
  std::string target;
  ControlProgram program;
  double distance = 0.0;
  double branch_count = 1.0;
  std::size_t step_count = 0;
};

/// Two Kraus operators A0 = U0 cos(gt Xbar), A1 = U1 sin(gt Xbar) realized as
/// [measure(gt, schedule(Xbar)), branch(U0, U1)]. A unitary target (A1 = 0)
/// yields a single unitary instruction.
ControlProgram synth_two_outcome(const KrausChannel& target, Diagnostics* diag = nullptr);

/// K-outcome channel as a cascade of two-outcome measurements, peeling off
/// outcome 0, 1, ... in index order.
ControlProgram synth_multi_outcome(const std::vector<ComplexMatrix>& ops, Diagnostics* diag = nullptr);

/// Stroboscopic program: n repetitions of exp(-i H T/n) followed by one
/// measure-and-feedback step per Lindblad operator. Throws
/// CouplingOutOfRange when a step coupling exceeds pi/2 (increase n).
ControlProgram synth_lindblad(const CanonicalGenerator& g, double total_time, std::size_t steps,
                              Diagnostics* diag = nullptr);

/// exp(i H2 dt) exp(i H1 dt) exp(-i H2 dt) exp(-i H1 dt)
ComplexMatrix commutator_step(const HermitianMatrix& h1, const HermitianMatrix& h2, double dt);

/// Choi distance between the program's branch-sum channel and `target`.
SynthesisReport verify(const ControlProgram& p, const KrausChannel& target,
                       std::string description = "");
/// Same, against a channel given as a superoperator.
SynthesisReport verify(const ControlProgram& p, const Superoperator& target,
                       std::string description = "");

}  // namespace oqcc
