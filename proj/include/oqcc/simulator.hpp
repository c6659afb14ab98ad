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

// Executes control programs: exhaustive unnormalized branch evolution, Kraus
// extraction, compositional superoperators and seeded trajectory sampling.

#include <cstdint>
#include <string>
#include <vector>

#include "oqcc/channels.hpp"
#include "oqcc/lindblad.hpp"
#include "oqcc/program.hpp"

namespace oqcc {

inline constexpr std::uint64_t kDefaultBranchCap = std::uint64_t{1} << 20;

/// kDefaultBranchCap unless OQCC_BRANCH_CAP holds a positive integer.
std::uint64_t branch_cap_from_env();

struct BranchState {
  ComplexMatrix rho;   // unnormalized; trace = probability of the record
  std::string record;  // outcome bits in measurement order
};

std::vector<BranchState> run_branches(const ControlProgram& p, const DensityMatrix& rho0,
                                      std::uint64_t cap = kDefaultBranchCap);

/// One Kraus operator per outcome record (products in record order).
KrausChannel extract_channel(const ControlProgram& p, std::uint64_t cap = kDefaultBranchCap);

/// Branch-sum channel as a composed superoperator; no branch enumeration.
Superoperator program_superoperator(const ControlProgram& p);

struct TrajectoryConfig {
  std::uint64_t seed = 0;
  std::size_t count = 1;
  DensityMatrix initial = DensityMatrix::basis(1, 0);
  unsigned workers = 1;
};

struct TrajectoryResult {
  ComplexMatrix estimate;
  /// Frobenius norm of the entrywise standard error of the mean.
  double standard_error = 0.0;
  std::vector<std::string> first_records;  // up to 16, for inspection
};

TrajectoryResult run_trajectories(const ControlProgram& p, const TrajectoryConfig& cfg);

}  // namespace oqcc
