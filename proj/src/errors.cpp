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

#include "oqcc/errors.hpp"

namespace oqcc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNonConvergence: return "NonConvergence";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kZeroOperator: return "ZeroOperator";
    case ErrorKind::kOverflow: return "OverflowError";
    case ErrorKind::kNotHermitian: return "NotHermitian";
    case ErrorKind::kInvalidState: return "InvalidState";
    case ErrorKind::kCompletenessViolation: return "CompletenessViolation";
    case ErrorKind::kNegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::kNotTraceless: return "NotTraceless";
    case ErrorKind::kNegativeTime: return "NegativeTime";
    case ErrorKind::kNotUnitTrace: return "NotUnitTrace";
    case ErrorKind::kNotPSD: return "NotPSD";
    case ErrorKind::kCouplingOutOfRange: return "CouplingOutOfRange";
    case ErrorKind::kRankCollapse: return "RankCollapse";
    case ErrorKind::kMalformedProgram: return "MalformedProgram";
    case ErrorKind::kBranchExplosion: return "BranchExplosion";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParse: return "ParseError";
  }
  return "Error";
}

}  // namespace oqcc
