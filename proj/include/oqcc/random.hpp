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

// Random test objects (Haar unitaries, Ginibre states, random channels).

#include <cstdint>
#include <random>
#include <vector>

#include "oqcc/channels.hpp"

namespace oqcc {

using Rng = std::mt19937_64;

ComplexMatrix random_ginibre(Index rows, Index cols, Rng& rng);
HermitianMatrix random_hermitian(Index d, Rng& rng);
ComplexMatrix random_unitary(Index d, Rng& rng);
ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng);
DensityMatrix random_density(Index d, Rng& rng);
/// PSD with unit trace and full rank (generic).
HermitianMatrix random_unit_trace_psd(Index d, Rng& rng);
/// K Kraus operators from blocks of a Haar isometry C^d -> C^{dK}.
KrausChannel random_channel(Index d, Index k, Rng& rng);

}  // namespace oqcc
