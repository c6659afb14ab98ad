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

#include <cstddef>
#include <vector>

#include "oqcc/matcore.hpp"

namespace oqcc {

inline constexpr double kStateTol = 1e-10;
inline constexpr double kCompletenessTol = 1e-9;
inline constexpr double kStrictCompletenessTol = 1e-12;
inline constexpr double kProbabilityFloor = 1e-12;

/// Hermitian, PSD, unit-trace state.
class DensityMatrix {
 public:
  /// Validates trace and positivity to `tol`.
  explicit DensityMatrix(const ComplexMatrix& m, double tol = kStateTol);
  explicit DensityMatrix(const HermitianMatrix& m, double tol = kStateTol);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix basis(Index d, Index k);
  static DensityMatrix maximally_mixed(Index d);

  const ComplexMatrix& matrix() const noexcept { return m_.matrix(); }
  const HermitianMatrix& hermitian() const noexcept { return m_; }
  Index dim() const noexcept { return m_.dim(); }

 private:
  HermitianMatrix m_;
};

/// Finite CPTP map rho -> sum_k A_k rho A_k^H.
class KrausChannel {
 public:
  /// Throws CompletenessViolation if ||sum A^H A - I||_F > tol.
  explicit KrausChannel(std::vector<ComplexMatrix> ops, double tol = kCompletenessTol);

  static KrausChannel identity(Index d);
  static KrausChannel unitary(const ComplexMatrix& u);

  Index d_in() const noexcept { return ops_.front().cols(); }
  Index d_out() const noexcept { return ops_.front().rows(); }
  const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }

 private:
  std::vector<ComplexMatrix> ops_;
};

double completeness_defect(const std::vector<ComplexMatrix>& ops);

struct MeasurementOutcome {
  std::size_t label = 0;
  double probability = 0.0;
  // Normalized when `normalized` is set; otherwise the raw A rho A^H of an
  // outcome below kProbabilityFloor.
  ComplexMatrix post_state;
  bool normalized = false;
};

/// Hermitian PSD d^2 x d^2 matrix (Lambda (x) id)(|Omega><Omega|), trace 1.
/// Composite index is out * d + ref.
struct ChoiMatrix {
  Index d = 0;
  HermitianMatrix matrix;
};

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);
/// Unvalidated action on any square matrix.
ComplexMatrix apply_raw(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& m);

std::vector<MeasurementOutcome> measure(const std::vector<ComplexMatrix>& ops,
                                        const DensityMatrix& rho);

ChoiMatrix choi(const KrausChannel& ch);
double choi_distance(const ChoiMatrix& a, const ChoiMatrix& b);
/// ||choi(a) - choi(b)||_F
double channel_distance(const KrausChannel& a, const KrausChannel& b);

/// a o b: first b, then a.
KrausChannel compose(const KrausChannel& a, const KrausChannel& b);

KrausChannel bit_flip(double p);
KrausChannel amplitude_damping(double p);
KrausChannel depolarizing(Index d, double p);

/// 0.5 ||a - b||_1
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace oqcc
