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

// Dense complex linear algebra used by every other module. Matrices are
// Eigen::MatrixXcd; the wrappers below only add the invariants the quantum
// code depends on.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oqcc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kArccosClampWindow = 1e-9;
inline constexpr double kPinvRelCut = 1e-10;
inline constexpr double kPinvAbsFloor = 1e-14;

void require_finite(const ComplexMatrix& m, const char* what);
void require_square(const ComplexMatrix& m, const char* what);

/// Square matrix equal to its adjoint. Construction symmetrizes, so the
/// stored matrix is exactly Hermitian.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Checks ||M - M^H||_F <= tol ||M||_F, then symmetrizes.
  static HermitianMatrix from(const ComplexMatrix& m, double tol = kHermitianTol);
  /// Symmetrizes without a tolerance check; for values that are Hermitian
  /// by construction up to roundoff.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);
  static HermitianMatrix identity(Index d);
  static HermitianMatrix zero(Index d);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

struct EigenSystem {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors;  // columns, unitary
};

struct PolarFactors {
  ComplexMatrix unitary;
  HermitianMatrix positive;
};

/// Eigendecomposition with ascending eigenvalues. Each eigenvector is
/// phase-fixed so that its first non-negligible component is real and
/// positive, which makes the output a deterministic function of the input.
EigenSystem heig(const HermitianMatrix& m);

/// V diag(f(lambda)) V^H. Throws DomainError when f returns a non-finite
/// value on the spectrum.
HermitianMatrix matfunc(const HermitianMatrix& m, const std::function<double(double)>& f);

/// arccos that clamps arguments within kArccosClampWindow outside [-1, 1]
/// and returns NaN beyond it (so matfunc reports a DomainError).
double acos_clamped(double x);
/// sqrt that maps roundoff-negative values in [-1e-10 * scale, 0) to 0.
double sqrt_clamped(double x);

/// A = U |A| with |A| = sqrt(A^H A). On the support of |A| the unitary is
/// A |A|^-1; on the kernel it is the unitary completion closest to the
/// identity.
PolarFactors polar(const ComplexMatrix& a);

/// Inverse on eigenvalues >= relcut * lambda_max; zero elsewhere.
HermitianMatrix pinv_on_support(const HermitianMatrix& m, double relcut = kPinvRelCut);

/// Matrix exponential (Pade scaling and squaring). Throws Overflow when the
/// logarithmic norm exceeds 700 or the 1-norm exceeds 1e6.
ComplexMatrix expm(const ComplexMatrix& m);

/// PSD square root of a Hermitian matrix (roundoff negatives clamped).
HermitianMatrix sqrtm_psd(const HermitianMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius(const ComplexMatrix& m);
/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const HermitianMatrix& m);
double min_eigenvalue(const HermitianMatrix& m);
double max_eigenvalue(const HermitianMatrix& m);
/// ||U^H U - I||_F
double unitarity_defect(const ComplexMatrix& u);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

}  // namespace oqcc
