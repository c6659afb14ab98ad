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

// Lindblad generators in GKS form (H, basis F_i, coefficient matrix A) and in
// canonical form (H, L_k), plus their column-stacked superoperators.
//
//   d rho/dt = -i[H, rho] - 1/2 sum_ij a_ij (F_i^H F_j rho + rho F_i^H F_j - 2 F_j rho F_i^H)
//   d rho/dt = -i[H, rho] - 1/2 sum_k (L_k^H L_k rho + rho L_k^H L_k - 2 L_k rho L_k^H)

#include <vector>

#include "oqcc/channels.hpp"
#include "oqcc/matcore.hpp"

namespace oqcc {

/// d^2 - 1 traceless matrices, orthonormal under tr(F_i^H F_j).
class OperatorBasis {
 public:
  OperatorBasis(Index d, std::vector<ComplexMatrix> elements);

  /// Generalized Gell-Mann matrices scaled to unit Hilbert-Schmidt norm.
  /// Order: for k = 1..d-1, the symmetric and antisymmetric pairs (j, k)
  /// for j < k, followed by the k-th diagonal element. For d = 2 this is
  /// sigma_x, sigma_y, sigma_z over sqrt 2.
  static OperatorBasis gellmann(Index d);

  Index dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  const ComplexMatrix& operator[](std::size_t i) const { return elements_[i]; }

 private:
  Index d_;
  std::vector<ComplexMatrix> elements_;
};

class GKSGenerator {
 public:
  /// Throws NegativeEigenvalue if min eig(A) < -1e-10.
  GKSGenerator(HermitianMatrix h, OperatorBasis basis, HermitianMatrix a);

  const HermitianMatrix& hamiltonian() const noexcept { return h_; }
  const OperatorBasis& basis() const noexcept { return basis_; }
  const HermitianMatrix& coefficients() const noexcept { return a_; }
  Index dim() const noexcept { return h_.dim(); }

 private:
  HermitianMatrix h_;
  OperatorBasis basis_;
  HermitianMatrix a_;
};

/// Trace removed from a Lindblad operator by CanonicalGenerator::from_operators.
struct TraceAdjustment {
  std::size_t index = 0;
  Complex removed_trace;
};

class CanonicalGenerator {
 public:
  /// Throws NotTraceless if some |tr L_k| > 1e-10 max(1, ||L_k||_F).
  CanonicalGenerator(HermitianMatrix h, std::vector<ComplexMatrix> lindblad_ops);

  /// Accepts operators with a trace part: L = L0 + c I generates the same
  /// dynamics as L0 with H + (i/2)(c* L0 - c L0^H).
  static CanonicalGenerator from_operators(HermitianMatrix h, std::vector<ComplexMatrix> ops,
                                           std::vector<TraceAdjustment>* adjustments = nullptr);

  static CanonicalGenerator zero(Index d);

  const HermitianMatrix& hamiltonian() const noexcept { return h_; }
  const std::vector<ComplexMatrix>& lindblad_ops() const noexcept { return ops_; }
  Index dim() const noexcept { return h_.dim(); }

 private:
  HermitianMatrix h_;
  std::vector<ComplexMatrix> ops_;
};

/// Union of the jump operators with the Hamiltonians summed.
CanonicalGenerator merge(const CanonicalGenerator& a, const CanonicalGenerator& b);

/// Acts on column-stacked vec(rho).
struct Superoperator {
  Index d = 0;
  ComplexMatrix matrix;

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// this o other (other first).
  Superoperator after(const Superoperator& other) const;
  static Superoperator identity(Index d);
};

ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Index d);

Superoperator superoperator_of(const KrausChannel& ch);
Superoperator superoperator_of(const std::vector<ComplexMatrix>& ops);
ChoiMatrix choi_of(const Superoperator& s);
/// Kraus form of a CP superoperator via the Choi eigendecomposition.
KrausChannel kraus_of(const Superoperator& s, double completeness_tol = kCompletenessTol);

/// Right-hand sides evaluated directly from the two written forms.
ComplexMatrix gks_rhs(const GKSGenerator& g, const ComplexMatrix& rho);
ComplexMatrix canonical_rhs(const CanonicalGenerator& g, const ComplexMatrix& rho);

/// Diagonalizes A; eigenvalues <= 1e-12 mu_max are dropped.
CanonicalGenerator canonicalize(const GKSGenerator& g);

/// Rank-one GKS matrix a_ij = conj(c_i) c_j with c_i = tr(F_i^H L), so that
/// canonicalize returns L up to a global phase.
GKSGenerator gks_from_lindblad_op(const ComplexMatrix& l, const OperatorBasis& basis);

Superoperator liouvillian(const CanonicalGenerator& g);
/// exp(t L)
Superoperator propagator(const CanonicalGenerator& g, double t);
DensityMatrix propagate(const CanonicalGenerator& g, const DensityMatrix& rho0, double t);
/// ||exp((t+s)L) - exp(tL) exp(sL)||_F
double semigroup_check(const CanonicalGenerator& g, double t, double s);

}  // namespace oqcc
