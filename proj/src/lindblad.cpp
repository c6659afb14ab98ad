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

#include "oqcc/lindblad.hpp"

#include <cmath>
#include <string>

#include "oqcc/errors.hpp"

namespace oqcc {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_time(double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::kNegativeTime, "time must be >= 0");
}

double traceless_scale(const ComplexMatrix& l) { return std::max(1.0, l.norm()); }

}  // namespace

OperatorBasis::OperatorBasis(Index d, std::vector<ComplexMatrix> elements)
    : d_(d), elements_(std::move(elements)) {
  if (static_cast<Index>(elements_.size()) != d * d - 1) {
    throw Error(ErrorKind::kInvalidArgument, "operator basis needs d^2 - 1 elements");
  }
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& f = elements_[i];
    if (f.rows() != d || f.cols() != d) {
      throw Error(ErrorKind::kDimensionMismatch, "basis element has wrong shape");
    }
    if (std::abs(f.trace()) > 1e-12) {
      throw Error(ErrorKind::kNotTraceless, "basis element " + std::to_string(i));
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex ip = (elements_[j].adjoint() * f).trace();
      const double want = i == j ? 1.0 : 0.0;
      if (std::abs(ip - want) > 1e-12) {
        throw Error(ErrorKind::kInvalidArgument, "basis is not Hilbert-Schmidt orthonormal");
      }
    }
  }
}

OperatorBasis OperatorBasis::gellmann(Index d) {
  if (d < 2) throw Error(ErrorKind::kInvalidArgument, "Gell-Mann basis needs d >= 2");
  std::vector<ComplexMatrix> els;
  const double s = 1.0 / std::sqrt(2.0);
  for (Index k = 1; k < d; ++k) {
    for (Index j = 0; j < k; ++j) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(j, k) = s;
      sym(k, j) = s;
      els.push_back(sym);
      ComplexMatrix anti = ComplexMatrix::Zero(d, d);
      anti(j, k) = -kI * s;
      anti(k, j) = kI * s;
      els.push_back(anti);
    }
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    const double w = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    for (Index j = 0; j < k; ++j) diag(j, j) = w;
    diag(k, k) = -static_cast<double>(k) * w;
    els.push_back(diag);
  }
  return OperatorBasis(d, std::move(els));
}

GKSGenerator::GKSGenerator(HermitianMatrix h, OperatorBasis basis, HermitianMatrix a)
    : h_(std::move(h)), basis_(std::move(basis)), a_(std::move(a)) {
  if (h_.dim() != basis_.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "Hamiltonian and basis dimensions differ");
  }
  if (a_.dim() != static_cast<Index>(basis_.size())) {
    throw Error(ErrorKind::kDimensionMismatch, "coefficient matrix must be (d^2-1) square");
  }
  const double lmin = min_eigenvalue(a_);
  if (lmin < -1e-10) {
    throw Error(ErrorKind::kNegativeEigenvalue,
                "GKS matrix has eigenvalue " + std::to_string(lmin));
  }
}

CanonicalGenerator::CanonicalGenerator(HermitianMatrix h, std::vector<ComplexMatrix> lindblad_ops)
    : h_(std::move(h)), ops_(std::move(lindblad_ops)) {
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    const auto& l = ops_[k];
    require_finite(l, "Lindblad operator");
    if (l.rows() != h_.dim() || l.cols() != h_.dim()) {
      throw Error(ErrorKind::kDimensionMismatch, "Lindblad operator has wrong shape");
    }
    if (std::abs(l.trace()) > 1e-10 * traceless_scale(l)) {
      throw Error(ErrorKind::kNotTraceless, "Lindblad operator " + std::to_string(k));
    }
  }
}

CanonicalGenerator CanonicalGenerator::from_operators(HermitianMatrix h,
                                                      std::vector<ComplexMatrix> ops,
                                                      std::vector<TraceAdjustment>* adjustments) {
  const Index d = h.dim();
  ComplexMatrix htot = h.matrix();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    auto& l = ops[k];
    if (l.rows() != d || l.cols() != d) {
      throw Error(ErrorKind::kDimensionMismatch, "Lindblad operator has wrong shape");
    }
    const Complex tr = l.trace();
    if (std::abs(tr) <= 1e-10 * traceless_scale(l)) continue;
    const Complex c = tr / static_cast<double>(d);
    l -= c * ComplexMatrix::Identity(d, d);
    htot += 0.5 * kI * (std::conj(c) * l - c * l.adjoint());
    if (adjustments) adjustments->push_back(TraceAdjustment{k, tr});
  }
  return CanonicalGenerator(HermitianMatrix::symmetrized(htot), std::move(ops));
}

CanonicalGenerator CanonicalGenerator::zero(Index d) {
  return CanonicalGenerator(HermitianMatrix::zero(d), {});
}

CanonicalGenerator merge(const CanonicalGenerator& a, const CanonicalGenerator& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::kDimensionMismatch, "generator dimensions differ");
  std::vector<ComplexMatrix> ops = a.lindblad_ops();
  ops.insert(ops.end(), b.lindblad_ops().begin(), b.lindblad_ops().end());
  return CanonicalGenerator(HermitianMatrix::symmetrized(a.hamiltonian().matrix() +
                                                         b.hamiltonian().matrix()),
                            std::move(ops));
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index d) {
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const { return unvec(matrix * vec(rho), d); }

Superoperator Superoperator::after(const Superoperator& other) const {
  if (d != other.d) throw Error(ErrorKind::kDimensionMismatch, "superoperator dimensions differ");
  return Superoperator{d, matrix * other.matrix};
}

Superoperator Superoperator::identity(Index d) {
  return Superoperator{d, ComplexMatrix::Identity(d * d, d * d)};
}

Superoperator superoperator_of(const std::vector<ComplexMatrix>& ops) {
  const Index d = ops.front().rows();
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& a : ops) s += kron(a.conjugate(), a);
  return Superoperator{d, std::move(s)};
}

Superoperator superoperator_of(const KrausChannel& ch) {
  if (ch.d_in() != ch.d_out()) {
    throw Error(ErrorKind::kDimensionMismatch, "superoperator needs d_in == d_out");
  }
  return superoperator_of(ch.operators());
}

ChoiMatrix choi_of(const Superoperator& s) {
  const Index d = s.d;
  ComplexMatrix c(d * d, d * d);
  // C[(o,i),(o',j)] = Lambda(|i><j|)[o,o'] / d = S[o' d + o, j d + i] / d.
  for (Index o = 0; o < d; ++o)
    for (Index i = 0; i < d; ++i)
      for (Index op = 0; op < d; ++op)
        for (Index j = 0; j < d; ++j) c(o * d + i, op * d + j) = s.matrix(op * d + o, j * d + i);
  c /= static_cast<double>(d);
  return ChoiMatrix{d, HermitianMatrix::symmetrized(c)};
}

KrausChannel kraus_of(const Superoperator& s, double completeness_tol) {
  const ChoiMatrix c = choi_of(s);
  const EigenSystem es = heig(c.matrix);
  const Index d = s.d;
  const double lmax = es.eigenvalues.maxCoeff();
  std::vector<ComplexMatrix> ops;
  for (Index k = es.eigenvalues.size() - 1; k >= 0; --k) {
    const double lam = es.eigenvalues(k);
    if (lam <= 1e-14 * std::max(lmax, 1e-300)) continue;
    const double w = std::sqrt(static_cast<double>(d) * lam);
    ComplexMatrix a(d, d);
    for (Index o = 0; o < d; ++o)
      for (Index r = 0; r < d; ++r) a(o, r) = w * es.eigenvectors(o * d + r, k);
    ops.push_back(std::move(a));
  }
  if (ops.empty()) throw Error(ErrorKind::kZeroOperator, "superoperator has zero Choi matrix");
  return KrausChannel(std::move(ops), completeness_tol);
}

ComplexMatrix gks_rhs(const GKSGenerator& g, const ComplexMatrix& rho) {
  const auto& h = g.hamiltonian().matrix();
  const auto& f = g.basis().elements();
  const auto& a = g.coefficients().matrix();
  ComplexMatrix out = -kI * commutator(h, rho);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      const Complex aij = a(static_cast<Index>(i), static_cast<Index>(j));
      if (aij == Complex(0.0)) continue;
      const ComplexMatrix fifj = f[i].adjoint() * f[j];
      out -= 0.5 * aij * (fifj * rho + rho * fifj - 2.0 * f[j] * rho * f[i].adjoint());
    }
  }
  return out;
}

ComplexMatrix canonical_rhs(const CanonicalGenerator& g, const ComplexMatrix& rho) {
  ComplexMatrix out = -kI * commutator(g.hamiltonian().matrix(), rho);
  for (const auto& l : g.lindblad_ops()) {
    const ComplexMatrix ll = l.adjoint() * l;
    out -= 0.5 * (ll * rho + rho * ll - 2.0 * l * rho * l.adjoint());
  }
  return out;
}

CanonicalGenerator canonicalize(const GKSGenerator& g) {
  const EigenSystem es = heig(g.coefficients());
  const double mu_min = es.eigenvalues.minCoeff();
  if (mu_min < -1e-8) {
    throw Error(ErrorKind::kNegativeEigenvalue, "GKS matrix eigenvalue " + std::to_string(mu_min));
  }
  const double mu_max = es.eigenvalues.maxCoeff();
  const auto& f = g.basis().elements();
  const Index d = g.dim();
  std::vector<ComplexMatrix> ops;
  for (Index k = es.eigenvalues.size() - 1; k >= 0; --k) {
    const double mu = es.eigenvalues(k);
    if (mu <= 0.0 || mu <= 1e-12 * mu_max) continue;
    ComplexMatrix l = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j < f.size(); ++j) {
      l += std::conj(es.eigenvectors(static_cast<Index>(j), k)) * f[j];
    }
    ops.push_back(std::sqrt(mu) * l);
  }
  return CanonicalGenerator(g.hamiltonian(), std::move(ops));
}

GKSGenerator gks_from_lindblad_op(const ComplexMatrix& l, const OperatorBasis& basis) {
  if (l.rows() != basis.dim() || l.cols() != basis.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "operator and basis dimensions differ");
  }
  if (std::abs(l.trace()) > 1e-10) {
    throw Error(ErrorKind::kNotTraceless, "|tr L| = " + std::to_string(std::abs(l.trace())));
  }
  const Index n = static_cast<Index>(basis.size());
  ComplexVector c(n);
  for (Index i = 0; i < n; ++i) c(i) = (basis[static_cast<std::size_t>(i)].adjoint() * l).trace();
  const ComplexVector w = c.conjugate();
  return GKSGenerator(HermitianMatrix::zero(basis.dim()), basis,
                      HermitianMatrix::symmetrized(w * w.adjoint()));
}

Superoperator liouvillian(const CanonicalGenerator& g) {
  const Index d = g.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix& h = g.hamiltonian().matrix();
  // vec(A X B) = (B^T (x) A) vec(X)
  ComplexMatrix s = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& l : g.lindblad_ops()) {
    const ComplexMatrix ll = l.adjoint() * l;
    s += kron(l.conjugate(), l) - 0.5 * kron(id, ll) - 0.5 * kron(ll.transpose(), id);
  }
  return Superoperator{d, std::move(s)};
}

Superoperator propagator(const CanonicalGenerator& g, double t) {
  require_time(t);
  const Superoperator l = liouvillian(g);
  if (t == 0.0) return Superoperator::identity(g.dim());
  return Superoperator{l.d, expm(t * l.matrix)};
}

DensityMatrix propagate(const CanonicalGenerator& g, const DensityMatrix& rho0, double t) {
  require_time(t);
  if (rho0.dim() != g.dim()) throw Error(ErrorKind::kDimensionMismatch, "state and generator differ");
  if (t == 0.0) return rho0;
  const ComplexMatrix rho = propagator(g, t).apply(rho0.matrix());
  return DensityMatrix(HermitianMatrix::symmetrized(rho), 1e-9);
}

double semigroup_check(const CanonicalGenerator& g, double t, double s) {
  require_time(t);
  require_time(s);
  const ComplexMatrix l = liouvillian(g).matrix;
  auto ex = [&](double x) -> ComplexMatrix {
    if (x == 0.0) return ComplexMatrix::Identity(l.rows(), l.cols());
    return expm(x * l);
  };
  return (ex(t + s) - ex(t) * ex(s)).norm();
}

}  // namespace oqcc
