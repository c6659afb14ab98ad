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

#include "oqcc/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "oqcc/errors.hpp"

namespace oqcc {

void require_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw Error(ErrorKind::kInvalidArgument, std::string(what) + " is empty");
  }
  if (!m.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, std::string(what) + " has non-finite entries");
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  require_finite(m, what);
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, std::string(what) + " is not square");
  }
}

HermitianMatrix HermitianMatrix::from(const ComplexMatrix& m, double tol) {
  require_square(m, "Hermitian matrix");
  const double norm = m.norm();
  const double skew = (m - m.adjoint()).norm();
  if (skew > tol * std::max(norm, 1e-300)) {
    throw Error(ErrorKind::kNotHermitian,
                "||M - M^H||_F = " + std::to_string(skew) + " exceeds tolerance");
  }
  return symmetrized(m);
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  return HermitianMatrix(std::move(h));
}

HermitianMatrix HermitianMatrix::identity(Index d) {
  return HermitianMatrix(ComplexMatrix::Identity(d, d));
}

HermitianMatrix HermitianMatrix::zero(Index d) {
  return HermitianMatrix(ComplexMatrix::Zero(d, d));
}

namespace {

// Rotates each column so its first non-negligible entry is real positive.
void fix_column_phases(ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    auto col = m.col(j);
    for (Index i = 0; i < col.size(); ++i) {
      const double mag = std::abs(col(i));
      if (mag > 1e-8) {
        col *= std::conj(col(i)) / mag;
        col(i) = mag;
        break;
      }
    }
  }
}

}  // namespace

EigenSystem heig(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kNonConvergence, "Hermitian eigensolver did not converge");
  }
  EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
  fix_column_phases(es.eigenvectors);
  return es;
}

HermitianMatrix matfunc(const HermitianMatrix& m, const std::function<double(double)>& f) {
  const EigenSystem es = heig(m);
  RealVector fl(es.eigenvalues.size());
  for (Index i = 0; i < fl.size(); ++i) {
    fl(i) = f(es.eigenvalues(i));
    if (!std::isfinite(fl(i))) {
      throw Error(ErrorKind::kDomainError,
                  "function undefined at eigenvalue " + std::to_string(es.eigenvalues(i)));
    }
  }
  const ComplexMatrix& v = es.eigenvectors;
  return HermitianMatrix::symmetrized(v * fl.cast<Complex>().asDiagonal() * v.adjoint());
}

double acos_clamped(double x) {
  if (x > 1.0) {
    if (x > 1.0 + kArccosClampWindow) return std::numeric_limits<double>::quiet_NaN();
    x = 1.0;
  } else if (x < -1.0) {
    if (x < -1.0 - kArccosClampWindow) return std::numeric_limits<double>::quiet_NaN();
    x = -1.0;
  }
  return std::acos(x);
}

double sqrt_clamped(double x) {
  if (x < 0.0) {
    if (x < -1e-10) return std::numeric_limits<double>::quiet_NaN();
    return 0.0;
  }
  return std::sqrt(x);
}

PolarFactors polar(const ComplexMatrix& a) {
  require_square(a, "polar input");
  const Index d = a.rows();
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  const ComplexMatrix& w = svd.matrixU();
  const ComplexMatrix& v = svd.matrixV();

  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  Index rank = 0;
  while (rank < d && sigma(rank) > 1e-12 * smax && sigma(rank) > 0.0) ++rank;

  ComplexMatrix unitary = w.leftCols(rank) * v.leftCols(rank).adjoint();
  const Index k = d - rank;
  if (k > 0) {
    // Kernel block: W0 Q V0^H, Q maximizing Re tr. Reduces to the projector
    // onto the kernel when range(A) is orthogonal to ker(A). When the two
    // kernels are orthogonal every Q ties; take Q = I in phase-fixed bases.
    ComplexMatrix w0 = w.rightCols(k);
    ComplexMatrix v0 = v.rightCols(k);
    fix_column_phases(w0);
    fix_column_phases(v0);
    const ComplexMatrix overlap = v0.adjoint() * w0;
    ComplexMatrix q = ComplexMatrix::Identity(k, k);
    Eigen::JacobiSVD<ComplexMatrix> osvd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (osvd.singularValues()(0) > 1e-12) q = osvd.matrixV() * osvd.matrixU().adjoint();
    unitary += w0 * q * v0.adjoint();
  }
  ComplexMatrix p = v * sigma.cast<Complex>().asDiagonal() * v.adjoint();
  return PolarFactors{std::move(unitary), HermitianMatrix::symmetrized(p)};
}

HermitianMatrix pinv_on_support(const HermitianMatrix& m, double relcut) {
  const EigenSystem es = heig(m);
  const double lmax = es.eigenvalues.cwiseAbs().maxCoeff();
  if (lmax < kPinvAbsFloor) {
    throw Error(ErrorKind::kZeroOperator, "pseudo-inverse of a numerically zero operator");
  }
  RealVector inv = RealVector::Zero(es.eigenvalues.size());
  for (Index i = 0; i < inv.size(); ++i) {
    if (es.eigenvalues(i) >= relcut * lmax) inv(i) = 1.0 / es.eigenvalues(i);
  }
  const ComplexMatrix& v = es.eigenvectors;
  return HermitianMatrix::symmetrized(v * inv.cast<Complex>().asDiagonal() * v.adjoint());
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require_square(m, "expm input");
  const double one_norm = m.cwiseAbs().colwise().sum().maxCoeff();
  if (one_norm > 1e6) {
    throw Error(ErrorKind::kOverflow, "expm input 1-norm exceeds 1e6");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().maxCoeff() > 700.0) {
    throw Error(ErrorKind::kOverflow, "expm input logarithmic norm exceeds 700");
  }
  return m.exp();
}

HermitianMatrix sqrtm_psd(const HermitianMatrix& m) {
  const EigenSystem es = heig(m);
  const double scale = std::max(1.0, es.eigenvalues.cwiseAbs().maxCoeff());
  RealVector r(es.eigenvalues.size());
  for (Index i = 0; i < r.size(); ++i) {
    const double x = es.eigenvalues(i);
    if (x < -1e-10 * scale) {
      throw Error(ErrorKind::kNotPSD, "square root of a matrix with eigenvalue " + std::to_string(x));
    }
    r(i) = std::sqrt(std::max(x, 0.0));
  }
  const ComplexMatrix& v = es.eigenvectors;
  return HermitianMatrix::symmetrized(v * r.cast<Complex>().asDiagonal() * v.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double frobenius(const ComplexMatrix& m) { return m.norm(); }

double trace_norm(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double min_eigenvalue(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double max_eigenvalue(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double unitarity_defect(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).norm();
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

}  // namespace oqcc
