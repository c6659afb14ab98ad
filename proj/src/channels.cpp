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

#include "oqcc/channels.hpp"

#include <cmath>
#include <string>

#include "oqcc/errors.hpp"

namespace oqcc {

namespace {

void check_state(const HermitianMatrix& m, double tol) {
  const Complex tr = m.matrix().trace();
  if (std::abs(tr - 1.0) > tol) {
    throw Error(ErrorKind::kInvalidState, "trace " + std::to_string(tr.real()) + " is not 1");
  }
  const double lmin = min_eigenvalue(m);
  if (lmin < -tol) {
    throw Error(ErrorKind::kInvalidState, "negative eigenvalue " + std::to_string(lmin));
  }
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& m, double tol)
    : m_(HermitianMatrix::from(m, std::max(tol, kHermitianTol))) {
  check_state(m_, tol);
}

DensityMatrix::DensityMatrix(const HermitianMatrix& m, double tol) : m_(m) { check_state(m_, tol); }

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw Error(ErrorKind::kInvalidState, "zero state vector");
  const ComplexVector u = psi / n;
  return DensityMatrix(ComplexMatrix(u * u.adjoint()));
}

DensityMatrix DensityMatrix::basis(Index d, Index k) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(k, k) = 1.0;
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
  return DensityMatrix(ComplexMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d)));
}

double completeness_defect(const std::vector<ComplexMatrix>& ops) {
  const Index d = ops.front().cols();
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (const auto& a : ops) s += a.adjoint() * a;
  return (s - ComplexMatrix::Identity(d, d)).norm();
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops, double tol) : ops_(std::move(ops)) {
  if (ops_.empty()) throw Error(ErrorKind::kInvalidArgument, "channel needs at least one operator");
  for (const auto& a : ops_) {
    require_finite(a, "Kraus operator");
    if (a.rows() != ops_.front().rows() || a.cols() != ops_.front().cols()) {
      throw Error(ErrorKind::kDimensionMismatch, "Kraus operators differ in shape");
    }
  }
  const double defect = completeness_defect(ops_);
  if (defect > tol) {
    throw Error(ErrorKind::kCompletenessViolation,
                "||sum A^H A - I||_F = " + std::to_string(defect));
  }
}

KrausChannel KrausChannel::identity(Index d) {
  return KrausChannel({ComplexMatrix::Identity(d, d)});
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) { return KrausChannel({u}); }

ComplexMatrix apply_raw(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& m) {
  ComplexMatrix out = ComplexMatrix::Zero(ops.front().rows(), ops.front().rows());
  for (const auto& a : ops) out.noalias() += a * m * a.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.d_in() != rho.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "channel input dimension differs from state");
  }
  return DensityMatrix(HermitianMatrix::symmetrized(apply_raw(ch.operators(), rho.matrix())),
                       kCompletenessTol);
}

std::vector<MeasurementOutcome> measure(const std::vector<ComplexMatrix>& ops,
                                        const DensityMatrix& rho) {
  if (ops.empty()) throw Error(ErrorKind::kInvalidArgument, "empty measurement");
  for (const auto& a : ops) {
    if (a.cols() != rho.dim() || a.rows() != rho.dim()) {
      throw Error(ErrorKind::kDimensionMismatch, "measurement operator shape differs from state");
    }
  }
  const double defect = completeness_defect(ops);
  if (defect > kCompletenessTol) {
    throw Error(ErrorKind::kCompletenessViolation,
                "||sum A^H A - I||_F = " + std::to_string(defect));
  }
  std::vector<MeasurementOutcome> out;
  out.reserve(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    ComplexMatrix branch = ops[k] * rho.matrix() * ops[k].adjoint();
    const double p = std::max(0.0, branch.trace().real());
    MeasurementOutcome o;
    o.label = k;
    o.probability = p;
    if (p > kProbabilityFloor) {
      o.post_state = branch / p;
      o.normalized = true;
    } else {
      o.post_state = std::move(branch);
    }
    out.push_back(std::move(o));
  }
  return out;
}

ChoiMatrix choi(const KrausChannel& ch) {
  if (ch.d_in() != ch.d_out()) {
    throw Error(ErrorKind::kDimensionMismatch, "Choi matrix needs d_in == d_out");
  }
  const Index d = ch.d_in();
  ComplexMatrix c = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& a : ch.operators()) {
    // (A (x) I)|Omega> has component (out, ref) = A(out, ref) / sqrt(d).
    ComplexVector v(d * d);
    for (Index o = 0; o < d; ++o)
      for (Index r = 0; r < d; ++r) v(o * d + r) = a(o, r);
    c.noalias() += v * v.adjoint();
  }
  c /= static_cast<double>(d);
  return ChoiMatrix{d, HermitianMatrix::symmetrized(c)};
}

double choi_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
  if (a.d != b.d) throw Error(ErrorKind::kDimensionMismatch, "Choi dimensions differ");
  return (a.matrix.matrix() - b.matrix.matrix()).norm();
}

double channel_distance(const KrausChannel& a, const KrausChannel& b) {
  if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) {
    throw Error(ErrorKind::kDimensionMismatch, "channel dimensions differ");
  }
  return choi_distance(choi(a), choi(b));
}

KrausChannel compose(const KrausChannel& a, const KrausChannel& b) {
  if (a.d_in() != b.d_out()) {
    throw Error(ErrorKind::kDimensionMismatch, "compose: a.d_in != b.d_out");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.size() * b.size());
  for (const auto& x : a.operators())
    for (const auto& y : b.operators()) ops.push_back(x * y);
  return KrausChannel(std::move(ops), 10 * kCompletenessTol);
}

KrausChannel bit_flip(double p) {
  ComplexMatrix i = ComplexMatrix::Identity(2, 2);
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return KrausChannel({std::sqrt(1.0 - p) * i, std::sqrt(p) * x});
}

KrausChannel amplitude_damping(double p) {
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - p);
  a1(0, 1) = std::sqrt(p);
  return KrausChannel({a0, a1});
}

KrausChannel depolarizing(Index d, double p) {
  // (1 - p) rho + p tr(rho) I/d, via the d^2 matrix units.
  std::vector<ComplexMatrix> ops;
  ops.push_back(std::sqrt(1.0 - p) * ComplexMatrix::Identity(d, d));
  if (p > 0.0) {
    const double w = std::sqrt(p / static_cast<double>(d));
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(d, d);
        e(i, j) = w;
        ops.push_back(std::move(e));
      }
    }
  }
  return KrausChannel(std::move(ops));
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return 0.5 * trace_norm(HermitianMatrix::symmetrized(a - b));
}

}  // namespace oqcc
