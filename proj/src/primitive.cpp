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

#include "oqcc/primitive.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oqcc/errors.hpp"

namespace oqcc {

namespace {

constexpr Complex kI{0.0, 1.0};

ComplexMatrix ancilla_ground() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  return m;
}

// exp(-i theta K (x) sigma_x) for Hermitian K.
ComplexMatrix coupling_unitary(const HermitianMatrix& k, double theta) {
  const HermitianMatrix c = matfunc(k, [theta](double x) { return std::cos(theta * x); });
  const HermitianMatrix s = matfunc(k, [theta](double x) { return std::sin(theta * x); });
  return kron(c.matrix(), ComplexMatrix::Identity(2, 2)) - kI * kron(s.matrix(), pauli_x());
}

void require_dims(Index a, Index b, const char* what) {
  if (a != b) throw Error(ErrorKind::kDimensionMismatch, what);
}

}  // namespace

ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

YesNoPrimitive::YesNoPrimitive(Index d, double gamma_t) : d_(d), gamma_t_(gamma_t) {
  if (d < 1) throw Error(ErrorKind::kInvalidArgument, "system dimension must be >= 1");
  if (!std::isfinite(gamma_t) || gamma_t < 0.0) {
    throw Error(ErrorKind::kCouplingOutOfRange, "gamma_t must be finite and >= 0");
  }
}

HermitianMatrix YesNoPrimitive::base_projector() const {
  ComplexMatrix x = ComplexMatrix::Zero(d_, d_);
  x(0, 0) = 1.0;
  return HermitianMatrix::from(x);
}

AveragingSchedule::AveragingSchedule(std::vector<ScheduleSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw Error(ErrorKind::kInvalidArgument, "empty averaging schedule");
  const Index d = segments_.front().v.rows();
  for (const auto& s : segments_) {
    if (s.v.rows() != d || s.v.cols() != d) {
      throw Error(ErrorKind::kDimensionMismatch, "schedule unitaries differ in shape");
    }
    if (!is_unitary(s.v, 1e-10)) throw Error(ErrorKind::kInvalidArgument, "schedule V_i not unitary");
    if (!std::isfinite(s.duration) || s.duration < 0.0) {
      throw Error(ErrorKind::kInvalidArgument, "schedule durations must be >= 0");
    }
    total_ += s.duration;
  }
  if (!(total_ > 0.0)) throw Error(ErrorKind::kInvalidArgument, "schedule total duration must be > 0");
}

HermitianMatrix AveragingSchedule::realized() const {
  const Index d = dim();
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  for (const auto& s : segments_) {
    // V^H |0><0| V = |r><r| with r = V^H e_0 = conj(row 0 of V).
    const ComplexVector r = s.v.row(0).adjoint();
    acc += (s.duration / total_) * (r * r.adjoint());
  }
  return HermitianMatrix::symmetrized(acc);
}

DensityMatrix joint_evolve(const YesNoPrimitive& p, const AveragingSchedule* schedule,
                           const DensityMatrix& rho_s, int repetitions) {
  require_dims(p.dim(), rho_s.dim(), "primitive and state dimensions differ");
  const ComplexMatrix rho0 = kron(rho_s.matrix(), ancilla_ground());
  const HermitianMatrix x = p.base_projector();
  ComplexMatrix u;
  if (schedule == nullptr) {
    u = coupling_unitary(x, p.gamma_t());
  } else {
    require_dims(schedule->dim(), p.dim(), "schedule and primitive dimensions differ");
    if (repetitions < 1) throw Error(ErrorKind::kInvalidArgument, "repetitions must be >= 1");
    const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    ComplexMatrix round = ComplexMatrix::Identity(2 * p.dim(), 2 * p.dim());
    for (const auto& seg : schedule->segments()) {
      const double theta =
          p.gamma_t() * (seg.duration / schedule->total_duration()) / static_cast<double>(repetitions);
      const ComplexMatrix vk = kron(seg.v, id2);
      round = vk.adjoint() * coupling_unitary(x, theta) * vk * round;
    }
    u = ComplexMatrix::Identity(2 * p.dim(), 2 * p.dim());
    for (int r = 0; r < repetitions; ++r) u = round * u;
  }
  return DensityMatrix(HermitianMatrix::symmetrized(u * rho0 * u.adjoint()), 1e-9);
}

DensityMatrix joint_evolve_ideal(const YesNoPrimitive& p, const HermitianMatrix& xbar,
                                 const DensityMatrix& rho_s) {
  require_dims(p.dim(), rho_s.dim(), "primitive and state dimensions differ");
  require_dims(p.dim(), xbar.dim(), "primitive and operator dimensions differ");
  const ComplexMatrix u = coupling_unitary(xbar, p.gamma_t());
  const ComplexMatrix rho0 = kron(rho_s.matrix(), ancilla_ground());
  return DensityMatrix(HermitianMatrix::symmetrized(u * rho0 * u.adjoint()), 1e-9);
}

ComplexMatrix partial_trace_ancilla(const ComplexMatrix& joint) {
  const Index d = joint.rows() / 2;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) out(i, j) = joint(2 * i, 2 * j) + joint(2 * i + 1, 2 * j + 1);
  return out;
}

std::array<MeasurementOutcome, 2> readout(const DensityMatrix& joint) {
  if (joint.dim() % 2 != 0) throw Error(ErrorKind::kDimensionMismatch, "joint state needs a qubit ancilla");
  const Index d = joint.dim() / 2;
  std::array<MeasurementOutcome, 2> out;
  for (Index a = 0; a < 2; ++a) {
    ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
    proj(a, a) = 1.0;
    const ComplexMatrix pa = kron(ComplexMatrix::Identity(d, d), proj);
    const ComplexMatrix reduced = partial_trace_ancilla(pa * joint.matrix() * pa);
    auto& o = out[static_cast<std::size_t>(a)];
    o.label = static_cast<std::size_t>(a);
    o.probability = std::max(0.0, reduced.trace().real());
    if (o.probability > kProbabilityFloor) {
      o.post_state = reduced / o.probability;
      o.normalized = true;
    } else {
      o.post_state = reduced;
    }
  }
  return out;
}

void require_unit_trace_psd(const HermitianMatrix& xbar) {
  const double tr = xbar.matrix().trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw Error(ErrorKind::kNotUnitTrace, "trace " + std::to_string(tr));
  }
  const double lmin = min_eigenvalue(xbar);
  if (lmin < -1e-10) throw Error(ErrorKind::kNotPSD, "eigenvalue " + std::to_string(lmin));
}

AveragingSchedule compile_schedule(const HermitianMatrix& target, double delta_t) {
  require_unit_trace_psd(target);
  if (!(delta_t > 0.0)) throw Error(ErrorKind::kInvalidArgument, "delta_t must be > 0");
  const Index d = target.dim();
  const EigenSystem es = heig(target);
  std::vector<ScheduleSegment> segs;
  // Descending weight; deterministic given heig's phase convention.
  for (Index i = d - 1; i >= 0; --i) {
    const double lam = es.eigenvalues(i);
    if (lam <= 1e-13) continue;
    ComplexVector e = es.eigenvectors.col(i);
    if (std::abs(e(0)) > 0.0) e *= std::conj(e(0)) / std::abs(e(0));
    // Householder reflection Q with Q e_0 = e; V = Q^H = Q maps e to e_0.
    ComplexVector w = -e;
    w(0) += 1.0;
    ComplexMatrix q = ComplexMatrix::Identity(d, d);
    const double wn = w.squaredNorm();
    if (wn > 1e-28) q -= (2.0 / wn) * (w * w.adjoint());
    segs.push_back(ScheduleSegment{q.adjoint(), lam * delta_t});
  }
  return AveragingSchedule(std::move(segs));
}

EffectivePair effective_pair(const YesNoPrimitive& p, const HermitianMatrix& xbar) {
  require_dims(p.dim(), xbar.dim(), "primitive and operator dimensions differ");
  require_unit_trace_psd(xbar);
  const double theta_max = p.gamma_t() * max_eigenvalue(xbar);
  if (theta_max > std::numbers::pi / 2 + 1e-12) {
    throw Error(ErrorKind::kCouplingOutOfRange,
                "gamma_t * lambda_max(Xbar) = " + std::to_string(theta_max) + " exceeds pi/2");
  }
  const double gt = p.gamma_t();
  return EffectivePair{matfunc(xbar, [gt](double x) { return std::cos(gt * x); }),
                       matfunc(xbar, [gt](double x) { return std::sin(gt * x); })};
}

CanonicalGenerator small_time_generator(const YesNoPrimitive& p, const HermitianMatrix& xbar,
                                        const std::optional<ComplexMatrix>& feedback,
                                        double step_duration) {
  require_dims(p.dim(), xbar.dim(), "primitive and operator dimensions differ");
  require_unit_trace_psd(xbar);
  if (!(step_duration > 0.0)) throw Error(ErrorKind::kInvalidArgument, "step duration must be > 0");
  const Index d = p.dim();
  const ComplexMatrix u = feedback.value_or(ComplexMatrix::Identity(d, d));
  if (!is_unitary(u)) throw Error(ErrorKind::kInvalidArgument, "feedback is not unitary");
  // b = (gamma t)^2 / (2 step), L = sqrt(2b) U Xbar
  const double b = p.gamma_t() * p.gamma_t() / (2.0 * step_duration);
  ComplexMatrix l = std::sqrt(2.0 * b) * u * xbar.matrix();
  return CanonicalGenerator::from_operators(HermitianMatrix::zero(d), {std::move(l)});
}

ComplexMatrix joint_second_order(const YesNoPrimitive& p, const HermitianMatrix& xbar,
                                 const DensityMatrix& rho_s) {
  const ComplexMatrix& x = xbar.matrix();
  const ComplexMatrix& r = rho_s.matrix();
  const ComplexMatrix rm = ancilla_ground();
  const ComplexMatrix y = pauli_x();
  const double g = p.gamma_t();
  const ComplexMatrix x2 = x * x;
  const ComplexMatrix y2 = y * y;
  return kron(r, rm) - kI * g * (kron(x * r, y * rm) - kron(r * x, rm * y)) -
         0.5 * g * g * (kron(x2 * r, y2 * rm) - 2.0 * kron(x * r * x, y * rm * y) + kron(r * x2, rm * y2));
}

ComplexMatrix measure_feedback_step(const YesNoPrimitive& p, const HermitianMatrix& xbar,
                                    const ComplexMatrix& feedback, const DensityMatrix& rho_s) {
  const EffectivePair bp = effective_pair(p, xbar);
  const ComplexMatrix a1 = feedback * bp.b1.matrix();
  return bp.b0.matrix() * rho_s.matrix() * bp.b0.matrix() + a1 * rho_s.matrix() * a1.adjoint();
}

ComplexMatrix feedback_step_second_order(const YesNoPrimitive& p, const HermitianMatrix& xbar,
                                         const ComplexMatrix& feedback,
                                         const DensityMatrix& rho_s) {
  const ComplexMatrix& x = xbar.matrix();
  const ComplexMatrix& r = rho_s.matrix();
  const ComplexMatrix ux = feedback * x;
  const double g = p.gamma_t();
  return r - 0.5 * g * g * (x * x * r - 2.0 * ux * r * ux.adjoint() + r * x * x);
}

}  // namespace oqcc
