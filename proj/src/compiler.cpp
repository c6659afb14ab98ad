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

#include "oqcc/compiler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "oqcc/errors.hpp"
#include "oqcc/primitive.hpp"
#include "oqcc/simulator.hpp"

namespace oqcc {

namespace {

constexpr Complex kI{0.0, 1.0};

void warn(Diagnostics* diag, std::string msg) {
  if (diag) diag->warnings.push_back(std::move(msg));
}

InstructionList unitary_list(const ComplexMatrix& u) {
  const Index d = u.rows();
  if ((u - ComplexMatrix::Identity(d, d)).norm() <= 1e-14) return {};
  return {Instruction{UnitaryOp{u}}};
}

// A_k <- A_k S^{-1/2}, S = sum A^H A.
void renormalize(std::vector<ComplexMatrix>& ops) {
  const Index d = ops.front().cols();
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (const auto& a : ops) s += a.adjoint() * a;
  const HermitianMatrix inv_sqrt =
      matfunc(HermitianMatrix::symmetrized(s), [](double x) { return 1.0 / std::sqrt(x); });
  for (auto& a : ops) a = a * inv_sqrt.matrix();
}

void normalize_completeness(std::vector<ComplexMatrix>& ops, double reject_tol, Diagnostics* diag) {
  const double defect = completeness_defect(ops);
  if (defect > reject_tol) {
    throw Error(ErrorKind::kCompletenessViolation, "||sum A^H A - I||_F = " + std::to_string(defect));
  }
  if (defect > kStrictCompletenessTol) {
    renormalize(ops);
    warn(diag, "renormalized target operators (completeness defect " + std::to_string(defect) + ")");
  }
}

// Measurement {cos Theta, sin Theta} with cos Theta = p0 (PSD, <= I).
// Returns gamma_t = tr Theta and the unit-trace operator Theta / gamma_t.
struct MeasureSpec {
  double gamma_t = 0.0;
  HermitianMatrix xbar;
};

MeasureSpec measure_spec(const HermitianMatrix& p0) {
  // arccos is ill-conditioned at 1; decide degeneracy on I - p0 instead.
  const Index d = p0.dim();
  if (max_eigenvalue(HermitianMatrix::symmetrized(ComplexMatrix::Identity(d, d) - p0.matrix())) <= 1e-12) {
    return MeasureSpec{0.0, {}};
  }
  const HermitianMatrix theta = matfunc(p0, acos_clamped);
  const double gt = theta.matrix().trace().real();
  if (gt <= 1e-12) return MeasureSpec{0.0, {}};
  return MeasureSpec{gt, HermitianMatrix::symmetrized(theta.matrix() / gt)};
}

Instruction measure_instruction(const MeasureSpec& spec) {
  return Instruction{MeasureOp{spec.gamma_t, compile_schedule(spec.xbar)}};
}

InstructionList two_outcome_list(const ComplexMatrix& a0, const ComplexMatrix& a1, Diagnostics* diag) {
  const PolarFactors pol0 = polar(a0);
  const MeasureSpec spec = measure_spec(pol0.positive);
  if (spec.gamma_t == 0.0) {
    if (diag) diag->degenerate = true;
    warn(diag, "degenerate target: first operator is unitary, emitted a single unitary");
    return unitary_list(pol0.unitary);
  }
  const PolarFactors pol1 = polar(a1);
  InstructionList out;
  out.push_back(measure_instruction(spec));
  out.push_back(Instruction{BranchOp{unitary_list(pol0.unitary), unitary_list(pol1.unitary)}});
  return out;
}

InstructionList cascade(std::vector<ComplexMatrix> ops, std::size_t level, Diagnostics* diag) {
  if (diag) diag->level_defects.push_back(completeness_defect(ops));
  if (ops.size() == 1) return unitary_list(polar(ops[0]).unitary);
  if (ops.size() == 2) return two_outcome_list(ops[0], ops[1], diag);

  const Index d = ops.front().cols();
  const PolarFactors pol0 = polar(ops[0]);
  ComplexMatrix tail = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 1; k < ops.size(); ++k) tail += ops[k].adjoint() * ops[k];
  const HermitianMatrix tail_root = sqrtm_psd(HermitianMatrix::symmetrized(tail));

  const MeasureSpec spec = measure_spec(pol0.positive);
  if (spec.gamma_t == 0.0) {
    if (diag) diag->degenerate = true;
    warn(diag, "cascade level " + std::to_string(level) + ": remaining outcomes have zero weight");
    return unitary_list(pol0.unitary);
  }

  HermitianMatrix inv;
  try {
    inv = pinv_on_support(tail_root);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kZeroOperator) throw;
    throw Error(ErrorKind::kRankCollapse,
                "cascade level " + std::to_string(level) + " has no support for the remaining outcomes");
  }
  const ComplexMatrix support = tail_root.matrix() * inv.matrix();
  const ComplexMatrix off_support = ComplexMatrix::Identity(d, d) - support;

  std::vector<ComplexMatrix> residual;
  residual.reserve(ops.size() - 1);
  for (std::size_t k = 1; k < ops.size(); ++k) {
    const PolarFactors pk = polar(ops[k]);
    ComplexMatrix r = pk.positive.matrix() * inv.matrix();
    if (k == 1) r += off_support;
    residual.push_back(pk.unitary * r);
  }
  const double drift = completeness_defect(residual);
  if (drift > 1e-10) {
    renormalize(residual);
    warn(diag, "cascade level " + std::to_string(level) + ": re-completed residual operators (drift " +
                   std::to_string(drift) + ")");
  }

  InstructionList out;
  out.push_back(measure_instruction(spec));
  out.push_back(Instruction{BranchOp{unitary_list(pol0.unitary), cascade(std::move(residual), level + 1, diag)}});
  return out;
}

}  // namespace

ControlProgram synth_two_outcome(const KrausChannel& target, Diagnostics* diag) {
  if (target.size() != 2) {
    throw Error(ErrorKind::kInvalidArgument, "two-outcome synthesis needs exactly 2 Kraus operators");
  }
  if (target.d_in() != target.d_out()) {
    throw Error(ErrorKind::kDimensionMismatch, "target must map a space to itself");
  }
  std::vector<ComplexMatrix> ops = target.operators();
  normalize_completeness(ops, kCompletenessTol, diag);
  return ControlProgram{target.d_in(), two_outcome_list(ops[0], ops[1], diag)};
}

ControlProgram synth_multi_outcome(const std::vector<ComplexMatrix>& targets, Diagnostics* diag) {
  if (targets.empty()) throw Error(ErrorKind::kInvalidArgument, "no Kraus operators");
  const Index d = targets.front().rows();
  for (const auto& a : targets) {
    require_finite(a, "Kraus operator");
    if (a.rows() != d || a.cols() != d) throw Error(ErrorKind::kDimensionMismatch, "Kraus operator shape");
  }
  std::vector<ComplexMatrix> ops = targets;
  normalize_completeness(ops, kCompletenessTol, diag);
  std::vector<ComplexMatrix> kept;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].norm() <= 1e-12) {
      warn(diag, "dropped zero Kraus operator " + std::to_string(k));
    } else {
      kept.push_back(ops[k]);
    }
  }
  if (kept.empty()) throw Error(ErrorKind::kRankCollapse, "all Kraus operators vanish");
  return ControlProgram{d, cascade(std::move(kept), 0, diag)};
}

ControlProgram synth_lindblad(const CanonicalGenerator& g, double total_time, std::size_t steps,
                              Diagnostics* diag) {
  if (!(total_time > 0.0)) throw Error(ErrorKind::kInvalidArgument, "total time must be > 0");
  if (steps < 1) throw Error(ErrorKind::kInvalidArgument, "steps must be >= 1");
  const Index d = g.dim();
  const double tau = total_time / static_cast<double>(steps);

  InstructionList body;
  const ComplexMatrix& h = g.hamiltonian().matrix();
  if (h.norm() > 0.0) body.push_back(Instruction{UnitaryOp{expm(-kI * tau * h)}});

  for (std::size_t k = 0; k < g.lindblad_ops().size(); ++k) {
    const ComplexMatrix& l = g.lindblad_ops()[k];
    if (l.norm() <= 1e-15) {
      warn(diag, "skipped zero Lindblad operator " + std::to_string(k));
      continue;
    }
    // L = U P, Xbar = P / tr P, step coupling tr(P) sqrt(tau).
    const PolarFactors pol = polar(l);
    const double trp = pol.positive.matrix().trace().real();
    const HermitianMatrix xbar = HermitianMatrix::symmetrized(pol.positive.matrix() / trp);
    const double gt = trp * std::sqrt(tau);
    const double theta_max = gt * max_eigenvalue(xbar);
    if (theta_max > std::numbers::pi / 2) {
      std::ostringstream msg;
      msg << "Lindblad operator " << k << " needs step coupling " << theta_max
          << " > pi/2; increase --steps";
      throw Error(ErrorKind::kCouplingOutOfRange, msg.str());
    }
    body.push_back(Instruction{MeasureOp{gt, compile_schedule(xbar)}});
    body.push_back(Instruction{BranchOp{{}, unitary_list(pol.unitary)}});
  }
  InstructionList top;
  top.push_back(Instruction{RepeatOp{steps, std::move(body)}});
  return ControlProgram{d, std::move(top)};
}

ComplexMatrix commutator_step(const HermitianMatrix& h1, const HermitianMatrix& h2, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::kInvalidArgument, "dt must be > 0");
  if (h1.dim() != h2.dim()) throw Error(ErrorKind::kDimensionMismatch, "Hamiltonian dimensions differ");
  const ComplexMatrix& a = h1.matrix();
  const ComplexMatrix& b = h2.matrix();
  return expm(kI * dt * b) * expm(kI * dt * a) * expm(-kI * dt * b) * expm(-kI * dt * a);
}

SynthesisReport verify(const ControlProgram& p, const Superoperator& target, std::string description) {
  if (p.dim != target.d) throw Error(ErrorKind::kDimensionMismatch, "program and target dimensions differ");
  const Superoperator s = program_superoperator(p);
  const ProgramStats stats = program_stats(p);
  SynthesisReport r;
  r.target = std::move(description);
  r.program = p;
  r.distance = choi_distance(choi_of(s), choi_of(target));
  r.branch_count = stats.branch_count;
  r.step_count = stats.steps;
  return r;
}

SynthesisReport verify(const ControlProgram& p, const KrausChannel& target, std::string description) {
  if (target.d_in() != target.d_out() || p.dim != target.d_in()) {
    throw Error(ErrorKind::kDimensionMismatch, "program and target dimensions differ");
  }
  return verify(p, superoperator_of(target), std::move(description));
}

}  // namespace oqcc
