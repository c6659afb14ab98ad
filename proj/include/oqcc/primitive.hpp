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

// The Yes-No measurement primitive: a two-level ancilla prepared in |0>,
// coupled to the system by gamma X (x) sigma_x for a time t, then read out in
// the computational basis. Only the product gamma t enters. Joint states are
// ordered system (x) ancilla.

#include <array>
#include <optional>
#include <vector>

#include "oqcc/channels.hpp"
#include "oqcc/lindblad.hpp"
#include "oqcc/matcore.hpp"

namespace oqcc {

class YesNoPrimitive {
 public:
  YesNoPrimitive(Index d, double gamma_t);

  Index dim() const noexcept { return d_; }
  double gamma_t() const noexcept { return gamma_t_; }
  /// |0><0| on the system.
  HermitianMatrix base_projector() const;

 private:
  Index d_;
  double gamma_t_;
};

ComplexMatrix pauli_x();

struct ScheduleSegment {
  ComplexMatrix v;  // unitary applied before the wait, undone after it
  double duration = 0.0;
};

/// Segments (V_i, Delta_i) realizing Xbar = sum_i (Delta_i / Delta t) V_i^H X V_i
/// for the base projector X.
class AveragingSchedule {
 public:
  explicit AveragingSchedule(std::vector<ScheduleSegment> segments);

  const std::vector<ScheduleSegment>& segments() const noexcept { return segments_; }
  double total_duration() const noexcept { return total_; }
  Index dim() const noexcept { return segments_.front().v.rows(); }
  HermitianMatrix realized() const;

 private:
  std::vector<ScheduleSegment> segments_;
  double total_ = 0.0;
};

struct EffectivePair {
  HermitianMatrix b0;  // cos(gamma t Xbar)
  HermitianMatrix b1;  // sin(gamma t Xbar)
};

/// Joint state after the coupling. Without a schedule the base projector is
/// used exactly. With a schedule the interaction is split into
/// `repetitions` rounds, each applying every segment in index order as
/// V_i^H exp(-i theta_i X (x) sigma_x) V_i with theta_i = gamma_t w_i / N.
DensityMatrix joint_evolve(const YesNoPrimitive& p, const AveragingSchedule* schedule,
                           const DensityMatrix& rho_s, int repetitions = 64);

/// exp(-i gamma_t Xbar (x) sigma_x) applied to rho_s (x) |0><0|.
DensityMatrix joint_evolve_ideal(const YesNoPrimitive& p, const HermitianMatrix& xbar,
                                 const DensityMatrix& rho_s);

/// Projective ancilla readout; outcome k carries the reduced system state.
std::array<MeasurementOutcome, 2> readout(const DensityMatrix& joint);

ComplexMatrix partial_trace_ancilla(const ComplexMatrix& joint);

/// Eigen-schedule: one segment per nonzero eigenvalue lambda_i with
/// Delta_i = lambda_i Delta t and V_i^H X V_i = |e_i><e_i|.
AveragingSchedule compile_schedule(const HermitianMatrix& target, double delta_t = 1.0);

/// Checks PSD and unit trace; throws NotPSD / NotUnitTrace.
void require_unit_trace_psd(const HermitianMatrix& xbar);

/// B0 = cos(gamma t Xbar), B1 = sin(gamma t Xbar). Throws CouplingOutOfRange
/// unless gamma_t lambda_max(Xbar) <= pi/2.
EffectivePair effective_pair(const YesNoPrimitive& p, const HermitianMatrix& xbar);

/// Generator of one measure-and-feedback step of duration `step_duration`:
/// H = 0, L = (gamma_t / sqrt(step)) U Xbar, trace part moved into H.
CanonicalGenerator small_time_generator(const YesNoPrimitive& p, const HermitianMatrix& xbar,
                                        const std::optional<ComplexMatrix>& feedback,
                                        double step_duration);

/// Second-order expansion of the joint state in gamma t.
ComplexMatrix joint_second_order(const YesNoPrimitive& p, const HermitianMatrix& xbar,
                                 const DensityMatrix& rho_s);

/// B0 rho B0 + U B1 rho B1 U^H
ComplexMatrix measure_feedback_step(const YesNoPrimitive& p, const HermitianMatrix& xbar,
                                    const ComplexMatrix& feedback, const DensityMatrix& rho_s);

/// rho - (gamma t)^2 / 2 (Xbar^2 rho - 2 U Xbar rho Xbar U^H + rho Xbar^2)
ComplexMatrix feedback_step_second_order(const YesNoPrimitive& p, const HermitianMatrix& xbar,
                                         const ComplexMatrix& feedback,
                                         const DensityMatrix& rho_s);

}  // namespace oqcc
