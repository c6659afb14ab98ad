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

#include "oqcc/program.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "oqcc/errors.hpp"

namespace oqcc {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::kMalformedProgram, what); }

void validate_list(const InstructionList& list, Index d) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& op = list[i].op;
    if (const auto* u = std::get_if<UnitaryOp>(&op)) {
      if (u->matrix.rows() != d || u->matrix.cols() != d) malformed("unitary has wrong shape");
      if (!u->matrix.allFinite() || !is_unitary(u->matrix, 1e-10)) malformed("matrix is not unitary");
    } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
      if (m->schedule.dim() != d) malformed("measurement schedule has wrong dimension");
      if (!std::isfinite(m->gamma_t) || m->gamma_t < 0.0) malformed("gamma_t must be >= 0");
      if (m->gamma_t * max_eigenvalue(m->schedule.realized()) > std::numbers::pi / 2 + 1e-12) {
        malformed("measurement coupling exceeds pi/2");
      }
      if (i + 1 >= list.size() || !std::holds_alternative<BranchOp>(list[i + 1].op)) {
        malformed("measure must be followed by branch");
      }
    } else if (const auto* b = std::get_if<BranchOp>(&op)) {
      if (i == 0 || !std::holds_alternative<MeasureOp>(list[i - 1].op)) {
        malformed("branch must follow a measure");
      }
      validate_list(b->on0, d);
      validate_list(b->on1, d);
    } else if (const auto* r = std::get_if<RepeatOp>(&op)) {
      validate_list(r->body, d);
    }
  }
}

ProgramStats list_stats(const InstructionList& list) {
  ProgramStats s;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& op = list[i].op;
    if (std::holds_alternative<UnitaryOp>(op)) {
      s.steps += 1;
    } else if (std::holds_alternative<MeasureOp>(op)) {
      s.steps += 1;
      s.measurements += 1;
    } else if (const auto* b = std::get_if<BranchOp>(&op)) {
      const ProgramStats s0 = list_stats(b->on0);
      const ProgramStats s1 = list_stats(b->on1);
      s.branch_count *= s0.branch_count + s1.branch_count;
      s.measurements += std::max(s0.measurements, s1.measurements);
      s.steps += std::max(s0.steps, s1.steps);
    } else if (const auto* r = std::get_if<RepeatOp>(&op)) {
      const ProgramStats sb = list_stats(r->body);
      const double n = static_cast<double>(r->count);
      s.branch_count *= std::pow(sb.branch_count, n);
      s.measurements += sb.measurements * r->count;
      s.steps += sb.steps * r->count;
    }
  }
  return s;
}

bool same_matrix(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

}  // namespace

void validate(const ControlProgram& p) {
  if (p.dim < 1) malformed("program dimension must be >= 1");
  validate_list(p.instructions, p.dim);
}

EffectivePair measurement_pair(const MeasureOp& m) {
  return effective_pair(YesNoPrimitive(m.schedule.dim(), m.gamma_t), m.schedule.realized());
}

ProgramStats program_stats(const ControlProgram& p) { return list_stats(p.instructions); }

bool operator==(const Instruction& a, const Instruction& b) {
  if (a.op.index() != b.op.index()) return false;
  if (const auto* u = std::get_if<UnitaryOp>(&a.op)) {
    return same_matrix(u->matrix, std::get<UnitaryOp>(b.op).matrix);
  }
  if (const auto* m = std::get_if<MeasureOp>(&a.op)) {
    const auto& n = std::get<MeasureOp>(b.op);
    const auto& sa = m->schedule.segments();
    const auto& sb = n.schedule.segments();
    if (m->gamma_t != n.gamma_t || sa.size() != sb.size()) return false;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      if (sa[i].duration != sb[i].duration || !same_matrix(sa[i].v, sb[i].v)) return false;
    }
    return true;
  }
  if (const auto* br = std::get_if<BranchOp>(&a.op)) {
    const auto& o = std::get<BranchOp>(b.op);
    return br->on0 == o.on0 && br->on1 == o.on1;
  }
  const auto& r = std::get<RepeatOp>(a.op);
  const auto& o = std::get<RepeatOp>(b.op);
  return r.count == o.count && r.body == o.body;
}

bool operator==(const ControlProgram& a, const ControlProgram& b) {
  return a.dim == b.dim && a.instructions == b.instructions;
}

}  // namespace oqcc
