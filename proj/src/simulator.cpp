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

#include "oqcc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>

#include "oqcc/errors.hpp"

namespace oqcc {

namespace {

using PairCache = std::unordered_map<const MeasureOp*, EffectivePair>;

void fill_cache(const InstructionList& list, PairCache& cache) {
  for (const auto& ins : list) {
    if (const auto* m = std::get_if<MeasureOp>(&ins.op)) {
      cache.emplace(m, measurement_pair(*m));
    } else if (const auto* b = std::get_if<BranchOp>(&ins.op)) {
      fill_cache(b->on0, cache);
      fill_cache(b->on1, cache);
    } else if (const auto* r = std::get_if<RepeatOp>(&ins.op)) {
      fill_cache(r->body, cache);
    }
  }
}

// Walks a program one primitive at a time, expanding repeats lazily.
class Cursor {
 public:
  struct Step {
    const UnitaryOp* unitary = nullptr;
    const MeasureOp* measure = nullptr;
    const BranchOp* branch = nullptr;
  };

  explicit Cursor(const InstructionList& top) { frames_.push_back(Frame{&top, 0, 0}); }

  /// Next unitary or measure (with its branch); both pointers null at the end.
  Step next() {
    while (!frames_.empty()) {
      Frame& f = frames_.back();
      if (f.pc == f.list->size()) {
        if (f.repeats_left > 0) {
          --f.repeats_left;
          f.pc = 0;
        } else {
          frames_.pop_back();
        }
        continue;
      }
      const Instruction& ins = (*f.list)[f.pc];
      if (const auto* u = std::get_if<UnitaryOp>(&ins.op)) {
        ++f.pc;
        return Step{u, nullptr, nullptr};
      }
      if (const auto* m = std::get_if<MeasureOp>(&ins.op)) {
        const auto* b = &std::get<BranchOp>((*f.list)[f.pc + 1].op);
        f.pc += 2;
        return Step{nullptr, m, b};
      }
      if (const auto* r = std::get_if<RepeatOp>(&ins.op)) {
        ++f.pc;
        if (r->count > 0 && !r->body.empty()) frames_.push_back(Frame{&r->body, 0, r->count - 1});
        continue;
      }
      throw Error(ErrorKind::kMalformedProgram, "branch without measure");
    }
    return Step{};
  }

  void enter(const InstructionList& list) {
    if (!list.empty()) frames_.push_back(Frame{&list, 0, 0});
  }

 private:
  struct Frame {
    const InstructionList* list;
    std::size_t pc;
    std::size_t repeats_left;
  };
  std::vector<Frame> frames_;
};

void check_cap(const ControlProgram& p, std::uint64_t cap) {
  const double leaves = program_stats(p).branch_count;
  if (leaves > static_cast<double>(cap)) {
    throw Error(ErrorKind::kBranchExplosion,
                "program has " + std::to_string(leaves) + " outcome branches, cap is " +
                    std::to_string(cap) + "; use trajectories");
  }
}

void walk_states(Cursor cur, ComplexMatrix rho, std::string record, const PairCache& cache,
                 std::vector<BranchState>& out) {
  while (true) {
    const Cursor::Step s = cur.next();
    if (s.unitary) {
      rho = s.unitary->matrix * rho * s.unitary->matrix.adjoint();
    } else if (s.measure) {
      const EffectivePair& bp = cache.at(s.measure);
      Cursor c0 = cur;
      c0.enter(s.branch->on0);
      walk_states(std::move(c0), bp.b0.matrix() * rho * bp.b0.matrix(), record + '0', cache, out);
      cur.enter(s.branch->on1);
      rho = bp.b1.matrix() * rho * bp.b1.matrix();
      record += '1';
    } else {
      out.push_back(BranchState{std::move(rho), std::move(record)});
      return;
    }
  }
}

void walk_ops(Cursor cur, ComplexMatrix k, const PairCache& cache, std::vector<ComplexMatrix>& out) {
  while (true) {
    const Cursor::Step s = cur.next();
    if (s.unitary) {
      k = s.unitary->matrix * k;
    } else if (s.measure) {
      const EffectivePair& bp = cache.at(s.measure);
      Cursor c0 = cur;
      c0.enter(s.branch->on0);
      walk_ops(std::move(c0), bp.b0.matrix() * k, cache, out);
      cur.enter(s.branch->on1);
      k = bp.b1.matrix() * k;
    } else {
      out.push_back(std::move(k));
      return;
    }
  }
}

Superoperator list_superoperator(const InstructionList& list, Index d) {
  Superoperator s = Superoperator::identity(d);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& op = list[i].op;
    if (const auto* u = std::get_if<UnitaryOp>(&op)) {
      s = superoperator_of(std::vector<ComplexMatrix>{u->matrix}).after(s);
    } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
      const auto& b = std::get<BranchOp>(list[i + 1].op);
      const EffectivePair bp = measurement_pair(*m);
      const Superoperator k0 = superoperator_of(std::vector<ComplexMatrix>{bp.b0.matrix()});
      const Superoperator k1 = superoperator_of(std::vector<ComplexMatrix>{bp.b1.matrix()});
      const ComplexMatrix step = list_superoperator(b.on0, d).matrix * k0.matrix +
                                 list_superoperator(b.on1, d).matrix * k1.matrix;
      s = Superoperator{d, step * s.matrix};
      ++i;
    } else if (const auto* r = std::get_if<RepeatOp>(&op)) {
      Superoperator base = list_superoperator(r->body, d);
      Superoperator acc = Superoperator::identity(d);
      for (std::size_t n = r->count; n > 0; n >>= 1) {
        if (n & 1U) acc = base.after(acc);
        if (n > 1) base = base.after(base);
      }
      s = acc.after(s);
    } else {
      throw Error(ErrorKind::kMalformedProgram, "branch without measure");
    }
  }
  return s;
}

void require_program_state(const ControlProgram& p, Index d) {
  if (p.dim != d) throw Error(ErrorKind::kDimensionMismatch, "program and state dimensions differ");
}

constexpr std::size_t kBlock = 1024;

struct BlockSums {
  ComplexMatrix sum;     // sum of (rho - shift)
  Eigen::MatrixXd sq;    // sum of |rho - shift|^2 entrywise (re^2 + im^2)
};

ComplexMatrix one_trajectory(const ControlProgram& p, const PairCache& cache, const ComplexMatrix& rho0,
                             std::uint64_t seed, std::uint64_t index, std::string* record) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  Cursor cur(p.instructions);
  ComplexMatrix rho = rho0;
  while (true) {
    const Cursor::Step s = cur.next();
    if (s.unitary) {
      rho = s.unitary->matrix * rho * s.unitary->matrix.adjoint();
    } else if (s.measure) {
      const EffectivePair& bp = cache.at(s.measure);
      ComplexMatrix r0 = bp.b0.matrix() * rho * bp.b0.matrix();
      const double p0 = r0.trace().real() / rho.trace().real();
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < p0) {
        rho = r0 / r0.trace().real();
        cur.enter(s.branch->on0);
        if (record) *record += '0';
      } else {
        ComplexMatrix r1 = bp.b1.matrix() * rho * bp.b1.matrix();
        rho = r1 / r1.trace().real();
        cur.enter(s.branch->on1);
        if (record) *record += '1';
      }
    } else {
      return rho;
    }
  }
}

}  // namespace

std::uint64_t branch_cap_from_env() {
  if (const char* v = std::getenv("OQCC_BRANCH_CAP")) {
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return n;
  }
  return kDefaultBranchCap;
}

std::vector<BranchState> run_branches(const ControlProgram& p, const DensityMatrix& rho0,
                                      std::uint64_t cap) {
  validate(p);
  require_program_state(p, rho0.dim());
  check_cap(p, cap);
  PairCache cache;
  fill_cache(p.instructions, cache);
  std::vector<BranchState> out;
  walk_states(Cursor(p.instructions), rho0.matrix(), std::string(), cache, out);
  return out;
}

KrausChannel extract_channel(const ControlProgram& p, std::uint64_t cap) {
  validate(p);
  check_cap(p, cap);
  PairCache cache;
  fill_cache(p.instructions, cache);
  std::vector<ComplexMatrix> ops;
  walk_ops(Cursor(p.instructions), ComplexMatrix::Identity(p.dim, p.dim), cache, ops);
  return KrausChannel(std::move(ops));
}

Superoperator program_superoperator(const ControlProgram& p) {
  validate(p);
  return list_superoperator(p.instructions, p.dim);
}

TrajectoryResult run_trajectories(const ControlProgram& p, const TrajectoryConfig& cfg) {
  validate(p);
  require_program_state(p, cfg.initial.dim());
  if (cfg.count < 1) throw Error(ErrorKind::kInvalidArgument, "trajectory count must be >= 1");
  PairCache cache;
  fill_cache(p.instructions, cache);
  const Index d = p.dim;
  const ComplexMatrix& rho0 = cfg.initial.matrix();

  TrajectoryResult res;
  // Shift by trajectory 0 so deterministic programs report exactly zero error.
  std::string rec0;
  const ComplexMatrix shift = one_trajectory(p, cache, rho0, cfg.seed, 0, &rec0);
  res.first_records.push_back(rec0);
  for (std::uint64_t i = 1; i < std::min<std::uint64_t>(cfg.count, 16); ++i) {
    std::string r;
    one_trajectory(p, cache, rho0, cfg.seed, i, &r);
    res.first_records.push_back(std::move(r));
  }

  const std::size_t nblocks = (cfg.count + kBlock - 1) / kBlock;
  std::vector<BlockSums> blocks(nblocks);
  auto run_block = [&](std::size_t b) {
    BlockSums s{ComplexMatrix::Zero(d, d), Eigen::MatrixXd::Zero(d, d)};
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(cfg.count, lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      const ComplexMatrix x = one_trajectory(p, cache, rho0, cfg.seed, i, nullptr) - shift;
      s.sum += x;
      s.sq += x.cwiseAbs2();
    }
    blocks[b] = std::move(s);
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(cfg.workers, static_cast<unsigned>(nblocks)));
  if (workers == 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < nblocks; b += workers) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }

  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(d, d);
  for (const auto& b : blocks) {
    sum += b.sum;
    sq += b.sq;
  }
  const double n = static_cast<double>(cfg.count);
  const ComplexMatrix mean_shifted = sum / n;
  res.estimate = shift + mean_shifted;
  if (cfg.count > 1) {
    const Eigen::MatrixXd var = ((sq - n * mean_shifted.cwiseAbs2()) / (n - 1.0)).cwiseMax(0.0);
    res.standard_error = std::sqrt(var.sum() / n);
  }
  return res;
}

}  // namespace oqcc
