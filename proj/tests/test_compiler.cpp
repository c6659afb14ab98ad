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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oqcc/compiler.hpp"
#include "oqcc/random.hpp"
#include "oqcc/simulator.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace oqcc;
using namespace testutil;

namespace {

// Choi matrix of a Kraus set computed independently of the library.
double oracle_distance(const KrausChannel& ch, const std::vector<ComplexMatrix>& target) {
  return (oracle::choi_kron(ch.operators()) - oracle::choi_kron(target)).norm();
}

const MeasureOp& measure_at(const ControlProgram& p, std::size_t i) {
  return std::get<MeasureOp>(p.instructions.at(i).op);
}

const BranchOp& branch_at(const ControlProgram& p, std::size_t i) {
  return std::get<BranchOp>(p.instructions.at(i).op);
}

// Exact channel of a generator via a Taylor exponential of the dense Liouvillian.
ComplexMatrix exact_choi(const CanonicalGenerator& g, double t) {
  const ComplexMatrix lv = oracle::liouvillian_dense(g.hamiltonian().matrix(), g.lindblad_ops());
  return oracle::choi_from_super(oracle::expm_taylor(t * lv));
}

}  // namespace

TEST_CASE("synth_two_outcome on amplitude damping", "[compiler]") {
  const KrausChannel ad = amplitude_damping(0.36);
  const ControlProgram p = synth_two_outcome(ad);
  REQUIRE(p.instructions.size() == 2);
  const MeasureOp& m = measure_at(p, 0);
  CHECK(std::abs(m.gamma_t - 0.6435011087932844) < 1e-12);
  CHECK((m.schedule.realized().matrix() - diag({0, 1})).norm() < 1e-12);
  const BranchOp& b = branch_at(p, 1);
  CHECK(b.on0.empty());
  REQUIRE(b.on1.size() == 1);
  CHECK((std::get<UnitaryOp>(b.on1[0].op).matrix - sx()).norm() < 1e-12);
  CHECK(oracle_distance(extract_channel(p), ad.operators()) < 1e-8);
  CHECK(verify(p, ad).distance < 1e-8);
}

TEST_CASE("synth_two_outcome degenerate target emits a unitary", "[compiler]") {
  Rng rng(1);
  const ComplexMatrix v = random_unitary(3, rng);
  Diagnostics diag;
  const ControlProgram p = synth_two_outcome(KrausChannel({v, ComplexMatrix::Zero(3, 3)}), &diag);
  CHECK(diag.degenerate);
  REQUIRE(p.instructions.size() == 1);
  CHECK((std::get<UnitaryOp>(p.instructions[0].op).matrix - v).norm() < 1e-12);
  CHECK(program_stats(p).measurements == 0);
}

TEST_CASE("synth_two_outcome recovers a Yes-No pair", "[compiler]") {
  Rng rng(2);
  for (Index d : {2, 3, 4}) {
    const HermitianMatrix xbar = random_unit_trace_psd(d, rng);
    const double theta = 0.5;
    const HermitianMatrix c = matfunc(xbar, [&](double x) { return std::cos(theta * x); });
    const HermitianMatrix s = matfunc(xbar, [&](double x) { return std::sin(theta * x); });
    const ControlProgram p = synth_two_outcome(KrausChannel({c.matrix(), s.matrix()}));
    REQUIRE(p.instructions.size() == 2);
    const MeasureOp& m = measure_at(p, 0);
    CHECK(std::abs(m.gamma_t - theta) < 1e-10);
    CHECK((m.schedule.realized().matrix() - xbar.matrix()).norm() < 1e-10);
    CHECK(branch_at(p, 1).on0.empty());
    CHECK(branch_at(p, 1).on1.empty());
  }
}

TEST_CASE("synth_two_outcome round trip on random channels", "[compiler][property]") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 2 + trial % 3;
    const KrausChannel ch = random_channel(d, 2, rng);
    const ControlProgram p = synth_two_outcome(ch);
    CHECK(oracle_distance(extract_channel(p), ch.operators()) < 1e-8);
  }
}

TEST_CASE("synth_two_outcome input validation", "[compiler]") {
  CHECK(throws_kind(ErrorKind::kInvalidArgument, [] { synth_two_outcome(depolarizing(2, 0.5)); }));
  // Slightly incomplete input is renormalized with a warning.
  const KrausChannel ad = amplitude_damping(0.36);
  std::vector<ComplexMatrix> ops = ad.operators();
  ops[0] *= 1.0 + 1e-10;
  Diagnostics diag;
  const ControlProgram p = synth_two_outcome(KrausChannel(ops), &diag);
  CHECK_FALSE(diag.warnings.empty());
  CHECK(channel_distance(extract_channel(p), ad) < 1e-8);
}

TEST_CASE("synth_multi_outcome examples", "[compiler]") {
  Rng rng(4);
  const KrausChannel ch = random_channel(2, 2, rng);
  CHECK(synth_multi_outcome(ch.operators()) == synth_two_outcome(ch));

  const ComplexMatrix b = id(2) / std::sqrt(3.0);
  const ControlProgram p = synth_multi_outcome({b, b, b});
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    const auto branches = run_branches(p, rho);
    REQUIRE(branches.size() == 3);
    for (const auto& br : branches) CHECK(std::abs(br.rho.trace().real() - 1.0 / 3.0) < 1e-12);
  }
  // First stage splits off one third.
  const EffectivePair first = measurement_pair(measure_at(p, 0));
  CHECK(std::abs((first.b0.matrix() * first.b0.matrix()).trace().real() / 2.0 - 1.0 / 3.0) < 1e-12);

  const ComplexMatrix iso = random_isometry(6, 2, rng);
  std::vector<ComplexMatrix> povm;
  for (int k = 0; k < 3; ++k) povm.push_back(iso.middleRows(2 * k, 2));
  CHECK(oracle_distance(extract_channel(synth_multi_outcome(povm)), povm) < 1e-7);
}

TEST_CASE("synth_multi_outcome random measurements", "[compiler][property]") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 2 + trial % 2;
    const std::size_t k = 3 + trial % 3;
    const KrausChannel ch = random_channel(d, static_cast<Index>(k), rng);
    Diagnostics diag;
    const ControlProgram p = synth_multi_outcome(ch.operators(), &diag);
    CHECK(oracle_distance(extract_channel(p), ch.operators()) < 1e-7);
    for (double defect : diag.level_defects) CHECK(defect <= 1e-9);
  }
}

TEST_CASE("synth_multi_outcome drops zero operators", "[compiler]") {
  const KrausChannel ad = amplitude_damping(0.2);
  Diagnostics diag;
  const ControlProgram p =
      synth_multi_outcome({ad.operators()[0], ComplexMatrix::Zero(2, 2), ad.operators()[1]}, &diag);
  CHECK_FALSE(diag.warnings.empty());
  CHECK(channel_distance(extract_channel(p), ad) < 1e-8);
  CHECK(throws_kind(ErrorKind::kCompletenessViolation, [] { synth_multi_outcome({0.5 * id(2), 0.5 * id(2)}); }));
}

TEST_CASE("synth_lindblad examples", "[compiler]") {
  const ControlProgram empty = synth_lindblad(CanonicalGenerator::zero(2), 1.0, 8);
  REQUIRE(empty.instructions.size() == 1);
  const RepeatOp& rep = std::get<RepeatOp>(empty.instructions[0].op);
  CHECK(rep.count == 8);
  CHECK(rep.body.empty());
  CHECK(channel_distance(extract_channel(empty), KrausChannel::identity(2)) == 0.0);

  const CanonicalGenerator hz(HermitianMatrix::from(sz()), {});
  for (std::size_t n : {1, 5, 32}) {
    const ControlProgram p = synth_lindblad(hz, 0.7, n);
    const ComplexMatrix u = oracle::expm_taylor(Complex(0, -0.7) * sz());
    CHECK(verify(p, KrausChannel::unitary(u)).distance < 1e-10);
  }

  const double gamma = 0.8;
  const CanonicalGenerator decay(HermitianMatrix::zero(2), {std::sqrt(gamma) * sminus()});
  const ControlProgram p = synth_lindblad(decay, 1.0, 16);
  const RepeatOp& body = std::get<RepeatOp>(p.instructions[0].op);
  REQUIRE(body.body.size() == 2);
  const MeasureOp& m = std::get<MeasureOp>(body.body[0].op);
  CHECK(std::abs(m.gamma_t - std::sqrt(gamma / 16.0)) < 1e-12);
  CHECK((m.schedule.realized().matrix() - diag({0, 1})).norm() < 1e-12);
  const BranchOp& br = std::get<BranchOp>(body.body[1].op);
  CHECK(br.on0.empty());
  CHECK((std::get<UnitaryOp>(br.on1.at(0).op).matrix - sx()).norm() < 1e-12);

  std::vector<double> ns, errs;
  for (std::size_t n : {32, 64, 128, 256}) {
    const Superoperator s = program_superoperator(synth_lindblad(decay, 1.0, n));
    ns.push_back(static_cast<double>(n));
    errs.push_back((choi_of(s).matrix.matrix() - exact_choi(decay, 1.0)).norm());
  }
  CHECK(errs.back() < 1e-3);
  CHECK(std::abs(oracle::slope(ns, errs) + 1.0) <= 0.2);
}

TEST_CASE("synth_lindblad coupling range and input checks", "[compiler]") {
  const CanonicalGenerator strong(HermitianMatrix::zero(2), {3.0 * sminus()});
  try {
    synth_lindblad(strong, 1.0, 1);
    FAIL("expected CouplingOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCouplingOutOfRange);
    CHECK(std::string(e.what()).find("increase --steps") != std::string::npos);
  }
  CHECK_NOTHROW(synth_lindblad(strong, 1.0, 8));
  CHECK(throws_kind(ErrorKind::kInvalidArgument, [&] { synth_lindblad(strong, 0.0, 8); }));
  CHECK(throws_kind(ErrorKind::kInvalidArgument, [&] { synth_lindblad(strong, 1.0, 0); }));
}

TEST_CASE("synth_lindblad composes several operators", "[compiler][property]") {
  Rng rng(6);
  std::vector<ComplexMatrix> ls;
  for (int k = 0; k < 2; ++k) {
    ComplexMatrix l = random_ginibre(2, 2, rng);
    l -= 0.5 * l.trace() * id(2);
    ls.push_back(0.7 * l / l.norm());
  }
  const CanonicalGenerator g(HermitianMatrix::from(0.3 * sx()), ls);
  std::vector<double> ns, errs;
  for (std::size_t n : {16, 32, 64, 128}) {
    ns.push_back(static_cast<double>(n));
    errs.push_back((choi_of(program_superoperator(synth_lindblad(g, 1.0, n))).matrix.matrix() -
                    exact_choi(g, 1.0)).norm());
  }
  CHECK(std::abs(oracle::slope(ns, errs) + 1.0) <= 0.2);
}

TEST_CASE("commutator_step", "[compiler]") {
  const HermitianMatrix x = HermitianMatrix::from(sx());
  const HermitianMatrix y = HermitianMatrix::from(sy());
  CHECK((commutator_step(x, x, 0.1) - id(2)).norm() < 1e-14);
  CHECK((commutator_step(HermitianMatrix::zero(2), y, 0.1) - id(2)).norm() < 1e-14);
  auto residual = [&](double dt) {
    const ComplexMatrix target = oracle::expm_taylor((sx() * sy() - sy() * sx()) * (dt * dt));
    return (commutator_step(x, y, dt) - target).norm();
  };
  const double ratio = residual(1e-2) / residual(5e-3);
  CHECK(ratio >= 8.0 * 0.8);
  CHECK(ratio <= 8.0 * 1.2);
}

TEST_CASE("verify examples", "[compiler]") {
  CHECK(verify(ControlProgram{2, {}}, KrausChannel::identity(2)).distance == 0.0);
  const SynthesisReport r = verify(ControlProgram{2, {}}, depolarizing(2, 1.0), "depolarizing");
  CHECK(std::abs(r.distance - 0.8660254037844386) < 1e-12);
  CHECK(r.target == "depolarizing");
  CHECK(throws_kind(ErrorKind::kDimensionMismatch, [] { verify(ControlProgram{3, {}}, KrausChannel::identity(2)); }));
  const SynthesisReport a = verify(synth_two_outcome(amplitude_damping(0.36)), amplitude_damping(0.36));
  CHECK(a.distance < 1e-8);
  CHECK(a.branch_count == 2.0);
}
