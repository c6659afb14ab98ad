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

#include "oqcc/lindblad.hpp"
#include "oqcc/random.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace oqcc;
using namespace testutil;

namespace {

CanonicalGenerator random_generator(Index d, int nops, Rng& rng, double scale = 1.0) {
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < nops; ++k) {
    ComplexMatrix l = random_ginibre(d, d, rng);
    l -= (l.trace() / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
    ops.push_back(scale * l / l.norm());
  }
  ComplexMatrix h = random_hermitian(d, rng).matrix();
  h *= scale / h.norm();
  return CanonicalGenerator(HermitianMatrix::from(h), ops);
}

GKSGenerator random_gks(Index d, Rng& rng) {
  const OperatorBasis basis = OperatorBasis::gellmann(d);
  const Index n = static_cast<Index>(basis.size());
  const ComplexMatrix g = random_ginibre(n, n, rng);
  return GKSGenerator(random_hermitian(d, rng), basis, HermitianMatrix::symmetrized(g * g.adjoint() / g.norm()));
}

}  // namespace

TEST_CASE("Gell-Mann basis is traceless and orthonormal", "[lindblad]") {
  for (Index d : {2, 3, 4}) {
    const OperatorBasis b = OperatorBasis::gellmann(d);
    REQUIRE(b.size() == static_cast<std::size_t>(d * d - 1));
    for (std::size_t i = 0; i < b.size(); ++i) {
      CHECK(std::abs(b[i].trace()) <= 1e-12);
      for (std::size_t j = 0; j < b.size(); ++j) {
        const Complex ip = (b[i].adjoint() * b[j]).trace();
        CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }
    }
  }
  const OperatorBasis q = OperatorBasis::gellmann(2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK((q[0] - r * sx()).norm() < 1e-15);
  CHECK((q[1] - r * sy()).norm() < 1e-15);
  CHECK((q[2] - r * sz()).norm() < 1e-15);
}

TEST_CASE("OperatorBasis and generator validation", "[lindblad]") {
  CHECK(throws_kind(ErrorKind::kNotTraceless, [] { OperatorBasis(2, {id(2), sx(), sy()}); }));
  CHECK(throws_kind(ErrorKind::kInvalidArgument, [] { OperatorBasis(2, {sx(), sy(), sz()}); }));
  CHECK(throws_kind(ErrorKind::kInvalidArgument, [] { OperatorBasis(2, {sx()}); }));
  CHECK(throws_kind(ErrorKind::kNotTraceless, [] { CanonicalGenerator(HermitianMatrix::zero(2), {id(2)}); }));
  CHECK(throws_kind(ErrorKind::kNegativeEigenvalue, [] {
    GKSGenerator(HermitianMatrix::zero(2), OperatorBasis::gellmann(2), HermitianMatrix::from(diag({1, 0, -0.1})));
  }));
}

TEST_CASE("canonicalize examples", "[lindblad]") {
  const OperatorBasis basis = OperatorBasis::gellmann(2);
  const CanonicalGenerator zero =
      canonicalize(GKSGenerator(HermitianMatrix::from(sz()), basis, HermitianMatrix::zero(3)));
  CHECK(zero.lindblad_ops().empty());
  CHECK((zero.hamiltonian().matrix() - sz()).norm() == 0.0);

  const CanonicalGenerator one =
      canonicalize(GKSGenerator(HermitianMatrix::zero(2), basis, HermitianMatrix::from(diag({2, 0, 0}))));
  REQUIRE(one.lindblad_ops().size() == 1);
  const ComplexMatrix& l = one.lindblad_ops()[0];
  // Up to a global phase.
  const Complex phase = (sx().adjoint() * l).trace() / 2.0;
  CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
  CHECK((l - phase * sx()).norm() < 1e-12);

  // Rank-one A built from c = (1, i, 0) (scaled); compare right-hand sides.
  ComplexVector c(3);
  c << 1.0, Complex(0, 1), 0.0;
  const ComplexMatrix a = c * c.adjoint();
  const GKSGenerator g(HermitianMatrix::zero(2), basis, HermitianMatrix::from(a));
  const CanonicalGenerator cg = canonicalize(g);
  CHECK(cg.lindblad_ops().size() == 1);
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix rho = random_density(2, rng).matrix();
    CHECK((gks_rhs(g, rho) - canonical_rhs(cg, rho)).norm() < 1e-12);
  }
}

TEST_CASE("canonicalize preserves the action", "[lindblad][property]") {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 2 + trial % 3;
    const GKSGenerator g = random_gks(d, rng);
    const CanonicalGenerator cg = canonicalize(g);
    for (int k = 0; k < 4; ++k) {
      const ComplexMatrix rho = random_density(d, rng).matrix();
      const ComplexMatrix lhs = gks_rhs(g, rho);
      CHECK((lhs - canonical_rhs(cg, rho)).norm() <= 1e-10);
      CHECK(std::abs(lhs.trace()) <= 1e-10);
      std::vector<ComplexMatrix> ls = cg.lindblad_ops();
      CHECK((canonical_rhs(cg, rho) - oracle::lindblad_rhs(cg.hamiltonian().matrix(), ls, rho)).norm() <= 1e-12);
    }
  }
}

TEST_CASE("canonicalize rejects a negative coefficient matrix", "[lindblad]") {
  // Slightly negative values inside the GKS tolerance are accepted and dropped.
  const GKSGenerator g(HermitianMatrix::zero(2), OperatorBasis::gellmann(2),
                       HermitianMatrix::from(diag({1, -5e-11, 0})));
  CHECK(canonicalize(g).lindblad_ops().size() == 1);
}

TEST_CASE("gks_from_lindblad_op examples and round trip", "[lindblad]") {
  const OperatorBasis basis = OperatorBasis::gellmann(2);
  CHECK(gks_from_lindblad_op(ComplexMatrix::Zero(2, 2), basis).coefficients().matrix().norm() == 0.0);
  const GKSGenerator g = gks_from_lindblad_op(sx(), basis);
  CHECK((g.coefficients().matrix() - diag({2, 0, 0})).norm() < 1e-14);
  CHECK(throws_kind(ErrorKind::kNotTraceless, [&] { gks_from_lindblad_op(id(2), basis); }));

  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 2 + trial % 3;
    ComplexMatrix l = random_ginibre(d, d, rng);
    l -= (l.trace() / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
    const GKSGenerator gl = gks_from_lindblad_op(l, OperatorBasis::gellmann(d));
    const ComplexMatrix& a = gl.coefficients().matrix();
    CHECK(std::abs(a.trace() - (l.adjoint() * l).trace()) < 1e-10);
    const EigenSystem es = heig(gl.coefficients());
    CHECK(es.eigenvalues(es.eigenvalues.size() - 2) < 1e-10 * es.eigenvalues.maxCoeff());  // rank one
    const CanonicalGenerator back = canonicalize(gl);
    REQUIRE(back.lindblad_ops().size() == 1);
    const ComplexMatrix& lb = back.lindblad_ops()[0];
    const Complex overlap = (lb.adjoint() * l).trace();
    const Complex phase = overlap / std::abs(overlap);
    CHECK((phase * lb - l).norm() < 1e-10);
  }
}

TEST_CASE("liouvillian examples", "[lindblad]") {
  CHECK(liouvillian(CanonicalGenerator::zero(2)).matrix.norm() == 0.0);

  const Superoperator lz = liouvillian(CanonicalGenerator(HermitianMatrix::from(0.5 * sz()), {}));
  const ComplexMatrix e01 = mat2(0, 1, 0, 0);
  CHECK((lz.apply(e01) - Complex(0, -1) * e01).norm() < 1e-15);

  const double gamma = 0.7;
  const Superoperator ld = liouvillian(CanonicalGenerator(HermitianMatrix::zero(2), {std::sqrt(gamma) * sminus()}));
  CHECK((ld.apply(diag({0, 1})) - gamma * (diag({1, 0}) - diag({0, 1}))).norm() < 1e-15);
}

TEST_CASE("liouvillian matches the direct right-hand side", "[lindblad][property]") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 2 + trial % 3;
    const CanonicalGenerator g = random_generator(d, 1 + trial % 3, rng);
    const Superoperator s = liouvillian(g);
    const ComplexMatrix rho = random_density(d, rng).matrix();
    std::vector<ComplexMatrix> ls = g.lindblad_ops();
    const ComplexMatrix direct = oracle::lindblad_rhs(g.hamiltonian().matrix(), ls, rho);
    CHECK((s.apply(rho) - direct).norm() <= 1e-11);
    // Hermiticity preservation and trace annihilation.
    const ComplexMatrix hr = random_hermitian(d, rng).matrix();
    const ComplexMatrix out = s.apply(hr);
    CHECK((out - out.adjoint()).norm() <= 1e-10);
    CHECK((vec(id(d)).adjoint() * s.matrix).norm() <= 1e-9);
  }
}

TEST_CASE("liouvillian is additive over generators", "[lindblad][property]") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const CanonicalGenerator a = random_generator(3, 2, rng);
    const CanonicalGenerator b = random_generator(3, 1, rng);
    const ComplexMatrix sum = liouvillian(a).matrix + liouvillian(b).matrix;
    CHECK((liouvillian(merge(a, b)).matrix - sum).norm() <= 1e-12);
  }
}

TEST_CASE("vec and superoperator conventions", "[lindblad]") {
  Rng rng(6);
  const ComplexMatrix m = random_ginibre(3, 3, rng);
  const ComplexVector v = vec(m);
  CHECK(v(1) == m(1, 0));  // column stacking
  CHECK(v(3) == m(0, 1));
  CHECK(unvec(v, 3) == m);
  const KrausChannel ch = random_channel(3, 2, rng);
  const ComplexMatrix rho = random_density(3, rng).matrix();
  CHECK((superoperator_of(ch).apply(rho) - oracle::apply_kraus(ch.operators(), rho)).norm() < 1e-13);
  CHECK((choi_of(superoperator_of(ch)).matrix.matrix() - choi(ch).matrix.matrix()).norm() < 1e-13);
  const KrausChannel back = kraus_of(superoperator_of(ch));
  CHECK(channel_distance(back, ch) < 1e-10);
}

TEST_CASE("propagate examples", "[lindblad]") {
  Rng rng(7);
  const CanonicalGenerator g = random_generator(2, 2, rng);
  const DensityMatrix rho0 = random_density(2, rng);
  CHECK(propagate(g, rho0, 0.0).matrix() == rho0.matrix());
  CHECK(throws_kind(ErrorKind::kNegativeTime, [&] { propagate(g, rho0, -1.0); }));

  // Decay against an independent fixed-step integrator.
  const double gamma = 1.3;
  const ComplexMatrix l = std::sqrt(gamma) * sminus();
  const CanonicalGenerator decay(HermitianMatrix::zero(2), {l});
  for (double t : {0.1, 0.5, 2.0}) {
    const ComplexMatrix ref = oracle::rk4(
        [&](const ComplexMatrix& r) { return oracle::lindblad_rhs(ComplexMatrix::Zero(2, 2), {l}, r); },
        diag({0, 1}), t, 1e-4);
    const ComplexMatrix out = propagate(decay, DensityMatrix::basis(2, 1), t).matrix();
    CHECK((out - ref).norm() < 1e-10);
  }

  // Unitary-only generator is conjugation.
  const HermitianMatrix h = random_hermitian(3, rng);
  const DensityMatrix r3 = random_density(3, rng);
  const ComplexMatrix u = expm(Complex(0, -0.8) * h.matrix());
  const ComplexMatrix out = propagate(CanonicalGenerator(h, {}), r3, 0.8).matrix();
  CHECK((out - u * r3.matrix() * u.adjoint()).norm() < 1e-10);
}

TEST_CASE("propagate produces valid states", "[lindblad][property]") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 2 + trial % 3;
    const CanonicalGenerator g = random_generator(d, 2, rng);
    const double norm = liouvillian(g).matrix.norm();
    const double t = 10.0 / norm * (trial + 1) / 20.0;
    const DensityMatrix out = propagate(g, random_density(d, rng), t);
    CHECK(min_eigenvalue(out.hermitian()) >= -1e-9);
    CHECK(std::abs(out.matrix().trace() - 1.0) <= 1e-9);
  }
}

TEST_CASE("semigroup_check", "[lindblad]") {
  Rng rng(9);
  const CanonicalGenerator g = random_generator(2, 2, rng);
  CHECK(semigroup_check(g, 0.0, 0.0) == 0.0);
  CHECK(semigroup_check(g, 0.3, 0.7) <= 1e-9);
  const CanonicalGenerator h(random_hermitian(3, rng), {});
  CHECK(semigroup_check(h, 0.4, 1.1) <= 1e-10);
  CHECK(throws_kind(ErrorKind::kNegativeTime, [&] { semigroup_check(g, -0.1, 0.2); }));
}

TEST_CASE("trace parts of Lindblad operators move into the Hamiltonian", "[lindblad]") {
  Rng rng(10);
  ComplexMatrix l = random_ginibre(2, 2, rng);
  std::vector<TraceAdjustment> adj;
  const CanonicalGenerator g = CanonicalGenerator::from_operators(HermitianMatrix::zero(2), {l}, &adj);
  REQUIRE(adj.size() == 1);
  CHECK(std::abs(adj[0].removed_trace - l.trace()) < 1e-14);
  CHECK(std::abs(g.lindblad_ops()[0].trace()) < 1e-14);
  const ComplexMatrix rho = random_density(2, rng).matrix();
  CHECK((canonical_rhs(g, rho) - oracle::lindblad_rhs(ComplexMatrix::Zero(2, 2), {l}, rho)).norm() < 1e-12);
}
