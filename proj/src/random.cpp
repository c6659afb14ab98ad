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

#include "oqcc/random.hpp"

#include <cmath>

namespace oqcc {

ComplexMatrix random_ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = Complex(n(rng), n(rng)) / std::sqrt(2.0);
  return g;
}

HermitianMatrix random_hermitian(Index d, Rng& rng) {
  return HermitianMatrix::symmetrized(random_ginibre(d, d, rng));
}

ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng) {
  const ComplexMatrix g = random_ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix r = qr.matrixQR();
  // Fix the column phases so the distribution is Haar.
  for (Index j = 0; j < cols; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

ComplexMatrix random_unitary(Index d, Rng& rng) { return random_isometry(d, d, rng); }

DensityMatrix random_density(Index d, Rng& rng) {
  const ComplexMatrix g = random_ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(HermitianMatrix::symmetrized(rho));
}

HermitianMatrix random_unit_trace_psd(Index d, Rng& rng) {
  return random_density(d, rng).hermitian();
}

KrausChannel random_channel(Index d, Index k, Rng& rng) {
  const ComplexMatrix v = random_isometry(d * k, d, rng);
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) ops.push_back(v.middleRows(i * d, d));
  return KrausChannel(std::move(ops));
}

}  // namespace oqcc
