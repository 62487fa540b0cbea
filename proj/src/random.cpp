// Copyright 2026 The qsl Authors
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

#include "qsl/random.hpp"

#include <cmath>
#include <vector>

namespace qsl {

namespace {

ComplexMatrix ginibre(Rng& rng, Eigen::Index d) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            const double re = n(rng);
            g(i, j) = Complex(re, n(rng));
        }
    return g;
}

}  // namespace

ComplexMatrix random_unitary(Rng& rng, Eigen::Index d) {
    Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(rng, d));
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix r = qr.matrixQR();
    for (Eigen::Index j = 0; j < d; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

ComplexMatrix random_hermitian(Rng& rng, Eigen::Index d) { return hermitize(ginibre(rng, d)); }

TangentOperator random_tangent(Rng& rng, Eigen::Index d) {
    ComplexMatrix m = random_hermitian(rng, d);
    m.diagonal().array() -= m.trace() / static_cast<double>(d);
    return TangentOperator(std::move(m));
}

DensityMatrix random_density(Rng& rng, Eigen::Index d, double min_weight) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(static_cast<std::size_t>(d));
    double total = 0.0;
    for (double& x : w) {
        x = e(rng) + min_weight;
        total += x;
    }
    RealVector p(d);
    for (Eigen::Index i = 0; i < d; ++i) p(i) = w[static_cast<std::size_t>(i)] / total;
    const ComplexMatrix u = random_unitary(rng, d);
    ComplexMatrix rho = hermitize(u * p.cast<Complex>().asDiagonal() * u.adjoint());
    rho /= rho.trace().real();
    return validate_density(rho);
}

}  // namespace qsl
