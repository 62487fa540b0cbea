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

// Shared helpers for the test suites: tolerance checks, random instances and
// reference computations that avoid the library's eigenbasis shortcuts.
#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "qsl/core.hpp"
#include "qsl/random.hpp"

namespace qsl::testing {

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1e-300, std::abs(a), std::abs(b)});
}

inline bool close_scaled(double a, double b, double tol, double scale) {
    return std::abs(a - b) <= tol * std::max(1.0, scale);
}

inline std::vector<double> beta_grid(int n = 21) {
    std::vector<double> out;
    for (int k = 0; k < n; ++k) out.push_back(k == n - 1 ? 1.0 : -1.0 + 2.0 * k / (n - 1));
    return out;
}

// f applied to a Hermitian matrix through its own eigensolver.
template <typename F>
ComplexMatrix matrix_function(const ComplexMatrix& m, F&& f) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(m));
    RealVector v = es.eigenvalues().unaryExpr(f);
    return es.eigenvectors() * v.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// SLD Fisher information from rho L + L rho = 2 rho_dot solved as a Kronecker system.
inline double sld_qfi_lyapunov(const ComplexMatrix& rho, const ComplexMatrix& rdot) {
    const Eigen::Index d = rho.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    // Column-major vec: vec(AXB) = (B^T (x) A) vec(X).
    ComplexMatrix sys(d * d, d * d);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
            for (Eigen::Index c = 0; c < d; ++c)
                for (Eigen::Index e = 0; e < d; ++e)
                    sys(a * d + b, c * d + e) = id(a, c) * rho(b, e) + rho.transpose()(a, c) * id(b, e);
    Eigen::VectorXcd rhs(d * d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) rhs(j * d + i) = 2.0 * rdot(i, j);
    const Eigen::VectorXcd x = sys.fullPivLu().solve(rhs);
    ComplexMatrix l(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) l(i, j) = x(j * d + i);
    return (rdot * l).trace().real();
}

// RLD Fisher information: the harmonic mean inverts to (rho^-1 X + X rho^-1)/2.
inline double rld_qfi_direct(const ComplexMatrix& rho, const ComplexMatrix& rdot) {
    return (rdot * rho.inverse() * rdot).trace().real();
}

// Wigner-Yanase variance: m(x, y) = (x + y + 2 sqrt(xy)) / 4.
inline double wy_variance_direct(const ComplexMatrix& rho, const ComplexMatrix& a) {
    const Eigen::Index d = rho.rows();
    const ComplexMatrix a0 = a - (rho * a).trace() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix s = matrix_function(rho, [](double x) { return std::sqrt(x); });
    return 0.5 * ((rho * a0 * a0).trace().real() + (s * a0 * s * a0).trace().real());
}

// Naive evaluation of the beta family in extended precision.
inline long double f_beta_naive(double beta, double x) {
    const long double b = beta;
    const long double X = x;
    if (X == 1.0L) return 1.0L;
    if (b >= 0.5L) return std::pow((1.0L + std::pow(X, b)) / 2.0L, 1.0L / b);
    if (b == 0.0L) return (X - 1.0L) / std::log(X);
    return b * (1.0L - b) * (X - 1.0L) * (X - 1.0L) / ((std::pow(X, b) - 1.0L) * (std::pow(X, 1.0L - b) - 1.0L));
}

inline ComplexMatrix conjugate(const ComplexMatrix& m, const ComplexMatrix& u) { return u * m * u.adjoint(); }

}  // namespace qsl::testing
