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

/**
 * @file
 * Dense complex-matrix domain types: Hermitian operators, validated density
 * matrices with a cached spectral decomposition, tangent vectors, and the
 * scalar functionals (expectation, variance, condition number, seminorm)
 * the rest of the library is built on.
 *
 * Units: hbar = 1, time in microseconds, rates in rad/us.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "qsl/error.hpp"

namespace qsl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Smallest eigenvalue a density matrix may have.
inline constexpr double kDefaultPdFloor = 1e-10;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;

/// max_ij |M_ij|.
double max_abs(const ComplexMatrix& m);

/// max_ij |M_ij - conj(M_ji)|.
double hermitian_defect(const ComplexMatrix& m);

/// (M + M^dagger) / 2.
ComplexMatrix hermitize(const ComplexMatrix& m);

/// Eigenvalues sorted descending and unitary eigenvectors in columns; the
/// largest-magnitude component of each column is real positive (lowest index
/// wins ties).
struct SpectralDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    Eigen::Index dim() const { return eigenvalues.size(); }
    ComplexMatrix reconstruct() const;
};

/// Decomposes a Hermitian matrix; only the lower triangle is read.
SpectralDecomposition decompose_hermitian(const ComplexMatrix& m);

/// A matrix validated Hermitian to 1e-12 * max(1, ||M||_max).
class HermitianOperator {
public:
    explicit HermitianOperator(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    ComplexMatrix m_;
};

/// A Hermitian, traceless matrix: a velocity rho_dot in the tangent space of
/// the state manifold. Units 1/us.
class TangentOperator {
public:
    explicit TangentOperator(ComplexMatrix m);
    static TangentOperator zero(Eigen::Index dim);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    ComplexMatrix m_;
};

/// Positive-definite, unit-trace Hermitian matrix together with its spectral
/// decomposition. Only constructible through validate_density().
class DensityMatrix {
public:
    const ComplexMatrix& matrix() const noexcept { return m_; }
    const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }
    const RealVector& eigenvalues() const noexcept { return spectrum_.eigenvalues; }
    const ComplexMatrix& eigenvectors() const noexcept { return spectrum_.eigenvectors; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    friend DensityMatrix validate_density(const ComplexMatrix& m, double pd_floor);
    DensityMatrix(ComplexMatrix m, SpectralDecomposition s)
        : m_(std::move(m)), spectrum_(std::move(s)) {}

    ComplexMatrix m_;
    SpectralDecomposition spectrum_;
};

/// Throws NotHermitian, TraceNotOne or NotPositiveDefinite.
DensityMatrix validate_density(const ComplexMatrix& m, double pd_floor = kDefaultPdFloor);

/// diag(p) in the computational basis.
DensityMatrix diagonal_density(std::span<const double> p, double pd_floor = kDefaultPdFloor);

/// Tr(rho A).
double expectation(const DensityMatrix& rho, const HermitianOperator& a);

/// Tr(rho A^2) - Tr(rho A)^2.
double variance_sld(const DensityMatrix& rho, const HermitianOperator& a);

/// A - Tr(rho A) I.
HermitianOperator center(const DensityMatrix& rho, const HermitianOperator& a);

/// -i [H, rho].
TangentOperator commutator_generator(const DensityMatrix& rho, const HermitianOperator& h);

/// p_max / p_min.
double condition_number(const DensityMatrix& rho);

/// lambda_max - lambda_min.
double seminorm(const HermitianOperator& h);

/// Throws DimensionMismatch naming `what` unless the dimensions agree.
void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what);

// Frequently used operators.
namespace ops {
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
/// |i><j| on a d-dimensional space.
ComplexMatrix basis_op(Eigen::Index d, Eigen::Index i, Eigen::Index j);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
}  // namespace ops

}  // namespace qsl
