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

#include "qsl/core.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace qsl {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::TraceNotOne: return "TraceNotOne";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InvalidDistribution: return "InvalidDistribution";
        case ErrorCode::SingularSuperoperator: return "SingularSuperoperator";
        case ErrorCode::DegenerateCoherentTerm: return "DegenerateCoherentTerm";
        case ErrorCode::ZeroTangent: return "ZeroTangent";
        case ErrorCode::ZeroObservable: return "ZeroObservable";
        case ErrorCode::DegenerateEigenvalues: return "DegenerateEigenvalues";
        case ErrorCode::ZeroObservableCoherence: return "ZeroObservableCoherence";
        case ErrorCode::NegativeTime: return "NegativeTime";
        case ErrorCode::StateValidationDrift: return "StateValidationDrift";
        case ErrorCode::WindowTooShort: return "WindowTooShort";
        case ErrorCode::InvalidInteraction: return "InvalidInteraction";
        case ErrorCode::BoundViolation: return "BoundViolation";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermitian_defect(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint());
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
    return 0.5 * (m + m.adjoint());
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        throw Error(ErrorCode::DimensionMismatch, fmt::format("{}: dimension {} vs {}", what, a, b));
    }
}

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("{}: expected a non-empty square matrix, got {}x{}", what, m.rows(), m.cols()));
    }
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
    require_square(m, what);
    const double defect = hermitian_defect(m);
    const double scale = std::max(1.0, max_abs(m));
    if (!(defect <= kHermitianTol * scale)) {
        throw Error(ErrorCode::NotHermitian,
                    fmt::format("{}: max |M_ij - conj(M_ji)| = {:.3e} exceeds {:.1e}", what, defect,
                                kHermitianTol * scale));
    }
}

}  // namespace

ComplexMatrix SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition decompose_hermitian(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    const Eigen::Index d = m.rows();
    SpectralDecomposition out;
    out.eigenvalues.resize(d);
    out.eigenvectors.resize(d, d);
    // Solver order is ascending.
    for (Eigen::Index k = 0; k < d; ++k) {
        out.eigenvalues(k) = solver.eigenvalues()(d - 1 - k);
        out.eigenvectors.col(k) = solver.eigenvectors().col(d - 1 - k);
    }
    for (Eigen::Index k = 0; k < d; ++k) {
        auto col = out.eigenvectors.col(k);
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < d; ++i) {
            const double a = std::abs(col(i));
            if (a > best) {
                best = a;
                pivot = i;
            }
        }
        const Complex phase = std::conj(col(pivot)) / best;
        col *= phase;
        col(pivot) = Complex(std::abs(col(pivot)), 0.0);
    }
    return out;
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
    require_hermitian(m_, "HermitianOperator");
}

TangentOperator::TangentOperator(ComplexMatrix m) : m_(std::move(m)) {
    require_hermitian(m_, "TangentOperator");
    const double scale = std::max(1.0, max_abs(m_));
    const Complex tr = m_.trace();
    if (!(std::abs(tr) <= kTraceTol * scale)) {
        throw Error(ErrorCode::TraceNotOne,
                    fmt::format("TangentOperator: trace must vanish, got |Tr| = {:.3e}", std::abs(tr)));
    }
}

TangentOperator TangentOperator::zero(Eigen::Index dim) {
    return TangentOperator(ComplexMatrix::Zero(dim, dim));
}

DensityMatrix validate_density(const ComplexMatrix& m, double pd_floor) {
    require_hermitian(m, "DensityMatrix");
    const Complex tr = m.trace();
    if (!(std::abs(tr.real() - 1.0) <= kTraceTol)) {
        throw Error(ErrorCode::TraceNotOne, fmt::format("DensityMatrix: trace = {:.17g}", tr.real()));
    }
    SpectralDecomposition s = decompose_hermitian(m);
    const double p_min = s.eigenvalues(s.dim() - 1);
    if (!(p_min >= pd_floor)) {
        throw Error(ErrorCode::NotPositiveDefinite,
                    fmt::format("DensityMatrix: smallest eigenvalue {:.6e} below floor {:.1e}", p_min, pd_floor));
    }
    return DensityMatrix(m, std::move(s));
}

DensityMatrix diagonal_density(std::span<const double> p, double pd_floor) {
    const auto d = static_cast<Eigen::Index>(p.size());
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) m(i, i) = p[static_cast<std::size_t>(i)];
    return validate_density(m, pd_floor);
}

double expectation(const DensityMatrix& rho, const HermitianOperator& a) {
    require_same_dim(rho.dim(), a.dim(), "expectation");
    // Tr(rho A) = sum_ij rho_ij A_ji
    const Complex value = rho.matrix().cwiseProduct(a.matrix().transpose()).sum();
    const double scale = std::max(1.0, max_abs(a.matrix()));
    if (!(std::abs(value.imag()) <= kHermitianTol * scale)) {
        throw Error(ErrorCode::NotHermitian,
                    fmt::format("expectation: imaginary residue {:.3e}", value.imag()));
    }
    return value.real();
}

double variance_sld(const DensityMatrix& rho, const HermitianOperator& a) {
    const HermitianOperator a0 = center(rho, a);
    // Tr(rho A0^2) with A0 Hermitian: sum_ij rho_ij (A0^2)_ji
    const ComplexMatrix sq = a0.matrix() * a0.matrix();
    const double v = rho.matrix().cwiseProduct(sq.transpose()).sum().real();
    return std::max(0.0, v);
}

HermitianOperator center(const DensityMatrix& rho, const HermitianOperator& a) {
    const double mean = expectation(rho, a);
    ComplexMatrix a0 = a.matrix();
    a0.diagonal().array() -= mean;
    return HermitianOperator(std::move(a0));
}

TangentOperator commutator_generator(const DensityMatrix& rho, const HermitianOperator& h) {
    require_same_dim(rho.dim(), h.dim(), "commutator_generator");
    const ComplexMatrix& r = rho.matrix();
    const ComplexMatrix& hm = h.matrix();
    const ComplexMatrix c = Complex(0.0, -1.0) * (hm * r - r * hm);
    ComplexMatrix out = hermitize(c);
    out.diagonal().array() -= out.trace() / static_cast<double>(out.rows());
    return TangentOperator(std::move(out));
}

double condition_number(const DensityMatrix& rho) {
    const RealVector& p = rho.eigenvalues();
    return p(0) / p(p.size() - 1);
}

double seminorm(const HermitianOperator& h) {
    const RealVector ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
    return std::max(0.0, ev(ev.size() - 1) - ev(0));
}

namespace ops {

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0),
         Complex(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return m;
}

ComplexMatrix basis_op(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
    if (i < 0 || j < 0 || i >= d || j >= d) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("basis_op: index ({}, {}) outside dimension {}", i, j, d));
    }
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace ops

}  // namespace qsl
