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

#include "qsl/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace qsl {

namespace {

double incoherent_variance(const RealVector& p, const ComplexMatrix& a0) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) s += p(i) * std::norm(a0(i, i));
    return s;
}

double incoherent_fisher(const RealVector& p, const ComplexMatrix& rdot) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double pdot = rdot(i, i).real();
        s += pdot * pdot / p(i);
    }
    return s;
}

// Off-diagonal sums; the (i, j) and (j, i) terms are equal for Hermitian input.
template <typename Weight>
double coherent_sum(const ComplexMatrix& m, Weight&& weight) {
    double s = 0.0;
    const Eigen::Index d = m.rows();
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            const double w = 0.5 * (std::norm(m(i, j)) + std::norm(m(j, i)));
            if (w != 0.0) s += 2.0 * w * weight(i, j);
        }
    }
    return s;
}

ComplexMatrix rotated_centered(const DensityMatrix& rho, const HermitianOperator& a) {
    require_same_dim(rho.dim(), a.dim(), "observable");
    ComplexMatrix a0 = to_eigenbasis(rho, a.matrix());
    double mean = 0.0;
    for (Eigen::Index i = 0; i < a0.rows(); ++i) mean += rho.eigenvalues()(i) * a0(i, i).real();
    a0.diagonal().array() -= mean;
    return a0;
}

ComplexMatrix rotated_tangent(const DensityMatrix& rho, const TangentOperator& rdot) {
    require_same_dim(rho.dim(), rdot.dim(), "tangent");
    return to_eigenbasis(rho, rdot.matrix());
}

}  // namespace

ComplexMatrix to_eigenbasis(const DensityMatrix& rho, const ComplexMatrix& m) {
    require_same_dim(rho.dim(), m.rows(), "to_eigenbasis");
    const ComplexMatrix& v = rho.eigenvectors();
    return v.adjoint() * m * v;
}

EigenFrame::EigenFrame(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a)
    : p_(rho.eigenvalues()), a0_(rotated_centered(rho, a)), rdot_(rotated_tangent(rho, rdot)) {
    // Tr[A0 rho_dot] = sum_ij (A0)_ij (rho_dot)_ji
    speed_ = a0_.cwiseProduct(rdot_.transpose()).sum().real();
    var_incoherent_ = incoherent_variance(p_, a0_);
    fisher_incoherent_ = incoherent_fisher(p_, rdot_);
}

SplitTerms EigenFrame::variance(const MeanProvider& f) const {
    const double c = coherent_sum(a0_, [&](Eigen::Index i, Eigen::Index j) { return f.mean(p_(i), p_(j)); });
    return {c, var_incoherent_};
}

SplitTerms EigenFrame::fisher(const MeanProvider& f) const {
    const double c = coherent_sum(rdot_, [&](Eigen::Index i, Eigen::Index j) { return 1.0 / f.mean(p_(i), p_(j)); });
    return {c, fisher_incoherent_};
}

SplitTerms EigenFrame::variance(const MeanMatrix& m) const {
    require_same_dim(dim(), m.dim(), "mean matrix");
    return {coherent_sum(a0_, [&](Eigen::Index i, Eigen::Index j) { return m(i, j); }), var_incoherent_};
}

SplitTerms EigenFrame::fisher(const MeanMatrix& m) const {
    require_same_dim(dim(), m.dim(), "mean matrix");
    return {coherent_sum(rdot_, [&](Eigen::Index i, Eigen::Index j) { return 1.0 / m(i, j); }), fisher_incoherent_};
}

double generalized_variance(const DensityMatrix& rho, const HermitianOperator& a, const MeanProvider& f) {
    return split_variance(rho, a, f).total();
}

SplitTerms split_variance(const DensityMatrix& rho, const HermitianOperator& a, const MeanProvider& f) {
    const ComplexMatrix a0 = rotated_centered(rho, a);
    const RealVector& p = rho.eigenvalues();
    const double c = coherent_sum(a0, [&](Eigen::Index i, Eigen::Index j) { return f.mean(p(i), p(j)); });
    return {c, incoherent_variance(p, a0)};
}

HermitianOperator log_derivative(const DensityMatrix& rho, const TangentOperator& rdot, const MeanProvider& f) {
    const ComplexMatrix r = rotated_tangent(rho, rdot);
    const MeanMatrix m = mean_matrix(f, rho);
    const ComplexMatrix l = r.cwiseQuotient(m.values.cast<Complex>());
    const ComplexMatrix& v = rho.eigenvectors();
    return HermitianOperator(hermitize(v * l * v.adjoint()));
}

double qfi(const DensityMatrix& rho, const TangentOperator& rdot, const MeanProvider& f) {
    return split_qfi(rho, rdot, f).total();
}

SplitTerms split_qfi(const DensityMatrix& rho, const TangentOperator& rdot, const MeanProvider& f) {
    const ComplexMatrix r = rotated_tangent(rho, rdot);
    const RealVector& p = rho.eigenvalues();
    const double c = coherent_sum(r, [&](Eigen::Index i, Eigen::Index j) { return 1.0 / f.mean(p(i), p(j)); });
    return {c, incoherent_fisher(p, r)};
}

double classical_fisher(std::span<const double> p, std::span<const double> pdot) {
    if (p.size() != pdot.size() || p.empty()) {
        throw Error(ErrorCode::InvalidDistribution,
                    fmt::format("classical_fisher: {} probabilities vs {} rates", p.size(), pdot.size()));
    }
    double total = 0.0;
    double rate_sum = 0.0;
    double rate_scale = 1.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (!(p[j] > 0.0)) {
            throw Error(ErrorCode::InvalidDistribution, fmt::format("classical_fisher: p[{}] = {} not positive", j, p[j]));
        }
        total += p[j];
        rate_sum += pdot[j];
        rate_scale = std::max(rate_scale, std::abs(pdot[j]));
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw Error(ErrorCode::InvalidDistribution, fmt::format("classical_fisher: sum p = {:.17g}", total));
    }
    if (std::abs(rate_sum) > 1e-10 * rate_scale) {
        throw Error(ErrorCode::InvalidDistribution, fmt::format("classical_fisher: sum pdot = {:.3e}", rate_sum));
    }
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) s += pdot[j] * pdot[j] / p[j];
    return s;
}

namespace {

constexpr Eigen::Index kOracleMaxDim = 8;

Eigen::VectorXcd vec_row_major(const ComplexMatrix& m) {
    const Eigen::Index d = m.rows();
    Eigen::VectorXcd v(d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = m(i, j);
    return v;
}

// m^f(L_rho, R_rho) = L_rho f(L_rho^{-1} R_rho) on row-major vectorized
// operators, where L_rho = rho (x) I and R_rho = I (x) rho^T. L and R commute,
// so L^{-1} R = rho^{-1} (x) rho^T is Hermitian and f acts on its spectrum.
ComplexMatrix mean_superoperator(const DensityMatrix& rho, const MonotoneFunction& f) {
    const Eigen::Index d = rho.dim();
    if (d > kOracleMaxDim) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("superoperator oracle limited to d <= {}, got {}", kOracleMaxDim, d));
    }
    const ComplexMatrix& r = rho.matrix();
    const ComplexMatrix r_inv = r.partialPivLu().inverse();
    const ComplexMatrix x = hermitize(ops::kron(r_inv, r.transpose()));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x);
    RealVector fx(x.rows());
    for (Eigen::Index k = 0; k < x.rows(); ++k) {
        const double lambda = es.eigenvalues()(k);
        if (!(lambda > 0.0)) {
            throw Error(ErrorCode::SingularSuperoperator, fmt::format("L^-1 R eigenvalue {:.3e} not positive", lambda));
        }
        fx(k) = f(lambda);
    }
    const ComplexMatrix f_of_x = es.eigenvectors() * fx.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    const ComplexMatrix left = ops::kron(r, ComplexMatrix::Identity(d, d));
    return hermitize(left * f_of_x);
}

}  // namespace

double qfi_superop_oracle(const DensityMatrix& rho, const TangentOperator& rdot, const MonotoneFunction& f) {
    require_same_dim(rho.dim(), rdot.dim(), "qfi_superop_oracle");
    const ComplexMatrix mean_op = mean_superoperator(rho, f);
    const Eigen::VectorXcd b = vec_row_major(rdot.matrix());
    if (b.norm() == 0.0) return 0.0;
    Eigen::PartialPivLU<ComplexMatrix> lu(mean_op);
    const Eigen::VectorXcd l = lu.solve(b);
    const double residual = (mean_op * l - b).norm() / b.norm();
    if (!std::isfinite(residual) || residual > 1e-8) {
        throw Error(ErrorCode::SingularSuperoperator, fmt::format("mean superoperator solve residual {:.3e}", residual));
    }
    return b.dot(l).real();  // dot() conjugates the first argument
}

double variance_superop_oracle(const DensityMatrix& rho, const HermitianOperator& a, const MonotoneFunction& f) {
    require_same_dim(rho.dim(), a.dim(), "variance_superop_oracle");
    const ComplexMatrix mean_op = mean_superoperator(rho, f);
    const Eigen::VectorXcd a0 = vec_row_major(center(rho, a).matrix());
    return a0.dot(mean_op * a0).real();
}

GeometryReport compute_geometry(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                                const MeanProvider& f) {
    const EigenFrame frame(rho, rdot, a);
    const MeanMatrix m = mean_matrix(f, rho);
    const SplitTerms var = frame.variance(m);
    const SplitTerms fisher = frame.fisher(m);

    GeometryReport out;
    out.var_f_coherent = var.coherent;
    out.var_incoherent = var.incoherent;
    out.var_f = var.total();
    out.qfi_f_coherent = fisher.coherent;
    out.fisher_incoherent = fisher.incoherent;
    out.qfi_f = fisher.total();
    const ComplexMatrix l = frame.rdot().cwiseQuotient(m.values.cast<Complex>());
    const ComplexMatrix& v = rho.eigenvectors();
    out.log_derivative = hermitize(v * l * v.adjoint());
    return out;
}

}  // namespace qsl
