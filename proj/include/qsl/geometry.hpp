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
 * Generalized variances and quantum Fisher informations.
 *
 * In the eigenbasis rho = sum_j p_j |j><j|, with m_ij = m(p_i, p_j):
 *
 *   (Delta^f A)^2 = sum_ij |(A_0)_ij|^2 m_ij
 *   I^f           = sum_ij |rho_dot_ij|^2 / m_ij
 *   (L^f)_ij      = rho_dot_ij / m_ij
 *
 * The off-diagonal (i != j) parts are the coherent terms; the diagonal parts
 * reduce to sum_i p_i |(A_0)_ii|^2 and the classical Fisher information of the
 * spectrum, independent of f because m(p, p) = p.
 */
#pragma once

#include <span>

#include "qsl/core.hpp"
#include "qsl/monotone.hpp"

namespace qsl {

struct SplitTerms {
    double coherent = 0.0;
    double incoherent = 0.0;

    double total() const { return coherent + incoherent; }
};

/// V^dagger M V with V the eigenvectors of rho.
ComplexMatrix to_eigenbasis(const DensityMatrix& rho, const ComplexMatrix& m);

/// rho, rho_dot and the centered observable rotated once into rho's eigenbasis.
/// Every scalar in this module is an O(d^2) sum over a frame, so sweeping f
/// over many betas costs one rotation.
class EigenFrame {
public:
    EigenFrame(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a);

    const RealVector& p() const noexcept { return p_; }
    const ComplexMatrix& a0() const noexcept { return a0_; }
    const ComplexMatrix& rdot() const noexcept { return rdot_; }
    Eigen::Index dim() const noexcept { return p_.size(); }

    /// Tr[A rho_dot], signed.
    double speed() const noexcept { return speed_; }

    SplitTerms variance(const MeanProvider& f) const;
    SplitTerms fisher(const MeanProvider& f) const;
    SplitTerms variance(const MeanMatrix& m) const;
    SplitTerms fisher(const MeanMatrix& m) const;

private:
    RealVector p_;
    ComplexMatrix a0_;
    ComplexMatrix rdot_;
    double speed_ = 0.0;
    double var_incoherent_ = 0.0;
    double fisher_incoherent_ = 0.0;
};

/// (Delta^f A)^2 = Tr[A_0 m^f(L_rho, R_rho)(A_0)].
double generalized_variance(const DensityMatrix& rho, const HermitianOperator& a, const MeanProvider& f);

/// {(Delta^f A_C)^2, (Delta A_I)^2}.
SplitTerms split_variance(const DensityMatrix& rho, const HermitianOperator& a, const MeanProvider& f);

/// L^f = m^f(L_rho, R_rho)^{-1}(rho_dot), returned in the input basis.
HermitianOperator log_derivative(const DensityMatrix& rho, const TangentOperator& rdot, const MeanProvider& f);

/// I^f = Tr[rho_dot m^f(L_rho, R_rho)^{-1}(rho_dot)].
double qfi(const DensityMatrix& rho, const TangentOperator& rdot, const MeanProvider& f);

/// {I^f_C, I_I}.
SplitTerms split_qfi(const DensityMatrix& rho, const TangentOperator& rdot, const MeanProvider& f);

/// sum_j pdot_j^2 / p_j. Throws InvalidDistribution unless p > 0, sum p = 1
/// and sum pdot = 0 (1e-10).
double classical_fisher(std::span<const double> p, std::span<const double> pdot);

/// Independent route to I^f for testing: builds the d^2 x d^2 mean
/// superoperator in the computational basis, solves for vec(L^f) and returns
/// Tr[rho_dot L^f]. O(d^6); restricted to d <= 8.
double qfi_superop_oracle(const DensityMatrix& rho, const TangentOperator& rdot, const MonotoneFunction& f);

/// Same construction for (Delta^f A)^2 = vec(A_0)^dagger M vec(A_0).
double variance_superop_oracle(const DensityMatrix& rho, const HermitianOperator& a, const MonotoneFunction& f);

struct GeometryReport {
    double var_f = 0.0;
    double var_f_coherent = 0.0;
    double var_incoherent = 0.0;
    double qfi_f = 0.0;
    double qfi_f_coherent = 0.0;
    double fisher_incoherent = 0.0;
    ComplexMatrix log_derivative;
};

GeometryReport compute_geometry(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                                const MeanProvider& f);

}  // namespace qsl
