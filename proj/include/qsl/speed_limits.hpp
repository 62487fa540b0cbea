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
 * Speed limits on the observable velocity a_dot = Tr[A rho_dot]:
 *
 *   |a_dot| <= (Delta^f A) sqrt(I^f)                                   (non-split)
 *   |a_dot| <= (Delta^f A_C) sqrt(I^f_C) + (Delta A_I) sqrt(I_I)       (split)
 *   |a_dot| <= sqrt(kappa) (Delta^f A_C)(Delta H) + 2 (Delta A_I)(Delta H_int)
 *
 * plus the coherent ratio xi^f, its minimization over beta, saturation
 * diagnostics and the Hamiltonian that saturates the coherent bound.
 */
#pragma once

#include <array>
#include <functional>
#include <optional>

#include "qsl/core.hpp"
#include "qsl/geometry.hpp"
#include "qsl/monotone.hpp"

namespace qsl {

/// Default beta-grid spacing: 201 points over [-1, 1].
inline constexpr double kDefaultBetaStep = 0.01;
inline constexpr double kSaturationTol = 1e-9;

struct BoundReport {
    double speed = 0.0;           ///< |a_dot|, 1/us
    double bound_nonsplit = 0.0;
    double bound_split = 0.0;
    double coherent_term = 0.0;   ///< (Delta^f A_C) sqrt(I^f_C)
    double incoherent_term = 0.0; ///< (Delta A_I) sqrt(I_I)
    std::optional<double> xi;     ///< empty when the SLD coherent term vanishes
    double saturation_gap = 0.0;  ///< 1 - speed / bound_split, in [0, 1]
    double beta = 1.0;
};

struct EnergyBoundReport {
    double kappa = 1.0;
    double qfi_c = 0.0;                 ///< I^f_C under rho_dot = -i[H, rho]
    double qfi_c_bound_ratio = 0.0;     ///< 4 max(m^SLD / m^f) (Delta H)^2
    double qfi_c_bound_kappa = 0.0;     ///< kappa (Delta H)^2
    double qfi_c_bound_seminorm = 0.0;  ///< kappa ||H||_s^2
    double speed_bound = 0.0;           ///< sqrt(kappa) Delta^f A_C Delta H + 2 Delta A_I Delta H_int
    double legacy_bound = 0.0;          ///< 2 Delta A_C Delta H + 2 Delta A_I Delta H_int
};

struct BetaOptimum {
    double beta_star = -1.0;
    double value = 0.0;
};

/// Tr[A rho_dot], signed.
double observable_speed(const TangentOperator& rdot, const HermitianOperator& a);

double bound_nonsplit(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                      const MeanProvider& f);

BoundReport bound_split(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                        const MonotoneFunction& f);
BoundReport bound_split(const EigenFrame& frame, const MonotoneFunction& f);

/// xi^f = (Delta^f A_C)^2 I^f_C / ((Delta^SLD A_C)^2 I^SLD_C). Throws
/// DegenerateCoherentTerm when the SLD denominator is below 1e-300.
double coherent_ratio_xi(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                         const MonotoneFunction& f);
double coherent_ratio_xi(const EigenFrame& frame, const MonotoneFunction& f);

/// Closed-form xi^f for a qutrit observable with A_02 = A_12 = 0, in terms of
/// v_ij = 2 |rho_dot_ij|^2 in rho's eigenbasis.
double xi_qutrit_closed_form(const std::array<double, 3>& p, double v01, double v02, double v12,
                             const MonotoneFunction& f);

/// Minimizes `objective` over beta in [-1, 1]: a uniform grid including both
/// endpoints, then golden-section refinement to |dbeta| <= 1e-6 inside the
/// best grid bracket. Grid values within 1e-12 (relative) of the minimum tie,
/// and ties go to the smallest beta.
BetaOptimum minimize_over_beta(const std::function<double(double)>& objective, double grid_step = kDefaultBetaStep);

/// argmin_beta xi^{f_beta}; `value` is the minimum ratio.
BetaOptimum optimize_beta(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                          double grid_step = kDefaultBetaStep);
BetaOptimum optimize_beta(const EigenFrame& frame, double grid_step = kDefaultBetaStep);

/// ||A_0 - gamma L^f||_F / ||A_0||_F with the least-squares real gamma. Zero
/// exactly when the Cauchy-Schwarz step behind both bounds is tight for f.
double saturation_residual(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                           const MonotoneFunction& f);

/// H_jk = -(i/gamma) m(p_j, p_k)/(p_j - p_k) A_jk in rho's eigenbasis, with
/// gamma > 0 chosen so that ||H||_s = norm_budget. Driving rho with it
/// saturates the coherent bound.
HermitianOperator fast_hamiltonian(const DensityMatrix& rho, const HermitianOperator& a, const MeanProvider& f,
                                   double norm_budget = 1.0);

/// Bounds in terms of energy variances for rho_dot = -i[H, rho] (plus an
/// optional environment coupling whose joint-state variance (Delta H_int)^2 is
/// passed in). Throws BoundViolation if the internal bound chain fails.
EnergyBoundReport energy_bounds(const DensityMatrix& rho, const HermitianOperator& h, const MonotoneFunction& f,
                                std::optional<double> h_int_variance, const HermitianOperator& a);

}  // namespace qsl
