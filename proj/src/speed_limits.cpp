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

#include "qsl/speed_limits.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace qsl {

namespace {

constexpr double kDegenerateProduct = 1e-300;
constexpr double kTieTol = 1e-12;
constexpr double kGoldenTol = 1e-6;
constexpr double kChainSlack = 1e-9;

double coherent_product(const EigenFrame& frame, const MeanProvider& f) {
    return frame.variance(f).coherent * frame.fisher(f).coherent;
}

bool within(double lhs, double rhs) {
    return lhs <= rhs + kChainSlack * std::max(1.0, std::abs(rhs));
}

}  // namespace

double observable_speed(const TangentOperator& rdot, const HermitianOperator& a) {
    require_same_dim(rdot.dim(), a.dim(), "observable_speed");
    return a.matrix().cwiseProduct(rdot.matrix().transpose()).sum().real();
}

double bound_nonsplit(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                      const MeanProvider& f) {
    const EigenFrame frame(rho, rdot, a);
    return std::sqrt(frame.variance(f).total()) * std::sqrt(frame.fisher(f).total());
}

BoundReport bound_split(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                        const MonotoneFunction& f) {
    return bound_split(EigenFrame(rho, rdot, a), f);
}

BoundReport bound_split(const EigenFrame& frame, const MonotoneFunction& f) {
    const SplitTerms var = frame.variance(f);
    const SplitTerms fisher = frame.fisher(f);

    BoundReport r;
    r.beta = f.beta();
    r.speed = std::abs(frame.speed());
    r.coherent_term = std::sqrt(var.coherent) * std::sqrt(fisher.coherent);
    r.incoherent_term = std::sqrt(var.incoherent) * std::sqrt(fisher.incoherent);
    r.bound_split = r.coherent_term + r.incoherent_term;
    r.bound_nonsplit = std::sqrt(var.total()) * std::sqrt(fisher.total());
    r.saturation_gap = r.bound_split > 0.0 ? std::clamp(1.0 - r.speed / r.bound_split, 0.0, 1.0) : 0.0;

    const double sld = f.beta() == 1.0 ? var.coherent * fisher.coherent
                                       : coherent_product(frame, MonotoneFunction::sld());
    if (sld >= kDegenerateProduct) r.xi = (var.coherent * fisher.coherent) / sld;
    return r;
}

double coherent_ratio_xi(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                         const MonotoneFunction& f) {
    return coherent_ratio_xi(EigenFrame(rho, rdot, a), f);
}

double coherent_ratio_xi(const EigenFrame& frame, const MonotoneFunction& f) {
    const double sld = coherent_product(frame, MonotoneFunction::sld());
    if (!(sld >= kDegenerateProduct)) {
        throw Error(ErrorCode::DegenerateCoherentTerm,
                    fmt::format("SLD coherent product (Delta A_C)^2 I_C = {:.3e} is degenerate", sld));
    }
    if (f.beta() == 1.0) return 1.0;
    return coherent_product(frame, f) / sld;
}

double xi_qutrit_closed_form(const std::array<double, 3>& p, double v01, double v02, double v12,
                             const MonotoneFunction& f) {
    double total = 0.0;
    for (double pj : p) {
        if (!(pj > 0.0)) throw Error(ErrorCode::InvalidDistribution, fmt::format("p_j = {} not positive", pj));
        total += pj;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw Error(ErrorCode::InvalidDistribution, fmt::format("sum p = {:.17g}", total));
    }
    if (!(v01 >= 0.0 && v02 >= 0.0 && v12 >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "v_ij must be non-negative");
    }
    const auto weighted = [&](const MeanProvider& g) {
        const double m01 = g.mean(p[0], p[1]);
        return v01 + v02 * (m01 / g.mean(p[0], p[2])) + v12 * (m01 / g.mean(p[1], p[2]));
    };
    const double den = weighted(MonotoneFunction::sld());
    if (!(den > 0.0)) throw Error(ErrorCode::DegenerateCoherentTerm, "closed-form denominator vanishes");
    return weighted(f) / den;
}

BetaOptimum minimize_over_beta(const std::function<double(double)>& objective, double grid_step) {
    if (!(grid_step > 0.0 && grid_step <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("grid_step = {} outside (0, 1]", grid_step));
    }
    const auto n = static_cast<int>(std::ceil(2.0 / grid_step - 1e-9));
    const auto beta_at = [n](int k) { return k == n ? 1.0 : -1.0 + 2.0 * k / n; };

    std::vector<double> values(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) values[static_cast<std::size_t>(k)] = objective(beta_at(k));

    const double vmin = *std::min_element(values.begin(), values.end());
    int best = 0;
    while (values[static_cast<std::size_t>(best)] > vmin + kTieTol * std::abs(vmin)) ++best;
    BetaOptimum out{beta_at(best), values[static_cast<std::size_t>(best)]};

    // Golden-section search on the bracket around the best grid point.
    double lo = beta_at(std::max(best - 1, 0));
    double hi = beta_at(std::min(best + 1, n));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > kGoldenTol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        }
    }
    const double xr = f1 <= f2 ? x1 : x2;
    const double fr = std::min(f1, f2);
    if (fr < out.value - kTieTol * std::abs(out.value)) out = {xr, fr};
    return out;
}

BetaOptimum optimize_beta(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                          double grid_step) {
    return optimize_beta(EigenFrame(rho, rdot, a), grid_step);
}

BetaOptimum optimize_beta(const EigenFrame& frame, double grid_step) {
    const double sld = coherent_product(frame, MonotoneFunction::sld());
    if (!(sld >= kDegenerateProduct)) {
        throw Error(ErrorCode::DegenerateCoherentTerm,
                    fmt::format("SLD coherent product (Delta A_C)^2 I_C = {:.3e} is degenerate", sld));
    }
    return minimize_over_beta(
        [&](double beta) {
            if (beta == 1.0) return 1.0;
            return coherent_product(frame, MonotoneFunction(beta)) / sld;
        },
        grid_step);
}

double saturation_residual(const DensityMatrix& rho, const TangentOperator& rdot, const HermitianOperator& a,
                           const MonotoneFunction& f) {
    const ComplexMatrix a0 = center(rho, a).matrix();
    const ComplexMatrix l = log_derivative(rho, rdot, f).matrix();
    const double a_norm = a0.norm();
    const double l_norm = l.norm();
    if (!(l_norm > 1e-14)) throw Error(ErrorCode::ZeroTangent, "saturation_residual needs rho_dot != 0");
    if (!(a_norm > 1e-14)) throw Error(ErrorCode::ZeroObservable, "saturation_residual needs A_0 != 0");
    // Re <L, A0>_F / ||L||^2
    const double gamma = l.cwiseProduct(a0.conjugate()).sum().real() / (l_norm * l_norm);
    return (a0 - gamma * l).norm() / a_norm;
}

HermitianOperator fast_hamiltonian(const DensityMatrix& rho, const HermitianOperator& a, const MeanProvider& f,
                                   double norm_budget) {
    require_same_dim(rho.dim(), a.dim(), "fast_hamiltonian");
    if (!(norm_budget > 0.0) || !std::isfinite(norm_budget)) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("norm_budget = {} must be positive", norm_budget));
    }
    const RealVector& p = rho.eigenvalues();
    const ComplexMatrix ae = to_eigenbasis(rho, a.matrix());
    const Eigen::Index d = p.size();

    ComplexMatrix he = ComplexMatrix::Zero(d, d);
    bool coherent = false;
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) {
            if (j == k || std::abs(ae(j, k)) <= 1e-12) continue;
            coherent = true;
            const double gap = p(j) - p(k);
            if (std::abs(gap) <= 1e-8 * std::max(p(j), p(k))) {
                throw Error(ErrorCode::DegenerateEigenvalues,
                            fmt::format("p_{} = p_{} = {:.12g} with A_{}{} != 0", j, k, p(j), j, k));
            }
            he(j, k) = Complex(0.0, -1.0) * (f.mean(p(j), p(k)) / gap) * ae(j, k);
        }
    }
    if (!coherent) throw Error(ErrorCode::ZeroObservableCoherence, "A has no coherent part in rho's eigenbasis");

    const ComplexMatrix& v = rho.eigenvectors();
    ComplexMatrix h = hermitize(v * he * v.adjoint());
    const double s = seminorm(HermitianOperator(h));
    h *= norm_budget / s;
    return HermitianOperator(hermitize(h));
}

EnergyBoundReport energy_bounds(const DensityMatrix& rho, const HermitianOperator& h, const MonotoneFunction& f,
                                std::optional<double> h_int_variance, const HermitianOperator& a) {
    require_same_dim(rho.dim(), h.dim(), "energy_bounds");
    if (h_int_variance && !(*h_int_variance >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "interaction variance must be non-negative");
    }
    const TangentOperator rdot = commutator_generator(rho, h);
    const EigenFrame frame(rho, rdot, a);
    const RealVector& p = rho.eigenvalues();
    const MonotoneFunction sld = MonotoneFunction::sld();

    double ratio_max = 1.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
        for (Eigen::Index j = i + 1; j < p.size(); ++j)
            ratio_max = std::max(ratio_max, sld.mean(p(i), p(j)) / f.mean(p(i), p(j)));

    const double var_h = variance_sld(rho, h);
    const double dh = std::sqrt(var_h);
    const double h_semi = seminorm(h);

    EnergyBoundReport r;
    r.kappa = condition_number(rho);
    r.qfi_c = frame.fisher(f).coherent;
    r.qfi_c_bound_ratio = 4.0 * ratio_max * var_h;
    r.qfi_c_bound_kappa = r.kappa * var_h;
    r.qfi_c_bound_seminorm = r.kappa * h_semi * h_semi;

    const SplitTerms var_f = frame.variance(f);
    const SplitTerms var_sld = frame.variance(sld);
    const double dh_int = h_int_variance ? std::sqrt(*h_int_variance) : 0.0;
    const double incoherent = 2.0 * std::sqrt(var_f.incoherent) * dh_int;
    r.speed_bound = std::sqrt(r.kappa) * std::sqrt(var_f.coherent) * dh + incoherent;
    r.legacy_bound = 2.0 * std::sqrt(var_sld.coherent) * dh + incoherent;

    const double kappa_factor = (1.0 + r.kappa) * (1.0 + r.kappa) / (r.kappa * r.kappa);
    const bool chain = within(r.qfi_c, r.qfi_c_bound_ratio) && within(r.qfi_c, r.qfi_c_bound_kappa) &&
                       within(r.qfi_c_bound_ratio, r.qfi_c_bound_kappa * kappa_factor) &&
                       within(r.qfi_c_bound_kappa, 0.25 * r.qfi_c_bound_seminorm);
    if (!chain) {
        throw Error(ErrorCode::BoundViolation,
                    fmt::format("energy bound chain violated: I_C = {:.6e}, ratio = {:.6e}, kappa = {:.6e}, "
                                "seminorm = {:.6e}",
                                r.qfi_c, r.qfi_c_bound_ratio, r.qfi_c_bound_kappa, r.qfi_c_bound_seminorm));
    }
    return r;
}

}  // namespace qsl
