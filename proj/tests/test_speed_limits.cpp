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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "qsl/dynamics.hpp"
#include "qsl/speed_limits.hpp"
#include "support.hpp"

using namespace qsl;
using namespace qsl::testing;

namespace {

const double kOmega = 2.0 * 3.141592653589793 * 10.0;

DensityMatrix diag_rho(std::vector<double> p) { return diagonal_density(p); }

ComplexMatrix ladder() {
    const Complex i(0.0, 1.0);
    ComplexMatrix h = i * (kOmega / 2.0) * (ops::basis_op(3, 0, 1) + ops::basis_op(3, 1, 2));
    return h + h.adjoint();
}

ComplexMatrix xge() { return ops::basis_op(3, 0, 1) + ops::basis_op(3, 1, 0); }

ComplexMatrix chain_observable() {
    const ComplexMatrix a = ops::basis_op(3, 0, 1) + ops::basis_op(3, 1, 2);
    return a + a.adjoint();
}

// Independent evaluation of the displayed RLD closed form for the ladder example.
double xi_rld_displayed(double p0, double p1, double p2) {
    const double a = (p1 - p0) * (p1 - p0);
    const double b = (p2 - p1) * (p2 - p1);
    return (p1 + p2) / (p2 * (p0 + p1)) * (a * (p0 + p1) * p2 + b * p0 * (p1 + p2)) / (a * (p1 + p2) + b * (p0 + p1));
}

ErrorCode code_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

struct TwoQubit {
    HermitianOperator h{ops::kron(ops::pauli_x(), ops::pauli_x())};
    HermitianOperator a{ops::kron(ops::pauli_y(), ops::pauli_x()) - 0.5 * ops::kron(ops::pauli_x(), ops::pauli_y())};
};

}  // namespace

TEST_CASE("observable speed examples") {
    Rng rng(1);
    const DensityMatrix rho = random_density(rng, 3);
    CHECK(observable_speed(TangentOperator::zero(3), HermitianOperator(random_hermitian(rng, 3))) == 0.0);
    CHECK(std::abs(observable_speed(random_tangent(rng, 3), HermitianOperator(ComplexMatrix::Identity(3, 3)))) < 1e-14);

    const double omega = 2.0;
    const DensityMatrix q = diag_rho({0.7, 0.3});
    const TangentOperator rdot = commutator_generator(q, HermitianOperator(ComplexMatrix(0.5 * omega * ops::pauli_y())));
    CHECK(observable_speed(rdot, HermitianOperator(ops::pauli_x())) == doctest::Approx(0.4 * omega).epsilon(1e-14));
}

TEST_CASE("bounds hold on random triples across beta") {
    Rng rng(2);
    for (int k = 0; k < 100; ++k) {
        const Eigen::Index d = 2 + k % 4;
        const DensityMatrix rho = random_density(rng, d);
        const TangentOperator rdot = k % 2 ? random_tangent(rng, d) : commutator_generator(rho, HermitianOperator(random_hermitian(rng, d)));
        const HermitianOperator a(random_hermitian(rng, d));
        const EigenFrame frame(rho, rdot, a);
        for (double b : beta_grid(21)) {
            const MonotoneFunction f(b);
            const BoundReport r = bound_split(frame, f);
            CHECK(r.speed <= r.bound_split * (1.0 + 1e-9));
            CHECK(r.bound_split <= r.bound_nonsplit * (1.0 + 1e-9));
            CHECK(rel_close(r.bound_nonsplit, bound_nonsplit(rho, rdot, a, f), 1e-12));
            CHECK(r.saturation_gap >= 0.0);
            CHECK(r.saturation_gap <= 1.0);
            CHECK(rel_close(r.saturation_gap, 1.0 - r.speed / r.bound_split, 1e-9));
        }
    }
}

TEST_CASE("SLD bounds coincide with the usual variance form") {
    Rng rng(3);
    const DensityMatrix rho = random_density(rng, 4);
    const TangentOperator rdot = random_tangent(rng, 4);
    const HermitianOperator a(random_hermitian(rng, 4));
    const double want = std::sqrt(variance_sld(rho, a)) * std::sqrt(sld_qfi_lyapunov(rho.matrix(), rdot.matrix()));
    CHECK(rel_close(bound_nonsplit(rho, rdot, a, MonotoneFunction::sld()), want, 1e-9));
    CHECK(bound_nonsplit(rho, TangentOperator::zero(4), a, MonotoneFunction::sld()) == 0.0);
}

TEST_CASE("fully incoherent and fully coherent problems") {
    const DensityMatrix rho = diag_rho({0.5, 0.3, 0.2});
    const ComplexMatrix pdot = RealVector((RealVector(3) << -0.2, 0.15, 0.05).finished()).cast<Complex>().asDiagonal();
    const HermitianOperator diag_a(ComplexMatrix(RealVector((RealVector(3) << 1.0, -0.5, 2.0).finished()).cast<Complex>().asDiagonal()));
    const BoundReport inc = bound_split(rho, TangentOperator(pdot), diag_a, MonotoneFunction(-0.3));
    CHECK(inc.coherent_term == 0.0);
    CHECK(rel_close(inc.bound_split, inc.bound_nonsplit, 1e-12));
    CHECK(rel_close(inc.bound_split, inc.incoherent_term, 1e-15));

    const TangentOperator unitary = commutator_generator(rho, HermitianOperator(ladder()));
    const BoundReport coh = bound_split(rho, unitary, HermitianOperator(xge()), MonotoneFunction(0.4));
    CHECK(coh.incoherent_term == 0.0);
    CHECK(coh.bound_split == coh.coherent_term);
}

TEST_CASE("split equals non-split exactly at the equality condition") {
    Rng rng(4);
    const DensityMatrix rho = diag_rho({0.45, 0.35, 0.2});
    ComplexMatrix r = random_tangent(rng, 3).matrix();
    const TangentOperator rdot(r);
    const ComplexMatrix a_c = chain_observable();
    const ComplexMatrix a_i = RealVector((RealVector(3) << 1.0, -2.0, 0.5).finished()).cast<Complex>().asDiagonal();
    const MonotoneFunction f(-0.6);

    const BoundReport unit = bound_split(rho, rdot, HermitianOperator(ComplexMatrix(a_c + a_i)), f);
    const SplitTerms var_c = EigenFrame(rho, rdot, HermitianOperator(a_c)).variance(f);
    const SplitTerms fisher = EigenFrame(rho, rdot, HermitianOperator(a_c)).fisher(f);
    const double dai = std::sqrt(EigenFrame(rho, rdot, HermitianOperator(a_i)).variance(f).incoherent);
    // Scale A_I so that (Delta^f A_C) sqrt(I_I) = s (Delta A_I) sqrt(I^f_C).
    const double s = std::sqrt(var_c.coherent) * std::sqrt(fisher.incoherent) / (dai * std::sqrt(fisher.coherent));

    const BoundReport tight = bound_split(rho, rdot, HermitianOperator(ComplexMatrix(a_c + s * a_i)), f);
    CHECK(rel_close(tight.bound_split, tight.bound_nonsplit, 1e-9));
    const BoundReport loose = bound_split(rho, rdot, HermitianOperator(ComplexMatrix(a_c + 2.0 * s * a_i)), f);
    CHECK(loose.bound_split < loose.bound_nonsplit * (1.0 - 1e-4));
    CHECK(unit.bound_split <= unit.bound_nonsplit);
}

TEST_CASE("coherent ratio: SLD is one, qutrit closed forms agree") {
    Rng rng(5);
    const DensityMatrix any = random_density(rng, 3);
    const TangentOperator rdot = random_tangent(rng, 3);
    CHECK(coherent_ratio_xi(any, rdot, HermitianOperator(random_hermitian(rng, 3)), MonotoneFunction::sld()) == 1.0);

    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> p{u(rng), u(rng), u(rng)};
        const double total = p[0] + p[1] + p[2];
        for (double& x : p) x /= total;
        const DensityMatrix rho = diagonal_density(p);
        const ComplexMatrix r = commutator_generator(rho, HermitianOperator(ladder())).matrix();
        const double v01 = 2.0 * std::norm(r(0, 1));
        const double v02 = 2.0 * std::norm(r(0, 2));
        const double v12 = 2.0 * std::norm(r(1, 2));
        CHECK(v02 == 0.0);
        CHECK(rel_close(v01, 0.5 * kOmega * kOmega * (p[1] - p[0]) * (p[1] - p[0]), 1e-12));
        const std::array<double, 3> pa{p[0], p[1], p[2]};
        for (double b : beta_grid(11)) {
            const MonotoneFunction f(b);
            CHECK(rel_close(coherent_ratio_xi(rho, TangentOperator(r), HermitianOperator(xge()), f),
                            xi_qutrit_closed_form(pa, v01, v02, v12, f), 1e-10));
        }
        CHECK(rel_close(xi_qutrit_closed_form(pa, v01, v02, v12, MonotoneFunction::rld()),
                        xi_rld_displayed(p[0], p[1], p[2]), 1e-10));
    }
}

TEST_CASE("closed form edge cases") {
    const std::array<double, 3> p{0.2, 0.3, 0.5};
    for (double b : beta_grid(7)) CHECK(xi_qutrit_closed_form(p, 1.3, 0.0, 0.0, MonotoneFunction(b)) == doctest::Approx(1.0));
    const std::array<double, 3> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
    for (double b : beta_grid(7)) CHECK(xi_qutrit_closed_form(uniform, 0.4, 0.2, 0.7, MonotoneFunction(b)) == doctest::Approx(1.0));
    CHECK(code_of([] { xi_qutrit_closed_form({0.5, 0.6, 0.1}, 1.0, 0.0, 0.0, MonotoneFunction::rld()); }) ==
          ErrorCode::InvalidDistribution);
    CHECK(code_of([] { xi_qutrit_closed_form({0.5, 0.5, 0.0}, 1.0, 0.0, 0.0, MonotoneFunction::rld()); }) ==
          ErrorCode::InvalidDistribution);
    CHECK(code_of([&] { xi_qutrit_closed_form(p, 0.0, 0.0, 0.0, MonotoneFunction::rld()); }) ==
          ErrorCode::DegenerateCoherentTerm);
}

TEST_CASE("corner states: the RLD ratio scales as 2 eps") {
    // Leading order of the displayed closed form is 2 eps, not eps.
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const std::vector<double> p{eps * eps * eps, eps, 1.0 - eps - eps * eps * eps};
        const DensityMatrix rho = diagonal_density(p, 1e-14);
        const double xi = coherent_ratio_xi(rho, commutator_generator(rho, HermitianOperator(ladder())), HermitianOperator(xge()),
                                            MonotoneFunction::rld());
        CHECK(rel_close(xi, xi_rld_displayed(p[0], p[1], p[2]), 1e-9));
        CHECK(std::abs(xi / (2.0 * eps) - 1.0) <= 10.0 * eps);
    }
}

TEST_CASE("degenerate coherent term is an error") {
    const DensityMatrix rho = diag_rho({0.5, 0.3, 0.2});
    CHECK(code_of([&] { coherent_ratio_xi(rho, TangentOperator::zero(3), HermitianOperator(xge()), MonotoneFunction::rld()); }) ==
          ErrorCode::DegenerateCoherentTerm);
    const BoundReport r = bound_split(rho, TangentOperator::zero(3), HermitianOperator(xge()), MonotoneFunction::rld());
    CHECK_FALSE(r.xi.has_value());
}

TEST_CASE("minimize_over_beta") {
    const BetaOptimum quad = minimize_over_beta([](double b) { return (b - 0.3137) * (b - 0.3137) + 2.0; });
    CHECK(std::abs(quad.beta_star - 0.3137) <= 1e-6);
    CHECK(quad.value == doctest::Approx(2.0).epsilon(1e-12));

    const BetaOptimum flat = minimize_over_beta([](double) { return 1.0; });
    CHECK(flat.beta_star == -1.0);
    CHECK(flat.value == 1.0);

    const BetaOptimum right = minimize_over_beta([](double b) { return -b; });
    CHECK(right.beta_star == 1.0);

    // Two wells: the grid picks the deeper one even though the other is wider.
    const BetaOptimum wells = minimize_over_beta(
        [](double b) { return std::min(0.5 * (b + 0.6) * (b + 0.6), 50.0 * (b - 0.7) * (b - 0.7) - 0.1); }, 0.01);
    CHECK(std::abs(wells.beta_star - 0.7) <= 1e-6);

    CHECK_THROWS_AS(minimize_over_beta([](double) { return 0.0; }, 0.0), Error);
    CHECK_THROWS_AS(minimize_over_beta([](double) { return 0.0; }, 1.5), Error);
}

TEST_CASE("optimize_beta: qubits tie at one, corner states prefer RLD") {
    Rng rng(6);
    for (int k = 0; k < 20; ++k) {
        const DensityMatrix rho = random_density(rng, 2);
        const TangentOperator rdot = random_tangent(rng, 2);
        const HermitianOperator a(random_hermitian(rng, 2));
        for (double b : beta_grid(21)) CHECK(rel_close(coherent_ratio_xi(rho, rdot, a, MonotoneFunction(b)), 1.0, 1e-10));
        const BetaOptimum opt = optimize_beta(rho, rdot, a);
        CHECK(opt.beta_star == -1.0);
        CHECK(rel_close(opt.value, 1.0, 1e-10));
    }
    const std::vector<double> p{1e-6, 1e-2, 1.0 - 1e-2 - 1e-6};
    const DensityMatrix rho = diagonal_density(p);
    const BetaOptimum opt = optimize_beta(rho, commutator_generator(rho, HermitianOperator(ladder())), HermitianOperator(xge()));
    CHECK(opt.beta_star == -1.0);
    CHECK(opt.value < 0.05);
}

TEST_CASE("optimize_beta finds interior optima on the landscape example") {
    const Complex c(0.0, -2.0 * 3.141592653589793 * 2.5);
    const ComplexMatrix t = ops::basis_op(3, 0, 1) + 4.0 * ops::basis_op(3, 1, 2) + ops::basis_op(3, 0, 2);
    const HermitianOperator h(ComplexMatrix(c * t + (c * t).adjoint()));
    int interior = 0;
    for (double p1 = 0.0025; p1 < 1.0 - 0.0375 - 0.0025; p1 += 0.01) {
        const std::vector<double> p{0.0375, p1, 1.0 - 0.0375 - p1};
        const DensityMatrix rho = diagonal_density(p);
        const EigenFrame frame(rho, commutator_generator(rho, h), HermitianOperator(xge()));
        const BetaOptimum opt = optimize_beta(frame);
        for (double anchor : {-1.0, 0.0, 0.5, 1.0}) CHECK(opt.value <= coherent_ratio_xi(frame, MonotoneFunction(anchor)) * (1.0 + 1e-12));
        if (opt.beta_star > -1.0 + 1e-6 && opt.beta_star < 1.0 - 1e-6) ++interior;
    }
    CHECK(interior > 5);
}

TEST_CASE("saturation: two-qubit SLD and RLD instances") {
    const TwoQubit m;
    {
        const DensityMatrix rho = diag_rho({0.3, 0.4, 0.1, 0.2});
        const TangentOperator rdot = commutator_generator(rho, m.h);
        CHECK(saturation_residual(rho, rdot, m.a, MonotoneFunction::sld()) <= 1e-9);
        const BoundReport r = bound_split(rho, rdot, m.a, MonotoneFunction::sld());
        CHECK(r.bound_split / r.speed >= 1.0 - 1e-12);
        CHECK(r.bound_split / r.speed <= 1.0 + 1e-9);
    }
    {
        const double s = std::sqrt(89.0);
        const DensityMatrix rho = diag_rho({(s - 3.0) / 20.0, 0.4, 0.1, (13.0 - s) / 20.0});
        const TangentOperator rdot = commutator_generator(rho, m.h);
        CHECK(saturation_residual(rho, rdot, m.a, MonotoneFunction::rld()) <= 1e-9);
        CHECK(saturation_residual(rho, rdot, m.a, MonotoneFunction::sld()) > 1e-2);
        const BoundReport r = bound_split(rho, rdot, m.a, MonotoneFunction::rld());
        CHECK(r.bound_split / r.speed <= 1.0 + 1e-9);
    }
}

TEST_CASE("saturation residual of A = L^f is zero; zero inputs are errors") {
    Rng rng(7);
    const DensityMatrix rho = random_density(rng, 3);
    const TangentOperator rdot = random_tangent(rng, 3);
    const MonotoneFunction f(0.25);
    const HermitianOperator l = log_derivative(rho, rdot, f);
    CHECK(saturation_residual(rho, rdot, l, f) <= 1e-12);
    CHECK(code_of([&] { saturation_residual(rho, TangentOperator::zero(3), l, f); }) == ErrorCode::ZeroTangent);
    CHECK(code_of([&] { saturation_residual(rho, rdot, HermitianOperator(ComplexMatrix::Identity(3, 3)), f); }) ==
          ErrorCode::ZeroObservable);
}

TEST_CASE("fast Hamiltonian saturates the coherent bound") {
    Rng rng(8);
    std::uniform_real_distribution<double> u(0.02, 1.0);
    const HermitianOperator a(chain_observable());
    for (int k = 0; k < 20; ++k) {
        std::vector<double> p{u(rng), u(rng), u(rng)};
        const double total = p[0] + p[1] + p[2];
        for (double& x : p) x /= total;
        const DensityMatrix rho = diagonal_density(p);
        for (double b : beta_grid(21)) {
            const MonotoneFunction f(b);
            const double budget = 0.5 + k;
            const HermitianOperator h = fast_hamiltonian(rho, a, f, budget);
            CHECK(hermitian_defect(h.matrix()) <= 1e-12 * std::max(1.0, max_abs(h.matrix())));
            CHECK(rel_close(seminorm(h), budget, 1e-12));
            const BoundReport r = bound_split(rho, commutator_generator(rho, h), a, f);
            CHECK(rel_close(r.speed, r.coherent_term, 1e-9));
            CHECK(rel_close(r.speed, r.bound_split, 1e-9));
        }
    }
}

TEST_CASE("fast Hamiltonian preconditions") {
    const HermitianOperator a(chain_observable());
    CHECK(code_of([&] { fast_hamiltonian(diag_rho({0.4, 0.4, 0.2}), a, MonotoneFunction::sld()); }) ==
          ErrorCode::DegenerateEigenvalues);
    const HermitianOperator diag_a(ComplexMatrix(RealVector::LinSpaced(3, 0, 2).cast<Complex>().asDiagonal()));
    CHECK(code_of([&] { fast_hamiltonian(diag_rho({0.5, 0.3, 0.2}), diag_a, MonotoneFunction::sld()); }) ==
          ErrorCode::ZeroObservableCoherence);
    CHECK(code_of([&] { fast_hamiltonian(diag_rho({0.5, 0.3, 0.2}), a, MonotoneFunction::sld(), 0.0); }) ==
          ErrorCode::InvalidArgument);
    // Degenerate pair outside the support of A is fine.
    const HermitianOperator a01(ComplexMatrix(ops::basis_op(3, 0, 1) + ops::basis_op(3, 1, 0)));
    CHECK_NOTHROW(fast_hamiltonian(diag_rho({0.5, 0.25, 0.25}), a01, MonotoneFunction::rld()));
}

TEST_CASE("energy bounds: chain and examples") {
    Rng rng(9);
    for (int k = 0; k < 100; ++k) {
        const Eigen::Index d = 2 + k % 4;
        const DensityMatrix rho = random_density(rng, d, 0.05);
        const HermitianOperator h(random_hermitian(rng, d));
        const HermitianOperator a(random_hermitian(rng, d));
        for (double b : beta_grid(9)) {
            const EnergyBoundReport r = energy_bounds(rho, h, MonotoneFunction(b), std::nullopt, a);
            const double slack = 1e-9;
            CHECK(r.qfi_c <= r.qfi_c_bound_ratio * (1.0 + slack));
            CHECK(r.qfi_c <= r.qfi_c_bound_kappa * (1.0 + slack));
            CHECK(r.qfi_c_bound_kappa <= 0.25 * r.qfi_c_bound_seminorm * (1.0 + slack));
            CHECK(r.qfi_c_bound_ratio <= r.qfi_c_bound_kappa * std::pow(1.0 + r.kappa, 2) / (r.kappa * r.kappa) * (1.0 + slack));
            const BoundReport br = bound_split(rho, commutator_generator(rho, h), a, MonotoneFunction(b));
            CHECK(br.speed <= r.speed_bound * (1.0 + slack));
        }
    }

    const DensityMatrix mixed = validate_density(ComplexMatrix::Identity(3, 3) / 3.0);
    const EnergyBoundReport m = energy_bounds(mixed, HermitianOperator(ladder()), MonotoneFunction::rld(), std::nullopt,
                                              HermitianOperator(xge()));
    CHECK(m.kappa == doctest::Approx(1.0));
    CHECK(m.qfi_c == doctest::Approx(0.0));

    const DensityMatrix thermal = diag_rho({0.4, 0.35, 0.25});
    const EnergyBoundReport t = energy_bounds(thermal, HermitianOperator(random_hermitian(rng, 3)), MonotoneFunction::sld(),
                                              std::nullopt, HermitianOperator(random_hermitian(rng, 3)));
    CHECK(t.speed_bound < t.legacy_bound);
    CHECK(rel_close(t.speed_bound / t.legacy_bound, std::sqrt(t.kappa) / 2.0, 1e-12));

    CHECK(code_of([&] {
              energy_bounds(thermal, HermitianOperator(ladder()), MonotoneFunction::sld(), -1.0, HermitianOperator(xge()));
          }) == ErrorCode::InvalidArgument);
}

TEST_CASE("energy bounds include the interaction term") {
    const DensityMatrix rho = diag_rho({0.5, 0.3, 0.2});
    const HermitianOperator a(ComplexMatrix(xge() + ComplexMatrix(RealVector::LinSpaced(3, 0, 2).cast<Complex>().asDiagonal())));
    const EnergyBoundReport closed = energy_bounds(rho, HermitianOperator(ladder()), MonotoneFunction::rld(), std::nullopt, a);
    const EnergyBoundReport open = energy_bounds(rho, HermitianOperator(ladder()), MonotoneFunction::rld(), 0.25, a);
    const double da_i = std::sqrt(split_variance(rho, a, MonotoneFunction::rld()).incoherent);
    CHECK(rel_close(open.speed_bound - closed.speed_bound, 2.0 * da_i * 0.5, 1e-12));
    CHECK(rel_close(open.legacy_bound - closed.legacy_bound, 2.0 * da_i * 0.5, 1e-12));
}

TEST_CASE("scaling covariance") {
    Rng rng(10);
    const DensityMatrix rho = random_density(rng, 3);
    const HermitianOperator h(random_hermitian(rng, 3));
    const HermitianOperator a(random_hermitian(rng, 3));
    const double c = -2.5;
    const TangentOperator rdot = commutator_generator(rho, h);
    const TangentOperator rdot_c = commutator_generator(rho, HermitianOperator(ComplexMatrix(c * h.matrix())));
    for (double b : beta_grid(5)) {
        const MonotoneFunction f(b);
        const BoundReport base = bound_split(rho, rdot, a, f);
        const BoundReport scaled_a = bound_split(rho, rdot, HermitianOperator(ComplexMatrix(c * a.matrix())), f);
        CHECK(rel_close(scaled_a.speed, std::abs(c) * base.speed, 1e-12));
        CHECK(rel_close(scaled_a.bound_split, std::abs(c) * base.bound_split, 1e-12));
        CHECK(rel_close(scaled_a.bound_nonsplit, std::abs(c) * base.bound_nonsplit, 1e-12));
        const BoundReport scaled_h = bound_split(rho, rdot_c, a, f);
        CHECK(rel_close(scaled_h.speed, std::abs(c) * base.speed, 1e-12));
        CHECK(rel_close(std::sqrt(split_qfi(rho, rdot_c, f).coherent), std::abs(c) * std::sqrt(split_qfi(rho, rdot, f).coherent), 1e-12));
    }
    const BetaOptimum o1 = optimize_beta(rho, rdot, a);
    const BetaOptimum o2 = optimize_beta(rho, rdot, HermitianOperator(ComplexMatrix(c * a.matrix())));
    CHECK(std::abs(o1.beta_star - o2.beta_star) <= 1e-6);
}
