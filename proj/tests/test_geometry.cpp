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

#include <vector>

#include "qsl/geometry.hpp"
#include "support.hpp"

using namespace qsl;
using namespace qsl::testing;

namespace {

DensityMatrix diag_rho(std::vector<double> p) { return diagonal_density(p); }

struct Triple {
    DensityMatrix rho;
    TangentOperator rdot;
    HermitianOperator a;
};

Triple random_triple(Rng& rng, Eigen::Index d) {
    DensityMatrix rho = random_density(rng, d);
    TangentOperator rdot = random_tangent(rng, d);
    HermitianOperator a(random_hermitian(rng, d));
    return {std::move(rho), std::move(rdot), std::move(a)};
}

}  // namespace

TEST_CASE("generalized variance examples") {
    Rng rng(1);
    const Triple t = random_triple(rng, 3);
    CHECK(rel_close(generalized_variance(t.rho, t.a, MonotoneFunction::sld()), variance_sld(t.rho, t.a), 1e-10));

    const DensityMatrix rho = diag_rho({0.7, 0.3});
    CHECK(generalized_variance(rho, HermitianOperator(ops::pauli_x()), MonotoneFunction::rld()) ==
          doctest::Approx(0.84).epsilon(1e-14));
    CHECK(generalized_variance(t.rho, HermitianOperator(ComplexMatrix::Identity(3, 3)), MonotoneFunction(0.3)) ==
          doctest::Approx(0.0));
}

TEST_CASE("split variance examples") {
    const DensityMatrix rho = diag_rho({0.7, 0.3});
    for (double b : beta_grid(5)) {
        const SplitTerms z = split_variance(rho, HermitianOperator(ops::pauli_z()), MonotoneFunction(b));
        CHECK(z.coherent == doctest::Approx(0.0));
        CHECK(z.incoherent == doctest::Approx(0.84).epsilon(1e-14));
        const SplitTerms x = split_variance(rho, HermitianOperator(ops::pauli_x()), MonotoneFunction(b));
        CHECK(x.incoherent == doctest::Approx(0.0));
    }
}

TEST_CASE("log derivative examples") {
    Rng rng(2);
    const DensityMatrix rho = random_density(rng, 3);
    CHECK(max_abs(log_derivative(rho, TangentOperator::zero(3), MonotoneFunction(0.1)).matrix()) == 0.0);

    const DensityMatrix mixed = diag_rho({0.5, 0.5});
    const TangentOperator rdot = random_tangent(rng, 2);
    for (double b : beta_grid(5)) {
        CHECK(max_abs(log_derivative(mixed, rdot, MonotoneFunction(b)).matrix() - 2.0 * rdot.matrix()) < 1e-14);
    }

    const Complex c(0.2, -0.1);
    ComplexMatrix r = ComplexMatrix::Zero(2, 2);
    r(0, 1) = c;
    r(1, 0) = std::conj(c);
    const ComplexMatrix l = log_derivative(diag_rho({0.7, 0.3}), TangentOperator(r), MonotoneFunction::sld()).matrix();
    CHECK(std::abs(l(0, 1) - 2.0 * c) < 1e-14);
}

TEST_CASE("qfi equals Tr[L m(L)] and vanishes for stationary states") {
    Rng rng(3);
    const Triple t = random_triple(rng, 4);
    CHECK(qfi(t.rho, TangentOperator::zero(4), MonotoneFunction(0.2)) == 0.0);
    const DensityMatrix d = diag_rho({0.5, 0.3, 0.2});
    CHECK(qfi(d, commutator_generator(d, HermitianOperator(ComplexMatrix(RealVector::LinSpaced(3, 1, 3).cast<Complex>().asDiagonal()))),
              MonotoneFunction(-0.4)) == 0.0);
    for (double b : beta_grid(9)) {
        const MonotoneFunction f(b);
        const HermitianOperator l = log_derivative(t.rho, t.rdot, f);
        // Tr[rho L] = Tr[rho_dot] = 0, so the centered form is Tr[L m(L)].
        CHECK(rel_close(qfi(t.rho, t.rdot, f), variance_superop_oracle(t.rho, l, f), 1e-9));
    }
}

TEST_CASE("split qfi examples") {
    Rng rng(4);
    const DensityMatrix rho = random_density(rng, 3);
    const TangentOperator unitary = commutator_generator(rho, HermitianOperator(random_hermitian(rng, 3)));
    CHECK(split_qfi(rho, unitary, MonotoneFunction(0.7)).incoherent <= 1e-20);

    const DensityMatrix d = diag_rho({0.5, 0.3, 0.2});
    const ComplexMatrix pdot = RealVector((RealVector(3) << 0.1, -0.04, -0.06).finished()).cast<Complex>().asDiagonal();
    const SplitTerms s = split_qfi(d, TangentOperator(pdot), MonotoneFunction(-0.5));
    CHECK(s.coherent == 0.0);
    CHECK(s.incoherent == doctest::Approx(0.01 / 0.5 + 0.0016 / 0.3 + 0.0036 / 0.2).epsilon(1e-14));

    for (int k = 0; k < 30; ++k) {
        const Triple t = random_triple(rng, 3);
        CHECK(split_qfi(t.rho, t.rdot, MonotoneFunction::rld()).coherent >=
              split_qfi(t.rho, t.rdot, MonotoneFunction::sld()).coherent * (1.0 - 1e-12));
    }
}

TEST_CASE("classical fisher") {
    const std::vector<double> p{0.5, 0.5};
    CHECK(classical_fisher(p, std::vector<double>{0.0, 0.0}) == 0.0);
    CHECK(classical_fisher(p, std::vector<double>{0.3, -0.3}) == doctest::Approx(4 * 0.09).epsilon(1e-15));
    CHECK_THROWS_AS(classical_fisher(std::vector<double>{0.6, 0.6}, std::vector<double>{0.0, 0.0}), Error);
    CHECK_THROWS_AS(classical_fisher(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 0.0}), Error);
    CHECK_THROWS_AS(classical_fisher(p, std::vector<double>{0.1, 0.0}), Error);
    CHECK_THROWS_AS(classical_fisher(p, std::vector<double>{0.1}), Error);
}

TEST_CASE("eigenbasis formulas agree with independent constructions") {
    Rng rng(5);
    for (int k = 0; k < 60; ++k) {
        const Triple t = random_triple(rng, 2 + k % 3);
        const ComplexMatrix& r = t.rho.matrix();
        CHECK(rel_close(qfi(t.rho, t.rdot, MonotoneFunction::sld()), sld_qfi_lyapunov(r, t.rdot.matrix()), 1e-9));
        CHECK(rel_close(qfi(t.rho, t.rdot, MonotoneFunction::rld()), rld_qfi_direct(r, t.rdot.matrix()), 1e-9));
        CHECK(rel_close(generalized_variance(t.rho, t.a, MonotoneFunction::wigner_yanase()),
                        wy_variance_direct(r, t.a.matrix()), 1e-9));
        for (double b : beta_grid(11)) {
            const MonotoneFunction f(b);
            CHECK(rel_close(qfi(t.rho, t.rdot, f), qfi_superop_oracle(t.rho, t.rdot, f), 1e-9));
            CHECK(rel_close(generalized_variance(t.rho, t.a, f), variance_superop_oracle(t.rho, t.a, f), 1e-9));
        }
    }
}

TEST_CASE("superoperator oracle reference values") {
    Rng rng(6);
    const DensityMatrix mixed = diag_rho({0.5, 0.5});
    const TangentOperator rdot = random_tangent(rng, 2);
    const double want = 2.0 * (rdot.matrix() * rdot.matrix()).trace().real();
    CHECK(qfi_superop_oracle(mixed, rdot, MonotoneFunction::sld()) == doctest::Approx(want).epsilon(1e-12));
    CHECK(qfi_superop_oracle(mixed, TangentOperator::zero(2), MonotoneFunction::sld()) == 0.0);
}

TEST_CASE("orderings over beta") {
    Rng rng(7);
    for (int k = 0; k < 40; ++k) {
        const Triple t = random_triple(rng, 2 + k % 4);
        const double i_sld = qfi(t.rho, t.rdot, MonotoneFunction::sld());
        const double v_sld = generalized_variance(t.rho, t.a, MonotoneFunction::sld());
        for (double b : beta_grid(21)) {
            const MonotoneFunction f(b);
            CHECK(qfi(t.rho, t.rdot, f) >= i_sld * (1.0 - 1e-12));
            CHECK(generalized_variance(t.rho, t.a, f) <= v_sld * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("basis invariance") {
    Rng rng(8);
    for (int k = 0; k < 20; ++k) {
        const Eigen::Index d = 2 + k % 3;
        const Triple t = random_triple(rng, d);
        const ComplexMatrix u = random_unitary(rng, d);
        const DensityMatrix rho2 = validate_density(hermitize(conjugate(t.rho.matrix(), u)));
        const TangentOperator rdot2(hermitize(conjugate(t.rdot.matrix(), u)));
        const HermitianOperator a2(hermitize(conjugate(t.a.matrix(), u)));
        for (double b : beta_grid(5)) {
            const MonotoneFunction f(b);
            const GeometryReport g1 = compute_geometry(t.rho, t.rdot, t.a, f);
            const GeometryReport g2 = compute_geometry(rho2, rdot2, a2, f);
            CHECK(rel_close(g1.var_f, g2.var_f, 1e-9));
            CHECK(rel_close(g1.var_f_coherent, g2.var_f_coherent, 1e-9));
            CHECK(rel_close(g1.qfi_f, g2.qfi_f, 1e-9));
            CHECK(rel_close(g1.qfi_f_coherent, g2.qfi_f_coherent, 1e-9));
            CHECK(max_abs(conjugate(g1.log_derivative, u) - g2.log_derivative) <= 1e-9 * std::max(1.0, max_abs(g1.log_derivative)));
        }
    }
}

TEST_CASE("degenerate eigenvalues: results do not depend on the basis inside the block") {
    Rng rng(9);
    const std::vector<double> p{0.3, 0.3, 0.4};
    const DensityMatrix base = diagonal_density(p);
    const TangentOperator rdot = random_tangent(rng, 3);
    const HermitianOperator a(random_hermitian(rng, 3));
    // Rotate only within the degenerate block: rho is unchanged, its eigenbasis is not.
    ComplexMatrix u = ComplexMatrix::Identity(3, 3);
    u.topLeftCorner(2, 2) = random_unitary(rng, 2);
    const DensityMatrix same = validate_density(hermitize(conjugate(base.matrix(), u)));
    for (double b : beta_grid(7)) {
        const MonotoneFunction f(b);
        const GeometryReport g1 = compute_geometry(base, rdot, a, f);
        const GeometryReport g2 = compute_geometry(same, rdot, a, f);
        CHECK(rel_close(g1.var_f, g2.var_f, 1e-9));
        CHECK(rel_close(g1.qfi_f, g2.qfi_f, 1e-9));
        CHECK(rel_close(qfi(base, rdot, f), qfi_superop_oracle(base, rdot, f), 1e-9));
    }
}

TEST_CASE("geometry report is additive and non-negative") {
    Rng rng(10);
    for (int k = 0; k < 20; ++k) {
        const Triple t = random_triple(rng, 4);
        const GeometryReport g = compute_geometry(t.rho, t.rdot, t.a, MonotoneFunction(-0.3));
        CHECK(rel_close(g.var_f, g.var_f_coherent + g.var_incoherent, 1e-10));
        CHECK(rel_close(g.qfi_f, g.qfi_f_coherent + g.fisher_incoherent, 1e-10));
        CHECK(g.var_f_coherent >= 0.0);
        CHECK(g.var_incoherent >= 0.0);
        CHECK(g.qfi_f_coherent >= 0.0);
        CHECK(g.fisher_incoherent >= 0.0);
        CHECK(hermitian_defect(g.log_derivative) <= 1e-12 * std::max(1.0, max_abs(g.log_derivative)));
    }
}

TEST_CASE("dimension mismatches are reported") {
    Rng rng(11);
    const DensityMatrix rho = random_density(rng, 3);
    try {
        qfi(rho, random_tangent(rng, 2), MonotoneFunction::sld());
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}
