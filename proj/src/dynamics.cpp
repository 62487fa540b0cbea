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

#include "qsl/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qsl/geometry.hpp"
#include "qsl/monotone.hpp"
#include "qsl/speed_limits.hpp"

namespace qsl {

namespace {

constexpr double kInteractionTol = 1e-10;
constexpr double kEnvSlack = 1e-9;

void require_square(const ComplexMatrix& m, Eigen::Index d, const char* what) {
    if (m.rows() != d || m.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("{}: expected {}x{}, got {}x{}", what, d, d, m.rows(), m.cols()));
    }
}

ComplexMatrix to_tangent_matrix(const ComplexMatrix& m) {
    ComplexMatrix out = hermitize(m);
    out.diagonal().array() -= out.trace() / static_cast<double>(out.rows());
    return out;
}

// Hermitian, unit trace; drift beyond kDriftTol means the step was too coarse.
DensityMatrix settle(const ComplexMatrix& raw, double t) {
    const double drift = std::max(hermitian_defect(raw), std::abs(raw.trace() - Complex(1.0, 0.0)));
    if (!(drift <= kDriftTol)) {
        throw Error(ErrorCode::StateValidationDrift, fmt::format("state drift {:.3e} at t = {} us", drift, t));
    }
    ComplexMatrix clean = hermitize(raw);
    clean /= clean.trace().real();
    return validate_density(clean);
}

}  // namespace

Generator::Generator(ComplexMatrix h, std::vector<Jump> jumps) : h_(std::move(h)), jumps_(std::move(jumps)) {
    if (h_.rows() != h_.cols() || h_.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "generator Hamiltonian must be square and nonempty");
    }
    (void)HermitianOperator(h_);
    for (const Jump& j : jumps_) {
        require_square(j.op, h_.rows(), "jump operator");
        if (!(j.rate >= 0.0) || !std::isfinite(j.rate)) {
            throw Error(ErrorCode::InvalidArgument, fmt::format("jump rate {} must be finite and >= 0", j.rate));
        }
        half_jdj_.push_back(0.5 * j.rate * (j.op.adjoint() * j.op));
    }
}

Generator Generator::zero(Eigen::Index dim) { return Generator(ComplexMatrix::Zero(dim, dim)); }

ComplexMatrix Generator::apply(const ComplexMatrix& rho) const {
    const Complex minus_i(0.0, -1.0);
    ComplexMatrix out = minus_i * (h_ * rho - rho * h_);
    for (std::size_t k = 0; k < jumps_.size(); ++k) {
        const ComplexMatrix& j = jumps_[k].op;
        out += jumps_[k].rate * (j * rho * j.adjoint()) - half_jdj_[k] * rho - rho * half_jdj_[k];
    }
    return out;
}

TangentOperator Generator::tangent(const DensityMatrix& rho) const {
    require_same_dim(dim(), rho.dim(), "generator");
    return TangentOperator(to_tangent_matrix(apply(rho.matrix())));
}

Generator unitary_generator(const HermitianOperator& h) { return Generator(h.matrix()); }

void DecayChainSpec::validate() const {
    if (!(gamma_fe > 0.0) || !(gamma_eg > 0.0) || !std::isfinite(gamma_fe) || !std::isfinite(gamma_eg)) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("decay rates must be positive, got gamma_fe = {}, gamma_eg = {}", gamma_fe, gamma_eg));
    }
}

DecayChainSpec decay_preset(std::string_view name) {
    if (name == "per-ms") return {0.0184, 0.0147};
    if (name == "table-literal") return {18.4, 14.7};
    throw Error(ErrorCode::ConfigError, fmt::format("unknown rate preset '{}' (per-ms|table-literal)", name));
}

void DriveSpec::validate() const {
    if (!(omega_ge >= 0.0) || !(omega_ef >= 0.0) || !std::isfinite(omega_ge) || !std::isfinite(omega_ef)) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("Rabi rates must be finite and >= 0, got {} and {}", omega_ge, omega_ef));
    }
}

HermitianOperator ladder_hamiltonian(const DriveSpec& drive) {
    drive.validate();
    const Complex i(0.0, 1.0);
    ComplexMatrix h = i * (0.5 * drive.omega_ge) * ops::basis_op(3, 0, 1) + i * (0.5 * drive.omega_ef) * ops::basis_op(3, 1, 2);
    return HermitianOperator(ComplexMatrix(h + h.adjoint()));
}

HermitianOperator x_ge() { return HermitianOperator(ops::basis_op(3, 0, 1) + ops::basis_op(3, 1, 0)); }

Generator decay_chain_generator(const DecayChainSpec& spec, const std::optional<DriveSpec>& drive) {
    spec.validate();
    ComplexMatrix h = drive ? ladder_hamiltonian(*drive).matrix() : ComplexMatrix::Zero(3, 3);
    return Generator(std::move(h), {{ops::basis_op(3, 1, 2), spec.gamma_fe}, {ops::basis_op(3, 0, 1), spec.gamma_eg}});
}

std::array<double, 3> bateman_populations(const DecayChainSpec& spec, double t) {
    spec.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::NegativeTime, fmt::format("t = {} us", t));
    const double a = spec.gamma_fe;
    const double b = spec.gamma_eg;
    const double pf = std::exp(-a * t);
    // a/(b-a) (e^{-at} - e^{-bt}) = a t e^{-at} (1 - e^{-(b-a)t}) / ((b-a)t); the last
    // factor tends to 1 for equal rates.
    const double x = (b - a) * t;
    const double factor = std::abs(b - a) <= 1e-10 * std::max(a, b) || x == 0.0 ? 1.0 : -std::expm1(-x) / x;
    const double pe = std::clamp(a * t * pf * factor, 0.0, 1.0);
    const double pg = std::clamp(1.0 - pe - pf, 0.0, 1.0);
    return {pg, pe, pf};
}

ComplexMatrix rk4_step(const ComplexMatrix& rho, const Generator& gen, double dt) {
    const ComplexMatrix k1 = gen.apply(rho);
    const ComplexMatrix k2 = gen.apply(rho + (0.5 * dt) * k1);
    const ComplexMatrix k3 = gen.apply(rho + (0.5 * dt) * k2);
    const ComplexMatrix k4 = gen.apply(rho + dt * k3);
    return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory evolve(const DensityMatrix& rho0, const Generator& gen, double t_final, double dt) {
    require_same_dim(rho0.dim(), gen.dim(), "evolve");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, fmt::format("dt = {}", dt));
    if (!(t_final >= dt * (1.0 - 1e-12)) || !std::isfinite(t_final)) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("t_final = {} must be >= dt = {}", t_final, dt));
    }
    const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));

    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.tangents.reserve(steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);
    traj.tangents.push_back(gen.tangent(rho0));
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        DensityMatrix next = settle(rk4_step(traj.states.back().matrix(), gen, dt), t);
        traj.tangents.push_back(gen.tangent(next));
        traj.states.push_back(std::move(next));
        traj.times.push_back(t);
    }
    return traj;
}

double measured_speed(const Trajectory& traj, const HermitianOperator& a, double window) {
    if (traj.size() < 3 || !(window > 0.0)) {
        throw Error(ErrorCode::WindowTooShort, fmt::format("{} samples, window {} us", traj.size(), window));
    }
    const double t0 = traj.times.front();
    const double span = traj.times.back() - t0;
    const double tol = 1e-9 * std::max(window, span);
    if (window > span + tol) {
        throw Error(ErrorCode::WindowTooShort, fmt::format("window {} us exceeds trajectory span {} us", window, span));
    }
    std::vector<double> ts;
    std::vector<double> ys;
    for (std::size_t k = 0; k < traj.size() && traj.times[k] - t0 <= window + tol; ++k) {
        ts.push_back(traj.times[k] - t0);
        ys.push_back(expectation(traj.states[k], a));
    }
    if (ts.size() < 3) {
        throw Error(ErrorCode::WindowTooShort, fmt::format("only {} samples inside window {} us", ts.size(), window));
    }
    const auto n = static_cast<double>(ts.size());
    double tm = 0.0;
    double ym = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        tm += ts[k];
        ym += ys[k];
    }
    tm /= n;
    ym /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        sxy += (ts[k] - tm) * (ys[k] - ym);
        sxx += (ts[k] - tm) * (ts[k] - tm);
    }
    return sxy / sxx;
}

std::vector<double> default_t_decay() {
    std::vector<double> out;
    for (int k = 0; k < 10; ++k) out.push_back(11.0 + 10.0 * k);
    return out;
}

ExperimentRow experiment_point(const DecayChainSpec& spec, const DriveSpec& drive, double t_decay,
                               const HermitianOperator& a, const ExperimentOptions& opts) {
    require_same_dim(3, a.dim(), "experiment observable");
    ExperimentRow row;
    row.t_decay = t_decay;
    row.populations = bateman_populations(spec, t_decay);
    const DensityMatrix rho = diagonal_density(row.populations);
    const Generator gen = decay_chain_generator(spec, drive);
    const TangentOperator rdot = gen.tangent(rho);

    const Trajectory traj = evolve(rho, gen, opts.window, opts.dt);
    row.speed = std::abs(measured_speed(traj, a, opts.window));

    const EigenFrame frame(rho, rdot, a);
    row.speed_exact = std::abs(frame.speed());
    row.bound_sld = bound_split(frame, MonotoneFunction::sld()).bound_split;
    const BoundReport rld = bound_split(frame, MonotoneFunction::rld());
    row.bound_rld = rld.bound_split;
    row.xi_rld = rld.xi;
    for (double beta : opts.extra_betas) row.extra_bounds.push_back(bound_split(frame, MonotoneFunction(beta)).bound_split);
    return row;
}

std::vector<ExperimentRow> experiment_replica(const DecayChainSpec& spec, const DriveSpec& drive,
                                              const std::vector<double>& t_decay, const HermitianOperator& a,
                                              const ExperimentOptions& opts) {
    std::vector<ExperimentRow> rows;
    rows.reserve(t_decay.size());
    for (double t : t_decay) rows.push_back(experiment_point(spec, drive, t, a, opts));
    return rows;
}

ComplexMatrix partial_trace_env(const ComplexMatrix& m, Eigen::Index sys_dim, Eigen::Index env_dim) {
    require_square(m, sys_dim * env_dim, "partial_trace_env");
    ComplexMatrix out = ComplexMatrix::Zero(sys_dim, sys_dim);
    for (Eigen::Index i = 0; i < sys_dim; ++i)
        for (Eigen::Index j = 0; j < sys_dim; ++j)
            for (Eigen::Index k = 0; k < env_dim; ++k) out(i, j) += m(i * env_dim + k, j * env_dim + k);
    return out;
}

ComplexMatrix partial_trace_sys(const ComplexMatrix& m, Eigen::Index sys_dim, Eigen::Index env_dim) {
    require_square(m, sys_dim * env_dim, "partial_trace_sys");
    ComplexMatrix out = ComplexMatrix::Zero(env_dim, env_dim);
    for (Eigen::Index k = 0; k < env_dim; ++k)
        for (Eigen::Index l = 0; l < env_dim; ++l)
            for (Eigen::Index i = 0; i < sys_dim; ++i) out(k, l) += m(i * env_dim + k, i * env_dim + l);
    return out;
}

ComplexMatrix interaction_part(const ComplexMatrix& m, Eigen::Index sys_dim, Eigen::Index env_dim) {
    const auto ds = static_cast<double>(sys_dim);
    const auto de = static_cast<double>(env_dim);
    const ComplexMatrix is = ComplexMatrix::Identity(sys_dim, sys_dim);
    const ComplexMatrix ie = ComplexMatrix::Identity(env_dim, env_dim);
    return m - ops::kron(partial_trace_env(m, sys_dim, env_dim) / de, ie) -
           ops::kron(is, partial_trace_sys(m, sys_dim, env_dim) / ds) +
           (m.trace() / (ds * de)) * ComplexMatrix::Identity(m.rows(), m.cols());
}

void EnvModelSpec::validate() const {
    if (sys_dim < 1 || env_dim < 1) {
        throw Error(ErrorCode::DimensionMismatch, fmt::format("sys_dim = {}, env_dim = {}", sys_dim, env_dim));
    }
    const Eigen::Index n = sys_dim * env_dim;
    require_square(h_sys, sys_dim, "H_sys");
    require_square(h_env, env_dim, "H_env");
    require_square(h_int, n, "H_int");
    require_square(joint_state, n, "joint state");
    (void)HermitianOperator(h_sys);
    (void)HermitianOperator(h_env);
    (void)HermitianOperator(h_int);
    const double scale = std::max(1.0, max_abs(h_int));
    const double on_sys = max_abs(partial_trace_env(h_int, sys_dim, env_dim)) / static_cast<double>(env_dim);
    const double on_env = max_abs(partial_trace_sys(h_int, sys_dim, env_dim)) / static_cast<double>(sys_dim);
    if (on_sys > kInteractionTol * scale || on_env > kInteractionTol * scale) {
        throw Error(ErrorCode::InvalidInteraction,
                    fmt::format("H_int has local parts: |Tr_E H_int|/d_E = {:.3e}, |Tr_S H_int|/d_S = {:.3e}", on_sys,
                                on_env));
    }
}

ComplexMatrix EnvModelSpec::total_hamiltonian() const {
    return ops::kron(h_sys, ComplexMatrix::Identity(env_dim, env_dim)) +
           ops::kron(ComplexMatrix::Identity(sys_dim, sys_dim), h_env) + h_int;
}

EnvCheck env_incoherent_check(const EnvModelSpec& spec, double dt) {
    spec.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, fmt::format("dt = {}", dt));
    const DensityMatrix joint0 = validate_density(spec.joint_state);
    const HermitianOperator h(hermitize(spec.total_hamiltonian()));
    const Generator gen = unitary_generator(h);
    const DensityMatrix joint = settle(rk4_step(joint0.matrix(), gen, dt), dt);

    const DensityMatrix rho_s = validate_density(hermitize(partial_trace_env(joint.matrix(), spec.sys_dim, spec.env_dim)));
    const ComplexMatrix rdot_joint = gen.apply(joint.matrix());
    const TangentOperator rdot_s(to_tangent_matrix(partial_trace_env(rdot_joint, spec.sys_dim, spec.env_dim)));

    EnvCheck out;
    out.fisher_incoherent = split_qfi(rho_s, rdot_s, MonotoneFunction::sld()).incoherent;
    out.bound = 4.0 * variance_sld(joint, HermitianOperator(spec.h_int));
    if (out.fisher_incoherent > out.bound + kEnvSlack * std::max(1.0, out.bound)) {
        throw Error(ErrorCode::BoundViolation,
                    fmt::format("I_I = {:.12g} exceeds 4 (Delta H_int)^2 = {:.12g}", out.fisher_incoherent, out.bound));
    }
    return out;
}

}  // namespace qsl
