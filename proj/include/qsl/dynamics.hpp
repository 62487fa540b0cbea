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
 * Trajectories (rho(t), rho_dot(t)) from fixed-step RK4 integration of
 * Lindblad generators, the qutrit decay chain f -> e -> g used to prepare
 * mixed states, the simulated speed-extraction protocol, and the
 * system-environment check of the incoherent Fisher bound.
 *
 * Qutrit basis ordering: g = 0, e = 1, f = 2.
 */
#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "qsl/core.hpp"

namespace qsl {

inline constexpr double kDefaultDt = 1e-4;              ///< us
inline constexpr double kDefaultSpeedWindow = 0.016;    ///< us
inline constexpr double kDriftTol = 1e-8;
inline constexpr double kTwoPi = 6.283185307179586476925;

struct Jump {
    ComplexMatrix op;
    double rate = 0.0;  ///< 1/us
};

/// rho -> -i[H, rho] + sum_k rate_k (J rho J^dag - {J^dag J, rho}/2).
class Generator {
public:
    Generator(ComplexMatrix h, std::vector<Jump> jumps = {});
    static Generator zero(Eigen::Index dim);

    Eigen::Index dim() const noexcept { return h_.rows(); }
    const ComplexMatrix& hamiltonian() const noexcept { return h_; }
    const std::vector<Jump>& jumps() const noexcept { return jumps_; }

    /// Raw right-hand side, used inside the integrator.
    ComplexMatrix apply(const ComplexMatrix& rho) const;
    /// Right-hand side projected onto Hermitian traceless matrices.
    TangentOperator tangent(const DensityMatrix& rho) const;

private:
    ComplexMatrix h_;
    std::vector<Jump> jumps_;
    std::vector<ComplexMatrix> half_jdj_;  // J^dag J / 2, premultiplied by rate
};

Generator unitary_generator(const HermitianOperator& h);

struct DecayChainSpec {
    double gamma_fe = 0.0184;  ///< f -> e, 1/us
    double gamma_eg = 0.0147;  ///< e -> g, 1/us

    void validate() const;
};

/// Named rate presets: "per-ms" (default; 1/T1 values read as ms^-1) and
/// "table-literal" (the same numbers read as us^-1).
DecayChainSpec decay_preset(std::string_view name);

struct DriveSpec {
    double omega_ge = kTwoPi * 10.0;  ///< rad/us
    double omega_ef = kTwoPi * 10.0;

    void validate() const;
};

/// i(omega_ge/2)|g><e| + i(omega_ef/2)|e><f| + h.c.
HermitianOperator ladder_hamiltonian(const DriveSpec& drive);

/// |g><e| + |e><g| on the qutrit.
HermitianOperator x_ge();

/// Amplitude damping f -> e -> g, optionally with the ladder drive.
Generator decay_chain_generator(const DecayChainSpec& spec, const std::optional<DriveSpec>& drive = std::nullopt);

/// (p_g, p_e, p_f) at time t after preparing |f>.
std::array<double, 3> bateman_populations(const DecayChainSpec& spec, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<TangentOperator> tangents;

    std::size_t size() const noexcept { return times.size(); }
};

/// RK4 at fixed dt from t = 0 to round(t_final / dt) steps. Each state is
/// checked for drift (hermiticity and trace, 1e-8), cleaned up and
/// re-validated.
Trajectory evolve(const DensityMatrix& rho0, const Generator& gen, double t_final, double dt = kDefaultDt);

/// One RK4 step, unvalidated.
ComplexMatrix rk4_step(const ComplexMatrix& rho, const Generator& gen, double dt);

/// Least-squares slope of Tr[rho(t) A] over samples with t <= t_0 + window.
double measured_speed(const Trajectory& traj, const HermitianOperator& a, double window);

struct ExperimentRow {
    double t_decay = 0.0;
    std::array<double, 3> populations{};  ///< (p_g, p_e, p_f)
    double speed = 0.0;                   ///< measured from the trajectory
    double speed_exact = 0.0;             ///< |Tr[rho_dot(0) A]|
    double bound_sld = 0.0;
    double bound_rld = 0.0;
    std::optional<double> xi_rld;
    std::vector<double> extra_bounds;     ///< split bounds for ExperimentOptions::extra_betas
};

struct ExperimentOptions {
    double window = kDefaultSpeedWindow;
    double dt = kDefaultDt;
    std::vector<double> extra_betas;
};

/// Ten t_decay values uniform in [11, 101] us.
std::vector<double> default_t_decay();

ExperimentRow experiment_point(const DecayChainSpec& spec, const DriveSpec& drive, double t_decay,
                               const HermitianOperator& a, const ExperimentOptions& opts = {});

std::vector<ExperimentRow> experiment_replica(const DecayChainSpec& spec, const DriveSpec& drive,
                                              const std::vector<double>& t_decay, const HermitianOperator& a,
                                              const ExperimentOptions& opts = {});

struct EnvModelSpec {
    Eigen::Index sys_dim = 0;
    Eigen::Index env_dim = 0;
    ComplexMatrix h_sys;
    ComplexMatrix h_env;
    ComplexMatrix h_int;
    ComplexMatrix joint_state;

    /// Throws DimensionMismatch or InvalidInteraction (a partial trace of
    /// H_int against the identity is nonzero beyond 1e-10).
    void validate() const;
    ComplexMatrix total_hamiltonian() const;
};

/// Tr_E on a (sys_dim * env_dim)-dimensional operator, kron(S, E) ordering.
ComplexMatrix partial_trace_env(const ComplexMatrix& m, Eigen::Index sys_dim, Eigen::Index env_dim);
ComplexMatrix partial_trace_sys(const ComplexMatrix& m, Eigen::Index sys_dim, Eigen::Index env_dim);

/// Removes every term of M acting on one factor alone, leaving a valid H_int.
ComplexMatrix interaction_part(const ComplexMatrix& m, Eigen::Index sys_dim, Eigen::Index env_dim);

struct EnvCheck {
    double fisher_incoherent = 0.0;  ///< I_I of the reduced system state
    double bound = 0.0;              ///< 4 (Delta H_int)^2 on the joint state
};

/// Evolves the joint state one RK4 step under H_sys + H_env + H_int and
/// checks I_I <= 4 (Delta H_int)^2 + 1e-9 there; throws BoundViolation if not.
EnvCheck env_incoherent_check(const EnvModelSpec& spec, double dt);

}  // namespace qsl
