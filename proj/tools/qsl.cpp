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

// qsl: command-line front end for bounds, simplex scans and the experiment
// replica. Exit codes: 0 ok, 2 bad configuration, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qsl/dynamics.hpp"
#include "qsl/geometry.hpp"
#include "qsl/io.hpp"
#include "qsl/random.hpp"
#include "qsl/scan.hpp"
#include "qsl/speed_limits.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
    std::string config;
    std::string out;
    std::string beta;
    std::optional<double> grid_step;
    unsigned threads = 0;
    std::uint64_t seed = 1;
    int count = 200;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qsl::Error(qsl::ErrorCode::ConfigError, fmt::format("cannot read config '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes `body` to `path`, or stdout when path is empty.
void emit(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qsl::Error(qsl::ErrorCode::ConfigError, fmt::format("cannot write '{}'", path));
    out << body;
}

void emit_summary(const Options& o, const std::string& summary) {
    if (o.out.empty()) {
        std::cerr << summary << '\n';
    } else {
        emit(o.out + ".summary.json", summary + "\n");
    }
}

int run_bound(const Options& o) {
    if (o.config.empty()) throw qsl::Error(qsl::ErrorCode::ConfigError, "bound needs --config");
    const auto j = qsl::parse_json_text(read_file(o.config), o.config);
    if (!j.is_object() || !j.contains("rho") || !j.contains("observable")) {
        throw qsl::Error(qsl::ErrorCode::ConfigError, "bound config needs rho and observable");
    }
    const qsl::DensityMatrix rho = qsl::validate_density(qsl::matrix_from_json(j["rho"], "rho"));
    const qsl::HermitianOperator a(qsl::matrix_from_json(j["observable"], "observable"));
    std::optional<qsl::TangentOperator> rdot;
    if (j.contains("rdot")) {
        rdot.emplace(qsl::matrix_from_json(j["rdot"], "rdot"));
    } else if (j.contains("hamiltonian")) {
        rdot.emplace(qsl::commutator_generator(rho, qsl::HermitianOperator(qsl::matrix_from_json(j["hamiltonian"], "hamiltonian"))));
    } else {
        throw qsl::Error(qsl::ErrorCode::ConfigError, "bound config needs rdot or hamiltonian");
    }
    std::string beta_text = o.beta;
    if (beta_text.empty() && j.contains("beta")) {
        beta_text = j["beta"].is_string() ? j["beta"].get<std::string>() : qsl::format_real(j["beta"].get<double>());
    }
    const qsl::MonotoneFunction f = beta_text.empty() ? qsl::MonotoneFunction::sld() : qsl::MonotoneFunction::parse(beta_text);

    const qsl::BoundReport b = qsl::bound_split(rho, *rdot, a, f);
    const qsl::GeometryReport g = qsl::compute_geometry(rho, *rdot, a, f);
    std::string residual = "null";
    try {
        residual = qsl::format_real(qsl::saturation_residual(rho, *rdot, a, f));
    } catch (const qsl::Error& e) {
        if (e.code() != qsl::ErrorCode::ZeroTangent && e.code() != qsl::ErrorCode::ZeroObservable) throw;
    }
    emit(o.out, fmt::format("{{\"bound\": {}, \"geometry\": {}, \"saturation_residual\": {}}}\n", qsl::to_json(b),
                            qsl::to_json(g), residual));
    return 0;
}

qsl::Scenario load_scenario(const Options& o, const std::string& builtin) {
    qsl::Scenario sc = o.config.empty() ? qsl::builtin_scenario(builtin) : qsl::parse_scenario(read_file(o.config), o.config);
    if (o.grid_step) {
        if (!(*o.grid_step > 0.0 && *o.grid_step <= 1.0)) {
            throw qsl::Error(qsl::ErrorCode::ConfigError, fmt::format("--grid-step {} outside (0, 1]", *o.grid_step));
        }
        sc.grid.step = *o.grid_step;
    }
    if (!o.beta.empty()) sc.beta = qsl::MonotoneFunction::parse(o.beta).beta();
    return sc;
}

int write_scan(const Options& o, const qsl::ScanResult& r) {
    std::ostringstream csv;
    qsl::write_scan_csv(csv, r);
    emit(o.out, csv.str());
    emit_summary(o, qsl::scan_summary_json(r));
    return 0;
}

int run_experiment_cmd(const Options& o) {
    const qsl::ExperimentScenario sc =
        o.config.empty() ? qsl::ExperimentScenario{} : qsl::parse_experiment(read_file(o.config), o.config);
    const qsl::ExperimentResult r = qsl::run_experiment(sc, o.threads);
    std::ostringstream csv;
    qsl::write_experiment_csv(csv, r);
    emit(o.out, csv.str());
    emit_summary(o, qsl::experiment_summary_json(r));
    return 0;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Eigenbasis formulas against the superoperator construction on random instances.
int run_selftest(const Options& o) {
    qsl::Rng rng(o.seed);
    std::uniform_int_distribution<int> dim(2, 4);
    std::uniform_real_distribution<double> beta(-1.0, 1.0);
    double worst = 0.0;
    int failures = 0;
    for (int k = 0; k < o.count; ++k) {
        const Eigen::Index d = dim(rng);
        const qsl::DensityMatrix rho = qsl::random_density(rng, d);
        const qsl::TangentOperator rdot = qsl::random_tangent(rng, d);
        const qsl::HermitianOperator a(qsl::random_hermitian(rng, d));
        const qsl::MonotoneFunction f(beta(rng));
        const double e1 = rel_err(qsl::qfi(rho, rdot, f), qsl::qfi_superop_oracle(rho, rdot, f));
        const double e2 = rel_err(qsl::generalized_variance(rho, a, f), qsl::variance_superop_oracle(rho, a, f));
        worst = std::max({worst, e1, e2});
        if (e1 > 1e-9 || e2 > 1e-9) ++failures;
    }
    std::cout << fmt::format("selftest: {} instances, seed {}, max relative error {:.3e}, {} failures\n", o.count,
                             o.seed, worst, failures);
    return failures == 0 ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum speed limits with monotone metrics"};
    app.require_subcommand(1);
    Options o;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "Scenario JSON file")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "Output file (default: stdout)");
        sub->add_option("--threads", o.threads, "Worker threads (0: all cores)");
    };
    const auto add_scan = [&](CLI::App* sub) {
        add_common(sub);
        sub->add_option("--grid-step", o.grid_step, "Simplex grid spacing");
        sub->add_option("--beta", o.beta, "Monotone function: decimal in [-1, 1] or sld|wy|rld|log");
    };

    CLI::App* bound = app.add_subcommand("bound", "Bounds and geometry for one (rho, rho_dot, A) triple");
    add_common(bound);
    bound->add_option("--beta", o.beta, "Monotone function: decimal in [-1, 1] or sld|wy|rld|log");
    CLI::App* scan_xi = app.add_subcommand("scan-xi", "Optimal beta and coherent ratio over the simplex");
    add_scan(scan_xi);
    CLI::App* scan_fast = app.add_subcommand("scan-fast-h", "Fast-Hamiltonian speed ratio over the simplex");
    add_scan(scan_fast);
    CLI::App* scan_energy = app.add_subcommand("scan-energy", "Energy-variance bound ratio over the simplex");
    add_scan(scan_energy);
    CLI::App* experiment = app.add_subcommand("experiment", "Simulated decay-and-drive speed measurement");
    add_common(experiment);
    CLI::App* selftest = app.add_subcommand("selftest", "Eigenbasis formulas vs. superoperator oracle");
    selftest->add_option("--seed", o.seed, "RNG seed");
    selftest->add_option("--count", o.count, "Random instances")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*bound) return run_bound(o);
        if (*scan_xi) return write_scan(o, qsl::scan_xi(load_scenario(o, "main"), o.threads));
        if (*scan_fast) return write_scan(o, qsl::scan_fast_h(load_scenario(o, "fast-h"), o.threads));
        if (*scan_energy) return write_scan(o, qsl::scan_energy_bounds(load_scenario(o, "energy"), o.threads));
        if (*experiment) return run_experiment_cmd(o);
        if (*selftest) return run_selftest(o);
    } catch (const qsl::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_config_error() ? kExitConfig : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
