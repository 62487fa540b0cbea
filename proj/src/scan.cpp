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

#include "qsl/scan.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "qsl/geometry.hpp"
#include "qsl/io.hpp"
#include "qsl/monotone.hpp"

namespace qsl {

namespace {

using nlohmann::json;

constexpr double kGridEps = 1e-9;

const std::vector<std::string>& aux_columns(ScanKind kind) {
    static const std::vector<std::string> xi{"xi_rld", "xi_log", "xi_wy", "kappa", "degenerate"};
    static const std::vector<std::string> fast{"speed_ratio", "speed_sld", "speed_best", "kappa"};
    static const std::vector<std::string> energy{"bound_ratio", "kappa", "speed_bound", "legacy_bound", "qfi_c"};
    switch (kind) {
        case ScanKind::Xi: return xi;
        case ScanKind::FastH: return fast;
        case ScanKind::Energy: return energy;
    }
    return xi;
}

std::string csv_real(double x) { return fmt::format("{:.12g}", x); }

void check_grid_params(int dim, double step, double floor) {
    if (dim < 2) throw Error(ErrorCode::ConfigError, fmt::format("grid dim = {} must be >= 2", dim));
    if (!(step > 0.0 && step <= 1.0)) throw Error(ErrorCode::ConfigError, fmt::format("grid step = {} outside (0, 1]", step));
    if (!(floor > 0.0) || !(dim * floor <= 1.0)) {
        throw Error(ErrorCode::ConfigError, fmt::format("grid floor = {} must be positive with dim * floor <= 1", floor));
    }
}

long long grid_span(int dim, double step, double floor) {
    return static_cast<long long>(std::floor((1.0 - dim * floor) / step + kGridEps));
}

void enumerate(std::vector<long long>& k, std::size_t pos, long long remaining, const SimplexGrid& g,
               std::vector<std::vector<double>>& out) {
    if (pos == k.size()) {
        std::vector<double> p;
        p.reserve(k.size() + 1);
        double sum = 0.0;
        for (long long ki : k) {
            p.push_back(g.floor + static_cast<double>(ki) * g.step);
            sum += p.back();
        }
        p.push_back(1.0 - sum);
        out.push_back(std::move(p));
        return;
    }
    for (long long v = 0; v <= remaining; ++v) {
        k[pos] = v;
        enumerate(k, pos + 1, remaining - v, g, out);
    }
}

ComplexMatrix hamiltonian_template(const std::string& name) {
    if (name == "ladder") return ladder_hamiltonian(DriveSpec{}).matrix();
    if (name == "landscape") {
        const Complex c(0.0, -kTwoPi * 2.5);
        const ComplexMatrix t = ops::basis_op(3, 0, 1) + 4.0 * ops::basis_op(3, 1, 2) + ops::basis_op(3, 0, 2);
        const ComplexMatrix h = c * t;
        return h + h.adjoint();
    }
    throw Error(ErrorCode::ConfigError, fmt::format("unknown hamiltonian template '{}' (ladder|landscape)", name));
}

ComplexMatrix observable_template(const std::string& name) {
    if (name == "x_ge") return x_ge().matrix();
    if (name == "chain") {
        const ComplexMatrix a = ops::basis_op(3, 0, 1) + ops::basis_op(3, 1, 2);
        return a + a.adjoint();
    }
    throw Error(ErrorCode::ConfigError, fmt::format("unknown observable template '{}' (x_ge|chain)", name));
}

ComplexMatrix operator_field(const json& j, const std::string& field) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        return field == "hamiltonian" ? hamiltonian_template(name) : observable_template(name);
    }
    ComplexMatrix m = matrix_from_json(j, field);
    if (hermitian_defect(m) > kHermitianTol * std::max(1.0, max_abs(m))) {
        throw Error(ErrorCode::ConfigError, fmt::format("{}: matrix is not Hermitian", field));
    }
    return m;
}

double number_field(const json& j, const std::string& field) {
    if (!j.is_number()) throw Error(ErrorCode::ConfigError, fmt::format("{}: expected a number", field));
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw Error(ErrorCode::ConfigError, fmt::format("{}: not finite", field));
    return v;
}

double beta_field(const json& j, const std::string& field) {
    if (j.is_string()) return MonotoneFunction::parse(j.get<std::string>()).beta();
    const double b = number_field(j, field);
    if (!(b >= -1.0 && b <= 1.0)) throw Error(ErrorCode::ConfigError, fmt::format("{}: beta = {} outside [-1, 1]", field, b));
    return b;
}

void reject_unknown(const json& j, const std::string& where, std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error(ErrorCode::ConfigError, fmt::format("{}{}: unknown field", where, key));
        }
    }
}

json parse_object(const std::string& text, const std::string& source) {
    json j = parse_json_text(text, source);
    if (!j.is_object()) throw Error(ErrorCode::ConfigError, fmt::format("{}: top level must be an object", source));
    return j;
}

DensityMatrix diag_state(const std::vector<double>& p) { return diagonal_density(p); }

ScanResult collect(ScanKind kind, int dim, std::vector<std::optional<ScanRow>> rows) {
    ScanResult r;
    r.kind = kind;
    r.dim = dim;
    for (auto& row : rows) {
        if (row) {
            r.rows.push_back(std::move(*row));
        } else {
            ++r.skipped;
        }
    }
    return r;
}

std::vector<std::vector<double>> scenario_points(const Scenario& sc) {
    if (sc.line_p0) return make_line_grid(*sc.line_p0, sc.grid.step, sc.grid.floor).points;
    return make_simplex_grid(sc.grid.dim, sc.grid.step, sc.grid.floor).points;
}

}  // namespace

SimplexGrid make_simplex_grid(int dim, double step, double floor) {
    check_grid_params(dim, step, floor);
    SimplexGrid g{dim, step, floor, {}};
    g.points.reserve(simplex_grid_count(dim, step, floor));
    std::vector<long long> k(static_cast<std::size_t>(dim - 1), 0);
    enumerate(k, 0, grid_span(dim, step, floor), g, g.points);
    return g;
}

std::size_t simplex_grid_count(int dim, double step, double floor) {
    check_grid_params(dim, step, floor);
    const long long n = grid_span(dim, step, floor);
    // C(n + dim - 1, dim - 1), built incrementally so every partial product is exact.
    std::size_t c = 1;
    for (int i = 1; i < dim; ++i) c = c * static_cast<std::size_t>(n + i) / static_cast<std::size_t>(i);
    return c;
}

SimplexGrid make_line_grid(double p0, double step, double floor) {
    check_grid_params(3, step, floor);
    if (!(p0 >= floor && p0 <= 1.0 - 2.0 * floor)) {
        throw Error(ErrorCode::ConfigError, fmt::format("line p0 = {} outside [{}, {}]", p0, floor, 1.0 - 2.0 * floor));
    }
    SimplexGrid g{3, step, floor, {}};
    const auto n = static_cast<long long>(std::floor((1.0 - p0 - 2.0 * floor) / step + kGridEps));
    for (long long k = 0; k <= n; ++k) {
        const double p1 = floor + static_cast<double>(k) * step;
        g.points.push_back({p0, p1, 1.0 - p0 - p1});
    }
    return g;
}

double ScanRow::aux_value(std::string_view name) const {
    for (const auto& [key, value] : aux)
        if (key == name) return value;
    return std::numeric_limits<double>::quiet_NaN();
}

Scenario builtin_scenario(const std::string& name) {
    Scenario sc;
    sc.name = name;
    if (name == "main" || name == "energy") {
        sc.hamiltonian = hamiltonian_template("ladder");
        sc.observable = observable_template("x_ge");
    } else if (name == "landscape") {
        sc.hamiltonian = hamiltonian_template("landscape");
        sc.observable = observable_template("x_ge");
    } else if (name == "fast-h") {
        sc.hamiltonian = hamiltonian_template("ladder");
        sc.observable = observable_template("chain");
    } else {
        throw Error(ErrorCode::ConfigError, fmt::format("unknown scenario '{}' (main|landscape|fast-h|energy)", name));
    }
    return sc;
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
    const json j = parse_object(text, source);
    reject_unknown(j, "", {"scenario", "hamiltonian", "observable", "grid", "line", "beta", "beta_step"});

    std::string name = "main";
    if (j.contains("scenario")) {
        if (!j["scenario"].is_string()) throw Error(ErrorCode::ConfigError, "scenario: expected a string");
        name = j["scenario"].get<std::string>();
    }
    Scenario sc = builtin_scenario(name);
    if (j.contains("hamiltonian")) sc.hamiltonian = operator_field(j["hamiltonian"], "hamiltonian");
    if (j.contains("observable")) sc.observable = operator_field(j["observable"], "observable");
    if (sc.hamiltonian.rows() != sc.observable.rows()) {
        throw Error(ErrorCode::ConfigError, fmt::format("hamiltonian is {}-dimensional but observable is {}-dimensional",
                                                        sc.hamiltonian.rows(), sc.observable.rows()));
    }
    sc.grid.dim = static_cast<int>(sc.hamiltonian.rows());
    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (!g.is_object()) throw Error(ErrorCode::ConfigError, "grid: expected an object");
        reject_unknown(g, "grid.", {"step", "floor"});
        if (g.contains("step")) sc.grid.step = number_field(g["step"], "grid.step");
        if (g.contains("floor")) sc.grid.floor = number_field(g["floor"], "grid.floor");
    }
    check_grid_params(sc.grid.dim, sc.grid.step, sc.grid.floor);
    if (j.contains("line")) {
        const json& l = j["line"];
        if (!l.is_object()) throw Error(ErrorCode::ConfigError, "line: expected an object");
        reject_unknown(l, "line.", {"p0"});
        if (!l.contains("p0")) throw Error(ErrorCode::ConfigError, "line.p0: missing");
        if (sc.grid.dim != 3) throw Error(ErrorCode::ConfigError, "line: only defined for qutrit scenarios");
        sc.line_p0 = number_field(l["p0"], "line.p0");
    }
    if (j.contains("beta")) sc.beta = beta_field(j["beta"], "beta");
    if (j.contains("beta_step")) {
        sc.beta_step = number_field(j["beta_step"], "beta_step");
        if (!(sc.beta_step > 0.0 && sc.beta_step <= 1.0)) {
            throw Error(ErrorCode::ConfigError, fmt::format("beta_step: {} outside (0, 1]", sc.beta_step));
        }
    }
    return sc;
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

ScanRow xi_row(const std::vector<double>& p, const Scenario& sc) {
    const DensityMatrix rho = diag_state(p);
    const HermitianOperator h(sc.hamiltonian);
    const HermitianOperator a(sc.observable);
    const EigenFrame frame(rho, commutator_generator(rho, h), a);

    ScanRow row;
    row.point = p;
    double xi_rld = 1.0;
    double xi_log = 1.0;
    double xi_wy = 1.0;
    double degenerate = 0.0;
    try {
        const BetaOptimum opt = optimize_beta(frame, sc.beta_step);
        row.beta_star = opt.beta_star;
        row.xi_star = opt.value;
        xi_rld = coherent_ratio_xi(frame, MonotoneFunction::rld());
        xi_log = coherent_ratio_xi(frame, MonotoneFunction::log_mean());
        xi_wy = coherent_ratio_xi(frame, MonotoneFunction::wigner_yanase());
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateCoherentTerm) throw;
        row.beta_star = -1.0;
        row.xi_star = 1.0;
        degenerate = 1.0;
    }
    row.aux = {{"xi_rld", xi_rld}, {"xi_log", xi_log}, {"xi_wy", xi_wy},
               {"kappa", condition_number(rho)}, {"degenerate", degenerate}};
    return row;
}

std::optional<ScanRow> fast_h_row(const std::vector<double>& p, const Scenario& sc) {
    const DensityMatrix rho = diag_state(p);
    const HermitianOperator a(sc.observable);
    const auto speed = [&](const MonotoneFunction& f) {
        const HermitianOperator h = fast_hamiltonian(rho, a, f);
        return std::abs(observable_speed(commutator_generator(rho, h), a));
    };
    double sld = 0.0;
    try {
        sld = speed(MonotoneFunction::sld());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateEigenvalues || e.code() == ErrorCode::ZeroObservableCoherence)
            return std::nullopt;
        throw;
    }
    const BetaOptimum opt =
        minimize_over_beta([&](double beta) { return -speed(MonotoneFunction(beta)) / sld; }, sc.beta_step);

    ScanRow row;
    row.point = p;
    row.beta_star = opt.beta_star;
    const double ratio = -opt.value;
    row.xi_star = 1.0 / ratio;
    row.aux = {{"speed_ratio", ratio}, {"speed_sld", sld}, {"speed_best", ratio * sld}, {"kappa", condition_number(rho)}};
    return row;
}

std::optional<ScanRow> energy_row(const std::vector<double>& p, const Scenario& sc) {
    const DensityMatrix rho = diag_state(p);
    const HermitianOperator h(sc.hamiltonian);
    const HermitianOperator a(sc.observable);
    const MonotoneFunction f(sc.beta);
    const EnergyBoundReport er = energy_bounds(rho, h, f, std::nullopt, a);
    if (!(er.legacy_bound > 0.0)) return std::nullopt;

    ScanRow row;
    row.point = p;
    row.beta_star = sc.beta;
    try {
        row.xi_star = coherent_ratio_xi(EigenFrame(rho, commutator_generator(rho, h), a), f);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateCoherentTerm) throw;
        row.xi_star = 1.0;
    }
    row.aux = {{"bound_ratio", er.speed_bound / er.legacy_bound},
               {"kappa", er.kappa},
               {"speed_bound", er.speed_bound},
               {"legacy_bound", er.legacy_bound},
               {"qfi_c", er.qfi_c}};
    return row;
}

ScanResult scan_xi(const Scenario& sc, unsigned threads) {
    const auto points = scenario_points(sc);
    auto rows = parallel_map<std::optional<ScanRow>>(points.size(), threads,
                                                     [&](std::size_t i) { return std::optional(xi_row(points[i], sc)); });
    return collect(ScanKind::Xi, sc.grid.dim, std::move(rows));
}

ScanResult scan_fast_h(const Scenario& sc, unsigned threads) {
    const auto points = scenario_points(sc);
    auto rows = parallel_map<std::optional<ScanRow>>(points.size(), threads,
                                                     [&](std::size_t i) { return fast_h_row(points[i], sc); });
    return collect(ScanKind::FastH, sc.grid.dim, std::move(rows));
}

ScanResult scan_energy_bounds(const Scenario& sc, unsigned threads) {
    const auto points = scenario_points(sc);
    auto rows = parallel_map<std::optional<ScanRow>>(points.size(), threads,
                                                     [&](std::size_t i) { return energy_row(points[i], sc); });
    return collect(ScanKind::Energy, sc.grid.dim, std::move(rows));
}

void write_scan_csv(std::ostream& os, const ScanResult& r) {
    std::string header;
    for (int i = 0; i < r.dim; ++i) header += fmt::format("p{},", i);
    header += "beta_star,xi_star";
    const auto& cols = aux_columns(r.kind);
    for (const auto& c : cols) header += "," + c;
    os << header << '\n';
    for (const ScanRow& row : r.rows) {
        std::string line;
        for (double x : row.point) line += csv_real(x) + ",";
        line += csv_real(row.beta_star) + "," + csv_real(row.xi_star);
        for (const auto& c : cols) line += "," + csv_real(row.aux_value(c));
        os << line << '\n';
    }
}

std::string scan_summary_json(const ScanResult& r) {
    double max_ratio = -std::numeric_limits<double>::infinity();
    double min_xi = std::numeric_limits<double>::infinity();
    const char* ratio_key = r.kind == ScanKind::FastH ? "speed_ratio" : "bound_ratio";
    for (const ScanRow& row : r.rows) {
        min_xi = std::min(min_xi, row.xi_star);
        if (r.kind != ScanKind::Xi) max_ratio = std::max(max_ratio, row.aux_value(ratio_key));
    }
    return fmt::format("{{\"rows\": {}, \"skipped\": {}, \"max_ratio\": {}, \"min_xi\": {}}}", r.rows.size(), r.skipped,
                       format_real(max_ratio), format_real(min_xi));
}

ExperimentScenario parse_experiment(const std::string& text, const std::string& source) {
    const json j = parse_object(text, source);
    reject_unknown(j, "", {"preset", "rates", "drive", "t_decay", "beta_list", "window", "dt"});
    ExperimentScenario sc;
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) throw Error(ErrorCode::ConfigError, "preset: expected a string");
        sc.rates = decay_preset(j["preset"].get<std::string>());
    }
    if (j.contains("rates")) {
        const json& r = j["rates"];
        if (!r.is_object()) throw Error(ErrorCode::ConfigError, "rates: expected an object");
        reject_unknown(r, "rates.", {"gamma_fe", "gamma_eg"});
        if (r.contains("gamma_fe")) sc.rates.gamma_fe = number_field(r["gamma_fe"], "rates.gamma_fe");
        if (r.contains("gamma_eg")) sc.rates.gamma_eg = number_field(r["gamma_eg"], "rates.gamma_eg");
        if (!(sc.rates.gamma_fe > 0.0) || !(sc.rates.gamma_eg > 0.0)) {
            throw Error(ErrorCode::ConfigError, "rates: gamma_fe and gamma_eg must be positive");
        }
    }
    if (j.contains("drive")) {
        const json& d = j["drive"];
        if (!d.is_object()) throw Error(ErrorCode::ConfigError, "drive: expected an object");
        reject_unknown(d, "drive.", {"omega_ge", "omega_ef"});
        if (d.contains("omega_ge")) sc.drive.omega_ge = number_field(d["omega_ge"], "drive.omega_ge");
        if (d.contains("omega_ef")) sc.drive.omega_ef = number_field(d["omega_ef"], "drive.omega_ef");
        if (!(sc.drive.omega_ge >= 0.0) || !(sc.drive.omega_ef >= 0.0)) {
            throw Error(ErrorCode::ConfigError, "drive: Rabi rates must be >= 0");
        }
    }
    if (j.contains("t_decay")) {
        const json& t = j["t_decay"];
        if (!t.is_array() || t.empty()) throw Error(ErrorCode::ConfigError, "t_decay: expected a nonempty array");
        sc.t_decay.clear();
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double v = number_field(t[i], fmt::format("t_decay[{}]", i));
            if (v < 0.0) throw Error(ErrorCode::ConfigError, fmt::format("t_decay[{}]: {} is negative", i, v));
            sc.t_decay.push_back(v);
        }
    }
    if (j.contains("beta_list")) {
        const json& b = j["beta_list"];
        if (!b.is_array()) throw Error(ErrorCode::ConfigError, "beta_list: expected an array");
        sc.beta_list.clear();
        for (std::size_t i = 0; i < b.size(); ++i) sc.beta_list.push_back(beta_field(b[i], fmt::format("beta_list[{}]", i)));
        const auto has = [&](double v) { return std::find(sc.beta_list.begin(), sc.beta_list.end(), v) != sc.beta_list.end(); };
        if (!has(1.0) || !has(-1.0)) throw Error(ErrorCode::ConfigError, "beta_list: must contain 1 and -1");
    }
    if (j.contains("window")) sc.window = number_field(j["window"], "window");
    if (j.contains("dt")) sc.dt = number_field(j["dt"], "dt");
    if (!(sc.dt > 0.0) || !(sc.window >= 2.0 * sc.dt)) {
        throw Error(ErrorCode::ConfigError, fmt::format("window = {} must cover at least 3 samples of dt = {}", sc.window, sc.dt));
    }
    return sc;
}

ExperimentResult run_experiment(const ExperimentScenario& sc, unsigned threads) {
    ExperimentResult out;
    std::set<double> seen{1.0, -1.0};
    for (double b : sc.beta_list)
        if (seen.insert(b).second) out.extra_betas.push_back(b);

    ExperimentOptions opts;
    opts.window = sc.window;
    opts.dt = sc.dt;
    opts.extra_betas = out.extra_betas;
    const HermitianOperator a = x_ge();
    auto rows = parallel_map<std::optional<ExperimentRow>>(sc.t_decay.size(), threads, [&](std::size_t i) {
        try {
            return std::optional(experiment_point(sc.rates, sc.drive, sc.t_decay[i], a, opts));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NotPositiveDefinite) return std::optional<ExperimentRow>();
            throw;
        }
    });
    for (auto& r : rows) {
        if (r) {
            out.rows.push_back(std::move(*r));
        } else {
            ++out.skipped;
        }
    }
    return out;
}

void write_experiment_csv(std::ostream& os, const ExperimentResult& r) {
    std::string header = "t_decay,speed,bound_sld,bound_rld,xi_rld";
    for (double b : r.extra_betas) header += fmt::format(",bound_beta_{:g}", b);
    os << header << '\n';
    for (const ExperimentRow& row : r.rows) {
        std::string line = csv_real(row.t_decay) + "," + csv_real(row.speed) + "," + csv_real(row.bound_sld) + "," +
                           csv_real(row.bound_rld) + "," +
                           csv_real(row.xi_rld.value_or(std::numeric_limits<double>::quiet_NaN()));
        for (double b : row.extra_bounds) line += "," + csv_real(b);
        os << line << '\n';
    }
}

std::string experiment_summary_json(const ExperimentResult& r) {
    double max_ratio = -std::numeric_limits<double>::infinity();
    double min_xi = std::numeric_limits<double>::infinity();
    std::string exact = "[";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const ExperimentRow& row = r.rows[i];
        if (row.bound_sld > 0.0) max_ratio = std::max(max_ratio, row.bound_rld / row.bound_sld);
        if (row.xi_rld) min_xi = std::min(min_xi, *row.xi_rld);
        exact += (i ? ", " : "") + format_real(row.speed_exact);
    }
    exact += "]";
    return fmt::format("{{\"rows\": {}, \"skipped\": {}, \"max_ratio\": {}, \"min_xi\": {}, \"speed_exact\": {}}}",
                       r.rows.size(), r.skipped, format_real(max_ratio), format_real(min_xi), exact);
}

}  // namespace qsl
