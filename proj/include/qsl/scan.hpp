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
 * Probability-simplex scans over diagonal states rho = diag(p): optimal-beta
 * maps, fast-Hamiltonian speed ratios and energy-bound ratios, plus the
 * experiment replica driver. Scenarios come from JSON; output is CSV with
 * %.12g floats and a JSON summary sidecar.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "qsl/core.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/speed_limits.hpp"

namespace qsl {

inline constexpr double kDefaultGridStep = 0.005;
inline constexpr double kDefaultGridFloor = 0.0025;

/// Points with free coordinates floor + k * step (k >= 0) and the last
/// coordinate fixed by normalization, kept when it is >= floor. Lexicographic
/// order, first coordinate outermost.
struct SimplexGrid {
    int dim = 3;
    double step = kDefaultGridStep;
    double floor = kDefaultGridFloor;
    std::vector<std::vector<double>> points;
};

SimplexGrid make_simplex_grid(int dim, double step, double floor);

/// C(N + dim - 1, dim - 1) with N = floor((1 - dim * floor) / step).
std::size_t simplex_grid_count(int dim, double step, double floor);

/// A line through the qutrit simplex with p0 fixed and p1 = floor + k * step.
SimplexGrid make_line_grid(double p0, double step, double floor);

struct ScanRow {
    std::vector<double> point;
    double beta_star = -1.0;
    double xi_star = 1.0;
    std::vector<std::pair<std::string, double>> aux;

    /// NaN when absent.
    double aux_value(std::string_view name) const;
};

enum class ScanKind { Xi, FastH, Energy };

struct Scenario {
    std::string name = "main";
    ComplexMatrix hamiltonian;
    ComplexMatrix observable;
    SimplexGrid grid;
    std::optional<double> line_p0;  ///< scan a line instead of the full simplex
    double beta = -1.0;              ///< fixed beta for energy scans
    double beta_step = kDefaultBetaStep;
};

/// Built-in scenarios: "main" (qutrit ladder, A = X_ge), "landscape"
/// (H ~ |0><1| + 4|1><2| + |0><2|, A = X_ge), "fast-h" (ladder H,
/// A = |0><1| + |1><2| + h.c.), "energy" (ladder H, A = X_ge, beta = -1).
Scenario builtin_scenario(const std::string& name);

/// Reads a scenario object. Recognized fields: scenario, hamiltonian,
/// observable (template name or matrix JSON), grid {step, floor},
/// line {p0}, beta, beta_step. Unknown fields are rejected.
Scenario parse_scenario(const std::string& text, const std::string& source = "config");

struct ScanResult {
    ScanKind kind = ScanKind::Xi;
    int dim = 3;
    std::vector<ScanRow> rows;
    std::size_t skipped = 0;
};

unsigned default_threads();

/// Runs `work(i)` for i in [0, n) on `threads` workers (0: all cores) and
/// returns the results in index order. The first exception by index is
/// rethrown after all workers finish.
template <typename T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& work) {
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(work(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads ? threads : default_threads(),
                                                           static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

ScanRow xi_row(const std::vector<double>& p, const Scenario& sc);
/// Empty when the point has degenerate eigenvalues in the support of A.
std::optional<ScanRow> fast_h_row(const std::vector<double>& p, const Scenario& sc);
std::optional<ScanRow> energy_row(const std::vector<double>& p, const Scenario& sc);

ScanResult scan_xi(const Scenario& sc, unsigned threads = 0);
ScanResult scan_fast_h(const Scenario& sc, unsigned threads = 0);
ScanResult scan_energy_bounds(const Scenario& sc, unsigned threads = 0);

void write_scan_csv(std::ostream& os, const ScanResult& r);
/// {"rows", "skipped", "max_ratio", "min_xi"}; max_ratio is null for xi scans.
std::string scan_summary_json(const ScanResult& r);

struct ExperimentScenario {
    DecayChainSpec rates;
    DriveSpec drive;
    std::vector<double> t_decay = default_t_decay();
    std::vector<double> beta_list{1.0, -1.0};
    double window = kDefaultSpeedWindow;
    double dt = kDefaultDt;
};

/// Fields: preset, rates {gamma_fe, gamma_eg}, drive {omega_ge, omega_ef},
/// t_decay, beta_list (must contain 1 and -1), window, dt.
ExperimentScenario parse_experiment(const std::string& text, const std::string& source = "config");

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::vector<double> extra_betas;
    std::size_t skipped = 0;
};

/// Rows whose prepared state fails validation are skipped and counted.
ExperimentResult run_experiment(const ExperimentScenario& sc, unsigned threads = 0);

void write_experiment_csv(std::ostream& os, const ExperimentResult& r);
std::string experiment_summary_json(const ExperimentResult& r);

}  // namespace qsl
