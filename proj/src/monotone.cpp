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

#include "qsl/monotone.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <string>

#include <fmt/format.h>

namespace qsl {

namespace {

constexpr double kTaylorCrossover = 1e-6;
constexpr double kDegenerateMeanTol = 1e-8;

// Second-order coefficient of f(1 + u) = 1 + u/2 + c u^2 + O(u^3).
double taylor_c2(double beta) {
    if (beta >= 0.5) return (beta - 1.0) / 8.0;
    return -(1.0 - beta + beta * beta) / 12.0;
}

}  // namespace

MonotoneFunction::MonotoneFunction(double beta) : beta_(beta) {
    if (!(beta >= -1.0 && beta <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("beta = {} outside [-1, 1]", beta));
    }
}

MonotoneFunction MonotoneFunction::parse(std::string_view text) {
    std::string s(text);
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    if (s == "sld") return sld();
    if (s == "wy") return wigner_yanase();
    if (s == "rld") return rld();
    if (s == "log") return log_mean();
    if (s.empty()) throw Error(ErrorCode::ConfigError, "empty beta value");
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size()) {
        throw Error(ErrorCode::ConfigError,
                    fmt::format("cannot parse beta '{}': expected a decimal or sld|wy|rld|log", s));
    }
    if (!(value >= -1.0 && value <= 1.0)) {
        throw Error(ErrorCode::ConfigError, fmt::format("beta = {} outside [-1, 1]", value));
    }
    return MonotoneFunction(value);
}

double MonotoneFunction::operator()(double x) const {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(ErrorCode::NonPositiveArgument, fmt::format("f_beta requires x > 0, got {}", x));
    }
    if (x == 1.0) return 1.0;
    const double b = beta_;
    if (b == 1.0) return 0.5 * (1.0 + x);
    if (b == -1.0) return 2.0 * x / (1.0 + x);

    const double u = x - 1.0;
    if (std::abs(u) < kTaylorCrossover) return 1.0 + 0.5 * u + taylor_c2(b) * u * u;

    const double t = std::log(x);
    if (b >= 0.5) {
        // ((1 + x^b)/2)^(1/b)
        const double s = 0.5 * (1.0 + std::exp(b * t));
        return std::exp(std::log(s) / b);
    }
    if (b == 0.0) return u / t;
    // b (1-b) (x-1)^2 / ((x^b - 1)(x^(1-b) - 1)), factored to avoid overflow.
    return b * (1.0 - b) * (u / std::expm1(b * t)) * (u / std::expm1((1.0 - b) * t));
}

double MonotoneFunction::mean(double x, double y) const {
    if (!(x > 0.0) || !(y > 0.0)) {
        throw Error(ErrorCode::NonPositiveArgument, fmt::format("mean requires x, y > 0, got ({}, {})", x, y));
    }
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    if (hi / lo - 1.0 < kDegenerateMeanTol) return 0.5 * (lo + hi);
    if (beta_ == 1.0) return 0.5 * (lo + hi);
    if (beta_ == -1.0) return 2.0 * lo * hi / (lo + hi);
    const double m = lo * (*this)(hi / lo);
    return std::clamp(m, lo, hi);
}

double f_eval(const MonotoneFunction& f, double x) { return f(x); }

MeanMatrix mean_matrix(const MeanProvider& f, const RealVector& p) {
    const Eigen::Index d = p.size();
    MeanMatrix out{RealMatrix(d, d)};
    for (Eigen::Index i = 0; i < d; ++i) {
        out.values(i, i) = p(i);
        for (Eigen::Index j = i + 1; j < d; ++j) {
            const double m = f.mean(p(i), p(j));
            out.values(i, j) = m;
            out.values(j, i) = m;
        }
    }
    return out;
}

MeanMatrix mean_matrix(const MeanProvider& f, const DensityMatrix& rho) {
    return mean_matrix(f, rho.eigenvalues());
}

}  // namespace qsl
