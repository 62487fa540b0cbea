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
 * Symmetric normalized operator monotone functions and their scalar means.
 *
 * The shipped family is parameterized by beta in [-1, 1]:
 *
 *   f(x) = beta (1-beta) (x-1)^2 / ((x^beta - 1)(x^(1-beta) - 1)),  beta in [-1, 1/2) \ {0}
 *   f(x) = (x-1) / log x,                                           beta = 0
 *   f(x) = ((1 + x^beta) / 2)^(1/beta),                             beta in [1/2, 1]
 *
 * with the mean m(x, y) = x f(y/x). beta = 1 gives the arithmetic mean (SLD),
 * beta = -1 the harmonic mean (RLD), beta = 1/2 Wigner-Yanase.
 */
#pragma once

#include <string_view>

#include "qsl/core.hpp"

namespace qsl {

/// Anything that supplies a symmetric mean m(x, y) of two positive reals.
/// Geometry code only talks to this interface.
class MeanProvider {
public:
    virtual ~MeanProvider() = default;
    virtual double mean(double x, double y) const = 0;
};

class MonotoneFunction final : public MeanProvider {
public:
    /// Throws InvalidArgument unless -1 <= beta <= 1.
    explicit MonotoneFunction(double beta);

    static MonotoneFunction sld() { return MonotoneFunction(1.0); }
    static MonotoneFunction wigner_yanase() { return MonotoneFunction(0.5); }
    static MonotoneFunction rld() { return MonotoneFunction(-1.0); }
    static MonotoneFunction log_mean() { return MonotoneFunction(0.0); }

    /// Accepts a decimal or one of the aliases sld, wy, rld, log.
    static MonotoneFunction parse(std::string_view text);

    double beta() const noexcept { return beta_; }

    /// f(x) for x > 0; throws NonPositiveArgument otherwise.
    double operator()(double x) const;

    /// m(x, y) = x f(y/x) for x, y > 0. Returns (x+y)/2 when |x/y - 1| < 1e-8.
    double mean(double x, double y) const override;

private:
    double beta_;
};

/// f_beta(x); free-function form of MonotoneFunction::operator().
double f_eval(const MonotoneFunction& f, double x);

/// Symmetric matrix of means m(p_i, p_j) over a state's spectrum. The
/// diagonal is exactly p_i and every entry lies between p_i and p_j.
struct MeanMatrix {
    RealMatrix values;

    Eigen::Index dim() const { return values.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return values(i, j); }
};

MeanMatrix mean_matrix(const MeanProvider& f, const RealVector& p);
MeanMatrix mean_matrix(const MeanProvider& f, const DensityMatrix& rho);

}  // namespace qsl
