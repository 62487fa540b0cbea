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
 * Seeded random instances for property sweeps and the CLI self-test.
 */
#pragma once

#include <random>

#include "qsl/core.hpp"

namespace qsl {

using Rng = std::mt19937_64;

/// Haar-distributed unitary (QR of a Ginibre matrix with phases fixed).
ComplexMatrix random_unitary(Rng& rng, Eigen::Index d);

/// Hermitian with i.i.d. Gaussian entries.
ComplexMatrix random_hermitian(Rng& rng, Eigen::Index d);

/// Traceless Hermitian.
TangentOperator random_tangent(Rng& rng, Eigen::Index d);

/// Flat-Dirichlet spectrum shifted by `min_weight` before normalization, in a
/// Haar-random basis.
DensityMatrix random_density(Rng& rng, Eigen::Index d, double min_weight = 1e-3);

}  // namespace qsl
