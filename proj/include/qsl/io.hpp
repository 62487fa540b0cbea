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
 * JSON serialization. Matrices use {"dim": d, "re": [[...]], "im": [[...]]},
 * row-major, every real written with 17 significant digits so a round trip
 * is exact.
 */
#pragma once

#include <string>

#include <json.hpp>

#include "qsl/core.hpp"
#include "qsl/geometry.hpp"
#include "qsl/speed_limits.hpp"

namespace qsl {

/// Formats a double with 17 significant digits; non-finite values become null.
std::string format_real(double x);

std::string matrix_to_json(const ComplexMatrix& m);

/// Throws ConfigError naming `field` when the object is malformed.
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& field = "matrix");

std::string to_json(const GeometryReport& r);
std::string to_json(const BoundReport& r);
std::string to_json(const EnergyBoundReport& r);

/// Parses JSON text; syntax errors become ConfigError with line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& source);

}  // namespace qsl
