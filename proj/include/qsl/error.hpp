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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsl {

enum class ErrorCode {
    NotHermitian,
    TraceNotOne,
    NotPositiveDefinite,
    DimensionMismatch,
    NonPositiveArgument,
    InvalidArgument,
    InvalidDistribution,
    SingularSuperoperator,
    DegenerateCoherentTerm,
    ZeroTangent,
    ZeroObservable,
    DegenerateEigenvalues,
    ZeroObservableCoherence,
    NegativeTime,
    StateValidationDrift,
    WindowTooShort,
    InvalidInteraction,
    BoundViolation,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The message names the violated
/// invariant and the offending value.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// True for malformed user input, as opposed to a numerical-validation
    /// failure; the CLI maps the two onto different exit codes.
    bool is_config_error() const noexcept { return code_ == ErrorCode::ConfigError; }

private:
    ErrorCode code_;
};

}  // namespace qsl
