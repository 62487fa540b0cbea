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

#include "qsl/io.hpp"

#include <cmath>
#include <cstddef>
#include <optional>

#include <fmt/format.h>

namespace qsl {

namespace {

using nlohmann::json;

// Minimal object writer; keeps field order and number formatting under control.
class ObjectWriter {
public:
    ObjectWriter& field(std::string_view name, double v) { return raw(name, format_real(v)); }
    ObjectWriter& field(std::string_view name, const std::optional<double>& v) {
        return raw(name, v ? format_real(*v) : std::string("null"));
    }
    ObjectWriter& raw(std::string_view name, const std::string& value) {
        out_ += first_ ? "{" : ", ";
        first_ = false;
        out_ += fmt::format("\"{}\": {}", name, value);
        return *this;
    }
    std::string str() const { return first_ ? "{}" : out_ + "}"; }

private:
    std::string out_;
    bool first_ = true;
};

std::string rows_json(const ComplexMatrix& m, bool imag) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += format_real(imag ? m(i, j).imag() : m(i, j).real());
        }
        out += "]";
    }
    return out + "]";
}

std::vector<std::vector<double>> read_rows(const json& j, const std::string& field, std::size_t d) {
    if (!j.is_array() || j.size() != d) {
        throw Error(ErrorCode::ConfigError, fmt::format("{}: expected {} rows", field, d));
    }
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < d; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != d) {
            throw Error(ErrorCode::ConfigError, fmt::format("{}[{}]: expected {} numbers", field, i, d));
        }
        std::vector<double> r;
        for (std::size_t k = 0; k < d; ++k) {
            if (!row[k].is_number()) {
                throw Error(ErrorCode::ConfigError, fmt::format("{}[{}][{}]: not a number", field, i, k));
            }
            r.push_back(row[k].get<double>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

std::string format_real(double x) {
    if (!std::isfinite(x)) return "null";
    return fmt::format("{:.17g}", x);
}

std::string matrix_to_json(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix_to_json needs a square matrix");
    return ObjectWriter()
        .raw("dim", std::to_string(m.rows()))
        .raw("re", rows_json(m, false))
        .raw("im", rows_json(m, true))
        .str();
}

ComplexMatrix matrix_from_json(const json& j, const std::string& field) {
    if (!j.is_object()) throw Error(ErrorCode::ConfigError, fmt::format("{}: expected an object", field));
    if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
        throw Error(ErrorCode::ConfigError, fmt::format("{}.dim: expected a positive integer", field));
    }
    const auto d = static_cast<std::size_t>(j["dim"].get<long long>());
    if (!j.contains("re")) throw Error(ErrorCode::ConfigError, fmt::format("{}.re: missing", field));
    const auto re = read_rows(j["re"], field + ".re", d);
    std::vector<std::vector<double>> im;
    if (j.contains("im")) im = read_rows(j["im"], field + ".im", d);

    ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(re[r][c], im.empty() ? 0.0 : im[r][c]);
    return m;
}

std::string to_json(const GeometryReport& r) {
    return ObjectWriter()
        .field("var_f", r.var_f)
        .field("var_f_coherent", r.var_f_coherent)
        .field("var_incoherent", r.var_incoherent)
        .field("qfi_f", r.qfi_f)
        .field("qfi_f_coherent", r.qfi_f_coherent)
        .field("fisher_incoherent", r.fisher_incoherent)
        .raw("log_derivative", matrix_to_json(r.log_derivative))
        .str();
}

std::string to_json(const BoundReport& r) {
    return ObjectWriter()
        .field("beta", r.beta)
        .field("speed", r.speed)
        .field("bound_nonsplit", r.bound_nonsplit)
        .field("bound_split", r.bound_split)
        .field("coherent_term", r.coherent_term)
        .field("incoherent_term", r.incoherent_term)
        .field("xi", r.xi)
        .field("saturation_gap", r.saturation_gap)
        .str();
}

std::string to_json(const EnergyBoundReport& r) {
    return ObjectWriter()
        .field("kappa", r.kappa)
        .field("qfi_c", r.qfi_c)
        .field("qfi_c_bound_ratio", r.qfi_c_bound_ratio)
        .field("qfi_c_bound_kappa", r.qfi_c_bound_kappa)
        .field("qfi_c_bound_seminorm", r.qfi_c_bound_seminorm)
        .field("speed_bound", r.speed_bound)
        .field("legacy_bound", r.legacy_bound)
        .str();
}

json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::ConfigError, fmt::format("{}:{}:{}: invalid JSON ({})", source, line, col, e.what()));
    }
}

}  // namespace qsl
