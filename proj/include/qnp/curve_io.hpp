// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "qnp/estimate_types.hpp"

namespace qnp {

/// Thrown on malformed curve files; the CLI maps it to exit code 3.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CurveFormat { csv, json };

CurveFormat format_from_name(const std::string& name);
std::string format_name(CurveFormat f);

/// CSV with header "t_seconds,value,sigma", 17 significant digits.
std::string curve_to_csv(const DecayCurve& curve);
DecayCurve curve_from_csv(const std::string& text, Method method);

/// JSON object with a metadata block; numbers round-trip losslessly.
std::string curve_to_json(const DecayCurve& curve);
DecayCurve curve_from_json(const std::string& text);

void write_curve_file(const DecayCurve& curve,
                      const std::filesystem::path& path, CurveFormat format);

/// Reads .json as JSON, anything else as CSV (the fitting input format).
DecayCurve read_curve_file(const std::filesystem::path& path,
                           Method fallback_method);

std::string fit_result_to_json(const FitResult& fit, Method method);

}  // namespace qnp
