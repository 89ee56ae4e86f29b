// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnp/curve_io.hpp"
#include "qnp/estimate.hpp"
#include "qnp/nmrsim.hpp"

namespace qnp {

/// Thrown on invalid configuration; the CLI maps it to exit code 2. The
/// message names the violated invariant.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TimeGrid {
    double start = 0.0;
    double stop = 0.32;
    int count = 33;

    std::vector<double> points() const;
};

/// Parses "start:stop:count" with inclusive endpoints.
TimeGrid parse_time_grid(const std::string& text);

/// Parses a comma-separated list of correlation factors.
std::vector<double> parse_c_list(const std::string& text);

// Everything a simulation or fit run needs. Defaults describe the acetyl
// chloride system: T2 = (2.1, 0.24, 1.2) s for (C1, C2, M) with the proton as
// the data spin. Offsets and the 50 Hz C1-C2 coupling are placeholders, not
// measured values; they only matter for sequence-level simulations where the
// echo refocuses them anyway.
struct RunConfig {
    std::vector<double> t2_s = {2.1, 0.24, 1.2};
    std::vector<double> offsets_hz = {-12000.0, 12000.0, 0.0};
    std::vector<std::vector<double>> j_hz = {
        {0.0, 50.0, 0.0}, {50.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    std::vector<double> c_values = {0.0, 0.5, 1.0};
    TimeGrid grid;
    Method method = Method::qec;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t mc_samples = 100000;
    std::string output = "curves";
    CurveFormat format = CurveFormat::csv;

    /// Throws ConfigError naming the violated invariant.
    void validate() const;

    Rates rates() const;
    SpinSystem spin_system() const;

    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_json_file(const std::string& path);
};

}  // namespace qnp
