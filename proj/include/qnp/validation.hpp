// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qnp {

struct CheckResult {
    std::string name;
    double max_deviation;
    double tolerance;
    bool pass;
};

struct ValidationOptions {
    bool table_as_printed = false;  // run the trace check on the quoted table
    std::uint64_t mc_samples = 100000;
    std::uint64_t seed = 1;
};

/// Cross-representation consistency suite: mixture vs analytic channel,
/// weight-sum/trace preservation (with the quoted-table defect surfaced),
/// twelve-operator extension, closed-form entanglement fidelity, code error
/// signatures, and Monte Carlo convergence.
std::vector<CheckResult> run_validation_checks(const ValidationOptions& opts);

}  // namespace qnp
