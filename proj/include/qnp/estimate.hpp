// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "qnp/estimate_types.hpp"

namespace qnp {

// Rates of the three spins: gamma1, gamma2 form the correlated pair, gamma3
// is the uncorrelated (data) spin. The dq method uses only the pair.
struct Rates {
    double gamma1;
    double gamma2;
    double gamma3;

    static Rates from_t2(double t2_1, double t2_2, double t2_3) {
        return {1.0 / t2_1, 1.0 / t2_2, 1.0 / t2_3};
    }
};

/// Model value at time t for a given correlation factor: the QEC entanglement
/// fidelity or the double-quantum decay amplitude.
double model_value(Method method, const Rates& rates, double c, double t);

/// Noiseless decay curve for the requested method. The qec variant runs the
/// full three-qubit protocol with the twelve-operator engineered mixture; the
/// dq variant runs the echo-sequence simulation.
DecayCurve engineered_curve(Method method, const Rates& rates, double c,
                            const std::vector<double>& t_grid);

/// Adds independent zero-mean Gaussian perturbations of standard deviation
/// noise_sigma (absolute, full-scale = 1) to every value; deterministic per
/// seed; records the sigma on each point.
DecayCurve add_measurement_noise(const DecayCurve& curve, double noise_sigma,
                                 std::uint64_t seed);

/// Weighted least-squares fit of the method's closed form over c in [0, 1]
/// by golden-section search (|delta c| < 1e-6), with a residual-resampling
/// bootstrap confidence interval (central 68%).
FitResult fit_correlation(const DecayCurve& curve, const Rates& rates,
                          Method method, int n_boot = 1000,
                          std::uint64_t boot_seed = 12345);

/// Point fit only (no bootstrap).
FitResult fit_correlation_point(const DecayCurve& curve, const Rates& rates,
                                Method method);

FitResult bootstrap_ci(const DecayCurve& curve, const Rates& rates,
                       Method method, int n_boot, std::uint64_t seed);

}  // namespace qnp
