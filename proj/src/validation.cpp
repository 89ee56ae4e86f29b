// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#include "qnp/validation.hpp"

#include <cmath>

#include "qnp/dephase.hpp"
#include "qnp/qec3.hpp"
#include "qnp/rng.hpp"

namespace qnp {

namespace {

const std::vector<double> kGammaGrid = {0.2, 1.0, 4.0};
const std::vector<double> kCorrGrid = {0.0, 0.25, 0.5, 0.75, 1.0};
const std::vector<double> kTimeGrid = {0.0,  0.05, 0.1,  0.15, 0.2,
                                       0.25, 0.3,  0.35, 0.4};

DephasingParams pair_params(double g1, double g2, double c, double t) {
    Eigen::VectorXd g(2);
    g << g1, g2;
    Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(2, 2);
    corr(0, 1) = corr(1, 0) = c;
    return DephasingParams(2, std::move(g), std::move(corr), t);
}

DensityMatrix random_state(int n_qubits, std::uint64_t seed) {
    const int dim = 1 << n_qubits;
    GaussianStream g(seed, 0);
    ComplexMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) a(r, c) = Complex(g.next(), g.next());
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace();
    return DensityMatrix::density(n_qubits, std::move(rho), 1e-9);
}

CheckResult check_mixture_vs_analytic() {
    double dev = 0.0;
    std::uint64_t state_seed = 100;
    for (double g1 : kGammaGrid)
        for (double g2 : kGammaGrid)
            for (double c : kCorrGrid)
                for (double t : kTimeGrid) {
                    const auto p = pair_params(g1, g2, c, t);
                    const auto mix = kraus_two_qubit(p);
                    const auto rho = random_state(2, state_seed++);
                    const auto d = (apply_mixture(rho, mix).mat() -
                                    analytic_dephase(rho, p).mat())
                                       .cwiseAbs()
                                       .maxCoeff();
                    dev = std::max(dev, d);
                }
    return {"two-qubit mixture equals analytic channel", dev, 1e-10,
            dev <= 1e-10};
}

CheckResult check_trace_preservation(bool as_printed) {
    double dev = 0.0;
    for (double g1 : kGammaGrid)
        for (double g2 : kGammaGrid)
            for (double c : kCorrGrid)
                for (double t : kTimeGrid) {
                    const auto p = pair_params(g1, g2, c, t);
                    const auto table = as_printed
                                           ? kraus_two_qubit_table_as_printed(p)
                                           : kraus_two_qubit_table(p);
                    dev = std::max(dev, std::abs(table.weight_sum() - 1.0));
                }
    const std::string name =
        as_printed ? "weight sum = 1 (table as printed)" : "weight sum = 1";
    return {name, dev, 1e-12, dev <= 1e-12};
}

CheckResult check_printed_defect_formula() {
    // The quoted table over-counts by exactly exp(-(g1+g2) t) sinh(x).
    double dev = 0.0;
    for (double g1 : kGammaGrid)
        for (double g2 : kGammaGrid)
            for (double c : kCorrGrid)
                for (double t : kTimeGrid) {
                    const auto p = pair_params(g1, g2, c, t);
                    const double defect =
                        kraus_two_qubit_table_as_printed(p).weight_sum() - 1.0;
                    const double expected =
                        std::exp(-(g1 + g2) * t) *
                        std::sinh(2.0 * c * t * std::sqrt(g1 * g2));
                    dev = std::max(dev, std::abs(defect - expected));
                }
    return {"quoted-table defect equals exp(-(g1+g2)t) sinh(x)", dev, 1e-12,
            dev <= 1e-12};
}

CheckResult check_three_qubit_mixture() {
    double dev = 0.0;
    std::uint64_t state_seed = 5000;
    Eigen::VectorXd g3(3);
    for (double g1 : kGammaGrid)
        for (double c : kCorrGrid)
            for (double t : kTimeGrid) {
                const double g2 = 1.0 / 0.24, gamma3 = 1.0 / 1.2;
                const auto mix =
                    kraus_three_qubit(pair_params(g1, g2, c, t), gamma3);
                g3 << g1, g2, gamma3;
                Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(3, 3);
                corr(0, 1) = corr(1, 0) = c;
                const DephasingParams full(3, g3, corr, t);
                const auto rho = random_state(3, state_seed++);
                const auto d = (apply_mixture(rho, mix).mat() -
                                analytic_dephase(rho, full).mat())
                                   .cwiseAbs()
                                   .maxCoeff();
                dev = std::max(dev, d);
            }
    return {"twelve-operator mixture equals analytic channel", dev, 1e-10,
            dev <= 1e-10};
}

CheckResult check_closed_form_fe() {
    double dev = 0.0;
    for (double g1 : kGammaGrid)
        for (double g2 : kGammaGrid)
            for (double g3 : kGammaGrid)
                for (double c : kCorrGrid)
                    for (double t : kTimeGrid) {
                        Eigen::VectorXd g(3);
                        g << g1, g2, g3;
                        Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(3, 3);
                        corr(0, 1) = corr(1, 0) = c;
                        const DephasingParams p(3, g, corr, t);
                        const QecEvaluator eval(make_channel(p));
                        const double fe = entanglement_fidelity(eval, t).f_e;
                        dev = std::max(
                            dev, std::abs(fe - closed_form_fe(g1, g2, g3, c, t)));
                    }
    return {"QEC simulation matches closed-form fidelity", dev, 1e-9,
            dev <= 1e-9};
}

CheckResult check_code_signatures() {
    double dev = 0.0;
    const auto run = [&](const UnitaryOp& err, double fx, double fy, double fz) {
        const QecEvaluator eval(make_channel(err));
        const auto rep = entanglement_fidelity(eval);
        dev = std::max({dev, std::abs(rep.f_x - fx), std::abs(rep.f_y - fy),
                        std::abs(rep.f_z - fz)});
    };
    run(identity_op(3), 1, 1, 1);
    for (int q = 0; q < 3; ++q) run(pauli(Pauli::Z, q, 3), 1, 1, 1);
    run(pauli(Pauli::Z, 0, 3) * pauli(Pauli::Z, 1, 3), -1, -1, 1);
    run(pauli(Pauli::Z, 0, 3) * pauli(Pauli::Z, 2, 3), -1, -1, 1);
    run(pauli(Pauli::Z, 1, 3) * pauli(Pauli::Z, 2, 3), -1, -1, 1);
    run(pauli(Pauli::Z, 0, 3) * pauli(Pauli::Z, 1, 3) * pauli(Pauli::Z, 2, 3),
        -1, -1, 1);
    return {"code corrects single Z, flags double/triple Z", dev, 1e-12,
            dev <= 1e-12};
}

CheckResult check_monte_carlo(std::uint64_t n_samples, std::uint64_t seed) {
    // Every element-wise sample mean must sit within 4 standard errors of the
    // analytic factor; the Gaussian phase makes the per-sample variance of
    // the real part (1 + m^4)/2 - m^2 and of the imaginary part (1 - m^4)/2.
    const auto p = pair_params(1.0 / 2.1, 1.0 / 0.24, 0.5, 0.1);
    double worst = 0.0;  // deviation measured in standard errors
    const ComplexMatrix factors = monte_carlo_factors(p, n_samples, seed);
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            const double m = decay_factor(static_cast<std::uint32_t>(k),
                                          static_cast<std::uint32_t>(l), p);
            const double m4 = m * m * m * m;
            const double var_re = 0.5 * (1.0 + m4) - m * m;
            const double var_im = 0.5 * (1.0 - m4);
            const double n = static_cast<double>(n_samples);
            // zero-variance entries (the diagonal) must be exact up to
            // floating-point round-off
            if (var_re > 1e-30)
                worst = std::max(worst,
                                 std::abs(factors(k, l).real() - m) /
                                     std::sqrt(var_re / n));
            else if (std::abs(factors(k, l).real() - m) > 1e-12)
                worst = std::max(worst, 1e30);
            if (var_im > 1e-30)
                worst = std::max(worst, std::abs(factors(k, l).imag()) /
                                            std::sqrt(var_im / n));
            else if (std::abs(factors(k, l).imag()) > 1e-12)
                worst = std::max(worst, 1e30);
        }
    return {"Monte Carlo factors within 4 standard errors", worst, 4.0,
            worst <= 4.0};
}

}  // namespace

std::vector<CheckResult> run_validation_checks(const ValidationOptions& opts) {
    std::vector<CheckResult> results;
    results.push_back(check_mixture_vs_analytic());
    results.push_back(check_trace_preservation(opts.table_as_printed));
    results.push_back(check_printed_defect_formula());
    results.push_back(check_three_qubit_mixture());
    results.push_back(check_closed_form_fe());
    results.push_back(check_code_signatures());
    results.push_back(check_monte_carlo(opts.mc_samples, opts.seed));
    return results;
}

}  // namespace qnp
