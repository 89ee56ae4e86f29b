// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "qnp/opcore.hpp"

namespace qnp {

// Correlated Gaussian dephasing over n qubits: each qubit accumulates a random
// z phase with variance gamma_i*t/2 and pairwise correlation corr(i,j). The
// channel multiplies every matrix element (k,l) by a closed-form decay factor.
class DephasingParams {
public:
    DephasingParams(int n_qubits, Eigen::VectorXd gamma, Eigen::MatrixXd corr,
                    double t);

    /// Uncorrelated convenience constructor (corr = identity).
    static DephasingParams uncorrelated(Eigen::VectorXd gamma, double t);

    int n_qubits() const { return n_qubits_; }
    const Eigen::VectorXd& gamma() const { return gamma_; }
    const Eigen::MatrixXd& corr() const { return corr_; }
    double t() const { return t_; }

    DephasingParams with_t(double t) const {
        return DephasingParams(n_qubits_, gamma_, corr_, t);
    }

    /// Covariance of the sampled phase vector: Sigma_ii = gamma_i t / 2,
    /// Sigma_ij = c_ij t sqrt(gamma_i gamma_j) / 2.
    Eigen::MatrixXd covariance() const;

private:
    int n_qubits_;
    Eigen::VectorXd gamma_;
    Eigen::MatrixXd corr_;
    double t_;
};

/// Per-qubit coherence signature of an element pair (k,l):
/// eta_i = ((-1)^{k_i} - (-1)^{l_i}) / 2, zero exactly where the bits agree.
std::vector<int> eta_vector(std::uint32_t k, std::uint32_t l, int n_qubits);

/// log of decay_factor; exact exponent arithmetic, used by tests that verify
/// cancellations to machine precision.
double decay_exponent(std::uint32_t k, std::uint32_t l,
                      const DephasingParams& params);

/// Multiplier applied to element |k><l| by the channel; 1 when k == l.
double decay_factor(std::uint32_t k, std::uint32_t l,
                    const DephasingParams& params);

/// Exact (averaged) channel: element-wise decay of rho.
DensityMatrix analytic_dephase(const DensityMatrix& rho,
                               const DephasingParams& params);

/// Sampling realization: draws phase vectors from the Gaussian and averages
/// the conjugated states. Deterministic for fixed (seed, n_samples) at any
/// thread count; max_threads = 0 picks the hardware default.
DensityMatrix monte_carlo_dephase(const DensityMatrix& rho,
                                  const DephasingParams& params,
                                  std::uint64_t n_samples, std::uint64_t seed,
                                  unsigned max_threads = 0);

/// Element-wise sample means of the decay factors (diagnostics / validation).
ComplexMatrix monte_carlo_factors(const DephasingParams& params,
                                  std::uint64_t n_samples, std::uint64_t seed,
                                  unsigned max_threads = 0);

// A channel expressed as conjugation by unitaries combined with scalar
// coefficients. The coefficients sum to 1 (trace preservation) but individual
// entries may be negative: the engineered-noise protocol adds separately
// measured experiment outcomes with classical coefficients, so a signed
// combination is implementable. is_probability_mixture() reports whether the
// decomposition is also a plain probabilistic mixture.
class WeightedUnitaryMixture {
public:
    WeightedUnitaryMixture(std::vector<double> weights,
                           std::vector<UnitaryOp> ops);

    const std::vector<double>& weights() const { return weights_; }
    const std::vector<UnitaryOp>& ops() const { return ops_; }
    int n_qubits() const { return ops_.front().n_qubits(); }
    std::size_t size() const { return weights_.size(); }

    double weight_sum() const;
    bool is_probability_mixture(double tol = kDefaultTol) const;

private:
    std::vector<double> weights_;
    std::vector<UnitaryOp> ops_;
};

/// Raw weight table (no normalization check); carries the operator set of the
/// two-qubit decomposition together with a selectable weight column.
struct KrausTable {
    std::vector<std::string> labels;
    std::vector<double> weights;
    std::vector<UnitaryOp> ops;

    double weight_sum() const;
};

/// Six-operator decomposition {I, Z1, Z2, Z1Z2, exp(-+ i pi/4 (Z1+Z2))} of the
/// two-qubit correlated channel, with derived weights (see
/// docs/kraus-correction.md). Matches analytic_dephase element-wise.
WeightedUnitaryMixture kraus_two_qubit(const DephasingParams& params);

/// Same operators with the corrected weight column, as a raw table.
KrausTable kraus_two_qubit_table(const DephasingParams& params);

/// The commonly quoted weight column (single-flip weights carry e^{-x} in the
/// cross term). Not trace preserving: its weight sum exceeds 1 by
/// exp(-(g1+g2) t) * sinh(2 c t sqrt(g1 g2)). Kept for reference and exposed
/// through the --table-as-printed CLI flag.
KrausTable kraus_two_qubit_table_as_printed(const DephasingParams& params);

/// Twelve-operator extension with an uncorrelated third qubit: the two-qubit
/// set, and the same set multiplied by Z3, weighted by (1-q) and q where
/// q = (1 - exp(-gamma3 t)) / 2.
WeightedUnitaryMixture kraus_three_qubit(const DephasingParams& pair_params,
                                         double gamma3);

/// sum_i w_i U_i rho U_i^dagger.
DensityMatrix apply_mixture(const DensityMatrix& rho,
                            const WeightedUnitaryMixture& mix);

}  // namespace qnp
