// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#include "qnp/dephase.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>

#include "qnp/rng.hpp"

namespace qnp {

namespace {

constexpr std::uint64_t kChunkSamples = 8192;  // fixed: summation order must
                                               // not depend on thread count

void check_state_dim(const DensityMatrix& rho, const DephasingParams& p) {
    if (rho.n_qubits() != p.n_qubits())
        throw std::invalid_argument("dephase: state/params qubit mismatch");
}

/// Factor of the covariance: Sigma = L L^T, tolerant of semidefinite Sigma.
Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& sigma) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
    Eigen::VectorXd lam = es.eigenvalues();
    for (int i = 0; i < lam.size(); ++i) {
        if (lam[i] < -1e-12)
            throw std::invalid_argument(
                "dephase: covariance is not positive semidefinite");
        if (lam[i] < 0) lam[i] = 0;
    }
    return es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
}

DensityMatrix rewrap(const DensityMatrix& as, ComplexMatrix m) {
    return as.is_deviation()
               ? DensityMatrix::deviation(as.n_qubits(), std::move(m), 1e-9)
               : DensityMatrix::density(as.n_qubits(), std::move(m), 1e-9);
}

}  // namespace

DephasingParams::DephasingParams(int n_qubits, Eigen::VectorXd gamma,
                                 Eigen::MatrixXd corr, double t)
    : n_qubits_(n_qubits), gamma_(std::move(gamma)), corr_(std::move(corr)),
      t_(t) {
    if (n_qubits_ < 1 || n_qubits_ > kMaxQubits)
        throw std::invalid_argument("DephasingParams: bad qubit count");
    if (gamma_.size() != n_qubits_ || corr_.rows() != n_qubits_ ||
        corr_.cols() != n_qubits_)
        throw std::invalid_argument("DephasingParams: size mismatch");
    if (t_ < 0) throw std::invalid_argument("DephasingParams: t must be >= 0");
    for (int i = 0; i < n_qubits_; ++i) {
        if (gamma_[i] < 0)
            throw std::invalid_argument("DephasingParams: gamma must be >= 0");
        if (std::abs(corr_(i, i) - 1.0) > 1e-12)
            throw std::invalid_argument("DephasingParams: corr diagonal != 1");
        for (int j = 0; j < n_qubits_; ++j) {
            if (std::abs(corr_(i, j) - corr_(j, i)) > 1e-12)
                throw std::invalid_argument("DephasingParams: corr not symmetric");
            if (corr_(i, j) < -1e-12 || corr_(i, j) > 1.0 + 1e-12)
                throw std::invalid_argument(
                    "DephasingParams: correlation factors must lie in [0, 1]");
        }
    }
    // Reject parameter sets whose implied covariance is not PSD (e.g. three
    // mutually full correlations with a zero c_23).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(covariance(),
                                                      Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12)
        throw std::invalid_argument(
            "DephasingParams: implied covariance is not positive semidefinite");
}

DephasingParams DephasingParams::uncorrelated(Eigen::VectorXd gamma, double t) {
    const int n = static_cast<int>(gamma.size());
    return DephasingParams(n, std::move(gamma),
                           Eigen::MatrixXd::Identity(n, n), t);
}

Eigen::MatrixXd DephasingParams::covariance() const {
    Eigen::MatrixXd sigma(n_qubits_, n_qubits_);
    for (int i = 0; i < n_qubits_; ++i)
        for (int j = 0; j < n_qubits_; ++j)
            sigma(i, j) =
                corr_(i, j) * t_ * std::sqrt(gamma_[i] * gamma_[j]) / 2.0;
    return sigma;
}

std::vector<int> eta_vector(std::uint32_t k, std::uint32_t l, int n_qubits) {
    const std::uint32_t dim = 1u << n_qubits;
    if (k >= dim || l >= dim)
        throw std::out_of_range("eta_vector: basis index out of range");
    std::vector<int> eta(n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
        const int kb = qubit_bit(k, q, n_qubits);
        const int lb = qubit_bit(l, q, n_qubits);
        eta[q] = ((kb ? -1 : 1) - (lb ? -1 : 1)) / 2;
    }
    return eta;
}

double decay_exponent(std::uint32_t k, std::uint32_t l,
                      const DephasingParams& params) {
    const int n = params.n_qubits();
    const std::vector<int> eta = eta_vector(k, l, n);
    double ex = 0.0;
    for (int i = 0; i < n; ++i)
        if (eta[i] != 0) ex += params.gamma()[i] * params.t();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (eta[i] != 0 && eta[j] != 0)
                ex += 2.0 * params.corr()(i, j) * params.t() * eta[i] * eta[j] *
                      std::sqrt(params.gamma()[i] * params.gamma()[j]);
    return -ex;
}

double decay_factor(std::uint32_t k, std::uint32_t l,
                    const DephasingParams& params) {
    return std::exp(decay_exponent(k, l, params));
}

DensityMatrix analytic_dephase(const DensityMatrix& rho,
                               const DephasingParams& params) {
    check_state_dim(rho, params);
    const int dim = rho.dim();
    ComplexMatrix out = rho.mat();
    for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
            if (k != l) out(k, l) *= decay_factor(k, l, params);
    return rewrap(rho, std::move(out));
}

namespace {

/// Sum over one chunk of samples of the rank-1 phase-factor matrices d d^+,
/// where d_k = exp(-i sum_q alpha_q (-1)^{k_q}).
ComplexMatrix chunk_factor_sum(const Eigen::MatrixXd& chol, int n_qubits,
                               std::uint64_t seed, std::uint64_t first,
                               std::uint64_t count) {
    const int dim = 1 << n_qubits;
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    Eigen::VectorXd z(n_qubits), alpha(n_qubits);
    Eigen::VectorXcd d(dim);
    for (std::uint64_t s = 0; s < count; ++s) {
        GaussianStream g(seed, first + s);
        for (int q = 0; q < n_qubits; ++q) z[q] = g.next();
        alpha = chol * z;
        for (int k = 0; k < dim; ++k) {
            double phi = 0.0;
            for (int q = 0; q < n_qubits; ++q)
                phi += qubit_bit(static_cast<std::uint32_t>(k), q, n_qubits)
                           ? -alpha[q]
                           : alpha[q];
            d[k] = std::exp(Complex(0, -phi));
        }
        sum += d * d.adjoint();
    }
    return sum;
}

ComplexMatrix mc_factor_matrix(const DephasingParams& params,
                               std::uint64_t n_samples, std::uint64_t seed,
                               unsigned max_threads) {
    if (n_samples == 0)
        throw std::invalid_argument("monte_carlo_dephase: n_samples must be >= 1");
    const Eigen::MatrixXd chol = covariance_factor(params.covariance());
    const int dim = 1 << params.n_qubits();

    const std::uint64_t n_chunks = (n_samples + kChunkSamples - 1) / kChunkSamples;
    unsigned workers = max_threads ? max_threads
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, n_chunks));

    std::vector<ComplexMatrix> partial(n_chunks);
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            const std::uint64_t first = c * kChunkSamples;
            partial[c] = chunk_factor_sum(
                chol, params.n_qubits(), seed, first,
                std::min(kChunkSamples, n_samples - first));
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&]() {
            for (std::uint64_t c; (c = next.fetch_add(1)) < n_chunks;) {
                const std::uint64_t first = c * kChunkSamples;
                partial[c] = chunk_factor_sum(
                    chol, params.n_qubits(), seed, first,
                    std::min(kChunkSamples, n_samples - first));
            }
        };
        std::vector<std::future<void>> futs;
        for (unsigned w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
    }

    // Chunk boundaries are fixed, so this reduction order is independent of
    // the thread count and the result is bit-identical at any parallelism.
    ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
    for (const auto& p : partial) total += p;
    return total / static_cast<double>(n_samples);
}

}  // namespace

DensityMatrix monte_carlo_dephase(const DensityMatrix& rho,
                                  const DephasingParams& params,
                                  std::uint64_t n_samples, std::uint64_t seed,
                                  unsigned max_threads) {
    check_state_dim(rho, params);
    const ComplexMatrix factors =
        mc_factor_matrix(params, n_samples, seed, max_threads);
    ComplexMatrix out = factors.cwiseProduct(rho.mat());
    return rewrap(rho, std::move(out));
}

ComplexMatrix monte_carlo_factors(const DephasingParams& params,
                                  std::uint64_t n_samples, std::uint64_t seed,
                                  unsigned max_threads) {
    return mc_factor_matrix(params, n_samples, seed, max_threads);
}

WeightedUnitaryMixture::WeightedUnitaryMixture(std::vector<double> weights,
                                               std::vector<UnitaryOp> ops)
    : weights_(std::move(weights)), ops_(std::move(ops)) {
    if (weights_.empty() || weights_.size() != ops_.size())
        throw std::invalid_argument("mixture: weights/ops size mismatch");
    for (const auto& op : ops_)
        if (op.n_qubits() != ops_.front().n_qubits())
            throw std::invalid_argument("mixture: operator dimension mismatch");
    for (double& w : weights_)
        if (w < 0.0 && w >= -1e-12) w = 0.0;  // rounding noise only
    if (std::abs(weight_sum() - 1.0) > 1e-9)
        throw std::invalid_argument("mixture: weights must sum to 1, got " +
                                    std::to_string(weight_sum()));
}

double WeightedUnitaryMixture::weight_sum() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

bool WeightedUnitaryMixture::is_probability_mixture(double tol) const {
    for (double w : weights_)
        if (w < -tol) return false;
    return true;
}

double KrausTable::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

namespace {

struct TwoQubitTerms {
    double a1, a2, x;
};

TwoQubitTerms two_qubit_terms(const DephasingParams& p) {
    if (p.n_qubits() != 2)
        throw std::invalid_argument("kraus_two_qubit: params must be 2-qubit");
    return {std::exp(-p.gamma()[0] * p.t()), std::exp(-p.gamma()[1] * p.t()),
            2.0 * p.corr()(0, 1) * p.t() *
                std::sqrt(p.gamma()[0] * p.gamma()[1])};
}

std::vector<UnitaryOp> two_qubit_ops() {
    ComplexMatrix rm = ComplexMatrix::Zero(4, 4);
    rm(0, 0) = Complex(0, -1);
    rm(1, 1) = 1;
    rm(2, 2) = 1;
    rm(3, 3) = Complex(0, 1);
    return {identity_op(2),
            pauli(Pauli::Z, 0, 2),
            pauli(Pauli::Z, 1, 2),
            pauli(Pauli::Z, 0, 2) * pauli(Pauli::Z, 1, 2),
            UnitaryOp(2, rm),                  // exp(-i pi/4 (Z1+Z2))
            UnitaryOp(2, rm.conjugate())};     // exp(+i pi/4 (Z1+Z2))
}

const std::vector<std::string> kTwoQubitLabels = {
    "I", "Z1", "Z2", "Z1Z2", "exp(-i pi/4 (Z1+Z2))", "exp(+i pi/4 (Z1+Z2))"};

// The six weights are fixed by the channel's action on each element class:
// the diagonal (sum rule), the two single-quantum classes (flip signs), and
// the zero/double-quantum pair, to which the two opposite rotations
// contribute +1 and -1 respectively. Solving those constraints puts e^{+x}
// in the cross term of the single-flip weights.
std::vector<double> corrected_weights(const TwoQubitTerms& w) {
    const double pI = 0.25 * (1 + w.a1 + w.a2 + w.a1 * w.a2 * std::exp(-w.x));
    const double pZ1 = 0.25 * (1 - w.a1 + w.a2 - w.a1 * w.a2 * std::exp(w.x));
    const double pZ2 = 0.25 * (1 + w.a1 - w.a2 - w.a1 * w.a2 * std::exp(w.x));
    const double pZZ = 0.25 * (1 - w.a1 - w.a2 + w.a1 * w.a2 * std::exp(-w.x));
    const double pr = 0.5 * w.a1 * w.a2 * std::sinh(w.x);
    return {pI, pZ1, pZ2, pZZ, pr, pr};
}

std::vector<double> printed_weights(const TwoQubitTerms& w) {
    const double cross = w.a1 * w.a2 * std::exp(-w.x);
    const double pI = 0.25 * (1 + w.a1 + w.a2 + cross);
    const double pZ1 = 0.25 * (1 - w.a1 + w.a2 - cross);
    const double pZ2 = 0.25 * (1 + w.a1 - w.a2 - cross);
    const double pZZ = 0.25 * (1 - w.a1 - w.a2 + cross);
    const double pr = 0.5 * w.a1 * w.a2 * std::sinh(w.x);
    return {pI, pZ1, pZ2, pZZ, pr, pr};
}

}  // namespace

WeightedUnitaryMixture kraus_two_qubit(const DephasingParams& params) {
    return WeightedUnitaryMixture(corrected_weights(two_qubit_terms(params)),
                                  two_qubit_ops());
}

KrausTable kraus_two_qubit_table(const DephasingParams& params) {
    return {kTwoQubitLabels, corrected_weights(two_qubit_terms(params)),
            two_qubit_ops()};
}

KrausTable kraus_two_qubit_table_as_printed(const DephasingParams& params) {
    return {kTwoQubitLabels, printed_weights(two_qubit_terms(params)),
            two_qubit_ops()};
}

WeightedUnitaryMixture kraus_three_qubit(const DephasingParams& pair_params,
                                         double gamma3) {
    if (gamma3 < 0)
        throw std::invalid_argument("kraus_three_qubit: gamma3 must be >= 0");
    const WeightedUnitaryMixture pair = kraus_two_qubit(pair_params);
    const double q = 0.5 * (1.0 - std::exp(-gamma3 * pair_params.t()));

    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix z2 = pauli_matrix_1q(Pauli::Z);

    std::vector<double> weights;
    std::vector<UnitaryOp> ops;
    weights.reserve(12);
    ops.reserve(12);
    for (std::size_t i = 0; i < pair.size(); ++i) {
        weights.push_back((1.0 - q) * pair.weights()[i]);
        ops.emplace_back(3, kron(pair.ops()[i].mat(), i2));
    }
    for (std::size_t i = 0; i < pair.size(); ++i) {
        weights.push_back(q * pair.weights()[i]);
        ops.emplace_back(3, kron(pair.ops()[i].mat(), z2));
    }
    return WeightedUnitaryMixture(std::move(weights), std::move(ops));
}

DensityMatrix apply_mixture(const DensityMatrix& rho,
                            const WeightedUnitaryMixture& mix) {
    if (rho.n_qubits() != mix.n_qubits())
        throw std::invalid_argument("apply_mixture: dimension mismatch");
    ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (std::size_t i = 0; i < mix.size(); ++i)
        out += mix.weights()[i] *
               (mix.ops()[i].mat() * rho.mat() * mix.ops()[i].mat().adjoint());
    return rewrap(rho, std::move(out));
}

}  // namespace qnp
