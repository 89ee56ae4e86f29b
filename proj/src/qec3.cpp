// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#include "qnp/qec3.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qnp {

QecLayout::QecLayout(int data_qubit, int anc1, int anc2)
    : data(data_qubit), ancilla1(anc1), ancilla2(anc2) {
    const int sum = data + ancilla1 + ancilla2;
    const bool in_range = data >= 0 && data <= 2 && ancilla1 >= 0 &&
                          ancilla1 <= 2 && ancilla2 >= 0 && ancilla2 <= 2;
    const bool distinct =
        data != ancilla1 && data != ancilla2 && ancilla1 != ancilla2;
    if (!in_range || !distinct || sum != 3)
        throw std::invalid_argument("QecLayout: indices must cover {0,1,2}");
}

FidelityReport::FidelityReport(double fx, double fy, double fz, double time)
    : f_x(fx), f_y(fy), f_z(fz), f_e(0.25 * (1.0 + fx + fy + fz)), t(time) {
    const double lim = 1.0 + 1e-9;
    if (std::abs(f_x) > lim || std::abs(f_y) > lim || std::abs(f_z) > lim)
        throw std::invalid_argument(
            "FidelityReport: state correlations must lie in [-1, 1]");
}

UnitaryOp encode_circuit(const QecLayout& layout) {
    const UnitaryOp h_all = hadamard(0, 3) * hadamard(1, 3) * hadamard(2, 3);
    return h_all * cnot(layout.data, layout.ancilla2, 3) *
           cnot(layout.data, layout.ancilla1, 3) * hadamard(layout.data, 3);
}

UnitaryOp decode_circuit(const QecLayout& layout) {
    const UnitaryOp h_all = hadamard(0, 3) * hadamard(1, 3) * hadamard(2, 3);
    return hadamard(layout.data, 3) *
           toffoli(layout.ancilla1, layout.ancilla2, layout.data, 3) *
           cnot(layout.data, layout.ancilla2, 3) *
           cnot(layout.data, layout.ancilla1, 3) * h_all;
}

DensityMatrix encode(const DensityMatrix& rho, const QecLayout& layout,
                     double tol) {
    if (rho.n_qubits() != 3)
        throw std::invalid_argument("encode: expected a 3-qubit state");
    // Support must lie in the ancilla-00 block; this covers both density and
    // deviation inputs (a traceless data deviation defeats a reduced-state
    // check).
    const int dim = rho.dim();
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const bool anc00 =
                qubit_bit(r, layout.ancilla1, 3) == 0 &&
                qubit_bit(r, layout.ancilla2, 3) == 0 &&
                qubit_bit(c, layout.ancilla1, 3) == 0 &&
                qubit_bit(c, layout.ancilla2, 3) == 0;
            if (!anc00 && std::abs(rho.mat()(r, c)) > tol)
                throw std::invalid_argument(
                    "encode: ancillas are not in |00><00|");
        }
    return apply(rho, encode_circuit(layout));
}

DensityMatrix decode_correct(const DensityMatrix& rho,
                             const QecLayout& layout) {
    if (rho.n_qubits() != 3)
        throw std::invalid_argument("decode_correct: expected a 3-qubit state");
    return apply(rho, decode_circuit(layout));
}

Channel3q make_channel(const DephasingParams& params) {
    if (params.n_qubits() != 3)
        throw std::invalid_argument("make_channel: need 3-qubit params");
    return [params](const DensityMatrix& rho) {
        return analytic_dephase(rho, params);
    };
}

Channel3q make_channel(const WeightedUnitaryMixture& mix) {
    if (mix.n_qubits() != 3)
        throw std::invalid_argument("make_channel: need a 3-qubit mixture");
    return [mix](const DensityMatrix& rho) { return apply_mixture(rho, mix); };
}

Channel3q make_channel(const UnitaryOp& u) {
    if (u.n_qubits() != 3)
        throw std::invalid_argument("make_channel: need a 3-qubit unitary");
    return [u](const DensityMatrix& rho) { return apply(rho, u); };
}

QecEvaluator::QecEvaluator(Channel3q channel, QecLayout layout)
    : channel_(std::move(channel)), layout_(layout) {
    if (!channel_) throw std::invalid_argument("QecEvaluator: empty channel");
}

DensityMatrix QecEvaluator::operator()(Pauli a) const {
    ComplexMatrix zero(2, 2);
    zero << 1, 0, 0, 0;
    ComplexMatrix in(1, 1);
    in.setOnes();
    for (int q = 0; q < 3; ++q)
        in = kron(in, q == layout_.data ? pauli_matrix_1q(a) : zero);
    const DensityMatrix rho_in = DensityMatrix::deviation(3, std::move(in));
    const DensityMatrix out =
        decode_correct(channel_(encode(rho_in, layout_)), layout_);
    return partial_trace(out, {layout_.data});
}

double state_correlation(const Evaluator1q& evaluator, Pauli a) {
    const DensityMatrix out = evaluator(a);
    if (out.n_qubits() != 1)
        throw std::invalid_argument("state_correlation: evaluator must return "
                                    "a single-qubit operator");
    return 0.5 * expectation(out, pauli_matrix_1q(a));
}

FidelityReport entanglement_fidelity(const Evaluator1q& evaluator, double t) {
    return FidelityReport(state_correlation(evaluator, Pauli::X),
                          state_correlation(evaluator, Pauli::Y),
                          state_correlation(evaluator, Pauli::Z), t);
}

double closed_form_fe(double gamma1, double gamma2, double gamma3, double c12,
                      double t) {
    return 0.25 * (2.0 + std::exp(-gamma1 * t) + std::exp(-gamma2 * t) +
                   std::exp(-gamma3 * t) -
                   std::exp(-(gamma1 + gamma2 + gamma3) * t) *
                       std::cosh(2.0 * c12 * t * std::sqrt(gamma1 * gamma2)));
}

}  // namespace qnp
