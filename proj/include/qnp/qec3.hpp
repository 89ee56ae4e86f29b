// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "qnp/dephase.hpp"
#include "qnp/opcore.hpp"

namespace qnp {

// Three-qubit phase-flip code: one data qubit protected by two ancillas
// against any single-qubit Z error. Double and triple Z errors slip through
// as a logical phase flip, which is the effect the correlation estimate reads
// out.
struct QecLayout {
    int data = 2;
    int ancilla1 = 0;
    int ancilla2 = 1;

    QecLayout() = default;
    QecLayout(int data_qubit, int anc1, int anc2);
};

struct FidelityReport {
    double f_x, f_y, f_z;
    double f_e;  // = (1 + f_x + f_y + f_z) / 4, enforced on construction
    double t;

    FidelityReport(double fx, double fy, double fz, double time);
};

/// Encoding circuit. The data qubit is first rotated into the coherence
/// basis, copied onto the ancillas, and the block is moved into the phase
/// basis, so that the protected observable pulls back to the diagonal
/// Z1 Z2 Z3 and survives any pure dephasing channel untouched.
UnitaryOp encode_circuit(const QecLayout& layout = {});

/// Inverse layers plus the coherent Toffoli correction (no measurement; the
/// syndrome stays in the ancillas and decoheres via the partial trace).
UnitaryOp decode_circuit(const QecLayout& layout = {});

/// Applies encode_circuit after verifying the ancillas hold |00><00| (in
/// deviation mode: the matrix has support only on the ancilla-00 block).
DensityMatrix encode(const DensityMatrix& rho, const QecLayout& layout = {},
                     double tol = 1e-9);

DensityMatrix decode_correct(const DensityMatrix& rho,
                             const QecLayout& layout = {});

using Channel3q = std::function<DensityMatrix(const DensityMatrix&)>;

Channel3q make_channel(const DephasingParams& params);
Channel3q make_channel(const WeightedUnitaryMixture& mix);
Channel3q make_channel(const UnitaryOp& u);

/// Effective single-qubit channel evaluator: maps a Pauli deviation input A
/// to Tr_anc[decode(channel(encode(|00><00| (x) A)))].
class QecEvaluator {
public:
    QecEvaluator(Channel3q channel, QecLayout layout = {});

    DensityMatrix operator()(Pauli a) const;

private:
    Channel3q channel_;
    QecLayout layout_;
};

using Evaluator1q = std::function<DensityMatrix(Pauli)>;

/// f_A = Tr[A * evaluator(A)] / 2; 1 for the identity channel.
double state_correlation(const Evaluator1q& evaluator, Pauli a);

FidelityReport entanglement_fidelity(const Evaluator1q& evaluator,
                                     double t = 0.0);

/// Entanglement fidelity of the QEC round under correlated dephasing with an
/// uncorrelated third qubit:
/// (2 + e^{-g1 t} + e^{-g2 t} + e^{-g3 t}
///    - e^{-(g1+g2+g3) t} cosh(2 c12 t sqrt(g1 g2))) / 4.
double closed_form_fe(double gamma1, double gamma2, double gamma3, double c12,
                      double t);

}  // namespace qnp
