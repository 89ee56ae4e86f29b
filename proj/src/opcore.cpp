// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#include "qnp/opcore.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qnp {

namespace {

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("n_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(n_qubits));
}

void check_target(int target, int n_qubits) {
    check_qubit_count(n_qubits);
    if (target < 0 || target >= n_qubits)
        throw std::out_of_range("qubit index " + std::to_string(target) +
                                " out of range for " +
                                std::to_string(n_qubits) + " qubits");
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Embed a 2x2 operator on `target` of an n-qubit register.
ComplexMatrix embed_1q(const ComplexMatrix& u, int target, int n_qubits) {
    const int dim = 1 << n_qubits;
    const std::uint32_t mask = 1u << (n_qubits - 1 - target);
    ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
    for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(dim); ++i) {
        if (i & mask) continue;
        const std::uint32_t j = i | mask;
        full(i, i) = u(0, 0);
        full(i, j) = u(0, 1);
        full(j, i) = u(1, 0);
        full(j, j) = u(1, 1);
    }
    return full;
}

}  // namespace

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix matrix_from_rows(int dim, const std::vector<Complex>& entries) {
    if (static_cast<int>(entries.size()) != dim * dim)
        throw std::invalid_argument("matrix_from_rows: need dim*dim entries");
    ComplexMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = entries[r * dim + c];
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

ComplexMatrix pauli_matrix_1q(Pauli p) {
    ComplexMatrix m(2, 2);
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

DensityMatrix DensityMatrix::density(int n_qubits, ComplexMatrix m,
                                     double tol) {
    check_qubit_count(n_qubits);
    const int dim = 1 << n_qubits;
    if (m.rows() != dim || m.cols() != dim)
        throw std::invalid_argument("density matrix has wrong dimension");
    if (!is_hermitian(m, tol))
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0)) > tol)
        throw std::invalid_argument("density matrix trace is not 1");
    return DensityMatrix(n_qubits, false, std::move(m));
}

DensityMatrix DensityMatrix::deviation(int n_qubits, ComplexMatrix m,
                                       double tol) {
    check_qubit_count(n_qubits);
    const int dim = 1 << n_qubits;
    if (m.rows() != dim || m.cols() != dim)
        throw std::invalid_argument("deviation matrix has wrong dimension");
    if (!is_hermitian(m, tol))
        throw std::invalid_argument("deviation matrix is not Hermitian");
    return DensityMatrix(n_qubits, true, std::move(m));
}

DensityMatrix DensityMatrix::basis_state(int n_qubits, std::uint32_t index) {
    check_qubit_count(n_qubits);
    const int dim = 1 << n_qubits;
    if (index >= static_cast<std::uint32_t>(dim))
        throw std::out_of_range("basis index out of range");
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(index, index) = 1.0;
    return DensityMatrix(n_qubits, false, std::move(m));
}

bool DensityMatrix::is_positive_semidefinite(double tol) const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat_,
                                                    Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

UnitaryOp::UnitaryOp(int n_qubits, ComplexMatrix m, double tol)
    : n_qubits_(n_qubits), mat_(std::move(m)) {
    check_qubit_count(n_qubits);
    const int dim = 1 << n_qubits;
    if (mat_.rows() != dim || mat_.cols() != dim)
        throw std::invalid_argument("unitary has wrong dimension");
    ComplexMatrix uu = mat_ * mat_.adjoint();
    if (!approx_equal(uu, ComplexMatrix::Identity(dim, dim), tol))
        throw std::invalid_argument("matrix is not unitary");
}

UnitaryOp UnitaryOp::adjoint() const {
    return UnitaryOp(n_qubits_, mat_.adjoint());
}

UnitaryOp operator*(const UnitaryOp& a, const UnitaryOp& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("unitary dimension mismatch");
    return UnitaryOp(a.n_qubits(), a.mat() * b.mat());
}

UnitaryOp pauli(Pauli p, int target, int n_qubits) {
    check_target(target, n_qubits);
    return UnitaryOp(n_qubits, embed_1q(pauli_matrix_1q(p), target, n_qubits));
}

UnitaryOp identity_op(int n_qubits) {
    check_qubit_count(n_qubits);
    const int dim = 1 << n_qubits;
    return UnitaryOp(n_qubits, ComplexMatrix::Identity(dim, dim));
}

UnitaryOp cnot(int control, int target, int n_qubits) {
    check_target(control, n_qubits);
    check_target(target, n_qubits);
    if (control == target)
        throw std::invalid_argument("cnot: control and target must differ");
    const int dim = 1 << n_qubits;
    const std::uint32_t tmask = 1u << (n_qubits - 1 - target);
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (std::uint32_t j = 0; j < static_cast<std::uint32_t>(dim); ++j) {
        const std::uint32_t i =
            qubit_bit(j, control, n_qubits) ? (j ^ tmask) : j;
        m(i, j) = 1.0;
    }
    return UnitaryOp(n_qubits, std::move(m));
}

UnitaryOp toffoli(int control1, int control2, int target, int n_qubits) {
    check_target(control1, n_qubits);
    check_target(control2, n_qubits);
    check_target(target, n_qubits);
    if (control1 == control2 || control1 == target || control2 == target)
        throw std::invalid_argument("toffoli: indices must be distinct");
    const int dim = 1 << n_qubits;
    const std::uint32_t tmask = 1u << (n_qubits - 1 - target);
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (std::uint32_t j = 0; j < static_cast<std::uint32_t>(dim); ++j) {
        const bool fire = qubit_bit(j, control1, n_qubits) &&
                          qubit_bit(j, control2, n_qubits);
        m(fire ? (j ^ tmask) : j, j) = 1.0;
    }
    return UnitaryOp(n_qubits, std::move(m));
}

UnitaryOp hadamard(int target, int n_qubits) {
    check_target(target, n_qubits);
    ComplexMatrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return UnitaryOp(n_qubits, embed_1q(h, target, n_qubits));
}

UnitaryOp rot_z(int target, double angle, int n_qubits) {
    check_target(target, n_qubits);
    ComplexMatrix r = ComplexMatrix::Zero(2, 2);
    r(0, 0) = std::exp(Complex(0, -angle / 2));
    r(1, 1) = std::exp(Complex(0, angle / 2));
    return UnitaryOp(n_qubits, embed_1q(r, target, n_qubits));
}

UnitaryOp rot_xy(int target, double phase_axis, double angle, int n_qubits) {
    check_target(target, n_qubits);
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    ComplexMatrix r(2, 2);
    r(0, 0) = c;
    r(0, 1) = Complex(0, -s) * std::exp(Complex(0, -phase_axis));
    r(1, 0) = Complex(0, -s) * std::exp(Complex(0, phase_axis));
    r(1, 1) = c;
    return UnitaryOp(n_qubits, embed_1q(r, target, n_qubits));
}

DensityMatrix apply(const DensityMatrix& rho, const UnitaryOp& u) {
    if (rho.n_qubits() != u.n_qubits())
        throw std::invalid_argument("apply: dimension mismatch");
    ComplexMatrix out = u.mat() * rho.mat() * u.mat().adjoint();
    return rho.is_deviation()
               ? DensityMatrix::deviation(rho.n_qubits(), std::move(out), 1e-9)
               : DensityMatrix::density(rho.n_qubits(), std::move(out), 1e-9);
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
    const int n = rho.n_qubits();
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    std::vector<bool> kept(n, false);
    for (int q : keep) {
        if (q < 0 || q >= n) throw std::out_of_range("partial_trace: bad qubit");
        if (kept[q]) throw std::invalid_argument("partial_trace: repeated qubit");
        kept[q] = true;
    }
    const int nk = static_cast<int>(keep.size());
    const int nt = n - nk;
    const int dk = 1 << nk, dt = 1 << nt;

    // Map a (kept-index, traced-index) pair back to a full basis index,
    // preserving the original qubit order within each group.
    auto full_index = [&](std::uint32_t k_idx, std::uint32_t t_idx) {
        std::uint32_t idx = 0;
        int kb = 0, tb = 0;
        for (int q = 0; q < n; ++q) {
            int bitval;
            if (kept[q])
                bitval = qubit_bit(k_idx, kb++, nk);
            else
                bitval = qubit_bit(t_idx, tb++, nt);
            idx = (idx << 1) | static_cast<std::uint32_t>(bitval);
        }
        return idx;
    };

    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (std::uint32_t r = 0; r < static_cast<std::uint32_t>(dk); ++r)
        for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(dk); ++c)
            for (std::uint32_t t = 0; t < static_cast<std::uint32_t>(dt); ++t)
                out(r, c) += rho.mat()(full_index(r, t), full_index(c, t));

    return rho.is_deviation()
               ? DensityMatrix::deviation(nk, std::move(out), 1e-9)
               : DensityMatrix::density(nk, std::move(out), 1e-9);
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& obs,
                   double tol) {
    if (obs.rows() != rho.dim() || obs.cols() != rho.dim())
        throw std::invalid_argument("expectation: dimension mismatch");
    if (!is_hermitian(obs, tol))
        throw std::invalid_argument("expectation: observable not Hermitian");
    const Complex v = (obs * rho.mat()).trace();
    if (std::abs(v.imag()) > tol)
        throw std::runtime_error("expectation: imaginary residue " +
                                 std::to_string(v.imag()));
    return v.real();
}

}  // namespace qnp
