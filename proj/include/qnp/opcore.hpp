// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace qnp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTol = 1e-12;
inline constexpr int kMaxQubits = 4;

/// Element-wise comparison with an absolute tolerance.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kDefaultTol);

/// Row-major construction helper for small literal matrices.
ComplexMatrix matrix_from_rows(int dim, const std::vector<Complex>& entries);

/// Kronecker product, first factor = leftmost (most significant) tensor slot.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Bit of qubit `q` in basis index `i`; qubit 0 is the most significant bit.
inline int qubit_bit(std::uint32_t i, int q, int n_qubits) {
    return static_cast<int>((i >> (n_qubits - 1 - q)) & 1u);
}

enum class Pauli { I, X, Y, Z };

ComplexMatrix pauli_matrix_1q(Pauli p);

// A state or NMR deviation operator over n qubits. Density mode requires
// trace 1; deviation mode admits traceless Hermitian operators (the objects
// the ensemble experiments actually manipulate). Both require Hermiticity.
class DensityMatrix {
public:
    static DensityMatrix density(int n_qubits, ComplexMatrix m,
                                 double tol = kDefaultTol);
    static DensityMatrix deviation(int n_qubits, ComplexMatrix m,
                                   double tol = kDefaultTol);
    /// |index><index| on n qubits.
    static DensityMatrix basis_state(int n_qubits, std::uint32_t index);

    int n_qubits() const { return n_qubits_; }
    bool is_deviation() const { return deviation_; }
    const ComplexMatrix& mat() const { return mat_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

    /// Eigenvalue check: all eigenvalues >= -tol. Not run on construction.
    bool is_positive_semidefinite(double tol = kDefaultTol) const;

private:
    DensityMatrix(int n, bool dev, ComplexMatrix m)
        : n_qubits_(n), deviation_(dev), mat_(std::move(m)) {}

    int n_qubits_;
    bool deviation_;
    ComplexMatrix mat_;
};

class UnitaryOp {
public:
    UnitaryOp(int n_qubits, ComplexMatrix m, double tol = kDefaultTol);

    int n_qubits() const { return n_qubits_; }
    const ComplexMatrix& mat() const { return mat_; }

    UnitaryOp adjoint() const;
    friend UnitaryOp operator*(const UnitaryOp& a, const UnitaryOp& b);

private:
    int n_qubits_;
    ComplexMatrix mat_;
};

// Gate library. Angles in radians; qubit indices must be distinct and in range.
UnitaryOp pauli(Pauli p, int target, int n_qubits);
UnitaryOp identity_op(int n_qubits);
UnitaryOp cnot(int control, int target, int n_qubits);
UnitaryOp toffoli(int control1, int control2, int target, int n_qubits);
UnitaryOp hadamard(int target, int n_qubits);
UnitaryOp rot_z(int target, double angle, int n_qubits);
/// exp(-i angle/2 (cos(phase_axis) X + sin(phase_axis) Y)) on `target`.
UnitaryOp rot_xy(int target, double phase_axis, double angle, int n_qubits);

/// U rho U^dagger.
DensityMatrix apply(const DensityMatrix& rho, const UnitaryOp& u);

/// Reduce to the qubits in `keep` (original relative order preserved).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

/// Tr(obs * rho); obs must be Hermitian. An imaginary residue above tol is an
/// error, below it is discarded.
double expectation(const DensityMatrix& rho, const ComplexMatrix& obs,
                   double tol = 1e-9);

}  // namespace qnp
