// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <complex>

#include "qnp/opcore.hpp"
#include "qnp/rng.hpp"

using namespace qnp;

namespace {

DensityMatrix random_density(int n, std::uint64_t seed) {
    const int dim = 1 << n;
    GaussianStream g(seed, 0);
    ComplexMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) a(r, c) = Complex(g.next(), g.next());
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace();
    return DensityMatrix::density(n, std::move(rho), 1e-9);
}

UnitaryOp random_gate_product(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    UnitaryOp u = identity_op(n);
    for (int step = 0; step < 6; ++step) {
        const int kind = static_cast<int>(rng.next_u64() % 4);
        const int q = static_cast<int>(rng.next_u64() % n);
        switch (kind) {
            case 0: u = hadamard(q, n) * u; break;
            case 1: u = rot_z(q, rng.next_unit() * 6.0, n) * u; break;
            case 2:
                u = rot_xy(q, rng.next_unit() * 6.0, rng.next_unit() * 6.0, n) * u;
                break;
            default: {
                const int q2 = (q + 1 + static_cast<int>(rng.next_u64() % (n - 1))) % n;
                u = cnot(q, q2, n) * u;
                break;
            }
        }
    }
    return u;
}

}  // namespace

TEST_CASE("pauli matrices and embedding") {
    CHECK(approx_equal(pauli(Pauli::Z, 0, 1).mat(),
                       matrix_from_rows(2, {1, 0, 0, -1})));

    // Z on qubit 1 of |01>: eigenvalue -1
    const auto z1 = pauli(Pauli::Z, 1, 2);
    Eigen::VectorXcd basis01 = Eigen::VectorXcd::Zero(4);
    basis01(1) = 1.0;
    CHECK((z1.mat() * basis01 + basis01).norm() == doctest::Approx(0.0));

    // XY - YX = 2i Z
    const auto x = pauli(Pauli::X, 0, 1).mat();
    const auto y = pauli(Pauli::Y, 0, 1).mat();
    const auto z = pauli(Pauli::Z, 0, 1).mat();
    CHECK(approx_equal(x * y - y * x, Complex(0, 2) * z));

    CHECK_THROWS_AS(pauli(Pauli::X, 2, 2), std::out_of_range);
    CHECK_THROWS_AS(pauli(Pauli::X, -1, 2), std::out_of_range);
}

TEST_CASE("two- and three-qubit gate truth tables") {
    // cnot(0,1) maps |10> -> |11>
    const auto cx = cnot(0, 1, 2);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(2) = 1.0;  // |10>
    Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(4);
    expect(3) = 1.0;  // |11>
    CHECK((cx.mat() * v - expect).norm() == doctest::Approx(0.0));

    // toffoli(1,2,0) maps |011> -> |111>
    const auto ccx = toffoli(1, 2, 0, 3);
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(8);
    w(3) = 1.0;  // |011>
    Eigen::VectorXcd wexp = Eigen::VectorXcd::Zero(8);
    wexp(7) = 1.0;  // |111>
    CHECK((ccx.mat() * w - wexp).norm() == doctest::Approx(0.0));

    CHECK_THROWS_AS(cnot(1, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(toffoli(0, 0, 1, 3), std::invalid_argument);
}

TEST_CASE("rot_xy axis-angle identity") {
    // rot_xy(0, pi) = exp(-i pi X / 2) = -i X
    const auto r = rot_xy(0, 0.0, M_PI, 1);
    CHECK(approx_equal(r.mat(),
                       Complex(0, -1) * pauli(Pauli::X, 0, 1).mat()));
}

TEST_CASE("apply conjugates and preserves trace") {
    const auto rho0 = DensityMatrix::basis_state(1, 0);
    const auto flipped = apply(rho0, pauli(Pauli::X, 0, 1));
    CHECK(approx_equal(flipped.mat(), DensityMatrix::basis_state(1, 1).mat()));

    const auto rho = random_density(2, 7);
    CHECK(approx_equal(apply(rho, identity_op(2)).mat(), rho.mat()));

    // |+><+| under rot_z(pi) -> |-><-|
    ComplexMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    ComplexMatrix minus(2, 2);
    minus << 0.5, -0.5, -0.5, 0.5;
    const auto rotated =
        apply(DensityMatrix::density(1, plus), rot_z(0, M_PI, 1));
    CHECK(approx_equal(rotated.mat(), minus));

    CHECK_THROWS_AS(apply(rho, identity_op(1)), std::invalid_argument);
}

TEST_CASE("apply round-trips through the inverse for random gate words") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const int n = 2 + static_cast<int>(seed % 2);
        const auto u = random_gate_product(n, seed);
        const auto rho = random_density(n, seed + 100);
        const auto back = apply(apply(rho, u), u.adjoint());
        CHECK(approx_equal(back.mat(), rho.mat(), 1e-12));
        CHECK(std::abs(apply(rho, u).mat().trace().real() - 1.0) < 1e-12);
        // gate-library outputs satisfy the unitary invariant by construction;
        // re-wrapping must not throw
        CHECK_NOTHROW(UnitaryOp(n, u.mat()));
    }
}

TEST_CASE("partial trace") {
    // product state |00><00| restricted to qubit 0
    const auto rho00 = DensityMatrix::basis_state(2, 0);
    const auto q0 = partial_trace(rho00, {0});
    CHECK(approx_equal(q0.mat(), DensityMatrix::basis_state(1, 0).mat()));

    // Bell state -> maximally mixed marginal
    ComplexMatrix bell = ComplexMatrix::Zero(4, 4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    const auto marg = partial_trace(DensityMatrix::density(2, bell), {0});
    CHECK(approx_equal(marg.mat(), ComplexMatrix::Identity(2, 2) * 0.5));

    CHECK_THROWS_AS(partial_trace(rho00, {}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(rho00, {2}), std::out_of_range);
}

TEST_CASE("partial trace of a product equals the factor times the other trace") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto rho = random_density(1, seed);
        const auto sig = random_density(1, seed + 50);
        const auto prod =
            DensityMatrix::density(2, kron(rho.mat(), sig.mat()), 1e-9);
        const auto left = partial_trace(prod, {0});
        // Tr(sigma) = 1, so the reduced state is rho itself
        CHECK(approx_equal(left.mat(), rho.mat(), 1e-12));
        const auto right = partial_trace(prod, {1});
        CHECK(approx_equal(right.mat(), sig.mat(), 1e-12));
        CHECK(std::abs(left.mat().trace().real() -
                       prod.mat().trace().real()) < 1e-12);
    }
}

TEST_CASE("expectation values") {
    const auto z = pauli_matrix_1q(Pauli::Z);
    CHECK(expectation(DensityMatrix::basis_state(1, 0), z) ==
          doctest::Approx(1.0));

    const auto mixed =
        DensityMatrix::density(1, ComplexMatrix::Identity(2, 2) * 0.5);
    CHECK(expectation(mixed, z) == doctest::Approx(0.0));

    ComplexMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK(expectation(DensityMatrix::density(1, plus),
                      pauli_matrix_1q(Pauli::X)) == doctest::Approx(1.0));

    ComplexMatrix not_herm(2, 2);
    not_herm << 0, 1, 0, 0;
    CHECK_THROWS_AS(expectation(mixed, not_herm), std::invalid_argument);
    CHECK_THROWS_AS(expectation(mixed, ComplexMatrix::Identity(4, 4)),
                    std::invalid_argument);
}

TEST_CASE("constructors enforce the state invariants") {
    ComplexMatrix bad_trace = ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix::density(1, bad_trace),
                    std::invalid_argument);
    // the same matrix is a legal deviation operator
    CHECK_NOTHROW(DensityMatrix::deviation(1, bad_trace));

    ComplexMatrix not_herm(2, 2);
    not_herm << 1, 1, 0, 0;
    CHECK_THROWS_AS(DensityMatrix::deviation(1, not_herm),
                    std::invalid_argument);

    ComplexMatrix not_unitary = ComplexMatrix::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(UnitaryOp(1, not_unitary), std::invalid_argument);

    CHECK(DensityMatrix::basis_state(2, 0).is_positive_semidefinite());
    ComplexMatrix indefinite = pauli_matrix_1q(Pauli::Z);
    CHECK_FALSE(
        DensityMatrix::deviation(1, indefinite).is_positive_semidefinite());
}
