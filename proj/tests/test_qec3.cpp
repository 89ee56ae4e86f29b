// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "qnp/qec3.hpp"
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

/// |00><00| on the ancillas tensor a data factor at layout position 2.
DensityMatrix with_data_factor(const ComplexMatrix& data, bool deviation) {
    ComplexMatrix zero(2, 2);
    zero << 1, 0, 0, 0;
    const ComplexMatrix full = kron(kron(zero, zero), data);
    return deviation ? DensityMatrix::deviation(3, full)
                     : DensityMatrix::density(3, full, 1e-9);
}

DephasingParams three_qubit_params(double g1, double g2, double g3, double c,
                                   double t) {
    Eigen::VectorXd g(3);
    g << g1, g2, g3;
    Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(3, 3);
    corr(0, 1) = corr(1, 0) = c;
    return DephasingParams(3, std::move(g), std::move(corr), t);
}

}  // namespace

TEST_CASE("layout validation") {
    CHECK_NOTHROW(QecLayout(2, 0, 1));
    CHECK_NOTHROW(QecLayout(0, 1, 2));
    CHECK_THROWS_AS(QecLayout(2, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(QecLayout(3, 0, 1), std::invalid_argument);
}

TEST_CASE("encode maps the data |+> axis onto |+++>") {
    // the protected frame puts the coherence axis on the codeword; |+> data
    // with ancillas |00> lands on |+++>
    ComplexMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    const auto in = with_data_factor(plus, false);
    const auto out = encode(in);

    ComplexMatrix h1(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h1 << s, s, s, -s;
    Eigen::VectorXcd plus3 = Eigen::VectorXcd::Ones(1);
    Eigen::VectorXcd p1(2);
    p1 << s, s;
    for (int q = 0; q < 3; ++q) {
        Eigen::VectorXcd next(plus3.size() * 2);
        for (int i = 0; i < plus3.size(); ++i) {
            next(2 * i) = plus3(i) * p1(0);
            next(2 * i + 1) = plus3(i) * p1(1);
        }
        plus3 = next;
    }
    const ComplexMatrix expected = plus3 * plus3.adjoint();
    CHECK(approx_equal(out.mat(), expected, 1e-12));
}

TEST_CASE("encode preserves inner products") {
    // unitarity: Tr[E(rho) E(sigma)] = Tr[rho sigma]
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        ComplexMatrix a = random_density(1, seed).mat();
        ComplexMatrix b = random_density(1, seed + 40).mat();
        const auto ea = encode(with_data_factor(a, false));
        const auto eb = encode(with_data_factor(b, false));
        const Complex lhs = (ea.mat() * eb.mat()).trace();
        const Complex rhs = (with_data_factor(a, false).mat() *
                             with_data_factor(b, false).mat())
                                .trace();
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("encoded Z deviation keeps unit logical-Z expectation") {
    const auto in = with_data_factor(pauli_matrix_1q(Pauli::Z), true);
    const auto out = encode(in);
    // logical-Z readout = data-Z after decoding, pulled back through decode
    const UnitaryOp dec = decode_circuit();
    const ComplexMatrix data_z = kron(kron(ComplexMatrix::Identity(2, 2),
                                           ComplexMatrix::Identity(2, 2)),
                                      pauli_matrix_1q(Pauli::Z));
    const ComplexMatrix logical_z =
        dec.mat().adjoint() * data_z * dec.mat();
    const double val = 0.5 * expectation(out, logical_z);
    CHECK(val == doctest::Approx(1.0).epsilon(1e-12));

    // the pulled-back observable is the diagonal string Z1 Z2 Z3, which is
    // why pure dephasing never touches the logical-Z readout
    ComplexMatrix offdiag = logical_z;
    offdiag.diagonal().setZero();
    CHECK(offdiag.cwiseAbs().maxCoeff() < 1e-12);
    const ComplexMatrix zzz =
        kron(kron(pauli_matrix_1q(Pauli::Z), pauli_matrix_1q(Pauli::Z)),
             pauli_matrix_1q(Pauli::Z));
    CHECK(approx_equal(logical_z, zzz, 1e-12));
}

TEST_CASE("encode rejects ancillas outside |00>") {
    ComplexMatrix one(2, 2);
    one << 0, 0, 0, 1;
    ComplexMatrix zero(2, 2);
    zero << 1, 0, 0, 0;
    const ComplexMatrix bad = kron(kron(one, zero), zero);
    CHECK_THROWS_AS(encode(DensityMatrix::density(3, bad, 1e-9)),
                    std::invalid_argument);
}

TEST_CASE("decode inverts encode without noise") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto in = with_data_factor(random_density(1, seed).mat(), false);
        const auto round = decode_correct(encode(in));
        CHECK(approx_equal(round.mat(), in.mat(), 1e-12));
    }
}

TEST_CASE("single-qubit Z errors are corrected exactly") {
    for (int q = 0; q < 3; ++q) {
        const QecEvaluator eval(make_channel(pauli(Pauli::Z, q, 3)));
        for (Pauli a : {Pauli::X, Pauli::Y, Pauli::Z}) {
            CHECK(state_correlation(eval, a) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("double and triple Z errors flip the transverse correlations") {
    const auto doubles = {
        pauli(Pauli::Z, 0, 3) * pauli(Pauli::Z, 1, 3),
        pauli(Pauli::Z, 0, 3) * pauli(Pauli::Z, 2, 3),
        pauli(Pauli::Z, 1, 3) * pauli(Pauli::Z, 2, 3),
        pauli(Pauli::Z, 0, 3) * pauli(Pauli::Z, 1, 3) * pauli(Pauli::Z, 2, 3)};
    for (const auto& err : doubles) {
        const QecEvaluator eval(make_channel(err));
        CHECK(state_correlation(eval, Pauli::X) ==
              doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(state_correlation(eval, Pauli::Y) ==
              doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(state_correlation(eval, Pauli::Z) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("identity channel gives unit correlations and fidelity") {
    const QecEvaluator eval(make_channel(identity_op(3)));
    const auto rep = entanglement_fidelity(eval);
    CHECK(rep.f_x == doctest::Approx(1.0));
    CHECK(rep.f_y == doctest::Approx(1.0));
    CHECK(rep.f_z == doctest::Approx(1.0));
    CHECK(rep.f_e == doctest::Approx(1.0));
}

TEST_CASE("full dephasing without a code kills transverse polarization") {
    // evaluator that sends the bare data qubit through {1/2 I, 1/2 Z}
    const WeightedUnitaryMixture full_dephase(
        {0.5, 0.5}, {identity_op(1), pauli(Pauli::Z, 0, 1)});
    const Evaluator1q bare = [&](Pauli a) {
        const auto dev = DensityMatrix::deviation(1, pauli_matrix_1q(a));
        return apply_mixture(dev, full_dephase);
    };
    CHECK(state_correlation(bare, Pauli::X) == doctest::Approx(0.0));
    CHECK(state_correlation(bare, Pauli::Y) == doctest::Approx(0.0));
    CHECK(state_correlation(bare, Pauli::Z) == doctest::Approx(1.0));
}

TEST_CASE("deterministic double error zeroes the entanglement fidelity") {
    const QecEvaluator eval(
        make_channel(pauli(Pauli::Z, 0, 3) * pauli(Pauli::Z, 1, 3)));
    CHECK(entanglement_fidelity(eval).f_e == doctest::Approx(0.0));
}

TEST_CASE("uncorrelated closed form from brute-force simulation") {
    // c = 0: F_E = (2 + a1 + a2 + a3 - a1 a2 a3) / 4
    const double g1 = 0.7, g2 = 1.9, g3 = 0.4, t = 0.23;
    const QecEvaluator eval(
        make_channel(three_qubit_params(g1, g2, g3, 0.0, t)));
    const double fe = entanglement_fidelity(eval, t).f_e;
    const double a1 = std::exp(-g1 * t), a2 = std::exp(-g2 * t),
                 a3 = std::exp(-g3 * t);
    CHECK(fe == doctest::Approx(0.25 * (2 + a1 + a2 + a3 - a1 * a2 * a3))
                    .epsilon(1e-12));
    CHECK(fe == doctest::Approx(closed_form_fe(g1, g2, g3, 0.0, t))
                    .epsilon(1e-12));
}

TEST_CASE("closed-form fidelity spot values") {
    CHECK(closed_form_fe(1.0, 2.0, 0.5, 0.7, 0.0) == doctest::Approx(1.0));

    const double g = 1.3, t = 0.4;
    const double a = std::exp(-g * t);
    CHECK(closed_form_fe(g, g, g, 0.0, t) ==
          doctest::Approx(0.25 * (2 + 3 * a - a * a * a)).epsilon(1e-13));

    const double g1 = 1.0 / 2.1, g2 = 1.0 / 0.24, g3 = 1.0 / 1.2;
    CHECK(closed_form_fe(g1, g2, g3, 1.0, 0.32) ==
          doctest::Approx(0.9098697268631463).epsilon(1e-12));
    CHECK(closed_form_fe(g1, g2, g3, 0.0, 0.32) ==
          doctest::Approx(0.9287064744452896).epsilon(1e-12));
}

TEST_CASE("analytic channel through the code matches the closed form") {
    const double g1 = 1.0 / 2.1, g2 = 1.0 / 0.24, g3 = 1.0 / 1.2;
    const QecEvaluator eval(
        make_channel(three_qubit_params(g1, g2, g3, 0.5, 0.1)));
    CHECK(std::abs(entanglement_fidelity(eval, 0.1).f_e -
                   closed_form_fe(g1, g2, g3, 0.5, 0.1)) < 1e-9);
}

TEST_CASE("closed-form agreement over the parameter grid") {
    for (double g1 : {0.2, 1.0, 4.0})
        for (double g2 : {0.2, 1.0, 4.0})
            for (double g3 : {0.2, 1.0, 4.0})
                for (double c : {0.0, 0.5, 1.0})
                    for (double t : {0.0, 0.15, 0.4}) {
                        const QecEvaluator eval(make_channel(
                            three_qubit_params(g1, g2, g3, c, t)));
                        CHECK(std::abs(entanglement_fidelity(eval, t).f_e -
                                       closed_form_fe(g1, g2, g3, c, t)) <
                              1e-9);
                    }
}

TEST_CASE("twelve-operator mixture reproduces the analytic fidelity") {
    const double g1 = 1.0 / 2.1, g2 = 1.0 / 0.24, g3 = 1.0 / 1.2;
    for (double c : {0.0, 0.5, 1.0})
        for (double t : {0.05, 0.2, 0.32}) {
            Eigen::VectorXd g(2);
            g << g1, g2;
            Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(2, 2);
            corr(0, 1) = corr(1, 0) = c;
            const auto mix =
                kraus_three_qubit(DephasingParams(2, g, corr, t), g3);
            const QecEvaluator eval(make_channel(mix));
            CHECK(std::abs(entanglement_fidelity(eval, t).f_e -
                           closed_form_fe(g1, g2, g3, c, t)) < 1e-9);
        }
}

TEST_CASE("fidelity is non-increasing in t") {
    for (double c : {0.0, 0.5, 1.0}) {
        double prev = 1.1;
        for (double t = 0.0; t <= 0.41; t += 0.05) {
            const double fe = closed_form_fe(0.9, 2.2, 0.6, c, t);
            CHECK(fe <= prev + 1e-15);
            prev = fe;
        }
    }
}

TEST_CASE("f_z stays 1 under any pure dephasing channel") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 15; ++trial) {
        const double g1 = 4.0 * rng.next_unit();
        const double g2 = 4.0 * rng.next_unit();
        const double g3 = 4.0 * rng.next_unit();
        const double c = rng.next_unit();
        const double t = rng.next_unit();
        const QecEvaluator eval(
            make_channel(three_qubit_params(g1, g2, g3, c, t)));
        CHECK(state_correlation(eval, Pauli::Z) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("fidelity report enforces its consistency invariant") {
    const FidelityReport rep(0.5, 0.25, 1.0, 0.1);
    CHECK(rep.f_e == doctest::Approx(0.25 * (1 + 0.5 + 0.25 + 1.0)));
    CHECK(rep.t == 0.1);
    CHECK_THROWS_AS(FidelityReport(1.5, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("alternative layout: data on qubit 0") {
    const QecLayout layout(0, 1, 2);
    // single error correction must hold in any layout
    for (int q = 0; q < 3; ++q) {
        const QecEvaluator eval(make_channel(pauli(Pauli::Z, q, 3)), layout);
        for (Pauli a : {Pauli::X, Pauli::Y, Pauli::Z})
            CHECK(state_correlation(eval, a) ==
                  doctest::Approx(1.0).epsilon(1e-12));
    }
}
