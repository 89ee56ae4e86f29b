// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "qnp/dephase.hpp"
#include "qnp/estimate_types.hpp"
#include "qnp/opcore.hpp"

namespace qnp {

// Weak-coupling liquid-state spin Hamiltonian:
// H = sum_i pi nu_i Z_i + sum_{i<j} (pi/2) J_ij Z_i Z_j   (angular units).
// H is diagonal, so free evolution acts element-wise on phases.
struct SpinSystem {
    int n_spins;
    Eigen::VectorXd offsets_hz;   // Larmor offsets nu_i
    Eigen::MatrixXd j_hz;         // symmetric coupling matrix, zero diagonal
    Eigen::VectorXd t2_s;         // per-spin transverse relaxation times

    SpinSystem(int n, Eigen::VectorXd offsets, Eigen::MatrixXd j,
               Eigen::VectorXd t2);

    Eigen::VectorXd gamma() const;  // 1/T2 per spin

    /// |nu_i - nu_j| > 10 |J_ij| / 2 for every coupled pair. The Hamiltonian
    /// above is only a faithful model when this holds; zero-offset systems
    /// are still constructible for rotating-frame identities.
    bool weak_coupling_valid() const;
};

struct DelayEvent {
    double duration_s;
    bool with_dephasing = true;
};

struct PulseEvent {
    int spin;
    double phase_axis_rad;  // axis in the xy-plane
    double angle_rad;
};

struct SimultaneousPulses {
    std::vector<PulseEvent> pulses;
};

using SequenceEvent = std::variant<DelayEvent, PulseEvent, SimultaneousPulses>;

DensityMatrix free_evolution(const DensityMatrix& rho, const SpinSystem& sys,
                             double t);

/// Runs a pulse sequence. Delays compose free evolution with the analytic
/// dephasing channel for the same duration (both diagonal, so the order is
/// immaterial); dephasing requires `corr` and uses gamma_i = 1/T2_i. Pulses
/// are instantaneous ideal rotations.
DensityMatrix run_sequence(const DensityMatrix& rho, const SpinSystem& sys,
                           const std::vector<SequenceEvent>& events,
                           const std::optional<Eigen::MatrixXd>& corr = {});

/// Double-quantum coherence decay: prepares |00><11| + h.c. on spins 0 and 1,
/// runs the tau/2 - (pi,pi) - tau/2 echo with dephasing, applies a pi/2
/// readout pulse on spin 1 and reports the detected amplitude normalized to
/// tau = 0. Equals exp(-(g1+g2) tau - 2 c12 tau sqrt(g1 g2)).
DecayCurve dq_decay_experiment(const SpinSystem& sys, double c12,
                               const std::vector<double>& tau_list);

struct RefocusingCheck {
    double with_decoupling;  // mid-delay pi pulse on one spin of the pair
    double without;          // plain delay
};

/// A pi pulse on one spin halfway through the delay flips that spin's
/// coherence signature for the second half, cancelling the correlation term;
/// the undisturbed delay keeps it.
RefocusingCheck refocusing_cancellation_check(const SpinSystem& sys,
                                              double c12, double tau);

}  // namespace qnp
