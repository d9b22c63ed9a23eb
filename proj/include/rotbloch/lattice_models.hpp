// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file lattice_models.hpp
 * @brief Reduced models of the detuned kicked rotor.
 *
 * The J-ladder of one parity is a 1D lattice with spacing 2. Kicks hop between
 * neighbouring sites with amplitude P/4 and the detuning adds the on-site
 * potential V(J) = π·δ·J(J+1) per pulse. Three levels of description:
 *
 *  - tb_map_step: the first-order pulse-to-pulse difference map
 *        C_J ← C_J + i(P/4)(C_{J+2} + C_{J−2}) − i·V(J)·C_J
 *  - tb_ode_evolve: the continuum limit
 *        i dC_J/dn = −(P/4)(C_{J+2} + C_{J−2}) + V(J)·C_J
 *    whose δ = 0 band is ε(k) = −(P/2)cos(2k)
 *  - semiclassical_trajectory: wave-packet centre dynamics
 *        dk/dn = −dV/dJ = −π·δ·(2J+1),   dJ/dn = dε/dk = P·sin(2k)
 */

#pragma once

#include "rotbloch/rotor_basis.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace rotbloch {

enum class LatticeTopology {
    open,  // zero amplitude beyond the first and last site
    ring,  // periodic wrap; used to check the Bloch-wave dispersion
};

inline constexpr int kDefaultLatticeJMax = 200;

class LatticeState {
public:
    LatticeState(Parity parity, double delta, Eigen::VectorXcd amplitudes,
                 LatticeTopology topology = LatticeTopology::open);

    /// |J⟩ on the open sublattice of J's parity, sites up to @p j_site_max.
    static LatticeState single_site(int j, double delta, int j_site_max = kDefaultLatticeJMax);
    /// Normalized C_J ∝ exp(i·k·J) on an even-parity ring of @p sites sites.
    static LatticeState ring_bloch_wave(std::size_t sites, double k, double delta);

    [[nodiscard]] Parity parity() const noexcept { return parity_; }
    [[nodiscard]] double delta() const noexcept { return delta_; }
    [[nodiscard]] LatticeTopology topology() const noexcept { return topology_; }
    [[nodiscard]] const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::size_t size() const noexcept {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    [[nodiscard]] int j_at(std::size_t site) const noexcept {
        return static_cast<int>(parity_) + 2 * static_cast<int>(site);
    }
    /// V(J) = π·δ·J(J+1).
    [[nodiscard]] double on_site_potential(std::size_t site) const noexcept;

    [[nodiscard]] double norm_squared() const noexcept { return amplitudes_.squaredNorm(); }
    [[nodiscard]] double mean_j() const noexcept;
    /// Set once the last open-lattice site holds more than 1e-12 of population.
    [[nodiscard]] bool boundary_reached() const noexcept { return boundary_reached_; }

    [[nodiscard]] LatticeState with_amplitudes(Eigen::VectorXcd amplitudes) const;

private:
    Parity parity_;
    double delta_;
    Eigen::VectorXcd amplitudes_;
    LatticeTopology topology_;
    bool boundary_reached_ = false;
};

/// One step of the difference map, evaluated simultaneously from the pre-step amplitudes.
/// Not norm-preserving: the error is O(P²) per step.
[[nodiscard]] LatticeState tb_map_step(const LatticeState& state, double kick_strength);

/**
 * Integrates the continuum equation over @p n_total pulses with classical RK4
 * steps of at most @p dn. V reaches a few hundred on a 200-site lattice,
 * which plain RK4 cannot step stably at dn ~ 0.01, so the part of V beyond
 * |V|·h = 1 is moved into an integrating factor and solved exactly. Where
 * |V|·h ≤ 1 on every site this is ordinary RK4 on the full equation; the
 * stiff sites sit far from any populated J. The norm is not renormalized.
 * @throws StepSizeError unless 0 < dn ≤ 0.1.
 */
[[nodiscard]] LatticeState tb_ode_evolve(const LatticeState& state, double kick_strength,
                                         double n_total, double dn);

/// ε(k) = −(P/2)·cos(2k).
[[nodiscard]] double dispersion(double k, double kick_strength) noexcept;
/// dε/dk = P·sin(2k).
[[nodiscard]] double group_velocity(double k, double kick_strength) noexcept;

struct TrajectorySample {
    double n = 0.0;
    double j = 0.0;
    double k = 0.0;  // unwrapped
};

struct SemiClassicalTrajectory {
    std::vector<TrajectorySample> samples;
    /// Bloch period in pulses; empty if J never returned to j0 within the run.
    std::optional<double> period;
};

/// ε(k) + V(J): conserved along semiclassical trajectories.
[[nodiscard]] double semiclassical_energy(double kick_strength, double delta, double j,
                                          double k) noexcept;

/**
 * RK4 integration of the wave-packet equations from (j0, k0) to n_max.
 *
 * The period is the first time J crosses back through j0 after leaving it,
 * located by linear interpolation between the bracketing steps. Starting at
 * the band centre k0 = π/4 this is one sweep of k across half the zone
 * (|Δk| = π/2). J is not clamped at zero.
 *
 * @throws StepSizeError unless 0 < dn ≤ 0.01.
 */
[[nodiscard]] SemiClassicalTrajectory semiclassical_trajectory(double kick_strength, double delta,
                                                               double j0, double k0, double n_max,
                                                               double dn = 1e-3);

/// Period from J(0) = 0, k(0) = π/4; empty for δ = 0 or when longer than @p n_max.
[[nodiscard]] std::optional<double> semiclassical_period(double kick_strength, double delta,
                                                         double n_max = 500.0, double dn = 1e-3);

}  // namespace rotbloch
