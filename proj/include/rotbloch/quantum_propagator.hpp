// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file quantum_propagator.hpp
 * @brief Delta-kick pulse trains acting on rotational wave packets.
 *
 * A kick of strength P is the unitary exp(i·P·cos²θ). Between kicks the state
 * evolves freely for τ = (1+δ)·t_rev. Records are stroboscopic: one snapshot
 * immediately after each kick.
 */

#pragma once

#include "rotbloch/rotor_basis.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

namespace rotbloch {

struct PulseTrainSpec {
    double kick_strength = 0.0;  // P
    double detuning = 0.0;       // δ
    int pulse_count = 1;         // N

    /// τ = (1+δ)·t_rev.
    [[nodiscard]] Revivals pulse_period() const noexcept { return {1.0 + detuning}; }

    /// Train whose detuning is derived from a physical pulse spacing: δ = τ/t_rev − 1.
    static PulseTrainSpec from_pulse_period(double kick_strength, Picoseconds tau,
                                            const MoleculeSpec& molecule, int pulse_count);

    /// @throws std::invalid_argument unless P ≥ 0, δ > −1 and N ≥ 1.
    void validate() const;
};

/**
 * exp(i·P·X) on a window, X the cos²θ matrix. Built from the eigendecomposition
 * X = V·diag(λ)·Vᵀ so the result is unitary to rounding.
 */
class KickOperator {
public:
    KickOperator(const BasisWindow& window, double kick_strength);

    [[nodiscard]] const BasisWindow& window() const noexcept { return window_; }
    [[nodiscard]] double kick_strength() const noexcept { return kick_strength_; }
    [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

    /// Applies the kick. The state's window must have the same |M|, parity and extent.
    [[nodiscard]] RotationalState apply(const RotationalState& state) const;

private:
    BasisWindow window_;
    double kick_strength_;
    Eigen::MatrixXcd matrix_;
};

[[nodiscard]] inline KickOperator kick_operator(const BasisWindow& window, double kick_strength) {
    return {window, kick_strength};
}

/// Memoizes kick operators by (|M|, parity, j_max, buffer, P). Not thread-safe; use one per worker.
class KickCache {
public:
    const KickOperator& get(const BasisWindow& window, double kick_strength);
    [[nodiscard]] std::size_t size() const noexcept { return cache_.size(); }

private:
    using Key = std::tuple<int, int, int, int, std::uint64_t>;
    std::map<Key, KickOperator> cache_;
};

struct PropagationOptions {
    /// Largest population tolerated in the buffer levels after a kick.
    double leakage_tolerance = 1e-8;
    /// Windows are doubled on leakage until j_max would exceed this.
    int j_max_ceiling = 1024;
};

/// Snapshots just after kicks n = 1..N, plus the state before the first kick.
struct StroboscopicRecord {
    RotationalState initial;
    std::vector<RotationalState> snapshots;
    /// Number of times the window was doubled to contain the dynamics.
    int window_growths = 0;

    [[nodiscard]] int pulse_count() const noexcept { return static_cast<int>(snapshots.size()); }
    /// n = 0 is the initial state; n ≥ 1 the state after the n-th kick.
    [[nodiscard]] const RotationalState& at(int n) const {
        return n == 0 ? initial : snapshots.at(static_cast<std::size_t>(n - 1));
    }
};

/**
 * Kick, free τ, kick, ... starting with a kick. On leakage into the buffer the
 * whole run restarts in a window with doubled j_max.
 *
 * @throws LeakageError when the window would exceed options.j_max_ceiling.
 */
[[nodiscard]] StroboscopicRecord propagate_train(const RotationalState& initial,
                                                 const PulseTrainSpec& train,
                                                 const PropagationOptions& options = {});
[[nodiscard]] StroboscopicRecord propagate_train(const RotationalState& initial,
                                                 const PulseTrainSpec& train,
                                                 const PropagationOptions& options,
                                                 KickCache& cache);

/// Initial window size used for every ensemble member.
struct WindowSettings {
    int j_max = 60;
    int buffer = 6;
};

/**
 * Propagates every ensemble member independently, in parallel over @p threads
 * workers (0 picks the hardware concurrency). Records are returned in ensemble
 * order and do not depend on the worker count.
 */
[[nodiscard]] std::vector<StroboscopicRecord> propagate_ensemble(
    const std::vector<EnsembleMember>& ensemble, const PulseTrainSpec& train,
    const WindowSettings& windows, const PropagationOptions& options = {}, unsigned threads = 0);

/// Thermally weighted J populations; row n = pulse number (0 = before the first kick).
struct PopulationHistory {
    Eigen::MatrixXd populations;  // (N+1) × (J_top+1)

    [[nodiscard]] int pulse_count() const noexcept {
        return static_cast<int>(populations.rows()) - 1;
    }
    [[nodiscard]] int j_top() const noexcept { return static_cast<int>(populations.cols()) - 1; }
    /// Population-weighted ⟨J⟩ for each row.
    [[nodiscard]] std::vector<double> mean_j() const;
};

/**
 * p_n(J) = Σ_members w·|C_J(n)|², reduced in ensemble order.
 * @throws std::invalid_argument if records and ensemble disagree in size or pulse count.
 */
[[nodiscard]] PopulationHistory population_history(const std::vector<StroboscopicRecord>& records,
                                                   const std::vector<EnsembleMember>& ensemble);

/// Runs body(i, worker) for i in [0, count) on @p threads workers (0 = hardware concurrency).
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, unsigned)>& body);

}  // namespace rotbloch
