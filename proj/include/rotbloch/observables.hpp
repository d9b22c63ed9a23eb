// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rotbloch/quantum_propagator.hpp"
#include "rotbloch/rotor_basis.hpp"

#include <optional>
#include <vector>

namespace rotbloch {

/// One point of a dense ⟨cos²θ⟩(t) trace; time in revivals since the first kick.
struct TracePoint {
    double time = 0.0;
    double alignment = 0.0;
};

/// Per-pulse time-averaged alignment ("population alignment").
struct AlignmentSeries {
    double initial = 1.0 / 3.0;  // before the first kick
    std::vector<double> values;  // values[n-1] after kick n
    int samples_per_revival = 100;
    std::optional<std::vector<TracePoint>> trace;

    [[nodiscard]] int pulse_count() const noexcept { return static_cast<int>(values.size()); }
    /// Peak-to-trough spread of values.
    [[nodiscard]] double amplitude() const;
};

/// ⟨ψ|cos²θ|ψ⟩ = Σ|C_J|²·d_J + 2·Re Σ C*_{J+2}·C_J·o_J.
[[nodiscard]] double alignment_expectation(const RotationalState& state);

/// Coherence-free average over a full revival: Σ|C_J|²·d_J.
[[nodiscard]] double diagonal_alignment(const RotationalState& state);

/**
 * Mean of alignment_expectation over @p samples uniformly spaced delays
 * t_s = s/samples (s = 0..samples−1) spanning exactly one revival after the kick.
 */
[[nodiscard]] double population_alignment(const RotationalState& state_after_kick, int samples = 100);

/**
 * Thermally weighted population alignment after every kick, reduced in ensemble order.
 * With @p sampled false the diagonal closed form replaces the sampled average.
 */
[[nodiscard]] AlignmentSeries alignment_series(const std::vector<StroboscopicRecord>& records,
                                               const std::vector<EnsembleMember>& ensemble,
                                               int samples = 100, bool sampled = true);

/// Ensemble ⟨cos²θ⟩(t) across the whole train, @p samples_per_revival points per revival.
[[nodiscard]] std::vector<TracePoint> alignment_trace(const std::vector<StroboscopicRecord>& records,
                                                      const std::vector<EnsembleMember>& ensemble,
                                                      const PulseTrainSpec& train,
                                                      int samples_per_revival = 100);

/// Pearson correlation coefficient of two equally long sequences.
[[nodiscard]] double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace rotbloch
