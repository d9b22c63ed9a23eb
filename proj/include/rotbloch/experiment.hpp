// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file experiment.hpp
 * @brief Experiment configuration and the drivers behind the CLI subcommands.
 *
 * Config files are flat `key = value` text, `#` starts a comment, list values
 * are comma separated:
 *
 *     kind = alignment_series
 *     revival_time_ps = 8.38
 *     temperature_K = 298
 *     kick_strength = 3, 5
 *     detuning = -0.002, -0.004
 *
 * Every driver returns a Table whose metadata records the library version and
 * every config value.
 */

#pragma once

#include "rotbloch/quantum_propagator.hpp"
#include "rotbloch/rotor_basis.hpp"
#include "rotbloch/table.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rotbloch {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ExperimentKind { populations, alignment_series, period_sweep, semiclassical_sweep };
enum class OutputFormat { csv, json };

[[nodiscard]] std::string_view to_string(ExperimentKind kind) noexcept;
[[nodiscard]] std::string_view to_string(OutputFormat format) noexcept;

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::populations;

    // molecule
    double revival_time_ps = 8.38;
    double even_weight = 2.0;
    double odd_weight = 1.0;
    double temperature_k = 298.0;

    // pulse train
    std::vector<double> kick_strengths{5.0};
    std::vector<double> detunings{-0.002};
    /// When set, replaces the detuning list with the single value τ/t_rev − 1.
    std::optional<double> pulse_period_ps;
    int pulses = 8;

    // numerics
    int j_max = 60;
    int buffer = 6;
    int samples = 100;
    double weight_cutoff = 1e-6;
    double leakage_tolerance = 1e-8;
    int j_max_ceiling = 1024;
    int fit_degree = 4;
    double semiclassical_dn = 1e-3;
    double semiclassical_n_max = 500.0;

    // output
    std::string out;  // empty: standard output
    OutputFormat format = OutputFormat::csv;

    /// @throws ConfigError on any out-of-range or inconsistent value.
    void validate() const;

    [[nodiscard]] MoleculeSpec molecule() const;
    [[nodiscard]] std::vector<double> effective_detunings() const;
    [[nodiscard]] WindowSettings windows() const { return {j_max, buffer}; }
    [[nodiscard]] PropagationOptions propagation() const {
        return {leakage_tolerance, j_max_ceiling};
    }

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Sets one key from its text form. @throws ConfigError for unknown keys or bad values.
void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Applies every `key = value` line of @p text on top of @p base.
[[nodiscard]] ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path,
                                           ExperimentConfig base = {});

/// All keys in a fixed order, values in the text form accepted by set_config_value.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> config_entries(
    const ExperimentConfig& config);
[[nodiscard]] std::string serialize_config(const ExperimentConfig& config);

/// Per-pulse population table: columns n, J0 … Jtop; row n = 0 is the thermal start.
[[nodiscard]] Table run_populations(const ExperimentConfig& config, unsigned threads = 0);

/// Population alignment for each (P, δ) pair, P-major; row n = 0 is before the first kick.
[[nodiscard]] Table run_alignment_series(const ExperimentConfig& config, unsigned threads = 0);

/**
 * Quantum (fitted alignment series) and semiclassical periods over the detuning
 * list at a single kick strength. Cells without a period are left empty with a warning.
 *
 * @throws NoExtremumError if no cell in the whole sweep has a period.
 */
[[nodiscard]] Table run_period_sweep(const ExperimentConfig& config, unsigned threads = 0);

/// Semiclassical periods: columns delta, period[P=…] for every kick strength.
[[nodiscard]] Table run_semiclassical_sweep(const ExperimentConfig& config);

/// Dispatches on config.kind.
[[nodiscard]] Table run_experiment(const ExperimentConfig& config, unsigned threads = 0);

}  // namespace rotbloch
