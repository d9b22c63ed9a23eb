// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rotor_basis.hpp
 * @brief Rigid-rotor basis: molecule parameters, cos²θ matrix elements,
 *        field-free propagation and thermal initial ensembles.
 *
 * All dynamics run in units of the revival time t_rev = πħ/B. A field-free
 * |J,M⟩ amplitude picks up exp(−iπ·J(J+1)·t/t_rev); since J(J+1) is always
 * even the wave packet rephases exactly at every integer t/t_rev.
 *
 * Physical units (ps, K, cm⁻¹) only enter through MoleculeSpec.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace rotbloch {

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double hbar_js = 1.054571817e-34;      // J·s
inline constexpr double boltzmann_jk = 1.380649e-23;    // J/K
inline constexpr double speed_of_light_cm = 2.99792458e10;  // cm/s
}  // namespace constants

/// A duration in picoseconds.
struct Picoseconds {
    double value = 0.0;
};

/// A duration measured in revival times (t / t_rev).
struct Revivals {
    double value = 0.0;
};

/**
 * Rotor species and thermal conditions.
 *
 * Built from exactly one of revival time or rotational constant; the other is
 * derived via t_rev = π/B (B as an angular frequency).
 */
class MoleculeSpec {
public:
    static MoleculeSpec from_revival_time(Picoseconds revival_time, double even_j_weight,
                                          double odd_j_weight, double temperature_k);
    /// @param rad_per_ps rotational constant B/ħ as an angular frequency.
    static MoleculeSpec from_rotational_constant(double rad_per_ps, double even_j_weight,
                                                 double odd_j_weight, double temperature_k);
    /// Spectroscopic constant in cm⁻¹ (t_rev = 1/(2cB̃)).
    static MoleculeSpec from_wavenumber(double b_cm, double even_j_weight, double odd_j_weight,
                                        double temperature_k);
    /// ¹⁴N₂: t_rev = 8.38 ps, even:odd nuclear-spin weights 2:1.
    static MoleculeSpec nitrogen14(double temperature_k);

    [[nodiscard]] Picoseconds revival_time() const noexcept { return revival_time_; }
    [[nodiscard]] double rotational_constant() const noexcept;  // rad/ps
    [[nodiscard]] double even_j_weight() const noexcept { return even_weight_; }
    [[nodiscard]] double odd_j_weight() const noexcept { return odd_weight_; }
    [[nodiscard]] double temperature() const noexcept { return temperature_; }

    /// Nuclear-spin statistical weight of level J.
    [[nodiscard]] double spin_weight(int j) const noexcept {
        return (j % 2 == 0) ? even_weight_ : odd_weight_;
    }

    /// ħB/(k_B·T): Boltzmann exponent per unit J(J+1). Infinite at T = 0.
    [[nodiscard]] double rotational_temperature_ratio() const;

    [[nodiscard]] Revivals to_revivals(Picoseconds t) const noexcept {
        return {t.value / revival_time_.value};
    }

private:
    MoleculeSpec(double revival_ps, double even, double odd, double temperature);

    Picoseconds revival_time_;
    double even_weight_;
    double odd_weight_;
    double temperature_;
};

enum class Parity { even = 0, odd = 1 };

[[nodiscard]] constexpr Parity parity_of(int j) noexcept {
    return (j % 2 == 0) ? Parity::even : Parity::odd;
}

/**
 * Ladder of J levels at fixed M and fixed parity, J = j_min, j_min+2, ..., j_top.
 *
 * Levels above j_max (up to j_max + buffer) form the truncation buffer; population
 * found there signals that the window is too small.
 */
class BasisWindow {
public:
    BasisWindow(int m, Parity parity, int j_max, int buffer);

    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] Parity parity() const noexcept { return parity_; }
    [[nodiscard]] int j_max() const noexcept { return j_max_; }
    [[nodiscard]] int buffer() const noexcept { return buffer_; }
    [[nodiscard]] int j_min() const noexcept { return j_min_; }
    [[nodiscard]] int j_top() const noexcept { return j_top_; }
    [[nodiscard]] std::size_t size() const noexcept {
        return static_cast<std::size_t>((j_top_ - j_min_) / 2 + 1);
    }
    [[nodiscard]] int j_at(std::size_t index) const noexcept {
        return j_min_ + 2 * static_cast<int>(index);
    }
    [[nodiscard]] bool contains(int j) const noexcept;
    [[nodiscard]] std::size_t index_of(int j) const;

    /// Same M, parity and buffer with a larger j_max.
    [[nodiscard]] BasisWindow with_j_max(int j_max) const { return {m_, parity_, j_max, buffer_}; }

    friend bool operator==(const BasisWindow&, const BasisWindow&) = default;

private:
    int m_;
    Parity parity_;
    int j_max_;
    int buffer_;
    int j_min_;
    int j_top_;
};

/// Complex amplitudes C_J over a BasisWindow.
class RotationalState {
public:
    RotationalState(BasisWindow window, Eigen::VectorXcd amplitudes);

    /// |J, M⟩ with M and parity taken from the window.
    static RotationalState basis_state(const BasisWindow& window, int j);

    [[nodiscard]] const BasisWindow& window() const noexcept { return window_; }
    [[nodiscard]] const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
    /// Zero for J outside the window.
    [[nodiscard]] std::complex<double> amplitude(int j) const;

    [[nodiscard]] double norm_squared() const noexcept { return amplitudes_.squaredNorm(); }
    /// Σ|C_J|² over the buffer levels J > j_max.
    [[nodiscard]] double buffer_population() const noexcept;
    [[nodiscard]] bool within_leakage(double tolerance) const noexcept {
        return buffer_population() < tolerance;
    }
    [[nodiscard]] double mean_j() const noexcept;

    /// Copy of this state in a window with the same M and parity and a larger top.
    [[nodiscard]] RotationalState embedded_in(const BasisWindow& larger) const;

private:
    BasisWindow window_;
    Eigen::VectorXcd amplitudes_;
};

/// ⟨J,M|cos²θ|J,M⟩.
[[nodiscard]] double cos2_diagonal(int j, int m);
/// ⟨J+2,M|cos²θ|J,M⟩.
[[nodiscard]] double cos2_off_diagonal(int j, int m);

/**
 * ⟨J′,M|cos²θ|J,M⟩ from the closed forms. Nonzero only for J′ ∈ {J, J±2}.
 * @throws std::domain_error if j or j_prime is below |m|.
 */
[[nodiscard]] double cos2_matrix_element(int j, int j_prime, int m);

/// cos²θ restricted to a window: real symmetric tridiagonal in ladder index.
[[nodiscard]] Eigen::MatrixXd cos2_matrix(const BasisWindow& window);

/// C_J ← exp(−iπ·J(J+1)·t)·C_J with t in revival times. Requires t ≥ 0.
[[nodiscard]] RotationalState free_propagate(const RotationalState& state, Revivals t);
[[nodiscard]] RotationalState free_propagate(const RotationalState& state, Picoseconds t,
                                             const MoleculeSpec& molecule);

/// One initial |J₀, M₀⟩ of a thermal ensemble.
struct EnsembleMember {
    int j0 = 0;
    int m0 = 0;
    double weight = 0.0;

    friend bool operator==(const EnsembleMember&, const EnsembleMember&) = default;
};

/**
 * Boltzmann-weighted initial states including nuclear-spin statistics, ordered
 * by (J₀, M₀). Levels are kept from J₀ = 0 upward until the discarded tail
 * carries less than @p weight_cutoff of the total population; the kept weights
 * are renormalized to one. Each of the 2J₀+1 M₀ values shares its level equally.
 */
[[nodiscard]] std::vector<EnsembleMember> thermal_ensemble(const MoleculeSpec& molecule,
                                                           double weight_cutoff = 1e-6);

}  // namespace rotbloch
