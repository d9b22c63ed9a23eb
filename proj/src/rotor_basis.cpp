// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotbloch/rotor_basis.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace rotbloch {

namespace {

int lowest_j(int m, Parity parity) {
    const int am = std::abs(m);
    return (parity_of(am) == parity) ? am : am + 1;
}

void require_finite_nonnegative(double value, const char* what) {
    if (!std::isfinite(value) || value < 0.0) {
        throw std::invalid_argument(std::string(what) + " must be finite and non-negative");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// MoleculeSpec
// ---------------------------------------------------------------------------

MoleculeSpec::MoleculeSpec(double revival_ps, double even, double odd, double temperature)
    : revival_time_{revival_ps}, even_weight_(even), odd_weight_(odd), temperature_(temperature) {
    if (!std::isfinite(revival_ps) || revival_ps <= 0.0) {
        throw std::invalid_argument("revival time must be positive");
    }
    require_finite_nonnegative(even, "even-J spin weight");
    require_finite_nonnegative(odd, "odd-J spin weight");
    require_finite_nonnegative(temperature, "temperature");
    if (even + odd <= 0.0) {
        throw std::invalid_argument("spin weights must not both be zero");
    }
}

MoleculeSpec MoleculeSpec::from_revival_time(Picoseconds revival_time, double even_j_weight,
                                             double odd_j_weight, double temperature_k) {
    return {revival_time.value, even_j_weight, odd_j_weight, temperature_k};
}

MoleculeSpec MoleculeSpec::from_rotational_constant(double rad_per_ps, double even_j_weight,
                                                    double odd_j_weight, double temperature_k) {
    if (!std::isfinite(rad_per_ps) || rad_per_ps <= 0.0) {
        throw std::invalid_argument("rotational constant must be positive");
    }
    return {constants::pi / rad_per_ps, even_j_weight, odd_j_weight, temperature_k};
}

MoleculeSpec MoleculeSpec::from_wavenumber(double b_cm, double even_j_weight, double odd_j_weight,
                                           double temperature_k) {
    if (!std::isfinite(b_cm) || b_cm <= 0.0) {
        throw std::invalid_argument("rotational constant must be positive");
    }
    const double revival_ps = 1e12 / (2.0 * constants::speed_of_light_cm * b_cm);
    return {revival_ps, even_j_weight, odd_j_weight, temperature_k};
}

MoleculeSpec MoleculeSpec::nitrogen14(double temperature_k) {
    return from_revival_time(Picoseconds{8.38}, 2.0, 1.0, temperature_k);
}

double MoleculeSpec::rotational_constant() const noexcept {
    return constants::pi / revival_time_.value;
}

double MoleculeSpec::rotational_temperature_ratio() const {
    if (temperature_ == 0.0) return std::numeric_limits<double>::infinity();
    const double b_joule = constants::hbar_js * constants::pi / (revival_time_.value * 1e-12);
    return b_joule / (constants::boltzmann_jk * temperature_);
}

// ---------------------------------------------------------------------------
// BasisWindow / RotationalState
// ---------------------------------------------------------------------------

BasisWindow::BasisWindow(int m, Parity parity, int j_max, int buffer)
    : m_(m), parity_(parity), j_max_(j_max), buffer_(buffer), j_min_(lowest_j(m, parity)) {
    if (buffer < 2) throw std::invalid_argument("window buffer must be at least 2");
    if (j_max < j_min_) {
        throw std::invalid_argument("window j_max " + std::to_string(j_max) +
                                    " is below the lowest level " + std::to_string(j_min_));
    }
    const int edge = j_max + buffer;
    j_top_ = (parity_of(edge) == parity) ? edge : edge - 1;
}

bool BasisWindow::contains(int j) const noexcept {
    return j >= j_min_ && j <= j_top_ && parity_of(j) == parity_;
}

std::size_t BasisWindow::index_of(int j) const {
    if (!contains(j)) {
        throw std::out_of_range("J=" + std::to_string(j) + " is not in the basis window");
    }
    return static_cast<std::size_t>((j - j_min_) / 2);
}

RotationalState::RotationalState(BasisWindow window, Eigen::VectorXcd amplitudes)
    : window_(window), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != window_.size()) {
        throw std::invalid_argument("amplitude vector does not match the basis window");
    }
}

RotationalState RotationalState::basis_state(const BasisWindow& window, int j) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(window.size()));
    c(static_cast<Eigen::Index>(window.index_of(j))) = 1.0;
    return {window, std::move(c)};
}

std::complex<double> RotationalState::amplitude(int j) const {
    if (!window_.contains(j)) return {0.0, 0.0};
    return amplitudes_(static_cast<Eigen::Index>(window_.index_of(j)));
}

double RotationalState::buffer_population() const noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i < window_.size(); ++i) {
        if (window_.j_at(i) > window_.j_max()) sum += std::norm(amplitudes_(static_cast<Eigen::Index>(i)));
    }
    return sum;
}

double RotationalState::mean_j() const noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i < window_.size(); ++i) {
        sum += window_.j_at(i) * std::norm(amplitudes_(static_cast<Eigen::Index>(i)));
    }
    return sum;
}

RotationalState RotationalState::embedded_in(const BasisWindow& larger) const {
    if (larger.m() != window_.m() || larger.parity() != window_.parity() ||
        larger.j_top() < window_.j_top()) {
        throw std::invalid_argument("target window cannot hold this state");
    }
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(larger.size()));
    c.head(amplitudes_.size()) = amplitudes_;
    return {larger, std::move(c)};
}

// ---------------------------------------------------------------------------
// cos²θ
// ---------------------------------------------------------------------------

double cos2_diagonal(int j, int m) {
    if (j < std::abs(m)) throw std::domain_error("cos2 element requires J >= |M|");
    const double jj = j;
    const double mm = static_cast<double>(m) * m;
    return 1.0 / 3.0 +
           (2.0 / 3.0) * (jj * (jj + 1.0) - 3.0 * mm) / ((2.0 * jj - 1.0) * (2.0 * jj + 3.0));
}

double cos2_off_diagonal(int j, int m) {
    if (j < std::abs(m)) throw std::domain_error("cos2 element requires J >= |M|");
    const double jj = j;
    const double mm = static_cast<double>(m) * m;
    const double num = ((jj + 1.0) * (jj + 1.0) - mm) * ((jj + 2.0) * (jj + 2.0) - mm);
    const double den = (2.0 * jj + 1.0) * (2.0 * jj + 5.0);
    return std::sqrt(num / den) / (2.0 * jj + 3.0);
}

double cos2_matrix_element(int j, int j_prime, int m) {
    if (j < std::abs(m) || j_prime < std::abs(m)) {
        throw std::domain_error("cos2 element requires J, J' >= |M|");
    }
    if (j == j_prime) return cos2_diagonal(j, m);
    if (j_prime == j + 2) return cos2_off_diagonal(j, m);
    if (j == j_prime + 2) return cos2_off_diagonal(j_prime, m);
    return 0.0;
}

Eigen::MatrixXd cos2_matrix(const BasisWindow& window) {
    const auto n = static_cast<Eigen::Index>(window.size());
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int j = window.j_at(static_cast<std::size_t>(i));
        x(i, i) = cos2_diagonal(j, window.m());
        if (i + 1 < n) {
            x(i, i + 1) = x(i + 1, i) = cos2_off_diagonal(j, window.m());
        }
    }
    return x;
}

// ---------------------------------------------------------------------------
// Free evolution
// ---------------------------------------------------------------------------

RotationalState free_propagate(const RotationalState& state, Revivals t) {
    if (!(t.value >= 0.0)) throw std::invalid_argument("free propagation time must be >= 0");
    // π·J(J+1)·t = 2π·q·t with q = J(J+1)/2 an integer, so only the fractional
    // part of q·t matters. Reducing t first keeps integer revivals exact.
    const double t_frac = t.value - std::round(t.value);
    const BasisWindow& w = state.window();
    Eigen::VectorXcd c = state.amplitudes();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const std::int64_t j = w.j_at(i);
        const auto q = static_cast<double>(j * (j + 1) / 2);
        double turns = q * t_frac;
        turns -= std::round(turns);
        c(static_cast<Eigen::Index>(i)) *= std::polar(1.0, -2.0 * constants::pi * turns);
    }
    return {w, std::move(c)};
}

RotationalState free_propagate(const RotationalState& state, Picoseconds t,
                               const MoleculeSpec& molecule) {
    return free_propagate(state, molecule.to_revivals(t));
}

// ---------------------------------------------------------------------------
// Thermal ensemble
// ---------------------------------------------------------------------------

std::vector<EnsembleMember> thermal_ensemble(const MoleculeSpec& molecule, double weight_cutoff) {
    if (!(weight_cutoff > 0.0 && weight_cutoff < 1.0)) {
        throw std::invalid_argument("weight cutoff must lie in (0, 1)");
    }

    if (molecule.temperature() == 0.0) {
        const int j0 = molecule.even_j_weight() > 0.0 ? 0 : 1;
        std::vector<EnsembleMember> ground;
        for (int m = -j0; m <= j0; ++m) ground.push_back({j0, m, 1.0 / (2 * j0 + 1)});
        return ground;
    }

    const double x = molecule.rotational_temperature_ratio();
    // Level populations g(J)(2J+1)exp(−x·J(J+1)) until the exponential underflows.
    std::vector<double> level;
    for (int j = 0;; ++j) {
        const double exponent = x * j * (j + 1.0);
        if (exponent > 745.0) break;
        level.push_back(molecule.spin_weight(j) * (2.0 * j + 1.0) * std::exp(-exponent));
    }

    // Tail sums from the top so small terms are accumulated first.
    std::vector<double> tail(level.size() + 1, 0.0);
    for (std::size_t j = level.size(); j-- > 0;) tail[j] = tail[j + 1] + level[j];
    const double total = tail[0];

    std::size_t kept = 1;
    while (kept < level.size() && tail[kept] >= weight_cutoff * total) ++kept;
    const double kept_total = total - tail[kept];

    std::vector<EnsembleMember> members;
    for (std::size_t j = 0; j < kept; ++j) {
        if (level[j] == 0.0) continue;
        const int jj = static_cast<int>(j);
        const double share = level[j] / kept_total / (2.0 * jj + 1.0);
        for (int m = -jj; m <= jj; ++m) members.push_back({jj, m, share});
    }
    return members;
}

}  // namespace rotbloch
