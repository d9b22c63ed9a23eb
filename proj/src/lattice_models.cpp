// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotbloch/lattice_models.hpp"

#include "rotbloch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rotbloch {

using constants::pi;

namespace {

constexpr double kBoundaryPopulation = 1e-12;

/// (C_{J+2} + C_{J−2}) for every site.
Eigen::VectorXcd neighbour_sum(const Eigen::VectorXcd& c, LatticeTopology topology) {
    const Eigen::Index n = c.size();
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(n);
    if (n < 2) return s;
    s.head(n - 1) += c.tail(n - 1);
    s.tail(n - 1) += c.head(n - 1);
    if (topology == LatticeTopology::ring) {
        s(0) += c(n - 1);
        s(n - 1) += c(0);
    }
    return s;
}

}  // namespace

LatticeState::LatticeState(Parity parity, double delta, Eigen::VectorXcd amplitudes,
                           LatticeTopology topology)
    : parity_(parity), delta_(delta), amplitudes_(std::move(amplitudes)), topology_(topology) {
    if (amplitudes_.size() == 0) throw std::invalid_argument("lattice needs at least one site");
}

LatticeState LatticeState::single_site(int j, double delta, int j_site_max) {
    if (j < 0 || j > j_site_max) throw std::invalid_argument("site outside the lattice");
    const Parity parity = parity_of(j);
    const int sites = (j_site_max - static_cast<int>(parity)) / 2 + 1;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(sites);
    c(j / 2) = 1.0;
    return {parity, delta, std::move(c)};
}

LatticeState LatticeState::ring_bloch_wave(std::size_t sites, double k, double delta) {
    const auto n = static_cast<Eigen::Index>(sites);
    Eigen::VectorXcd c(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(sites));
    for (Eigen::Index i = 0; i < n; ++i) c(i) = std::polar(scale, k * 2.0 * static_cast<double>(i));
    return {Parity::even, delta, std::move(c), LatticeTopology::ring};
}

double LatticeState::on_site_potential(std::size_t site) const noexcept {
    const double j = j_at(site);
    return pi * delta_ * j * (j + 1.0);
}

double LatticeState::mean_j() const noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        sum += j_at(i) * std::norm(amplitudes_(static_cast<Eigen::Index>(i)));
    }
    return sum;
}

LatticeState LatticeState::with_amplitudes(Eigen::VectorXcd amplitudes) const {
    LatticeState next(parity_, delta_, std::move(amplitudes), topology_);
    next.boundary_reached_ =
        boundary_reached_ || (topology_ == LatticeTopology::open &&
                              std::norm(next.amplitudes_(next.amplitudes_.size() - 1)) >
                                  kBoundaryPopulation);
    return next;
}

LatticeState tb_map_step(const LatticeState& state, double kick_strength) {
    const Eigen::VectorXcd& c = state.amplitudes();
    const std::complex<double> i_unit(0.0, 1.0);
    Eigen::VectorXcd next = c + i_unit * (kick_strength / 4.0) * neighbour_sum(c, state.topology());
    for (std::size_t s = 0; s < state.size(); ++s) {
        const auto k = static_cast<Eigen::Index>(s);
        next(k) -= i_unit * state.on_site_potential(s) * c(k);
    }
    return state.with_amplitudes(std::move(next));
}

LatticeState tb_ode_evolve(const LatticeState& state, double kick_strength, double n_total,
                           double dn) {
    if (!(dn > 0.0) || dn > 0.1) throw StepSizeError("tb_ode_evolve requires 0 < dn <= 0.1");
    if (!(n_total >= 0.0)) throw std::invalid_argument("n_total must be >= 0");

    Eigen::VectorXd potential(static_cast<Eigen::Index>(state.size()));
    for (std::size_t s = 0; s < state.size(); ++s) {
        potential(static_cast<Eigen::Index>(s)) = state.on_site_potential(s);
    }
    const auto steps = static_cast<long>(std::ceil(n_total / dn - 1e-9));
    const double h = steps > 0 ? n_total / static_cast<double>(steps) : 0.0;

    // V = V_soft + V_stiff with |V_soft|·h <= 1. V_stiff goes into the factor.
    const double v_cap = h > 0.0 ? 1.0 / h : 0.0;
    Eigen::VectorXd soft(potential.size());
    Eigen::VectorXcd full(potential.size());
    Eigen::VectorXcd half(potential.size());
    for (Eigen::Index s = 0; s < potential.size(); ++s) {
        soft(s) = std::clamp(potential(s), -v_cap, v_cap);
        const double stiff = potential(s) - soft(s);
        full(s) = std::polar(1.0, -stiff * h);
        half(s) = std::polar(1.0, -stiff * h / 2.0);
    }

    const LatticeTopology topology = state.topology();
    const std::complex<double> i_unit(0.0, 1.0);
    const std::complex<double> i_quarter_p(0.0, kick_strength / 4.0);
    const auto rhs = [&](const Eigen::VectorXcd& c) -> Eigen::VectorXcd {
        return i_quarter_p * neighbour_sum(c, topology) - i_unit * soft.cwiseProduct(c);
    };

    LatticeState current = state;
    for (long step = 0; step < steps; ++step) {
        const Eigen::VectorXcd& c = current.amplitudes();
        const Eigen::VectorXcd k1 = rhs(c);
        const Eigen::VectorXcd k2 = rhs(half.cwiseProduct(c + (h / 2.0) * k1));
        const Eigen::VectorXcd k3 = rhs(half.cwiseProduct(c) + (h / 2.0) * k2);
        const Eigen::VectorXcd k4 = rhs(full.cwiseProduct(c) + h * half.cwiseProduct(k3));
        current = current.with_amplitudes(
            full.cwiseProduct(c) +
            (h / 6.0) * (full.cwiseProduct(k1) + 2.0 * half.cwiseProduct(k2 + k3) + k4));
    }
    return current;
}

double dispersion(double k, double kick_strength) noexcept {
    return -0.5 * kick_strength * std::cos(2.0 * k);
}

double group_velocity(double k, double kick_strength) noexcept {
    return kick_strength * std::sin(2.0 * k);
}

double semiclassical_energy(double kick_strength, double delta, double j, double k) noexcept {
    return dispersion(k, kick_strength) + pi * delta * j * (j + 1.0);
}

namespace {

struct PhasePoint {
    double j;
    double k;
};

PhasePoint rk4_step(const PhasePoint& y, double p, double delta, double h) {
    const auto f = [&](const PhasePoint& q) {
        return PhasePoint{p * std::sin(2.0 * q.k), -pi * delta * (2.0 * q.j + 1.0)};
    };
    const PhasePoint a = f(y);
    const PhasePoint b = f({y.j + 0.5 * h * a.j, y.k + 0.5 * h * a.k});
    const PhasePoint c = f({y.j + 0.5 * h * b.j, y.k + 0.5 * h * b.k});
    const PhasePoint d = f({y.j + h * c.j, y.k + h * c.k});
    return {y.j + h / 6.0 * (a.j + 2.0 * b.j + 2.0 * c.j + d.j),
            y.k + h / 6.0 * (a.k + 2.0 * b.k + 2.0 * c.k + d.k)};
}

/// Detects the first return of J through j0.
class ReturnDetector {
public:
    explicit ReturnDetector(double j0) : j0_(j0) {}

    /// Feeds the step (n_prev, j_prev) → (n, j); returns the interpolated crossing time.
    std::optional<double> feed(double n_prev, double j_prev, double n, double j) {
        const double offset = j - j0_;
        if (side_ == 0) {
            if (std::abs(offset) > kLeaveThreshold) side_ = offset > 0.0 ? 1 : -1;
            return std::nullopt;
        }
        if (offset * side_ > 0.0) return std::nullopt;
        const double before = j_prev - j0_;
        const double fraction = before / (before - offset);
        return n_prev + fraction * (n - n_prev);
    }

private:
    static constexpr double kLeaveThreshold = 1e-9;
    double j0_;
    int side_ = 0;
};

template <typename Visitor>
std::optional<double> integrate(double p, double delta, double j0, double k0, double n_max,
                                double dn, bool stop_at_period, Visitor&& visit) {
    if (!(dn > 0.0) || dn > 0.01) throw StepSizeError("semiclassical step requires 0 < dn <= 0.01");
    if (!(n_max > 0.0)) throw std::invalid_argument("n_max must be positive");

    const auto steps = static_cast<long>(std::ceil(n_max / dn - 1e-9));
    ReturnDetector detector(j0);
    std::optional<double> period;
    PhasePoint y{j0, k0};
    visit(0.0, y);
    for (long step = 1; step <= steps; ++step) {
        const double n_prev = static_cast<double>(step - 1) * dn;
        const double n = static_cast<double>(step) * dn;
        const PhasePoint next = rk4_step(y, p, delta, dn);
        visit(n, next);
        if (!period && delta != 0.0) {
            period = detector.feed(n_prev, y.j, n, next.j);
            if (period && stop_at_period) return period;
        }
        y = next;
    }
    return period;
}

}  // namespace

SemiClassicalTrajectory semiclassical_trajectory(double kick_strength, double delta, double j0,
                                                 double k0, double n_max, double dn) {
    SemiClassicalTrajectory trajectory;
    trajectory.samples.reserve(static_cast<std::size_t>(n_max / dn) + 2);
    trajectory.period = integrate(kick_strength, delta, j0, k0, n_max, dn, false,
                                  [&](double n, const PhasePoint& y) {
                                      trajectory.samples.push_back({n, y.j, y.k});
                                  });
    return trajectory;
}

std::optional<double> semiclassical_period(double kick_strength, double delta, double n_max,
                                           double dn) {
    if (delta == 0.0) return std::nullopt;
    return integrate(kick_strength, delta, 0.0, pi / 4.0, n_max, dn, true,
                     [](double, const PhasePoint&) {});
}

}  // namespace rotbloch
