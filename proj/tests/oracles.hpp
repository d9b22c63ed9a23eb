// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations for the test suites. Nothing here calls
// into the library's numerical code paths.

#pragma once

#include <Eigen/Dense>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace rotbloch::oracle {

inline constexpr double kPi = 3.14159265358979323846;

/// Gauss–Legendre nodes and weights on [−1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n) {
        for (double z : boost::math::legendre_p_zeros<double>(n)) {
            const double dp = boost::math::legendre_p_prime(n, z);
            const double w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes.push_back(z);
            weights.push_back(w);
            if (z != 0.0) {
                nodes.push_back(-z);
                weights.push_back(w);
            }
        }
    }
};

/**
 * ⟨J′,M|cos²θ|J,M⟩ by 2-D quadrature over the sphere: Gauss–Legendre in cosθ and
 * a uniform rule in φ, using Boost's spherical harmonics. Exact for l ≤ l_max
 * up to rounding.
 */
class SphericalQuadrature {
public:
    explicit SphericalQuadrature(int l_max, int phi_points = 3)
        : rule_(l_max + 8), l_max_(l_max), phi_points_(phi_points) {}

    double cos2(int j_prime, int j, int m) {
        double sum = 0.0;
        for (int p = 0; p < phi_points_; ++p) {
            const double phi = 2.0 * kPi * p / phi_points_;
            for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
                const double x = rule_.nodes[i];
                const std::complex<double> integrand =
                    std::conj(harmonic(j_prime, m, i, phi)) * x * x * harmonic(j, m, i, phi);
                sum += rule_.weights[i] * (2.0 * kPi / phi_points_) * integrand.real();
            }
        }
        return sum;
    }

private:
    std::complex<double> harmonic(int l, int m, std::size_t node, double phi) {
        const auto key = std::make_tuple(l, m, node);
        auto it = theta_part_.find(key);
        if (it == theta_part_.end()) {
            const double theta = std::acos(rule_.nodes[node]);
            // Y(θ, 0) holds the θ dependence; the φ dependence is exp(i·m·φ).
            it = theta_part_.emplace(key, boost::math::spherical_harmonic(l, m, theta, 0.0)).first;
        }
        return it->second * std::polar(1.0, m * phi);
    }

    GaussLegendre rule_;
    int l_max_;
    int phi_points_;
    std::map<std::tuple<int, int, std::size_t>, std::complex<double>> theta_part_;
};

/// exp(A) by Taylor series with scaling and squaring.
inline Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& a) {
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::ldexp(1.0, squarings) > 0.25) ++squarings;
    const Eigen::MatrixXcd b = a / std::ldexp(1.0, squarings);

    const auto n = a.rows();
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = term * b / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

/**
 * Semiclassical J-cycle period from J(0) = 0, k(0) = π/4 using energy
 * conservation instead of time stepping:
 *
 *     J(J+1) = A·sin v,  A = P/(2π|δ|),  v = 2k − π/2
 *     dk/dn  = π|δ|·√(1 + 4J(J+1))
 *     T      = (1/(π|δ|)) ∫₀^{π/2} dv / √(1 + 4A·sin v)
 */
inline double semiclassical_period_quadrature(double p, double delta) {
    const double abs_delta = std::abs(delta);
    const double a = p / (2.0 * kPi * abs_delta);
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double integral = integrator.integrate(
        [a](double v) { return 1.0 / std::sqrt(1.0 + 4.0 * a * std::sin(v)); }, 0.0, kPi / 2.0);
    return integral / (kPi * abs_delta);
}

/// Dense cos²θ on J = j_min, j_min+2, ... built from quadrature, for comparison with the library.
inline Eigen::MatrixXd cos2_matrix_quadrature(SphericalQuadrature& q, int j_min, int levels, int m) {
    Eigen::MatrixXd x(levels, levels);
    for (int r = 0; r < levels; ++r) {
        for (int c = 0; c < levels; ++c) x(r, c) = q.cos2(j_min + 2 * r, j_min + 2 * c, m);
    }
    return x;
}

}  // namespace rotbloch::oracle
