// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotbloch/period.hpp"

#include "rotbloch/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rotbloch {

std::string_view to_string(PeriodMethod method) noexcept {
    switch (method) {
        case PeriodMethod::polynomial_extrema: return "polynomial_extrema";
        case PeriodMethod::zone_traversal: return "zone_traversal";
    }
    return "unknown";
}

std::string_view to_string(PeakRule rule) noexcept {
    switch (rule) {
        case PeakRule::peak_to_peak: return "peak_to_peak";
        case PeakRule::twice_peak: return "twice_peak";
        case PeakRule::j_return: return "j_return";
    }
    return "unknown";
}

PolynomialFit::PolynomialFit(std::span<const double> x, std::span<const double> y, int degree) {
    if (degree < 0) throw std::invalid_argument("polynomial degree must be >= 0");
    if (x.size() != y.size() || x.size() < static_cast<std::size_t>(degree + 1)) {
        throw std::invalid_argument("not enough points for the polynomial degree");
    }
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    centre_ = 0.5 * (*lo + *hi);
    scale_ = *hi > *lo ? 0.5 * (*hi - *lo) : 1.0;

    const auto rows = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd vandermonde(rows, degree + 1);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double u = (x[static_cast<std::size_t>(i)] - centre_) / scale_;
        double power = 1.0;
        for (int p = 0; p <= degree; ++p) {
            vandermonde(i, p) = power;
            power *= u;
        }
        rhs(i) = y[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = vandermonde.colPivHouseholderQr().solve(rhs);
    coefficients_.assign(c.data(), c.data() + c.size());
    rms_residual_ = std::sqrt((vandermonde * c - rhs).squaredNorm() / static_cast<double>(rows));
}

double PolynomialFit::operator()(double x) const noexcept {
    const double u = (x - centre_) / scale_;
    double value = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) value = value * u + *it;
    return value;
}

double PolynomialFit::derivative(double x) const noexcept {
    const double u = (x - centre_) / scale_;
    double value = 0.0;
    for (std::size_t p = coefficients_.size(); p-- > 1;) {
        value = value * u + static_cast<double>(p) * coefficients_[p];
    }
    return value / scale_;
}

PolynomialFit::Extrema PolynomialFit::extrema(double lo, double hi) const {
    // Bracket sign changes of the derivative on a fine grid, then bisect.
    constexpr int kGrid = 4096;
    Extrema out;
    const double step = (hi - lo) / kGrid;
    double x_prev = lo;
    double d_prev = derivative(lo);
    for (int i = 1; i <= kGrid; ++i) {
        const double x = (i == kGrid) ? hi : lo + i * step;
        const double d = derivative(x);
        if ((d_prev > 0.0 && d <= 0.0) || (d_prev < 0.0 && d >= 0.0)) {
            double a = x_prev, b = x;
            double da = d_prev;
            for (int it = 0; it < 100 && b - a > 1e-13 * (1.0 + std::abs(a)); ++it) {
                const double mid = 0.5 * (a + b);
                const double dm = derivative(mid);
                if ((dm > 0.0) == (da > 0.0) && dm != 0.0) {
                    a = mid;
                    da = dm;
                } else {
                    b = mid;
                }
            }
            const double root = 0.5 * (a + b);
            if (root > lo && root < hi) {
                (d_prev > 0.0 ? out.maxima : out.minima).push_back(root);
            }
        }
        if (d != 0.0) {
            x_prev = x;
            d_prev = d;
        }
    }
    return out;
}

PeriodEstimate extract_period(std::span<const double> values, double first_pulse, int degree) {
    if (degree < 2) throw std::invalid_argument("fit degree must be >= 2");
    if (values.size() < static_cast<std::size_t>(degree + 2)) {
        throw std::invalid_argument("series needs at least degree+2 points");
    }
    std::vector<double> pulses(values.size());
    for (std::size_t i = 0; i < pulses.size(); ++i) pulses[i] = first_pulse + static_cast<double>(i);

    // A flat series would otherwise yield extrema made of rounding noise.
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi))) {
        throw NoExtremumError("alignment series is flat");
    }

    const PolynomialFit fit(pulses, values, degree);
    const auto extrema = fit.extrema(pulses.front(), pulses.back());
    if (extrema.maxima.empty()) {
        throw NoExtremumError("fitted alignment series has no interior maximum");
    }

    PeriodEstimate estimate;
    estimate.fit_degree = degree;
    estimate.fit_residual = fit.rms_residual();
    estimate.method = PeriodMethod::polynomial_extrema;
    estimate.maxima = extrema.maxima;
    if (extrema.maxima.size() >= 2) {
        estimate.rule = PeakRule::peak_to_peak;
        estimate.period = extrema.maxima[1] - extrema.maxima[0];
    } else {
        estimate.rule = PeakRule::twice_peak;
        estimate.period = 2.0 * extrema.maxima[0];
    }
    return estimate;
}

PeriodEstimate extract_period(const AlignmentSeries& series, int degree) {
    return extract_period(series.values, 1.0, degree);
}

}  // namespace rotbloch
