// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rotbloch/observables.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace rotbloch {

enum class PeriodMethod { polynomial_extrema, zone_traversal };

/// Which reading of the fitted curve produced the period.
enum class PeakRule {
    peak_to_peak,  // two interior maxima resolved
    twice_peak,    // one maximum: half a period separates it from the pre-kick state at n = 0
    j_return,      // semiclassical return of J to its start
};

[[nodiscard]] std::string_view to_string(PeriodMethod method) noexcept;
[[nodiscard]] std::string_view to_string(PeakRule rule) noexcept;

struct PeriodEstimate {
    double period = 0.0;  // pulses
    int fit_degree = 0;
    double fit_residual = 0.0;  // RMS of the least-squares residuals
    PeriodMethod method = PeriodMethod::polynomial_extrema;
    PeakRule rule = PeakRule::twice_peak;
    std::vector<double> maxima;  // interior maxima of the fit, ascending
};

/// Least-squares polynomial in the centred, scaled variable u = (x − centre)/scale.
class PolynomialFit {
public:
    PolynomialFit(std::span<const double> x, std::span<const double> y, int degree);

    [[nodiscard]] double operator()(double x) const noexcept;
    [[nodiscard]] double derivative(double x) const noexcept;
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
    [[nodiscard]] double rms_residual() const noexcept { return rms_residual_; }

    /// Interior stationary points in (lo, hi), split by curvature.
    struct Extrema {
        std::vector<double> maxima;
        std::vector<double> minima;
    };
    [[nodiscard]] Extrema extrema(double lo, double hi) const;

private:
    std::vector<double> coefficients_;  // ascending powers of u
    double centre_ = 0.0;
    double scale_ = 1.0;
    double rms_residual_ = 0.0;
};

/**
 * Oscillation period of a population-alignment series sampled at pulses
 * first_pulse, first_pulse+1, ...
 *
 * Two interior maxima of the fitted polynomial give the peak-to-peak distance;
 * a single maximum n_peak gives 2·n_peak.
 *
 * @throws std::invalid_argument unless degree ≥ 2 and values.size() ≥ degree+2.
 * @throws NoExtremumError when the fit has no interior maximum.
 */
[[nodiscard]] PeriodEstimate extract_period(std::span<const double> values, double first_pulse,
                                            int degree = 4);
[[nodiscard]] PeriodEstimate extract_period(const AlignmentSeries& series, int degree = 4);

}  // namespace rotbloch
