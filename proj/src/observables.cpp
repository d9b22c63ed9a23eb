// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotbloch/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rotbloch {

double AlignmentSeries::amplitude() const {
    if (values.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

double alignment_expectation(const RotationalState& state) {
    const BasisWindow& w = state.window();
    const Eigen::VectorXcd& c = state.amplitudes();
    double diagonal = 0.0;
    double coherent = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        const int j = w.j_at(i);
        diagonal += std::norm(c(k)) * cos2_diagonal(j, w.m());
        if (i + 1 < w.size()) {
            coherent += (std::conj(c(k + 1)) * c(k)).real() * cos2_off_diagonal(j, w.m());
        }
    }
    return diagonal + 2.0 * coherent;
}

double diagonal_alignment(const RotationalState& state) {
    const BasisWindow& w = state.window();
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        sum += std::norm(state.amplitudes()(static_cast<Eigen::Index>(i))) *
               cos2_diagonal(w.j_at(i), w.m());
    }
    return sum;
}

double population_alignment(const RotationalState& state_after_kick, int samples) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    double sum = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Revivals t{static_cast<double>(s) / samples};
        sum += alignment_expectation(free_propagate(state_after_kick, t));
    }
    return sum / samples;
}

AlignmentSeries alignment_series(const std::vector<StroboscopicRecord>& records,
                                 const std::vector<EnsembleMember>& ensemble, int samples,
                                 bool sampled) {
    if (records.size() != ensemble.size() || records.empty()) {
        throw std::invalid_argument("records and ensemble must be non-empty and of equal size");
    }
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const int pulses = records.front().pulse_count();

    auto average = [&](const RotationalState& s) {
        return sampled ? population_alignment(s, samples) : diagonal_alignment(s);
    };

    AlignmentSeries series;
    series.samples_per_revival = samples;
    series.initial = 0.0;
    series.values.assign(static_cast<std::size_t>(pulses), 0.0);
    for (std::size_t e = 0; e < records.size(); ++e) {
        if (records[e].pulse_count() != pulses) {
            throw std::invalid_argument("ensemble records have different pulse counts");
        }
        const double w = ensemble[e].weight;
        series.initial += w * average(records[e].initial);
        for (int n = 1; n <= pulses; ++n) {
            series.values[static_cast<std::size_t>(n - 1)] += w * average(records[e].at(n));
        }
    }
    return series;
}

std::vector<TracePoint> alignment_trace(const std::vector<StroboscopicRecord>& records,
                                        const std::vector<EnsembleMember>& ensemble,
                                        const PulseTrainSpec& train, int samples_per_revival) {
    if (records.size() != ensemble.size() || records.empty()) {
        throw std::invalid_argument("records and ensemble must be non-empty and of equal size");
    }
    if (samples_per_revival < 1) throw std::invalid_argument("samples must be >= 1");
    const double tau = train.pulse_period().value;
    const auto per_pulse =
        static_cast<int>(std::ceil(tau * samples_per_revival - 1e-12));

    std::vector<TracePoint> trace;
    for (int n = 1; n <= records.front().pulse_count(); ++n) {
        for (int s = 0; s < per_pulse; ++s) {
            const double local = static_cast<double>(s) / samples_per_revival;
            double value = 0.0;
            for (std::size_t e = 0; e < records.size(); ++e) {
                value += ensemble[e].weight *
                         alignment_expectation(free_propagate(records[e].at(n), Revivals{local}));
            }
            trace.push_back({(n - 1) * tau + local, value});
        }
    }
    return trace;
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw std::invalid_argument("correlation needs two sequences of equal length >= 2");
    }
    const double n = static_cast<double>(a.size());
    const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - mean_a) * (b[i] - mean_b);
        var_a += (a[i] - mean_a) * (a[i] - mean_a);
        var_b += (b[i] - mean_b) * (b[i] - mean_b);
    }
    return cov / std::sqrt(var_a * var_b);
}

}  // namespace rotbloch
