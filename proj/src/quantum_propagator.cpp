// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotbloch/quantum_propagator.hpp"

#include "rotbloch/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

namespace rotbloch {

PulseTrainSpec PulseTrainSpec::from_pulse_period(double kick_strength, Picoseconds tau,
                                                 const MoleculeSpec& molecule, int pulse_count) {
    PulseTrainSpec train{kick_strength, molecule.to_revivals(tau).value - 1.0, pulse_count};
    train.validate();
    return train;
}

void PulseTrainSpec::validate() const {
    if (!std::isfinite(kick_strength) || kick_strength < 0.0) {
        throw std::invalid_argument("kick strength must be >= 0");
    }
    if (!std::isfinite(detuning) || detuning <= -1.0) {
        throw std::invalid_argument("detuning must exceed -1 (positive pulse period)");
    }
    if (pulse_count < 1) throw std::invalid_argument("pulse count must be >= 1");
}

// ---------------------------------------------------------------------------

KickOperator::KickOperator(const BasisWindow& window, double kick_strength)
    : window_(window), kick_strength_(kick_strength) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cos2_matrix(window));
    if (eig.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition of cos^2 matrix failed");
    }
    const Eigen::VectorXcd phases =
        (std::complex<double>(0.0, kick_strength) * eig.eigenvalues().cast<std::complex<double>>())
            .array()
            .exp();
    const Eigen::MatrixXcd v = eig.eigenvectors().cast<std::complex<double>>();
    matrix_ = v * phases.asDiagonal() * v.transpose();
}

RotationalState KickOperator::apply(const RotationalState& state) const {
    const BasisWindow& w = state.window();
    if (std::abs(w.m()) != std::abs(window_.m()) || w.parity() != window_.parity() ||
        w.j_min() != window_.j_min() || w.j_top() != window_.j_top()) {
        throw std::invalid_argument("state window does not match the kick operator");
    }
    return {w, matrix_ * state.amplitudes()};
}

const KickOperator& KickCache::get(const BasisWindow& window, double kick_strength) {
    const Key key{std::abs(window.m()), static_cast<int>(window.parity()), window.j_max(),
                  window.buffer(), std::bit_cast<std::uint64_t>(kick_strength)};
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, KickOperator(window, kick_strength)).first;
    return it->second;
}

// ---------------------------------------------------------------------------

namespace {

struct LeakedAt {
    int pulse;
};

StroboscopicRecord run_train(const RotationalState& initial, const PulseTrainSpec& train,
                             double leakage_tolerance, KickCache& cache, LeakedAt* leaked) {
    const KickOperator& kick = cache.get(initial.window(), train.kick_strength);
    StroboscopicRecord record{initial, {}, 0};
    record.snapshots.reserve(static_cast<std::size_t>(train.pulse_count));
    RotationalState state = initial;
    for (int n = 1; n <= train.pulse_count; ++n) {
        if (n > 1) state = free_propagate(state, train.pulse_period());
        state = kick.apply(state);
        if (!state.within_leakage(leakage_tolerance)) {
            leaked->pulse = n;
            return record;
        }
        record.snapshots.push_back(state);
    }
    return record;
}

}  // namespace

StroboscopicRecord propagate_train(const RotationalState& initial, const PulseTrainSpec& train,
                                   const PropagationOptions& options, KickCache& cache) {
    train.validate();
    RotationalState start = initial;
    int growths = 0;
    for (;;) {
        LeakedAt leaked{0};
        StroboscopicRecord record =
            run_train(start, train, options.leakage_tolerance, cache, &leaked);
        if (leaked.pulse == 0) {
            record.initial = initial;
            record.window_growths = growths;
            return record;
        }
        const int next = 2 * start.window().j_max();
        if (next > options.j_max_ceiling) {
            throw LeakageError("population leaked into the truncation buffer at pulse " +
                               std::to_string(leaked.pulse) + " with j_max=" +
                               std::to_string(start.window().j_max()) +
                               " and the window ceiling " + std::to_string(options.j_max_ceiling) +
                               " was reached");
        }
        start = start.embedded_in(start.window().with_j_max(next));
        ++growths;
    }
}

StroboscopicRecord propagate_train(const RotationalState& initial, const PulseTrainSpec& train,
                                   const PropagationOptions& options) {
    KickCache cache;
    return propagate_train(initial, train, options, cache);
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, unsigned)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i, 0);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned worker = 0; worker < threads; ++worker) {
        pool.emplace_back([&, worker] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i, worker);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<StroboscopicRecord> propagate_ensemble(const std::vector<EnsembleMember>& ensemble,
                                                   const PulseTrainSpec& train,
                                                   const WindowSettings& windows,
                                                   const PropagationOptions& options,
                                                   unsigned threads) {
    train.validate();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<KickCache> caches(threads);
    std::vector<std::optional<StroboscopicRecord>> slots(ensemble.size());

    parallel_for(ensemble.size(), threads, [&](std::size_t i, unsigned worker) {
        const EnsembleMember& member = ensemble[i];
        int j_max = windows.j_max;
        while (j_max < member.j0) j_max *= 2;
        const BasisWindow window(member.m0, parity_of(member.j0), j_max, windows.buffer);
        slots[i] = propagate_train(RotationalState::basis_state(window, member.j0), train,
                                   options, caches[worker]);
    });

    std::vector<StroboscopicRecord> records;
    records.reserve(slots.size());
    for (auto& slot : slots) records.push_back(std::move(*slot));
    return records;
}

// ---------------------------------------------------------------------------

std::vector<double> PopulationHistory::mean_j() const {
    std::vector<double> means;
    for (Eigen::Index n = 0; n < populations.rows(); ++n) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < populations.cols(); ++j) {
            sum += static_cast<double>(j) * populations(n, j);
        }
        means.push_back(sum);
    }
    return means;
}

PopulationHistory population_history(const std::vector<StroboscopicRecord>& records,
                                     const std::vector<EnsembleMember>& ensemble) {
    if (records.size() != ensemble.size() || records.empty()) {
        throw std::invalid_argument("records and ensemble must be non-empty and of equal size");
    }
    const int pulses = records.front().pulse_count();
    int j_top = 0;
    for (const auto& r : records) {
        if (r.pulse_count() != pulses) {
            throw std::invalid_argument("ensemble records have different pulse counts");
        }
        for (int n = 0; n <= pulses; ++n) j_top = std::max(j_top, r.at(n).window().j_top());
    }

    PopulationHistory history{Eigen::MatrixXd::Zero(pulses + 1, j_top + 1)};
    for (std::size_t e = 0; e < records.size(); ++e) {
        const double w = ensemble[e].weight;
        for (int n = 0; n <= pulses; ++n) {
            const RotationalState& s = records[e].at(n);
            const BasisWindow& win = s.window();
            for (std::size_t i = 0; i < win.size(); ++i) {
                history.populations(n, win.j_at(i)) +=
                    w * std::norm(s.amplitudes()(static_cast<Eigen::Index>(i)));
            }
        }
    }
    return history;
}

}  // namespace rotbloch
