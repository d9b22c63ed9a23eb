// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotbloch/errors.hpp"
#include "rotbloch/quantum_propagator.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>

namespace rotbloch {
namespace {

using cd = std::complex<double>;

// Fidelity |⟨a|b⟩|² over the union of the two windows.
double fidelity(const RotationalState& a, const RotationalState& b) {
    cd overlap = 0.0;
    const int top = std::max(a.window().j_top(), b.window().j_top());
    for (int j = 0; j <= top; ++j) overlap += std::conj(a.amplitude(j)) * b.amplitude(j);
    return std::norm(overlap);
}

RotationalState random_state(const BasisWindow& w, std::mt19937& rng, int occupied) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(w.size()));
    for (int i = 0; i < occupied; ++i) c(i) = cd(g(rng), g(rng));
    c.normalize();
    return {w, c};
}

TEST(KickOperator, ZeroStrengthIsIdentity) {
    const BasisWindow w(0, Parity::even, 40, 6);
    const KickOperator u(w, 0.0);
    const auto n = static_cast<Eigen::Index>(w.size());
    EXPECT_LT((u.matrix() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(KickOperator, UnitaryForAnyWindow) {
    for (int m : {0, 1, 4}) {
        for (Parity parity : {Parity::even, Parity::odd}) {
            for (int j_max : {10, 60, 120}) {
                const BasisWindow w(m, parity, j_max, 6);
                const KickOperator u(w, 5.0);
                const auto n = static_cast<Eigen::Index>(w.size());
                const Eigen::MatrixXcd defect =
                    u.matrix() * u.matrix().adjoint() - Eigen::MatrixXcd::Identity(n, n);
                EXPECT_LT(defect.cwiseAbs().maxCoeff(), 1e-12);
            }
        }
    }
}

TEST(KickOperator, MatchesScalingAndSquaringOracle) {
    for (double p : {0.3, 1.0, 5.0}) {
        for (int m : {0, 2, 7}) {
            for (int levels : {4, 16, 33, 64}) {
                const int j_min = m;
                const BasisWindow w(m, parity_of(j_min), j_min + 2 * (levels - 1) - 6, 6);
                ASSERT_EQ(static_cast<int>(w.size()), levels);
                const Eigen::MatrixXcd oracle =
                    oracle::expm_taylor(cd(0.0, p) * cos2_matrix(w).cast<cd>());
                const KickOperator u(w, p);
                EXPECT_LT((u.matrix() - oracle).cwiseAbs().maxCoeff(), 1e-10)
                    << "P=" << p << " M=" << m << " levels=" << levels;
            }
        }
    }
}

TEST(KickOperator, WeakKickMatchesFirstOrderPerturbation) {
    const BasisWindow w(0, Parity::even, 20, 6);
    const auto out = KickOperator(w, 0.1).apply(RotationalState::basis_state(w, 0));
    const double ratio = std::abs(out.amplitude(2) / out.amplitude(0));
    const double first_order = 0.1 * 2.0 / (3.0 * std::sqrt(5.0));
    EXPECT_NEAR(first_order, 0.0298142, 1e-7);
    EXPECT_NEAR(ratio, first_order, 1e-3);  // second-order correction is O(P²)

    const Eigen::VectorXcd oracle =
        oracle::expm_taylor(cd(0.0, 0.1) * cos2_matrix(w).cast<cd>()).col(0);
    EXPECT_LT((out.amplitudes() - oracle).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(KickOperator, ReversibleWithNegativeStrength) {
    std::mt19937 rng(99);
    for (double p : {0.5, 2.0, 5.0}) {
        const BasisWindow w(1, Parity::odd, 80, 6);
        const auto psi = random_state(w, rng, 8);
        const auto back = KickOperator(w, -p).apply(KickOperator(w, p).apply(psi));
        EXPECT_GT(fidelity(psi, back), 1.0 - 1e-12);
    }
}

TEST(KickOperator, RejectsMismatchedWindow) {
    const BasisWindow w(0, Parity::even, 20, 6);
    const KickOperator u(w, 1.0);
    const BasisWindow odd(1, Parity::odd, 21, 6);
    EXPECT_THROW((void)u.apply(RotationalState::basis_state(odd, 1)), std::invalid_argument);
}

TEST(KickCache, ReusesOperators) {
    KickCache cache;
    const BasisWindow w(2, Parity::even, 30, 6);
    const auto& a = cache.get(w, 5.0);
    const auto& b = cache.get(BasisWindow(-2, Parity::even, 30, 6), 5.0);
    EXPECT_EQ(&a, &b);  // U depends on M only through M²
    (void)cache.get(w, 3.0);
    EXPECT_EQ(cache.size(), 2u);
}

TEST(PulseTrainSpec, ValidationAndPulsePeriod) {
    EXPECT_NO_THROW((PulseTrainSpec{5.0, -0.002, 8}.validate()));
    EXPECT_THROW((PulseTrainSpec{-1.0, 0.0, 8}.validate()), std::invalid_argument);
    EXPECT_THROW((PulseTrainSpec{1.0, -1.0, 8}.validate()), std::invalid_argument);
    EXPECT_THROW((PulseTrainSpec{1.0, 0.0, 0}.validate()), std::invalid_argument);

    const auto train = PulseTrainSpec::from_pulse_period(5.0, Picoseconds{8.36},
                                                         MoleculeSpec::nitrogen14(298), 8);
    EXPECT_NEAR(train.detuning, 8.36 / 8.38 - 1.0, 1e-15);
    EXPECT_NEAR(train.pulse_period().value * 8.38, 8.36, 1e-12);
}

TEST(PropagateTrain, SingleKickEqualsKickOperator) {
    const BasisWindow w(0, Parity::even, 60, 6);
    const auto psi = RotationalState::basis_state(w, 0);
    const auto record = propagate_train(psi, {2.0, 0.01, 1});
    ASSERT_EQ(record.pulse_count(), 1);
    const auto direct = KickOperator(w, 2.0).apply(psi);
    EXPECT_LT((record.at(1).amplitudes() - direct.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(record.at(0).amplitudes(), psi.amplitudes());
}

TEST(PropagateTrain, KickThenFreeOracle) {
    // Two pulses assembled by hand from the oracle exponential and explicit phases.
    const BasisWindow w(1, Parity::odd, 40, 6);
    const auto psi = RotationalState::basis_state(w, 3);
    const double p = 1.3;
    const double delta = 0.037;
    const Eigen::MatrixXcd u = oracle::expm_taylor(cd(0.0, p) * cos2_matrix(w).cast<cd>());
    Eigen::VectorXcd c = u * psi.amplitudes();
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double j = w.j_at(static_cast<std::size_t>(i));
        c(i) *= std::polar(1.0, -oracle::kPi * j * (j + 1) * (1.0 + delta));
    }
    c = u * c;
    const auto record = propagate_train(psi, {p, delta, 2});
    EXPECT_LT((record.at(2).amplitudes() - c).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(PropagateTrain, CompositionLawAtResonance) {
    std::mt19937 rng(5);
    for (int n : {2, 4, 8}) {
        for (double p : {0.5, 1.0, 3.0}) {
            // One shared window large enough for N·P, so both sides see the same truncation.
            const BasisWindow w(0, Parity::even, 160, 6);
            for (const auto& psi : {RotationalState::basis_state(w, 0), random_state(w, rng, 5)}) {
                const auto train = propagate_train(psi, {p, 0.0, n});
                const auto single = propagate_train(psi, {n * p, 0.0, 1});
                EXPECT_EQ(train.window_growths, 0);
                EXPECT_GT(fidelity(train.at(n), single.at(1)), 1.0 - 1e-10)
                    << "N=" << n << " P=" << p;
            }
        }
    }
}

TEST(PropagateTrain, NormConservedEveryPulse) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
        const BasisWindow w(trial % 4, trial % 2 ? Parity::odd : Parity::even, 60, 6);
        const auto psi = random_state(w, rng, 6);
        const double p = 0.5 + trial * 0.5;
        const auto record = propagate_train(psi, {p, -0.004 + 0.001 * trial, 8});
        for (int n = 1; n <= 8; ++n) EXPECT_NEAR(record.at(n).norm_squared(), 1.0, 1e-10);
    }
}

TEST(PropagateTrain, GrowsWindowOnLeakage) {
    const BasisWindow tiny(0, Parity::even, 8, 2);
    const auto record = propagate_train(RotationalState::basis_state(tiny, 0), {5.0, 0.0, 8});
    EXPECT_GT(record.window_growths, 0);
    EXPECT_GT(record.at(8).window().j_max(), 8);
    EXPECT_EQ(record.at(0).window(), tiny);
    for (int n = 1; n <= 8; ++n) EXPECT_LT(record.at(n).buffer_population(), 1e-8);
    // ballistic growth at resonance: |0⟩ covers the whole band, mean speed 2P/π per pulse
    EXPECT_NEAR(record.at(8).mean_j(), 8 * 2 * 5.0 / oracle::kPi, 2.0);

    // Converged: a generous fixed window gives the same final populations.
    const BasisWindow big(0, Parity::even, 256, 6);
    const auto reference = propagate_train(RotationalState::basis_state(big, 0), {5.0, 0.0, 8});
    for (int j = 0; j <= 100; j += 2) {
        EXPECT_NEAR(std::norm(record.at(8).amplitude(j)), std::norm(reference.at(8).amplitude(j)),
                    1e-6);
    }
}

TEST(PropagateTrain, CeilingRaisesLeakageError) {
    const BasisWindow tiny(0, Parity::even, 8, 2);
    EXPECT_THROW((void)propagate_train(RotationalState::basis_state(tiny, 0), {5.0, 0.0, 8},
                                       {1e-8, 16}),
                 LeakageError);
}

TEST(PropagateEnsemble, ParityAndMNeverChange) {
    const auto ensemble = thermal_ensemble(MoleculeSpec::nitrogen14(50.0));
    const auto records = propagate_ensemble(ensemble, {3.0, -0.003, 6}, {30, 6}, {}, 2);
    ASSERT_EQ(records.size(), ensemble.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (int n = 0; n <= 6; ++n) {
            const auto& w = records[i].at(n).window();
            EXPECT_EQ(w.m(), ensemble[i].m0);
            EXPECT_EQ(w.parity(), parity_of(ensemble[i].j0));
        }
    }
}

TEST(PopulationHistory, ExactSparsityFromGroundState) {
    const auto ensemble = thermal_ensemble(MoleculeSpec::nitrogen14(0.0));
    const auto records = propagate_ensemble(ensemble, {5.0, -0.002, 8}, {60, 6});
    const auto history = population_history(records, ensemble);
    for (int n = 0; n <= 8; ++n) {
        for (int j = 1; j <= history.j_top(); j += 2) EXPECT_EQ(history.populations(n, j), 0.0);
    }
}

TEST(PopulationHistory, ZeroKickRowsEqualInitialDistribution) {
    const auto ensemble = thermal_ensemble(MoleculeSpec::nitrogen14(298.0));
    const auto records = propagate_ensemble(ensemble, {0.0, -0.002, 5}, {60, 6});
    const auto history = population_history(records, ensemble);
    for (int n = 1; n <= 5; ++n) {
        EXPECT_LT((history.populations.row(n) - history.populations.row(0)).cwiseAbs().maxCoeff(),
                  1e-15);
    }
    // the initial row is the thermal level distribution
    for (const auto& e : ensemble) EXPECT_GT(history.populations(0, e.j0), 0.0);
}

TEST(PopulationHistory, RowsSumToOne) {
    for (double p : {1.0, 5.0}) {
        for (double delta : {-0.004, 0.0, 0.003}) {
            const auto ensemble = thermal_ensemble(MoleculeSpec::nitrogen14(150.0));
            const auto records = propagate_ensemble(ensemble, {p, delta, 8}, {60, 6});
            const auto history = population_history(records, ensemble);
            for (int n = 0; n <= 8; ++n) EXPECT_NEAR(history.populations.row(n).sum(), 1.0, 1e-9);
        }
    }
}

TEST(PopulationHistory, RejectsMismatchedInputs) {
    const auto ensemble = thermal_ensemble(MoleculeSpec::nitrogen14(20.0));
    auto records = propagate_ensemble(ensemble, {1.0, 0.0, 2}, {20, 6});
    records.pop_back();
    EXPECT_THROW((void)population_history(records, ensemble), std::invalid_argument);
}

TEST(PopulationHistory, CentroidTurnsAroundForPulseSpacing836ps) {
    const auto molecule = MoleculeSpec::nitrogen14(298.0);
    const auto ensemble = thermal_ensemble(molecule);
    const auto train = PulseTrainSpec::from_pulse_period(5.0, Picoseconds{8.36}, molecule, 8);
    const auto history = population_history(propagate_ensemble(ensemble, train, {60, 6}), ensemble);
    const auto mean = history.mean_j();
    const auto peak = std::max_element(mean.begin(), mean.end()) - mean.begin();
    EXPECT_GE(peak, 3);
    EXPECT_LE(peak, 5);
    for (int n = 1; n <= 4; ++n) EXPECT_GT(mean[n], mean[n - 1]);  // rises for about 4 pulses
    EXPECT_LT(mean[8], mean[peak]);
    EXPECT_LE(std::abs(mean[8] - mean[0]), 0.15 * mean[peak]);
}

TEST(ParallelFor, VisitsEveryIndexOnceAndRethrows) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 4, [&](std::size_t i, unsigned) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);

    EXPECT_THROW(parallel_for(10, 3,
                              [](std::size_t i, unsigned) {
                                  if (i == 7) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}

TEST(PropagateEnsemble, IndependentOfThreadCount) {
    const auto ensemble = thermal_ensemble(MoleculeSpec::nitrogen14(298.0));
    const PulseTrainSpec train{5.0, -0.002, 8};
    const auto h1 = population_history(propagate_ensemble(ensemble, train, {60, 6}, {}, 1), ensemble);
    const auto h4 = population_history(propagate_ensemble(ensemble, train, {60, 6}, {}, 4), ensemble);
    ASSERT_EQ(h1.populations.rows(), h4.populations.rows());
    ASSERT_EQ(h1.populations.cols(), h4.populations.cols());
    EXPECT_TRUE((h1.populations.array() == h4.populations.array()).all());
}

}  // namespace
}  // namespace rotbloch
