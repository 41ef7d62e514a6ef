// Copyright 2026 The hiddenphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include "gtest/gtest.h"

#include "hiddenphase/ensemble.hpp"
#include "hiddenphase/error.hpp"

namespace hp {
namespace {

ExperimentConfig small_alice_bob(std::size_t m) {
    ExperimentConfig c = reference_scenario();
    c.ensemble_size = m;
    c.plan.p1 = 100;
    c.plan.p2 = 100;
    c.plan.confirm = 50;
    c.grid = 1024;
    c.seed = 2026;
    return c;
}

TEST(Quantile, LinearInterpolation) {
    EXPECT_EQ(quantile({3.0, 1.0, 2.0}, 0.5), 2.0);
    EXPECT_EQ(quantile({1.0, 2.0, 3.0, 4.0}, 0.5), 2.5);
    EXPECT_EQ(quantile({1.0, 2.0, 3.0, 4.0}, 0.0), 1.0);
    EXPECT_EQ(quantile({1.0, 2.0, 3.0, 4.0}, 1.0), 4.0);
    EXPECT_NEAR(quantile({0.0, 10.0}, 0.1), 1.0, 1e-15);
    EXPECT_THROW(quantile({}, 0.5), Error);
}

TEST(Ensemble, SimulateTrajectoryAliceBob) {
    const auto c = small_alice_bob(1);
    const auto run = simulate_trajectory(c, 0);
    const auto &row = run.row;
    EXPECT_EQ(row.measurements, 450u);
    EXPECT_EQ(row.alice.count, 200u);
    EXPECT_EQ(row.bob.count, 250u);
    ASSERT_EQ(row.series.size(), 5u);
    ASSERT_TRUE(row.alice.estimate && row.bob.estimate && row.agreement);
    EXPECT_NEAR(*row.agreement, circular_distance(*row.alice.estimate, *row.bob.estimate), 0.0);
    ASSERT_TRUE(row.bob.confirmation);
    EXPECT_EQ(row.bob.confirmation->n_total, 50u);
    ASSERT_TRUE(run.trajectory);
    EXPECT_EQ(run.trajectory->records.size(), 450u);
    EXPECT_EQ(row.seed, derive_seed(c.seed, 0));
}

TEST(Ensemble, RowsIndependentOfExecution) {
    const auto c = small_alice_bob(6);
    const auto serial = run_ensemble(c, {.parallel = false});
    const auto parallel2 = run_ensemble(c, {.parallel = true, .threads = 2});
    const auto parallel3 = run_ensemble(c, {.parallel = true, .threads = 3});
    EXPECT_EQ(serial, parallel2);
    EXPECT_EQ(serial, parallel3);
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        EXPECT_EQ(serial.rows[i], simulate_trajectory(c, i).row);
    }
}

TEST(Ensemble, SeedChangesResults) {
    auto c = small_alice_bob(3);
    const auto a = run_ensemble(c, {.parallel = false});
    c.seed += 1;
    const auto b = run_ensemble(c, {.parallel = false});
    EXPECT_NE(a.rows, b.rows);
}

TEST(Ensemble, ErrorsPropagate) {
    auto c = small_alice_bob(4);
    c.state.n_alpha = 10;
    c.state.n_beta = 10;
    EXPECT_THROW(run_ensemble(c), BudgetError);
}

TEST(Ensemble, GhzRows) {
    ExperimentConfig c;
    c.state.kind = StateKind::Ghz;
    c.state.n_total = 50;
    c.plan.kind = PlanKind::GhzZ;
    c.plan.count = 50;
    c.ensemble_size = 200;
    const auto s = run_ensemble(c);
    std::size_t plus_runs = 0;
    for (const auto &row : s.rows) {
        ASSERT_TRUE(row.n_plus == 0 || row.n_plus == 50);
        plus_runs += row.n_plus == 50;
    }
    EXPECT_GT(plus_runs, 50u);
    EXPECT_LT(plus_runs, 150u);
    EXPECT_EQ(simulate_trajectory(c, 0).ghz_outcomes.size(), 50u);
}

TEST(Ensemble, PlanKinds) {
    ExperimentConfig c;
    c.grid = 256;
    c.state = {StateKind::DoubleFock, 10000, 10000, 0.0, 0};

    c.plan.kind = PlanKind::Repeat;
    c.plan.count = 20;
    c.plan.party = Party::Bob;
    auto row = simulate_trajectory(c, 0).row;
    EXPECT_EQ(row.bob.count, 20u);
    ASSERT_EQ(row.series.size(), 1u);
    EXPECT_EQ(row.series[0].n_plus, row.bob.n_plus);

    c.plan.kind = PlanKind::RandomAngles;
    row = simulate_trajectory(c, 0).row;
    EXPECT_EQ(row.measurements, 20u);
    EXPECT_TRUE(row.series.empty());

    c.plan.kind = PlanKind::Angles;
    c.plan.angles = {MeasurementSpec::at(Party::Alice, 0.0), MeasurementSpec::at(Party::Bob, 1.0)};
    row = simulate_trajectory(c, 0).row;
    EXPECT_EQ(row.alice.count, 1u);
    EXPECT_EQ(row.bob.count, 1u);

    c.plan.kind = PlanKind::Adaptive;
    c.plan.party = Party::Alice;
    c.plan.rounds = 3;
    c.plan.batch = 30;
    const auto run = simulate_trajectory(c, 0);
    EXPECT_EQ(run.row.measurements, 90u);
    ASSERT_TRUE(run.alice_estimate);
    EXPECT_EQ(run.alice_estimate->candidates.size(), 3u);

    c.plan.kind = PlanKind::Paradox;
    c.plan.p1 = 100;
    c.plan.p2 = 100;
    c.plan.bob_count = 300;
    row = simulate_trajectory(c, 0).row;
    EXPECT_EQ(row.alice.count, 200u);
    EXPECT_EQ(row.bob.count, 300u);
    ASSERT_EQ(row.series.size(), 3u);
    EXPECT_GT(row.series[2].n_plus, 250u);
}

TEST(Aggregate, HandComputed) {
    std::vector<TrajectoryRow> rows(2);
    rows[0].measurements = 10;
    rows[1].measurements = 20;
    rows[0].series = {{0.0, 4, 10}};
    rows[1].series = {{0.0, 8, 10}};
    rows[0].alice = {5, 2, {3.0, 4.0}, {0.0, 10.0}, 0.5, std::nullopt};
    rows[1].alice = {5, 2, {0.0, 1.0}, {2.0, 0.0}, -0.5, SeriesResult{0.0, 9, 10}};
    rows[0].agreement = 0.1;
    rows[1].agreement = 0.3;
    rows[0].concentration = 0.2;
    rows[1].concentration = 0.4;
    const auto a = aggregate(rows);
    EXPECT_EQ(a.trajectories, 2u);
    EXPECT_EQ(a.mean_measurements, 15.0);
    ASSERT_TRUE(a.first_series_n_plus);
    EXPECT_EQ(a.first_series_n_plus->mean, 6.0);
    EXPECT_NEAR(a.first_series_n_plus->sd, std::sqrt(8.0), 1e-15);
    EXPECT_EQ(a.alice.mean_ledger_norm, 3.0);
    EXPECT_NEAR(a.alice.rms_ledger_norm, std::sqrt(13.0), 1e-15);
    EXPECT_EQ(a.alice.mean_region_norm, 6.0);
    EXPECT_EQ(*a.alice.median_region_to_ledger, 2.0);
    ASSERT_TRUE(a.alice.estimates);
    EXPECT_NEAR(*a.alice.estimates->mean_direction, 0.0, 1e-15);
    EXPECT_NEAR(a.alice.estimates->concentration, std::cos(0.5), 1e-15);
    EXPECT_EQ(*a.alice.mean_confirmation_fraction, 0.9);
    EXPECT_FALSE(a.bob.median_region_to_ledger);
    ASSERT_TRUE(a.agreement);
    EXPECT_NEAR(a.agreement->q50, 0.2, 1e-15);
    EXPECT_NEAR(a.mean_concentration, 0.3, 1e-15);
    EXPECT_EQ(aggregate({}).trajectories, 0u);
}

} // namespace
} // namespace hp
