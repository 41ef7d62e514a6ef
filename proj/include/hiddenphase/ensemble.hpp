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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hiddenphase/config.hpp"
#include "hiddenphase/engine.hpp"
#include "hiddenphase/ledger.hpp"
#include "hiddenphase/protocols.hpp"

namespace hp {

struct PartyRow {
    std::size_t count = 0;
    std::size_t n_plus = 0;
    Vec2 ledger; ///< cumulative apparatus recoil
    Vec2 region; ///< region polarization
    std::optional<double> estimate;
    std::optional<SeriesResult> confirmation;

    friend bool operator==(const PartyRow &, const PartyRow &) = default;
};

/// Per-trajectory summary row.
struct TrajectoryRow {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::size_t measurements = 0;
    std::size_t n_plus = 0;
    PartyRow alice;
    PartyRow bob;
    /// Every fixed-angle series run by the plan, in order.
    std::vector<SeriesResult> series;
    std::optional<double> posterior_mean;
    double concentration = 0.0;
    /// Circular distance between Alice's and Bob's estimates.
    std::optional<double> agreement;

    friend bool operator==(const TrajectoryRow &, const TrajectoryRow &) = default;
};

/// Full detail of one trajectory; what `hpsim run` reports.
struct TrajectoryRun {
    TrajectoryRow row;
    std::optional<TrajectoryResult> trajectory; ///< empty for GHZ runs
    std::optional<SignedEstimate> alice_estimate;
    std::optional<SignedEstimate> bob_estimate;
    std::vector<Outcome> ghz_outcomes;
};

/// Runs trajectory `index` of `config` with the stream derive_seed(seed, index).
TrajectoryRun simulate_trajectory(const ExperimentConfig &config, std::size_t index);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0; ///< sample standard deviation (n - 1)
    friend bool operator==(const MeanSd &, const MeanSd &) = default;
};

struct Quantiles {
    double q10 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q90 = 0.0;
    double mean = 0.0;
    friend bool operator==(const Quantiles &, const Quantiles &) = default;
};

struct PartyAggregate {
    double mean_ledger_norm = 0.0;
    double rms_ledger_norm = 0.0;
    double mean_region_norm = 0.0;
    /// Median of |region| / |ledger| over trajectories where the party measured.
    std::optional<double> median_region_to_ledger;
    std::optional<CircularStats> estimates;
    std::optional<double> mean_confirmation_fraction;

    friend bool operator==(const PartyAggregate &a, const PartyAggregate &b) {
        const auto same_stats = [](const std::optional<CircularStats> &x,
                                   const std::optional<CircularStats> &y) {
            return x.has_value() == y.has_value() &&
                   (!x || (x->mean_direction == y->mean_direction &&
                           x->concentration == y->concentration));
        };
        return a.mean_ledger_norm == b.mean_ledger_norm && a.rms_ledger_norm == b.rms_ledger_norm &&
               a.mean_region_norm == b.mean_region_norm &&
               a.median_region_to_ledger == b.median_region_to_ledger &&
               same_stats(a.estimates, b.estimates) &&
               a.mean_confirmation_fraction == b.mean_confirmation_fraction;
    }
};

struct Aggregates {
    std::size_t trajectories = 0;
    double mean_measurements = 0.0;
    /// n_plus of each trajectory's first series.
    std::optional<MeanSd> first_series_n_plus;
    PartyAggregate alice;
    PartyAggregate bob;
    std::optional<Quantiles> agreement;
    double mean_concentration = 0.0;

    friend bool operator==(const Aggregates &, const Aggregates &) = default;
};

struct RunSummary {
    std::vector<TrajectoryRow> rows;
    Aggregates aggregates;

    friend bool operator==(const RunSummary &, const RunSummary &) = default;
};

struct ExecutionOptions {
    bool parallel = true;
    int threads = 0; ///< 0 = OpenMP default
};

/// Pure fold over rows in index order.
Aggregates aggregate(std::span<const TrajectoryRow> rows);

/// Linear-interpolation quantile of unsorted data, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// config.ensemble_size independent trajectories. Rows are stored by index
/// and aggregated afterwards, so the summary does not depend on scheduling.
RunSummary run_ensemble(const ExperimentConfig &config, ExecutionOptions options = {});

} // namespace hp
