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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hiddenphase/ledger.hpp"
#include "hiddenphase/measurement.hpp"
#include "hiddenphase/phase_dist.hpp"
#include "hiddenphase/rng.hpp"
#include "hiddenphase/states.hpp"

namespace hp {

struct Snapshot {
    std::size_t measurements = 0; ///< number of records applied
    PhaseDistribution distribution;
};

struct TrajectoryResult {
    std::vector<MeasurementRecord> records;
    PhaseDistribution final_distribution;
    std::vector<Snapshot> snapshots;
    ApparatusLedger alice_ledger{Party::Alice};
    ApparatusLedger bob_ledger{Party::Bob};
};

struct SessionOptions {
    std::size_t grid_size = kDefaultGridSize;
    double budget_ratio = kDefaultBudgetRatio;
    /// Keep a copy of the distribution after every `snapshot_every`
    /// measurements; 0 disables snapshots.
    std::size_t snapshot_every = 0;
};

/// One trajectory in progress: the running posterior, the record list, both
/// apparatus ledgers and the shared measurement budget. Each measurement
/// samples an outcome from the current posterior (one uniform draw), books
/// the recoil, then updates the posterior.
///
/// A Session borrows its random stream. It is single-threaded; independent
/// trajectories use independent sessions and streams.
class Session {
  public:
    Session(const InitialState &state, Rng &rng, SessionOptions options = {});

    Outcome measure(Party party, double phi);
    Outcome measure(const MeasurementSpec &spec) { return measure(spec.party, spec.phi); }

    const InitialState &state() const { return state_; }
    const PhaseDistribution &distribution() const { return distribution_; }
    const std::vector<MeasurementRecord> &records() const { return records_; }
    const std::vector<Snapshot> &snapshots() const { return snapshots_; }
    const ApparatusLedger &ledger(Party party) const {
        return party == Party::Alice ? alice_ : bob_;
    }
    const BudgetGuard &budget() const { return budget_; }
    Rng &rng() { return rng_; }

    TrajectoryResult finish() &&;

  private:
    InitialState state_;
    Rng &rng_;
    SessionOptions options_;
    BudgetGuard budget_;
    PhaseDistribution distribution_;
    std::vector<MeasurementRecord> records_;
    std::vector<Snapshot> snapshots_;
    ApparatusLedger alice_{Party::Alice};
    ApparatusLedger bob_{Party::Bob};
};

/// Runs `plan` in order on a fresh session. Ghz states are rejected with
/// UnsupportedStateError (see ghz_trajectory).
TrajectoryResult run_trajectory(const InitialState &state, std::span<const MeasurementSpec> plan,
                                Rng &rng, SessionOptions options = {});

/// Replays records onto the state's prior; used to check that a trajectory's
/// final distribution is recomputable.
PhaseDistribution replay(const InitialState &state, std::span<const MeasurementRecord> records,
                         std::size_t grid_size = kDefaultGridSize);

} // namespace hp
