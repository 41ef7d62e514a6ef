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

#include "hiddenphase/engine.hpp"

#include "hiddenphase/angles.hpp"
#include "hiddenphase/error.hpp"

namespace hp {

Session::Session(const InitialState &state, Rng &rng, SessionOptions options)
    : state_(state), rng_(rng), options_(options),
      budget_(BudgetGuard::for_state(state, options.budget_ratio)),
      distribution_(prior_distribution(state, options.grid_size)) {}

Outcome Session::measure(Party party, double phi) {
    phi = reduce_angle(phi);
    budget_.consume();
    const std::size_t index = records_.size();
    const Outcome eta = distribution_.sample_outcome(phi, rng_);
    (party == Party::Alice ? alice_ : bob_).record(distribution_, phi, eta, index);
    distribution_ = std::move(distribution_).updated(phi, eta);
    records_.push_back({{party, phi}, eta, index});
    if (options_.snapshot_every != 0 && records_.size() % options_.snapshot_every == 0) {
        snapshots_.push_back({records_.size(), distribution_});
    }
    return eta;
}

TrajectoryResult Session::finish() && {
    return {std::move(records_), std::move(distribution_), std::move(snapshots_),
            std::move(alice_), std::move(bob_)};
}

TrajectoryResult run_trajectory(const InitialState &state, std::span<const MeasurementSpec> plan,
                                Rng &rng, SessionOptions options) {
    Session session(state, rng, options);
    for (const auto &spec : plan) {
        session.measure(spec);
    }
    return std::move(session).finish();
}

PhaseDistribution replay(const InitialState &state, std::span<const MeasurementRecord> records,
                         std::size_t grid_size) {
    PhaseDistribution d = prior_distribution(state, grid_size);
    for (const auto &r : records) {
        d = std::move(d).updated(r.spec.phi, r.eta);
    }
    return d;
}

} // namespace hp
