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
#include <vector>

#include "hiddenphase/engine.hpp"
#include "hiddenphase/measurement.hpp"
#include "hiddenphase/phase_dist.hpp"

// Measurement strategies used by Alice and Bob to locate the hidden phase,
// and the estimators that turn their counts into an angle.

namespace hp {

/// Counts of one series of measurements along a fixed angle.
struct SeriesResult {
    double phi = 0.0;
    std::size_t n_plus = 0;
    std::size_t n_total = 0;

    friend bool operator==(const SeriesResult &, const SeriesResult &) = default;
};

/// |lambda0 - phi| from a series: 2 acos(sqrt(n_plus / n_total)), in [0, pi].
/// Throws EmptySeriesError when n_total = 0.
double magnitude_estimate(const SeriesResult &series);

struct SignedEstimate {
    double estimate = 0.0;  ///< lambda-hat in (-pi, pi]
    double magnitude = 0.0; ///< primary-series magnitude; for adaptive refinement, |last correction|
    SeriesResult primary_series;
    SeriesResult sign_series;
    /// Two-stage: theta1 +- m1 then theta2 +- m2, wrapped to (-pi, pi].
    /// Adaptive refinement: the estimate after each round.
    std::vector<double> candidates;
};

/// Measures `count` spins along phi. Fails before measuring anything if the
/// budget cannot cover the whole series.
SeriesResult measure_series(Session &session, Party party, double phi, std::size_t count);

/// Sign resolution by candidate intersection. Each series leaves two
/// candidates (its angle +- its magnitude estimate); the pair, one from each
/// series, with the smallest circular distance wins, and the estimate is that
/// pair's member from the second series. Ties go to an estimate in (-pi, 0].
SignedEstimate resolve_sign(const SeriesResult &primary, const SeriesResult &sign_series);

/// p1 measurements along theta, p2 along theta + pi/2, then resolve_sign.
SignedEstimate two_stage_estimate(Session &session, Party party, std::size_t p1, std::size_t p2,
                                  double theta);

/// p measurements exactly along the estimate.
SeriesResult confirmation_run(Session &session, Party party, double estimate, std::size_t p);

/// Circular mean of d. Throws UndefinedDirectionError when its
/// concentration is below 1e-6.
double posterior_estimate(const PhaseDistribution &d);

/// Each round measures `batch` spins perpendicular to the current estimate
/// and shifts the estimate by asin(2 n_plus / batch - 1).
SignedEstimate adaptive_refinement(Session &session, Party party, double initial,
                                   std::size_t rounds, std::size_t batch);

} // namespace hp
