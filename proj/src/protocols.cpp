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

#include "hiddenphase/protocols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hiddenphase/angles.hpp"
#include "hiddenphase/error.hpp"

namespace hp {

double magnitude_estimate(const SeriesResult &series) {
    if (series.n_total == 0) {
        throw EmptySeriesError("magnitude estimate of an empty series");
    }
    const double f = static_cast<double>(series.n_plus) / static_cast<double>(series.n_total);
    return 2.0 * std::acos(std::sqrt(std::clamp(f, 0.0, 1.0)));
}

SeriesResult measure_series(Session &session, Party party, double phi, std::size_t count) {
    if (count > session.budget().remaining()) {
        throw BudgetError("series of " + std::to_string(count) + " measurements exceeds the " +
                          std::to_string(session.budget().remaining()) + " remaining");
    }
    SeriesResult out{reduce_angle(phi), 0, count};
    for (std::size_t i = 0; i < count; ++i) {
        if (session.measure(party, phi) == Outcome::Plus) {
            ++out.n_plus;
        }
    }
    return out;
}

SignedEstimate resolve_sign(const SeriesResult &primary, const SeriesResult &sign_series) {
    const double m1 = magnitude_estimate(primary);
    const double m2 = magnitude_estimate(sign_series);
    const std::array<double, 2> first{wrap_angle(primary.phi + m1), wrap_angle(primary.phi - m1)};
    const std::array<double, 2> second{wrap_angle(sign_series.phi + m2),
                                       wrap_angle(sign_series.phi - m2)};

    constexpr double kTie = 1e-12;
    double best_distance = kPi + 1.0;
    double best = second[0];
    for (double a : first) {
        for (double b : second) {
            const double d = circular_distance(a, b);
            const bool closer = d < best_distance - kTie;
            const bool tie_preferred =
                std::abs(d - best_distance) <= kTie && b <= 0.0 && !(best <= 0.0);
            if (closer || tie_preferred) {
                best_distance = std::min(d, best_distance);
                best = b;
            }
        }
    }

    SignedEstimate out;
    out.estimate = best;
    out.magnitude = m1;
    out.primary_series = primary;
    out.sign_series = sign_series;
    out.candidates = {first[0], first[1], second[0], second[1]};
    return out;
}

SignedEstimate two_stage_estimate(Session &session, Party party, std::size_t p1, std::size_t p2,
                                  double theta) {
    if (p1 + p2 > session.budget().remaining()) {
        throw BudgetError("two-stage protocol needs " + std::to_string(p1 + p2) +
                          " measurements, " + std::to_string(session.budget().remaining()) +
                          " remaining");
    }
    const SeriesResult primary = measure_series(session, party, theta, p1);
    const SeriesResult second = measure_series(session, party, theta + 0.5 * kPi, p2);
    return resolve_sign(primary, second);
}

SeriesResult confirmation_run(Session &session, Party party, double estimate, std::size_t p) {
    return measure_series(session, party, estimate, p);
}

double posterior_estimate(const PhaseDistribution &d) {
    const CircularStats stats = d.circular_stats();
    if (stats.concentration < 1e-6 || !stats.mean_direction) {
        throw UndefinedDirectionError("posterior is too flat to define a mean direction (R = " +
                                      std::to_string(stats.concentration) + ")");
    }
    return *stats.mean_direction;
}

SignedEstimate adaptive_refinement(Session &session, Party party, double initial,
                                   std::size_t rounds, std::size_t batch) {
    if (rounds == 0) {
        throw ConfigError("adaptive refinement needs at least one round");
    }
    if (batch == 0) {
        throw ConfigError("adaptive refinement needs a positive batch size");
    }
    if (rounds * batch > session.budget().remaining()) {
        throw BudgetError("adaptive refinement needs " + std::to_string(rounds * batch) +
                          " measurements, " + std::to_string(session.budget().remaining()) +
                          " remaining");
    }
    SignedEstimate out;
    double estimate = wrap_angle(initial);
    for (std::size_t r = 0; r < rounds; ++r) {
        const SeriesResult s = measure_series(session, party, estimate + 0.5 * kPi, batch);
        const double imbalance =
            2.0 * static_cast<double>(s.n_plus) / static_cast<double>(s.n_total) - 1.0;
        const double correction = std::asin(std::clamp(imbalance, -1.0, 1.0));
        estimate = wrap_angle(estimate + correction);
        out.candidates.push_back(estimate);
        if (r == 0) {
            out.primary_series = s;
        }
        out.sign_series = s;
        out.magnitude = std::abs(correction);
    }
    out.estimate = estimate;
    return out;
}

} // namespace hp
