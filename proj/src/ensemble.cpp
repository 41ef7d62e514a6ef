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

#include "hiddenphase/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>

#include <omp.h>

#include "hiddenphase/angles.hpp"
#include "hiddenphase/error.hpp"
#include "hiddenphase/rng.hpp"

namespace hp {

namespace {

void fill_party(PartyRow &row, const Session &session, Party party) {
    const auto &ledger = session.ledger(party);
    row.ledger = ledger.cumulative();
    const auto region = region_polarization(session.records(), party);
    row.region = region.vector;
    row.count = region.count;
    row.n_plus = 0;
    for (const auto &r : session.records()) {
        if (r.spec.party == party && r.eta == Outcome::Plus) {
            ++row.n_plus;
        }
    }
}

void run_plan(const PlanSpec &plan, Session &session, TrajectoryRun &run) {
    auto &row = run.row;
    switch (plan.kind) {
    case PlanKind::Angles:
        for (const auto &spec : plan.angles) {
            session.measure(spec);
        }
        break;
    case PlanKind::Repeat:
        row.series.push_back(measure_series(session, plan.party, plan.phi, plan.count));
        break;
    case PlanKind::RandomAngles:
        for (std::size_t i = 0; i < plan.count; ++i) {
            const double phi = kTwoPi * session.rng().uniform();
            session.measure(plan.party, phi);
        }
        break;
    case PlanKind::TwoStage: {
        auto est = two_stage_estimate(session, plan.party, plan.p1, plan.p2, plan.theta);
        row.series = {est.primary_series, est.sign_series};
        (plan.party == Party::Alice ? row.alice : row.bob).estimate = est.estimate;
        (plan.party == Party::Alice ? run.alice_estimate : run.bob_estimate) = std::move(est);
        break;
    }
    case PlanKind::AliceBob: {
        auto alice = two_stage_estimate(session, Party::Alice, plan.p1, plan.p2, plan.theta);
        auto bob = two_stage_estimate(session, Party::Bob, plan.p1, plan.p2, plan.theta);
        row.series = {alice.primary_series, alice.sign_series, bob.primary_series,
                      bob.sign_series};
        row.alice.estimate = alice.estimate;
        row.bob.estimate = bob.estimate;
        row.agreement = circular_distance(alice.estimate, bob.estimate);
        if (plan.confirm > 0) {
            const auto confirm = confirmation_run(session, Party::Bob, bob.estimate, plan.confirm);
            row.bob.confirmation = confirm;
            row.series.push_back(confirm);
        }
        run.alice_estimate = std::move(alice);
        run.bob_estimate = std::move(bob);
        break;
    }
    case PlanKind::Adaptive: {
        auto est = adaptive_refinement(session, plan.party, plan.initial, plan.rounds, plan.batch);
        row.series.push_back(est.primary_series);
        if (plan.rounds > 1) {
            row.series.push_back(est.sign_series);
        }
        (plan.party == Party::Alice ? row.alice : row.bob).estimate = est.estimate;
        (plan.party == Party::Alice ? run.alice_estimate : run.bob_estimate) = std::move(est);
        break;
    }
    case PlanKind::Paradox: {
        auto alice = two_stage_estimate(session, Party::Alice, plan.p1, plan.p2, plan.theta);
        row.series = {alice.primary_series, alice.sign_series};
        row.alice.estimate = alice.estimate;
        run.alice_estimate = std::move(alice);
        if (plan.bob_count > 0) {
            const double aligned = posterior_estimate(session.distribution());
            row.series.push_back(measure_series(session, Party::Bob, aligned, plan.bob_count));
        }
        break;
    }
    case PlanKind::GhzZ:
        throw ConfigError("field 'plan.kind': ghz_z requires state.kind = ghz");
    }
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

PartyAggregate aggregate_party(std::span<const TrajectoryRow> rows, Party party) {
    PartyAggregate out;
    std::vector<double> ledger_norms;
    std::vector<double> region_norms;
    std::vector<double> ratios;
    std::complex<double> estimate_sum{0.0, 0.0};
    std::size_t estimates = 0;
    double confirm_sum = 0.0;
    std::size_t confirms = 0;
    double sq = 0.0;
    for (const auto &row : rows) {
        const PartyRow &p = party == Party::Alice ? row.alice : row.bob;
        ledger_norms.push_back(p.ledger.norm());
        region_norms.push_back(p.region.norm());
        sq += p.ledger.norm() * p.ledger.norm();
        if (p.count > 0) {
            const double l = p.ledger.norm();
            ratios.push_back(l > 0.0 ? p.region.norm() / l
                                     : std::numeric_limits<double>::infinity());
        }
        if (p.estimate) {
            estimate_sum += std::polar(1.0, *p.estimate);
            ++estimates;
        }
        if (p.confirmation && p.confirmation->n_total > 0) {
            confirm_sum += static_cast<double>(p.confirmation->n_plus) /
                           static_cast<double>(p.confirmation->n_total);
            ++confirms;
        }
    }
    out.mean_ledger_norm = mean_of(ledger_norms);
    out.mean_region_norm = mean_of(region_norms);
    out.rms_ledger_norm = rows.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(rows.size()));
    if (!ratios.empty()) {
        out.median_region_to_ledger = quantile(ratios, 0.5);
    }
    if (estimates > 0) {
        const auto m = estimate_sum / static_cast<double>(estimates);
        CircularStats stats;
        stats.concentration = std::abs(m);
        if (stats.concentration >= 1e-9) {
            stats.mean_direction = std::arg(m);
        }
        out.estimates = stats;
    }
    if (confirms > 0) {
        out.mean_confirmation_fraction = confirm_sum / static_cast<double>(confirms);
    }
    return out;
}

} // namespace

TrajectoryRun simulate_trajectory(const ExperimentConfig &config, std::size_t index) {
    validate(config);
    TrajectoryRun run;
    run.row.index = index;
    run.row.seed = derive_seed(config.seed, index);
    Rng rng(run.row.seed);
    const InitialState state = config.state.to_state();

    if (const auto *ghz = std::get_if<Ghz>(&state)) {
        run.ghz_outcomes = ghz_trajectory(*ghz, config.plan.count, rng);
        auto &p = config.plan.party == Party::Alice ? run.row.alice : run.row.bob;
        p.count = run.ghz_outcomes.size();
        p.n_plus = static_cast<std::size_t>(
            std::count(run.ghz_outcomes.begin(), run.ghz_outcomes.end(), Outcome::Plus));
        run.row.measurements = p.count;
        run.row.n_plus = p.n_plus;
        return run;
    }

    Session session(state, rng,
                    SessionOptions{config.grid, config.budget_ratio, config.snapshot_stride});
    run_plan(config.plan, session, run);

    auto &row = run.row;
    fill_party(row.alice, session, Party::Alice);
    fill_party(row.bob, session, Party::Bob);
    row.measurements = session.records().size();
    row.n_plus = row.alice.n_plus + row.bob.n_plus;
    const CircularStats stats = session.distribution().circular_stats();
    row.posterior_mean = stats.mean_direction;
    row.concentration = stats.concentration;
    run.trajectory = std::move(session).finish();
    return run;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw Error("quantile of an empty sample");
    }
    std::sort(values.begin(), values.end());
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0 || std::isinf(values[lo]) || std::isinf(values[hi])) {
        return frac < 0.5 ? values[lo] : values[hi];
    }
    return values[lo] + frac * (values[hi] - values[lo]);
}

Aggregates aggregate(std::span<const TrajectoryRow> rows) {
    Aggregates out;
    out.trajectories = rows.size();
    if (rows.empty()) {
        return out;
    }
    std::vector<double> measurements;
    std::vector<double> first_series;
    std::vector<double> agreement;
    std::vector<double> concentration;
    for (const auto &row : rows) {
        measurements.push_back(static_cast<double>(row.measurements));
        concentration.push_back(row.concentration);
        if (!row.series.empty()) {
            first_series.push_back(static_cast<double>(row.series.front().n_plus));
        }
        if (row.agreement) {
            agreement.push_back(*row.agreement);
        }
    }
    out.mean_measurements = mean_of(measurements);
    out.mean_concentration = mean_of(concentration);
    if (!first_series.empty()) {
        MeanSd ms;
        ms.mean = mean_of(first_series);
        double ss = 0.0;
        for (double x : first_series) {
            ss += (x - ms.mean) * (x - ms.mean);
        }
        ms.sd = first_series.size() > 1
                    ? std::sqrt(ss / static_cast<double>(first_series.size() - 1))
                    : 0.0;
        out.first_series_n_plus = ms;
    }
    if (!agreement.empty()) {
        out.agreement = Quantiles{quantile(agreement, 0.10), quantile(agreement, 0.25),
                                  quantile(agreement, 0.50), quantile(agreement, 0.75),
                                  quantile(agreement, 0.90), mean_of(agreement)};
    }
    out.alice = aggregate_party(rows, Party::Alice);
    out.bob = aggregate_party(rows, Party::Bob);
    return out;
}

RunSummary run_ensemble(const ExperimentConfig &config, ExecutionOptions options) {
    validate(config);
    const auto m = static_cast<std::ptrdiff_t>(config.ensemble_size);
    std::vector<TrajectoryRow> rows(config.ensemble_size);
    std::vector<std::exception_ptr> errors(config.ensemble_size);
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(threads) if (options.parallel)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        try {
            rows[static_cast<std::size_t>(i)] =
                simulate_trajectory(config, static_cast<std::size_t>(i)).row;
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    RunSummary summary;
    summary.aggregates = aggregate(rows);
    summary.rows = std::move(rows);
    return summary;
}

} // namespace hp
