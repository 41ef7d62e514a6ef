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

#include "hiddenphase/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>

#include "hiddenphase/angles.hpp"

namespace hp {

namespace {

Json optional_number(const std::optional<double> &v) {
    if (!v || !std::isfinite(*v)) {
        return nullptr;
    }
    return *v;
}

Json vec_json(const Vec2 &v) { return Json{{"x", v.x}, {"y", v.y}, {"norm", v.norm()}}; }

Json party_json(const PartyRow &p) {
    Json j;
    j["count"] = p.count;
    j["n_plus"] = p.n_plus;
    j["ledger"] = vec_json(p.ledger);
    j["region"] = vec_json(p.region);
    j["estimate"] = optional_number(p.estimate);
    j["confirmation"] = p.confirmation ? to_json(*p.confirmation) : Json(nullptr);
    return j;
}

Json circular_json(const std::optional<CircularStats> &s) {
    if (!s) {
        return nullptr;
    }
    return Json{{"mean_direction", optional_number(s->mean_direction)},
                {"concentration", s->concentration}};
}

Json party_aggregate_json(const PartyAggregate &p) {
    Json j;
    j["mean_ledger_norm"] = p.mean_ledger_norm;
    j["rms_ledger_norm"] = p.rms_ledger_norm;
    j["mean_region_norm"] = p.mean_region_norm;
    j["median_region_to_ledger"] = optional_number(p.median_region_to_ledger);
    j["estimates"] = circular_json(p.estimates);
    j["mean_confirmation_fraction"] = optional_number(p.mean_confirmation_fraction);
    return j;
}

Json metadata(bool with_timestamp) {
    Json m;
    m["tool"] = "hpsim";
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
        m["generated_at"] = buf;
    }
    return m;
}

Json config_json(const ExperimentConfig &c) {
    Json j;
    j["state"] = {{"kind", std::string(to_string(c.state.kind))},
                  {"n_alpha", c.state.n_alpha},
                  {"n_beta", c.state.n_beta},
                  {"lambda0", c.state.lambda0},
                  {"n_total", c.state.n_total}};
    j["plan"] = {{"kind", std::string(to_string(c.plan.kind))},
                 {"party", std::string(to_string(c.plan.party))},
                 {"phi", c.plan.phi},
                 {"count", c.plan.count},
                 {"p1", c.plan.p1},
                 {"p2", c.plan.p2},
                 {"theta", c.plan.theta},
                 {"confirm", c.plan.confirm},
                 {"initial", c.plan.initial},
                 {"rounds", c.plan.rounds},
                 {"batch", c.plan.batch},
                 {"bob_count", c.plan.bob_count}};
    Json angles = Json::array();
    for (const auto &a : c.plan.angles) {
        angles.push_back({{"party", std::string(to_string(a.party))}, {"phi", a.phi}});
    }
    j["plan"]["angles"] = std::move(angles);
    j["ensemble_size"] = c.ensemble_size;
    j["seed"] = c.seed;
    j["grid"] = c.grid;
    j["budget_ratio"] = c.budget_ratio;
    j["snapshot_stride"] = c.snapshot_stride;
    return j;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

void write_distribution_csv(std::ostream &out, const PhaseDistribution &d) {
    const PhaseGrid &grid = d.grid();
    out << "lambda,density\n";
    std::size_t spike = grid.size();
    if (d.is_delta()) {
        spike = static_cast<std::size_t>(std::llround(*d.delta_angle() / grid.spacing())) %
                grid.size();
    }
    const double spike_density = static_cast<double>(grid.size()) / kTwoPi;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double density =
            d.is_delta() ? (k == spike ? spike_density : 0.0) : d.weights()[k];
        out << format_double(grid.node(k)) << ',' << format_double(density) << '\n';
    }
}

void write_records_csv(std::ostream &out, std::span<const MeasurementRecord> records) {
    out << "index,party,phi,eta\n";
    for (const auto &r : records) {
        out << r.index << ',' << to_string(r.spec.party) << ',' << format_double(r.spec.phi)
            << ',' << static_cast<int>(r.eta) << '\n';
    }
}

void write_ledger_csv(std::ostream &out, const ApparatusLedger &ledger) {
    out << "index,phi,eta,pre_expectation,recoil\n";
    for (const auto &e : ledger.entries()) {
        out << e.index << ',' << format_double(e.phi) << ',' << static_cast<int>(e.eta) << ','
            << format_double(e.pre_expectation) << ',' << format_double(e.recoil) << '\n';
    }
}

void write_oracle_csv(std::ostream &out, std::span<const SequenceProbability> table) {
    out << "sequence,probability\n";
    for (const auto &row : table) {
        out << row.label() << ',' << format_double(row.probability) << '\n';
    }
}

void write_rows_csv(std::ostream &out, std::span<const TrajectoryRow> rows) {
    const auto opt = [](const std::optional<double> &v) {
        return v ? format_double(*v) : std::string();
    };
    out << "index,seed,measurements,n_plus,first_series_n_plus,"
           "alice_count,alice_n_plus,alice_ledger_x,alice_ledger_y,alice_region_x,alice_region_y,"
           "alice_estimate,bob_count,bob_n_plus,bob_ledger_x,bob_ledger_y,bob_region_x,"
           "bob_region_y,bob_estimate,bob_confirm_n_plus,bob_confirm_total,posterior_mean,"
           "concentration,agreement\n";
    for (const auto &r : rows) {
        out << r.index << ',' << r.seed << ',' << r.measurements << ',' << r.n_plus << ','
            << (r.series.empty() ? std::string() : std::to_string(r.series.front().n_plus))
            << ',';
        for (const PartyRow *p : {&r.alice, &r.bob}) {
            out << p->count << ',' << p->n_plus << ',' << format_double(p->ledger.x) << ','
                << format_double(p->ledger.y) << ',' << format_double(p->region.x) << ','
                << format_double(p->region.y) << ',' << opt(p->estimate) << ',';
        }
        if (r.bob.confirmation) {
            out << r.bob.confirmation->n_plus << ',' << r.bob.confirmation->n_total << ',';
        } else {
            out << ",,";
        }
        out << opt(r.posterior_mean) << ',' << format_double(r.concentration) << ','
            << opt(r.agreement) << '\n';
    }
}

Json to_json(const SeriesResult &s) {
    return Json{{"phi", s.phi}, {"n_plus", s.n_plus}, {"n_total", s.n_total}};
}

Json to_json(const TrajectoryRow &row) {
    Json j;
    j["index"] = row.index;
    j["seed"] = row.seed;
    j["measurements"] = row.measurements;
    j["n_plus"] = row.n_plus;
    j["alice"] = party_json(row.alice);
    j["bob"] = party_json(row.bob);
    Json series = Json::array();
    for (const auto &s : row.series) {
        series.push_back(to_json(s));
    }
    j["series"] = std::move(series);
    j["posterior_mean"] = optional_number(row.posterior_mean);
    j["concentration"] = row.concentration;
    j["agreement"] = optional_number(row.agreement);
    return j;
}

Json to_json(const Aggregates &a) {
    Json j;
    j["trajectories"] = a.trajectories;
    j["mean_measurements"] = a.mean_measurements;
    j["first_series_n_plus"] =
        a.first_series_n_plus
            ? Json{{"mean", a.first_series_n_plus->mean}, {"sd", a.first_series_n_plus->sd}}
            : Json(nullptr);
    j["alice"] = party_aggregate_json(a.alice);
    j["bob"] = party_aggregate_json(a.bob);
    if (a.agreement) {
        j["agreement"] = {{"q10", a.agreement->q10}, {"q25", a.agreement->q25},
                          {"median", a.agreement->q50}, {"q75", a.agreement->q75},
                          {"q90", a.agreement->q90}, {"mean", a.agreement->mean}};
    } else {
        j["agreement"] = nullptr;
    }
    j["mean_concentration"] = a.mean_concentration;
    return j;
}

Json to_json(const PhaseDistribution &d) {
    const CircularStats stats = d.circular_stats();
    Json j;
    j["grid"] = d.grid().size();
    j["delta"] = d.delta_angle() ? Json(*d.delta_angle()) : Json(nullptr);
    j["mean_direction"] = optional_number(stats.mean_direction);
    j["concentration"] = stats.concentration;
    return j;
}

Json ledger_summary_json(const TrajectoryResult &t) {
    Json j;
    for (const ApparatusLedger *l : {&t.alice_ledger, &t.bob_ledger}) {
        const auto region = region_polarization(t.records, l->party());
        j[std::string(to_string(l->party()))] = {{"measurements", l->entries().size()},
                                                 {"cumulative", vec_json(l->cumulative())},
                                                 {"region_polarization", vec_json(region.vector)}};
    }
    return j;
}

Json protocol_summary_json(const SignedEstimate &e, const PhaseDistribution &posterior) {
    Json j;
    j["series"] = Json::array({to_json(e.primary_series), to_json(e.sign_series)});
    j["candidates"] = e.candidates;
    j["magnitude"] = e.magnitude;
    j["estimate"] = e.estimate;
    j["posterior_concentration"] = posterior.circular_stats().concentration;
    return j;
}

Json oracle_json(std::span<const SequenceProbability> table) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    Json rows = Json::array();
    for (const auto &row : table) {
        rows.push_back({{"sequence", row.label()}, {"probability", row.probability}});
    }
    j["sequences"] = std::move(rows);
    return j;
}

Json trajectory_json(const ExperimentConfig &config, const TrajectoryRun &run,
                     bool with_timestamp) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["metadata"] = metadata(with_timestamp);
    j["config"] = config_json(config);
    j["trajectory"] = to_json(run.row);
    if (run.trajectory) {
        j["final_distribution"] = to_json(run.trajectory->final_distribution);
        j["ledgers"] = ledger_summary_json(*run.trajectory);
        Json protocol;
        if (run.alice_estimate) {
            protocol["alice"] =
                protocol_summary_json(*run.alice_estimate, run.trajectory->final_distribution);
        }
        if (run.bob_estimate) {
            protocol["bob"] =
                protocol_summary_json(*run.bob_estimate, run.trajectory->final_distribution);
        }
        j["protocol"] = protocol.is_null() ? Json::object() : protocol;
    } else {
        Json outcomes = Json::array();
        for (Outcome o : run.ghz_outcomes) {
            outcomes.push_back(static_cast<int>(o));
        }
        j["ghz_outcomes"] = std::move(outcomes);
    }
    return j;
}

Json summary_json(const ExperimentConfig &config, const RunSummary &summary, bool with_timestamp) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["metadata"] = metadata(with_timestamp);
    j["config"] = config_json(config);
    j["aggregates"] = to_json(summary.aggregates);
    Json rows = Json::array();
    for (const auto &r : summary.rows) {
        rows.push_back(to_json(r));
    }
    j["trajectories"] = std::move(rows);
    return j;
}

} // namespace hp
