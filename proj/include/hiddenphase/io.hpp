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

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "hiddenphase/config.hpp"
#include "hiddenphase/engine.hpp"
#include "hiddenphase/ensemble.hpp"
#include "hiddenphase/ledger.hpp"
#include "hiddenphase/oracle.hpp"
#include "hiddenphase/phase_dist.hpp"
#include "hiddenphase/protocols.hpp"

// File formats. CSV numbers are written with 17 significant digits.
//
//   distribution   lambda,density                 (K rows)
//   records        index,party,phi,eta
//   ledger         index,phi,eta,pre_expectation,recoil
//   oracle         sequence,probability           (sequence as +/- string)
//   trajectories   one row per TrajectoryRow
//
// JSON documents carry `schema_version`; wall-clock time only ever appears
// under `metadata`.

namespace hp {

using Json = nlohmann::ordered_json;

std::string format_double(double value);

/// A delta distribution is written as a unit-mass spike at its nearest node.
void write_distribution_csv(std::ostream &out, const PhaseDistribution &d);
void write_records_csv(std::ostream &out, std::span<const MeasurementRecord> records);
void write_ledger_csv(std::ostream &out, const ApparatusLedger &ledger);
void write_oracle_csv(std::ostream &out, std::span<const SequenceProbability> table);
void write_rows_csv(std::ostream &out, std::span<const TrajectoryRow> rows);

Json to_json(const SeriesResult &s);
Json to_json(const TrajectoryRow &row);
Json to_json(const Aggregates &a);
Json to_json(const PhaseDistribution &d);

/// Cumulative apparatus vectors and region polarizations of both parties.
Json ledger_summary_json(const TrajectoryResult &trajectory);

/// Series counts, candidates, estimate and posterior concentration.
Json protocol_summary_json(const SignedEstimate &estimate, const PhaseDistribution &posterior);

Json oracle_json(std::span<const SequenceProbability> table);

/// `hpsim run` document.
Json trajectory_json(const ExperimentConfig &config, const TrajectoryRun &run,
                     bool with_timestamp = true);

/// `hpsim ensemble` document.
Json summary_json(const ExperimentConfig &config, const RunSummary &summary,
                  bool with_timestamp = true);

} // namespace hp
