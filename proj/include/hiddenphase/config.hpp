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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hiddenphase/measurement.hpp"
#include "hiddenphase/phase_dist.hpp"
#include "hiddenphase/states.hpp"

// Declarative description of an experiment.
//
// Text form: one `key = value` per line, `#` starts a comment. Keys:
//
//   schema_version   1
//   state.kind       double_fock | phase_state | ghz
//   state.n_alpha    state.n_beta    (double_fock)
//   state.lambda0    state.n_total   (phase_state; ghz uses n_total)
//   plan.kind        angles | repeat | random_angles | two_stage |
//                    alice_bob | adaptive | paradox | ghz_z
//   plan.angles      comma list of `A:phi` / `B:phi` (bare phi = Alice)
//   plan.party       alice | bob
//   plan.phi  plan.count  plan.p1  plan.p2  plan.theta  plan.confirm
//   plan.initial  plan.rounds  plan.batch  plan.bob_count
//   ensemble.size    seed    grid    budget.ratio    snapshot.stride
//   output.dir       output.format (csv | json)
//
// Unset keys keep their defaults. to_text() writes every key, so
// parse_config(to_text(c)) == c.

namespace hp {

enum class StateKind { DoubleFock, PhaseState, Ghz };

struct StateSpec {
    StateKind kind = StateKind::DoubleFock;
    std::int64_t n_alpha = 100000;
    std::int64_t n_beta = 100000;
    double lambda0 = 0.0;
    std::int64_t n_total = 200000;

    InitialState to_state() const;
    friend bool operator==(const StateSpec &, const StateSpec &) = default;
};

enum class PlanKind { Angles, Repeat, RandomAngles, TwoStage, AliceBob, Adaptive, Paradox, GhzZ };

struct PlanSpec {
    PlanKind kind = PlanKind::TwoStage;
    std::vector<MeasurementSpec> angles;
    Party party = Party::Alice;
    double phi = 0.0;
    std::size_t count = 0;
    std::size_t p1 = 300;
    std::size_t p2 = 300;
    double theta = 0.0;
    std::size_t confirm = 100;
    double initial = 0.0;
    std::size_t rounds = 1;
    std::size_t batch = 100;
    std::size_t bob_count = 10000;

    friend bool operator==(const PlanSpec &, const PlanSpec &) = default;
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    StateSpec state;
    PlanSpec plan;
    std::size_t ensemble_size = 1;
    std::uint64_t seed = 1;
    std::size_t grid = kDefaultGridSize;
    double budget_ratio = kDefaultBudgetRatio;
    std::size_t snapshot_stride = 0;
    std::string output_dir;
    OutputFormat output_format = OutputFormat::Json;

    friend bool operator==(const ExperimentConfig &, const ExperimentConfig &) = default;
};

inline constexpr int kSchemaVersion = 1;

/// Environment variable that overrides output.dir.
inline constexpr const char *kOutputDirEnv = "HPSIM_OUTPUT_DIR";

std::string_view to_string(StateKind kind);
std::string_view to_string(PlanKind kind);
std::string_view to_string(OutputFormat format);

/// Sets one key. Throws ConfigError naming the field on unknown keys or
/// malformed values.
void apply_setting(ExperimentConfig &config, std::string_view key, std::string_view value);

/// Parses the text form on top of the defaults, then validates.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path &path);

std::string to_text(const ExperimentConfig &config);

/// Cross-field checks; throws ConfigError with the offending field.
void validate(const ExperimentConfig &config);

/// output.dir, unless HPSIM_OUTPUT_DIR is set.
std::string resolve_output_dir(const ExperimentConfig &config);

/// Reference scenario: a double Fock state, Alice
/// measures 300 spins along 0 and 300 along pi/2, then Bob does the same and
/// confirms with 100 shots along his estimate.
ExperimentConfig reference_scenario();

} // namespace hp
