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

#include "hiddenphase/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hiddenphase/error.hpp"

namespace hp {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
    throw ConfigError("field '" + std::string(key) + "': expected " + std::string(what) +
                      ", got '" + std::string(value) + "'");
}

double parse_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto *end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
        bad_value(key, value, "a finite number");
    }
    return out;
}

template <typename Int> Int parse_int(std::string_view key, std::string_view value) {
    Int out = 0;
    const auto *end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        bad_value(key, value, "an integer");
    }
    return out;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
    if (!value.empty() && value.front() == '-') {
        bad_value(key, value, "a non-negative integer");
    }
    return parse_int<std::size_t>(key, value);
}

Party parse_party(std::string_view key, std::string_view value) {
    if (value == "alice" || value == "A") {
        return Party::Alice;
    }
    if (value == "bob" || value == "B") {
        return Party::Bob;
    }
    bad_value(key, value, "alice or bob");
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::vector<MeasurementSpec> parse_angles(std::string_view key, std::string_view value) {
    std::vector<MeasurementSpec> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        const auto comma = value.find(',', pos);
        const auto item =
            trim(value.substr(pos, comma == std::string_view::npos ? value.size() - pos : comma - pos));
        if (!item.empty()) {
            Party party = Party::Alice;
            std::string_view angle = item;
            if (const auto colon = item.find(':'); colon != std::string_view::npos) {
                party = parse_party(key, trim(item.substr(0, colon)));
                angle = trim(item.substr(colon + 1));
            }
            out.push_back(MeasurementSpec::at(party, parse_double(key, angle)));
        } else if (comma != std::string_view::npos) {
            bad_value(key, value, "a comma list of [A:|B:]angle");
        }
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

std::string format_angles(const std::vector<MeasurementSpec> &angles) {
    std::string s;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        if (i) {
            s += ',';
        }
        s += angles[i].party == Party::Alice ? "A:" : "B:";
        s += format_number(angles[i].phi);
    }
    return s;
}

} // namespace

std::string_view to_string(StateKind kind) {
    switch (kind) {
    case StateKind::DoubleFock:
        return "double_fock";
    case StateKind::PhaseState:
        return "phase_state";
    case StateKind::Ghz:
        return "ghz";
    }
    return "?";
}

std::string_view to_string(PlanKind kind) {
    switch (kind) {
    case PlanKind::Angles:
        return "angles";
    case PlanKind::Repeat:
        return "repeat";
    case PlanKind::RandomAngles:
        return "random_angles";
    case PlanKind::TwoStage:
        return "two_stage";
    case PlanKind::AliceBob:
        return "alice_bob";
    case PlanKind::Adaptive:
        return "adaptive";
    case PlanKind::Paradox:
        return "paradox";
    case PlanKind::GhzZ:
        return "ghz_z";
    }
    return "?";
}

std::string_view to_string(OutputFormat format) {
    return format == OutputFormat::Csv ? "csv" : "json";
}

InitialState StateSpec::to_state() const {
    switch (kind) {
    case StateKind::DoubleFock:
        return DoubleFock{n_alpha, n_beta};
    case StateKind::PhaseState:
        return PhaseState{lambda0, n_total};
    case StateKind::Ghz:
        return Ghz{n_total};
    }
    throw ConfigError("field 'state.kind': unknown state");
}

void apply_setting(ExperimentConfig &c, std::string_view key, std::string_view value) {
    value = trim(value);
    key = trim(key);
    if (key == "schema_version") {
        if (parse_int<int>(key, value) != kSchemaVersion) {
            bad_value(key, value, "schema version " + std::to_string(kSchemaVersion));
        }
    } else if (key == "state.kind") {
        if (value == "double_fock") {
            c.state.kind = StateKind::DoubleFock;
        } else if (value == "phase_state") {
            c.state.kind = StateKind::PhaseState;
        } else if (value == "ghz") {
            c.state.kind = StateKind::Ghz;
        } else {
            bad_value(key, value, "double_fock, phase_state or ghz");
        }
    } else if (key == "state.n_alpha") {
        c.state.n_alpha = parse_int<std::int64_t>(key, value);
    } else if (key == "state.n_beta") {
        c.state.n_beta = parse_int<std::int64_t>(key, value);
    } else if (key == "state.lambda0") {
        c.state.lambda0 = parse_double(key, value);
    } else if (key == "state.n_total") {
        c.state.n_total = parse_int<std::int64_t>(key, value);
    } else if (key == "plan.kind") {
        static constexpr PlanKind kinds[] = {PlanKind::Angles,   PlanKind::Repeat,
                                             PlanKind::RandomAngles, PlanKind::TwoStage,
                                             PlanKind::AliceBob, PlanKind::Adaptive,
                                             PlanKind::Paradox,  PlanKind::GhzZ};
        bool found = false;
        for (PlanKind k : kinds) {
            if (value == to_string(k)) {
                c.plan.kind = k;
                found = true;
            }
        }
        if (!found) {
            bad_value(key, value,
                      "angles, repeat, random_angles, two_stage, alice_bob, adaptive, paradox "
                      "or ghz_z");
        }
    } else if (key == "plan.angles") {
        c.plan.angles = parse_angles(key, value);
    } else if (key == "plan.party") {
        c.plan.party = parse_party(key, value);
    } else if (key == "plan.phi") {
        c.plan.phi = parse_double(key, value);
    } else if (key == "plan.count") {
        c.plan.count = parse_count(key, value);
    } else if (key == "plan.p1") {
        c.plan.p1 = parse_count(key, value);
    } else if (key == "plan.p2") {
        c.plan.p2 = parse_count(key, value);
    } else if (key == "plan.theta") {
        c.plan.theta = parse_double(key, value);
    } else if (key == "plan.confirm") {
        c.plan.confirm = parse_count(key, value);
    } else if (key == "plan.initial") {
        c.plan.initial = parse_double(key, value);
    } else if (key == "plan.rounds") {
        c.plan.rounds = parse_count(key, value);
    } else if (key == "plan.batch") {
        c.plan.batch = parse_count(key, value);
    } else if (key == "plan.bob_count") {
        c.plan.bob_count = parse_count(key, value);
    } else if (key == "ensemble.size") {
        c.ensemble_size = parse_count(key, value);
    } else if (key == "seed") {
        c.seed = parse_int<std::uint64_t>(key, value);
    } else if (key == "grid") {
        c.grid = parse_count(key, value);
    } else if (key == "budget.ratio") {
        c.budget_ratio = parse_double(key, value);
    } else if (key == "snapshot.stride") {
        c.snapshot_stride = parse_count(key, value);
    } else if (key == "output.dir") {
        c.output_dir = std::string(value);
    } else if (key == "output.format") {
        if (value == "csv") {
            c.output_format = OutputFormat::Csv;
        } else if (value == "json") {
            c.output_format = OutputFormat::Json;
        } else {
            bad_value(key, value, "csv or json");
        }
    } else {
        throw ConfigError("unknown field '" + std::string(key) + "'");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig c;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        apply_setting(c, line.substr(0, eq), line.substr(eq + 1));
    }
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path.string() + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_text(const ExperimentConfig &c) {
    std::ostringstream out;
    out << "schema_version = " << kSchemaVersion << '\n'
        << "state.kind = " << to_string(c.state.kind) << '\n'
        << "state.n_alpha = " << c.state.n_alpha << '\n'
        << "state.n_beta = " << c.state.n_beta << '\n'
        << "state.lambda0 = " << format_number(c.state.lambda0) << '\n'
        << "state.n_total = " << c.state.n_total << '\n'
        << "plan.kind = " << to_string(c.plan.kind) << '\n'
        << "plan.angles = " << format_angles(c.plan.angles) << '\n'
        << "plan.party = " << to_string(c.plan.party) << '\n'
        << "plan.phi = " << format_number(c.plan.phi) << '\n'
        << "plan.count = " << c.plan.count << '\n'
        << "plan.p1 = " << c.plan.p1 << '\n'
        << "plan.p2 = " << c.plan.p2 << '\n'
        << "plan.theta = " << format_number(c.plan.theta) << '\n'
        << "plan.confirm = " << c.plan.confirm << '\n'
        << "plan.initial = " << format_number(c.plan.initial) << '\n'
        << "plan.rounds = " << c.plan.rounds << '\n'
        << "plan.batch = " << c.plan.batch << '\n'
        << "plan.bob_count = " << c.plan.bob_count << '\n'
        << "ensemble.size = " << c.ensemble_size << '\n'
        << "seed = " << c.seed << '\n'
        << "grid = " << c.grid << '\n'
        << "budget.ratio = " << format_number(c.budget_ratio) << '\n'
        << "snapshot.stride = " << c.snapshot_stride << '\n'
        << "output.dir = " << c.output_dir << '\n'
        << "output.format = " << to_string(c.output_format) << '\n';
    return out.str();
}

void validate(const ExperimentConfig &c) {
    if (c.ensemble_size < 1) {
        throw ConfigError("field 'ensemble.size': must be >= 1");
    }
    if (c.grid < 16 || c.grid % 2 != 0) {
        throw ConfigError("field 'grid': must be even and >= 16");
    }
    if (!(c.budget_ratio >= 1.0)) {
        throw ConfigError("field 'budget.ratio': must be >= 1");
    }
    try {
        validate(c.state.to_state());
    } catch (const ConfigError &e) {
        throw ConfigError(std::string("field ") + e.what());
    }

    const bool ghz_state = c.state.kind == StateKind::Ghz;
    const bool ghz_plan = c.plan.kind == PlanKind::GhzZ;
    if (ghz_state != ghz_plan) {
        throw ConfigError("field 'plan.kind': ghz_z plans require state.kind = ghz and vice versa");
    }
    const auto require = [](bool ok, const char *field, const char *what) {
        if (!ok) {
            throw ConfigError(std::string("field '") + field + "': " + what);
        }
    };
    switch (c.plan.kind) {
    case PlanKind::Angles:
        break;
    case PlanKind::Repeat:
    case PlanKind::RandomAngles:
    case PlanKind::GhzZ:
        require(c.plan.count >= 1, "plan.count", "must be >= 1");
        break;
    case PlanKind::TwoStage:
    case PlanKind::AliceBob:
    case PlanKind::Paradox:
        require(c.plan.p1 >= 1, "plan.p1", "must be >= 1");
        require(c.plan.p2 >= 1, "plan.p2", "must be >= 1");
        break;
    case PlanKind::Adaptive:
        require(c.plan.rounds >= 1, "plan.rounds", "must be >= 1");
        require(c.plan.batch >= 1, "plan.batch", "must be >= 1");
        break;
    }
}

std::string resolve_output_dir(const ExperimentConfig &config) {
    if (const char *env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
        return env;
    }
    return config.output_dir;
}

ExperimentConfig reference_scenario() {
    ExperimentConfig c;
    c.state = {StateKind::DoubleFock, 100000, 100000, 0.0, 200000};
    c.plan.kind = PlanKind::AliceBob;
    c.plan.p1 = 300;
    c.plan.p2 = 300;
    c.plan.theta = 0.0;
    c.plan.confirm = 100;
    return c;
}

} // namespace hp
