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

#include "hiddenphase/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "hiddenphase/config.hpp"
#include "hiddenphase/ensemble.hpp"
#include "hiddenphase/error.hpp"
#include "hiddenphase/io.hpp"
#include "hiddenphase/oracle.hpp"
#include "hiddenphase/states.hpp"

namespace hp {

namespace {

namespace fs = std::filesystem;

struct CommonFlags {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

void add_common(CLI::App *cmd, CommonFlags &flags) {
    cmd->add_option("--seed", flags.seed, "Master random seed");
    cmd->add_option("--grid", flags.grid, "Phase grid size K (even, >= 16)");
    cmd->add_option("--out", flags.out, "Output directory (default: stdout)");
    cmd->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

struct ConfigFlags {
    std::string config_path;
    std::vector<std::string> overrides;
    std::size_t index = 0;
};

void add_config(CLI::App *cmd, ConfigFlags &flags) {
    cmd->add_option("--config", flags.config_path, "Experiment config file (key = value)");
    cmd->add_option("--set", flags.overrides, "Override one config key, e.g. --set plan.p1=200");
}

ExperimentConfig build_config(const ConfigFlags &cf, const CommonFlags &common) {
    ExperimentConfig c = cf.config_path.empty() ? ExperimentConfig{} : load_config(cf.config_path);
    for (const auto &kv : cf.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--set expects key=value, got '" + kv + "'");
        }
        apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (common.seed) {
        c.seed = *common.seed;
    }
    if (common.grid) {
        c.grid = *common.grid;
    }
    if (common.format) {
        c.output_format = *common.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    }
    validate(c);
    return c;
}

std::string output_dir(const CommonFlags &common, const ExperimentConfig *config) {
    if (common.out) {
        return *common.out;
    }
    if (config != nullptr) {
        return resolve_output_dir(*config);
    }
    if (const char *env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
        return env;
    }
    return {};
}

std::ofstream open_output(const fs::path &path) {
    fs::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) {
        throw Error("cannot write '" + path.string() + "'");
    }
    return f;
}

template <typename Writer> void write_file(const fs::path &path, Writer &&writer) {
    auto f = open_output(path);
    writer(f);
}

bool wants_json(const CommonFlags &common, bool default_json) {
    return common.format ? *common.format == "json" : default_json;
}

std::vector<MeasurementSpec> angle_plan(const std::vector<double> &angles) {
    std::vector<MeasurementSpec> plan;
    for (double phi : angles) {
        plan.push_back(MeasurementSpec::at(Party::Alice, phi));
    }
    return plan;
}

int cmd_run(const ConfigFlags &cf, const CommonFlags &common, std::ostream &out) {
    const ExperimentConfig config = build_config(cf, common);
    const TrajectoryRun run = simulate_trajectory(config, cf.index);
    const std::string dir = output_dir(common, &config);
    const bool json = config.output_format == OutputFormat::Json;
    if (dir.empty()) {
        if (json) {
            out << trajectory_json(config, run).dump(2) << '\n';
        } else if (run.trajectory) {
            write_records_csv(out, run.trajectory->records);
        } else {
            out << "index,eta\n";
            for (std::size_t i = 0; i < run.ghz_outcomes.size(); ++i) {
                out << i << ',' << static_cast<int>(run.ghz_outcomes[i]) << '\n';
            }
        }
        return kExitOk;
    }
    const fs::path base(dir);
    write_file(base / "summary.json",
               [&](std::ostream &f) { f << trajectory_json(config, run).dump(2) << '\n'; });
    if (run.trajectory) {
        const auto &t = *run.trajectory;
        write_file(base / "records.csv", [&](std::ostream &f) { write_records_csv(f, t.records); });
        write_file(base / "ledger_alice.csv",
                   [&](std::ostream &f) { write_ledger_csv(f, t.alice_ledger); });
        write_file(base / "ledger_bob.csv",
                   [&](std::ostream &f) { write_ledger_csv(f, t.bob_ledger); });
        write_file(base / "final_distribution.csv",
                   [&](std::ostream &f) { write_distribution_csv(f, t.final_distribution); });
        for (const auto &s : t.snapshots) {
            write_file(base / "snapshots" / ("dist_" + std::to_string(s.measurements) + ".csv"),
                       [&](std::ostream &f) { write_distribution_csv(f, s.distribution); });
        }
    }
    out << "wrote " << base.string() << '\n';
    return kExitOk;
}

int cmd_ensemble(const ConfigFlags &cf, const CommonFlags &common, int threads, bool serial,
                 std::ostream &out) {
    const ExperimentConfig config = build_config(cf, common);
    const RunSummary summary = run_ensemble(config, ExecutionOptions{!serial, threads});
    const std::string dir = output_dir(common, &config);
    if (dir.empty()) {
        if (config.output_format == OutputFormat::Json) {
            out << summary_json(config, summary).dump(2) << '\n';
        } else {
            write_rows_csv(out, summary.rows);
        }
        return kExitOk;
    }
    const fs::path base(dir);
    write_file(base / "summary.json",
               [&](std::ostream &f) { f << summary_json(config, summary).dump(2) << '\n'; });
    write_file(base / "trajectories.csv",
               [&](std::ostream &f) { write_rows_csv(f, summary.rows); });
    out << "wrote " << base.string() << '\n';
    return kExitOk;
}

int emit_oracle(const std::vector<SequenceProbability> &table, const CommonFlags &common,
                const std::string &file, std::ostream &out) {
    const auto emit = [&](std::ostream &f) {
        if (wants_json(common, false)) {
            f << oracle_json(table).dump(2) << '\n';
        } else {
            write_oracle_csv(f, table);
        }
    };
    const std::string dir = output_dir(common, nullptr);
    if (dir.empty()) {
        emit(out);
    } else {
        write_file(fs::path(dir) / file, emit);
        out << "wrote " << (fs::path(dir) / file).string() << '\n';
    }
    return kExitOk;
}

int cmd_ghz(std::int64_t n, std::size_t p, const CommonFlags &common, std::ostream &out) {
    Rng rng(common.seed.value_or(1));
    const auto outcomes = ghz_trajectory(Ghz{n}, p, rng);
    const auto emit = [&](std::ostream &f) {
        if (wants_json(common, false)) {
            Json j;
            j["schema_version"] = kSchemaVersion;
            Json arr = Json::array();
            for (Outcome o : outcomes) {
                arr.push_back(static_cast<int>(o));
            }
            j["outcomes"] = std::move(arr);
            j["sequence_probability"] = ghz_sequence_probability(outcomes);
            f << j.dump(2) << '\n';
        } else {
            f << "index,eta\n";
            for (std::size_t i = 0; i < outcomes.size(); ++i) {
                f << i << ',' << static_cast<int>(outcomes[i]) << '\n';
            }
        }
    };
    const std::string dir = output_dir(common, nullptr);
    if (dir.empty()) {
        emit(out);
    } else {
        write_file(fs::path(dir) / "ghz.csv", emit);
        out << "wrote " << (fs::path(dir) / "ghz.csv").string() << '\n';
    }
    return kExitOk;
}

int cmd_export_dist(const ConfigFlags &cf, const CommonFlags &common, std::ostream &out) {
    const ExperimentConfig config = build_config(cf, common);
    const TrajectoryRun run = simulate_trajectory(config, cf.index);
    if (!run.trajectory) {
        throw UnsupportedStateError("GHZ runs have no phase distribution to export");
    }
    const PhaseDistribution &d = run.trajectory->final_distribution;
    const auto emit = [&](std::ostream &f) {
        if (wants_json(common, false)) {
            Json j;
            j["schema_version"] = kSchemaVersion;
            j["distribution"] = to_json(d);
            std::vector<double> lambda(d.grid().size());
            for (std::size_t k = 0; k < lambda.size(); ++k) {
                lambda[k] = d.grid().node(k);
            }
            j["lambda"] = lambda;
            j["density"] = std::vector<double>(d.weights().begin(), d.weights().end());
            f << j.dump() << '\n';
        } else {
            write_distribution_csv(f, d);
        }
    };
    const std::string dir = output_dir(common, &config);
    if (dir.empty()) {
        emit(out);
    } else {
        write_file(fs::path(dir) / "distribution.csv", emit);
        out << "wrote " << (fs::path(dir) / "distribution.csv").string() << '\n';
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Sequential spin measurements on double Fock, phase and GHZ states", "hpsim"};
    app.require_subcommand(1);

    CommonFlags run_common, ens_common, enum_common, few_common, ghz_common, exp_common;
    ConfigFlags run_cfg, ens_cfg, exp_cfg;

    auto *run = app.add_subcommand("run", "Simulate one trajectory");
    add_config(run, run_cfg);
    add_common(run, run_common);
    run->add_option("--index", run_cfg.index, "Trajectory index within the ensemble seed space");

    auto *ens = app.add_subcommand("ensemble", "Simulate an ensemble and aggregate it");
    add_config(ens, ens_cfg);
    add_common(ens, ens_common);
    int threads = 0;
    bool serial = false;
    ens->add_option("--threads", threads, "Worker threads (0 = OpenMP default)");
    ens->add_flag("--serial", serial, "Run trajectories on the calling thread");

    auto *oracle = app.add_subcommand("oracle", "Exact outcome-sequence probabilities");
    oracle->require_subcommand(1);

    auto *enumerate = oracle->add_subcommand("enumerate", "Enumerate the hidden-phase integral");
    add_common(enumerate, enum_common);
    std::vector<double> enum_phi;
    std::string enum_state = "double_fock";
    double enum_lambda0 = 0.0;
    enumerate->add_option("--phi", enum_phi, "Comma-separated measurement angles (radians)")
        ->required()
        ->delimiter(',');
    enumerate->add_option("--state", enum_state, "double_fock or phase_state")
        ->check(CLI::IsMember({"double_fock", "phase_state"}));
    enumerate->add_option("--lambda0", enum_lambda0, "Phase of a phase_state");

    auto *fewbody = oracle->add_subcommand("fewbody", "Exact finite-N boson amplitudes");
    add_common(fewbody, few_common);
    std::vector<double> few_phi;
    std::int64_t n_alpha = 1;
    std::int64_t n_beta = 1;
    fewbody->add_option("--phi", few_phi, "Comma-separated measurement angles (radians)")
        ->required()
        ->delimiter(',');
    fewbody->add_option("--n-alpha", n_alpha, "Population of mode 1");
    fewbody->add_option("--n-beta", n_beta, "Population of mode 2");

    auto *ghz = app.add_subcommand("ghz", "z-axis measurements on a GHZ state");
    add_common(ghz, ghz_common);
    std::int64_t ghz_n = 100;
    std::size_t ghz_p = 1;
    ghz->add_option("--n", ghz_n, "Particle number");
    ghz->add_option("--p", ghz_p, "Number of measurements");

    auto *exp = app.add_subcommand("export-dist", "Write the final phase distribution of a run");
    add_config(exp, exp_cfg);
    add_common(exp, exp_common);
    exp->add_option("--index", exp_cfg.index, "Trajectory index");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitValidation;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run_cfg, run_common, out);
        }
        if (ens->parsed()) {
            return cmd_ensemble(ens_cfg, ens_common, threads, serial, out);
        }
        if (enumerate->parsed()) {
            const auto plan = angle_plan(enum_phi);
            const InitialState state = enum_state == "phase_state"
                                           ? InitialState{PhaseState{enum_lambda0, 1000000}}
                                           : InitialState{DoubleFock{1000000, 1000000}};
            const auto table =
                enumerate_outcomes(state, plan, enum_common.grid.value_or(kDefaultGridSize));
            return emit_oracle(table, enum_common, "oracle_enumerate.csv", out);
        }
        if (fewbody->parsed()) {
            const auto table = fewbody_enumerate(n_alpha, n_beta, angle_plan(few_phi));
            return emit_oracle(table, few_common, "oracle_fewbody.csv", out);
        }
        if (ghz->parsed()) {
            return cmd_ghz(ghz_n, ghz_p, ghz_common, out);
        }
        if (exp->parsed()) {
            return cmd_export_dist(exp_cfg, exp_common, out);
        }
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    err << app.help();
    return kExitValidation;
}

} // namespace hp
