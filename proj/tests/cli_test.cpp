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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtest/gtest.h"

#include "hiddenphase/cli.hpp"
#include "hiddenphase/config.hpp"

namespace hp {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        ::unsetenv(kOutputDirEnv);
        dir_ = fs::temp_directory_path() /
               ("hpsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    static std::string slurp(const fs::path &p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

TEST_F(CliTest, HelpAndUsageErrors) {
    const auto help = run({"--help"});
    EXPECT_EQ(help.code, kExitOk);
    EXPECT_NE(help.out.find("hpsim"), std::string::npos);
    EXPECT_EQ(run({}).code, kExitValidation);
    EXPECT_EQ(run({"frobnicate"}).code, kExitValidation);
    EXPECT_EQ(run({"run", "--format", "xml"}).code, kExitValidation);
    EXPECT_EQ(run({"oracle", "enumerate"}).code, kExitValidation);
}

TEST_F(CliTest, ConfigErrorsExitOne) {
    const auto r = run({"run", "--set", "grid=15"});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("grid"), std::string::npos);
    EXPECT_EQ(run({"run", "--set", "noequals"}).code, kExitValidation);
    EXPECT_EQ(run({"run", "--config", (dir_ / "missing.cfg").string()}).code, kExitValidation);
}

TEST_F(CliTest, RuntimeErrorsExitTwo) {
    const auto r = run({"oracle", "fewbody", "--phi", "0,0,0", "--n-alpha", "1", "--n-beta", "1"});
    EXPECT_EQ(r.code, kExitRuntime);
    EXPECT_NE(r.err.find("exceed"), std::string::npos);
    EXPECT_EQ(run({"ghz", "--n", "3", "--p", "4"}).code, kExitRuntime);
}

TEST_F(CliTest, RunJsonToStdout) {
    const auto r = run({"run", "--set", "plan.p1=50", "--set", "plan.p2=40", "--grid", "256",
                        "--seed", "7"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
    EXPECT_TRUE(j.contains("metadata"));
    const auto again = run({"run", "--set", "plan.p1=50", "--set", "plan.p2=40", "--grid", "256",
                            "--seed", "7"});
    auto a = j, b = nlohmann::json::parse(again.out);
    a.erase("metadata");
    b.erase("metadata");
    EXPECT_EQ(a, b);
}

TEST_F(CliTest, RunWritesFiles) {
    const auto r = run({"run", "--set", "plan.p1=30", "--set", "plan.p2=30", "--set",
                        "snapshot.stride=20", "--grid", "64", "--out", dir_.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    for (const char *f : {"summary.json", "records.csv", "ledger_alice.csv", "ledger_bob.csv",
                          "final_distribution.csv", "snapshots/dist_20.csv",
                          "snapshots/dist_40.csv", "snapshots/dist_60.csv"}) {
        EXPECT_TRUE(fs::exists(dir_ / f)) << f;
    }
    const auto records = slurp(dir_ / "records.csv");
    EXPECT_EQ(records.rfind("index,party,phi,eta\n", 0), 0u);
    EXPECT_EQ(std::count(records.begin(), records.end(), '\n'), 61);
    const auto dist = slurp(dir_ / "final_distribution.csv");
    EXPECT_EQ(std::count(dist.begin(), dist.end(), '\n'), 65);
}

TEST_F(CliTest, OutputDirFromEnvironment) {
    ::setenv(kOutputDirEnv, dir_.c_str(), 1);
    const auto r = run({"run", "--set", "plan.p1=10", "--set", "plan.p2=10", "--grid", "64"});
    ::unsetenv(kOutputDirEnv);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(fs::exists(dir_ / "summary.json"));
}

TEST_F(CliTest, RunFromConfigFile) {
    fs::create_directories(dir_);
    const auto cfg = dir_ / "exp.cfg";
    std::ofstream(cfg) << "plan.kind = repeat\nplan.count = 12\nplan.phi = 0.5\ngrid = 64\n"
                       << "output.format = csv\n";
    const auto r = run({"run", "--config", cfg.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 13);
}

TEST_F(CliTest, EnsembleSerialEqualsParallel) {
    const std::vector<std::string> base = {"ensemble", "--set", "ensemble.size=4", "--set",
                                           "plan.p1=40", "--set", "plan.p2=40", "--grid",
                                           "128", "--format", "csv"};
    auto serial = base;
    serial.push_back("--serial");
    auto parallel = base;
    parallel.insert(parallel.end(), {"--threads", "3"});
    const auto a = run(serial), b = run(parallel);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    ASSERT_EQ(b.code, kExitOk) << b.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 5);

    const auto w = run({"ensemble", "--set", "ensemble.size=2", "--set", "plan.p1=20", "--set",
                        "plan.p2=20", "--grid", "64", "--out", dir_.string()});
    ASSERT_EQ(w.code, kExitOk) << w.err;
    EXPECT_TRUE(fs::exists(dir_ / "summary.json"));
    EXPECT_TRUE(fs::exists(dir_ / "trajectories.csv"));
    const auto j = nlohmann::json::parse(slurp(dir_ / "summary.json"));
    EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
}

TEST_F(CliTest, OracleEnumerate) {
    const auto r = run({"oracle", "enumerate", "--phi", "0,0", "--grid", "64"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("sequence,probability\n", 0), 0u);
    EXPECT_NE(r.out.find("++,0.37"), std::string::npos);
    EXPECT_NE(r.out.find("+-,0.12"), std::string::npos);

    const auto p = run({"oracle", "enumerate", "--phi", "0", "--state", "phase_state",
                        "--lambda0", "0", "--format", "json"});
    ASSERT_EQ(p.code, kExitOk) << p.err;
    EXPECT_TRUE(nlohmann::json::accept(p.out));
}

TEST_F(CliTest, OracleFewBody) {
    const auto r = run({"oracle", "fewbody", "--phi", "0,0", "--n-alpha", "1", "--n-beta", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("+-,0\n"), std::string::npos);
}

TEST_F(CliTest, Ghz) {
    const auto r = run({"ghz", "--n", "10", "--p", "5", "--seed", "3", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.at("outcomes").size(), 5u);
    EXPECT_EQ(j.at("sequence_probability"), 0.5);
}

TEST_F(CliTest, ExportDistribution) {
    const auto r = run({"export-dist", "--set", "plan.p1=20", "--set", "plan.p2=20", "--grid",
                        "32", "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("lambda,density\n", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 33);
}

} // namespace
} // namespace hp
