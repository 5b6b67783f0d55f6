// SPDX-License-Identifier: Apache-2.0
//
// wcris - beam synthesis for wave-controlled reconfigurable intelligent surfaces
// Copyright (C) 2026 The wcris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <wcris/common/container.hpp>
#include <wcris/io/weights.hpp>
#include <wcris/optimize/lookup.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace wcris;

namespace
{
    namespace fs = std::filesystem;

    struct Run
    {
        int status = -1;
        std::string out;
        std::string err;
    };

    /// One fresh scratch directory per test, so tests may run in parallel.
    const fs::path &workdir()
    {
        static const fs::path dir = [] {
            const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
            auto d = fs::temp_directory_path() / "wcris_test_cli" / info->name();
            fs::remove_all(d);
            fs::create_directories(d);
            return d;
        }();
        return dir;
    }

    std::string at(const std::string &name) { return (workdir() / name).string(); }

    Run wcris_run(const std::string &args, const std::string &env = "")
    {
        const auto out = at("stdout.txt"), err = at("stderr.txt");
        const std::string cmd = env + (env.empty() ? "" : " ") + "'" + std::string(WCRIS_CLI) + "' " + args + " >'" +
                                out + "' 2>'" + err + "'";
        const int raw = std::system(cmd.c_str());
        Run r;
        r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        r.out = read_file(out);
        r.err = read_file(err);
        return r;
    }

    std::size_t lines(const std::string &s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

    void write_zero_w()
    {
        io::WeightsFile w;
        w.amplitudes.assign(25, 0.0);
        io::save_weights(w, at("zero.json"));
    }
}

TEST(Cli, SimulateZeroPattern)
{
    write_zero_w();
    const auto r = wcris_run("simulate --config default --w " + at("zero.json"));
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(lines(r.out), 82u);
    EXPECT_EQ(r.out.rfind("angle_deg,power_db\n-60,", 0), 0u);
}

TEST(Cli, GenDatasetIsDeterministic)
{
    ASSERT_EQ(wcris_run("gen-dataset --count 10 --seed 7 --out " + at("a.wds") + " --csv " + at("a.csv")).status, 0);
    ASSERT_EQ(wcris_run("gen-dataset --count 10 --seed 7 --quiet --out " + at("b.wds") + " --csv " + at("b.csv")).status, 0);
    EXPECT_EQ(read_file(at("a.wds")), read_file(at("b.wds")));
    EXPECT_EQ(read_file(at("a.csv")), read_file(at("b.csv")));
    EXPECT_EQ(lines(read_file(at("a.csv"))), 11u);
    ASSERT_EQ(wcris_run("gen-dataset --count 10 --seed 8 --quiet --out " + at("c.wds")).status, 0);
    EXPECT_NE(read_file(at("a.wds")), read_file(at("c.wds")));
}

TEST(Cli, UsageErrorsExitTwo)
{
    for (const std::string args : {"", "frobnicate", "simulate --w x.json --bogus", "optimize --out w.json",
                                   "optimize --backend quantum --beams 1 --out w.json", "--help-me"})
    {
        const auto r = wcris_run(args);
        EXPECT_EQ(r.status, 2) << args;
        EXPECT_EQ(lines(r.err), 1u) << args << ": " << r.err;
    }
    EXPECT_EQ(wcris_run("--help").status, 0);
}

TEST(Cli, RuntimeErrorsAreOneLine)
{
    auto r = wcris_run("simulate --w " + at("missing.json"));
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(lines(r.err), 1u);
    EXPECT_EQ(r.err.rfind("wcris: error: format: ", 0), 0u) << r.err;

    io::WeightsFile hot;
    hot.amplitudes.assign(25, 3.0);
    io::save_weights(hot, at("hot.json"));
    r = wcris_run("simulate --w " + at("hot.json"));
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(r.err.rfind("wcris: error: rejected-configuration: ", 0), 0u) << r.err;
}

TEST(Cli, ConfigFileAndEnvironment)
{
    write_zero_w();
    write_file(at("bad.ini"), "[sa]\nwarp = 9\n");
    auto r = wcris_run("simulate --config " + at("bad.ini") + " --w " + at("zero.json"));
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("unknown key 'warp'"), std::string::npos) << r.err;

    r = wcris_run("simulate --w " + at("zero.json"), "WCRIS_CONFIG='" + at("bad.ini") + "'");
    EXPECT_EQ(r.status, 2);

    write_file(at("grid.ini"), "[physics]\nangle_count = 41\n");
    r = wcris_run("simulate --w " + at("zero.json"), "WCRIS_CONFIG='" + at("grid.ini") + "'");
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(lines(r.out), 42u);
}

TEST(Cli, OptimizeTableAndEval)
{
    ASSERT_EQ(wcris_run("gen-dataset --count 40 --seed 3 --quiet --out " + at("opt.wds")).status, 0);
    const auto common = "optimize --backend sim --iterations 40 --beams 20 --nulls -30 --seed 2 --dataset " +
                        at("opt.wds") + " --table " + at("table.txt");
    auto r = wcris_run(common + " --json-log --out " + at("w1.json"));
    ASSERT_EQ(r.status, 0) << r.err;
    auto log = nlohmann::json::parse(r.err);
    EXPECT_EQ(log["event"], "optimized");
    EXPECT_EQ(log["cache_hit"], false);
    EXPECT_EQ(log["sa_runs"], 2);
    EXPECT_EQ(optimize::LookupTable::load(at("table.txt")).size(), 2u);

    r = wcris_run(common + " --json-log --out " + at("w2.json"));
    ASSERT_EQ(r.status, 0) << r.err;
    log = nlohmann::json::parse(r.err);
    EXPECT_EQ(log["cache_hit"], true);
    const auto w1 = io::load_weights(at("w1.json"));
    EXPECT_EQ(w1.amplitudes, io::load_weights(at("w2.json")).amplitudes);
    EXPECT_EQ(w1.beams, std::vector<double>{20.0});
    EXPECT_EQ(w1.backend, "sim");

    r = wcris_run("eval --json-log --weights " + at("w1.json") + " --csv " + at("p.csv") + " --svg " + at("p.svg"));
    ASSERT_EQ(r.status, 0) << r.err;
    log = nlohmann::json::parse(r.err);
    EXPECT_NEAR(log["slnr_db"].get<double>(), *w1.slnr_db, 1e-9);
    EXPECT_EQ(lines(read_file(at("p.csv"))), 82u);
    EXPECT_NE(read_file(at("p.svg")).find("class=\"null\""), std::string::npos);
}

TEST(Cli, SurrogatePipeline)
{
    ASSERT_EQ(wcris_run("gen-dataset --count 200 --seed 4 --quiet --out " + at("s.wds")).status, 0);
    write_file(at("arch.txt"), "epochs 3\nbatch_size 32\nlayer 16 tanh\n");
    auto r = wcris_run("train --dataset " + at("s.wds") + " --arch " + at("arch.txt") + " --seed 5 --out " + at("m.wmd"));
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.err.find("epoch 3 train_mse "), std::string::npos) << r.err;

    r = wcris_run("ga-search --quiet --dataset " + at("s.wds") + " --pop 2 --epoch-cap 2 --seed 1 --out " + at("ga.txt"));
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_NO_THROW(nn::parse_architecture(read_file(at("ga.txt"))));
    const auto report = nlohmann::json::parse(read_file(at("ga.txt") + ".report.json"));
    EXPECT_EQ(report["models_trained"], 4);

    r = wcris_run("optimize --quiet --backend nn --model " + at("m.wmd") + " --dataset " + at("s.wds") +
                  " --iterations 30 --beams 25.5 --seed 1 --out " + at("wn.json"));
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(io::load_weights(at("wn.json")).backend, "nn");
    r = wcris_run("optimize --quiet --backend nn --model " + at("m.wmd") +
                  " --zero-init --iterations 30 --beams 25.5 --seed 1 --out " + at("wz.json"));
    ASSERT_EQ(r.status, 0) << r.err;
    r = wcris_run("eval --quiet --weights " + at("wn.json") + " --csv " + at("pn.csv"));
    EXPECT_EQ(r.status, 0) << r.err;
}
