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


#include <wcris/io/config.hpp>
#include <wcris/io/plot.hpp>
#include <wcris/io/weights.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <locale>
#include <sstream>

using namespace wcris;
using namespace wcris::io;

namespace
{
    namespace fs = std::filesystem;

    fs::path scratch(const std::string &name)
    {
        const auto dir = fs::temp_directory_path() / "wcris_test_io";
        fs::create_directories(dir);
        return dir / name;
    }

    struct CommaDecimal : std::numpunct<char>
    {
        char do_decimal_point() const override { return ','; }
        std::string do_grouping() const override { return "\3"; }
        char do_thousands_sep() const override { return '.'; }
    };
}

TEST(Config, DefaultsRoundTrip)
{
    const RunConfig cfg;
    const auto text = format_config(cfg);
    const auto back = parse_config(text);
    EXPECT_EQ(format_config(back), text);
    EXPECT_EQ(back.physics.fingerprint(), cfg.physics.fingerprint());
}

TEST(Config, EditedValuesRoundTrip)
{
    RunConfig cfg;
    cfg.physics.geometry.harmonics = 50;
    cfg.physics.bias_high = 14.25;
    cfg.physics.channel.carrier_frequency = 2.4e9 + 0.1;
    cfg.dataset.count = 1234;
    cfg.dataset.sigma2 = 0.1 + 0.2;
    cfg.training.epoch_cap = 17;
    cfg.ga.config.population = 16;
    cfg.ga.config.allow_self_pairing = false;
    cfg.ga.epoch_cap = 9;
    cfg.sa.sign_mode = optimize::SignMode::NonNegative;
    cfg.sa.linear_acceptance = true;
    cfg.paths.table = "/tmp/table.txt";
    const auto text = format_config(cfg);
    const auto back = parse_config(text);
    EXPECT_EQ(format_config(back), text);
    EXPECT_EQ(back.physics.geometry.harmonics, 50);
    EXPECT_EQ(back.physics.channel.carrier_frequency, 2.4e9 + 0.1);
    EXPECT_EQ(back.dataset.sigma2, 0.1 + 0.2);
    EXPECT_EQ(back.training.epoch_cap, 17);
    EXPECT_EQ(back.ga.epoch_cap, 9);
    EXPECT_FALSE(back.ga.config.allow_self_pairing);
    EXPECT_EQ(back.sa.sign_mode, optimize::SignMode::NonNegative);
    EXPECT_TRUE(back.sa.linear_acceptance);
    EXPECT_EQ(back.paths.table, "/tmp/table.txt");
}

TEST(Config, PartialFileKeepsDefaults)
{
    const auto cfg = parse_config("# tuned run\n[sa]\niterations = 500   # longer\n\n[dataset]\nseed = 9\n");
    EXPECT_EQ(cfg.sa.iterations, 500);
    EXPECT_EQ(cfg.dataset.seed, 9u);
    EXPECT_EQ(cfg.sa.step, optimize::SaParams{}.step);
    EXPECT_EQ(cfg.physics.fingerprint(), physics::PhysicsModel{}.fingerprint());
}

TEST(Config, Rejections)
{
    EXPECT_THROW(parse_config("[sa]\nfoo = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("[solver]\n"), ConfigError);
    EXPECT_THROW(parse_config("iterations = 3\n"), ConfigError);
    EXPECT_THROW(parse_config("[sa]\niterations = 3\niterations = 4\n"), ConfigError);
    EXPECT_THROW(parse_config("[sa]\niterations = many\n"), ConfigError);
    EXPECT_THROW(parse_config("[sa]\niterations\n"), ConfigError);
    EXPECT_THROW(parse_config("[sa\n"), ConfigError);
    EXPECT_THROW(parse_config("[ga]\npopulation = 6\n"), ConfigError);
    EXPECT_THROW(parse_config("[ga]\nallow_self_pairing = perhaps\n"), ConfigError);
    EXPECT_THROW(parse_config("[physics]\nvaractor_table = /nonexistent/curve.txt\n"), ConfigError);
}

TEST(Config, VaractorTableRelativeToConfigFile)
{
    const auto dir = scratch("cfgdir");
    fs::create_directories(dir);
    std::ostringstream table;
    table << "4 0.4 0.5\n9 0.25 0.45\n15 0.15 0.4\n";
    write_file((dir / "curve.txt").string(), table.str());
    write_file((dir / "run.ini").string(), "[physics]\nvaractor_table = curve.txt\n");
    const auto cfg = load_config((dir / "run.ini").string());
    EXPECT_EQ(cfg.physics.cell.curve.samples().size(), 3u);
    EXPECT_EQ(cfg.physics.cell.curve.max_voltage(), 15.0);
    EXPECT_NE(cfg.physics.fingerprint(), physics::PhysicsModel{}.fingerprint());
    EXPECT_EQ(fs::path(cfg.varactor_table), (dir / "curve.txt").lexically_normal());
}

TEST(Config, ShippedDefaultTableMatchesBuiltIn)
{
    const auto cfg = parse_config("[physics]\nvaractor_table = data/varactor_default.txt\n", WCRIS_SOURCE_DIR);
    EXPECT_EQ(cfg.physics.cell.curve.samples().size(), physics::default_varactor_curve().samples().size());
}

TEST(Config, DefaultAndEnvironment)
{
    EXPECT_EQ(load_config("default").sa.iterations, optimize::SaParams{}.iterations);
    const auto path = scratch("env.ini");
    write_file(path.string(), "[sa]\niterations = 777\n");
    ::setenv(kConfigEnv, path.c_str(), 1);
    EXPECT_EQ(load_config("").sa.iterations, 777);
    EXPECT_EQ(load_config("default").sa.iterations, optimize::SaParams{}.iterations);
    ::unsetenv(kConfigEnv);
    EXPECT_EQ(load_config("").sa.iterations, optimize::SaParams{}.iterations);
    EXPECT_THROW(load_config("/nonexistent/run.ini"), ConfigError);
}

TEST(Weights, RoundTrip)
{
    WeightsFile w{{0.1, 0.0, 1.0 / 3.0}, {25.5}, {-10.0, 12.0}, 31.25, "nn"};
    const auto back = decode_weights(encode_weights(w));
    EXPECT_EQ(back.amplitudes, w.amplitudes);
    EXPECT_EQ(back.beams, w.beams);
    EXPECT_EQ(back.nulls, w.nulls);
    EXPECT_EQ(back.slnr_db, w.slnr_db);
    EXPECT_EQ(back.backend, "nn");
}

TEST(Weights, BareArrayAndErrors)
{
    EXPECT_EQ(decode_weights("[1, 2.5, 0]").amplitudes, (std::vector<double>{1.0, 2.5, 0.0}));
    EXPECT_THROW(decode_weights("{\"amplitudes\": [1], \"colour\": 3}"), FormatError);
    EXPECT_THROW(decode_weights("{\"beams\": [1]}"), FormatError);
    EXPECT_THROW(decode_weights("[]"), FormatError);
    EXPECT_THROW(decode_weights("[1, \"x\"]"), FormatError);
    EXPECT_THROW(decode_weights("{not json"), FormatError);
}

TEST(Plot, CsvShapeAndLocaleIndependence)
{
    const auto previous = std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
    const physics::AngleGrid grid;
    std::vector<double> p(81);
    for (int i = 0; i < 81; ++i)
        p[static_cast<std::size_t>(i)] = 1000.5 + 0.25 * i;
    std::ostringstream out;
    write_pattern_csv(out, grid.angles(), p);
    std::ostringstream svg;
    write_pattern_svg(svg, {grid.angles(), p, {25.5}, {}, "t", 720, 420});
    std::locale::global(previous);

    const auto text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 82);
    EXPECT_EQ(text.rfind("angle_deg,power_db\n-60,1000.5\n-58.5,1000.75\n", 0), 0u);
    EXPECT_NE(text.find("\n60,1020.5\n"), std::string::npos);
    EXPECT_EQ(svg.str().find("1.000"), std::string::npos);
    EXPECT_NE(svg.str().find("width=\"720\""), std::string::npos);
}

TEST(Plot, SvgContent)
{
    const physics::AngleGrid grid;
    std::vector<double> p(81, -3.0);
    p[57] = 30.0;
    std::ostringstream svg;
    write_pattern_svg(svg, {grid.angles(), p, {25.5, -20.0}, {10.0}, "a < b", 720, 420});
    const auto s = svg.str();
    EXPECT_EQ(s.rfind("<svg", 0), 0u);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
    EXPECT_NE(s.find("a &lt; b"), std::string::npos);
    const auto count = [&](const std::string &needle) {
        std::size_t n = 0;
        for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1))
            ++n;
        return n;
    };
    EXPECT_EQ(count("class=\"beam\""), 2u);
    EXPECT_EQ(count("class=\"null\""), 1u);
    const auto poly = s.substr(s.find("points=\""));
    EXPECT_EQ(std::count(poly.begin(), poly.begin() + static_cast<long>(poly.find("\"/>")), ','), 81);
    // the highest point of the curve is drawn at the 25.5 degree x position
    EXPECT_NE(poly.find(" 516.00,36.00 "), std::string::npos);
}
