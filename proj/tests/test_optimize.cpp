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


#include <wcris/dataset/generate.hpp>
#include <wcris/optimize/lookup.hpp>

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <filesystem>

using namespace wcris;
using namespace wcris::optimize;

namespace
{
    const physics::AngleGrid grid{};

    std::vector<double> ramp(int n)
    {
        std::vector<double> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            p[static_cast<std::size_t>(i)] = 3.0 * i - 0.01 * i * i;
        return p;
    }

    const ExactBackend &exact()
    {
        static const ExactBackend b{physics::PhysicsModel{}};
        return b;
    }

    /// Small random network standing in for a trained surrogate.
    const SurrogateBackend &surrogate()
    {
        static const SurrogateBackend b = [] {
            nn::Architecture a;
            a.layers = {{32, nn::Activation::Tanh}, {32, nn::Activation::PReLU}};
            nn::SurrogateModel m{nn::init_mlp(a, 25, 81, 3), {2.0, -40.0, 40.0}, 0, std::nullopt};
            return SurrogateBackend(std::move(m), physics::AngleGrid{});
        }();
        return b;
    }

    SaParams quick(int iterations = 300)
    {
        SaParams p;
        p.iterations = iterations;
        p.restart_patience = std::min(50, iterations / 2);
        return p;
    }

    const std::vector<double> zeros(25, 0.0);
}

TEST(Interpolation, Identities)
{
    const auto p = ramp(81);
    EXPECT_EQ(interpolated_power(p, -60.0, grid), p[0]);
    EXPECT_EQ(interpolated_power(p, 60.0, grid), p[80]);
    EXPECT_EQ(interpolated_power(p, 0.0, grid), p[40]);
    EXPECT_EQ(interpolated_power(p, 0.75, grid), 0.5 * p[40] + 0.5 * p[41]);
    EXPECT_EQ(interpolated_power(p, 25.5, grid), p[57]);
}

TEST(Interpolation, StaysBetweenNeighbours)
{
    Rng rng = make_stream(1, 1);
    std::vector<double> p(81);
    for (auto &x : p)
        x = 80.0 * uniform01(rng) - 40.0;
    for (int t = 0; t < 10000; ++t)
    {
        const double theta = -60.0 + 120.0 * uniform01(rng);
        const double idx = (theta + 60.0) * 80.0 / 120.0;
        const auto lo = static_cast<std::size_t>(std::floor(idx));
        const auto hi = std::min<std::size_t>(lo + 1, 80);
        const double v = interpolated_power(p, theta, grid);
        EXPECT_GE(v, std::min(p[lo], p[hi]) - 1e-12);
        EXPECT_LE(v, std::max(p[lo], p[hi]) + 1e-12);
    }
}

TEST(Interpolation, OutOfRange)
{
    const auto p = ramp(81);
    EXPECT_THROW(interpolated_power(p, -60.5, grid), DomainError);
    EXPECT_THROW(interpolated_power(p, 61.0, grid), DomainError);
    EXPECT_THROW(interpolated_power(ramp(80), 0.0, grid), DomainError);
}

TEST(Slnr, ExactBroadsideMatchesPattern)
{
    const auto pattern = exact().grid_powers_db(zeros);
    EXPECT_NEAR(evaluate_slnr(exact(), zeros, {{0.0}, {}}), pattern[40], 1e-9);
}

TEST(Slnr, SurrogateGridDirectionIsLookup)
{
    Rng rng = make_stream(2, 2);
    std::vector<double> w(25);
    for (auto &x : w)
        x = uniform01(rng);
    const auto p = surrogate().grid_powers_db(w);
    EXPECT_EQ(surrogate().powers_db(w, std::vector<double>{-13.5})[0], p[31]);
    EXPECT_NEAR(evaluate_slnr(surrogate(), w, {{-13.5}, {}}), p[31], 1e-12);
}

TEST(Slnr, AddingNullNeverHelps)
{
    Rng rng = make_stream(3, 3);
    for (int t = 0; t < 30; ++t)
    {
        std::vector<double> w(25);
        for (auto &x : w)
            x = 0.2 * uniform01(rng);
        const Objective base{{10.0, -25.0}, {40.0}};
        Objective more = base;
        more.nulls.push_back(-50.0);
        EXPECT_LE(evaluate_slnr(exact(), w, more), evaluate_slnr(exact(), w, base));
        EXPECT_LE(evaluate_slnr(surrogate(), w, more), evaluate_slnr(surrogate(), w, base));
    }
}

TEST(Slnr, ObjectiveValidation)
{
    EXPECT_THROW(evaluate_slnr(exact(), zeros, {{}, {}}), DomainError);
    EXPECT_THROW(evaluate_slnr(exact(), zeros, {{70.0}, {}}), DomainError);
    EXPECT_THROW(evaluate_slnr(exact(), zeros, {{10.0}, {10.0}}), DomainError);
    EXPECT_THROW(evaluate_slnr(exact(), std::vector<double>(24, 0.0), {{10.0}, {}}), DomainError);
    EXPECT_THROW(evaluate_slnr(surrogate(), std::vector<double>(25, -0.1), {{10.0}, {}}), DomainError);
}

TEST(Slnr, ExactOutOfBoundsRejected)
{
    std::vector<double> w(25, 0.0);
    w[0] = 20.0;
    EXPECT_THROW(evaluate_slnr(exact(), w, {{10.0}, {}}), RejectedConfiguration);
}

TEST(Acceptance, Rule)
{
    EXPECT_EQ(acceptance_probability(10.0, 11.0, 50.0, 0.002), 1.0);
    EXPECT_EQ(acceptance_probability(10.0, 10.0, 50.0, 0.002), 1.0);
    EXPECT_NEAR(acceptance_probability(10.0, 10.0 - 0.002 * 50.0, 50.0, 0.002), std::exp(-1.0), 1e-14);
    EXPECT_EQ(acceptance_probability(10.0, 9.0, 0.0, 0.002), 0.0);
    EXPECT_EQ(acceptance_probability(10.0, 9.0, 1e-13, 0.002), 0.0);
    EXPECT_EQ(acceptance_probability(10.0, 12.0, 0.0, 0.002), 1.0);
    // linear units: 10 dB -> 10, 0 dB -> 1, gap 9
    EXPECT_NEAR(acceptance_probability(10.0, 0.0, 4500.0, 0.002, true), std::exp(-1.0), 1e-12);
}

TEST(Anneal, FrozenChainWithZeroStep)
{
    SaParams p = quick(100);
    p.step = 0.0;
    Rng rng = make_stream(4, 4);
    std::vector<double> w0(25, 0.05);
    const auto r = sa_optimize(surrogate(), {{20.0}, {}}, p, w0, rng);
    EXPECT_EQ(r.w, w0);
    EXPECT_EQ(r.slnr_db, r.initial_slnr_db);
}

TEST(Anneal, BestIsMaxOfAcceptedAndNotBelowStart)
{
    Rng rng = make_stream(5, 5);
    const auto r = sa_optimize(surrogate(), {{20.0, -30.0}, {0.0}}, quick(), zeros, rng);
    double max_accepted = r.initial_slnr_db;
    for (const auto &s : r.trace)
        if (s.accepted)
            max_accepted = std::max(max_accepted, s.proposal);
    EXPECT_EQ(r.slnr_db, max_accepted);
    EXPECT_GE(r.slnr_db, r.initial_slnr_db);
    EXPECT_NEAR(evaluate_slnr(surrogate(), r.w, {{20.0, -30.0}, {0.0}}), r.slnr_db, 1e-12);
    EXPECT_EQ(r.trace.size(), 300u);
}

TEST(Anneal, NonNegativeModeKeepsAmplitudesNonNegative)
{
    // a backend wrapper that checks every W it is asked to evaluate
    struct Checking final : Backend
    {
        const Backend &inner;
        mutable std::size_t calls = 0;
        explicit Checking(const Backend &b) : inner(b) {}
        std::string name() const override { return "check"; }
        int harmonics() const override { return inner.harmonics(); }
        const physics::AngleGrid &grid() const override { return inner.grid(); }
        std::uint64_t fingerprint() const override { return 1; }
        bool allows_signed() const override { return true; }
        SignMode default_sign_mode() const override { return SignMode::NonNegative; }
        std::vector<double> powers_db(std::span<const double> w, std::span<const double> d) const override
        {
            ++calls;
            for (double x : w)
                EXPECT_GE(x, 0.0);
            return inner.powers_db(w, d);
        }
        std::vector<double> grid_powers_db(std::span<const double> w) const override { return inner.grid_powers_db(w); }
    } checking(surrogate());
    Rng rng = make_stream(6, 6);
    sa_optimize(checking, {{5.0}, {}}, quick(), zeros, rng);
    EXPECT_EQ(checking.calls, 301u);
}

TEST(Anneal, RestartFollowsPatience)
{
    SaParams p = quick(600);
    p.restart_patience = 20;
    p.temperature_scale = 1e-9;
    Rng rng = make_stream(7, 7);
    const auto r = sa_optimize(surrogate(), {{-45.0}, {30.0}}, p, zeros, rng);
    int i_best = 0;
    double best = r.initial_slnr_db;
    int restarts = 0;
    for (int i = 0; i < static_cast<int>(r.trace.size()); ++i)
    {
        const auto &s = r.trace[static_cast<std::size_t>(i)];
        const bool due = i - i_best >= p.restart_patience;
        EXPECT_EQ(s.restarted, due) << i;
        if (due)
        {
            i_best = i;
            ++restarts;
        }
        if (s.accepted && s.proposal > best)
        {
            best = s.proposal;
            i_best = i;
        }
        EXPECT_DOUBLE_EQ(s.temperature, 1e-9 * (1.0 - i / 600.0));
    }
    EXPECT_GT(restarts, 0);
}

TEST(Anneal, Deterministic)
{
    Rng a = make_stream(8, 8), b = make_stream(8, 8);
    const auto r1 = sa_optimize(surrogate(), {{15.0}, {}}, quick(), zeros, a);
    const auto r2 = sa_optimize(surrogate(), {{15.0}, {}}, quick(), zeros, b);
    EXPECT_EQ(r1.w, r2.w);
    ASSERT_EQ(r1.trace.size(), r2.trace.size());
    for (std::size_t i = 0; i < r1.trace.size(); ++i)
        EXPECT_TRUE(r1.trace[i].current == r2.trace[i].current && r1.trace[i].accepted == r2.trace[i].accepted);
}

TEST(Anneal, SurrogateRefusesSignedMode)
{
    SaParams p = quick();
    p.sign_mode = SignMode::Signed;
    Rng rng;
    EXPECT_THROW(sa_optimize(surrogate(), {{15.0}, {}}, p, zeros, rng), ConfigError);
    EXPECT_EQ(effective_sign_mode(exact(), SaParams{}), SignMode::Signed);
}

TEST(Anneal, InfeasibleProposalsAreCountedAndSkipped)
{
    physics::PhysicsModel model;
    model.bias_high = 4.5;
    const ExactBackend tight(model);
    SaParams p = quick(60);
    p.step = 0.5;
    Rng rng = make_stream(9, 9);
    const auto r = sa_optimize(tight, {{15.0}, {}}, p, zeros, rng);
    EXPECT_EQ(r.trace.size(), 60u);
    const auto infeasible = std::count_if(r.trace.begin(), r.trace.end(), [](const SaStep &s) { return std::isnan(s.proposal); });
    EXPECT_GT(infeasible, 0);
    EXPECT_TRUE(tight.simulator().in_bounds(tight.simulator().bias(tight.simulator().config(r.w))));
}

TEST(Anneal, ParamsValidation)
{
    SaParams p;
    p.restart_patience = p.iterations;
    EXPECT_THROW(p.validate(), ConfigError);
    p = {};
    p.cooling = 0;
    EXPECT_THROW(p.validate(), ConfigError);
}

namespace
{
    LookupEntry entry(std::vector<double> beams, double slnr, std::vector<double> nulls = {}, std::uint64_t fp = 7)
    {
        return {std::move(beams), std::move(nulls), slnr, std::vector<double>(25, slnr / 100.0), fp};
    }
}

TEST(Lookup, QueryRules)
{
    LookupTable t;
    EXPECT_FALSE(t.query({-19.5}).has_value());
    t.insert(entry({-19.5}, 20.0));
    t.insert(entry({49.5, -19.5}, 15.0));
    t.insert(entry({30.0}, 40.0));
    const auto hit = t.query({-19.5, 49.5, 10.0});
    ASSERT_TRUE(hit.has_value());
    EXPECT_EQ(hit->beams, (std::vector<double>{-19.5, 49.5}));
    EXPECT_FALSE(t.query({11.0}).has_value());
    // the two-beam entry covers a beam outside this request
    EXPECT_FALSE(t.query({49.5}).has_value());
}

TEST(Lookup, TieBreakBySlnr)
{
    LookupTable t;
    t.insert(entry({10.0}, 20.0, {}));
    t.insert(entry({10.0}, 25.0, {-30.0}));
    EXPECT_EQ(t.query({10.0})->slnr_db, 25.0);
}

TEST(Lookup, CollisionKeepsHigherSlnr)
{
    LookupTable t;
    EXPECT_TRUE(t.insert(entry({10.0, -5.0}, 20.0)));
    EXPECT_FALSE(t.insert(entry({-5.0, 10.0}, 18.0)));
    EXPECT_EQ(t.size(), 1u);
    EXPECT_TRUE(t.insert(entry({-5.0, 10.0}, 22.0)));
    EXPECT_EQ(t.size(), 1u);
    EXPECT_EQ(t.entries()[0].slnr_db, 22.0);
}

TEST(Lookup, TextRoundTripAndBackendFilter)
{
    LookupTable t;
    t.insert(entry({-19.5, 49.5}, 25.4, {10.0}));
    t.insert(entry({12.25}, 33.1));
    t.insert(entry({0.0}, 31.0, {}, 99));
    const auto text = t.to_text();
    const auto back = LookupTable::from_text(text);
    EXPECT_EQ(back.entries(), t.entries());
    EXPECT_EQ(back.to_text(), text);

    std::vector<std::string> warnings;
    const auto filtered = LookupTable::from_text(text, 7, [&](const std::string &m) { warnings.push_back(m); });
    EXPECT_EQ(filtered.size(), 2u);
    EXPECT_EQ(warnings.size(), 1u);
    EXPECT_THROW(LookupTable::from_text("beams=1 nulls=- slnr=3\n"), FormatError);
    EXPECT_THROW(LookupTable::from_text("beams=1 nulls=- slnr=3 backend=00 w=1 extra=2\n"), FormatError);
}

TEST(Lookup, LargeTableLoadsQuickly)
{
    LookupTable t;
    Rng rng = make_stream(10, 10);
    for (int i = 0; i < 10000; ++i)
    {
        auto e = entry({-60.0 + 0.012 * i}, 30.0 * uniform01(rng));
        for (auto &x : e.w)
            x = uniform01(rng);
        t.insert(std::move(e));
    }
    const auto path = (std::filesystem::temp_directory_path() / "wcris_test_table.txt").string();
    t.save(path);
    const auto t0 = std::chrono::steady_clock::now();
    const auto back = LookupTable::load(path);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_EQ(back.size(), 10000u);
    EXPECT_LT(seconds, 1.0);
    std::filesystem::remove(path);
}

namespace
{
    const dataset::Dataset &small_dataset()
    {
        static const dataset::Dataset ds = [] {
            dataset::GenerationOptions opt;
            opt.count = 60;
            opt.seed = 3;
            return dataset::generate_dataset(exact().simulator(), opt);
        }();
        return ds;
    }
}

TEST(Adaptive, ColdSingleBeamStartsFromStrongestSample)
{
    const auto &ds = small_dataset();
    // exhaustive scan at a grid-aligned direction: stored column 57 is 25.5 degrees
    std::size_t want = 0;
    for (std::size_t i = 1; i < ds.size(); ++i)
        if (ds.samples[i].powers_db[57] > ds.samples[want].powers_db[57])
            want = i;
    LookupTable table;
    Rng rng = make_stream(11, 11);
    const auto r = adaptive_optimize(table, exact(), {{25.5}, {}}, quick(40), &ds, rng);
    EXPECT_TRUE(r.cold_start);
    EXPECT_EQ(r.initial_w, ds.samples[want].amplitudes);
    EXPECT_EQ(r.sa_runs, 1u);
    EXPECT_EQ(table.size(), 1u);
}

TEST(Adaptive, ColdStartInsertsOneEntryPerBeamPlusNulls)
{
    const auto &ds = small_dataset();
    for (auto [beams, nulls] : std::vector<std::pair<std::vector<double>, std::vector<double>>>{
             {{-20.0, 50.0}, {10.0, -40.0}}, {{-20.0, 50.0, 5.0}, {}}, {{33.0}, {-10.0}}})
    {
        LookupTable table;
        Rng rng = make_stream(12, 12);
        const auto r = adaptive_optimize(table, surrogate(), {beams, nulls}, quick(30), &ds, rng);
        EXPECT_EQ(r.inserted, beams.size() + std::min<std::size_t>(1, nulls.size()));
        EXPECT_EQ(table.size(), r.inserted);
        const auto full = table.find(beams, nulls, surrogate().fingerprint());
        ASSERT_TRUE(full.has_value());
        EXPECT_NEAR(evaluate_slnr(surrogate(), full->w, {beams, nulls}), full->slnr_db, 1e-9);
    }
}

TEST(Adaptive, CacheHitSkipsAnnealing)
{
    LookupTable table;
    Rng rng = make_stream(13, 13);
    const Objective obj{{-20.0, 50.0}, {10.0}};
    adaptive_optimize(table, surrogate(), obj, quick(30), &small_dataset(), rng);
    const auto stored = table.find(obj.beams, obj.nulls, surrogate().fingerprint());
    const auto r = adaptive_optimize(table, surrogate(), obj, quick(30), nullptr, rng);
    EXPECT_TRUE(r.cache_hit);
    EXPECT_EQ(r.sa_runs, 0u);
    EXPECT_EQ(r.w, stored->w);
}

TEST(Adaptive, WarmStartInheritsStoredEntry)
{
    LookupTable table;
    Rng rng = make_stream(14, 14);
    adaptive_optimize(table, surrogate(), {{-20.0}, {}}, quick(30), &small_dataset(), rng);
    const auto single = *table.find({-20.0}, {}, surrogate().fingerprint());
    const auto r = adaptive_optimize(table, surrogate(), {{-20.0, 50.0}, {10.0}}, quick(30), nullptr, rng);
    EXPECT_FALSE(r.cold_start);
    EXPECT_EQ(r.initial_w, single.w);
    EXPECT_EQ(r.sa_runs, 2u);
    EXPECT_EQ(table.size(), 3u);
}

TEST(Adaptive, ColdStartNeedsDataset)
{
    LookupTable table;
    Rng rng;
    EXPECT_THROW(adaptive_optimize(table, surrogate(), {{10.0}, {}}, quick(30), nullptr, rng), DomainError);
}
