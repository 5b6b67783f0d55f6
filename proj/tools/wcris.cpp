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


// wcris: command line front end.
//
//   wcris gen-dataset --count 5000 --seed 1 --out data.wds [--csv data.csv]
//   wcris train       --dataset data.wds --arch arch.txt --seed 1 --out model.wmd
//   wcris ga-search   --dataset data.wds --pop 8 --seed 1 --out arch.txt
//   wcris optimize    --backend nn --model model.wmd --beams 25.5 --seed 1 --out w.json
//   wcris eval        --weights w.json --csv pattern.csv --svg pattern.svg
//   wcris simulate    --w w.json
//
// Exit status: 0 on success, 1 on a runtime error, 2 on a usage error.

#include <wcris/dataset/io.hpp>
#include <wcris/ga/report.hpp>
#include <wcris/io/config.hpp>
#include <wcris/io/plot.hpp>
#include <wcris/io/weights.hpp>
#include <wcris/nn/model_io.hpp>
#include <wcris/optimize/lookup.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

namespace
{
    using Json = nlohmann::ordered_json;
    using namespace wcris;

    std::string short_num(double v)
    {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
        return std::string(buf, res.ptr);
    }

    /// Progress goes to stderr, as plain text or as one JSON object per line.
    struct Log
    {
        bool quiet = false;
        bool json = false;

        void event(const std::string &name, Json fields, const std::string &text) const
        {
            if (quiet)
                return;
            if (json)
            {
                Json j;
                j["event"] = name;
                for (auto &[k, v] : fields.items())
                    j[k] = v;
                std::cerr << j.dump() << '\n';
            }
            else
                std::cerr << text << '\n';
        }

        void warn(const std::string &text) const
        {
            if (json)
                std::cerr << Json{{"event", "warning"}, {"message", text}}.dump() << '\n';
            else
                std::cerr << "wcris: warning: " << text << '\n';
        }
    };

    struct Common
    {
        std::string config;
        bool quiet = false;
        bool json_log = false;

        Log log() const { return Log{quiet, json_log}; }
    };

    void add_common(CLI::App *cmd, Common &c)
    {
        cmd->add_option("--config", c.config, "run configuration file, or 'default' (env WCRIS_CONFIG)");
        cmd->add_flag("--quiet", c.quiet, "suppress progress output");
        cmd->add_flag("--json-log", c.json_log, "progress as JSON lines on stderr");
    }

    std::string pick(const std::string &flag, const std::string &from_config, const char *what)
    {
        if (!flag.empty())
            return flag;
        if (!from_config.empty())
            return from_config;
        throw ConfigError(std::string("no ") + what + " given (flag or [paths] entry)");
    }

    std::vector<double> parse_angles(const std::string &s)
    {
        try
        {
            return parse_double_list(s);
        }
        catch (const FormatError &e)
        {
            throw ConfigError(std::string("angle list: ") + e.what());
        }
    }

    template <class Write>
    void with_output(const std::string &path, Write write)
    {
        if (path.empty() || path == "-")
        {
            write(std::cout);
            std::cout.flush();
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw FormatError("cannot open '" + path + "' for writing");
        write(out);
        out.flush();
        if (!out)
            throw FormatError("write to '" + path + "' failed");
    }

    // ------------------------------------------------------------------

    struct GenArgs
    {
        Common common;
        std::optional<std::size_t> count;
        std::optional<std::uint64_t> seed;
        std::optional<unsigned> threads;
        std::string out;
        std::string csv;
    };

    int run_gen(const GenArgs &a)
    {
        const auto log = a.common.log();
        auto cfg = io::load_config(a.common.config);
        auto opt = cfg.dataset;
        if (a.count)
            opt.count = *a.count;
        if (a.seed)
            opt.seed = *a.seed;
        if (a.threads)
            opt.threads = *a.threads;
        require(opt.count > 0, "--count must be positive");
        const auto out = pick(a.out, cfg.paths.dataset, "output dataset");

        const physics::PatternSimulator sim(cfg.physics);
        std::size_t next_report = std::max<std::size_t>(1, opt.count / 10);
        const std::size_t step = next_report;
        const auto ds = dataset::generate_dataset(sim, opt, [&](std::size_t done) {
            if (done >= next_report || done == opt.count)
            {
                log.event("progress", {{"samples", done}, {"total", opt.count}},
                          "gen-dataset: " + std::to_string(done) + "/" + std::to_string(opt.count));
                while (next_report <= done)
                    next_report += step;
            }
        });
        dataset::save_dataset(ds, out);
        if (!a.csv.empty())
            with_output(a.csv, [&](std::ostream &os) { dataset::export_csv(ds, os); });
        log.event("dataset", {{"path", out}, {"samples", ds.size()}, {"rejected", ds.meta.rejected}},
                  "gen-dataset: wrote " + std::to_string(ds.size()) + " samples to " + out + " (" +
                      std::to_string(ds.meta.rejected) + " rejected draws)");
        return 0;
    }

    // ------------------------------------------------------------------

    struct TrainArgs
    {
        Common common;
        std::string dataset;
        std::string arch;
        std::optional<std::uint64_t> seed;
        std::optional<int> epoch_cap;
        std::string out;
        bool keep_optimizer = false;
    };

    int run_train(const TrainArgs &a)
    {
        const auto log = a.common.log();
        auto cfg = io::load_config(a.common.config);
        auto tc = cfg.training;
        if (a.seed)
            tc.seed = *a.seed;
        if (a.epoch_cap)
            tc.epoch_cap = *a.epoch_cap;
        const auto ds = dataset::load_dataset(pick(a.dataset, cfg.paths.dataset, "dataset"));
        const auto arch = nn::parse_architecture(read_file(pick(a.arch, cfg.paths.architecture, "architecture")));
        arch.validate_shape();
        const auto out = pick(a.out, cfg.paths.model, "output model");

        const auto data = dataset::normalize(ds);
        log.event("train", {{"architecture", nn::describe(arch)}, {"samples", ds.size()}},
                  "train: " + nn::describe(arch) + " on " + std::to_string(ds.size()) + " samples");
        const auto net = nn::init_mlp(arch, ds.input_width(), ds.output_width(), tc.seed);
        const auto result = nn::train(net, data.inputs, data.targets, tc, [&](const nn::EpochRecord &r) {
            log.event("epoch",
                      {{"epoch", r.epoch}, {"train_mse", r.train_mse}, {"val_mse", r.val_mse}, {"lr", r.learning_rate}},
                      "epoch " + std::to_string(r.epoch) + " train_mse " + short_num(r.train_mse) + " val_mse " +
                          short_num(r.val_mse) + " lr " + short_num(r.learning_rate));
        });
        nn::SurrogateModel model{result.model, ds.scaling, ds.meta.physics_fingerprint, std::nullopt};
        if (a.keep_optimizer)
            model.optimizer = result.optimizer;
        nn::save_model(model, out);
        const auto &rep = result.report;
        log.event("model",
                  {{"path", out}, {"best_epoch", rep.best_epoch}, {"val_mse", rep.best_val_mse}, {"epochs_run", rep.epochs_run()}},
                  "train: best val_mse " + short_num(rep.best_val_mse) + " at epoch " + std::to_string(rep.best_epoch) +
                      ", model written to " + out);
        return 0;
    }

    // ------------------------------------------------------------------

    struct GaArgs
    {
        Common common;
        std::string dataset;
        std::optional<int> population;
        std::optional<std::uint64_t> seed;
        std::optional<int> epoch_cap;
        std::optional<unsigned> threads;
        std::string out;
        std::string report;
    };

    int run_ga(const GaArgs &a)
    {
        const auto log = a.common.log();
        auto cfg = io::load_config(a.common.config);
        auto gc = cfg.ga.config;
        if (a.population)
            gc.population = *a.population;
        if (a.seed)
            gc.seed = *a.seed;
        if (a.threads)
            gc.threads = *a.threads;
        gc.validate();
        auto tc = cfg.training;
        tc.epoch_cap = a.epoch_cap ? a.epoch_cap : cfg.ga.epoch_cap;
        const auto out = pick(a.out, cfg.paths.architecture, "output architecture");
        const auto report_path = a.report.empty() ? out + ".report.json" : a.report;

        const auto ds = dataset::load_dataset(pick(a.dataset, cfg.paths.dataset, "dataset"));
        const auto data = dataset::normalize(ds);
        const auto result = ga::evolve(gc, ga::dataset_trainer(data, tc), [&](const ga::GenerationSummary &g) {
            log.event("generation",
                      {{"generation", g.generation}, {"trained", g.trained}, {"best", g.best}, {"median", g.median}},
                      "generation " + std::to_string(g.generation) + " trained " + std::to_string(g.trained) +
                          " best " + short_num(g.best) + " median " + short_num(g.median));
        });
        write_file(out, "# fitness " + format_double(result.winner.fitness) + "\n" +
                            nn::format_architecture(result.winner.arch));
        write_file(report_path, ga::to_json(ga::ga_report(result)).dump(2) + "\n");
        log.event("winner",
                  {{"architecture", nn::describe(result.winner.arch)},
                   {"fitness", result.winner.fitness},
                   {"models_trained", result.models_trained}},
                  "ga-search: winner " + nn::describe(result.winner.arch) + " val_mse " +
                      short_num(result.winner.fitness) + " after " + std::to_string(result.models_trained) +
                      " models; written to " + out);
        return 0;
    }

    // ------------------------------------------------------------------

    struct OptArgs
    {
        Common common;
        std::string backend = "nn";
        std::string model;
        std::string dataset;
        std::string beams;
        std::string nulls;
        std::optional<std::uint64_t> seed;
        std::optional<int> iterations;
        std::string table;
        std::string out;
        bool zero_init = false;
        bool no_bias_check = false;
    };

    int run_optimize(const OptArgs &a)
    {
        const auto log = a.common.log();
        auto cfg = io::load_config(a.common.config);
        auto params = cfg.sa;
        if (a.iterations)
        {
            params.iterations = *a.iterations;
            params.restart_patience = std::min(params.restart_patience, std::max(1, params.iterations - 1));
        }
        const optimize::Objective request{parse_angles(a.beams), parse_angles(a.nulls)};

        std::unique_ptr<optimize::Backend> backend;
        std::uint64_t physics_fp = cfg.physics.fingerprint();
        if (a.backend == "sim")
            backend = std::make_unique<optimize::ExactBackend>(cfg.physics);
        else
        {
            auto model = nn::load_model(pick(a.model, cfg.paths.model, "model"));
            if (model.physics_fingerprint != physics_fp)
                log.warn("model was trained under a different physics configuration than the one loaded");
            physics_fp = model.physics_fingerprint;
            std::optional<physics::PhysicsModel> limits;
            if (!a.no_bias_check)
                limits = cfg.physics;
            backend = std::make_unique<optimize::SurrogateBackend>(std::move(model), cfg.physics.channel.grid, limits);
        }
        request.validate(backend->grid());
        const auto out = a.out;
        if (out.empty())
            throw ConfigError("no output W-file given (--out)");
        Rng rng = make_stream(a.seed.value_or(1), 0x5a);

        io::WeightsFile wf{{}, request.beams, request.nulls, std::nullopt, backend->name()};
        if (a.zero_init)
        {
            const std::vector<double> zeros(static_cast<std::size_t>(backend->harmonics()), 0.0);
            const auto r = optimize::sa_optimize(*backend, request, params, zeros, rng);
            wf.amplitudes = r.w;
            wf.slnr_db = r.slnr_db;
            log.event("optimized", {{"slnr_db", r.slnr_db}, {"initial_slnr_db", r.initial_slnr_db}},
                      "optimize: SLNR " + short_num(r.initial_slnr_db) + " -> " + short_num(r.slnr_db) + " dB");
        }
        else
        {
            const auto table_path = a.table.empty() ? cfg.paths.table : a.table;
            optimize::LookupTable table;
            if (!table_path.empty() && std::filesystem::exists(table_path))
                table = optimize::LookupTable::load(table_path, backend->fingerprint(),
                                                    [&](const std::string &m) { log.warn(m); });
            std::optional<dataset::Dataset> ds;
            const auto ds_path = a.dataset.empty() ? cfg.paths.dataset : a.dataset;
            if (!ds_path.empty())
                ds = dataset::load_dataset(ds_path, physics_fp);
            const auto r = optimize::adaptive_optimize(table, *backend, request, params, ds ? &*ds : nullptr, rng);
            if (!table_path.empty())
                table.save(table_path);
            wf.amplitudes = r.w;
            wf.slnr_db = r.slnr_db;
            const std::string how = r.cache_hit ? "table hit" : r.cold_start ? "cold start" : "warm start";
            log.event("optimized",
                      {{"slnr_db", r.slnr_db}, {"cache_hit", r.cache_hit}, {"cold_start", r.cold_start},
                       {"sa_runs", r.sa_runs}, {"inserted", r.inserted}},
                      "optimize: " + how + ", " + std::to_string(r.sa_runs) + " annealing runs, SLNR " +
                          short_num(r.slnr_db) + " dB");
        }
        io::save_weights(wf, out);
        return 0;
    }

    // ------------------------------------------------------------------

    struct EvalArgs
    {
        Common common;
        std::string weights;
        std::string beams;
        std::string nulls;
        std::string csv;
        std::string svg;
    };

    int run_eval(const EvalArgs &a)
    {
        const auto log = a.common.log();
        const auto cfg = io::load_config(a.common.config);
        const auto wf = io::load_weights(a.weights);
        const auto beams = a.beams.empty() ? wf.beams : parse_angles(a.beams);
        const auto nulls = a.nulls.empty() ? wf.nulls : parse_angles(a.nulls);

        const optimize::ExactBackend exact(cfg.physics);
        const auto powers = exact.grid_powers_db(wf.amplitudes);
        const auto angles = exact.grid().angles();
        if (!a.csv.empty())
            with_output(a.csv, [&](std::ostream &os) { io::write_pattern_csv(os, angles, powers); });
        if (!a.svg.empty())
        {
            io::PatternPlot plot{angles, powers, beams, nulls, "Radiation pattern", 720, 420};
            with_output(a.svg, [&](std::ostream &os) { io::write_pattern_svg(os, plot); });
        }
        const auto peak = static_cast<std::size_t>(std::max_element(powers.begin(), powers.end()) - powers.begin());
        Json fields{{"peak_angle", angles[peak]}, {"peak_db", powers[peak]}};
        std::string text = "eval: peak " + short_num(powers[peak]) + " dB at " + short_num(angles[peak]) + " deg";
        if (!beams.empty())
        {
            const double s = optimize::evaluate_slnr(exact, wf.amplitudes, {beams, nulls});
            fields["slnr_db"] = s;
            text += ", exact SLNR " + short_num(s) + " dB";
        }
        log.event("evaluated", fields, text);
        return 0;
    }

    // ------------------------------------------------------------------

    struct SimArgs
    {
        Common common;
        std::string weights;
        std::string out;
    };

    int run_simulate(const SimArgs &a)
    {
        const auto cfg = io::load_config(a.common.config);
        const auto wf = io::load_weights(a.weights);
        const optimize::ExactBackend exact(cfg.physics);
        const auto powers = exact.grid_powers_db(wf.amplitudes);
        with_output(a.out, [&](std::ostream &os) { io::write_pattern_csv(os, exact.grid().angles(), powers); });
        return 0;
    }

    std::string one_line(std::string s)
    {
        std::replace(s.begin(), s.end(), '\n', ' ');
        return s;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"wcris: beam synthesis for wave-controlled reconfigurable intelligent surfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "wcris 0.1.0");

    GenArgs gen;
    auto *c_gen = app.add_subcommand("gen-dataset", "generate a (W, pattern) dataset with the exact simulator");
    add_common(c_gen, gen.common);
    c_gen->add_option("--count", gen.count, "number of accepted samples");
    c_gen->add_option("--seed", gen.seed, "master seed");
    c_gen->add_option("--threads", gen.threads, "worker threads");
    c_gen->add_option("--out", gen.out, "output dataset file");
    c_gen->add_option("--csv", gen.csv, "also export the samples as CSV");

    TrainArgs tr;
    auto *c_train = app.add_subcommand("train", "train a surrogate network");
    add_common(c_train, tr.common);
    c_train->add_option("--dataset", tr.dataset, "dataset file");
    c_train->add_option("--arch", tr.arch, "architecture record file");
    c_train->add_option("--seed", tr.seed, "initialisation and shuffling seed");
    c_train->add_option("--epoch-cap", tr.epoch_cap, "upper bound on epochs");
    c_train->add_option("--out", tr.out, "output model file");
    c_train->add_flag("--keep-optimizer", tr.keep_optimizer, "store the Adam moments in the model file");

    GaArgs ga;
    auto *c_ga = app.add_subcommand("ga-search", "genetic architecture search");
    add_common(c_ga, ga.common);
    c_ga->add_option("--dataset", ga.dataset, "dataset file");
    c_ga->add_option("--pop", ga.population, "population size (power of two)");
    c_ga->add_option("--seed", ga.seed, "master seed");
    c_ga->add_option("--epoch-cap", ga.epoch_cap, "upper bound on epochs per candidate");
    c_ga->add_option("--threads", ga.threads, "candidates trained in parallel");
    c_ga->add_option("--out", ga.out, "output architecture record");
    c_ga->add_option("--report", ga.report, "report file (default: <out>.report.json)");

    OptArgs op;
    auto *c_opt = app.add_subcommand("optimize", "find BSW amplitudes for beam and null directions");
    add_common(c_opt, op.common);
    c_opt->add_option("--backend", op.backend, "nn (surrogate) or sim (exact)")->check(CLI::IsMember({"nn", "sim"}));
    c_opt->add_option("--model", op.model, "surrogate model file (nn backend)");
    c_opt->add_option("--dataset", op.dataset, "dataset used for cold starts");
    c_opt->add_option("--beams", op.beams, "comma separated beam directions [deg]")->required();
    c_opt->add_option("--nulls", op.nulls, "comma separated null directions [deg]");
    c_opt->add_option("--seed", op.seed, "annealing seed");
    c_opt->add_option("--iterations", op.iterations, "annealing iterations per run");
    c_opt->add_option("--table", op.table, "lookup table file (read and updated)");
    c_opt->add_option("--out", op.out, "output W-file (JSON)");
    c_opt->add_flag("--zero-init", op.zero_init, "single annealing run from W = 0, no table");
    c_opt->add_flag("--no-bias-check", op.no_bias_check, "nn backend: do not refuse W outside the varactor bias range");

    EvalArgs ev;
    auto *c_eval = app.add_subcommand("eval", "render the exact radiation pattern of a W-file");
    add_common(c_eval, ev.common);
    c_eval->add_option("--weights", ev.weights, "W-file")->required();
    c_eval->add_option("--beams", ev.beams, "beam markers (default: from the W-file)");
    c_eval->add_option("--nulls", ev.nulls, "null markers (default: from the W-file)");
    c_eval->add_option("--csv", ev.csv, "pattern CSV output");
    c_eval->add_option("--svg", ev.svg, "pattern SVG output");

    SimArgs sm;
    auto *c_sim = app.add_subcommand("simulate", "print the exact pattern of a W-file as CSV");
    add_common(c_sim, sm.common);
    c_sim->add_option("--w,--weights", sm.weights, "W-file")->required();
    c_sim->add_option("--out", sm.out, "CSV output (default: stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::cerr << "wcris: usage: " << one_line(e.what()) << " (see --help)\n";
        return 2;
    }

    try
    {
        if (*c_gen)
            return run_gen(gen);
        if (*c_train)
            return run_train(tr);
        if (*c_ga)
            return run_ga(ga);
        if (*c_opt)
            return run_optimize(op);
        if (*c_eval)
            return run_eval(ev);
        return run_simulate(sm);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "wcris: error: config: " << one_line(e.what()) << '\n';
        return 2;
    }
    catch (const Error &e)
    {
        std::cerr << "wcris: error: " << e.kind() << ": " << one_line(e.what()) << '\n';
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "wcris: error: internal: " << one_line(e.what()) << '\n';
        return 1;
    }
}
