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


#ifndef WCRIS_IO_CONFIG_HPP
#define WCRIS_IO_CONFIG_HPP

#include "../common/container.hpp"
#include "../common/text.hpp"
#include "../dataset/generate.hpp"
#include "../ga/evolve.hpp"
#include "../nn/train.hpp"
#include "../optimize/anneal.hpp"
#include "../physics/pattern.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

// INI-style run configuration:
//
//   # comment
//   [physics]
//   elements = 100   # trailing comment
//   varactor_table = data/varactor_default.txt
//
// Sections: physics, dataset, training, ga, sa, paths. Unknown sections
// and keys are errors, as are repeated keys. Relative file names are taken
// relative to the directory holding the config file.

namespace wcris::io
{
    struct GaSection
    {
        ga::GaConfig config;
        std::optional<int> epoch_cap; ///< caps the epochs of every trained candidate
    };

    struct PathSection
    {
        std::string dataset;
        std::string model;
        std::string architecture;
        std::string table;
    };

    struct RunConfig
    {
        physics::PhysicsModel physics;
        std::string varactor_table; ///< empty: built-in curve
        dataset::GenerationOptions dataset;
        nn::TrainConfig training;
        GaSection ga;
        optimize::SaParams sa;
        PathSection paths;

        void validate() const
        {
            physics.validate();
            training.validate();
            ga.config.validate();
            sa.validate();
            require(dataset.count > 0, "dataset: count must be positive");
            require(dataset.sigma1 > 0 && dataset.sigma2 > 0, "dataset: sigma1 and sigma2 must be positive");
            if (ga.epoch_cap)
                require(*ga.epoch_cap > 0, "ga: epoch_cap must be positive");
        }
    };

    namespace detail
    {
        struct Field
        {
            const char *section;
            const char *key;
            std::function<std::string(const RunConfig &)> get;
            std::function<void(RunConfig &, std::string_view)> set;
        };

        inline bool parse_bool(std::string_view s)
        {
            s = trim(s);
            if (s == "true" || s == "yes" || s == "1")
                return true;
            if (s == "false" || s == "no" || s == "0")
                return false;
            throw FormatError("not a boolean: '" + std::string(s) + "'");
        }

        inline int parse_small(std::string_view s)
        {
            const auto v = parse_int(s);
            if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
                throw FormatError("integer out of range: '" + std::string(s) + "'");
            return static_cast<int>(v);
        }

        inline std::string sign_mode_text(const std::optional<optimize::SignMode> &m)
        {
            if (!m)
                return "auto";
            return *m == optimize::SignMode::Signed ? "signed" : "nonnegative";
        }

        inline std::optional<optimize::SignMode> parse_sign_mode(std::string_view s)
        {
            s = trim(s);
            if (s == "auto")
                return std::nullopt;
            if (s == "signed")
                return optimize::SignMode::Signed;
            if (s == "nonnegative")
                return optimize::SignMode::NonNegative;
            throw FormatError("sign_mode must be auto, signed or nonnegative");
        }

#define WCRIS_DOUBLE(sec, name, member)                                                                              \
    Field{sec, name, [](const RunConfig &c) { return format_double(c.member); },                                   \
          [](RunConfig &c, std::string_view v) { c.member = parse_double(v); }}
#define WCRIS_INT(sec, name, member)                                                                                 \
    Field{sec, name, [](const RunConfig &c) { return std::to_string(c.member); },                                  \
          [](RunConfig &c, std::string_view v) { c.member = parse_small(v); }}
#define WCRIS_UINT(sec, name, member, type)                                                                          \
    Field{sec, name, [](const RunConfig &c) { return std::to_string(c.member); },                                  \
          [](RunConfig &c, std::string_view v) { c.member = static_cast<type>(parse_uint(v)); }}
#define WCRIS_BOOL(sec, name, member)                                                                                \
    Field{sec, name, [](const RunConfig &c) { return std::string(c.member ? "true" : "false"); },                  \
          [](RunConfig &c, std::string_view v) { c.member = parse_bool(v); }}
#define WCRIS_TEXT(sec, name, member)                                                                                \
    Field{sec, name, [](const RunConfig &c) { return c.member; },                                                  \
          [](RunConfig &c, std::string_view v) { c.member = std::string(v); }}
#define WCRIS_OPT_INT(sec, name, member)                                                                             \
    Field{sec, name, [](const RunConfig &c) { return c.member ? std::to_string(*c.member) : std::string("none"); }, \
          [](RunConfig &c, std::string_view v) {                                                                     \
              if (trim(v) == "none")                                                                                 \
                  c.member.reset();                                                                                  \
              else                                                                                                   \
                  c.member = parse_small(v);                                                                         \
          }}

        inline const std::vector<Field> &fields()
        {
            static const std::vector<Field> table = {
                WCRIS_INT("physics", "elements", physics.geometry.elements),
                WCRIS_DOUBLE("physics", "spacing", physics.geometry.spacing),
                WCRIS_DOUBLE("physics", "path_length", physics.geometry.path_length),
                WCRIS_DOUBLE("physics", "left_length", physics.geometry.left_length),
                WCRIS_DOUBLE("physics", "right_length", physics.geometry.right_length),
                WCRIS_DOUBLE("physics", "eps_eff", physics.geometry.eps_eff),
                WCRIS_INT("physics", "harmonics", physics.geometry.harmonics),
                WCRIS_DOUBLE("physics", "r_d", physics.cell.r_d),
                WCRIS_DOUBLE("physics", "c_d", physics.cell.c_d),
                WCRIS_DOUBLE("physics", "l_d", physics.cell.l_d),
                WCRIS_DOUBLE("physics", "l_s", physics.cell.l_s),
                WCRIS_DOUBLE("physics", "l_v", physics.cell.l_v),
                WCRIS_DOUBLE("physics", "z0", physics.cell.z0),
                WCRIS_DOUBLE("physics", "carrier_frequency", physics.channel.carrier_frequency),
                WCRIS_DOUBLE("physics", "symbol_power", physics.channel.symbol_power),
                WCRIS_DOUBLE("physics", "noise_variance", physics.channel.noise_variance),
                WCRIS_DOUBLE("physics", "angle_min", physics.channel.grid.min_deg),
                WCRIS_DOUBLE("physics", "angle_max", physics.channel.grid.max_deg),
                WCRIS_INT("physics", "angle_count", physics.channel.grid.count),
                WCRIS_DOUBLE("physics", "bias_offset", physics.bias_offset),
                WCRIS_DOUBLE("physics", "bias_low", physics.bias_low),
                WCRIS_DOUBLE("physics", "bias_high", physics.bias_high),
                WCRIS_TEXT("physics", "varactor_table", varactor_table),

                WCRIS_UINT("dataset", "count", dataset.count, std::size_t),
                WCRIS_DOUBLE("dataset", "sigma1", dataset.sigma1),
                WCRIS_DOUBLE("dataset", "sigma2", dataset.sigma2),
                WCRIS_UINT("dataset", "seed", dataset.seed, std::uint64_t),
                WCRIS_UINT("dataset", "threads", dataset.threads, unsigned),

                WCRIS_DOUBLE("training", "l2", training.l2),
                WCRIS_DOUBLE("training", "learning_rate", training.learning_rate),
                WCRIS_INT("training", "plateau_patience", training.plateau_patience),
                WCRIS_INT("training", "stop_patience", training.stop_patience),
                WCRIS_DOUBLE("training", "min_improvement", training.min_improvement),
                WCRIS_DOUBLE("training", "validation_fraction", training.validation_fraction),
                WCRIS_UINT("training", "seed", training.seed, std::uint64_t),
                WCRIS_OPT_INT("training", "epoch_cap", training.epoch_cap),

                WCRIS_INT("ga", "population", ga.config.population),
                WCRIS_UINT("ga", "seed", ga.config.seed, std::uint64_t),
                WCRIS_BOOL("ga", "allow_self_pairing", ga.config.allow_self_pairing),
                WCRIS_DOUBLE("ga", "crossover_probability", ga.config.crossover_probability),
                WCRIS_DOUBLE("ga", "mutation_probability", ga.config.mutation_probability),
                WCRIS_UINT("ga", "threads", ga.config.threads, unsigned),
                WCRIS_OPT_INT("ga", "epoch_cap", ga.epoch_cap),

                WCRIS_DOUBLE("sa", "cooling", sa.cooling),
                WCRIS_INT("sa", "iterations", sa.iterations),
                WCRIS_DOUBLE("sa", "step", sa.step),
                WCRIS_INT("sa", "restart_patience", sa.restart_patience),
                WCRIS_DOUBLE("sa", "temperature_scale", sa.temperature_scale),
                Field{"sa", "sign_mode", [](const RunConfig &c) { return sign_mode_text(c.sa.sign_mode); },
                      [](RunConfig &c, std::string_view v) { c.sa.sign_mode = parse_sign_mode(v); }},
                WCRIS_BOOL("sa", "linear_acceptance", sa.linear_acceptance),

                WCRIS_TEXT("paths", "dataset", paths.dataset),
                WCRIS_TEXT("paths", "model", paths.model),
                WCRIS_TEXT("paths", "architecture", paths.architecture),
                WCRIS_TEXT("paths", "table", paths.table),
            };
            return table;
        }

#undef WCRIS_DOUBLE
#undef WCRIS_INT
#undef WCRIS_UINT
#undef WCRIS_BOOL
#undef WCRIS_TEXT
#undef WCRIS_OPT_INT

        inline std::string resolve(const std::string &name, const std::filesystem::path &base)
        {
            if (name.empty() || base.empty() || std::filesystem::path(name).is_absolute())
                return name;
            return (base / name).lexically_normal().string();
        }
    }

    /// Reads the varactor table named by the config into physics.cell.curve.
    inline void load_varactor(RunConfig &cfg)
    {
        if (cfg.varactor_table.empty())
        {
            cfg.physics.cell.curve = physics::default_varactor_curve();
            return;
        }
        std::ifstream in(cfg.varactor_table);
        if (!in)
            throw ConfigError("config: varactor table '" + cfg.varactor_table + "' cannot be opened");
        cfg.physics.cell.curve = physics::parse_varactor_table(in);
    }

    /// Parses config text. `base` is the directory relative names refer to.
    inline RunConfig parse_config(std::istream &in, const std::filesystem::path &base = {})
    {
        RunConfig cfg;
        std::set<std::string> known_sections;
        for (const auto &f : detail::fields())
            known_sections.insert(f.section);
        std::set<std::string> seen;
        std::string section;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            const auto where = "config line " + std::to_string(lineno) + ": ";
            auto t = trim(line);
            if (t.empty() || t.front() == '#' || t.front() == ';')
                continue;
            if (t.front() == '[')
            {
                if (t.back() != ']')
                    throw ConfigError(where + "malformed section header");
                section = std::string(trim(t.substr(1, t.size() - 2)));
                if (!known_sections.count(section))
                    throw ConfigError(where + "unknown section [" + section + "]");
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(where + "expected key = value");
            if (section.empty())
                throw ConfigError(where + "key outside of any section");
            const auto key = std::string(trim(t.substr(0, eq)));
            auto value = t.substr(eq + 1);
            // trailing comment: '#' preceded by whitespace
            for (std::size_t i = 1; i < value.size(); ++i)
                if (value[i] == '#' && (value[i - 1] == ' ' || value[i - 1] == '\t'))
                {
                    value = value.substr(0, i);
                    break;
                }
            value = trim(value);
            const auto &table = detail::fields();
            const auto it = std::find_if(table.begin(), table.end(),
                                         [&](const detail::Field &f) { return section == f.section && key == f.key; });
            if (it == table.end())
                throw ConfigError(where + "unknown key '" + key + "' in [" + section + "]");
            if (!seen.insert(section + "." + key).second)
                throw ConfigError(where + "key '" + key + "' given twice in [" + section + "]");
            try
            {
                it->set(cfg, value);
            }
            catch (const FormatError &e)
            {
                throw ConfigError(where + key + ": " + e.what());
            }
        }
        cfg.varactor_table = detail::resolve(cfg.varactor_table, base);
        for (auto *p : {&cfg.paths.dataset, &cfg.paths.model, &cfg.paths.architecture, &cfg.paths.table})
            *p = detail::resolve(*p, base);
        load_varactor(cfg);
        cfg.validate();
        return cfg;
    }

    inline RunConfig parse_config(const std::string &text, const std::filesystem::path &base = {})
    {
        std::istringstream in(text);
        return parse_config(in, base);
    }

    /// Every key, every section, in a fixed order. parse_config(format_config(c)) == c.
    inline std::string format_config(const RunConfig &cfg)
    {
        std::string out;
        std::string section;
        for (const auto &f : detail::fields())
        {
            if (section != f.section)
            {
                section = f.section;
                out += (out.empty() ? "[" : "\n[") + section + "]\n";
            }
            out += std::string(f.key) + " = " + f.get(cfg) + "\n";
        }
        return out;
    }

    inline constexpr const char *kConfigEnv = "WCRIS_CONFIG";

    /// "default" (or nothing, with WCRIS_CONFIG unset) yields the built-in defaults.
    inline RunConfig load_config(const std::string &path)
    {
        std::string name = path;
        if (name.empty())
            if (const char *env = std::getenv(kConfigEnv))
                name = env;
        if (name.empty() || name == "default")
        {
            RunConfig cfg;
            cfg.validate();
            return cfg;
        }
        std::ifstream in(name);
        if (!in)
            throw ConfigError("config: cannot open '" + name + "'");
        return parse_config(in, std::filesystem::path(name).parent_path());
    }
}

#endif
