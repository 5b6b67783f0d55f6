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


#ifndef WCRIS_OPTIMIZE_LOOKUP_HPP
#define WCRIS_OPTIMIZE_LOOKUP_HPP

#include "../dataset/dataset.hpp"
#include "anneal.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

// Lookup table file: one entry per line,
//
//   beams=-19.5;49.5 nulls=10 slnr=25.4 backend=<hex> w=0.1,0.2,...
//
// Empty direction lists are written as "-". Lines starting with '#' are comments.

namespace wcris::optimize
{
    struct LookupEntry
    {
        std::vector<double> beams; ///< sorted
        std::vector<double> nulls; ///< sorted
        double slnr_db = 0.0;
        std::vector<double> w;
        std::uint64_t backend = 0;

        bool same_key(const LookupEntry &o) const
        {
            return beams == o.beams && nulls == o.nulls && backend == o.backend;
        }

        friend bool operator==(const LookupEntry &, const LookupEntry &) = default;
    };

    namespace detail
    {
        inline std::vector<double> sorted(std::vector<double> v)
        {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            return v;
        }

        inline bool subset(const std::vector<double> &small, const std::vector<double> &big)
        {
            return std::includes(big.begin(), big.end(), small.begin(), small.end());
        }

        inline std::string directions_text(const std::vector<double> &v)
        {
            return v.empty() ? "-" : join_doubles(v, ';');
        }

        inline std::vector<double> parse_directions(std::string_view s)
        {
            return s == "-" ? std::vector<double>{} : parse_double_list(s, ';');
        }
    }

    class LookupTable
    {
    public:
        const std::vector<LookupEntry> &entries() const { return entries_; }
        std::size_t size() const { return entries_.size(); }

        /// Adds an entry; on a key collision the higher SLNR is kept.
        /// Returns true when the table changed.
        bool insert(LookupEntry e)
        {
            e.beams = detail::sorted(std::move(e.beams));
            e.nulls = detail::sorted(std::move(e.nulls));
            for (auto &old : entries_)
                if (old.same_key(e))
                {
                    if (e.slnr_db > old.slnr_db)
                    {
                        old = std::move(e);
                        return true;
                    }
                    return false;
                }
            entries_.push_back(std::move(e));
            return true;
        }

        /// Entry stored for exactly these beams and nulls.
        std::optional<LookupEntry> find(std::vector<double> beams, std::vector<double> nulls, std::uint64_t backend) const
        {
            beams = detail::sorted(std::move(beams));
            nulls = detail::sorted(std::move(nulls));
            for (const auto &e : entries_)
                if (e.backend == backend && e.beams == beams && e.nulls == nulls)
                    return e;
            return std::nullopt;
        }

        /// Entry covering the largest subset of the requested beams; ties go
        /// to the higher SLNR. When backend is given, other backends' entries
        /// are ignored.
        std::optional<LookupEntry> query(std::vector<double> beams, std::optional<std::uint64_t> backend = {}) const
        {
            if (beams.empty())
                throw DomainError("lookup: at least one beam direction is required");
            beams = detail::sorted(std::move(beams));
            const LookupEntry *best = nullptr;
            for (const auto &e : entries_)
            {
                if (backend && e.backend != *backend)
                    continue;
                if (e.beams.empty() || !detail::subset(e.beams, beams))
                    continue;
                if (!best || e.beams.size() > best->beams.size() ||
                    (e.beams.size() == best->beams.size() && e.slnr_db > best->slnr_db))
                    best = &e;
            }
            return best ? std::optional<LookupEntry>(*best) : std::nullopt;
        }

        std::string to_text() const
        {
            std::string out = "# wcris lookup table v1\n";
            for (const auto &e : entries_)
                out += "beams=" + detail::directions_text(e.beams) + " nulls=" + detail::directions_text(e.nulls) +
                       " slnr=" + format_double(e.slnr_db) + " backend=" + to_hex(e.backend) +
                       " w=" + join_doubles(e.w) + "\n";
            return out;
        }

        /// Parses table text. Entries made by a different backend than
        /// expected are skipped and reported through warn.
        static LookupTable from_text(std::string_view text, std::optional<std::uint64_t> expected_backend = {},
                                     const std::function<void(const std::string &)> &warn = {})
        {
            LookupTable t;
            std::size_t line_no = 0;
            for (auto line : split(text, '\n'))
            {
                ++line_no;
                line = trim(line);
                if (line.empty() || line.front() == '#')
                    continue;
                LookupEntry e;
                int seen = 0;
                for (auto field : split(line, ' '))
                {
                    if (field.empty())
                        continue;
                    const auto eq = field.find('=');
                    if (eq == std::string_view::npos)
                        throw FormatError("lookup table line " + std::to_string(line_no) + ": malformed field");
                    const auto key = field.substr(0, eq);
                    const auto value = field.substr(eq + 1);
                    if (key == "beams")
                        e.beams = detail::parse_directions(value), seen |= 1;
                    else if (key == "nulls")
                        e.nulls = detail::parse_directions(value), seen |= 2;
                    else if (key == "slnr")
                        e.slnr_db = parse_double(value), seen |= 4;
                    else if (key == "backend")
                    {
                        const auto fp = from_hex(value);
                        if (!fp)
                            throw FormatError("lookup table line " + std::to_string(line_no) + ": bad backend id");
                        e.backend = *fp;
                        seen |= 8;
                    }
                    else if (key == "w")
                        e.w = parse_double_list(value), seen |= 16;
                    else
                        throw FormatError("lookup table line " + std::to_string(line_no) + ": unknown field '" +
                                          std::string(key) + "'");
                }
                if (seen != 31)
                    throw FormatError("lookup table line " + std::to_string(line_no) + ": missing fields");
                if (e.beams.empty())
                    throw FormatError("lookup table line " + std::to_string(line_no) + ": entry without beams");
                if (expected_backend && e.backend != *expected_backend)
                {
                    if (warn)
                        warn("lookup table line " + std::to_string(line_no) + ": entry from backend " +
                             to_hex(e.backend) + " skipped (current backend " + to_hex(*expected_backend) + ")");
                    continue;
                }
                t.insert(std::move(e));
            }
            return t;
        }

        void save(const std::string &path) const
        {
            std::ofstream f(path, std::ios::binary | std::ios::trunc);
            if (!f)
                throw FormatError("cannot open '" + path + "' for writing");
            f << to_text();
            if (!f)
                throw FormatError("write failed: '" + path + "'");
        }

        static LookupTable load(const std::string &path, std::optional<std::uint64_t> expected_backend = {},
                                const std::function<void(const std::string &)> &warn = {})
        {
            std::ifstream f(path, std::ios::binary);
            if (!f)
                throw FormatError("cannot open '" + path + "'");
            return from_text(read_all(f), expected_backend, warn);
        }

    private:
        std::vector<LookupEntry> entries_;
    };

    struct AdaptiveResult
    {
        std::vector<double> w;
        double slnr_db = 0.0;
        bool cache_hit = false;
        bool cold_start = false;
        std::vector<double> initial_w; ///< starting point of the first annealing run
        std::size_t sa_runs = 0;
        std::size_t inserted = 0;
    };

    /// Dataset sample whose stored power toward any requested beam is the
    /// largest, and the beam it was found for.
    inline std::pair<std::size_t, double> strongest_sample(const dataset::Dataset &ds, const std::vector<double> &beams)
    {
        if (ds.samples.empty())
            throw DomainError("adaptive optimization: the dataset is empty");
        std::size_t best_i = 0;
        double best_beam = beams.front();
        double best_p = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ds.samples.size(); ++i)
            for (double b : beams)
            {
                const double p = interpolated_power(ds.samples[i].powers_db, b, ds.meta.grid);
                if (p > best_p)
                {
                    best_p = p;
                    best_i = i;
                    best_beam = b;
                }
            }
        return {best_i, best_beam};
    }

    /// Lookup-table driven optimization. On a cold start (no stored entry
    /// shares a beam with the request) the run starts from the dataset sample
    /// with the strongest power toward a requested beam, adds beams one at a
    /// time with an annealing run after each, and finally adds all nulls.
    /// A warm start begins from the best stored entry, including its nulls,
    /// and only adds what is missing. Every run's result is stored.
    inline AdaptiveResult adaptive_optimize(LookupTable &table, const Backend &backend, const Objective &request,
                                            const SaParams &params, const dataset::Dataset *ds, Rng &rng)
    {
        request.validate(backend.grid());
        const auto fp = backend.fingerprint();
        AdaptiveResult out;

        if (auto hit = table.find(request.beams, request.nulls, fp))
        {
            out.w = hit->w;
            out.slnr_db = hit->slnr_db;
            out.cache_hit = true;
            out.initial_w = hit->w;
            return out;
        }

        Objective c;
        c.noise_variance = request.noise_variance;
        std::vector<double> w;
        std::vector<double> pending; // beams still to add, in request order
        const auto warm = table.query(request.beams, fp);
        if (warm)
        {
            c.beams = warm->beams;
            for (double n : warm->nulls)
                if (std::find(request.beams.begin(), request.beams.end(), n) == request.beams.end())
                    c.nulls.push_back(n);
            w = warm->w;
            for (double b : request.beams)
                if (std::find(c.beams.begin(), c.beams.end(), b) == c.beams.end())
                    pending.push_back(b);
        }
        else
        {
            if (!ds)
                throw DomainError("adaptive optimization: a cold start needs the training dataset");
            if (ds->input_width() != backend.harmonics() || !(ds->meta.grid == backend.grid()))
                throw DomainError("adaptive optimization: dataset does not match the backend");
            const auto [index, first] = strongest_sample(*ds, request.beams);
            w = ds->samples[index].amplitudes;
            out.cold_start = true;
            pending.push_back(first);
            for (double b : request.beams)
                if (b != first)
                    pending.push_back(b);
        }
        out.initial_w = w;

        auto run = [&] {
            const auto r = sa_optimize(backend, c, params, w, rng);
            w = r.w;
            out.slnr_db = r.slnr_db;
            ++out.sa_runs;
            out.inserted += table.insert({c.beams, c.nulls, r.slnr_db, r.w, fp}) ? 1 : 0;
        };

        for (double b : pending)
        {
            c.beams.push_back(b);
            run();
        }
        const auto sorted_nulls = detail::sorted(request.nulls);
        if (detail::sorted(c.nulls) != sorted_nulls || out.sa_runs == 0)
        {
            c.nulls = request.nulls;
            run();
        }
        out.w = w;
        return out;
    }
}

#endif
