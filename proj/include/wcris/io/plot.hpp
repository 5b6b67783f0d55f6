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


#ifndef WCRIS_IO_PLOT_HPP
#define WCRIS_IO_PLOT_HPP

#include "../common/error.hpp"
#include "../common/text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

namespace wcris::io
{
    /// "angle_deg,power_db" then one row per angle.
    inline void write_pattern_csv(std::ostream &out, const std::vector<double> &angles, const std::vector<double> &powers_db)
    {
        require(angles.size() == powers_db.size(), "csv: angle and power counts differ");
        out << "angle_deg,power_db\n";
        for (std::size_t i = 0; i < angles.size(); ++i)
            out << format_double(angles[i]) << ',' << format_double(powers_db[i]) << '\n';
    }

    namespace detail
    {
        inline std::string fixed(double v, int digits = 2)
        {
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
            std::string s(buf, res.ptr);
            return s == "-0.00" ? "0.00" : s;
        }

        inline std::string escape(const std::string &s)
        {
            std::string out;
            for (char c : s)
            {
                if (c == '<')
                    out += "&lt;";
                else if (c == '>')
                    out += "&gt;";
                else if (c == '&')
                    out += "&amp;";
                else
                    out += c;
            }
            return out;
        }
    }

    struct PatternPlot
    {
        std::vector<double> angles;
        std::vector<double> powers_db;
        std::vector<double> beams;
        std::vector<double> nulls;
        std::string title;
        int width = 720;
        int height = 420;
    };

    /// Cartesian angle/dB chart with dashed markers at beam (green) and null
    /// (red) directions.
    inline void write_pattern_svg(std::ostream &out, const PatternPlot &p)
    {
        require(p.angles.size() == p.powers_db.size() && p.angles.size() >= 2, "svg: need at least two points");
        const double left = 60, right = 20, top = 36, bottom = 46;
        const double w = p.width - left - right;
        const double h = p.height - top - bottom;
        const double x0 = p.angles.front(), x1 = p.angles.back();
        const auto [lo_it, hi_it] = std::minmax_element(p.powers_db.begin(), p.powers_db.end());
        double y0 = std::floor(*lo_it / 10.0) * 10.0;
        double y1 = std::ceil(*hi_it / 10.0) * 10.0;
        if (y1 - y0 < 10.0)
            y1 = y0 + 10.0;
        auto px = [&](double a) { return left + (a - x0) / (x1 - x0) * w; };
        auto py = [&](double v) { return top + (y1 - v) / (y1 - y0) * h; };
        using detail::fixed;

        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << p.width << "\" height=\"" << p.height
            << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        if (!p.title.empty())
            out << "<text x=\"" << fixed(left + w / 2) << "\" y=\"22\" text-anchor=\"middle\">"
                << detail::escape(p.title) << "</text>\n";

        const double ystep = (y1 - y0) > 60 ? 20.0 : 10.0;
        for (double v = y0; v <= y1 + 1e-9; v += ystep)
            out << "<line x1=\"" << fixed(left) << "\" x2=\"" << fixed(left + w) << "\" y1=\"" << fixed(py(v))
                << "\" y2=\"" << fixed(py(v)) << "\" stroke=\"#ddd\"/>\n"
                << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(py(v) + 4)
                << "\" text-anchor=\"end\">" << fixed(v, 0) << "</text>\n";
        const double xstep = (x1 - x0) > 60 ? 20.0 : 10.0;
        for (double a = std::ceil(x0 / xstep) * xstep; a <= x1 + 1e-9; a += xstep)
            out << "<line x1=\"" << fixed(px(a)) << "\" x2=\"" << fixed(px(a)) << "\" y1=\"" << fixed(top)
                << "\" y2=\"" << fixed(top + h) << "\" stroke=\"#ddd\"/>\n"
                << "<text x=\"" << fixed(px(a)) << "\" y=\"" << fixed(top + h + 16)
                << "\" text-anchor=\"middle\">" << fixed(a, 0) << "</text>\n";
        out << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(w) << "\" height=\""
            << fixed(h) << "\" fill=\"none\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fixed(left + w / 2) << "\" y=\"" << fixed(p.height - 8.0)
            << "\" text-anchor=\"middle\">angle [deg]</text>\n";
        out << "<text transform=\"translate(16," << fixed(top + h / 2)
            << ") rotate(-90)\" text-anchor=\"middle\">power [dB]</text>\n";

        auto marker = [&](double a, const char *colour, const char *cls) {
            if (a < x0 || a > x1)
                return;
            out << "<line class=\"" << cls << "\" x1=\"" << fixed(px(a)) << "\" x2=\"" << fixed(px(a)) << "\" y1=\""
                << fixed(top) << "\" y2=\"" << fixed(top + h) << "\" stroke=\"" << colour
                << "\" stroke-dasharray=\"5,4\"/>\n";
        };
        for (double a : p.beams)
            marker(a, "#2a9d3a", "beam");
        for (double a : p.nulls)
            marker(a, "#d62828", "null");

        out << "<polyline class=\"pattern\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < p.angles.size(); ++i)
            out << (i ? " " : "") << fixed(px(p.angles[i])) << ',' << fixed(py(p.powers_db[i]));
        out << "\"/>\n</svg>\n";
    }
}

#endif
