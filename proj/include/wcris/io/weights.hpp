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


#ifndef WCRIS_IO_WEIGHTS_HPP
#define WCRIS_IO_WEIGHTS_HPP

#include "../common/container.hpp"
#include "../common/error.hpp"

#include <json.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

// W-files are JSON: {"amplitudes": [W_1, ..., W_N]} plus optional fields
// describing where they came from. A bare JSON array is accepted as well.

namespace wcris::io
{
    struct WeightsFile
    {
        std::vector<double> amplitudes;
        std::vector<double> beams;
        std::vector<double> nulls;
        std::optional<double> slnr_db;
        std::string backend;
    };

    inline std::string encode_weights(const WeightsFile &w)
    {
        nlohmann::ordered_json j;
        j["amplitudes"] = w.amplitudes;
        if (!w.beams.empty())
            j["beams"] = w.beams;
        if (!w.nulls.empty())
            j["nulls"] = w.nulls;
        if (w.slnr_db)
            j["slnr_db"] = *w.slnr_db;
        if (!w.backend.empty())
            j["backend"] = w.backend;
        return j.dump(2) + "\n";
    }

    inline WeightsFile decode_weights(const std::string &text)
    {
        WeightsFile w;
        try
        {
            const auto j = nlohmann::json::parse(text);
            if (j.is_array())
                w.amplitudes = j.get<std::vector<double>>();
            else
            {
                if (!j.is_object() || !j.contains("amplitudes"))
                    throw FormatError("weights: expected an object with an 'amplitudes' array");
                for (const auto &[key, value] : j.items())
                {
                    if (key == "amplitudes")
                        w.amplitudes = value.get<std::vector<double>>();
                    else if (key == "beams")
                        w.beams = value.get<std::vector<double>>();
                    else if (key == "nulls")
                        w.nulls = value.get<std::vector<double>>();
                    else if (key == "slnr_db")
                        w.slnr_db = value.get<double>();
                    else if (key == "backend")
                        w.backend = value.get<std::string>();
                    else
                        throw FormatError("weights: unknown field '" + key + "'");
                }
            }
        }
        catch (const nlohmann::json::exception &e)
        {
            throw FormatError(std::string("weights: ") + e.what());
        }
        for (double x : w.amplitudes)
            if (!std::isfinite(x))
                throw FormatError("weights: amplitudes must be finite");
        if (w.amplitudes.empty())
            throw FormatError("weights: no amplitudes");
        return w;
    }

    inline void save_weights(const WeightsFile &w, const std::string &path) { write_file(path, encode_weights(w)); }
    inline WeightsFile load_weights(const std::string &path) { return decode_weights(read_file(path)); }
}

#endif
