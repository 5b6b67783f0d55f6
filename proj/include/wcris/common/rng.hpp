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

#ifndef WCRIS_COMMON_RNG_HPP
#define WCRIS_COMMON_RNG_HPP

#include <cstdint>
#include <random>

namespace wcris
{
    using Rng = std::mt19937_64;

    /// splitmix64 finalizer; decorrelates nearby seeds.
    constexpr std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Independent generator keyed by (master seed, stream index). Used
    /// wherever a loop body must not perturb the randomness of its siblings
    /// (dataset samples, GA individuals).
    inline Rng make_stream(std::uint64_t seed, std::uint64_t stream)
    {
        return Rng(mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL)));
    }

    inline double standard_normal(Rng &rng)
    {
        std::normal_distribution<double> dist(0.0, 1.0);
        return dist(rng);
    }

    inline double uniform01(Rng &rng)
    {
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        return dist(rng);
    }

    template <class Int>
    Int uniform_int(Rng &rng, Int lo, Int hi)
    {
        std::uniform_int_distribution<Int> dist(lo, hi);
        return dist(rng);
    }
}

#endif
