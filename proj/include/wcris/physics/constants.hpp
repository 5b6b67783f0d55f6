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

#ifndef WCRIS_PHYSICS_CONSTANTS_HPP
#define WCRIS_PHYSICS_CONSTANTS_HPP

namespace wcris::physics
{
    inline constexpr double kSpeedOfLight = 299792458.0;       // m/s
    inline constexpr double kFreeSpaceImpedance = 376.730;     // ohm
    inline constexpr double kPowerFloor = 1e-12;               // linear, -120 dB
    inline constexpr double kDefaultBiasLow = 4.0;             // V
    inline constexpr double kDefaultBiasHigh = 15.0;           // V
}

#endif
