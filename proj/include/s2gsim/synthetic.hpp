// SPDX-License-Identifier: Apache-2.0
//
// s2gsim - site-specific LEO satellite-to-ground channel simulator
// Copyright (C) 2026 the s2gsim authors
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
//
// Seeded Manhattan-grid scene generator. Blocks are laid per segment with the
// pitch fitted to the segment dimensions, so no building straddles a segment
// border and the per-segment density equals the target exactly.

#ifndef S2GSIM_SYNTHETIC_HPP
#define S2GSIM_SYNTHETIC_HPP

#include <cstdint>

#include "s2gsim/scene.hpp"

namespace s2gsim
{

struct ManhattanParams
{
    GeoRect bbox;                  // should span whole segments
    double seg_size_deg = 0.005;
    double target_mu = 0.3;        // [0, packing limit)
    double mean_height_m = 8.9;
    double height_spread_m = 0.0;  // heights uniform in mean +- spread
    double block_size_m = 40.0;    // approximate lattice pitch
    double min_street_m = 8.0;     // infeasible when the density leaves less street
    double jitter_frac = 0.0;      // [0, 1]: random in-cell offset as a fraction
                                   // of the street margin
    std::uint64_t seed = 1;

    void validate() const;
};

// Deterministic: identical params + seed give an identical Scene.
Scene generate_manhattan(const ManhattanParams &params);

} // namespace s2gsim

#endif
