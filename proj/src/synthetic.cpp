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

#include "s2gsim/synthetic.hpp"

#include <cmath>

#include "s2gsim/errors.hpp"
#include "s2gsim/rng.hpp"

namespace s2gsim
{

void ManhattanParams::validate() const
{
    if (!(bbox.lat_span() > 0.0) || !(bbox.lon_span() > 0.0))
        throw validation_error("generator bbox must have positive span");
    if (!(seg_size_deg > 0.0))
        throw validation_error("segment size must be positive");
    if (target_mu < 0.0 || target_mu >= 1.0)
        throw validation_error("target density must lie in [0, 1)");
    if (!(mean_height_m > 0.0))
        throw validation_error("mean height must be positive");
    if (height_spread_m < 0.0)
        throw validation_error("height spread must be non-negative");
    if (!(mean_height_m - height_spread_m > 0.0))
        throw validation_error("height spread admits non-positive heights");
    if (!(block_size_m > 0.0))
        throw validation_error("block size must be positive");
    if (min_street_m < 0.0)
        throw validation_error("street width must be non-negative");
    if (jitter_frac < 0.0 || jitter_frac > 1.0)
        throw validation_error("jitter fraction must lie in [0, 1]");
}

Scene generate_manhattan(const ManhattanParams &params)
{
    params.validate();

    Scene scene;
    scene.origin = GeoPoint{params.bbox.lat_min, params.bbox.lon_min};
    scene.bbox = params.bbox;
    scene.terrain_height_m = 0.0;

    const SegmentGrid grid = partition(scene, params.seg_size_deg);
    if (params.target_mu <= 0.0)
        return scene;

    const double side_frac = std::sqrt(params.target_mu);
    Rng rng(params.seed);

    for (const Segment &seg : grid.segments)
    {
        const Rect rect = scene.local_rect(seg.bbox);
        // Fit the lattice pitch to the segment so blocks tile it exactly and no
        // building straddles a segment border.
        const int nx = std::max(1, static_cast<int>(std::lround(rect.width() / params.block_size_m)));
        const int ny =
            std::max(1, static_cast<int>(std::lround(rect.height() / params.block_size_m)));
        const double px = rect.width() / nx;
        const double py = rect.height() / ny;
        const double bx = px * side_frac;
        const double by = py * side_frac;
        // Two adjacent buildings can each drift jitter_frac of their margin
        // toward the shared street, so the guaranteed width shrinks with it.
        const double keep = 1.0 - params.jitter_frac;
        if ((px - bx) * keep < params.min_street_m || (py - by) * keep < params.min_street_m)
            throw validation_error("target density infeasible under the street-width constraint");
        const double mx = 0.5 * (px - bx);
        const double my = 0.5 * (py - by);

        for (int j = 0; j < ny; ++j)
        {
            for (int i = 0; i < nx; ++i)
            {
                double x0 = rect.x_min + i * px + mx;
                double y0 = rect.y_min + j * py + my;
                if (params.jitter_frac > 0.0)
                {
                    x0 += rng.uniform(-params.jitter_frac * mx, params.jitter_frac * mx);
                    y0 += rng.uniform(-params.jitter_frac * my, params.jitter_frac * my);
                }
                BuildingFootprint b;
                b.vertices = {Vec2{x0, y0}, Vec2{x0 + bx, y0}, Vec2{x0 + bx, y0 + by},
                              Vec2{x0, y0 + by}};
                b.height_m =
                    params.height_spread_m > 0.0
                        ? rng.uniform(params.mean_height_m - params.height_spread_m,
                                      params.mean_height_m + params.height_spread_m)
                        : params.mean_height_m;
                scene.buildings.push_back(std::move(b));
            }
        }
    }

    validate_scene(scene);
    return scene;
}

} // namespace s2gsim
