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
// 3D building maps: ingestion, segment-grid partition, per-segment environment
// metrics (building density mu, area-weighted mean height, receiver mesh).
//
// Buildings are extruded prisms with flat roofs; z is measured above the
// (constant) terrain. The local planar frame is an equirectangular projection
// anchored at the scene origin: x east, y north, meters.

#ifndef S2GSIM_SCENE_HPP
#define S2GSIM_SCENE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "s2gsim/geometry.hpp"

namespace s2gsim
{

struct BuildingFootprint
{
    std::vector<Vec2> vertices; // >= 3, simple, counter-clockwise; local frame, m
    double height_m = 0.0;      // > 0, above terrain
};

struct Scene
{
    GeoPoint origin;           // geodetic anchor of the local frame
    GeoRect bbox;              // geodetic extent; positive spans
    double terrain_height_m = 0.0;
    std::vector<BuildingFootprint> buildings;

    // bbox corners through the local projection; axis-aligned by construction.
    Rect local_bbox() const;
    Rect local_rect(const GeoRect &r) const;
};

// n x n mesh of candidate receiver positions over a segment rectangle.
// Cell-center spacing; interior points (horizontally inside a footprint) stay in
// the grid as placeholders but are excluded from averaging.
struct ReceiverMesh
{
    int n = 0;
    std::vector<Vec3> points;          // n*n, row-major from the south-west corner
    std::vector<std::uint8_t> interior; // 1 = inside some footprint

    std::size_t active_count() const;
    std::vector<Vec3> active_points() const;
};

struct Segment
{
    int row = 0;
    int col = 0;
    GeoRect bbox;
    double mu = 0.0;      // building density, [0, 1]
    double h_avg_m = 0.0; // footprint-area-weighted mean height; 0 without buildings
    ReceiverMesh mesh;
};

struct SegmentGrid
{
    int rows = 0;
    int cols = 0;
    std::vector<Segment> segments; // row-major, row 0 at the south edge

    Segment &at(int row, int col) { return segments[static_cast<std::size_t>(row) * cols + col]; }
    const Segment &at(int row, int col) const
    {
        return segments[static_cast<std::size_t>(row) * cols + col];
    }
};

// Parse + validate. Throws io_error on unreadable files, validation_error with the
// offending building index on invariant violations. Clockwise footprints are
// silently reversed to counter-clockwise.
Scene load_scene(const std::string &path);
Scene parse_scene(const std::string &json_text);
std::string scene_to_json(const Scene &scene);
void save_scene(const Scene &scene, const std::string &path);
void validate_scene(const Scene &scene);

// Grid of floor(span/size) full-size segments anchored at the south-west corner;
// sliver area beyond the last full segment is dropped. mu/h/mesh are left empty.
SegmentGrid partition(const Scene &scene, double seg_size_deg);

// Area of union(footprint ∩ segment rect) / segment area, in the local frame.
double building_density(const Scene &scene, const Segment &segment);

// Clipped-footprint-area-weighted mean building height; 0 when nothing intersects.
double avg_building_height(const Scene &scene, const Segment &segment);

ReceiverMesh receiver_mesh(const Scene &scene, const Segment &segment, int n, double rx_height_m);

// Convenience: fill mu, h_avg and the mesh of every segment in the grid.
void populate_segments(const Scene &scene, SegmentGrid &grid, int mesh_n, double rx_height_m);

} // namespace s2gsim

#endif
