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

#ifndef S2GSIM_GEOMETRY_HPP
#define S2GSIM_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace s2gsim
{

struct Vec2
{
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Vec3
{
    double x = 0.0; // east, m
    double y = 0.0; // north, m
    double z = 0.0; // up, m
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec2 xy(Vec3 a) { return {a.x, a.y}; }

// Geodetic coordinates, degrees.
struct GeoPoint
{
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

struct GeoRect
{
    double lat_min = 0.0;
    double lat_max = 0.0;
    double lon_min = 0.0;
    double lon_max = 0.0;

    double lat_span() const { return lat_max - lat_min; }
    double lon_span() const { return lon_max - lon_min; }
};

// Axis-aligned rectangle in the local planar frame, meters.
struct Rect
{
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    bool contains(Vec2 p, double tol = 0.0) const
    {
        return p.x >= x_min - tol && p.x <= x_max + tol && p.y >= y_min - tol && p.y <= y_max + tol;
    }
};

// Shoelace area; positive for counter-clockwise vertex order.
double polygon_signed_area(const std::vector<Vec2> &verts);

// Crossing-number test. Points exactly on an edge count as inside.
bool point_in_polygon(Vec2 p, const std::vector<Vec2> &verts);

// True when no two non-adjacent edges intersect and no edge degenerates to a point.
bool polygon_is_simple(const std::vector<Vec2> &verts);

Rect polygon_bbox(const std::vector<Vec2> &verts);

// Parameter intervals t (ascending, paired) where the 2D ray p + t*d, t >= 0 runs inside
// the polygon. Used for prism entry/exit tests.
std::vector<double> ray_polygon_crossings(Vec2 p, Vec2 d, const std::vector<Vec2> &verts);

struct RayCrossing
{
    double t;
    int edge; // index of the crossed edge (verts[edge] -> verts[edge + 1])
};

// Same crossings with the crossed edge recorded for each parameter.
std::vector<RayCrossing> ray_polygon_crossings_ex(Vec2 p, Vec2 d, const std::vector<Vec2> &verts);

} // namespace s2gsim

#endif
