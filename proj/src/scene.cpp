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

#include "s2gsim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <json.hpp>

#include "s2gsim/errors.hpp"
#include "s2gsim/satgeom.hpp"

namespace bg = boost::geometry;

namespace s2gsim
{

namespace
{

using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, false>; // counter-clockwise
using BgMultiPolygon = bg::model::multi_polygon<BgPolygon>;

BgPolygon to_bg_polygon(const std::vector<Vec2> &vertices)
{
    BgPolygon poly;
    for (const Vec2 &v : vertices)
        bg::append(poly.outer(), BgPoint(v.x, v.y));
    bg::correct(poly);
    return poly;
}

BgPolygon rect_polygon(const Rect &r)
{
    BgPolygon poly;
    bg::append(poly.outer(), BgPoint(r.x_min, r.y_min));
    bg::append(poly.outer(), BgPoint(r.x_max, r.y_min));
    bg::append(poly.outer(), BgPoint(r.x_max, r.y_max));
    bg::append(poly.outer(), BgPoint(r.x_min, r.y_max));
    bg::correct(poly);
    return poly;
}

struct ClipStats
{
    double union_area = 0.0;    // area of union(footprint ∩ rect)
    double weighted_area = 0.0; // sum of clip_area_i * height_i
    double total_area = 0.0;    // sum of clip_area_i (overlaps double-count)
};

ClipStats clip_stats(const Scene &scene, const Rect &rect)
{
    ClipStats stats;
    const BgPolygon clip_rect = rect_polygon(rect);
    BgMultiPolygon merged;
    for (const BuildingFootprint &b : scene.buildings)
    {
        const Rect fb = polygon_bbox(b.vertices);
        if (fb.x_max < rect.x_min || fb.x_min > rect.x_max || fb.y_max < rect.y_min ||
            fb.y_min > rect.y_max)
            continue;
        BgMultiPolygon pieces;
        bg::intersection(to_bg_polygon(b.vertices), clip_rect, pieces);
        const double a = bg::area(pieces);
        if (a <= 0.0)
            continue;
        stats.total_area += a;
        stats.weighted_area += a * b.height_m;
        BgMultiPolygon next;
        bg::union_(merged, pieces, next);
        merged = std::move(next);
    }
    stats.union_area = bg::area(merged);
    return stats;
}

double json_number(const nlohmann::json &j, const char *key, const std::string &where)
{
    if (!j.contains(key) || !j[key].is_number())
        throw validation_error(where + ": missing or non-numeric \"" + key + "\"");
    return j[key].get<double>();
}

} // namespace

Rect Scene::local_bbox() const { return local_rect(bbox); }

Rect Scene::local_rect(const GeoRect &r) const
{
    const Vec2 lo = to_local(origin, GeoPoint{r.lat_min, r.lon_min});
    const Vec2 hi = to_local(origin, GeoPoint{r.lat_max, r.lon_max});
    return Rect{lo.x, lo.y, hi.x, hi.y};
}

std::size_t ReceiverMesh::active_count() const
{
    std::size_t c = 0;
    for (std::uint8_t f : interior)
        if (!f)
            ++c;
    return c;
}

std::vector<Vec3> ReceiverMesh::active_points() const
{
    std::vector<Vec3> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        if (!interior[i])
            out.push_back(points[i]);
    return out;
}

Scene parse_scene(const std::string &json_text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw io_error(std::string("scene parse failure: ") + e.what());
    }

    Scene scene;
    if (!j.contains("origin") || !j["origin"].is_object())
        throw validation_error("scene: missing \"origin\" object");
    scene.origin.lat_deg = json_number(j["origin"], "lat_deg", "origin");
    scene.origin.lon_deg = json_number(j["origin"], "lon_deg", "origin");

    if (!j.contains("bbox") || !j["bbox"].is_object())
        throw validation_error("scene: missing \"bbox\" object");
    scene.bbox.lat_min = json_number(j["bbox"], "lat_min", "bbox");
    scene.bbox.lat_max = json_number(j["bbox"], "lat_max", "bbox");
    scene.bbox.lon_min = json_number(j["bbox"], "lon_min", "bbox");
    scene.bbox.lon_max = json_number(j["bbox"], "lon_max", "bbox");

    if (j.contains("terrain_height_m"))
        scene.terrain_height_m = json_number(j, "terrain_height_m", "scene");

    if (j.contains("buildings"))
    {
        if (!j["buildings"].is_array())
            throw validation_error("scene: \"buildings\" must be an array");
        std::size_t index = 0;
        for (const auto &jb : j["buildings"])
        {
            const std::string where = "building " + std::to_string(index);
            BuildingFootprint b;
            b.height_m = json_number(jb, "height_m", where);
            if (!jb.contains("footprint") || !jb["footprint"].is_array())
                throw validation_error(where + ": missing \"footprint\" array");
            for (const auto &jv : jb["footprint"])
            {
                if (!jv.is_array() || jv.size() != 2 || !jv[0].is_number() || !jv[1].is_number())
                    throw validation_error(where + ": footprint vertices must be [x, y] pairs");
                b.vertices.push_back(Vec2{jv[0].get<double>(), jv[1].get<double>()});
            }
            // Drop an explicit closing vertex; the polygon is implicitly closed.
            if (b.vertices.size() >= 2)
            {
                const Vec2 &first = b.vertices.front();
                const Vec2 &last = b.vertices.back();
                if (first.x == last.x && first.y == last.y)
                    b.vertices.pop_back();
            }
            if (b.vertices.size() >= 3 && polygon_signed_area(b.vertices) < 0.0)
                std::reverse(b.vertices.begin(), b.vertices.end());
            scene.buildings.push_back(std::move(b));
            ++index;
        }
    }

    validate_scene(scene);
    return scene;
}

Scene load_scene(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open scene file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw io_error("read failure on scene file: " + path);
    return parse_scene(buf.str());
}

std::string scene_to_json(const Scene &scene)
{
    nlohmann::ordered_json j;
    j["origin"] = {{"lat_deg", scene.origin.lat_deg}, {"lon_deg", scene.origin.lon_deg}};
    j["bbox"] = {{"lat_min", scene.bbox.lat_min},
                 {"lat_max", scene.bbox.lat_max},
                 {"lon_min", scene.bbox.lon_min},
                 {"lon_max", scene.bbox.lon_max}};
    j["terrain_height_m"] = scene.terrain_height_m;
    j["buildings"] = nlohmann::ordered_json::array();
    for (const BuildingFootprint &b : scene.buildings)
    {
        nlohmann::ordered_json jb;
        jb["height_m"] = b.height_m;
        nlohmann::ordered_json fp = nlohmann::ordered_json::array();
        for (const Vec2 &v : b.vertices)
            fp.push_back({v.x, v.y});
        jb["footprint"] = std::move(fp);
        j["buildings"].push_back(std::move(jb));
    }
    return j.dump(2) + "\n";
}

void save_scene(const Scene &scene, const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open output file: " + path);
    out << scene_to_json(scene);
    if (!out)
        throw io_error("write failure on " + path);
}

void validate_scene(const Scene &scene)
{
    if (!(scene.bbox.lat_span() > 0.0) || !(scene.bbox.lon_span() > 0.0))
        throw validation_error("scene bbox must have positive span");
    if (!std::isfinite(scene.origin.lat_deg) || !std::isfinite(scene.origin.lon_deg))
        throw validation_error("scene origin must be finite");
    if (std::abs(scene.origin.lat_deg) >= 90.0)
        throw validation_error("scene origin latitude must lie in (-90, 90)");

    const Rect bounds = scene.local_bbox();
    const double tol = 1e-6;
    for (std::size_t i = 0; i < scene.buildings.size(); ++i)
    {
        const std::string where = "building " + std::to_string(i);
        const BuildingFootprint &b = scene.buildings[i];
        if (b.vertices.size() < 3)
            throw validation_error(where + ": footprint needs at least 3 vertices");
        if (!(b.height_m > 0.0))
            throw validation_error(where + ": height must be positive");
        for (const Vec2 &v : b.vertices)
            if (!std::isfinite(v.x) || !std::isfinite(v.y))
                throw validation_error(where + ": non-finite vertex");
        if (!polygon_is_simple(b.vertices))
            throw validation_error(where + ": footprint must be a simple polygon");
        if (polygon_signed_area(b.vertices) <= 0.0)
            throw validation_error(where + ": footprint must be counter-clockwise");
        for (const Vec2 &v : b.vertices)
            if (!bounds.contains(v, tol))
                throw validation_error(where + ": footprint extends outside the scene bbox");
    }
}

SegmentGrid partition(const Scene &scene, double seg_size_deg)
{
    if (!(seg_size_deg > 0.0))
        throw validation_error("segment size must be positive");
    SegmentGrid grid;
    grid.rows = static_cast<int>(std::floor(scene.bbox.lat_span() / seg_size_deg + 1e-9));
    grid.cols = static_cast<int>(std::floor(scene.bbox.lon_span() / seg_size_deg + 1e-9));
    if (grid.rows < 1 || grid.cols < 1)
        throw validation_error("segment size exceeds the scene extent");
    grid.segments.reserve(static_cast<std::size_t>(grid.rows) * grid.cols);
    for (int r = 0; r < grid.rows; ++r)
    {
        for (int c = 0; c < grid.cols; ++c)
        {
            Segment s;
            s.row = r;
            s.col = c;
            s.bbox.lat_min = scene.bbox.lat_min + r * seg_size_deg;
            s.bbox.lat_max = scene.bbox.lat_min + (r + 1) * seg_size_deg;
            s.bbox.lon_min = scene.bbox.lon_min + c * seg_size_deg;
            s.bbox.lon_max = scene.bbox.lon_min + (c + 1) * seg_size_deg;
            grid.segments.push_back(std::move(s));
        }
    }
    return grid;
}

double building_density(const Scene &scene, const Segment &segment)
{
    const Rect rect = scene.local_rect(segment.bbox);
    const double area = rect.area();
    if (!(area > 0.0))
        throw validation_error("segment has zero area");
    const double mu = clip_stats(scene, rect).union_area / area;
    return std::clamp(mu, 0.0, 1.0);
}

double avg_building_height(const Scene &scene, const Segment &segment)
{
    const Rect rect = scene.local_rect(segment.bbox);
    const ClipStats stats = clip_stats(scene, rect);
    if (stats.total_area <= 0.0)
        return 0.0;
    return stats.weighted_area / stats.total_area;
}

ReceiverMesh receiver_mesh(const Scene &scene, const Segment &segment, int n, double rx_height_m)
{
    if (n < 1)
        throw validation_error("mesh resolution must be at least 1");
    if (!(rx_height_m >= 0.0))
        throw validation_error("receiver height must be non-negative");
    const Rect rect = scene.local_rect(segment.bbox);
    ReceiverMesh mesh;
    mesh.n = n;
    mesh.points.reserve(static_cast<std::size_t>(n) * n);
    mesh.interior.reserve(static_cast<std::size_t>(n) * n);
    const double dx = rect.width() / n;
    const double dy = rect.height() / n;

    std::vector<std::pair<Rect, const BuildingFootprint *>> candidates;
    for (const BuildingFootprint &b : scene.buildings)
    {
        const Rect fb = polygon_bbox(b.vertices);
        if (fb.x_max < rect.x_min || fb.x_min > rect.x_max || fb.y_max < rect.y_min ||
            fb.y_min > rect.y_max)
            continue;
        candidates.emplace_back(fb, &b);
    }

    for (int r = 0; r < n; ++r)
    {
        const double y = rect.y_min + (r + 0.5) * dy;
        for (int c = 0; c < n; ++c)
        {
            const double x = rect.x_min + (c + 0.5) * dx;
            const Vec2 p{x, y};
            std::uint8_t inside = 0;
            for (const auto &[fb, b] : candidates)
            {
                if (p.x < fb.x_min || p.x > fb.x_max || p.y < fb.y_min || p.y > fb.y_max)
                    continue;
                if (point_in_polygon(p, b->vertices))
                {
                    inside = 1;
                    break;
                }
            }
            mesh.points.push_back(Vec3{x, y, rx_height_m});
            mesh.interior.push_back(inside);
        }
    }
    return mesh;
}

void populate_segments(const Scene &scene, SegmentGrid &grid, int mesh_n, double rx_height_m)
{
    for (Segment &s : grid.segments)
    {
        const Rect rect = scene.local_rect(s.bbox);
        const double area = rect.area();
        if (!(area > 0.0))
            throw validation_error("segment has zero area");
        const ClipStats stats = clip_stats(scene, rect);
        s.mu = std::clamp(stats.union_area / area, 0.0, 1.0);
        s.h_avg_m = stats.total_area > 0.0 ? stats.weighted_area / stats.total_area : 0.0;
        s.mesh = receiver_mesh(scene, s, mesh_n, rx_height_m);
    }
}

} // namespace s2gsim
