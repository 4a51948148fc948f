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

#include "s2gsim/raytracer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>

#include "s2gsim/errors.hpp"
#include "s2gsim/format.hpp"
#include "s2gsim/propagation.hpp"
#include "s2gsim/satgeom.hpp"

namespace s2gsim
{

namespace
{

constexpr double eps_z = 1e-6;   // grazing tolerance for roof-level hits, m
constexpr double eps_t = 1e-9;   // parameter shrink at leg endpoints
constexpr double eps_par = 1e-12; // "ray parallel to plane" threshold

// Mirror across the vertical plane through a wall. Normals are horizontal, so z
// is preserved.
Vec3 mirror_point(Vec3 p, const PreparedScene::Wall &w)
{
    const double d = dot(xy(p) - w.p0, w.normal);
    return p - (2.0 * d) * Vec3{w.normal.x, w.normal.y, 0.0};
}

Vec3 mirror_dir(Vec3 v, const PreparedScene::Wall &w)
{
    const double d = dot(Vec2{v.x, v.y}, w.normal);
    return v - (2.0 * d) * Vec3{w.normal.x, w.normal.y, 0.0};
}

// 2D point-to-segment distance, for the image search radius cut.
double segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double u = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    return norm(p - (a + u * ab));
}

// Conservative 2D slab test for ray q + t*d against a rect, restricted to t in
// [0, t_cap]. Returns false when the ray provably misses.
bool ray_hits_rect(Vec2 q, Vec2 d, const Rect &r, double t_cap)
{
    double t0 = 0.0;
    double t1 = t_cap;
    const double qs[2] = {q.x, q.y};
    const double ds[2] = {d.x, d.y};
    const double lo[2] = {r.x_min, r.y_min};
    const double hi[2] = {r.x_max, r.y_max};
    for (int axis = 0; axis < 2; ++axis)
    {
        if (std::abs(ds[axis]) < eps_par)
        {
            if (qs[axis] < lo[axis] || qs[axis] > hi[axis])
                return false;
            continue;
        }
        double ta = (lo[axis] - qs[axis]) / ds[axis];
        double tb = (hi[axis] - qs[axis]) / ds[axis];
        if (ta > tb)
            std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1)
            return false;
    }
    return true;
}

} // namespace

void TracerConfig::validate() const
{
    if (max_reflections < 0 || max_reflections > 6)
        throw validation_error("max_reflections must lie in [0, 6]");
    if (fixed_reflection_loss_db < 0.0)
        throw validation_error("fixed reflection loss must be non-negative");
    if (!(relative_permittivity > 1.0))
        throw validation_error("relative permittivity must exceed 1");
    if (!(max_image_distance_m > 0.0))
        throw validation_error("image search radius must be positive");
}

PreparedScene::PreparedScene(const Scene &scene)
{
    validate_scene(scene);
    prisms_.reserve(scene.buildings.size());
    int building_index = 0;
    for (const BuildingFootprint &b : scene.buildings)
    {
        Prism prism;
        prism.footprint = b.vertices;
        prism.height_m = b.height_m;
        prism.bbox = polygon_bbox(b.vertices);
        wall_base_.push_back(static_cast<int>(walls_.size()));
        const std::size_t n = b.vertices.size();
        for (std::size_t i = 0; i < n; ++i)
        {
            Wall w;
            w.p0 = b.vertices[i];
            w.p1 = b.vertices[(i + 1) % n];
            const Vec2 e = w.p1 - w.p0;
            const double len = norm(e);
            w.normal = Vec2{e.y / len, -e.x / len}; // right of travel = outside for CCW
            w.height_m = b.height_m;
            w.building = building_index;
            w.edge = static_cast<int>(i);
            walls_.push_back(w);
        }
        max_height_m_ = std::max(max_height_m_, prism.height_m);
        if (prisms_.empty())
            extent_ = prism.bbox;
        else
        {
            extent_.x_min = std::min(extent_.x_min, prism.bbox.x_min);
            extent_.y_min = std::min(extent_.y_min, prism.bbox.y_min);
            extent_.x_max = std::max(extent_.x_max, prism.bbox.x_max);
            extent_.y_max = std::max(extent_.y_max, prism.bbox.y_max);
        }
        prisms_.push_back(std::move(prism));
        ++building_index;
    }
}

bool PreparedScene::blocked(Vec3 rx, Vec3 dir) const
{
    if (!(dir.z > 0.0))
        throw validation_error("line-of-sight test needs an upward direction");
    const Vec2 q = xy(rx);
    const Vec2 d2 = xy(dir);
    const bool vertical = norm(d2) < eps_par;
    for (const Prism &prism : prisms_)
    {
        const double h = prism.height_m;
        if (h - eps_z <= rx.z)
            continue;
        const bool inside = prism.bbox.contains(q) && point_in_polygon(q, prism.footprint);
        if (inside && rx.z < h - eps_z)
            return true;
        if (vertical)
            continue;
        const double t_cap = (h - rx.z) / dir.z; // entries past this sit above the roof
        if (!ray_hits_rect(q, d2, prism.bbox, t_cap))
            continue;
        const std::vector<double> ts = ray_polygon_crossings(q, d2, prism.footprint);
        // When starting inside, the first crossing is an exit. Only the first
        // entry matters: z grows along the ray, so later entries sit higher.
        const std::size_t first_entry = inside ? 1 : 0;
        if (first_entry < ts.size() && rx.z + ts[first_entry] * dir.z < h - eps_z)
            return true;
    }
    return false;
}

bool PreparedScene::segment_blocked(Vec3 a, Vec3 b) const
{
    const Vec3 d3 = b - a;
    const Vec2 q = xy(a);
    const Vec2 d2 = xy(d3);
    const double z_lo = std::min(a.z, b.z);
    const Rect seg_bbox{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x),
                        std::max(a.y, b.y)};
    for (const Prism &prism : prisms_)
    {
        const double h = prism.height_m;
        if (h - eps_z <= z_lo)
            continue;
        if (prism.bbox.x_max < seg_bbox.x_min || prism.bbox.x_min > seg_bbox.x_max ||
            prism.bbox.y_max < seg_bbox.y_min || prism.bbox.y_min > seg_bbox.y_max)
            continue;

        std::vector<double> bounds;
        bounds.push_back(eps_t);
        for (double t : ray_polygon_crossings(q, d2, prism.footprint))
            if (t > eps_t && t < 1.0 - eps_t)
                bounds.push_back(t);
        bounds.push_back(1.0 - eps_t);

        bool inside = point_in_polygon(q + eps_t * d2, prism.footprint);
        for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
        {
            if (inside)
            {
                const double z_u = a.z + bounds[i] * d3.z;
                const double z_v = a.z + bounds[i + 1] * d3.z;
                if (std::min(z_u, z_v) < h - eps_z)
                    return true;
            }
            inside = !inside;
        }
    }
    return false;
}

struct PreparedScene::DiffractionEdge
{
    double t = 0.0;      // ray parameter of the entry crossing
    double height_m = 0.0;
    int wall_id = -1;
};

bool PreparedScene::find_blocking_edge(Vec3 rx, Vec3 dir, DiffractionEdge &out) const
{
    const Vec2 q = xy(rx);
    const Vec2 d2 = xy(dir);
    if (norm(d2) < eps_par)
        return false;
    bool found = false;
    for (std::size_t pi = 0; pi < prisms_.size(); ++pi)
    {
        const Prism &prism = prisms_[pi];
        const double h = prism.height_m;
        if (h - eps_z <= rx.z)
            continue;
        const double t_cap = (h - rx.z) / dir.z;
        if (!ray_hits_rect(q, d2, prism.bbox, t_cap))
            continue;
        const bool inside = prism.bbox.contains(q) && point_in_polygon(q, prism.footprint);
        if (inside)
            continue; // no geometric edge for a start under this roof
        const std::vector<RayCrossing> cs = ray_polygon_crossings_ex(q, d2, prism.footprint);
        if (cs.empty())
            continue;
        const double z_entry = rx.z + cs[0].t * dir.z;
        if (z_entry < h - eps_z && (!found || cs[0].t < out.t))
        {
            out.t = cs[0].t;
            out.height_m = h;
            out.wall_id = wall_base_[pi] + cs[0].edge;
            found = true;
        }
    }
    return found;
}

std::vector<RayPath> PreparedScene::trace(Vec3 rx, Vec3 dir, const TracerConfig &cfg,
                                          double f_c_ghz, double slant_range_m) const
{
    if (!(dir.z > 0.0))
        throw validation_error("satellite direction must point upward");
    if (!(slant_range_m > 0.0))
        throw validation_error("slant range must be positive");
    if (!(f_c_ghz > 0.0))
        throw validation_error("frequency must be positive");
    const double dn = norm(dir);
    if (std::abs(dn - 1.0) > 1e-9)
        dir = (1.0 / dn) * dir;

    const double lambda = wavelength_m(f_c_ghz);

    // Reference plane normal to dir, above every roof line and the receiver.
    double plane_offset = dot(rx, dir);
    if (!prisms_.empty())
    {
        for (const Vec2 &cx : {Vec2{extent_.x_min, extent_.y_min}, Vec2{extent_.x_max, extent_.y_min},
                               Vec2{extent_.x_min, extent_.y_max}, Vec2{extent_.x_max, extent_.y_max}})
            plane_offset = std::max(plane_offset, dot(Vec3{cx.x, cx.y, max_height_m_}, dir));
    }
    plane_offset += 10.0;

    auto exit_point = [&](Vec3 from) {
        const double s = plane_offset - dot(from, dir);
        return from + s * dir;
    };
    auto finish_path = [&](RayPath &p, Vec3 last, double pre_exit_length, double interaction_db) {
        const double excess = std::max(0.0, pre_exit_length - dot(last - rx, dir));
        p.length_m = slant_range_m + excess;
        p.loss_db = free_space_loss_db(f_c_ghz, p.length_m / 1000.0) + interaction_db;
        p.phase_rad = std::fmod(2.0 * std::numbers::pi * p.length_m / lambda,
                                2.0 * std::numbers::pi);
        p.vertices.push_back(exit_point(last));
    };

    std::vector<RayPath> paths;

    const bool los_clear = !blocked(rx, dir);
    if (los_clear)
    {
        RayPath p;
        p.vertices = {rx};
        p.length_m = slant_range_m;
        p.loss_db = free_space_loss_db(f_c_ghz, slant_range_m / 1000.0);
        p.phase_rad =
            std::fmod(2.0 * std::numbers::pi * p.length_m / lambda, 2.0 * std::numbers::pi);
        p.vertices.push_back(exit_point(rx));
        paths.push_back(std::move(p));
    }
    else if (cfg.enable_diffraction)
    {
        DiffractionEdge edge;
        if (find_blocking_edge(rx, dir, edge))
        {
            const Vec2 e2 = xy(rx) + edge.t * xy(dir);
            const Vec3 e{e2.x, e2.y, edge.height_m};
            const double d1 = norm(e - rx);
            const double d2 = slant_range_m - d1;
            if (d1 > eps_t && d2 > eps_t)
            {
                const double clearance = edge.height_m - (rx.z + edge.t * dir.z);
                const double v = knife_edge_parameter(clearance, d1, d2, lambda);
                RayPath p;
                p.vertices = {rx, e};
                p.interactions.push_back(Interaction{InteractionKind::diffraction, edge.wall_id});
                finish_path(p, e, d1, knife_edge_loss_db(v));
                paths.push_back(std::move(p));
            }
        }
    }

    // Image-method specular reflections, enumerated over wall sequences in
    // first-hit order. The receiver image is mirrored forward; reflection points
    // are recovered backward from the sky leg.
    if (cfg.max_reflections > 0 && !walls_.empty())
    {
        std::vector<int> candidates;
        candidates.reserve(walls_.size());
        for (std::size_t wi = 0; wi < walls_.size(); ++wi)
        {
            if (std::isfinite(cfg.max_image_distance_m) &&
                segment_distance(xy(rx), walls_[wi].p0, walls_[wi].p1) > cfg.max_image_distance_m)
                continue;
            candidates.push_back(static_cast<int>(wi));
        }

        std::vector<int> seq;
        auto try_sequence = [&](Vec3 image) {
            const int k = static_cast<int>(seq.size());
            const Wall &last = walls_[seq.back()];
            const double face = dot(xy(dir), last.normal);
            if (!(face > 0.0))
                return;

            // Travel direction of each leg, recovered back from the exit leg.
            std::vector<Vec3> leg_dir(static_cast<std::size_t>(k) + 1);
            leg_dir[k] = dir;
            for (int j = k - 1; j >= 0; --j)
            {
                leg_dir[j] = mirror_dir(leg_dir[j + 1], walls_[seq[j]]);
                if (!(dot(Vec2{leg_dir[j + 1].x, leg_dir[j + 1].y}, walls_[seq[j]].normal) > 0.0))
                    return; // leg must leave through the outer face
            }

            auto on_wall = [&](Vec3 p, const Wall &w) {
                const Vec2 e = w.p1 - w.p0;
                const double len = norm(e);
                const double tau = dot(xy(p) - w.p0, Vec2{e.x / len, e.y / len});
                return tau >= -1e-9 && tau <= len + 1e-9 && p.z >= -1e-9 &&
                       p.z <= w.height_m + 1e-9;
            };
            auto plane_hit = [&](Vec3 from, Vec3 along, const Wall &w, double &s) {
                const double denom = dot(Vec2{along.x, along.y}, w.normal);
                if (std::abs(denom) < eps_par)
                    return false;
                s = (dot(w.p0, w.normal) - dot(xy(from), w.normal)) / denom;
                return s > eps_t;
            };

            std::vector<Vec3> pts(static_cast<std::size_t>(k));
            double s_last = 0.0;
            if (!plane_hit(image, dir, walls_[seq.back()], s_last))
                return;
            pts[k - 1] = image + s_last * dir;
            if (!on_wall(pts[k - 1], walls_[seq.back()]))
                return;
            for (int j = k - 2; j >= 0; --j)
            {
                double u = 0.0;
                if (!plane_hit(pts[j + 1], -1.0 * leg_dir[j + 1], walls_[seq[j]], u))
                    return;
                pts[j] = pts[j + 1] - u * leg_dir[j + 1];
                if (!on_wall(pts[j], walls_[seq[j]]))
                    return;
            }

            Vec3 prev = rx;
            double pre_exit_length = 0.0;
            for (int j = 0; j < k; ++j)
            {
                const double leg = norm(pts[j] - prev);
                if (leg <= eps_t)
                    return;
                if (segment_blocked(prev, pts[j]))
                    return;
                pre_exit_length += leg;
                prev = pts[j];
            }
            if (blocked(prev + 1e-7 * dir, dir))
                return;

            double interaction_db = 0.0;
            RayPath p;
            p.vertices.reserve(static_cast<std::size_t>(k) + 2);
            p.vertices.push_back(rx);
            for (int j = 0; j < k; ++j)
            {
                const Wall &w = walls_[seq[j]];
                const double cos_inc = std::abs(dot(Vec2{leg_dir[j + 1].x, leg_dir[j + 1].y}, w.normal));
                interaction_db += cfg.reflection_model == ReflectionModel::fresnel
                                      ? fresnel_reflection_loss_db(cos_inc, cfg.relative_permittivity)
                                      : cfg.fixed_reflection_loss_db;
                p.vertices.push_back(pts[j]);
                p.interactions.push_back(Interaction{InteractionKind::reflection, seq[j]});
            }
            finish_path(p, pts[k - 1], pre_exit_length, interaction_db);
            paths.push_back(std::move(p));
        };

        const std::function<void(Vec3, int)> dfs = [&](Vec3 image, int depth) {
            for (int wi : candidates)
            {
                if (!seq.empty() && seq.back() == wi)
                    continue;
                const Wall &w = walls_[wi];
                if (seq.empty() && !(dot(xy(rx) - w.p0, w.normal) > 0.0))
                    continue; // receiver must see the outer face first
                seq.push_back(wi);
                const Vec3 next_image = mirror_point(image, w);
                try_sequence(next_image);
                if (depth + 1 < cfg.max_reflections)
                    dfs(next_image, depth + 1);
                seq.pop_back();
            }
        };
        dfs(rx, 0);
    }

    std::sort(paths.begin(), paths.end(), [](const RayPath &a, const RayPath &b) {
        if (a.length_m != b.length_m)
            return a.length_m < b.length_m;
        if (a.interactions.size() != b.interactions.size())
            return a.interactions.size() < b.interactions.size();
        for (std::size_t i = 0; i < a.interactions.size(); ++i)
        {
            if (a.interactions[i].kind != b.interactions[i].kind)
                return a.interactions[i].kind < b.interactions[i].kind;
            if (a.interactions[i].surface_id != b.interactions[i].surface_id)
                return a.interactions[i].surface_id < b.interactions[i].surface_id;
        }
        return false;
    });
    return paths;
}

bool los_blocked(const Scene &scene, Vec3 rx, Vec3 dir)
{
    return PreparedScene(scene).blocked(rx, dir);
}

std::vector<RayPath> trace(const Scene &scene, Vec3 rx, Vec3 dir, const TracerConfig &cfg,
                           double f_c_ghz, double slant_range_m)
{
    return PreparedScene(scene).trace(rx, dir, cfg, f_c_ghz, slant_range_m);
}

double knife_edge_loss_db(double v)
{
    if (v <= -0.78)
        return 0.0;
    const double u = v - 0.1;
    return 6.9 + 20.0 * std::log10(std::sqrt(u * u + 1.0) + u);
}

double knife_edge_parameter(double clearance_m, double d1_m, double d2_m, double lambda_m)
{
    if (!(d1_m > 0.0) || !(d2_m > 0.0))
        throw validation_error("knife-edge sub-path distances must be positive");
    if (!(lambda_m > 0.0))
        throw validation_error("wavelength must be positive");
    return clearance_m * std::sqrt(2.0 * (d1_m + d2_m) / (lambda_m * d1_m * d2_m));
}

double fresnel_reflection_loss_db(double cos_incidence, double relative_permittivity)
{
    if (cos_incidence < 0.0 || cos_incidence > 1.0 + 1e-12)
        throw validation_error("cos of the incidence angle must lie in [0, 1]");
    cos_incidence = std::min(cos_incidence, 1.0);
    const double sin2 = 1.0 - cos_incidence * cos_incidence;
    const double root = std::sqrt(relative_permittivity - sin2);
    const double gamma = std::abs((cos_incidence - root) / (cos_incidence + root));
    if (gamma <= 0.0)
        return std::numeric_limits<double>::infinity();
    return -20.0 * std::log10(gamma);
}

double aggregate_loss_db(const std::vector<RayPath> &rays, double l_fs_ref_db,
                         double deep_fade_cap_db)
{
    if (rays.empty())
        return std::numeric_limits<double>::infinity();
    std::complex<double> field{0.0, 0.0};
    for (const RayPath &r : rays)
    {
        const double amp = std::pow(10.0, -r.loss_db / 20.0);
        field += amp * std::exp(std::complex<double>(0.0, -r.phase_rad));
    }
    const double mag = std::abs(field);
    double total = mag > 0.0 ? -20.0 * std::log10(mag) : std::numeric_limits<double>::infinity();
    total = std::min(total, deep_fade_cap_db);
    return total - l_fs_ref_db;
}

void dump_rays(std::ostream &os, long receiver_index, const std::vector<RayPath> &rays)
{
    for (const RayPath &r : rays)
    {
        std::string kinds;
        for (const Interaction &i : r.interactions)
            kinds += i.kind == InteractionKind::reflection ? 'R' : 'D';
        if (kinds.empty())
            kinds = "-";
        os << receiver_index << '\t' << kinds << '\t' << format_g6(r.length_m) << '\t'
           << format_g6(r.loss_db) << '\t' << format_g6(r.phase_rad) << '\n';
    }
}

} // namespace s2gsim
