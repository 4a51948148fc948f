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
// Deterministic site-specific ray tracing against extruded building prisms.
//
// The satellite is far enough away that illumination is a plane wave along a
// fixed direction per segment. Paths are traced from the receiver: the direct
// path, image-method specular wall reflections, and a single rooftop knife-edge
// diffraction path when the direct path is blocked. Each path terminates on a
// reference plane normal to the satellite direction above the scene; the
// constant plane-to-satellite remainder is folded into the stored length so
// that the direct path's length equals the nominal slant range.

#ifndef S2GSIM_RAYTRACER_HPP
#define S2GSIM_RAYTRACER_HPP

#include <iosfwd>
#include <limits>
#include <vector>

#include "s2gsim/geometry.hpp"
#include "s2gsim/scene.hpp"

namespace s2gsim
{

enum class InteractionKind
{
    reflection,
    diffraction
};

struct Interaction
{
    InteractionKind kind;
    int surface_id; // index into PreparedScene::walls (roof edge shares its wall's id)
};

struct RayPath
{
    std::vector<Vec3> vertices; // receiver first, exit point on the reference plane last
    std::vector<Interaction> interactions;
    double length_m = 0.0; // full propagation length: nominal slant range + path excess
    double loss_db = 0.0;  // free-space loss over length_m plus interaction losses
    double phase_rad = 0.0; // (2 pi length / lambda) mod 2 pi
};

enum class ReflectionModel
{
    fresnel, // perpendicular-polarization Fresnel coefficient
    fixed    // constant dB per bounce, for reproducible unit tests
};

struct TracerConfig
{
    int max_reflections = 2;
    bool enable_diffraction = true;
    ReflectionModel reflection_model = ReflectionModel::fresnel;
    double fixed_reflection_loss_db = 8.0;
    double relative_permittivity = 5.31; // concrete
    // Image-method search radius; walls farther than this from the receiver are
    // not considered as reflectors. Unlimited by default.
    double max_image_distance_m = std::numeric_limits<double>::infinity();

    void validate() const;
};

// Immutable geometric index of a Scene: prisms for occlusion tests plus a flat
// wall list for the image method. Safe for concurrent queries.
class PreparedScene
{
public:
    struct Prism
    {
        std::vector<Vec2> footprint; // CCW
        double height_m;
        Rect bbox;
    };

    struct Wall
    {
        Vec2 p0, p1;     // footprint edge, CCW order
        Vec2 normal;     // unit outward (horizontal)
        double height_m; // top of the wall
        int building;
        int edge;
    };

    PreparedScene() = default; // empty scene
    explicit PreparedScene(const Scene &scene);

    const std::vector<Prism> &prisms() const { return prisms_; }
    const std::vector<Wall> &walls() const { return walls_; }

    // True iff the upward ray from rx along dir (unit, dir.z > 0) hits any prism.
    bool blocked(Vec3 rx, Vec3 dir) const;

    // True iff the open segment (a, b) passes through any prism interior.
    bool segment_blocked(Vec3 a, Vec3 b) const;

    std::vector<RayPath> trace(Vec3 rx, Vec3 dir, const TracerConfig &cfg, double f_c_ghz,
                               double slant_range_m) const;

private:
    std::vector<Prism> prisms_;
    std::vector<Wall> walls_;
    std::vector<int> wall_base_; // first wall id of each prism
    double max_height_m_ = 0.0;
    Rect extent_{};

    struct DiffractionEdge; // first blocking rooftop crossing along the ray
    bool find_blocking_edge(Vec3 rx, Vec3 dir, DiffractionEdge &out) const;
};

// Convenience wrappers matching the per-call API.
bool los_blocked(const Scene &scene, Vec3 rx, Vec3 dir);
std::vector<RayPath> trace(const Scene &scene, Vec3 rx, Vec3 dir, const TracerConfig &cfg,
                           double f_c_ghz, double slant_range_m);

// Single knife-edge diffraction loss (dB) for clearance parameter v:
// 0 for v <= -0.78, else 6.9 + 20 log10(sqrt((v-0.1)^2 + 1) + v - 0.1).
double knife_edge_loss_db(double v);

// v = h_e sqrt(2 (d1 + d2) / (lambda d1 d2))
double knife_edge_parameter(double clearance_m, double d1_m, double d2_m, double lambda_m);

// |reflection coefficient| -> dB loss, perpendicular polarization, incidence angle
// measured from the surface normal.
double fresnel_reflection_loss_db(double cos_incidence, double relative_permittivity);

// Coherent phasor sum over the traced paths: amplitudes 10^(-loss/20), total
// loss -20 log10 |sum|, clamped at deep_fade_cap. Returns total - l_fs_ref_db.
// An empty ray list returns +inf (fully blocked sentinel).
double aggregate_loss_db(const std::vector<RayPath> &rays, double l_fs_ref_db,
                         double deep_fade_cap_db);

// Debug dump, one line per ray: receiver index, interaction kinds (R/D, '-' when
// none), length m, loss dB, phase rad.
void dump_rays(std::ostream &os, long receiver_index, const std::vector<RayPath> &rays);

} // namespace s2gsim

#endif
