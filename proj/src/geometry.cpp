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

#include "s2gsim/geometry.hpp"

#include <algorithm>
#include <limits>

namespace s2gsim
{

double polygon_signed_area(const std::vector<Vec2> &verts)
{
    double a = 0.0;
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        const Vec2 &p = verts[i];
        const Vec2 &q = verts[(i + 1) % n];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

static bool point_on_segment(Vec2 p, Vec2 a, Vec2 b)
{
    if (cross(b - a, p - a) != 0.0)
        return false;
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) && p.y >= std::min(a.y, b.y) &&
           p.y <= std::max(a.y, b.y);
}

bool point_in_polygon(Vec2 p, const std::vector<Vec2> &verts)
{
    const std::size_t n = verts.size();
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i)
    {
        const Vec2 &a = verts[i];
        const Vec2 &b = verts[(i + 1) % n];
        if (point_on_segment(p, a, b))
            return true;
        if ((a.y > p.y) != (b.y > p.y))
        {
            double x_int = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < x_int)
                inside = !inside;
        }
    }
    return inside;
}

// Proper crossing of open segments (shared endpoints excluded).
static bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d)
{
    double d1 = cross(b - a, c - a);
    double d2 = cross(b - a, d - a);
    double d3 = cross(d - c, a - c);
    double d4 = cross(d - c, b - c);
    return ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0)) && d1 != 0.0 && d2 != 0.0 &&
           d3 != 0.0 && d4 != 0.0;
}

bool polygon_is_simple(const std::vector<Vec2> &verts)
{
    const std::size_t n = verts.size();
    if (n < 3)
        return false;
    for (std::size_t i = 0; i < n; ++i)
    {
        Vec2 a = verts[i];
        Vec2 b = verts[(i + 1) % n];
        if (a.x == b.x && a.y == b.y)
            return false; // degenerate edge
        // spike: consecutive edges folding back onto each other
        Vec2 c = verts[(i + 2) % n];
        if (cross(b - a, c - b) == 0.0 && dot(b - a, c - b) < 0.0)
            return false;
        for (std::size_t j = i + 1; j < n; ++j)
        {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent)
                continue;
            if (segments_cross(a, b, verts[j], verts[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

Rect polygon_bbox(const std::vector<Vec2> &verts)
{
    Rect r{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
           -std::numeric_limits<double>::max(), -std::numeric_limits<double>::max()};
    for (const Vec2 &v : verts)
    {
        r.x_min = std::min(r.x_min, v.x);
        r.y_min = std::min(r.y_min, v.y);
        r.x_max = std::max(r.x_max, v.x);
        r.y_max = std::max(r.y_max, v.y);
    }
    return r;
}

std::vector<RayCrossing> ray_polygon_crossings_ex(Vec2 p, Vec2 d, const std::vector<Vec2> &verts)
{
    // Edge endpoints exactly on the ray line are nudged to the positive side, so
    // a ray through a vertex still yields a consistent crossing parity.
    std::vector<RayCrossing> out;
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        const Vec2 &a = verts[i];
        const Vec2 &b = verts[(i + 1) % n];
        double sa = cross(d, a - p);
        double sb = cross(d, b - p);
        bool side_a = sa > 0.0 || sa == 0.0;
        bool side_b = sb > 0.0 || sb == 0.0;
        if (side_a == side_b)
            continue;
        double t = cross(a - p, b - a) / (sb - sa);
        if (t > 0.0)
            out.push_back(RayCrossing{t, static_cast<int>(i)});
    }
    std::sort(out.begin(), out.end(), [](const RayCrossing &l, const RayCrossing &r) {
        return l.t < r.t || (l.t == r.t && l.edge < r.edge);
    });
    return out;
}

std::vector<double> ray_polygon_crossings(Vec2 p, Vec2 d, const std::vector<Vec2> &verts)
{
    std::vector<double> ts;
    for (const RayCrossing &c : ray_polygon_crossings_ex(p, d, verts))
        ts.push_back(c.t);
    return ts;
}

} // namespace s2gsim
