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

#include "s2gsim/satgeom.hpp"

#include <cmath>

#include "s2gsim/errors.hpp"

namespace s2gsim
{

static constexpr double deg2rad = M_PI / 180.0;

void SatelliteGeometry::validate() const
{
    if (!(altitude_km > 0.0))
        throw validation_error("satellite altitude must be positive");
    if (!(elevation_deg > 0.0 && elevation_deg <= 90.0))
        throw validation_error("elevation angle must be in (0, 90] degrees");
    if (!(azimuth_deg >= 0.0 && azimuth_deg < 360.0))
        throw validation_error("azimuth must be in [0, 360) degrees");
}

double slant_range_km(double altitude_km, double elevation_deg)
{
    if (!(altitude_km > 0.0))
        throw validation_error("altitude must be positive");
    if (elevation_deg < 0.0 || elevation_deg > 90.0)
        throw validation_error("elevation must be in [0, 90] degrees");
    const double re = earth_radius_km;
    const double a = altitude_km;
    const double s = std::sin(elevation_deg * deg2rad);
    return std::sqrt(re * re * s * s + 2.0 * re * a + a * a) - re * s;
}

Vec3 sat_direction(double elevation_deg, double azimuth_deg)
{
    const double th = elevation_deg * deg2rad;
    const double az = azimuth_deg * deg2rad;
    return {std::cos(th) * std::sin(az), std::cos(th) * std::cos(az), std::sin(th)};
}

Vec2 to_local(GeoPoint origin, GeoPoint p)
{
    const double re_m = earth_radius_km * 1000.0;
    const double east =
        (p.lon_deg - origin.lon_deg) * deg2rad * re_m * std::cos(origin.lat_deg * deg2rad);
    const double north = (p.lat_deg - origin.lat_deg) * deg2rad * re_m;
    return {east, north};
}

} // namespace s2gsim
