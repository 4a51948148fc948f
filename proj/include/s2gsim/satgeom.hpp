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
// Satellite-receiver geometry: slant range, direction vectors, geodetic-to-local
// conversion on a spherical Earth.

#ifndef S2GSIM_SATGEOM_HPP
#define S2GSIM_SATGEOM_HPP

#include "s2gsim/geometry.hpp"

namespace s2gsim
{

constexpr double earth_radius_km = 6371.0;
constexpr double speed_of_light_mps = 299792458.0;

struct SatelliteGeometry
{
    double altitude_km = 550.0;
    double elevation_deg = 90.0; // (0, 90]
    double azimuth_deg = 180.0;  // clockwise from north; free parameter, recorded in outputs

    void validate() const; // throws validation_error
};

// Straight-line satellite-receiver distance in km for a spherical Earth.
// d = sqrt(Re^2 sin^2(el) + 2 Re a + a^2) - Re sin(el)
double slant_range_km(double altitude_km, double elevation_deg);

// Unit vector from receiver toward the satellite in the local east/north/up frame.
Vec3 sat_direction(double elevation_deg, double azimuth_deg);

// Equirectangular projection: meters east/north of `origin`. Valid for sub-degree offsets.
Vec2 to_local(GeoPoint origin, GeoPoint p);

// Wavelength in meters for a carrier in GHz.
inline double wavelength_m(double f_c_ghz) { return speed_of_light_mps / (f_c_ghz * 1e9); }

} // namespace s2gsim

#endif
