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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "s2gsim/errors.hpp"
#include "s2gsim/satgeom.hpp"

using namespace s2gsim;

TEST_CASE("slant range at zenith equals the altitude exactly")
{
    CHECK(slant_range_km(550.0, 90.0) == 550.0);
    CHECK(slant_range_km(1200.0, 90.0) == 1200.0);
}

TEST_CASE("slant range reference values")
{
    CHECK(slant_range_km(550.0, 40.0) == doctest::Approx(812.0663739852343).epsilon(1e-12));
    CHECK(slant_range_km(550.0, 20.0) == doctest::Approx(1293.5515499604817).epsilon(1e-12));
    CHECK(slant_range_km(550.0, 0.0) == doctest::Approx(2703.812123650606).epsilon(1e-12));
}

TEST_CASE("slant range agrees with the bisection oracle")
{
    for (double elev = 5.0; elev <= 90.0; elev += 5.0)
    {
        const double got = slant_range_km(550.0, elev);
        const double want = oracles::slant_range_bisect_km(550.0, elev);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("slant range decreases strictly with elevation")
{
    double prev = slant_range_km(550.0, 1.0);
    for (int e = 2; e <= 90; ++e)
    {
        const double cur = slant_range_km(550.0, e);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("satellite direction vector")
{
    const Vec3 zenith = sat_direction(90.0, 0.0);
    CHECK(zenith.z == doctest::Approx(1.0));
    CHECK(std::abs(zenith.x) < 1e-12);
    CHECK(std::abs(zenith.y) < 1e-12);

    const Vec3 east = sat_direction(40.0, 90.0);
    CHECK(east.x == doctest::Approx(0.766044443118978).epsilon(1e-12));
    CHECK(std::abs(east.y) < 1e-12);
    CHECK(east.z == doctest::Approx(0.6427876096865393).epsilon(1e-12));

    const Vec3 north = sat_direction(10.0, 0.0);
    CHECK(north.y > 0.9);
    const Vec3 south = sat_direction(10.0, 180.0);
    CHECK(south.y < -0.9);

    CHECK(norm(sat_direction(33.0, 123.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("geometry validation")
{
    SatelliteGeometry ok;
    CHECK_NOTHROW(ok.validate());
    SatelliteGeometry bad = ok;
    bad.elevation_deg = 0.0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad = ok;
    bad.elevation_deg = 90.5;
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad = ok;
    bad.azimuth_deg = 360.0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad = ok;
    bad.azimuth_deg = -1.0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad = ok;
    bad.altitude_km = 0.0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
}

TEST_CASE("local projection")
{
    const GeoPoint origin{51.55, -0.1};
    const Vec2 north = to_local(origin, GeoPoint{51.555, -0.1});
    CHECK(north.x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(north.y == doctest::Approx(555.9746332227937).epsilon(1e-12));

    const Vec2 east = to_local(origin, GeoPoint{51.55, -0.095});
    CHECK(east.x == doctest::Approx(345.7225096902689).epsilon(1e-12));
    CHECK(east.y == doctest::Approx(0.0).epsilon(1e-9));

    const Vec2 self = to_local(origin, origin);
    CHECK(self.x == 0.0);
    CHECK(self.y == 0.0);
}

TEST_CASE("wavelength")
{
    CHECK(wavelength_m(3.4) == doctest::Approx(299792458.0 / 3.4e9).epsilon(1e-15));
}
