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
#include <limits>

#include "s2gsim/format.hpp"

using namespace s2gsim;

TEST_CASE("six significant digits")
{
    CHECK(format_g6(0.0) == "0");
    CHECK(format_g6(1.0) == "1");
    CHECK(format_g6(157.88683213072997) == "157.887");
    CHECK(format_g6(812.0663739852343) == "812.066");
    CHECK(format_g6(-0.1772) == "-0.1772");
    CHECK(format_g6(1234567.0) == "1.23457e+06");
    CHECK(format_g6(0.000012345678) == "1.23457e-05");
}

TEST_CASE("special values")
{
    CHECK(format_g6(std::numeric_limits<double>::quiet_NaN()) == "NaN");
    CHECK(format_g6(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_g6(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("snap is idempotent and close")
{
    const double vals[] = {157.88683213072997, -0.00123456789, 3.4e9, 812.0663739852343};
    for (double v : vals)
    {
        const double s = snap_g6(v);
        CHECK(snap_g6(s) == s);
        CHECK(std::abs(s - v) <= std::abs(v) * 1e-5);
    }
    CHECK(std::isnan(snap_g6(std::numeric_limits<double>::quiet_NaN())));
    CHECK(snap_g6(0.0) == 0.0);
}
