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
#include <cstdio>
#include <string>
#include <vector>

#include "s2gsim/errors.hpp"
#include "s2gsim/modelfit.hpp"
#include "s2gsim/rng.hpp"

using namespace s2gsim;

namespace
{

std::vector<XYPoint> sample_elevation(double a1, double a2, int n, double lo, double hi)
{
    std::vector<XYPoint> pts;
    for (int i = 0; i < n; ++i)
    {
        const double x = lo + (hi - lo) * i / (n - 1);
        pts.emplace_back(x, a1 * std::log10(x) + a2);
    }
    return pts;
}

std::vector<XYPoint> sample_shifted(double a1, double a2, double a3, const std::vector<double> &xs)
{
    std::vector<XYPoint> pts;
    for (double x : xs)
        pts.emplace_back(x, a1 * std::log10(x + a2) + a3);
    return pts;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> xs;
    for (int i = 0; i < n; ++i)
        xs.push_back(lo + (hi - lo) * i / (n - 1));
    return xs;
}

} // namespace

TEST_CASE("elevation fit recovers exact coefficients")
{
    const auto pts = sample_elevation(-25.6, 51.44, 15, 20.0, 90.0);
    const LogModel m = fit_elevation(pts);
    CHECK(m.kind == ModelKind::elevation);
    CHECK(m.a1 == doctest::Approx(-25.6).epsilon(1e-12));
    CHECK(m.a2 == doctest::Approx(51.44).epsilon(1e-12));
    CHECK(m.a3 == 0.0);
    CHECK(m.rmse_db == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(m.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.n_points == 15);
}

TEST_CASE("shifted fit recovers the density coefficients")
{
    const auto pts = sample_shifted(53.73, 0.49, 15.96, linspace(0.05, 0.6, 20));
    const LogModel m = fit_shifted(pts, ModelKind::density);
    CHECK(m.kind == ModelKind::density);
    CHECK(m.a1 == doctest::Approx(53.73).epsilon(1e-4));
    CHECK(m.a2 == doctest::Approx(0.49).epsilon(1e-4));
    CHECK(m.a3 == doctest::Approx(15.96).epsilon(1e-4));
    CHECK(m.rmse_db < 1e-3);
    CHECK(m.r2 > 0.99999);
}

TEST_CASE("shifted fit recovers the height coefficients")
{
    const auto pts = sample_shifted(9.2, -6.7, 7.3, linspace(7.5, 30.0, 20));
    const LogModel m = fit_shifted(pts, ModelKind::height);
    CHECK(m.kind == ModelKind::height);
    CHECK(m.a1 == doctest::Approx(9.2).epsilon(1e-4));
    CHECK(m.a2 == doctest::Approx(-6.7).epsilon(1e-4));
    CHECK(m.a3 == doctest::Approx(7.3).epsilon(1e-4));
    CHECK(m.rmse_db < 1e-3);
}

TEST_CASE("pinned shift reduces to linear regression")
{
    const auto pts = sample_shifted(53.73, 0.49, 15.96, linspace(0.05, 0.6, 10));
    const LogModel m = fit_shifted_at(pts, ModelKind::density, 0.49);
    CHECK(m.a1 == doctest::Approx(53.73).epsilon(1e-12));
    CHECK(m.a2 == 0.49);
    CHECK(m.a3 == doctest::Approx(15.96).epsilon(1e-12));
    // Out-of-domain shift is rejected.
    CHECK_THROWS_AS(fit_shifted_at(pts, ModelKind::density, -0.06), validation_error);
}

TEST_CASE("model evaluation at reference points")
{
    LogModel elev;
    elev.kind = ModelKind::elevation;
    elev.a1 = -25.6;
    elev.a2 = 51.44;
    CHECK(evaluate(elev, 40.0) == doctest::Approx(10.427264222004155).epsilon(1e-12));

    LogModel dens;
    dens.kind = ModelKind::density;
    dens.a1 = 53.73;
    dens.a2 = 0.49;
    dens.a3 = 15.96;
    CHECK(evaluate(dens, 0.3) == doctest::Approx(10.45950361503542).epsilon(1e-12));

    LogModel height;
    height.kind = ModelKind::height;
    height.a1 = 9.2;
    height.a2 = -6.7;
    height.a3 = 7.3;
    CHECK(evaluate(height, 8.9) == doctest::Approx(10.450288663564297).epsilon(1e-12));

    CHECK_THROWS_AS(evaluate(elev, 0.0), validation_error);
    CHECK_THROWS_AS(evaluate(dens, -0.49), validation_error);
    CHECK_THROWS_AS(evaluate(height, 6.7), validation_error);
}

TEST_CASE("goodness conventions")
{
    // Constant response: zero variance, r2 pinned to 0.
    std::vector<XYPoint> flat;
    for (double x : linspace(10.0, 80.0, 8))
        flat.emplace_back(x, 4.0);
    const LogModel m = fit_elevation(flat);
    CHECK(m.a1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m.a2 == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(m.r2 == 0.0);
    CHECK(m.rmse_db == doctest::Approx(0.0).epsilon(1e-9));

    const auto [rmse, r2] = goodness(m, flat);
    CHECK(rmse == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r2 == 0.0);
}

TEST_CASE("fit input validation")
{
    CHECK_THROWS_AS(fit_elevation({}), validation_error);
    CHECK_THROWS_AS(fit_elevation({{40.0, 1.0}}), validation_error);
    CHECK_THROWS_AS(fit_elevation({{-5.0, 1.0}, {40.0, 2.0}}), validation_error);
    CHECK_THROWS_AS(fit_elevation({{40.0, 1.0}, {40.0, 2.0}}), validation_error);
    CHECK_THROWS_AS(fit_shifted({{0.1, 1.0}, {0.2, 2.0}}, ModelKind::density), validation_error);
    CHECK_THROWS_AS(fit_shifted({{0.1, 1.0}, {0.1, 2.0}, {0.1, 3.0}}, ModelKind::density),
                    validation_error);
    // The elevation form has no shift parameter to search.
    CHECK_THROWS_AS(fit_shifted(sample_elevation(-25.6, 51.44, 5, 20.0, 80.0),
                                ModelKind::elevation),
                    validation_error);
}

TEST_CASE("model kind names")
{
    CHECK(std::string(model_kind_name(ModelKind::elevation)) == "elevation");
    CHECK(std::string(model_kind_name(ModelKind::density)) == "density");
    CHECK(std::string(model_kind_name(ModelKind::height)) == "height");
    CHECK(model_kind_from_name("height") == ModelKind::height);
    CHECK_THROWS_AS(model_kind_from_name("altitude"), validation_error);
}

TEST_CASE("model file round trip")
{
    LogModel m;
    m.kind = ModelKind::density;
    m.a1 = 53.73;
    m.a2 = 0.49;
    m.a3 = 15.96;
    m.rmse_db = 0.75;
    m.r2 = 0.875;
    m.n_points = 36;
    ModelFile mf{m, "theta_elev_deg=40+-1"};

    const std::string path = "test_model.json";
    write_model(mf, path);
    const ModelFile back = read_model(path);
    CHECK(back.model.kind == ModelKind::density);
    CHECK(back.model.a1 == 53.73);
    CHECK(back.model.a2 == 0.49);
    CHECK(back.model.a3 == 15.96);
    CHECK(back.model.rmse_db == 0.75);
    CHECK(back.model.r2 == 0.875);
    CHECK(back.model.n_points == 36);
    CHECK(back.filter == "theta_elev_deg=40+-1");
    std::remove(path.c_str());

    CHECK_THROWS_AS(read_model("missing_model.json"), io_error);
}

TEST_CASE("noisy recovery stays near the truth")
{
    Rng rng(1);
    std::vector<double> xs;
    for (int i = 0; i < 100; ++i)
        xs.push_back(-0.49 + 0.49 * std::pow(20.49 / 0.49, i / 99.0));
    auto pts = sample_shifted(53.73, 0.49, 15.96, xs);
    for (auto &p : pts)
        p.second += rng.normal(0.0, 1.0);
    const LogModel m = fit_shifted(pts, ModelKind::density);
    CHECK(std::abs(m.a1 - 53.73) / 53.73 < 0.1);
    CHECK(std::abs(m.a2 - 0.49) / 0.49 < 0.1);
    CHECK(std::abs(m.a3 - 15.96) / 15.96 < 0.1);
}
