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

#include "s2gsim/modelfit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "s2gsim/errors.hpp"
#include "s2gsim/format.hpp"

namespace s2gsim
{

namespace
{

struct LinearFit
{
    double slope = 0.0;
    double intercept = 0.0;
    double sse = 0.0;
};

// Least squares of y over a transformed abscissa u.
LinearFit linear_ls(const std::vector<double> &u, const std::vector<double> &y)
{
    const double n = static_cast<double>(u.size());
    double su = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
    {
        su += u[i];
        sy += y[i];
    }
    const double mu = su / n;
    const double my = sy / n;
    double suu = 0.0, suy = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
    {
        suu += (u[i] - mu) * (u[i] - mu);
        suy += (u[i] - mu) * (y[i] - my);
    }
    if (!(suu > 0.0))
        throw validation_error("fit needs at least two distinct abscissa values");
    LinearFit f;
    f.slope = suy / suu;
    f.intercept = my - f.slope * mu;
    for (std::size_t i = 0; i < u.size(); ++i)
    {
        const double r = y[i] - (f.slope * u[i] + f.intercept);
        f.sse += r * r;
    }
    return f;
}

double shifted_sse(const std::vector<XYPoint> &points, double a2)
{
    std::vector<double> u(points.size()), y(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const double arg = points[i].first + a2;
        if (!(arg > 0.0))
            return std::numeric_limits<double>::infinity();
        u[i] = std::log10(arg);
        y[i] = points[i].second;
    }
    try
    {
        return linear_ls(u, y).sse;
    }
    catch (const validation_error &)
    {
        return std::numeric_limits<double>::infinity();
    }
}

} // namespace

const char *model_kind_name(ModelKind kind)
{
    switch (kind)
    {
    case ModelKind::elevation:
        return "elevation";
    case ModelKind::density:
        return "density";
    case ModelKind::height:
        return "height";
    }
    return "unknown";
}

ModelKind model_kind_from_name(const std::string &name)
{
    if (name == "elevation")
        return ModelKind::elevation;
    if (name == "density")
        return ModelKind::density;
    if (name == "height")
        return ModelKind::height;
    throw validation_error("unknown model kind: " + name);
}

LogModel fit_elevation(const std::vector<XYPoint> &points)
{
    if (points.size() < 2)
        throw validation_error("elevation fit needs at least 2 points");
    std::vector<double> u(points.size()), y(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        if (!(points[i].first > 0.0))
            throw validation_error("elevation angles must be positive");
        u[i] = std::log10(points[i].first);
        y[i] = points[i].second;
    }
    const LinearFit f = linear_ls(u, y);
    LogModel m;
    m.kind = ModelKind::elevation;
    m.a1 = f.slope;
    m.a2 = f.intercept;
    m.a3 = 0.0;
    m.n_points = static_cast<int>(points.size());
    const auto [rmse, r2] = goodness(m, points);
    m.rmse_db = rmse;
    m.r2 = r2;
    return m;
}

LogModel fit_shifted_at(const std::vector<XYPoint> &points, ModelKind kind, double a2)
{
    if (kind == ModelKind::elevation)
        throw validation_error("shifted fit applies to density and height models");
    if (points.size() < 3)
        throw validation_error("shifted fit needs at least 3 points");
    std::vector<double> u(points.size()), y(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const double arg = points[i].first + a2;
        if (!(arg > 0.0))
            throw validation_error("shift places a point outside the log domain");
        u[i] = std::log10(arg);
        y[i] = points[i].second;
    }
    const LinearFit f = linear_ls(u, y);
    LogModel m;
    m.kind = kind;
    m.a1 = f.slope;
    m.a2 = a2;
    m.a3 = f.intercept;
    m.n_points = static_cast<int>(points.size());
    const auto [rmse, r2] = goodness(m, points);
    m.rmse_db = rmse;
    m.r2 = r2;
    return m;
}

LogModel fit_shifted(const std::vector<XYPoint> &points, ModelKind kind)
{
    if (kind == ModelKind::elevation)
        throw validation_error("shifted fit applies to density and height models");
    if (points.size() < 3)
        throw validation_error("shifted fit needs at least 3 points");
    double min_x = points[0].first, max_x = points[0].first;
    for (const XYPoint &p : points)
    {
        min_x = std::min(min_x, p.first);
        max_x = std::max(max_x, p.first);
    }
    if (!(max_x > min_x))
        throw validation_error("fit needs at least two distinct abscissa values");

    const double lo = -min_x + 1e-9;
    const double hi = 10.0 * (max_x - min_x);
    if (!(hi > lo))
        throw validation_error("degenerate shift search interval");

    constexpr int grid_n = 256;
    int best = 0;
    double best_sse = std::numeric_limits<double>::infinity();
    std::vector<double> cand(grid_n);
    for (int i = 0; i < grid_n; ++i)
    {
        cand[i] = lo + (hi - lo) * i / (grid_n - 1);
        const double s = shifted_sse(points, cand[i]);
        if (s < best_sse)
        {
            best_sse = s;
            best = i;
        }
    }

    double a = cand[std::max(best - 1, 0)];
    double b = cand[std::min(best + 1, grid_n - 1)];
    // Golden-section refinement; <= keeps the left half on ties, which resolves
    // flat stretches toward the smallest shift.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = shifted_sse(points, c);
    double fd = shifted_sse(points, d);
    while (b - a > 1e-6)
    {
        if (fc <= fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = shifted_sse(points, c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = shifted_sse(points, d);
        }
    }
    return fit_shifted_at(points, kind, 0.5 * (a + b));
}

double evaluate(const LogModel &model, double x)
{
    if (model.kind == ModelKind::elevation)
    {
        if (!(x > 0.0))
            throw validation_error("elevation model needs a positive angle");
        return model.a1 * std::log10(x) + model.a2;
    }
    const double arg = x + model.a2;
    if (!(arg > 0.0))
        throw validation_error("model argument outside the log domain");
    return model.a1 * std::log10(arg) + model.a3;
}

std::pair<double, double> goodness(const LogModel &model, const std::vector<XYPoint> &points)
{
    if (points.empty())
        throw validation_error("goodness needs at least one point");
    double sy = 0.0;
    for (const XYPoint &p : points)
        sy += p.second;
    const double my = sy / static_cast<double>(points.size());
    double sse = 0.0, sst = 0.0;
    for (const XYPoint &p : points)
    {
        const double r = p.second - evaluate(model, p.first);
        sse += r * r;
        sst += (p.second - my) * (p.second - my);
    }
    const double rmse = std::sqrt(sse / static_cast<double>(points.size()));
    const double r2 = sst > 0.0 ? 1.0 - sse / sst : 0.0;
    return {rmse, r2};
}

void write_model(const ModelFile &mf, const std::string &path)
{
    nlohmann::ordered_json j;
    j["kind"] = model_kind_name(mf.model.kind);
    j["a1"] = snap_g6(mf.model.a1);
    j["a2"] = snap_g6(mf.model.a2);
    j["a3"] = snap_g6(mf.model.a3);
    j["rmse"] = snap_g6(mf.model.rmse_db);
    j["r2"] = snap_g6(mf.model.r2);
    j["n_points"] = mf.model.n_points;
    j["filter"] = mf.filter;
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open output file: " + path);
    out << j.dump(2) << '\n';
    if (!out)
        throw io_error("write failure on " + path);
}

ModelFile read_model(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open model file: " + path);
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw io_error("model parse failure in " + path + ": " + e.what());
    }
    ModelFile mf;
    try
    {
        mf.model.kind = model_kind_from_name(j.at("kind").get<std::string>());
        mf.model.a1 = j.at("a1").get<double>();
        mf.model.a2 = j.at("a2").get<double>();
        mf.model.a3 = j.at("a3").get<double>();
        mf.model.rmse_db = j.at("rmse").get<double>();
        mf.model.r2 = j.at("r2").get<double>();
        mf.model.n_points = j.at("n_points").get<int>();
        if (j.contains("filter"))
            mf.filter = j["filter"].get<std::string>();
    }
    catch (const nlohmann::json::exception &e)
    {
        throw validation_error(std::string("bad model field: ") + e.what());
    }
    return mf;
}

} // namespace s2gsim
