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

#include "s2gsim/gridsim.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "s2gsim/errors.hpp"
#include "s2gsim/format.hpp"

namespace s2gsim
{

namespace
{

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

// Mean of path losses, either directly in dB or through linear power gains.
double mean_loss_db(const std::vector<double> &losses, bool linear_domain)
{
    if (losses.empty())
        return nan_v;
    double acc = 0.0;
    for (double v : losses)
        acc += linear_domain ? std::pow(10.0, -v / 10.0) : v;
    acc /= static_cast<double>(losses.size());
    return linear_domain ? -10.0 * std::log10(acc) : acc;
}

nlohmann::ordered_json number_or_null(double v)
{
    if (std::isnan(v))
        return nullptr;
    return snap_g6(v);
}

double number_from(const nlohmann::json &j, const char *key)
{
    if (!j.contains(key))
        throw validation_error(std::string("results record missing \"") + key + "\"");
    if (j[key].is_null())
        return nan_v;
    if (!j[key].is_number())
        throw validation_error(std::string("results field \"") + key + "\" must be a number");
    return j[key].get<double>();
}

} // namespace

void SimulationOptions::validate() const
{
    sat.validate();
    link.validate();
    tracer.validate();
    if (mesh_n < 1)
        throw validation_error("mesh resolution must be at least 1");
    if (!(rx_height_m >= 0.0))
        throw validation_error("receiver height must be non-negative");
    if (threads < 1)
        throw validation_error("thread count must be at least 1");
}

SegmentResult simulate_segment(const Scene &scene, const PreparedScene &prepared,
                               const PreparedScene &empty_prepared, const Segment &segment,
                               const SimulationOptions &opt)
{
    opt.validate();

    const ReceiverMesh &mesh = segment.mesh.n == opt.mesh_n && !segment.mesh.points.empty()
                                   ? segment.mesh
                                   : receiver_mesh(scene, segment, opt.mesh_n, opt.rx_height_m);

    SegmentResult res;
    res.row = segment.row;
    res.col = segment.col;
    res.mu = segment.mu;
    res.h_avg_m = segment.h_avg_m;
    res.theta_elev_deg = opt.sat.elevation_deg;
    res.azimuth_deg = opt.sat.azimuth_deg;
    res.mesh_n = mesh.n;
    res.pl_grid.assign(mesh.points.size(), nan_v);

    const Vec3 dir = sat_direction(opt.sat.elevation_deg, opt.sat.azimuth_deg);
    const double slant_km = slant_range_km(opt.sat.altitude_km, opt.sat.elevation_deg);
    const double slant_m = slant_km * 1000.0;
    const double l_fs_ref = free_space_loss_db(opt.link.f_c_ghz, slant_km);

    // Shared per-point pipeline; the baseline runs it against the empty scene.
    auto point_loss = [&](const PreparedScene &ps, Vec3 p, bool &los) {
        los = !ps.blocked(p, dir);
        if (los)
            return total_path_loss(l_fs_ref, opt.link, true, 0.0).total_db;
        const std::vector<RayPath> rays = ps.trace(p, dir, opt.tracer, opt.link.f_c_ghz, slant_m);
        const double ray_db =
            aggregate_loss_db(rays, l_fs_ref, opt.link.deep_fade_cap_db);
        return total_path_loss(l_fs_ref, opt.link, false, ray_db).total_db;
    };

    std::vector<double> losses;
    std::vector<double> baseline_losses;
    losses.reserve(mesh.points.size());
    baseline_losses.reserve(mesh.points.size());
    std::size_t los_count = 0;

    for (std::size_t i = 0; i < mesh.points.size(); ++i)
    {
        if (mesh.interior[i])
            continue;
        bool los = false;
        const double pl = point_loss(prepared, mesh.points[i], los);
        res.pl_grid[i] = pl;
        losses.push_back(pl);
        if (los)
            ++los_count;
        bool baseline_los = false;
        baseline_losses.push_back(point_loss(empty_prepared, mesh.points[i], baseline_los));
    }

    if (losses.empty())
    {
        res.empty = true;
        res.mean_pl_db = nan_v;
        res.baseline_pl_db = nan_v;
        res.excess_loss_db = nan_v;
        res.los_fraction = nan_v;
        return res;
    }

    res.mean_pl_db = mean_loss_db(losses, opt.linear_domain_average);
    res.baseline_pl_db = mean_loss_db(baseline_losses, opt.linear_domain_average);
    res.excess_loss_db = res.mean_pl_db - res.baseline_pl_db;
    res.los_fraction = static_cast<double>(los_count) / static_cast<double>(losses.size());
    return res;
}

SegmentResult simulate_segment(const Scene &scene, const Segment &segment,
                               const SimulationOptions &opt)
{
    const PreparedScene prepared(scene);
    const PreparedScene empty_prepared;
    return simulate_segment(scene, prepared, empty_prepared, segment, opt);
}

AreaResult simulate_area(const Scene &scene, const SegmentGrid &grid, const SimulationOptions &opt)
{
    opt.validate();
    const PreparedScene prepared(scene);
    const PreparedScene empty_prepared;

    AreaResult area;
    area.rows = grid.rows;
    area.cols = grid.cols;
    area.mesh_n = opt.mesh_n;
    area.segments.resize(grid.segments.size());

    const int workers = std::min<int>(opt.threads, static_cast<int>(grid.segments.size()));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < grid.segments.size(); ++i)
            area.segments[i] =
                simulate_segment(scene, prepared, empty_prepared, grid.segments[i], opt);
        return area;
    }

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
        for (;;)
        {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.segments.size())
                return;
            try
            {
                area.segments[i] =
                    simulate_segment(scene, prepared, empty_prepared, grid.segments[i], opt);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t)
        pool.emplace_back(worker);
    for (std::thread &t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
    return area;
}

std::vector<double> stitch_raster(const AreaResult &area)
{
    const int n = area.mesh_n;
    const std::size_t width = static_cast<std::size_t>(area.cols) * n;
    const std::size_t height = static_cast<std::size_t>(area.rows) * n;
    std::vector<double> raster(width * height, nan_v);
    for (const SegmentResult &seg : area.segments)
    {
        if (seg.pl_grid.empty())
            continue;
        for (int r = 0; r < n; ++r)
        {
            const std::size_t gr = static_cast<std::size_t>(seg.row) * n + r;
            for (int c = 0; c < n; ++c)
            {
                const std::size_t gc = static_cast<std::size_t>(seg.col) * n + c;
                raster[gr * width + gc] = seg.pl_grid[static_cast<std::size_t>(r) * n + c];
            }
        }
    }
    return raster;
}

void export_heatmap(const std::vector<double> &raster, int n_rows, int n_cols,
                    const std::string &path)
{
    if (n_rows < 0 || n_cols < 0 ||
        raster.size() != static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols))
        throw validation_error("raster dimensions do not match the value count");
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open output file: " + path);
    for (int r = 0; r < n_rows; ++r)
    {
        for (int c = 0; c < n_cols; ++c)
        {
            if (c > 0)
                out << ',';
            out << format_g6(raster[static_cast<std::size_t>(r) * n_cols + c]);
        }
        out << '\n';
    }
    if (!out)
        throw io_error("write failure on " + path);
}

std::vector<double> import_heatmap(const std::string &path, int &n_rows, int &n_cols)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open heat-map file: " + path);
    std::vector<double> values;
    n_rows = 0;
    n_cols = -1;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty() && in.eof())
            break;
        int cols = 0;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
        {
            if (cell == "NaN")
                values.push_back(nan_v);
            else
            {
                try
                {
                    std::size_t pos = 0;
                    const double v = std::stod(cell, &pos);
                    if (pos != cell.size())
                        throw std::invalid_argument(cell);
                    values.push_back(v);
                }
                catch (const std::exception &)
                {
                    throw io_error("bad cell \"" + cell + "\" in " + path);
                }
            }
            ++cols;
        }
        if (n_cols < 0)
            n_cols = cols;
        else if (cols != n_cols)
            throw io_error("ragged rows in " + path);
        ++n_rows;
    }
    if (n_cols < 0)
        n_cols = 0;
    return values;
}

void write_segment_results(const AreaResult &area, const std::string &path)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SegmentResult &seg : area.segments)
    {
        nlohmann::ordered_json j;
        j["row"] = seg.row;
        j["col"] = seg.col;
        j["mu"] = snap_g6(seg.mu);
        j["h_avg"] = snap_g6(seg.h_avg_m);
        j["theta_elev"] = snap_g6(seg.theta_elev_deg);
        j["azimuth"] = snap_g6(seg.azimuth_deg);
        j["mean_pl_db"] = number_or_null(seg.mean_pl_db);
        j["baseline_pl_db"] = number_or_null(seg.baseline_pl_db);
        j["excess_loss_db"] = number_or_null(seg.excess_loss_db);
        j["los_fraction"] = number_or_null(seg.los_fraction);
        arr.push_back(std::move(j));
    }
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open output file: " + path);
    out << arr.dump(2) << '\n';
    if (!out)
        throw io_error("write failure on " + path);
}

std::vector<SegmentRecord> read_segment_results(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open results file: " + path);
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw io_error("results parse failure in " + path + ": " + e.what());
    }
    if (!j.is_array())
        throw validation_error("results file must hold a JSON array");
    std::vector<SegmentRecord> records;
    records.reserve(j.size());
    for (const auto &item : j)
    {
        SegmentRecord rec;
        rec.row = static_cast<int>(number_from(item, "row"));
        rec.col = static_cast<int>(number_from(item, "col"));
        rec.mu = number_from(item, "mu");
        rec.h_avg_m = number_from(item, "h_avg");
        rec.theta_elev_deg = number_from(item, "theta_elev");
        rec.azimuth_deg = number_from(item, "azimuth");
        rec.mean_pl_db = number_from(item, "mean_pl_db");
        rec.baseline_pl_db = number_from(item, "baseline_pl_db");
        rec.excess_loss_db = number_from(item, "excess_loss_db");
        rec.los_fraction = number_from(item, "los_fraction");
        rec.empty = std::isnan(rec.mean_pl_db);
        records.push_back(rec);
    }
    return records;
}

void load_sim_config(const std::string &path, LinkBudgetConfig &link, TracerConfig &tracer)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open config file: " + path);
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw io_error("config parse failure in " + path + ": " + e.what());
    }
    try
    {
        if (j.contains("f_c_ghz"))
            link.f_c_ghz = j["f_c_ghz"].get<double>();
        if (j.contains("rain_loss_db"))
            link.rain_loss_db = j["rain_loss_db"].get<double>();
        if (j.contains("cloud_loss_db"))
            link.cloud_loss_db = j["cloud_loss_db"].get<double>();
        if (j.contains("glass_fraction"))
            link.glass_fraction = j["glass_fraction"].get<double>();
        if (j.contains("concrete_fraction"))
            link.concrete_fraction = j["concrete_fraction"].get<double>();
        if (j.contains("wall_factor"))
            link.wall_factor = j["wall_factor"].get<double>();
        if (j.contains("deep_fade_cap_db"))
            link.deep_fade_cap_db = j["deep_fade_cap_db"].get<double>();
        if (j.contains("tracer"))
        {
            const auto &t = j["tracer"];
            if (t.contains("max_reflections"))
                tracer.max_reflections = t["max_reflections"].get<int>();
            if (t.contains("enable_diffraction"))
                tracer.enable_diffraction = t["enable_diffraction"].get<bool>();
            if (t.contains("reflection_model"))
            {
                const std::string name = t["reflection_model"].get<std::string>();
                if (name == "fresnel")
                    tracer.reflection_model = ReflectionModel::fresnel;
                else if (name == "fixed")
                    tracer.reflection_model = ReflectionModel::fixed;
                else
                    throw validation_error("unknown reflection model: " + name);
            }
            if (t.contains("fixed_reflection_loss_db"))
                tracer.fixed_reflection_loss_db = t["fixed_reflection_loss_db"].get<double>();
            if (t.contains("relative_permittivity"))
                tracer.relative_permittivity = t["relative_permittivity"].get<double>();
            if (t.contains("max_image_distance_m"))
                tracer.max_image_distance_m = t["max_image_distance_m"].get<double>();
        }
    }
    catch (const nlohmann::json::exception &e)
    {
        throw validation_error(std::string("bad config field type: ") + e.what());
    }
    link.validate();
    tracer.validate();
}

} // namespace s2gsim
