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
// s2gsim command line: scene statistics, grid simulation, model fitting, the
// synthetic scene generator and model evaluation.
//
// Exit codes: 0 success, 1 invalid input, 2 I/O failure, 3 numerical failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "s2gsim/errors.hpp"
#include "s2gsim/format.hpp"
#include "s2gsim/gridsim.hpp"
#include "s2gsim/manifest.hpp"
#include "s2gsim/modelfit.hpp"
#include "s2gsim/propagation.hpp"
#include "s2gsim/raytracer.hpp"
#include "s2gsim/satgeom.hpp"
#include "s2gsim/scene.hpp"
#include "s2gsim/synthetic.hpp"

namespace fs = std::filesystem;
using namespace s2gsim;

namespace
{

struct CohortFilter
{
    std::string key;
    double value = 0.0;
    double tol = 0.0;
};

// "mu=0.3:0.02" or "mu=0.3:±0.02"; keys: mu, h_avg, theta_elev, los_fraction.
CohortFilter parse_filter(const std::string &text)
{
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos)
        throw validation_error("filter must look like key=value:tolerance");
    CohortFilter f;
    f.key = text.substr(0, eq);
    std::string rest = text.substr(eq + 1);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos)
        throw validation_error("filter must give a tolerance, e.g. mu=0.3:0.02");
    std::string value_part = rest.substr(0, colon);
    std::string tol_part = rest.substr(colon + 1);
    if (tol_part.rfind("±", 0) == 0)
        tol_part = tol_part.substr(2); // UTF-8 plus-minus sign
    else if (tol_part.rfind("+-", 0) == 0)
        tol_part = tol_part.substr(2);
    try
    {
        std::size_t pos = 0;
        f.value = std::stod(value_part, &pos);
        if (pos != value_part.size())
            throw std::invalid_argument(value_part);
        f.tol = std::stod(tol_part, &pos);
        if (pos != tol_part.size())
            throw std::invalid_argument(tol_part);
    }
    catch (const std::exception &)
    {
        throw validation_error("filter values must be numbers: " + text);
    }
    if (f.tol < 0.0)
        throw validation_error("filter tolerance must be non-negative");
    return f;
}

double record_field(const SegmentRecord &rec, const std::string &key)
{
    if (key == "mu")
        return rec.mu;
    if (key == "h_avg" || key == "h_avg_m" || key == "h")
        return rec.h_avg_m;
    if (key == "theta_elev" || key == "theta_elev_deg" || key == "theta")
        return rec.theta_elev_deg;
    if (key == "los_fraction")
        return rec.los_fraction;
    throw validation_error("unknown filter key: " + key);
}

std::string join_args(int argc, char **argv)
{
    std::string s;
    for (int i = 0; i < argc; ++i)
    {
        if (i > 0)
            s += ' ';
        s += argv[i];
    }
    return s;
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open output file: " + path);
    out << text;
    if (!out)
        throw io_error("write failure on " + path);
}

struct SceneStatsArgs
{
    std::string scene_path;
    double seg_size_deg = 0.005;
    std::string out_path;
};

int run_scene_stats(const SceneStatsArgs &a)
{
    const Scene scene = load_scene(a.scene_path);
    SegmentGrid grid = partition(scene, a.seg_size_deg);
    nlohmann::ordered_json j;
    j["rows"] = grid.rows;
    j["cols"] = grid.cols;
    j["buildings"] = scene.buildings.size();
    j["segments"] = nlohmann::ordered_json::array();
    for (Segment &seg : grid.segments)
    {
        const double mu = building_density(scene, seg);
        const double h = avg_building_height(scene, seg);
        j["segments"].push_back({{"row", seg.row},
                                 {"col", seg.col},
                                 {"mu", snap_g6(mu)},
                                 {"h_avg", snap_g6(h)}});
    }
    const std::string text = j.dump(2) + "\n";
    if (a.out_path.empty())
        std::cout << text;
    else
        write_text(a.out_path, text);
    return 0;
}

struct SimulateArgs
{
    std::string scene_path;
    std::string config_path;
    double elev_deg = 90.0;
    double azimuth_deg = 180.0;
    double alt_km = 550.0;
    double seg_size_deg = 0.005;
    int mesh_n = 100;
    double rx_height_m = 1.0;
    bool linear_average = false;
    int threads = 1;
    bool ray_dump = false;
    std::string out_dir;
    std::string command;
};

int run_simulate(const SimulateArgs &a)
{
    const Scene scene = load_scene(a.scene_path);

    SimulationOptions opt;
    opt.sat.altitude_km = a.alt_km;
    opt.sat.elevation_deg = a.elev_deg;
    opt.sat.azimuth_deg = a.azimuth_deg;
    if (!a.config_path.empty())
        load_sim_config(a.config_path, opt.link, opt.tracer);
    opt.mesh_n = a.mesh_n;
    opt.rx_height_m = a.rx_height_m;
    opt.linear_domain_average = a.linear_average;
    opt.threads = a.threads;
    opt.validate();

    SegmentGrid grid = partition(scene, a.seg_size_deg);
    populate_segments(scene, grid, opt.mesh_n, opt.rx_height_m);

    const AreaResult area = simulate_area(scene, grid, opt);

    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec)
        throw io_error("cannot create output directory: " + a.out_dir);

    write_segment_results(area, (fs::path(a.out_dir) / "results.json").string());
    const std::vector<double> raster = stitch_raster(area);
    export_heatmap(raster, area.rows * area.mesh_n, area.cols * area.mesh_n,
                   (fs::path(a.out_dir) / "heatmap.csv").string());

    if (a.ray_dump)
    {
        std::ofstream os(fs::path(a.out_dir) / "rays.txt");
        if (!os)
            throw io_error("cannot open ray dump file");
        const PreparedScene prepared(scene);
        const Vec3 dir = sat_direction(opt.sat.elevation_deg, opt.sat.azimuth_deg);
        const double slant_m = slant_range_km(opt.sat.altitude_km, opt.sat.elevation_deg) * 1000.0;
        const long width = static_cast<long>(area.cols) * area.mesh_n;
        for (const Segment &seg : grid.segments)
        {
            for (int r = 0; r < seg.mesh.n; ++r)
            {
                for (int c = 0; c < seg.mesh.n; ++c)
                {
                    const std::size_t i = static_cast<std::size_t>(r) * seg.mesh.n + c;
                    if (seg.mesh.interior[i])
                        continue;
                    const long gr = static_cast<long>(seg.row) * seg.mesh.n + r;
                    const long gc = static_cast<long>(seg.col) * seg.mesh.n + c;
                    dump_rays(os, gr * width + gc,
                              prepared.trace(seg.mesh.points[i], dir, opt.tracer, opt.link.f_c_ghz,
                                             slant_m));
                }
            }
        }
    }

    RunManifest manifest;
    manifest.command = a.command;
    manifest.scene_path = a.scene_path;
    manifest.config_path = a.config_path;
    manifest.sat = opt.sat;
    manifest.out_dir = a.out_dir;
    manifest.seg_size_deg = a.seg_size_deg;
    manifest.mesh_n = a.mesh_n;
    manifest.rx_height_m = a.rx_height_m;
    manifest.linear_domain_average = a.linear_average;
    write_manifest(manifest, (fs::path(a.out_dir) / "manifest.json").string());

    std::cout << "simulated " << area.rows << "x" << area.cols << " segments, mesh "
              << area.mesh_n << "x" << area.mesh_n << " -> " << a.out_dir << "\n";
    return 0;
}

struct FitArgs
{
    std::vector<std::string> results_paths;
    std::string kind_name;
    std::string filter_text;
    std::string out_path;
};

int run_fit(const FitArgs &a)
{
    const ModelKind kind = model_kind_from_name(a.kind_name);
    std::vector<SegmentRecord> records;
    for (const std::string &path : a.results_paths)
    {
        const std::vector<SegmentRecord> part = read_segment_results(path);
        records.insert(records.end(), part.begin(), part.end());
    }

    bool has_filter = !a.filter_text.empty();
    CohortFilter filter;
    if (has_filter)
        filter = parse_filter(a.filter_text);

    std::vector<XYPoint> points;
    for (const SegmentRecord &rec : records)
    {
        if (rec.empty || std::isnan(rec.excess_loss_db))
            continue;
        if (has_filter)
        {
            const double v = record_field(rec, filter.key);
            if (std::isnan(v) || std::abs(v - filter.value) > filter.tol)
                continue;
        }
        double x = 0.0;
        switch (kind)
        {
        case ModelKind::elevation:
            x = rec.theta_elev_deg;
            break;
        case ModelKind::density:
            x = rec.mu;
            break;
        case ModelKind::height:
            x = rec.h_avg_m;
            break;
        }
        if (std::isnan(x))
            continue;
        points.emplace_back(x, rec.excess_loss_db);
    }

    ModelFile mf;
    mf.model = kind == ModelKind::elevation ? fit_elevation(points) : fit_shifted(points, kind);
    mf.filter = a.filter_text;
    write_model(mf, a.out_path);

    std::cout << model_kind_name(kind) << " fit over " << mf.model.n_points
              << " points: a1=" << format_g6(mf.model.a1) << " a2=" << format_g6(mf.model.a2)
              << " a3=" << format_g6(mf.model.a3) << " rmse=" << format_g6(mf.model.rmse_db)
              << " r2=" << format_g6(mf.model.r2) << "\n";
    return 0;
}

struct GenArgs
{
    std::vector<double> bbox; // lat_min lat_max lon_min lon_max
    double seg_size_deg = 0.005;
    double mu = 0.3;
    double mean_height_m = 8.9;
    double height_spread_m = 0.0;
    double block_size_m = 40.0;
    double min_street_m = 8.0;
    double jitter_frac = 0.0;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string command;
};

int run_gen(const GenArgs &a)
{
    ManhattanParams params;
    params.bbox = GeoRect{a.bbox[0], a.bbox[1], a.bbox[2], a.bbox[3]};
    params.seg_size_deg = a.seg_size_deg;
    params.target_mu = a.mu;
    params.mean_height_m = a.mean_height_m;
    params.height_spread_m = a.height_spread_m;
    params.block_size_m = a.block_size_m;
    params.min_street_m = a.min_street_m;
    params.jitter_frac = a.jitter_frac;
    params.seed = a.seed;

    const Scene scene = generate_manhattan(params);
    save_scene(scene, a.out_path);

    RunManifest manifest;
    manifest.command = a.command;
    manifest.scene_path = a.out_path;
    manifest.out_dir = fs::path(a.out_path).parent_path().string();
    manifest.seed = a.seed;
    manifest.seg_size_deg = a.seg_size_deg;
    write_manifest(manifest, a.out_path + ".manifest.json");

    std::cout << "wrote " << scene.buildings.size() << " buildings -> " << a.out_path << "\n";
    return 0;
}

struct EvalArgs
{
    std::string model_path;
    double x = 0.0;
};

int run_eval(const EvalArgs &a)
{
    const ModelFile mf = read_model(a.model_path);
    std::cout << format_g6(evaluate(mf.model, a.x)) << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"site-specific LEO satellite-to-ground channel simulator"};
    app.require_subcommand(1);

    SceneStatsArgs stats;
    CLI::App *cmd_stats = app.add_subcommand("scene-stats", "per-segment density and mean height");
    cmd_stats->add_option("--scene", stats.scene_path, "scene JSON file")->required();
    cmd_stats->add_option("--seg-size-deg", stats.seg_size_deg, "segment size, degrees");
    cmd_stats->add_option("--out", stats.out_path, "output file (default: stdout)");

    SimulateArgs sim;
    CLI::App *cmd_sim = app.add_subcommand("simulate", "grid path-loss simulation");
    cmd_sim->add_option("--scene", sim.scene_path, "scene JSON file")->required();
    cmd_sim->add_option("--config", sim.config_path, "link budget / tracer config JSON");
    cmd_sim->add_option("--elev-deg", sim.elev_deg, "satellite elevation, degrees");
    cmd_sim->add_option("--azimuth-deg", sim.azimuth_deg, "satellite azimuth, degrees");
    cmd_sim->add_option("--alt-km", sim.alt_km, "satellite altitude, km");
    cmd_sim->add_option("--seg-size-deg", sim.seg_size_deg, "segment size, degrees");
    cmd_sim->add_option("--mesh-n", sim.mesh_n, "receiver mesh resolution per segment");
    cmd_sim->add_option("--rx-height-m", sim.rx_height_m, "receiver height, m");
    cmd_sim->add_flag("--linear-average", sim.linear_average,
                      "average path loss in the linear power domain");
    cmd_sim->add_option("--threads", sim.threads, "worker threads over segments");
    cmd_sim->add_flag("--ray-dump", sim.ray_dump, "also write per-receiver ray lines (rays.txt)");
    cmd_sim->add_option("--out", sim.out_dir, "output directory")->required();

    FitArgs fit;
    CLI::App *cmd_fit = app.add_subcommand("fit", "fit a log model to segment results");
    cmd_fit->add_option("--results", fit.results_paths, "results.json file(s)")->required();
    cmd_fit->add_option("--kind", fit.kind_name, "elevation | density | height")->required();
    cmd_fit->add_option("--filter", fit.filter_text, "cohort filter, e.g. mu=0.3:0.02");
    cmd_fit->add_option("--out", fit.out_path, "model output file")->required();

    GenArgs gen;
    CLI::App *cmd_gen = app.add_subcommand("gen-synthetic", "seeded Manhattan-grid scene");
    cmd_gen->add_option("--bbox", gen.bbox, "lat_min lat_max lon_min lon_max")
        ->expected(4)
        ->required();
    cmd_gen->add_option("--seg-size-deg", gen.seg_size_deg, "segment size, degrees");
    cmd_gen->add_option("--mu", gen.mu, "target building density per segment");
    cmd_gen->add_option("--mean-height-m", gen.mean_height_m, "mean building height, m");
    cmd_gen->add_option("--height-spread-m", gen.height_spread_m,
                        "heights uniform in mean +- spread");
    cmd_gen->add_option("--block-size-m", gen.block_size_m, "approximate lattice pitch, m");
    cmd_gen->add_option("--min-street-m", gen.min_street_m, "minimum street width, m");
    cmd_gen->add_option("--jitter-frac", gen.jitter_frac,
                        "random in-cell building offset, fraction of the margin");
    cmd_gen->add_option("--seed", gen.seed, "RNG seed");
    cmd_gen->add_option("--out", gen.out_path, "scene output file")->required();

    EvalArgs ev;
    CLI::App *cmd_eval = app.add_subcommand("eval", "evaluate a fitted model at x");
    cmd_eval->add_option("--model", ev.model_path, "model JSON file")->required();
    cmd_eval->add_option("--x", ev.x, "abscissa value")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try
    {
        sim.command = join_args(argc, argv);
        gen.command = sim.command;
        if (cmd_stats->parsed())
            return run_scene_stats(stats);
        if (cmd_sim->parsed())
            return run_simulate(sim);
        if (cmd_fit->parsed())
            return run_fit(fit);
        if (cmd_gen->parsed())
            return run_gen(gen);
        if (cmd_eval->parsed())
            return run_eval(ev);
    }
    catch (const validation_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const io_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const numeric_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
