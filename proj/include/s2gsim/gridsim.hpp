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
// Per-segment simulation over the receiver mesh: per-point path loss, segment
// means, the no-building baseline, excess loss, and heat-map rasters.

#ifndef S2GSIM_GRIDSIM_HPP
#define S2GSIM_GRIDSIM_HPP

#include <string>
#include <vector>

#include "s2gsim/propagation.hpp"
#include "s2gsim/raytracer.hpp"
#include "s2gsim/satgeom.hpp"
#include "s2gsim/scene.hpp"

namespace s2gsim
{

struct SimulationOptions
{
    SatelliteGeometry sat;
    LinkBudgetConfig link;
    TracerConfig tracer;
    int mesh_n = 100;
    double rx_height_m = 1.0;
    bool linear_domain_average = false; // default: means taken in dB
    int threads = 1;

    void validate() const;
};

struct SegmentResult
{
    int row = 0;
    int col = 0;
    double mu = 0.0;
    double h_avg_m = 0.0;
    double theta_elev_deg = 0.0;
    double azimuth_deg = 0.0;
    int mesh_n = 0;
    std::vector<double> pl_grid;  // mesh_n^2 row-major; NaN = building interior
    double mean_pl_db = 0.0;      // over active points; NaN when empty
    double baseline_pl_db = 0.0;  // empty-scene pipeline, same mesh and geometry
    double excess_loss_db = 0.0;  // mean - baseline; NaN when empty
    double los_fraction = 0.0;    // active points with unblocked LoS; NaN when empty
    bool empty = false;           // no active receiver points
};

struct AreaResult
{
    int rows = 0;
    int cols = 0;
    int mesh_n = 0;
    std::vector<SegmentResult> segments; // row-major like SegmentGrid
};

// Per-point pipeline: LoS test; blocked points get traced rays, coherent
// aggregation and the scenario term; the baseline runs the identical pipeline
// against an empty scene. Deterministic for fixed inputs.
SegmentResult simulate_segment(const Scene &scene, const PreparedScene &prepared,
                               const PreparedScene &empty_prepared, const Segment &segment,
                               const SimulationOptions &opt);
SegmentResult simulate_segment(const Scene &scene, const Segment &segment,
                               const SimulationOptions &opt);

// All segments of the grid; parallelized over segments when opt.threads > 1 with
// fixed-order assembly, so results do not depend on scheduling.
AreaResult simulate_area(const Scene &scene, const SegmentGrid &grid,
                         const SimulationOptions &opt);

// Stitched per-point raster, (rows*n) x (cols*n) row-major; global row 0 is the
// southern edge. Interior cells are NaN.
std::vector<double> stitch_raster(const AreaResult &area);

// CSV raster, one line per row, NaN token for interior cells. Lossless round-trip
// with import_heatmap for data written by export_heatmap.
void export_heatmap(const std::vector<double> &raster, int n_rows, int n_cols,
                    const std::string &path);
std::vector<double> import_heatmap(const std::string &path, int &n_rows, int &n_cols);

// Per-segment results file (JSON array); the modelfit input format. Empty
// segments serialize their undefined statistics as null.
void write_segment_results(const AreaResult &area, const std::string &path);

struct SegmentRecord
{
    int row = 0;
    int col = 0;
    double mu = 0.0;
    double h_avg_m = 0.0;
    double theta_elev_deg = 0.0;
    double azimuth_deg = 0.0;
    double mean_pl_db = 0.0;
    double baseline_pl_db = 0.0;
    double excess_loss_db = 0.0;
    double los_fraction = 0.0;
    bool empty = false;
};

std::vector<SegmentRecord> read_segment_results(const std::string &path);

// Combined simulation config file: LinkBudgetConfig fields at the top level,
// optional "tracer" object for TracerConfig.
void load_sim_config(const std::string &path, LinkBudgetConfig &link, TracerConfig &tracer);

} // namespace s2gsim

#endif
