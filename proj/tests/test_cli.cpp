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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "s2gsim/gridsim.hpp"
#include "s2gsim/modelfit.hpp"
#include "s2gsim/scene.hpp"

namespace fs = std::filesystem;

namespace
{

const std::string bin = S2GSIM_BIN;

int run(const std::string &args)
{
    const std::string cmd = bin + " " + args + " >cli_tmp/stdout.txt 2>cli_tmp/stderr.txt";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const std::string &path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TmpDir
{
    TmpDir()
    {
        fs::remove_all("cli_tmp");
        fs::create_directories("cli_tmp");
    }
    ~TmpDir() { fs::remove_all("cli_tmp"); }
};

} // namespace

TEST_CASE("end-to-end command pipeline")
{
    TmpDir tmp;

    // Deterministic synthetic scene generation.
    const std::string gen = "gen-synthetic --bbox 0 0.01 0 0.01 --mu 0.3 --seed 7";
    CHECK(run(gen + " --out cli_tmp/scene.json") == 0);
    CHECK(run(gen + " --out cli_tmp/scene2.json") == 0);
    CHECK(slurp("cli_tmp/scene.json") == slurp("cli_tmp/scene2.json"));
    CHECK(fs::exists("cli_tmp/scene.json.manifest.json"));

    const s2gsim::Scene scene = s2gsim::load_scene("cli_tmp/scene.json");
    CHECK(scene.buildings.size() > 100);

    // Density/height statistics per segment.
    CHECK(run("scene-stats --scene cli_tmp/scene.json --out cli_tmp/stats.json") == 0);
    const std::string stats = slurp("cli_tmp/stats.json");
    CHECK(stats.find("\"rows\": 2") != std::string::npos);
    CHECK(stats.find("\"cols\": 2") != std::string::npos);
    CHECK(stats.find("\"mu\": 0.3") != std::string::npos);

    // Keep the image search local so the smoke run stays fast.
    {
        std::ofstream cfg("cli_tmp/cfg.json");
        cfg << R"({"tracer": {"max_image_distance_m": 150.0}})";
    }

    const std::string sim_base = "simulate --scene cli_tmp/scene.json --config cli_tmp/cfg.json "
                                 "--azimuth-deg 135 --mesh-n 5";
    CHECK(run(sim_base + " --elev-deg 40 --out cli_tmp/sim40") == 0);
    CHECK(fs::exists("cli_tmp/sim40/results.json"));
    CHECK(fs::exists("cli_tmp/sim40/heatmap.csv"));
    CHECK(fs::exists("cli_tmp/sim40/manifest.json"));

    const auto records = s2gsim::read_segment_results("cli_tmp/sim40/results.json");
    CHECK(records.size() == 4);
    for (const auto &r : records)
    {
        CHECK(r.theta_elev_deg == 40.0);
        CHECK(r.azimuth_deg == 135.0);
        CHECK(r.excess_loss_db >= 0.0);
    }

    // Identical invocations produce identical bytes.
    CHECK(run(sim_base + " --elev-deg 40 --out cli_tmp/sim40b") == 0);
    CHECK(slurp("cli_tmp/sim40/results.json") == slurp("cli_tmp/sim40b/results.json"));
    CHECK(slurp("cli_tmp/sim40/heatmap.csv") == slurp("cli_tmp/sim40b/heatmap.csv"));

    // Two more elevations for a fit across sweeps.
    CHECK(run(sim_base + " --elev-deg 30 --out cli_tmp/sim30") == 0);
    CHECK(run(sim_base + " --elev-deg 60 --out cli_tmp/sim60") == 0);

    const std::string results = "--results cli_tmp/sim30/results.json "
                                "--results cli_tmp/sim40/results.json "
                                "--results cli_tmp/sim60/results.json";
    CHECK(run("fit " + results + " --kind elevation --out cli_tmp/model.json") == 0);
    const s2gsim::ModelFile mf = s2gsim::read_model("cli_tmp/model.json");
    CHECK(mf.model.kind == s2gsim::ModelKind::elevation);
    CHECK(mf.model.n_points == 12);
    CHECK(mf.model.a1 < 0.0); // loss falls with rising elevation

    // Cohort filtering: a wide window keeps all rows, a disjoint one keeps none.
    CHECK(run("fit " + results +
              " --kind elevation --filter theta_elev_deg=45:100 --out cli_tmp/m2.json") == 0);
    CHECK(run("fit " + results +
              " --kind elevation --filter theta_elev_deg=10:1 --out cli_tmp/m3.json") == 1);
    CHECK(run("fit " + results + " --kind elevation --filter bogus --out cli_tmp/m4.json") == 1);

    // Model evaluation prints the value.
    CHECK(run("eval --model cli_tmp/model.json --x 40") == 0);
    const std::string out = slurp("cli_tmp/stdout.txt");
    CHECK(!out.empty());
    CHECK(std::atof(out.c_str()) != 0.0);
}

TEST_CASE("failure exit codes")
{
    TmpDir tmp;

    // Unreadable input file.
    CHECK(run("scene-stats --scene cli_tmp/nope.json") == 2);
    CHECK(run("simulate --scene cli_tmp/nope.json --out cli_tmp/simx") == 2);

    // Invalid arguments and infeasible generation parameters.
    CHECK(run("frobnicate") == 1);
    CHECK(run("gen-synthetic --bbox 0 0.01 0 0.01 --mu 0.9 --out cli_tmp/s.json") == 1);
    CHECK(run("gen-synthetic --bbox 0 0.01 0 0.01 --mu -0.2 --out cli_tmp/s.json") == 1);

    CHECK(run("gen-synthetic --bbox 0 0.01 0 0.01 --mu 0.2 --out cli_tmp/s.json") == 0);
    CHECK(run("simulate --scene cli_tmp/s.json --mesh-n 0 --out cli_tmp/simy") == 1);

    // Missing results file vs unknown model kind.
    CHECK(run("fit --results cli_tmp/none.json --kind elevation --out cli_tmp/m.json") == 2);
    CHECK(run("fit --results cli_tmp/none.json --kind banana --out cli_tmp/m.json") == 1);

    // Help is not an error.
    CHECK(run("--help") == 0);
    CHECK(run("simulate --help") == 0);
}
