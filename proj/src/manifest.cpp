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

#include "s2gsim/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "s2gsim/errors.hpp"

namespace s2gsim
{

void write_manifest(const RunManifest &m, const std::string &path)
{
    nlohmann::ordered_json j;
    j["tool"] = m.tool;
    j["command"] = m.command;
    j["scene"] = m.scene_path;
    j["config"] = m.config_path;
    j["satellite"] = {{"altitude_km", m.sat.altitude_km},
                      {"elevation_deg", m.sat.elevation_deg},
                      {"azimuth_deg", m.sat.azimuth_deg}};
    j["out_dir"] = m.out_dir;
    j["seed"] = m.seed;
    j["seg_size_deg"] = m.seg_size_deg;
    j["mesh_n"] = m.mesh_n;
    j["rx_height_m"] = m.rx_height_m;
    j["linear_domain_average"] = m.linear_domain_average;
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open output file: " + path);
    out << j.dump(2) << '\n';
    if (!out)
        throw io_error("write failure on " + path);
}

RunManifest read_manifest(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open manifest: " + path);
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw io_error("manifest parse failure in " + path + ": " + e.what());
    }
    RunManifest m;
    try
    {
        m.tool = j.at("tool").get<std::string>();
        m.command = j.at("command").get<std::string>();
        m.scene_path = j.value("scene", "");
        m.config_path = j.value("config", "");
        if (j.contains("satellite"))
        {
            m.sat.altitude_km = j["satellite"].value("altitude_km", 550.0);
            m.sat.elevation_deg = j["satellite"].value("elevation_deg", 90.0);
            m.sat.azimuth_deg = j["satellite"].value("azimuth_deg", 180.0);
        }
        m.out_dir = j.value("out_dir", "");
        m.seed = j.value("seed", std::uint64_t{0});
        m.seg_size_deg = j.value("seg_size_deg", 0.0);
        m.mesh_n = j.value("mesh_n", 0);
        m.rx_height_m = j.value("rx_height_m", 0.0);
        m.linear_domain_average = j.value("linear_domain_average", false);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw validation_error(std::string("bad manifest field: ") + e.what());
    }
    return m;
}

} // namespace s2gsim
