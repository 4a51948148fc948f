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

#include "s2gsim/propagation.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "s2gsim/errors.hpp"

namespace s2gsim
{

void LinkBudgetConfig::validate() const
{
    if (!(f_c_ghz > 0.0))
        throw validation_error("carrier frequency must be positive");
    if (rain_loss_db < 0.0 || cloud_loss_db < 0.0)
        throw validation_error("rain/cloud losses must be non-negative");
    if (glass_fraction < 0.0 || concrete_fraction < 0.0)
        throw validation_error("material fractions must be non-negative");
    if (std::abs(glass_fraction + concrete_fraction - 1.0) > 1e-9)
        throw validation_error("material fractions must sum to 1");
    if (wall_factor < 0.0)
        throw validation_error("wall factor must be non-negative");
    if (!(deep_fade_cap_db > 0.0))
        throw validation_error("deep fade cap must be positive");
}

double free_space_loss_db(double f_c_ghz, double d_km)
{
    // 92.45 with f in GHz and d in km; 20 dB per decade in both.
    if (!(f_c_ghz > 0.0))
        throw validation_error("frequency must be positive");
    if (!(d_km > 0.0))
        throw validation_error("distance must be positive");
    return 92.45 + 20.0 * std::log10(f_c_ghz) + 20.0 * std::log10(d_km);
}

double glass_penetration_db(double f_c_ghz) { return 23.0 + 0.3 * f_c_ghz; }

double concrete_penetration_db(double f_c_ghz) { return 5.0 + 4.0 * f_c_ghz; }

double wall_loss_from_materials_db(double glass_db, double concrete_db, double glass_fraction,
                                   double concrete_fraction, double wall_factor)
{
    const double transmittance = glass_fraction * std::pow(10.0, -glass_db / 10.0) +
                                 concrete_fraction * std::pow(10.0, -concrete_db / 10.0);
    return wall_factor * (5.0 - 10.0 * std::log10(transmittance));
}

double wall_loss_db(double f_c_ghz, const LinkBudgetConfig &cfg)
{
    if (!(f_c_ghz > 0.0))
        throw validation_error("frequency must be positive");
    return wall_loss_from_materials_db(glass_penetration_db(f_c_ghz),
                                       concrete_penetration_db(f_c_ghz), cfg.glass_fraction,
                                       cfg.concrete_fraction, cfg.wall_factor);
}

double scenario_loss_db(double ray_db, double wall_db)
{
    // Transmittances add: energy arrives both around and through the obstruction.
    // 10^(-inf/10) = 0, so +inf sentinels fall out naturally.
    const double t = std::pow(10.0, -ray_db / 10.0) + std::pow(10.0, -wall_db / 10.0);
    if (t <= 0.0)
        return std::numeric_limits<double>::infinity();
    return -10.0 * std::log10(t);
}

PathLossBreakdown total_path_loss(double free_space_db, const LinkBudgetConfig &cfg, bool los,
                                  double ray_db)
{
    PathLossBreakdown b;
    b.los = los;
    b.free_space_db = free_space_db;
    b.rain_db = cfg.rain_loss_db;
    b.cloud_db = cfg.cloud_loss_db;
    b.wall_db = wall_loss_db(cfg.f_c_ghz, cfg);
    if (los)
    {
        b.ray_db = 0.0;
        b.scenario_db = 0.0;
    }
    else
    {
        b.ray_db = ray_db;
        b.scenario_db = scenario_loss_db(ray_db, b.wall_db);
    }
    b.total_db = b.free_space_db + b.rain_db + b.cloud_db + b.scenario_db;
    return b;
}

LinkBudgetConfig load_link_budget_config(const std::string &path)
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
    LinkBudgetConfig cfg;
    try
    {
        if (j.contains("f_c_ghz"))
            cfg.f_c_ghz = j["f_c_ghz"].get<double>();
        if (j.contains("rain_loss_db"))
            cfg.rain_loss_db = j["rain_loss_db"].get<double>();
        if (j.contains("cloud_loss_db"))
            cfg.cloud_loss_db = j["cloud_loss_db"].get<double>();
        if (j.contains("glass_fraction"))
            cfg.glass_fraction = j["glass_fraction"].get<double>();
        if (j.contains("concrete_fraction"))
            cfg.concrete_fraction = j["concrete_fraction"].get<double>();
        if (j.contains("wall_factor"))
            cfg.wall_factor = j["wall_factor"].get<double>();
        if (j.contains("deep_fade_cap_db"))
            cfg.deep_fade_cap_db = j["deep_fade_cap_db"].get<double>();
    }
    catch (const nlohmann::json::exception &e)
    {
        throw validation_error(std::string("bad config field type: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::string link_budget_config_to_json(const LinkBudgetConfig &cfg)
{
    nlohmann::ordered_json j;
    j["f_c_ghz"] = cfg.f_c_ghz;
    j["rain_loss_db"] = cfg.rain_loss_db;
    j["cloud_loss_db"] = cfg.cloud_loss_db;
    j["glass_fraction"] = cfg.glass_fraction;
    j["concrete_fraction"] = cfg.concrete_fraction;
    j["wall_factor"] = cfg.wall_factor;
    j["deep_fade_cap_db"] = cfg.deep_fade_cap_db;
    return j.dump(2) + "\n";
}

} // namespace s2gsim
