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
// Closed-form link-budget terms and their composition.
//
// Total path loss of a satellite-to-ground link:
//     PL = L_fs + L_rain + L_cloud + L_scen
// where L_scen (diffraction/reflection against through-wall penetration,
// combined in the linear power domain) applies only to blocked receivers.

#ifndef S2GSIM_PROPAGATION_HPP
#define S2GSIM_PROPAGATION_HPP

#include <string>

namespace s2gsim
{

struct LinkBudgetConfig
{
    double f_c_ghz = 3.4;          // carrier frequency
    double rain_loss_db = 0.0;     // scalar attenuation term; 0 = clear sky
    double cloud_loss_db = 0.0;
    double glass_fraction = 0.7;   // facade material mix; fractions sum to 1
    double concrete_fraction = 0.3;
    double wall_factor = 2.0;      // wall loss = factor * O2I penetration loss
    double deep_fade_cap_db = 240.0;

    void validate() const; // throws validation_error
};

struct PathLossBreakdown
{
    double free_space_db = 0.0;
    double rain_db = 0.0;
    double cloud_db = 0.0;
    double ray_db = 0.0;      // multipath loss relative to free space; +inf = no rays
    double wall_db = 0.0;
    double scenario_db = 0.0; // 0 for LoS receivers
    double total_db = 0.0;
    bool los = false;
};

// 92.45 + 20 log10(f[GHz]) + 20 log10(d[km]).
double free_space_loss_db(double f_c_ghz, double d_km);

// Material O2I penetration models, dB, f in GHz.
double glass_penetration_db(double f_c_ghz);    // 23 + 0.3 f
double concrete_penetration_db(double f_c_ghz); // 5 + 4 f

// factor * (5 - 10 log10(g_frac 10^(-Lg/10) + c_frac 10^(-Lc/10)))
double wall_loss_from_materials_db(double glass_db, double concrete_db, double glass_fraction,
                                   double concrete_fraction, double wall_factor);
double wall_loss_db(double f_c_ghz, const LinkBudgetConfig &cfg);

// Parallel combination in the linear power domain:
// -10 log10(10^(-ray/10) + 10^(-wall/10)). Accepts +inf sentinels.
double scenario_loss_db(double ray_db, double wall_db);

PathLossBreakdown total_path_loss(double free_space_db, const LinkBudgetConfig &cfg, bool los,
                                  double ray_db);

// JSON config mirroring LinkBudgetConfig field-for-field; absent fields keep defaults.
LinkBudgetConfig load_link_budget_config(const std::string &path);
std::string link_budget_config_to_json(const LinkBudgetConfig &cfg);

} // namespace s2gsim

#endif
