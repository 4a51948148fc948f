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

#ifndef S2GSIM_MANIFEST_HPP
#define S2GSIM_MANIFEST_HPP

#include <cstdint>
#include <string>

#include "s2gsim/satgeom.hpp"

namespace s2gsim
{

inline constexpr const char *tool_version = "s2gsim 0.1.0";

// Written alongside every output directory so any artifact can be reproduced
// from its manifest alone.
struct RunManifest
{
    std::string tool = tool_version;
    std::string command;
    std::string scene_path;
    std::string config_path;
    SatelliteGeometry sat;
    std::string out_dir;
    std::uint64_t seed = 0;
    double seg_size_deg = 0.0;
    int mesh_n = 0;
    double rx_height_m = 0.0;
    bool linear_domain_average = false;
};

void write_manifest(const RunManifest &m, const std::string &path);
RunManifest read_manifest(const std::string &path);

} // namespace s2gsim

#endif
