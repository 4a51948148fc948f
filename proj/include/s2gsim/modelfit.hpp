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
// Logarithmic excess-loss models and their least-squares fits:
//   elevation:      loss = a1 log10(theta) + a2
//   density/height: loss = a1 log10(x + a2) + a3
// All logarithms are base 10.

#ifndef S2GSIM_MODELFIT_HPP
#define S2GSIM_MODELFIT_HPP

#include <string>
#include <utility>
#include <vector>

namespace s2gsim
{

enum class ModelKind
{
    elevation,
    density,
    height
};

const char *model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string &name);

struct LogModel
{
    ModelKind kind = ModelKind::elevation;
    double a1 = 0.0;
    double a2 = 0.0; // intercept for elevation, x-shift for density/height
    double a3 = 0.0; // unused (0) for elevation
    double rmse_db = 0.0;
    double r2 = 0.0;
    int n_points = 0;
};

using XYPoint = std::pair<double, double>; // (x, loss_db)

// Closed-form linear regression on log10(theta). Requires >= 2 points, all
// theta > 0, not all equal.
LogModel fit_elevation(const std::vector<XYPoint> &points);

// Nested fit of the shifted form: bounded 1-D search over a2 (grid scan plus
// golden-section refinement to 1e-6) with closed-form (a1, a3) at each
// candidate. Search domain (-min_x + 1e-9, 10*(max_x - min_x)]; ties resolve to
// the smallest a2. Requires >= 3 points.
LogModel fit_shifted(const std::vector<XYPoint> &points, ModelKind kind);

// Shifted fit with a2 pinned: plain linear LS for (a1, a3).
LogModel fit_shifted_at(const std::vector<XYPoint> &points, ModelKind kind, double a2);

// Model value at x. Throws validation_error outside the log domain.
double evaluate(const LogModel &model, double x);

// (rmse, r2). r2 = 0 by convention when the data has zero variance.
std::pair<double, double> goodness(const LogModel &model, const std::vector<XYPoint> &points);

struct ModelFile
{
    LogModel model;
    std::string filter; // human-readable description of the cohort filter
};

void write_model(const ModelFile &mf, const std::string &path);
ModelFile read_model(const std::string &path);

} // namespace s2gsim

#endif
