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

#ifndef S2GSIM_FORMAT_HPP
#define S2GSIM_FORMAT_HPP

#include <string>

namespace s2gsim
{

// All floating-point file output uses 6 significant digits so that
// export -> import -> export round-trips are byte-stable.

// "%.6g" rendering; NaN renders as the literal token "NaN".
std::string format_g6(double v);

// Value after a round-trip through format_g6. Idempotent.
double snap_g6(double v);

} // namespace s2gsim

#endif
