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

#ifndef S2GSIM_ERRORS_HPP
#define S2GSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace s2gsim
{

// Error categories map 1:1 onto CLI exit codes (1/2/3).
class validation_error : public std::runtime_error
{
public:
    explicit validation_error(const std::string &msg) : std::runtime_error(msg) {}
};

class io_error : public std::runtime_error
{
public:
    explicit io_error(const std::string &msg) : std::runtime_error(msg) {}
};

class numeric_error : public std::runtime_error
{
public:
    explicit numeric_error(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace s2gsim

#endif
