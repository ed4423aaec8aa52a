// SPDX-License-Identifier: Apache-2.0
//
// dfrc-sparse: dual-function radar-communications via sparse transmit arrays
// Copyright (C) 2026 The dfrc-sparse Authors
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

#ifndef DFRC_ERRORS_HPP
#define DFRC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dfrc
{
// Malformed configuration or command-line input.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A requested design or dictionary cannot meet its constraints.
class InfeasibleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace dfrc

#endif
