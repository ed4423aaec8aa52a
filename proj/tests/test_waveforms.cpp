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

#include "dfrc/waveforms.hpp"

#include <doctest.h>

using namespace dfrc;

TEST_CASE("waveform bank is orthonormal")
{
    for (int Ns : {8, 13, 64})
    {
        const auto bank = build_waveform_bank<double>(8, Ns);
        const CMatrixXd G = bank.gram();
        CHECK((G - CMatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(build_waveform_bank<double>(9, 8), std::invalid_argument);
}

TEST_CASE("matched filter recovers synthesized coefficients")
{
    const auto bank = build_waveform_bank<double>(6, 24);
    CVectorXd c(6);
    c << std::complex<double>(1, 2), -0.5, std::complex<double>(0, -3), 2, std::complex<double>(0.25, 0.75), -1;
    const CVectorXd s = synthesize(c, bank);
    CHECK(s.size() == 24);
    CHECK((matched_filter(s, bank) - c).norm() < 1e-12);
    CHECK_THROWS_AS(matched_filter(CVectorXd::Zero(5), bank), std::invalid_argument);
}

TEST_CASE("rotated bank stays orthonormal and carries the rotation")
{
    const auto bank = build_waveform_bank<double>(4, 16);
    CVectorXd r(4);
    r << std::polar(1.0, 0.3), std::polar(1.0, -2.0), 1.0, std::polar(1.0, 3.1);
    const auto rot = rotate_bank(bank, r);
    CHECK((rot.gram() - CMatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

    CVectorXd c = CVectorXd::Ones(4);
    // Received through the rotated bank, filtered with the plain bank.
    CHECK((matched_filter(synthesize(c, rot), bank) - r).norm() < 1e-12);

    CVectorXd bad = r;
    bad(0) *= 2.0;
    CHECK_THROWS_AS(rotate_bank(bank, bad), std::invalid_argument);
}

TEST_CASE("large sample counts keep exact phases")
{
    const auto bank = build_waveform_bank<double>(3, 4096);
    const double scale = 1.0 / std::sqrt(4096.0);
    // Entry (2, 2048): phase -2 pi * 4096 / 4096 reduces to zero.
    CHECK(std::abs(bank.samples(2, 2048) - std::complex<double>(scale, 0.0)) < 1e-15);
}
