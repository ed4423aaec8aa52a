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

#include "dfrc/parallel.hpp"
#include "dfrc/philox.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

using namespace dfrc;

// Published known-answer vectors for Philox4x32-10.
TEST_CASE("philox known answers")
{
    using C = Philox4x32::Counter;
    CHECK(Philox4x32::generate(C{0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff})
          == C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0})
          == C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are pure functions of their address")
{
    const CounterStream a(42, StreamDomain::Symbols, 3);
    const CounterStream b(42, StreamDomain::Symbols, 3);
    CHECK(a.bits64(1000, 2) == b.bits64(1000, 2));
    CHECK(a.bits64(1000, 2) != a.bits64(1001, 2));
    CHECK(a.bits64(1000, 2) != a.bits64(1000, 3));
    CHECK(a.bits64(1000, 2) != CounterStream(42, StreamDomain::Symbols, 4).bits64(1000, 2));
    CHECK(a.bits64(1000, 2) != CounterStream(42, StreamDomain::Angles, 3).bits64(1000, 2));
    CHECK(a.bits64(1000, 2) != CounterStream(43, StreamDomain::Symbols, 3).bits64(1000, 2));
    // The high seed word enters the key.
    CHECK(a.bits64(7, 0) != CounterStream(42 + (1ull << 32), StreamDomain::Symbols, 3).bits64(7, 0));
}

TEST_CASE("uniforms lie in (0, 1] and normals have unit moments")
{
    const CounterStream s(9, StreamDomain::Symbols, 0);
    const int n = 200000;
    double sum_u = 0.0, sum_re = 0.0, sum_im = 0.0, sum_re2 = 0.0, sum_im2 = 0.0, sum_cross = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const auto u = s.uniform2(static_cast<std::uint64_t>(i), 0);
        REQUIRE(u[0] > 0.0);
        REQUIRE(u[0] <= 1.0);
        REQUIRE(u[1] > 0.0);
        REQUIRE(u[1] <= 1.0);
        sum_u += u[0] + u[1];
        const auto z = s.normal2(static_cast<std::uint64_t>(i), 1);
        sum_re += z.real();
        sum_im += z.imag();
        sum_re2 += z.real() * z.real();
        sum_im2 += z.imag() * z.imag();
        sum_cross += z.real() * z.imag();
    }
    // Tolerances are 5 standard errors.
    CHECK(std::abs(sum_u / (2.0 * n) - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / (2.0 * n)));
    const double se_mean = 5.0 / std::sqrt(n);
    CHECK(std::abs(sum_re / n) < se_mean);
    CHECK(std::abs(sum_im / n) < se_mean);
    const double se_var = 5.0 * std::sqrt(2.0 / n);
    CHECK(std::abs(sum_re2 / n - 1.0) < se_var);
    CHECK(std::abs(sum_im2 / n - 1.0) < se_var);
    CHECK(std::abs(sum_cross / n) < se_mean);
}

TEST_CASE("parallel_for visits every index once and rethrows")
{
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits)
        CHECK(h.load() == 1);

    CHECK_THROWS_AS(parallel_for(100, 3,
                                 [](std::size_t i) {
                                     if (i == 17)
                                         throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    parallel_for(0, 4, [](std::size_t) { FAIL("no tasks expected"); });
}

TEST_CASE("worker resolution")
{
    CHECK(resolve_workers(3) == 3);
    ::setenv("DFRC_THREADS", "5", 1);
    CHECK(resolve_workers(0) == 5);
    ::setenv("DFRC_THREADS", "junk", 1);
    CHECK(resolve_workers(0) >= 1);
    ::unsetenv("DFRC_THREADS");
    CHECK(resolve_workers(0) >= 1);
}
