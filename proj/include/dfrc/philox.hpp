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

#ifndef DFRC_PHILOX_HPP
#define DFRC_PHILOX_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace dfrc
{
// Philox4x32-10 counter-based generator. Every draw is a pure function of
// (key, counter), so streams can be split across threads without state.
class Philox4x32
{
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key)
    {
        for (int round = 0; round < 10; ++round)
        {
            if (round > 0)
            {
                key[0] += kW0;
                key[1] += kW1;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;
};

// Stream tags keep data, noise and angle draws independent under one seed.
enum class StreamDomain : std::uint64_t
{
    Symbols = 0x53594d42ull,
    Angles = 0x414e474cull,
};

// Addressable random stream for one (seed, domain, point) triple. Draw
// `block` of item `index` is a single Philox call.
class CounterStream
{
public:
    CounterStream(std::uint64_t seed, StreamDomain domain, std::uint32_t point)
        : key_{static_cast<std::uint32_t>(seed ^ static_cast<std::uint64_t>(domain)),
               static_cast<std::uint32_t>(seed >> 32)},
          point_(point)
    {
    }

    Philox4x32::Counter raw(std::uint64_t index, std::uint32_t block) const
    {
        return Philox4x32::generate(
            {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), block, point_}, key_);
    }

    std::uint64_t bits64(std::uint64_t index, std::uint32_t block) const
    {
        const auto r = raw(index, block);
        return (static_cast<std::uint64_t>(r[1]) << 32) | r[0];
    }

    // Two uniforms on (0, 1] from 53-bit mantissas.
    std::array<double, 2> uniform2(std::uint64_t index, std::uint32_t block) const
    {
        const auto r = raw(index, block);
        return {to_unit(r[0], r[1]), to_unit(r[2], r[3])};
    }

    // Standard complex Gaussian pair (Box-Muller): independent N(0,1) components.
    std::complex<double> normal2(std::uint64_t index, std::uint32_t block) const
    {
        const auto u = uniform2(index, block);
        const double radius = std::sqrt(-2.0 * std::log(u[0]));
        const double angle = 2.0 * std::numbers::pi * u[1];
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    static double to_unit(std::uint32_t lo, std::uint32_t hi)
    {
        const std::uint64_t v = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
        return (static_cast<double>(v) + 1.0) * 0x1.0p-53;
    }

    Philox4x32::Key key_;
    std::uint32_t point_;
};

} // namespace dfrc

#endif
