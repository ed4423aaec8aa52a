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

#ifndef DFRC_SIMULATOR_HPP
#define DFRC_SIMULATOR_HPP

#include "dfrc/signaling.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace dfrc
{
// rho = |alpha|^2 / noise_var with noise_var the complex variance per branch.
struct ChannelModel
{
    std::complex<double> alpha{1.0, 0.0};
    double noise_var = 0.0;

    double snr() const;
    // +inf dB gives a noiseless channel.
    static ChannelModel from_snr_db(double snr_db, std::complex<double> alpha = {1.0, 0.0});
};

inline constexpr std::uint64_t kSymbolBatch = 4096;

struct MonteCarloConfig
{
    std::vector<double> snr_grid_db;
    std::uint64_t num_symbols = 1'000'000;
    std::uint64_t seed = 1;
    int workers = 0;
    // Route through waveform synthesis and matched filtering with this many
    // fast-time samples per pulse (0 = inject noise at the filter output).
    int time_domain_samples = 0;
};

struct SweepPoint
{
    double x = 0.0;
    std::uint64_t symbols = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t bit_errors = 0;
    double ser = 0.0;
    double ber = 0.0;
    double theory_bound = 0.0;
};

struct SweepResult
{
    Scheme scheme = Scheme::Selection;
    int bits = 0;
    std::vector<SweepPoint> points;
};

// Seeded SER/BER sweep; the noise for symbol i at grid point p depends only on
// (seed, p, i), so results do not depend on the worker count.
SweepResult run_ser_sweep(const SchemeConfig& cfg, const MonteCarloConfig& mc, const ChannelModel& channel = {});

struct RobustnessConfig
{
    std::vector<double> sigma_deg{1.0, 2.0, 3.0, 4.0, 5.0};
    std::uint64_t trials = 500;
    std::uint64_t symbols_per_trial = 1000;
    std::uint64_t seed = 1;
    int workers = 0;
};

// Per sigma and trial the true direction is theta_c + sigma * N(0, 1); the
// transmitter and receiver keep using theta_c. Symbol index t * spt + j keeps
// sigma = 0 identical to a one-point sweep at the channel's SNR.
SweepResult run_angle_robustness(const SchemeConfig& cfg, const RobustnessConfig& rc, const ChannelModel& channel);

// bits_per_symbol(scheme, M, K) * prf.
double data_rate(const SchemeConfig& cfg);

} // namespace dfrc

#endif
