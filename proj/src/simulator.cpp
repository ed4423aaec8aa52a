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

#include "dfrc/simulator.hpp"

#include "dfrc/parallel.hpp"
#include "dfrc/philox.hpp"
#include "dfrc/waveforms.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dfrc
{
double ChannelModel::snr() const
{
    return noise_var > 0.0 ? std::norm(alpha) / noise_var : std::numeric_limits<double>::infinity();
}

ChannelModel ChannelModel::from_snr_db(double snr_db, std::complex<double> alpha)
{
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
        throw std::invalid_argument("ChannelModel: invalid SNR");
    if (alpha == std::complex<double>(0.0, 0.0))
        throw std::invalid_argument("ChannelModel: zero channel gain");
    ChannelModel ch;
    ch.alpha = alpha;
    ch.noise_var = std::isinf(snr_db) ? 0.0 : std::norm(alpha) / std::pow(10.0, snr_db / 10.0);
    return ch;
}

double data_rate(const SchemeConfig& cfg)
{
    return bits_per_symbol(cfg.scheme(), cfg.geometry().M, cfg.K()) * cfg.prf();
}

namespace
{
struct Counts
{
    std::uint64_t symbols = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t bit_errors = 0;
};

// Shared read-only state of one simulation.
class Kernel
{
public:
    Kernel(const SchemeConfig& cfg, std::complex<double> alpha, int time_domain_samples)
        : cfg_(cfg), alpha_(alpha), mask_((std::uint64_t{1} << cfg.active_bits()) - 1)
    {
        ref_re_ = cfg.references().real();
        ref_im_ = cfg.references().imag();
        if (time_domain_samples > 0)
            bank_ = build_waveform_bank<double>(cfg.K(), time_domain_samples);
    }

    // Noiseless observations of every message at direction theta (K x L).
    CMatrixXd templates(double theta) const
    {
        CMatrixXd t(cfg_.K(), static_cast<Eigen::Index>(cfg_.num_messages()));
        for (std::size_t v = 0; v < cfg_.num_messages(); ++v)
            t.col(static_cast<Eigen::Index>(v)) = comm_observation(encode_value(cfg_, v), cfg_.geometry(), theta, alpha_);
        return t;
    }

    Counts run(const CMatrixXd& tx, const CounterStream& stream, std::uint64_t first, std::uint64_t count,
               double noise_var) const
    {
        const int K = cfg_.K();
        const auto B = static_cast<Eigen::Index>(count);
        const double scale = std::sqrt(noise_var / 2.0);
        Eigen::MatrixXd ar(K, B);
        Eigen::MatrixXd ai(K, B);
        std::vector<std::uint64_t> sent(static_cast<std::size_t>(count));
        CVectorXd y(K);
        for (Eigen::Index b = 0; b < B; ++b)
        {
            const std::uint64_t i = first + static_cast<std::uint64_t>(b);
            const std::uint64_t v = stream.bits64(i, 0) & mask_;
            sent[static_cast<std::size_t>(b)] = v;
            if (bank_.K() > 0)
            {
                CVectorXd s = synthesize(tx.col(static_cast<Eigen::Index>(v)), bank_);
                for (int n = 0; n < bank_.Ns(); ++n)
                    s(n) += scale * stream.normal2(i, 1u + static_cast<std::uint32_t>(n));
                y = matched_filter(s, bank_);
            }
            else
            {
                for (int k = 0; k < K; ++k)
                    y(k) = tx(k, static_cast<Eigen::Index>(v)) + scale * stream.normal2(i, 1u + static_cast<std::uint32_t>(k));
            }
            y /= alpha_;
            ar.col(b) = y.real();
            ai.col(b) = y.imag();
        }

        Counts c;
        c.symbols = count;
        if (cfg_.scheme() == Scheme::Regularized)
        {
            const int r = cfg_.repetition();
            const int bits = cfg_.active_bits();
            for (Eigen::Index b = 0; b < B; ++b)
            {
                std::uint64_t v = 0;
                for (int j = 0; j < bits; ++j)
                {
                    const double acc = ar.col(b).segment(j * r, r).sum();
                    v = (v << 1) | (acc > 0.0 ? 0u : 1u);
                }
                tally(c, sent[static_cast<std::size_t>(b)], v);
            }
            return c;
        }
        // Equal-norm codewords: nearest <=> largest Re(c^H a).
        const Eigen::MatrixXd score = ref_re_.transpose() * ar + ref_im_.transpose() * ai;
        for (Eigen::Index b = 0; b < B; ++b)
        {
            Eigen::Index best = 0;
            score.col(b).maxCoeff(&best);
            tally(c, sent[static_cast<std::size_t>(b)], static_cast<std::uint64_t>(best));
        }
        return c;
    }

private:
    static void tally(Counts& c, std::uint64_t sent, std::uint64_t got)
    {
        if (sent != got)
        {
            ++c.symbol_errors;
            c.bit_errors += static_cast<std::uint64_t>(std::popcount(sent ^ got));
        }
    }

    const SchemeConfig& cfg_;
    std::complex<double> alpha_;
    std::uint64_t mask_;
    Eigen::MatrixXd ref_re_;
    Eigen::MatrixXd ref_im_;
    WaveformBank<double> bank_;
};

SweepPoint finish_point(double x, const Counts& c, int bits, double bound)
{
    SweepPoint p;
    p.x = x;
    p.symbols = c.symbols;
    p.symbol_errors = c.symbol_errors;
    p.bit_errors = c.bit_errors;
    p.ser = c.symbols ? static_cast<double>(c.symbol_errors) / static_cast<double>(c.symbols) : 0.0;
    p.ber = c.symbols ? static_cast<double>(c.bit_errors) / (static_cast<double>(c.symbols) * bits) : 0.0;
    p.theory_bound = bound;
    return p;
}

} // namespace

SweepResult run_ser_sweep(const SchemeConfig& cfg, const MonteCarloConfig& mc, const ChannelModel& channel)
{
    if (mc.snr_grid_db.empty())
        throw std::invalid_argument("run_ser_sweep: empty SNR grid");
    if (mc.num_symbols < 1)
        throw std::invalid_argument("run_ser_sweep: need at least one symbol");
    if (mc.time_domain_samples < 0 || (mc.time_domain_samples > 0 && mc.time_domain_samples < cfg.K()))
        throw std::invalid_argument("run_ser_sweep: time-domain samples must be 0 or >= K");
    std::vector<ChannelModel> points;
    for (double snr : mc.snr_grid_db)
        points.push_back(ChannelModel::from_snr_db(snr, channel.alpha));

    const Kernel kernel(cfg, channel.alpha, mc.time_domain_samples);
    const CMatrixXd tx = kernel.templates(cfg.theta_c());
    const std::uint64_t batches = (mc.num_symbols + kSymbolBatch - 1) / kSymbolBatch;
    const std::size_t tasks = points.size() * static_cast<std::size_t>(batches);
    std::vector<Counts> counts(tasks);
    parallel_for(tasks, resolve_workers(mc.workers), [&](std::size_t t) {
        const std::size_t p = t / static_cast<std::size_t>(batches);
        const std::uint64_t b = t % batches;
        const std::uint64_t first = b * kSymbolBatch;
        const std::uint64_t count = std::min(kSymbolBatch, mc.num_symbols - first);
        const CounterStream stream(mc.seed, StreamDomain::Symbols, static_cast<std::uint32_t>(p));
        counts[t] = kernel.run(tx, stream, first, count, points[p].noise_var);
    });

    SweepResult res;
    res.scheme = cfg.scheme();
    res.bits = cfg.active_bits();
    for (std::size_t p = 0; p < points.size(); ++p)
    {
        Counts sum;
        for (std::uint64_t b = 0; b < batches; ++b)
        {
            const Counts& c = counts[p * static_cast<std::size_t>(batches) + static_cast<std::size_t>(b)];
            sum.symbols += c.symbols;
            sum.symbol_errors += c.symbol_errors;
            sum.bit_errors += c.bit_errors;
        }
        res.points.push_back(finish_point(mc.snr_grid_db[p], sum, res.bits, theory_ser_bound(cfg, points[p].snr())));
    }
    return res;
}

SweepResult run_angle_robustness(const SchemeConfig& cfg, const RobustnessConfig& rc, const ChannelModel& channel)
{
    if (rc.sigma_deg.empty())
        throw std::invalid_argument("run_angle_robustness: empty sigma grid");
    for (double s : rc.sigma_deg)
        if (!(s >= 0.0) || !std::isfinite(s))
            throw std::invalid_argument("run_angle_robustness: sigma must be finite and non-negative");
    if (rc.trials < 1 || rc.symbols_per_trial < 1)
        throw std::invalid_argument("run_angle_robustness: need at least one trial and symbol");
    if (channel.alpha == std::complex<double>(0.0, 0.0) || channel.noise_var < 0.0)
        throw std::invalid_argument("run_angle_robustness: invalid channel");

    const Kernel kernel(cfg, channel.alpha, 0);
    const std::size_t trials = static_cast<std::size_t>(rc.trials);
    const std::size_t tasks = rc.sigma_deg.size() * trials;
    std::vector<Counts> counts(tasks);
    parallel_for(tasks, resolve_workers(rc.workers), [&](std::size_t t) {
        const std::size_t p = t / trials;
        const std::uint64_t trial = t % trials;
        const auto point = static_cast<std::uint32_t>(p);
        const CounterStream angles(rc.seed, StreamDomain::Angles, point);
        const double theta = cfg.theta_c() + deg2rad(rc.sigma_deg[p]) * angles.normal2(trial, 0).real();
        const CMatrixXd tx = kernel.templates(theta);
        const CounterStream symbols(rc.seed, StreamDomain::Symbols, point);
        Counts sum;
        for (std::uint64_t j = 0; j < rc.symbols_per_trial; j += kSymbolBatch)
        {
            const std::uint64_t count = std::min(kSymbolBatch, rc.symbols_per_trial - j);
            const Counts c = kernel.run(tx, symbols, trial * rc.symbols_per_trial + j, count, channel.noise_var);
            sum.symbols += c.symbols;
            sum.symbol_errors += c.symbol_errors;
            sum.bit_errors += c.bit_errors;
        }
        counts[t] = sum;
    });

    SweepResult res;
    res.scheme = cfg.scheme();
    res.bits = cfg.active_bits();
    const double bound = theory_ser_bound(cfg, channel.snr());
    for (std::size_t p = 0; p < rc.sigma_deg.size(); ++p)
    {
        Counts sum;
        for (std::size_t t = 0; t < trials; ++t)
        {
            const Counts& c = counts[p * trials + t];
            sum.symbols += c.symbols;
            sum.symbol_errors += c.symbol_errors;
            sum.bit_errors += c.bit_errors;
        }
        res.points.push_back(finish_point(rc.sigma_deg[p], sum, res.bits, bound));
    }
    return res;
}

} // namespace dfrc
