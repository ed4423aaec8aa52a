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

#include "dfrc/signaling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dfrc
{
BitBlock bits_from_value(std::uint64_t value, int nbits)
{
    if (nbits < 0 || nbits > 64)
        throw std::invalid_argument("bits_from_value: need 0 <= nbits <= 64");
    if (nbits < 64 && (value >> nbits) != 0)
        throw std::out_of_range("bits_from_value: value does not fit");
    BitBlock bits(static_cast<std::size_t>(nbits));
    for (int j = 0; j < nbits; ++j)
        bits[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((value >> (nbits - 1 - j)) & 1u);
    return bits;
}

std::uint64_t value_from_bits(const BitBlock& bits)
{
    if (bits.size() > 64)
        throw std::invalid_argument("value_from_bits: more than 64 bits");
    std::uint64_t v = 0;
    for (std::uint8_t b : bits)
    {
        if (b > 1)
            throw std::invalid_argument("value_from_bits: bits must be 0 or 1");
        v = (v << 1) | b;
    }
    return v;
}

int bits_per_symbol(Scheme scheme, int M, int K)
{
    if (K < 1 || K > M)
        throw std::invalid_argument("bits_per_symbol: need 1 <= K <= M");
    switch (scheme)
    {
    case Scheme::Selection:
        return static_cast<int>(std::bit_width(binomial(M, K))) - 1;
    case Scheme::Hybrid:
    {
        unsigned __int128 v = binomial(M, K);
        for (int k = 2; k <= K; ++k)
        {
            v *= static_cast<unsigned>(k);
            if (v >> 120)
                throw std::overflow_error("bits_per_symbol: C(M,K) K! too large");
        }
        int width = 0;
        while (v)
        {
            v >>= 1;
            ++width;
        }
        return width - 1;
    }
    case Scheme::Regularized:
        return K;
    }
    return 0;
}

SchemeConfig::SchemeConfig(std::shared_ptr<const SymbolDictionary> dictionary, const ArrayGeometry<double>& geometry,
                           double theta_c, int active_bits, double prf, bool phase_rotation)
    : dict_(std::move(dictionary)),
      geometry_(geometry),
      theta_c_(theta_c),
      active_bits_(active_bits),
      prf_(prf),
      phase_rotation_(phase_rotation)
{
    if (!dict_)
        throw std::invalid_argument("SchemeConfig: dictionary not built");
    dict_->validate();
    if (dict_->M != geometry.M)
        throw std::invalid_argument("SchemeConfig: dictionary M differs from geometry");
    if (!(std::abs(theta_c) <= std::numbers::pi / 2 + 1e-12))
        throw std::invalid_argument("SchemeConfig: theta_c must lie within +-90 deg");
    if (active_bits < 1 || active_bits > dict_->Nb || active_bits > 30)
        throw std::invalid_argument("SchemeConfig: active bits must be between 1 and the dictionary capacity");
    if (dict_->scheme == Scheme::Regularized && dict_->K % active_bits != 0)
        throw std::invalid_argument("SchemeConfig: regularized active bits must divide K");
    if (!(prf > 0.0))
        throw std::invalid_argument("SchemeConfig: prf must be positive");

    const std::size_t L = std::size_t{1} << active_bits;
    entry_of_.resize(L);
    const int K = dict_->K;
    for (std::size_t v = 0; v < L; ++v)
    {
        if (dict_->scheme == Scheme::Regularized)
        {
            // Replicate message bit j over subgroups j*r .. j*r + r - 1.
            const int r = K / active_bits;
            std::uint64_t pattern = 0;
            for (int k = 0; k < K; ++k)
            {
                const int j = k / r;
                const std::uint64_t bit = (v >> (active_bits - 1 - j)) & 1u;
                pattern = (pattern << 1) | bit;
            }
            entry_of_[v] = static_cast<std::size_t>(pattern);
        }
        else
        {
            entry_of_[v] = v;
        }
    }

    references_.resize(K, static_cast<Eigen::Index>(L));
    for (std::size_t v = 0; v < L; ++v)
    {
        if (phase_rotation_)
            references_.col(static_cast<Eigen::Index>(v)) = dict_->entries[entry_of_[v]].vector;
        else
            references_.col(static_cast<Eigen::Index>(v)) = comm_observation(encode_value(*this, v), *this, 1.0);
    }
    if (broadside_degenerate(theta_c_, phase_rotation_) && dict_->scheme != Scheme::Regularized)
        std::fprintf(stderr, "warning: broadside direction without phase rotation carries no selection information\n");
}

CVectorXd SchemeConfig::rotations(std::uint64_t value) const
{
    const Codeword& cw = dict_->entries[entry_of(value)];
    const int K = dict_->K;
    CVectorXd rot(K);
    const double step = geometry_.phase_step(theta_c_);
    for (int k = 0; k < K; ++k)
    {
        const int m = cw.antenna(k);
        if (dict_->scheme == Scheme::Regularized)
        {
            // Antenna 2k (bit 0) lands on phase 0, antenna 2k+1 (bit 1) on pi.
            const int bit = m - 2 * k;
            rot(k) = unit_phasor(bit * std::numbers::pi - step * m);
        }
        else if (phase_rotation_)
        {
            rot(k) = unit_phasor(two_pi<double> * m / geometry_.M - step * m);
        }
        else
        {
            rot(k) = 1.0;
        }
    }
    return rot;
}

TransmitSpec encode_value(const SchemeConfig& cfg, std::uint64_t value)
{
    if (value >= cfg.num_messages())
        throw std::out_of_range("encode: message value outside the active dictionary");
    const Codeword& cw = cfg.dictionary().entries[cfg.entry_of(value)];
    return TransmitSpec{SelectionMatrix(cw.sub, cfg.geometry().M), cw.perm, cfg.rotations(value), value};
}

TransmitSpec encode(const SchemeConfig& cfg, const BitBlock& bits)
{
    if (static_cast<int>(bits.size()) != cfg.active_bits())
        throw std::invalid_argument("encode: bit block length " + std::to_string(bits.size()) + " differs from "
                                    + std::to_string(cfg.active_bits()));
    return encode_value(cfg, value_from_bits(bits));
}

CVectorXd comm_observation(const TransmitSpec& spec, const ArrayGeometry<double>& geometry, double theta,
                           std::complex<double> channel_gain)
{
    const int K = spec.selection.rows();
    if (spec.rotations.size() != K)
        throw std::invalid_argument("comm_observation: rotation count differs from K");
    const double step = geometry.phase_step(theta);
    CVectorXd y(K);
    for (int k = 0; k < K; ++k)
        y(k) = channel_gain * spec.rotations(k) * unit_phasor(step * spec.antenna(k));
    return y;
}

CVectorXd comm_observation(const TransmitSpec& spec, const SchemeConfig& cfg, std::complex<double> channel_gain)
{
    return comm_observation(spec, cfg.geometry(), cfg.theta_c(), channel_gain);
}

DecodeResult decode_nearest(const SchemeConfig& cfg, const CVectorXd& y, std::complex<double> channel_gain)
{
    if (channel_gain == std::complex<double>(0.0, 0.0))
        throw std::invalid_argument("decode_nearest: zero channel gain");
    if (y.size() != cfg.K())
        throw std::invalid_argument("decode_nearest: observation length differs from K");
    const CVectorXd a = y / channel_gain;
    const CMatrixXd& ref = cfg.references();
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    std::uint64_t arg = 0;
    // Distances within rounding of the running best count as ties and keep
    // the lower message.
    constexpr double kTieTol = 1e-12;
    for (Eigen::Index l = 0; l < ref.cols(); ++l)
    {
        const double d = (a - ref.col(l)).squaredNorm();
        if (l == 0 || d < best - kTieTol * (1.0 + best))
        {
            second = best;
            best = d;
            arg = static_cast<std::uint64_t>(l);
        }
        else if (d < second)
        {
            second = d;
        }
    }
    DecodeResult r;
    r.value = arg;
    r.bits = bits_from_value(arg, cfg.active_bits());
    r.distance = best;
    r.margin = std::isfinite(second) ? std::max(0.0, second - best) : 0.0;
    return r;
}

BitBlock decode_regularized(const SchemeConfig& cfg, const CVectorXd& y, std::complex<double> channel_gain)
{
    if (cfg.scheme() != Scheme::Regularized)
        throw std::invalid_argument("decode_regularized: scheme is not regularized");
    if (channel_gain == std::complex<double>(0.0, 0.0))
        throw std::invalid_argument("decode_regularized: zero channel gain");
    if (y.size() != cfg.K())
        throw std::invalid_argument("decode_regularized: observation length differs from K");
    const int r = cfg.repetition();
    BitBlock bits(static_cast<std::size_t>(cfg.active_bits()));
    for (int j = 0; j < cfg.active_bits(); ++j)
    {
        double acc = 0.0;
        for (int k = j * r; k < (j + 1) * r; ++k)
            acc += std::real(y(k) / channel_gain);
        bits[static_cast<std::size_t>(j)] = acc > 0.0 ? 0 : 1;
    }
    return bits;
}

double mpsk_symbol_error(double rho, double gamma)
{
    if (!(rho >= 0.0))
        throw std::invalid_argument("mpsk_symbol_error: rho must be non-negative");
    if (!(gamma > 0.0 && gamma < two_pi<double>))
        throw std::invalid_argument("mpsk_symbol_error: gamma must lie in (0, 2 pi)");
    return std::clamp(std::erfc(std::sqrt(rho) * std::sin(gamma / 2.0)), 0.0, 1.0);
}

double selection_ser_bound(double rho, int M, int K)
{
    const double q = mpsk_symbol_error(rho, two_pi<double> / M);
    return 1.0 - std::pow(1.0 - q, K);
}

ErrorRates regularized_error_rates(double rho, int K)
{
    if (!(rho >= 0.0))
        throw std::invalid_argument("regularized_error_rates: rho must be non-negative");
    const double ber = std::min(1.0, std::erfc(std::sqrt(rho)));
    return {ber, 1.0 - std::pow(1.0 - ber, K)};
}

ErrorRates regularized_subrate_rates(double rho, int K, int bits)
{
    if (bits < 1 || K % bits != 0)
        throw std::invalid_argument("regularized_subrate_rates: bits must divide K");
    return regularized_error_rates(rho * (K / bits), bits);
}

double regularized_ber_exact(double rho, int K, int bits)
{
    if (bits < 1 || K % bits != 0)
        throw std::invalid_argument("regularized_ber_exact: bits must divide K");
    return 0.5 * std::erfc(std::sqrt(rho * (K / bits)));
}

double theory_ser_bound(const SchemeConfig& cfg, double rho)
{
    if (cfg.scheme() == Scheme::Regularized)
        return regularized_subrate_rates(rho, cfg.K(), cfg.active_bits()).ser;
    return selection_ser_bound(rho, cfg.geometry().M, cfg.K());
}

} // namespace dfrc
