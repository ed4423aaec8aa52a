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

#ifndef DFRC_WAVEFORMS_HPP
#define DFRC_WAVEFORMS_HPP

#include "dfrc/array.hpp"

namespace dfrc
{
// K orthonormal fast-time waveforms sampled at Ns points; row k is waveform k.
template <typename Scalar = double>
struct WaveformBank
{
    CMatrix<Scalar> samples;

    int K() const { return static_cast<int>(samples.rows()); }
    int Ns() const { return static_cast<int>(samples.cols()); }

    CMatrix<Scalar> gram() const { return samples * samples.adjoint(); }
};

// First K rows of the unitary DFT over Ns points.
template <typename Scalar = double>
WaveformBank<Scalar> build_waveform_bank(int K, int Ns)
{
    if (K < 1 || Ns < K)
        throw std::invalid_argument("build_waveform_bank: need 1 <= K <= Ns");
    WaveformBank<Scalar> bank;
    bank.samples.resize(K, Ns);
    const Scalar scale = Scalar(1) / std::sqrt(Scalar(Ns));
    for (int k = 0; k < K; ++k)
        for (int n = 0; n < Ns; ++n)
        {
            // Reduce k*n modulo Ns before scaling so large products stay exact.
            const long long kn = (static_cast<long long>(k) * n) % Ns;
            bank.samples(k, n) = scale * unit_phasor(-two_pi<Scalar> * Scalar(kn) / Scalar(Ns));
        }
    return bank;
}

// Fast-time signal whose matched-filter output is `coefficients` (c^T Psi).
template <typename Scalar, typename Derived>
CVector<Scalar> synthesize(const Eigen::MatrixBase<Derived>& coefficients, const WaveformBank<Scalar>& bank)
{
    if (coefficients.size() != bank.K())
        throw std::invalid_argument("synthesize: coefficient count does not match bank");
    return bank.samples.transpose() * coefficients;
}

// Branch k is <received, Psi_k>.
template <typename Scalar, typename Derived>
CVector<Scalar> matched_filter(const Eigen::MatrixBase<Derived>& received, const WaveformBank<Scalar>& bank)
{
    if (received.size() != bank.Ns())
        throw std::invalid_argument("matched_filter: received length does not match bank");
    return bank.samples.conjugate() * received;
}

// diag(rotations) * Psi; orthonormality is preserved for unit-modulus rotations.
template <typename Scalar, typename Derived>
WaveformBank<Scalar> rotate_bank(const WaveformBank<Scalar>& bank, const Eigen::MatrixBase<Derived>& rotations)
{
    if (rotations.size() != bank.K())
        throw std::invalid_argument("rotate_bank: rotation count does not match bank");
    for (Eigen::Index k = 0; k < rotations.size(); ++k)
        if (std::abs(std::abs(rotations(k)) - Scalar(1)) > Scalar(1e-9))
            throw std::invalid_argument("rotate_bank: rotations must be unit modulus");
    WaveformBank<Scalar> out;
    out.samples = rotations.asDiagonal() * bank.samples;
    return out;
}

} // namespace dfrc

#endif
