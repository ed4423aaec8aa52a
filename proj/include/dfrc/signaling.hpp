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

#ifndef DFRC_SIGNALING_HPP
#define DFRC_SIGNALING_HPP

#include "dfrc/array.hpp"
#include "dfrc/dictionary.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace dfrc
{
// Bits are MSB first: bits[0] is the most significant bit of the message value.
using BitBlock = std::vector<std::uint8_t>;

BitBlock bits_from_value(std::uint64_t value, int nbits);
std::uint64_t value_from_bits(const BitBlock& bits);

// floor(log2 C(M,K)), floor(log2(C(M,K) K!)) or K.
int bits_per_symbol(Scheme scheme, int M, int K);

// Immutable transmitter/receiver configuration. `active_bits` may be below the
// dictionary capacity: selection and hybrid schemes then use the first
// 2^active_bits codewords, the regularized scheme repeats each information bit
// over K / active_bits consecutive subgroups.
class SchemeConfig
{
public:
    SchemeConfig(std::shared_ptr<const SymbolDictionary> dictionary, const ArrayGeometry<double>& geometry,
                 double theta_c, int active_bits, double prf = 1.0e4, bool phase_rotation = true);

    Scheme scheme() const { return dict_->scheme; }
    const SymbolDictionary& dictionary() const { return *dict_; }
    const ArrayGeometry<double>& geometry() const { return geometry_; }
    double theta_c() const { return theta_c_; }
    int active_bits() const { return active_bits_; }
    double prf() const { return prf_; }
    bool phase_rotation() const { return phase_rotation_; }
    int K() const { return dict_->K; }

    // Number of messages 2^active_bits.
    std::size_t num_messages() const { return entry_of_.size(); }
    // Dictionary entry transmitting message `value`.
    std::size_t entry_of(std::uint64_t value) const { return entry_of_.at(static_cast<std::size_t>(value)); }
    // Receiver reference for message `value` (K x num_messages columns).
    const CMatrixXd& references() const { return references_; }
    // Per-slot rotations of message `value`.
    CVectorXd rotations(std::uint64_t value) const;
    // Subgroups per information bit (regularized scheme).
    int repetition() const { return K() / active_bits_; }

private:
    std::shared_ptr<const SymbolDictionary> dict_;
    ArrayGeometry<double> geometry_;
    double theta_c_;
    int active_bits_;
    double prf_;
    bool phase_rotation_;
    std::vector<std::size_t> entry_of_;
    CMatrixXd references_;
};

struct TransmitSpec
{
    SelectionMatrix selection;
    std::optional<PermutationMatrix> perm;
    CVectorXd rotations;
    std::uint64_t message = 0;

    // Antenna transmitting waveform slot k.
    int antenna(int k) const { return perm ? selection.subarray()[(*perm)[k]] : selection.subarray()[k]; }
};

TransmitSpec encode(const SchemeConfig& cfg, const BitBlock& bits);
TransmitSpec encode_value(const SchemeConfig& cfg, std::uint64_t value);

// alpha * diag(rotations) * (Q P a(theta)) for the configured direction.
CVectorXd comm_observation(const TransmitSpec& spec, const SchemeConfig& cfg, std::complex<double> channel_gain);
// Same at an arbitrary true direction.
CVectorXd comm_observation(const TransmitSpec& spec, const ArrayGeometry<double>& geometry, double theta,
                           std::complex<double> channel_gain);

struct DecodeResult
{
    BitBlock bits;
    std::uint64_t value = 0;
    double distance = 0.0;
    // Second-best minus best squared distance; 0 for a single message.
    double margin = 0.0;
};

// argmin_l ||y / alpha - c_l||^2 over the active messages; ties go to the
// lower message value.
DecodeResult decode_nearest(const SchemeConfig& cfg, const CVectorXd& y, std::complex<double> channel_gain);

// Bit j is 0 iff the summed real part of y / alpha over its subgroups is > 0.
BitBlock decode_regularized(const SchemeConfig& cfg, const CVectorXd& y, std::complex<double> channel_gain);

// erfc(sqrt(rho) sin(gamma / 2)) clamped to [0, 1].
double mpsk_symbol_error(double rho, double gamma);

// 1 - (1 - mpsk_symbol_error(rho, 2 pi / M))^K.
double selection_ser_bound(double rho, int M, int K);

struct ErrorRates
{
    double ber = 0.0;
    double ser = 0.0;
};

// BER = erfc(sqrt(rho)), SER = 1 - (1 - BER)^K.
ErrorRates regularized_error_rates(double rho, int K);

// Sub-rate form: each of `bits` bits is carried by K / bits subgroups, which
// adds their energy: BER = erfc(sqrt(K rho / bits)).
ErrorRates regularized_subrate_rates(double rho, int K, int bits);

// Exact antipodal detection error 0.5 erfc(sqrt(K rho / bits)).
double regularized_ber_exact(double rho, int K, int bits);

// Closed-form SER bound for the configured scheme and rate.
double theory_ser_bound(const SchemeConfig& cfg, double rho);

} // namespace dfrc

#endif
