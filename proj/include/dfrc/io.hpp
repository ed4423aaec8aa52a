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

#ifndef DFRC_IO_HPP
#define DFRC_IO_HPP

#include "dfrc/dictionary.hpp"
#include "dfrc/simulator.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dfrc
{
// Experiment configuration (JSON). Angles in degrees, levels in dB.
struct ExperimentConfig
{
    int M = 16;
    double spacing = 0.25;
    int N = 10;
    double rx_spacing = 0.5;
    int K = 8;
    Scheme scheme = Scheme::Selection;
    int bits_per_symbol = 8;
    std::optional<double> theta_c_deg; // default: maximal spread angle
    std::string dictionary_mode = "radar";
    std::size_t dictionary_size = 256;
    std::string dictionary_path;
    double mainlobe_min_deg = -10.0;
    double mainlobe_max_deg = 10.0;
    double guard_deg = 2.0;
    double design_step_deg = 0.5;
    double report_step_deg = 0.1;
    double sidelobe_db = -20.0;
    std::string phase_profile = "aperture-center";
    std::vector<double> snr_grid_db{-20, -18, -16, -14, -12, -10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    std::uint64_t num_symbols = 1'000'000;
    std::uint64_t seed = 1;
    double prf_hz = 1.0e4;
    std::vector<double> sigma_grid_deg{1, 2, 3, 4, 5};
    std::uint64_t trials = 500;
    std::uint64_t symbols_per_trial = 1000;
    double robustness_snr_db = 10.0;
    std::complex<double> alpha{1.0, 0.0};

    ArrayGeometry<double> geometry() const { return {M, spacing}; }
    ReceiveArray<double> receive() const { return ReceiveArray<double>::uniform(N, rx_spacing); }
    PatternGrid grid() const;
    double sidelobe_eps() const { return db_to_linear(sidelobe_db); }
    double theta_c() const;
    PhaseProfile profile() const;

    // Throws ConfigError on any inconsistent field.
    void validate() const;
};

// Unknown keys and type mismatches raise ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

std::string dictionary_to_json(const SymbolDictionary& dict);
SymbolDictionary dictionary_from_json(const std::string& json_text);
void save_dictionary(const SymbolDictionary& dict, const std::string& path);
SymbolDictionary load_dictionary(const std::string& path);

// printf %.9g.
std::string format_double(double v);
// "<x" with x = 1/n when no events were observed.
std::string format_rate(std::uint64_t events, std::uint64_t trials, double rate);

// RFC 4180 row writer with \n line endings.
class CsvWriter
{
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void comment(const std::string& text);
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_robustness_csv(std::ostream& out, const SweepResult& result, double snr_db);
void write_stats_csv(std::ostream& out, const SymbolDictionary& dict, const DistanceStats& stats);

} // namespace dfrc

#endif
