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

// dfrc: dictionary construction, Monte Carlo sweeps, beampatterns and
// closed-form rate curves.
//
//   dfrc build-dict --mode radar --size 256 --out dict.json --stats stats.csv
//   dfrc simulate --config ex1.json --snr -20:2:20 --bits 1 --out ser.csv
//   dfrc robustness --config ex3.json --sigma 1,2,3,4,5 --out robust.csv
//   dfrc pattern --dict dict.json --codewords 0,1 --out pattern.csv
//   dfrc rates --scheme regularized --K 8 --snr -10:1:10
//
// Exit status: 0 success, 2 configuration or usage error, 3 infeasible design.

#include "dfrc/dictionary.hpp"
#include "dfrc/errors.hpp"
#include "dfrc/io.hpp"
#include "dfrc/parallel.hpp"
#include "dfrc/pattern.hpp"
#include "dfrc/signaling.hpp"
#include "dfrc/simulator.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace
{
using namespace dfrc;

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

// Options shared by every subcommand; unset flags leave the config untouched.
struct Overrides
{
    std::string config_path;
    std::string out = "-";
    int threads = 0;

    int M = 0;
    double spacing = 0.0;
    int N = 0;
    int K = 0;
    std::string scheme;
    int bits = 0;
    double theta_c_deg = 0.0;
    std::string mode;
    std::size_t size = 0;
    std::string dict_path;
    double sidelobe_db = 0.0;
    std::string profile;
    std::uint64_t seed = 0;

    CLI::Option* o_M = nullptr;
    CLI::Option* o_spacing = nullptr;
    CLI::Option* o_N = nullptr;
    CLI::Option* o_K = nullptr;
    CLI::Option* o_scheme = nullptr;
    CLI::Option* o_bits = nullptr;
    CLI::Option* o_theta = nullptr;
    CLI::Option* o_mode = nullptr;
    CLI::Option* o_size = nullptr;
    CLI::Option* o_dict = nullptr;
    CLI::Option* o_sidelobe = nullptr;
    CLI::Option* o_profile = nullptr;
    CLI::Option* o_seed = nullptr;
};

void add_common(CLI::App* app, Overrides& ov)
{
    app->add_option("--config", ov.config_path, "JSON experiment configuration");
    app->add_option("--out", ov.out, "output file ('-' for stdout)");
    app->add_option("--threads", ov.threads, "worker threads (0 = auto)")->check(CLI::NonNegativeNumber);
    ov.o_M = app->add_option("--M", ov.M, "candidate transmit antennas");
    ov.o_spacing = app->add_option("--spacing", ov.spacing, "transmit spacing in wavelengths");
    ov.o_N = app->add_option("--N", ov.N, "receive antennas");
    ov.o_K = app->add_option("--K", ov.K, "active transmit antennas");
    ov.o_scheme = app->add_option("--scheme", ov.scheme, "selection | hybrid | regularized");
    ov.o_bits = app->add_option("--bits", ov.bits, "information bits per symbol");
    ov.o_theta = app->add_option("--theta-c", ov.theta_c_deg, "communication direction in degrees");
    ov.o_mode = app->add_option("--mode", ov.mode, "dictionary: radar | comm | comm-scp | hybrid | regularized");
    ov.o_size = app->add_option("--size", ov.size, "dictionary size (power of two)");
    ov.o_dict = app->add_option("--dict", ov.dict_path, "load the dictionary from JSON instead of building it");
    ov.o_sidelobe = app->add_option("--sidelobe-db", ov.sidelobe_db, "sidelobe ceiling in dB");
    ov.o_profile = app->add_option("--phase-profile", ov.profile, "aperture-center | constant");
    ov.o_seed = app->add_option("--seed", ov.seed, "64-bit seed");
}

ExperimentConfig resolve_config(const Overrides& ov)
{
    ExperimentConfig cfg = ov.config_path.empty() ? ExperimentConfig{} : load_config(ov.config_path);
    if (ov.o_M->count())
        cfg.M = ov.M;
    if (ov.o_spacing->count())
        cfg.spacing = ov.spacing;
    if (ov.o_N->count())
        cfg.N = ov.N;
    if (ov.o_K->count())
        cfg.K = ov.K;
    if (ov.o_scheme->count())
    {
        try
        {
            cfg.scheme = parse_scheme(ov.scheme);
        }
        catch (const std::invalid_argument& e)
        {
            throw ConfigError(e.what());
        }
    }
    if (ov.o_bits->count())
        cfg.bits_per_symbol = ov.bits;
    if (ov.o_theta->count())
        cfg.theta_c_deg = ov.theta_c_deg;
    if (ov.o_mode->count())
        cfg.dictionary_mode = ov.mode;
    if (ov.o_size->count())
        cfg.dictionary_size = ov.size;
    if (ov.o_dict->count())
        cfg.dictionary_path = ov.dict_path;
    if (ov.o_sidelobe->count())
        cfg.sidelobe_db = ov.sidelobe_db;
    if (ov.o_profile->count())
        cfg.phase_profile = ov.profile;
    if (ov.o_seed->count())
        cfg.seed = ov.seed;
    // The hybrid and regularized modes fix the scheme.
    if (cfg.dictionary_mode == "hybrid")
        cfg.scheme = Scheme::Hybrid;
    else if (cfg.dictionary_mode == "regularized")
        cfg.scheme = Scheme::Regularized;
    cfg.validate();
    return cfg;
}

SymbolDictionary base_dictionary(const ExperimentConfig& cfg, int workers)
{
    const std::string& mode = cfg.dictionary_mode;
    if (mode == "comm" || mode == "hybrid")
        return greedy_maxmin_dictionary(cfg.M, cfg.K, cfg.dictionary_size);
    if (mode == "comm-scp")
    {
        CommScpOptions o;
        o.seed = cfg.seed;
        return scp_comm_dictionary(cfg.M, cfg.K, cfg.dictionary_size, 4, o);
    }
    RadarRankingOptions ro;
    ro.design.profile = cfg.profile();
    ro.report_step_deg = cfg.report_step_deg;
    ro.workers = workers;
    return build_radar_dictionary_by_enumeration(cfg.geometry(), cfg.K, cfg.dictionary_size, cfg.receive(),
                                                 cfg.grid(), cfg.sidelobe_eps(), ro);
}

SymbolDictionary build_dictionary(const ExperimentConfig& cfg, int workers)
{
    if (!cfg.dictionary_path.empty())
        return load_dictionary(cfg.dictionary_path);
    if (cfg.scheme == Scheme::Regularized)
        return build_regularized_dictionary(cfg.K);
    SymbolDictionary base = base_dictionary(cfg, workers);
    if (cfg.scheme == Scheme::Hybrid)
        return permute_augment(base);
    return base;
}

SchemeConfig scheme_config(const ExperimentConfig& cfg, int workers)
{
    auto dict = std::make_shared<const SymbolDictionary>(build_dictionary(cfg, workers));
    if (dict->M != cfg.M || dict->K != cfg.K)
        throw ConfigError("dictionary geometry (M, K) does not match the configuration");
    try
    {
        return SchemeConfig(dict, cfg.geometry(), cfg.theta_c(), cfg.bits_per_symbol, cfg.prf_hz);
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(e.what());
    }
}

// "a:step:b" inclusive, or a single value.
std::vector<double> parse_range(const std::string& text)
{
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':'))
    {
        try
        {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        }
        catch (const std::exception&)
        {
            throw ConfigError("malformed range '" + text + "'");
        }
    }
    if (parts.size() == 1)
        return parts;
    if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0])
        throw ConfigError("range must be a:step:b with step > 0 and b >= a");
    std::vector<double> out;
    const auto n = static_cast<long long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
    for (long long i = 0; i <= n; ++i)
        out.push_back(parts[0] + static_cast<double>(i) * parts[1]);
    return out;
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            out.push_back(std::stod(item));
        }
        catch (const std::exception&)
        {
            throw ConfigError("malformed list '" + text + "'");
        }
    }
    if (out.empty())
        throw ConfigError("empty list");
    return out;
}

// Writes to stdout for "-"; otherwise to the named file.
template <typename Writer>
void emit(const std::string& path, Writer&& write)
{
    if (path == "-")
    {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot open '" + path + "' for writing");
    write(f);
    if (!f)
        throw std::runtime_error("write to '" + path + "' failed");
}

int cmd_build_dict(const Overrides& ov, const std::string& stats_path)
{
    const ExperimentConfig cfg = resolve_config(ov);
    const int workers = resolve_workers(ov.threads);
    const SymbolDictionary dict = build_dictionary(cfg, workers);
    const DistanceStats stats = distance_stats(dict);
    const std::string out = ov.out == "-" ? "dictionary.json" : ov.out;
    save_dictionary(dict, out);
    emit(stats_path, [&](std::ostream& os) { write_stats_csv(os, dict, stats); });
    std::fprintf(stderr, "%s dictionary: %zu codewords, d_min %.6f, d_max %.6f -> %s\n",
                 to_string(dict.scheme).c_str(), dict.size(), stats.global_min, stats.global_max, out.c_str());
    return 0;
}

int cmd_simulate(const Overrides& ov, const std::string& snr, std::uint64_t symbols, int timedomain)
{
    ExperimentConfig cfg = resolve_config(ov);
    if (!snr.empty())
        cfg.snr_grid_db = parse_range(snr);
    if (symbols > 0)
        cfg.num_symbols = symbols;
    const int workers = resolve_workers(ov.threads);
    const SchemeConfig scheme = scheme_config(cfg, workers);

    MonteCarloConfig mc;
    mc.snr_grid_db = cfg.snr_grid_db;
    mc.num_symbols = cfg.num_symbols;
    mc.seed = cfg.seed;
    mc.workers = workers;
    // timedomain < 0: off; 0: default length 4K.
    mc.time_domain_samples = timedomain < 0 ? 0 : (timedomain == 0 ? 4 * cfg.K : timedomain);
    const SweepResult res = run_ser_sweep(scheme, mc, ChannelModel{cfg.alpha, 0.0});
    emit(ov.out, [&](std::ostream& os) { write_sweep_csv(os, res); });
    return 0;
}

int cmd_robustness(const Overrides& ov, const std::string& sigma, std::uint64_t trials, std::uint64_t spt,
                   const CLI::Option* snr_opt, double snr_db)
{
    ExperimentConfig cfg = resolve_config(ov);
    if (!sigma.empty())
        cfg.sigma_grid_deg = parse_list(sigma);
    if (trials > 0)
        cfg.trials = trials;
    if (spt > 0)
        cfg.symbols_per_trial = spt;
    if (snr_opt->count())
        cfg.robustness_snr_db = snr_db;
    cfg.validate();
    const int workers = resolve_workers(ov.threads);
    const SchemeConfig scheme = scheme_config(cfg, workers);

    RobustnessConfig rc;
    rc.sigma_deg = cfg.sigma_grid_deg;
    rc.trials = cfg.trials;
    rc.symbols_per_trial = cfg.symbols_per_trial;
    rc.seed = cfg.seed;
    rc.workers = workers;
    const SweepResult res
        = run_angle_robustness(scheme, rc, ChannelModel::from_snr_db(cfg.robustness_snr_db, cfg.alpha));
    emit(ov.out, [&](std::ostream& os) { write_robustness_csv(os, res, cfg.robustness_snr_db); });
    return 0;
}

int cmd_pattern(const Overrides& ov, const std::string& codewords)
{
    const ExperimentConfig cfg = resolve_config(ov);
    const int workers = resolve_workers(ov.threads);
    const SymbolDictionary dict = build_dictionary(cfg, workers);
    std::vector<std::size_t> picks;
    if (codewords.empty())
        for (std::size_t i = 0; i < dict.size(); ++i)
            picks.push_back(i);
    else
        for (double v : parse_list(codewords))
        {
            if (v < 0.0 || v != std::floor(v) || v >= static_cast<double>(dict.size()))
                throw ConfigError("codeword index out of range");
            picks.push_back(static_cast<std::size_t>(v));
        }

    const auto geometry = cfg.geometry();
    const auto receive = cfg.receive();
    const PatternGrid grid = cfg.grid();
    const std::vector<double> angles = angle_grid(cfg.report_step_deg);
    MinimaxOptions mo;
    mo.profile = cfg.profile();

    std::vector<std::vector<double>> gains(picks.size());
    parallel_for(picks.size(), workers, [&](std::size_t i) {
        const Subarray& sub = dict.entries[picks[i]].sub;
        const MinimaxDesign d = design_minimax_weights(sub, geometry, receive, grid, cfg.sidelobe_eps(), mo);
        if (!d.feasible)
            throw InfeasibleError("codeword " + std::to_string(picks[i]) + ": minimax design infeasible");
        gains[i] = beampattern(d.w, sub, geometry, receive, angles);
    });

    emit(ov.out, [&](std::ostream& os) {
        CsvWriter csv(os);
        csv.comment("minimax weights; gain_db relative to the pattern peak");
        csv.row({"codeword", "theta_deg", "gain_linear", "gain_db"});
        for (std::size_t i = 0; i < picks.size(); ++i)
        {
            const std::vector<double> db = normalized_db(gains[i]);
            for (std::size_t a = 0; a < angles.size(); ++a)
                csv.row({std::to_string(picks[i]), format_double(rad2deg(angles[a])), format_double(gains[i][a]),
                         format_double(db[a])});
        }
    });
    return 0;
}

int cmd_rates(const Overrides& ov, const std::string& snr)
{
    ExperimentConfig cfg = resolve_config(ov);
    if (!snr.empty())
        cfg.snr_grid_db = parse_range(snr);
    const int bits = ov.o_bits->count() ? cfg.bits_per_symbol
                     : cfg.scheme == Scheme::Regularized ? cfg.K
                                                         : bits_per_symbol(cfg.scheme, cfg.M, cfg.K);
    if (cfg.scheme == Scheme::Regularized && (bits > cfg.K || cfg.K % bits != 0))
        throw ConfigError("regularized rates need bits dividing K");

    emit(ov.out, [&](std::ostream& os) {
        CsvWriter csv(os);
        csv.comment("snr_db is the per-branch matched-filter SNR |alpha|^2 / sigma^2");
        csv.row({"snr_db", "scheme", "K", "M", "bits", "ser_bound", "ber_bound", "ber_exact"});
        for (double s : cfg.snr_grid_db)
        {
            const double rho = std::pow(10.0, s / 10.0);
            std::string ser, ber, exact;
            if (cfg.scheme == Scheme::Regularized)
            {
                const ErrorRates r = regularized_subrate_rates(rho, cfg.K, bits);
                ser = format_double(r.ser);
                ber = format_double(r.ber);
                exact = format_double(regularized_ber_exact(rho, cfg.K, bits));
            }
            else
                ser = format_double(selection_ser_bound(rho, cfg.M, cfg.K));
            csv.row({format_double(s), to_string(cfg.scheme), std::to_string(cfg.K), std::to_string(cfg.M),
                     std::to_string(bits), ser, ber, exact});
        }
    });
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dual-function radar-communications with sparse transmit arrays"};
    app.require_subcommand(1);

    Overrides build_ov, sim_ov, rob_ov, pat_ov, rate_ov;

    auto* build = app.add_subcommand("build-dict", "build a symbol dictionary and its distance statistics");
    add_common(build, build_ov);
    std::string stats_path = "dictionary_stats.csv";
    build->add_option("--stats", stats_path, "distance statistics CSV ('-' for stdout)");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo SER/BER sweep over SNR");
    add_common(sim, sim_ov);
    std::string sim_snr;
    std::uint64_t sim_symbols = 0;
    bool timedomain = false;
    int samples = 0;
    sim->add_option("--snr", sim_snr, "SNR grid a:step:b in dB");
    sim->add_option("--symbols", sim_symbols, "symbols per SNR point");
    sim->add_flag("--timedomain", timedomain, "synthesise waveforms and matched-filter instead of injecting noise at the filter output");
    sim->add_option("--samples", samples, "fast-time samples per pulse with --timedomain (default 4K)")
        ->check(CLI::PositiveNumber);

    auto* rob = app.add_subcommand("robustness", "SER under communication angle error");
    add_common(rob, rob_ov);
    std::string rob_sigma;
    std::uint64_t rob_trials = 0;
    std::uint64_t rob_spt = 0;
    double rob_snr = 0.0;
    rob->add_option("--sigma", rob_sigma, "comma-separated angle-error standard deviations in degrees");
    rob->add_option("--trials", rob_trials, "Monte Carlo trials per sigma");
    rob->add_option("--symbols-per-trial", rob_spt, "symbols per trial");
    CLI::Option* rob_snr_opt = rob->add_option("--snr", rob_snr, "operating SNR in dB");

    auto* pat = app.add_subcommand("pattern", "minimax beampatterns of dictionary codewords");
    add_common(pat, pat_ov);
    std::string pat_codewords;
    pat->add_option("--codewords", pat_codewords, "comma-separated codeword indices (default all)");

    auto* rate = app.add_subcommand("rates", "closed-form error-rate curves");
    add_common(rate, rate_ov);
    std::string rate_snr;
    rate->add_option("--snr", rate_snr, "SNR grid a:step:b in dB");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kExitConfig;
    }

    try
    {
        if (*build)
            return cmd_build_dict(build_ov, stats_path);
        if (*sim)
            return cmd_simulate(sim_ov, sim_snr, sim_symbols, timedomain ? std::max(samples, 0) : -1);
        if (*rob)
            return cmd_robustness(rob_ov, rob_sigma, rob_trials, rob_spt, rob_snr_opt, rob_snr);
        if (*pat)
            return cmd_pattern(pat_ov, pat_codewords);
        if (*rate)
            return cmd_rates(rate_ov, rate_snr);
    }
    catch (const ConfigError& e)
    {
        std::fprintf(stderr, "dfrc: config error: %s\n", e.what());
        return kExitConfig;
    }
    catch (const InfeasibleError& e)
    {
        std::fprintf(stderr, "dfrc: infeasible: %s\n", e.what());
        return kExitInfeasible;
    }
    catch (const std::invalid_argument& e)
    {
        std::fprintf(stderr, "dfrc: invalid argument: %s\n", e.what());
        return kExitConfig;
    }
    catch (const std::exception& e)
    {
        std::fprintf(stderr, "dfrc: error: %s\n", e.what());
        return 1;
    }
    return 0;
}
