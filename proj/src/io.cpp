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

#include "dfrc/io.hpp"

#include "dfrc/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace dfrc
{
using nlohmann::json;

PatternGrid ExperimentConfig::grid() const
{
    return PatternGrid::sector(mainlobe_min_deg, mainlobe_max_deg, guard_deg, design_step_deg);
}

double ExperimentConfig::theta_c() const
{
    return theta_c_deg ? deg2rad(*theta_c_deg) : maximal_spread_angle(geometry());
}

PhaseProfile ExperimentConfig::profile() const
{
    if (phase_profile == "aperture-center")
        return PhaseProfile::ApertureCenter;
    if (phase_profile == "constant")
        return PhaseProfile::Constant;
    throw ConfigError("phase_profile must be 'aperture-center' or 'constant'");
}

void ExperimentConfig::validate() const
{
    auto need = [](bool ok, const std::string& what) {
        if (!ok)
            throw ConfigError(what);
    };
    need(M >= 2, "geometry.M must be >= 2");
    need(spacing > 0.0, "geometry.spacing_wavelengths must be positive");
    need(N >= 1, "receive.N must be >= 1");
    need(rx_spacing > 0.0, "receive.spacing_wavelengths must be positive");
    need(K >= 1 && K <= M, "K must satisfy 1 <= K <= M");
    need(bits_per_symbol >= 1, "bits_per_symbol must be >= 1");
    need(!theta_c_deg || std::abs(*theta_c_deg) <= 90.0, "theta_c_deg must lie within +-90");
    need(dictionary_mode == "radar" || dictionary_mode == "comm" || dictionary_mode == "comm-scp"
             || dictionary_mode == "hybrid" || dictionary_mode == "regularized",
         "dictionary.mode must be radar, comm, comm-scp, hybrid or regularized");
    need(dictionary_size >= 2, "dictionary.size must be >= 2");
    need(mainlobe_min_deg < mainlobe_max_deg && mainlobe_min_deg >= -90.0 && mainlobe_max_deg <= 90.0,
         "mainlobe must satisfy -90 <= min_deg < max_deg <= 90");
    need(guard_deg >= 0.0, "mainlobe.guard_deg must be non-negative");
    need(design_step_deg > 0.0 && report_step_deg > 0.0, "grid steps must be positive");
    need(std::isfinite(sidelobe_db), "sidelobe_db must be finite");
    need(!snr_grid_db.empty(), "snr_grid_db must be non-empty");
    for (double s : snr_grid_db)
        need(!std::isnan(s), "snr_grid_db entries must be numbers");
    need(num_symbols >= 1, "num_symbols must be >= 1");
    need(prf_hz > 0.0, "prf_hz must be positive");
    need(!sigma_grid_deg.empty(), "sigma_grid_deg must be non-empty");
    for (double s : sigma_grid_deg)
        need(s >= 0.0 && std::isfinite(s), "sigma_grid_deg entries must be non-negative");
    need(trials >= 1 && symbols_per_trial >= 1, "trials and symbols_per_trial must be >= 1");
    need(alpha != std::complex<double>(0.0, 0.0), "channel gain must be nonzero");
    need(phase_profile == "aperture-center" || phase_profile == "constant",
         "phase_profile must be 'aperture-center' or 'constant'");
    if (scheme == Scheme::Regularized)
        need(M == 2 * K, "regularized scheme needs M = 2K");
}

namespace
{
void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    if (!obj.is_object())
        throw ConfigError(where + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where)
{
    if (!obj.contains(key))
        return;
    try
    {
        out = obj.at(key).get<T>();
    }
    catch (const json::exception&)
    {
        throw ConfigError(where + "." + key + " has the wrong type");
    }
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text)
{
    json j;
    try
    {
        j = json::parse(json_text);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError(std::string("malformed config JSON: ") + e.what());
    }
    check_keys(j,
               {"geometry", "receive", "K", "scheme", "bits_per_symbol", "theta_c_deg", "dictionary", "mainlobe",
                "sidelobe_db", "phase_profile", "grid", "snr_grid_db", "num_symbols", "seed", "prf_hz",
                "sigma_grid_deg", "trials", "symbols_per_trial", "robustness_snr_db", "channel"},
               "config");
    ExperimentConfig c;
    if (j.contains("geometry"))
    {
        const json& g = j["geometry"];
        check_keys(g, {"M", "spacing_wavelengths"}, "geometry");
        read(g, "M", c.M, "geometry");
        read(g, "spacing_wavelengths", c.spacing, "geometry");
    }
    if (j.contains("receive"))
    {
        const json& r = j["receive"];
        check_keys(r, {"N", "spacing_wavelengths"}, "receive");
        read(r, "N", c.N, "receive");
        read(r, "spacing_wavelengths", c.rx_spacing, "receive");
    }
    c.K = c.M / 2;
    read(j, "K", c.K, "config");
    if (j.contains("scheme"))
    {
        std::string s;
        read(j, "scheme", s, "config");
        try
        {
            c.scheme = parse_scheme(s);
        }
        catch (const std::invalid_argument& e)
        {
            throw ConfigError(e.what());
        }
    }
    read(j, "bits_per_symbol", c.bits_per_symbol, "config");
    if (j.contains("theta_c_deg") && !j["theta_c_deg"].is_null())
    {
        double t = 0.0;
        read(j, "theta_c_deg", t, "config");
        c.theta_c_deg = t;
    }
    if (j.contains("dictionary"))
    {
        const json& d = j["dictionary"];
        check_keys(d, {"mode", "size", "path"}, "dictionary");
        read(d, "mode", c.dictionary_mode, "dictionary");
        read(d, "size", c.dictionary_size, "dictionary");
        read(d, "path", c.dictionary_path, "dictionary");
    }
    if (j.contains("mainlobe"))
    {
        const json& m = j["mainlobe"];
        check_keys(m, {"min_deg", "max_deg", "guard_deg"}, "mainlobe");
        read(m, "min_deg", c.mainlobe_min_deg, "mainlobe");
        read(m, "max_deg", c.mainlobe_max_deg, "mainlobe");
        read(m, "guard_deg", c.guard_deg, "mainlobe");
    }
    if (j.contains("grid"))
    {
        const json& g = j["grid"];
        check_keys(g, {"design_step_deg", "report_step_deg"}, "grid");
        read(g, "design_step_deg", c.design_step_deg, "grid");
        read(g, "report_step_deg", c.report_step_deg, "grid");
    }
    read(j, "sidelobe_db", c.sidelobe_db, "config");
    read(j, "phase_profile", c.phase_profile, "config");
    read(j, "snr_grid_db", c.snr_grid_db, "config");
    read(j, "num_symbols", c.num_symbols, "config");
    read(j, "seed", c.seed, "config");
    read(j, "prf_hz", c.prf_hz, "config");
    read(j, "sigma_grid_deg", c.sigma_grid_deg, "config");
    read(j, "trials", c.trials, "config");
    read(j, "symbols_per_trial", c.symbols_per_trial, "config");
    read(j, "robustness_snr_db", c.robustness_snr_db, "config");
    if (j.contains("channel"))
    {
        const json& ch = j["channel"];
        check_keys(ch, {"alpha_re", "alpha_im"}, "channel");
        double re = 1.0;
        double im = 0.0;
        read(ch, "alpha_re", re, "channel");
        read(ch, "alpha_im", im, "channel");
        c.alpha = {re, im};
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dictionary_to_json(const SymbolDictionary& dict)
{
    json entries = json::array();
    for (const Codeword& cw : dict.entries)
    {
        json e;
        e["bit_index"] = cw.bit_index;
        e["indices"] = cw.sub.indices();
        e["perm"] = cw.perm ? json(cw.perm->indices()) : json(nullptr);
        std::vector<double> re(static_cast<std::size_t>(cw.vector.size()));
        std::vector<double> im(re.size());
        for (Eigen::Index k = 0; k < cw.vector.size(); ++k)
        {
            re[static_cast<std::size_t>(k)] = cw.vector(k).real();
            im[static_cast<std::size_t>(k)] = cw.vector(k).imag();
        }
        e["vector_re"] = re;
        e["vector_im"] = im;
        entries.push_back(std::move(e));
    }
    json doc;
    doc["format"] = "dfrc-dictionary";
    doc["version"] = 1;
    doc["scheme"] = to_string(dict.scheme);
    doc["M"] = dict.M;
    doc["K"] = dict.K;
    doc["Nb"] = dict.Nb;
    doc["entries"] = std::move(entries);
    return doc.dump(1) + "\n";
}

SymbolDictionary dictionary_from_json(const std::string& json_text)
{
    try
    {
        const json doc = json::parse(json_text);
        if (doc.value("format", "") != "dfrc-dictionary")
            throw ConfigError("not a dfrc-dictionary document");
        if (doc.value("version", 0) != 1)
            throw ConfigError("unsupported dictionary version");
        SymbolDictionary dict;
        dict.scheme = parse_scheme(doc.at("scheme").get<std::string>());
        dict.M = doc.at("M").get<int>();
        dict.K = doc.at("K").get<int>();
        dict.Nb = doc.at("Nb").get<int>();
        for (const json& e : doc.at("entries"))
        {
            Codeword cw;
            cw.bit_index = e.at("bit_index").get<std::uint64_t>();
            cw.sub = Subarray(e.at("indices").get<std::vector<int>>());
            if (!e.at("perm").is_null())
                cw.perm = PermutationMatrix(e.at("perm").get<std::vector<int>>());
            const auto re = e.at("vector_re").get<std::vector<double>>();
            const auto im = e.at("vector_im").get<std::vector<double>>();
            if (re.size() != im.size())
                throw ConfigError("dictionary entry vector parts differ in length");
            cw.vector.resize(static_cast<Eigen::Index>(re.size()));
            for (std::size_t k = 0; k < re.size(); ++k)
                cw.vector(static_cast<Eigen::Index>(k)) = {re[k], im[k]};
            dict.entries.push_back(std::move(cw));
        }
        dict.validate();
        return dict;
    }
    catch (const json::exception& e)
    {
        throw ConfigError(std::string("malformed dictionary JSON: ") + e.what());
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(std::string("invalid dictionary: ") + e.what());
    }
    catch (const std::out_of_range& e)
    {
        throw ConfigError(std::string("invalid dictionary: ") + e.what());
    }
}

void save_dictionary(const SymbolDictionary& dict, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write dictionary file '" + path + "'");
    out << dictionary_to_json(dict);
}

SymbolDictionary load_dictionary(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open dictionary file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return dictionary_from_json(ss.str());
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string format_rate(std::uint64_t events, std::uint64_t trials, double rate)
{
    if (events == 0 && trials > 0)
        return "<" + format_double(1.0 / static_cast<double>(trials));
    return format_double(rate);
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void CsvWriter::row(const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i)
    {
        if (i)
            out_ << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n\r") == std::string::npos)
        {
            out_ << f;
            continue;
        }
        out_ << '"';
        for (char ch : f)
        {
            if (ch == '"')
                out_ << '"';
            out_ << ch;
        }
        out_ << '"';
    }
    out_ << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepResult& result)
{
    CsvWriter csv(out);
    csv.comment("snr_db is the per-branch matched-filter SNR |alpha|^2/sigma^2; zero-error rates are printed as <1/n");
    csv.row({"scheme", "bits", "snr_db", "symbols", "symbol_errors", "ser", "ber", "theory_bound"});
    for (const SweepPoint& p : result.points)
        csv.row({to_string(result.scheme), std::to_string(result.bits), format_double(p.x), std::to_string(p.symbols),
                 std::to_string(p.symbol_errors), format_rate(p.symbol_errors, p.symbols, p.ser),
                 format_rate(p.bit_errors, p.symbols * static_cast<std::uint64_t>(result.bits), p.ber),
                 format_double(p.theory_bound)});
}

void write_robustness_csv(std::ostream& out, const SweepResult& result, double snr_db)
{
    CsvWriter csv(out);
    csv.comment("snr_db is the per-branch matched-filter SNR |alpha|^2/sigma^2; zero-error rates are printed as <1/n");
    csv.row({"scheme", "bits", "sigma_deg", "snr_db", "symbols", "symbol_errors", "ser", "ber"});
    for (const SweepPoint& p : result.points)
        csv.row({to_string(result.scheme), std::to_string(result.bits), format_double(p.x), format_double(snr_db),
                 std::to_string(p.symbols), std::to_string(p.symbol_errors),
                 format_rate(p.symbol_errors, p.symbols, p.ser),
                 format_rate(p.bit_errors, p.symbols * static_cast<std::uint64_t>(result.bits), p.ber)});
}

void write_stats_csv(std::ostream& out, const SymbolDictionary& dict, const DistanceStats& stats)
{
    CsvWriter csv(out);
    csv.row({"symbol", "bit_index", "d_min", "d_max"});
    for (std::size_t i = 0; i < dict.size(); ++i)
        csv.row({std::to_string(i), std::to_string(dict.entries[i].bit_index), format_double(stats.d_min[i]),
                 format_double(stats.d_max[i])});
}

} // namespace dfrc
