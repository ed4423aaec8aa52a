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


#include "dfrc/errors.hpp"
#include "dfrc/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

using namespace dfrc;

namespace
{
bool same(const SymbolDictionary& a, const SymbolDictionary& b)
{
    if (a.scheme != b.scheme || a.M != b.M || a.K != b.K || a.Nb != b.Nb || a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const Codeword& x = a.entries[i];
        const Codeword& y = b.entries[i];
        if (x.bit_index != y.bit_index || x.sub != y.sub || x.perm != y.perm || x.vector != y.vector)
            return false;
    }
    return true;
}
} // namespace

TEST_CASE("config defaults and overrides")
{
    const ExperimentConfig d = parse_config("{}");
    CHECK(d.M == 16);
    CHECK(d.spacing == 0.25);
    CHECK(d.N == 10);
    CHECK(d.K == 8);
    CHECK(d.scheme == Scheme::Selection);
    CHECK(rad2deg(d.theta_c()) == doctest::Approx(14.4775).epsilon(1e-5));
    CHECK(d.sidelobe_eps() == doctest::Approx(0.1));
    CHECK(d.snr_grid_db.size() == 21);

    const ExperimentConfig c = parse_config(R"({
        "geometry": {"M": 8, "spacing_wavelengths": 0.5},
        "receive": {"N": 4, "spacing_wavelengths": 0.5},
        "scheme": "regularized", "bits_per_symbol": 2, "theta_c_deg": 20,
        "dictionary": {"mode": "comm", "size": 16, "path": "d.json"},
        "mainlobe": {"min_deg": -5, "max_deg": 5, "guard_deg": 1},
        "grid": {"design_step_deg": 1, "report_step_deg": 0.5},
        "sidelobe_db": -15, "phase_profile": "constant", "snr_grid_db": [0, 3],
        "num_symbols": 1000, "seed": 9, "prf_hz": 2000, "sigma_grid_deg": [0, 2],
        "trials": 3, "symbols_per_trial": 10, "robustness_snr_db": 4,
        "channel": {"alpha_re": 0.5, "alpha_im": -0.5}
    })");
    CHECK(c.M == 8);
    CHECK(c.K == 4);
    CHECK(c.scheme == Scheme::Regularized);
    CHECK(c.bits_per_symbol == 2);
    CHECK(rad2deg(c.theta_c()) == doctest::Approx(20.0));
    CHECK(c.dictionary_mode == "comm");
    CHECK(c.dictionary_size == 16);
    CHECK(c.dictionary_path == "d.json");
    CHECK(c.guard_deg == 1.0);
    CHECK(c.report_step_deg == 0.5);
    CHECK(c.profile() == PhaseProfile::Constant);
    CHECK(c.snr_grid_db == std::vector<double>{0.0, 3.0});
    CHECK(c.seed == 9);
    CHECK(c.alpha == std::complex<double>(0.5, -0.5));
    CHECK(c.robustness_snr_db == 4.0);
}

TEST_CASE("config errors")
{
    CHECK_THROWS_AS(parse_config(R"({"num_symbol": 10})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"geometry": {"M": 16, "d": 0.25}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"seed": "one"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scheme": "qam"})"), ConfigError);
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config("[]"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"geometry": {"M": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"mainlobe": {"min_deg": 5, "max_deg": -5}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"prf_hz": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"snr_grid_db": []})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sigma_grid_deg": [-1]})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"phase_profile": "quadratic"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"channel": {"alpha_re": 0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scheme": "regularized", "K": 6})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"dictionary": {"mode": "best"}})"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("example config loads")
{
    const ExperimentConfig c = load_config(DFRC_TEST_DATA_DIR "/ex1.json");
    CHECK(c.bits_per_symbol == 1);
    CHECK(c.num_symbols == 100000);
    CHECK(c.prf_hz == 10000.0);
    CHECK(c.snr_grid_db == std::vector<double>{-20.0, -10.0, 0.0});
    CHECK_THROWS_AS(load_config(DFRC_TEST_DATA_DIR "/bad_key.json"), ConfigError);
}

TEST_CASE("dictionary JSON round trip is exact")
{
    const SymbolDictionary sel = greedy_maxmin_dictionary(8, 4, 16);
    const SymbolDictionary hyb = permute_augment(sel);
    const SymbolDictionary reg = build_regularized_dictionary(4);
    for (const SymbolDictionary* d : {&sel, &hyb, &reg})
    {
        const std::string text = dictionary_to_json(*d);
        CHECK(same(dictionary_from_json(text), *d));
        CHECK(dictionary_to_json(dictionary_from_json(text)) == text);
    }

    const auto path = std::filesystem::temp_directory_path() / "dfrc_test_dictionary.json";
    save_dictionary(hyb, path.string());
    CHECK(same(load_dictionary(path.string()), hyb));
    std::filesystem::remove(path);
}

TEST_CASE("dictionary JSON rejects bad documents")
{
    CHECK_THROWS_AS(dictionary_from_json("not json"), ConfigError);
    CHECK_THROWS_AS(dictionary_from_json(R"({"format": "other", "version": 1})"), ConfigError);
    std::string text = dictionary_to_json(greedy_maxmin_dictionary(8, 4, 4));
    const std::string good = text;
    text.replace(text.find("\"version\": 1"), 12, "\"version\": 2");
    CHECK_THROWS_AS(dictionary_from_json(text), ConfigError);
    text = good;
    text.replace(text.find("\"entries\""), 9, "\"entriez\"");
    CHECK_THROWS_AS(dictionary_from_json(text), ConfigError);
    CHECK_THROWS_AS(load_dictionary("/nonexistent/dictionary.json"), ConfigError);
}

TEST_CASE("number formatting")
{
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.333333333");
    CHECK(format_double(1.23456789012e-7) == "1.23456789e-07");
    CHECK(format_double(-20.0) == "-20");
    CHECK(format_rate(0, 1000000, 0.0) == "<1e-06");
    CHECK(format_rate(0, 3, 0.0) == "<0.333333333");
    CHECK(format_rate(5, 100, 0.05) == "0.05");
    CHECK(format_rate(0, 0, 0.0) == "0");
}

TEST_CASE("CSV quoting")
{
    std::ostringstream out;
    CsvWriter csv(out);
    csv.comment("note");
    csv.row({"plain", "a,b", "say \"hi\"", "two\nlines", ""});
    CHECK(out.str() == "# note\nplain,\"a,b\",\"say \"\"hi\"\"\",\"two\nlines\",\n");
}

TEST_CASE("sweep CSV layout")
{
    SweepResult r;
    r.scheme = Scheme::Regularized;
    r.bits = 8;
    SweepPoint p;
    p.x = -2.0;
    p.symbols = 1000;
    p.symbol_errors = 10;
    p.bit_errors = 12;
    p.ser = 0.01;
    p.ber = 0.0015;
    p.theory_bound = 0.25;
    r.points.push_back(p);
    p.x = 20.0;
    p.symbol_errors = 0;
    p.bit_errors = 0;
    p.ser = 0.0;
    p.ber = 0.0;
    p.theory_bound = 1e-30;
    r.points.push_back(p);

    std::ostringstream out;
    write_sweep_csv(out, r);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# ", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "scheme,bits,snr_db,symbols,symbol_errors,ser,ber,theory_bound");
    std::getline(lines, line);
    CHECK(line == "regularized,8,-2,1000,10,0.01,0.0015,0.25");
    std::getline(lines, line);
    CHECK(line == "regularized,8,20,1000,0,<0.001,<0.000125,1e-30");

    std::ostringstream rob;
    write_robustness_csv(rob, r, 10.0);
    CHECK(rob.str().find("scheme,bits,sigma_deg,snr_db,symbols,symbol_errors,ser,ber\n") != std::string::npos);
    CHECK(rob.str().find("regularized,8,-2,10,1000,10,0.01,0.0015\n") != std::string::npos);
}

TEST_CASE("stats CSV layout")
{
    const SymbolDictionary d = build_regularized_dictionary(4);
    std::ostringstream out;
    write_stats_csv(out, d, distance_stats(d));
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "symbol,bit_index,d_min,d_max");
    std::getline(lines, line);
    CHECK(line == "0,0,4,16");
}
