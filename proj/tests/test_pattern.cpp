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

#include "dfrc/dictionary.hpp"
#include "dfrc/pattern.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace dfrc;

namespace
{
// Small geometry used by the frozen reference designs: 6 candidates at a
// quarter wavelength, 4-element half-wavelength receiver, mainlobe +-20 deg,
// sidelobes from 25 deg, 1 deg design grid, eps = 0.1.
struct Toy
{
    ArrayGeometry<double> tx{6, 0.25};
    ReceiveArray<double> rx = ReceiveArray<double>::uniform(4, 0.5);
    PatternGrid grid = PatternGrid::sector(-20.0, 20.0, 5.0, 1.0);
    double eps = 0.1;
};

// Reference ripples from an independent full K*N-weight cone program
// (tests/oracles/minimax_oracle.py), aperture-centre phase profile.
struct Frozen
{
    std::vector<int> sub;
    double rho;
};

const std::vector<Frozen> kToyRipples = {
    {{0, 1, 2}, 0.60352376}, {{0, 1, 3}, 0.60507969}, {{0, 1, 4}, 0.59856137}, {{0, 1, 5}, 0.59083694},
    {{0, 2, 3}, 0.60507969}, {{0, 2, 4}, 0.61115886}, {{0, 2, 5}, 0.60870767}, {{0, 3, 4}, 0.59856137},
    {{0, 3, 5}, 0.60870767}, {{0, 4, 5}, 0.59083694}, {{1, 2, 3}, 0.60352376}, {{1, 2, 4}, 0.60507969},
    {{1, 2, 5}, 0.59856137}, {{1, 3, 4}, 0.60507969}, {{1, 3, 5}, 0.61115886}, {{1, 4, 5}, 0.59856137},
    {{2, 3, 4}, 0.60352376}, {{2, 3, 5}, 0.60507969}, {{2, 4, 5}, 0.60507969}, {{3, 4, 5}, 0.60352376},
};

// Worst mainlobe deviation and sidelobe level of w, evaluated by a plain loop.
std::pair<double, double> measure(const CVectorXd& w, const Subarray& sub, const ArrayGeometry<double>& tx,
                                  const ReceiveArray<double>& rx, const PatternGrid& grid, double ref)
{
    double dev = 0.0, side = 0.0;
    for (double th : grid.mainlobe)
    {
        std::complex<double> g = 0.0;
        for (int k = 0; k < sub.size(); ++k)
            for (int n = 0; n < rx.size(); ++n)
                g += std::conj(w(k * rx.size() + n))
                     * std::polar(1.0, 2.0 * M_PI * (tx.position(sub[k]) + rx.positions[n]) * std::sin(th));
        dev = std::max(dev, std::abs(g - std::polar(1.0, 2.0 * M_PI * ref * std::sin(th))));
    }
    for (double th : grid.sidelobe)
    {
        std::complex<double> g = 0.0;
        for (int k = 0; k < sub.size(); ++k)
            for (int n = 0; n < rx.size(); ++n)
                g += std::conj(w(k * rx.size() + n))
                     * std::polar(1.0, 2.0 * M_PI * (tx.position(sub[k]) + rx.positions[n]) * std::sin(th));
        side = std::max(side, std::abs(g));
    }
    return {dev, side};
}

double aperture_ref(const Subarray& sub, const ArrayGeometry<double>& tx, const ReceiveArray<double>& rx)
{
    return 0.5 * (tx.position(sub[0]) + rx.positions.front() + tx.position(sub[sub.size() - 1]) + rx.positions.back());
}
} // namespace

TEST_CASE("virtual steering is the Kronecker product")
{
    const ArrayGeometry<double> tx(16, 0.25);
    const auto rx = ReceiveArray<double>::uniform(10, 0.5);
    const Subarray sub({0, 3, 4, 7, 9, 11, 12, 15});
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-M_PI / 2, M_PI / 2);
    for (int t = 0; t < 5; ++t)
    {
        const double th = ang(rng);
        const CVectorXd c = virtual_steering(sub, tx, rx, th);
        REQUIRE(c.size() == 80);
        const CVectorXd a = subarray_steering(tx, sub, th);
        const CVectorXd b = rx.steering(th);
        for (int k = 0; k < 8; ++k)
            for (int n = 0; n < 10; ++n)
                CHECK(std::abs(c(k * 10 + n) - a(k) * b(n)) < 1e-14);
        CHECK(c.squaredNorm() == doctest::Approx(80.0));
    }
    const auto single = ReceiveArray<double>::uniform(1, 0.5);
    CHECK((virtual_steering(sub, tx, single, 0.4) - subarray_steering(tx, sub, 0.4)).norm() < 1e-15);
}

TEST_CASE("beampattern basics")
{
    const ArrayGeometry<double> tx(8, 0.5);
    const auto rx = ReceiveArray<double>::uniform(3, 0.5);
    const Subarray sub({0, 2, 5});
    const std::vector<double> angles = angle_grid(0.5);
    CHECK(angles.size() == 361);
    CHECK(angles.front() == doctest::Approx(-M_PI / 2));
    CHECK(angles.back() == doctest::Approx(M_PI / 2));

    const double th0 = deg2rad(17.5);
    const CVectorXd c0 = virtual_steering(sub, tx, rx, th0);
    const CVectorXd w = c0 / c0.squaredNorm();
    const std::vector<double> g = beampattern(w, sub, tx, rx, angles);
    const auto peak = std::max_element(g.begin(), g.end()) - g.begin();
    CHECK(angles[static_cast<std::size_t>(peak)] == doctest::Approx(th0));
    CHECK(g[static_cast<std::size_t>(peak)] == doctest::Approx(1.0));

    // Global phase does not change the pattern.
    const std::vector<double> g2 = beampattern(CVectorXd(w * std::polar(1.0, 1.1)), sub, tx, rx, angles);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(g2[i] == doctest::Approx(g[i]));

    for (double v : beampattern(CVectorXd::Zero(9), sub, tx, rx, angles))
        CHECK(v == 0.0);
    CHECK_THROWS_AS(beampattern(CVectorXd::Zero(8), sub, tx, rx, angles), std::invalid_argument);
}

TEST_CASE("pattern grid regions")
{
    const PatternGrid g = PatternGrid::sector(-10.0, 10.0, 2.0, 0.5);
    CHECK(g.mainlobe.size() == 41);
    CHECK(g.sidelobe.size() == 314);
    for (double th : g.sidelobe)
        CHECK_FALSE(g.in_mainlobe(th));
    CHECK(rad2deg(g.sidelobe[156]) == doctest::Approx(-12.0));
    CHECK(rad2deg(g.sidelobe[157]) == doctest::Approx(12.0));
    CHECK_THROWS_AS(PatternGrid::sector(10.0, -10.0), std::invalid_argument);
}

TEST_CASE("normalized dB and peak sidelobe")
{
    const std::vector<double> db = normalized_db({0.5, 1.0, 0.1});
    CHECK(db[1] == doctest::Approx(0.0));
    CHECK(db[2] == doctest::Approx(-20.0));
    const PatternGrid g = PatternGrid::sector(-10.0, 10.0, 2.0, 0.5);
    const std::vector<double> angles{deg2rad(-30.0), deg2rad(0.0), deg2rad(11.0), deg2rad(40.0)};
    // 11 deg sits in the guard band and is ignored.
    CHECK(peak_sidelobe_db(angles, {0.05, 1.0, 0.9, 0.1}, g) == doctest::Approx(-20.0));
}

TEST_CASE("virtual aperture merges coincident positions")
{
    const ArrayGeometry<double> tx(16, 0.25);
    const auto rx = ReceiveArray<double>::uniform(10, 0.5);
    const Subarray sub({0, 1, 2, 3, 4, 5, 6, 7});
    const VirtualAperture ap = VirtualAperture::build(sub, tx, rx);
    // Positions 0 .. 6.25 in quarter-wavelength steps.
    CHECK(ap.size() == 26);
    int total = 0;
    for (int m : ap.multiplicity)
        total += m;
    CHECK(total == 80);
    CHECK(ap.center() == doctest::Approx(3.125));
    for (int i = 0; i < 80; ++i)
        CHECK(ap.positions[static_cast<std::size_t>(ap.slot[static_cast<std::size_t>(i)])]
              == doctest::Approx(tx.position(sub[i / 10]) + rx.positions[static_cast<std::size_t>(i % 10)]));
    // Translated subarrays share a key under the centred profile only.
    const VirtualAperture shifted = VirtualAperture::build(Subarray({8, 9, 10, 11, 12, 13, 14, 15}), tx, rx);
    CHECK(aperture_key(ap, PhaseProfile::ApertureCenter) == aperture_key(shifted, PhaseProfile::ApertureCenter));
    CHECK(aperture_key(ap, PhaseProfile::Constant) != aperture_key(shifted, PhaseProfile::Constant));
}

TEST_CASE("minimax ripple matches the independent full-weight reference")
{
    const Toy toy;
    for (const Frozen& f : kToyRipples)
    {
        const Subarray sub(f.sub);
        const MinimaxDesign d = design_minimax_weights(sub, toy.tx, toy.rx, toy.grid, toy.eps);
        REQUIRE(d.feasible);
        CHECK(d.ripple == doctest::Approx(f.rho).epsilon(1e-6));
    }
}

TEST_CASE("minimax design re-verified by direct evaluation")
{
    const Toy toy;
    for (const std::vector<int>& s : {std::vector<int>{0, 2, 5}, std::vector<int>{1, 2, 4}})
    {
        const Subarray sub(s);
        const MinimaxDesign d = design_minimax_weights(sub, toy.tx, toy.rx, toy.grid, toy.eps);
        REQUIRE(d.feasible);
        REQUIRE(d.w.size() == 12);
        const auto [dev, side] = measure(d.w, sub, toy.tx, toy.rx, toy.grid, aperture_ref(sub, toy.tx, toy.rx));
        CHECK(dev <= d.ripple + 1e-9);
        CHECK(dev >= d.ripple - 1e-6);
        CHECK(side <= toy.eps + 1e-6);
    }
}

TEST_CASE("constant phase profile reference")
{
    const Toy toy;
    MinimaxOptions o;
    o.profile = PhaseProfile::Constant;
    const Subarray sub({0, 2, 5});
    const MinimaxDesign d = design_minimax_weights(sub, toy.tx, toy.rx, toy.grid, toy.eps, o);
    REQUIRE(d.feasible);
    CHECK(d.ripple == doctest::Approx(0.85804794).epsilon(1e-5));
    const auto [dev, side] = measure(d.w, sub, toy.tx, toy.rx, toy.grid, 0.0);
    CHECK(dev <= d.ripple + 1e-9);
    CHECK(side <= toy.eps + 1e-6);
}

TEST_CASE("two-element toy cases")
{
    const ArrayGeometry<double> tx(4, 0.25);
    const auto rx = ReceiveArray<double>::uniform(2, 0.5);
    const PatternGrid grid = PatternGrid::sector(-30.0, 30.0, 10.0, 2.0);
    const MinimaxDesign a = design_minimax_weights(Subarray({0, 1}), tx, rx, grid, 0.3);
    const MinimaxDesign b = design_minimax_weights(Subarray({0, 3}), tx, rx, grid, 0.3);
    REQUIRE(a.feasible);
    REQUIRE(b.feasible);
    CHECK(a.ripple == doctest::Approx(0.45030562).epsilon(1e-6));
    CHECK(b.ripple == doctest::Approx(0.41738997).epsilon(1e-6));

    // No random perturbation of the optimum improves the worst-case deviation
    // without breaking the sidelobe ceiling.
    const Subarray sub({0, 1});
    const double ref = aperture_ref(sub, tx, rx);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int t = 0; t < 2000; ++t)
    {
        const double scale = t < 1000 ? 1e-2 : 1e-4;
        CVectorXd w = a.w;
        for (Eigen::Index i = 0; i < w.size(); ++i)
            w(i) += scale * std::complex<double>(nd(rng), nd(rng));
        const auto [dev, side] = measure(w, sub, tx, rx, grid, ref);
        if (side <= 0.3)
            CHECK(dev >= a.ripple - 1e-7);
    }
}

TEST_CASE("relaxing the sidelobe ceiling never raises the ripple")
{
    const Toy toy;
    const Subarray sub({0, 2, 5});
    const std::vector<std::pair<double, double>> ref = {
        {0.05, 0.69579003}, {0.1, 0.60870767}, {0.2, 0.45957227}, {0.4, 0.18149722}};
    double last = 1.0;
    for (const auto& [eps, rho] : ref)
    {
        const MinimaxDesign d = design_minimax_weights(sub, toy.tx, toy.rx, toy.grid, eps);
        REQUIRE(d.feasible);
        CHECK(d.ripple == doctest::Approx(rho).epsilon(1e-6));
        CHECK(d.ripple <= last + 1e-12);
        last = d.ripple;
    }
}

TEST_CASE("tight ceilings stay feasible just below one; non-positive eps is infeasible")
{
    const Toy toy;
    const Subarray sub({0, 1, 2});
    const MinimaxDesign tight = design_minimax_weights(sub, toy.tx, toy.rx, toy.grid, 0.001);
    REQUIRE(tight.feasible);
    CHECK(tight.ripple == doctest::Approx(0.99457654).epsilon(1e-5));
    const MinimaxDesign none = design_minimax_weights(sub, toy.tx, toy.rx, toy.grid, 0.0);
    CHECK_FALSE(none.feasible);
    CHECK_FALSE(ripple_metric(sub, toy.tx, toy.rx, toy.grid, -1.0).has_value());
}

TEST_CASE("identical subarrays give identical designs")
{
    const Toy toy;
    const Subarray sub({1, 3, 4});
    const MinimaxDesign a = design_minimax_weights(sub, toy.tx, toy.rx, toy.grid, toy.eps);
    const MinimaxDesign b = design_minimax_weights(sub, toy.tx, toy.rx, toy.grid, toy.eps);
    CHECK(a.ripple == b.ripple);
    CHECK(a.w == b.w);
}

TEST_CASE("ripple ranking over all toy subarrays follows the reference")
{
    const Toy toy;
    RadarRankingOptions o;
    o.workers = 3;
    const std::vector<RadarRanking> rank = rank_subarrays_by_ripple(toy.tx, 3, toy.rx, toy.grid, toy.eps, o);
    REQUIRE(rank.size() == kToyRipples.size());
    for (std::size_t i = 1; i < rank.size(); ++i)
        CHECK(rank[i].ripple >= rank[i - 1].ripple - 1e-12);
    for (const RadarRanking& r : rank)
    {
        const auto it = std::find_if(kToyRipples.begin(), kToyRipples.end(),
                                     [&](const Frozen& f) { return f.sub == r.sub.indices(); });
        REQUIRE(it != kToyRipples.end());
        CHECK(r.ripple == doctest::Approx(it->rho).epsilon(1e-6));
        CHECK(r.feasible);
    }
    // Deduplicated and exhaustive evaluation agree.
    for (const RadarRanking& r : rank)
        CHECK(r.ripple == doctest::Approx(*ripple_metric(r.sub, toy.tx, toy.rx, toy.grid, toy.eps)).epsilon(1e-9));
}
