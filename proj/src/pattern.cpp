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

#include "dfrc/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dfrc
{
namespace
{
constexpr double kAngleTol = 1e-9;
constexpr double kPositionLattice = 1e-9;

std::vector<double> degree_samples(double step_deg)
{
    if (!(step_deg > 0.0))
        throw std::invalid_argument("angle grid step must be positive");
    const auto count = static_cast<long>(std::floor(180.0 / step_deg + 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count + 1));
    for (long i = 0; i <= count; ++i)
        out.push_back(-90.0 + static_cast<double>(i) * step_deg);
    return out;
}

} // namespace

PatternGrid PatternGrid::sector(double min_deg, double max_deg, double guard_deg, double step_deg)
{
    if (!(min_deg < max_deg) || min_deg < -90.0 || max_deg > 90.0)
        throw std::invalid_argument("PatternGrid: mainlobe sector must satisfy -90 <= min < max <= 90");
    if (guard_deg < 0.0)
        throw std::invalid_argument("PatternGrid: guard band must be non-negative");
    PatternGrid grid;
    grid.mainlobe_min = deg2rad(min_deg);
    grid.mainlobe_max = deg2rad(max_deg);
    grid.guard = deg2rad(guard_deg);
    for (double deg : degree_samples(step_deg))
    {
        const double theta = deg2rad(deg);
        if (grid.in_mainlobe(theta))
            grid.mainlobe.push_back(theta);
        else if (grid.in_sidelobe(theta))
            grid.sidelobe.push_back(theta);
    }
    if (grid.mainlobe.empty())
        throw std::invalid_argument("PatternGrid: no mainlobe samples");
    return grid;
}

bool PatternGrid::in_mainlobe(double theta) const
{
    return theta >= mainlobe_min - kAngleTol && theta <= mainlobe_max + kAngleTol;
}

bool PatternGrid::in_sidelobe(double theta) const
{
    return theta <= mainlobe_min - guard + kAngleTol || theta >= mainlobe_max + guard - kAngleTol;
}

std::vector<double> angle_grid(double step_deg)
{
    std::vector<double> out = degree_samples(step_deg);
    for (double& a : out)
        a = deg2rad(a);
    return out;
}

std::vector<double> normalized_db(const std::vector<double>& gains)
{
    const double peak = gains.empty() ? 0.0 : *std::max_element(gains.begin(), gains.end());
    std::vector<double> out(gains.size());
    for (std::size_t i = 0; i < gains.size(); ++i)
        out[i] = peak > 0.0 && gains[i] > 0.0 ? 20.0 * std::log10(gains[i] / peak)
                                              : -std::numeric_limits<double>::infinity();
    return out;
}

double peak_sidelobe_db(const std::vector<double>& angles, const std::vector<double>& gains, const PatternGrid& grid)
{
    if (angles.size() != gains.size())
        throw std::invalid_argument("peak_sidelobe_db: length mismatch");
    double peak = 0.0;
    double side = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i)
    {
        peak = std::max(peak, gains[i]);
        if (grid.in_sidelobe(angles[i]))
            side = std::max(side, gains[i]);
    }
    if (!(peak > 0.0))
        return std::numeric_limits<double>::infinity();
    return side > 0.0 ? 20.0 * std::log10(side / peak) : -std::numeric_limits<double>::infinity();
}

VirtualAperture VirtualAperture::build(const Subarray& sub, const ArrayGeometry<double>& geometry,
                                       const ReceiveArray<double>& receive)
{
    sub.check_fits(geometry.M);
    const int N = receive.size();
    const int total = sub.size() * N;
    std::vector<double> raw(static_cast<std::size_t>(total));
    for (int k = 0; k < sub.size(); ++k)
        for (int n = 0; n < N; ++n)
            raw[static_cast<std::size_t>(k * N + n)] = geometry.position(sub[k]) + receive.positions[n];

    std::vector<int> order(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i)
        order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return raw[a] < raw[b]; });

    VirtualAperture ap;
    ap.slot.assign(static_cast<std::size_t>(total), -1);
    for (int i : order)
    {
        const double x = raw[static_cast<std::size_t>(i)];
        if (ap.positions.empty() || x - ap.positions.back() > kPositionLattice)
        {
            ap.positions.push_back(x);
            ap.multiplicity.push_back(0);
        }
        ap.slot[static_cast<std::size_t>(i)] = ap.size() - 1;
        ++ap.multiplicity.back();
    }
    return ap;
}

std::vector<std::int64_t> aperture_key(const VirtualAperture& aperture, PhaseProfile profile)
{
    const double origin = profile == PhaseProfile::ApertureCenter ? aperture.positions.front() : 0.0;
    std::vector<std::int64_t> key;
    key.reserve(aperture.positions.size());
    for (double x : aperture.positions)
        key.push_back(std::llround((x - origin) / kPositionLattice));
    return key;
}

std::vector<double> aperture_pattern(const std::vector<double>& positions, const CVectorXd& coefficients,
                                     const std::vector<double>& angles)
{
    std::vector<double> gains;
    gains.reserve(angles.size());
    for (double theta : angles)
    {
        const double s = two_pi<double> * std::sin(theta);
        std::complex<double> acc = 0.0;
        for (std::size_t p = 0; p < positions.size(); ++p)
            acc += coefficients(static_cast<Eigen::Index>(p)) * unit_phasor(s * positions[p]);
        gains.push_back(std::abs(acc));
    }
    return gains;
}

ApertureDesign design_aperture(const std::vector<double>& positions, const PatternGrid& grid, double sidelobe_eps,
                               const MinimaxOptions& options)
{
    const int P = static_cast<int>(positions.size());
    ApertureDesign out;
    out.coefficients = CVectorXd::Zero(P);
    if (!(sidelobe_eps > 0.0) || P == 0)
        return out;

    // Work in coordinates centred on the reference point so the target is 1.
    const double ref = options.profile == PhaseProfile::ApertureCenter
                           ? 0.5 * (positions.front() + positions.back())
                           : 0.0;

    // Variables: [Re a (P), Im a (P), rho].
    const int n = 2 * P + 1;
    opt::SocpProblem socp(n);
    socp.c(n - 1) = 1.0;
    socp.reserve_cone_rows(3 * static_cast<int>(grid.mainlobe.size() + grid.sidelobe.size()));

    Eigen::MatrixXd rows(3, n);
    Eigen::VectorXd offset(3);
    auto fill_response = [&](double theta) {
        rows.setZero();
        const double s = two_pi<double> * std::sin(theta);
        for (int p = 0; p < P; ++p)
        {
            const double phase = s * (positions[static_cast<std::size_t>(p)] - ref);
            const double cs = std::cos(phase);
            const double sn = std::sin(phase);
            rows(1, p) = cs;
            rows(1, P + p) = -sn;
            rows(2, p) = sn;
            rows(2, P + p) = cs;
        }
    };
    for (double theta : grid.mainlobe)
    {
        fill_response(theta);
        rows(0, n - 1) = 1.0;
        offset << 0.0, -1.0, 0.0;
        socp.add_cone(rows, offset);
    }
    for (double theta : grid.sidelobe)
    {
        fill_response(theta);
        offset << sidelobe_eps, 0.0, 0.0;
        socp.add_cone(rows, offset);
    }
    socp.finish();

    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    x0(n - 1) = 1.5;
    const opt::SocpResult res = opt::solve_socp(socp, x0, options.solver);
    out.status = res.status;
    if (res.status == opt::SolveStatus::InfeasibleStart)
        return out;

    // In absolute coordinates the same coefficients track exp(j 2 pi ref sin theta).
    CVectorXd a(P);
    for (int p = 0; p < P; ++p)
        a(p) = {res.x(p), res.x(P + p)};
    out.coefficients = a;

    // Ripple and sidelobes re-measured from the coefficients, not the solver.
    double ripple = 0.0;
    for (double theta : grid.mainlobe)
    {
        const double s = two_pi<double> * std::sin(theta);
        std::complex<double> acc = 0.0;
        for (int p = 0; p < P; ++p)
            acc += a(p) * unit_phasor(s * (positions[static_cast<std::size_t>(p)] - ref));
        ripple = std::max(ripple, std::abs(acc - 1.0));
    }
    out.ripple = ripple;
    out.feasible = ripple < 1.0 - 1e-9;
    return out;
}

MinimaxDesign design_minimax_weights(const Subarray& sub, const ArrayGeometry<double>& geometry,
                                     const ReceiveArray<double>& receive, const PatternGrid& grid,
                                     double sidelobe_eps, const MinimaxOptions& options)
{
    const VirtualAperture ap = VirtualAperture::build(sub, geometry, receive);
    const ApertureDesign design = design_aperture(ap.positions, grid, sidelobe_eps, options);
    MinimaxDesign out;
    out.ripple = design.ripple;
    out.feasible = design.feasible;
    out.status = design.status;
    out.w.resize(static_cast<Eigen::Index>(ap.slot.size()));
    for (std::size_t i = 0; i < ap.slot.size(); ++i)
    {
        const int p = ap.slot[i];
        out.w(static_cast<Eigen::Index>(i)) = std::conj(design.coefficients(p) / double(ap.multiplicity[p]));
    }
    return out;
}

std::optional<double> ripple_metric(const Subarray& sub, const ArrayGeometry<double>& geometry,
                                    const ReceiveArray<double>& receive, const PatternGrid& grid,
                                    double sidelobe_eps, const MinimaxOptions& options)
{
    const MinimaxDesign d = design_minimax_weights(sub, geometry, receive, grid, sidelobe_eps, options);
    if (!d.feasible)
        return std::nullopt;
    return d.ripple;
}

} // namespace dfrc
