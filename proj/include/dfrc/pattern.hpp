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

#ifndef DFRC_PATTERN_HPP
#define DFRC_PATTERN_HPP

#include "dfrc/array.hpp"
#include "dfrc/cone_solver.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dfrc
{
// Angles are radians. The grid is anchored at -90 deg with a fixed step so that
// sector edges land on samples; the sidelobe region starts `guard` beyond the
// mainlobe edges.
struct PatternGrid
{
    double mainlobe_min = 0.0;
    double mainlobe_max = 0.0;
    double guard = 0.0;
    std::vector<double> mainlobe;
    std::vector<double> sidelobe;

    static PatternGrid sector(double min_deg, double max_deg, double guard_deg = 2.0, double step_deg = 0.5);

    bool in_mainlobe(double theta) const;
    bool in_sidelobe(double theta) const;
};

// -90 deg .. 90 deg inclusive at `step_deg`, in radians.
std::vector<double> angle_grid(double step_deg);

// c(theta) = a_sub(theta) kron b(theta); entry k*N + n = a_k * b_n.
template <typename Scalar>
CVector<Scalar> virtual_steering(const Subarray& sub, const ArrayGeometry<Scalar>& geometry,
                                 const ReceiveArray<Scalar>& receive, Scalar theta)
{
    const CVector<Scalar> a = subarray_steering(geometry, sub, theta);
    const CVector<Scalar> b = receive.steering(theta);
    CVector<Scalar> c(a.size() * b.size());
    for (Eigen::Index k = 0; k < a.size(); ++k)
        c.segment(k * b.size(), b.size()) = a(k) * b;
    return c;
}

// |w^H c(theta)| for each angle.
template <typename Scalar, typename Derived>
std::vector<Scalar> beampattern(const Eigen::MatrixBase<Derived>& w, const Subarray& sub,
                                const ArrayGeometry<Scalar>& geometry, const ReceiveArray<Scalar>& receive,
                                const std::vector<Scalar>& angles)
{
    if (w.size() != static_cast<Eigen::Index>(sub.size()) * receive.size())
        throw std::invalid_argument("beampattern: weight length must be K*N");
    std::vector<Scalar> gains;
    gains.reserve(angles.size());
    for (Scalar theta : angles)
        gains.push_back(std::abs(w.dot(virtual_steering(sub, geometry, receive, theta))));
    return gains;
}

// 20 log10(g / max g); the peak maps to 0 dB.
std::vector<double> normalized_db(const std::vector<double>& gains);

// Peak sidelobe relative to the pattern peak, in dB.
double peak_sidelobe_db(const std::vector<double>& angles, const std::vector<double>& gains, const PatternGrid& grid);

// Distinct virtual element positions of a transmit subarray and receive array.
// The pattern of any weight vector depends only on the per-position sums of
// conj(w), so designs run over positions and expand back to K*N weights.
struct VirtualAperture
{
    std::vector<double> positions;
    std::vector<int> multiplicity;
    std::vector<int> slot;

    static VirtualAperture build(const Subarray& sub, const ArrayGeometry<double>& geometry,
                                 const ReceiveArray<double>& receive);

    double center() const { return 0.5 * (positions.front() + positions.back()); }
    int size() const { return static_cast<int>(positions.size()); }
};

// Mainlobe phase target: linear in sin(theta) referenced to the virtual
// aperture centre, or constant zero.
enum class PhaseProfile
{
    ApertureCenter,
    Constant,
};

struct MinimaxOptions
{
    PhaseProfile profile = PhaseProfile::ApertureCenter;
    opt::SocpOptions solver{};
};

// Coefficients a over aperture positions; pattern sum_p a_p exp(j 2 pi x_p sin theta).
struct ApertureDesign
{
    CVectorXd coefficients;
    double ripple = 1.0;
    bool feasible = false;
    opt::SolveStatus status = opt::SolveStatus::NumericalFailure;
};

ApertureDesign design_aperture(const std::vector<double>& positions, const PatternGrid& grid, double sidelobe_eps,
                               const MinimaxOptions& options = {});

std::vector<double> aperture_pattern(const std::vector<double>& positions, const CVectorXd& coefficients,
                                     const std::vector<double>& angles);

struct MinimaxDesign
{
    CVectorXd w;
    double ripple = 1.0;
    bool feasible = false;
    opt::SolveStatus status = opt::SolveStatus::NumericalFailure;
};

// min rho  s.t.  |w^H c(theta) - exp(j mu(theta))| <= rho on the mainlobe,
//                |w^H c(theta)| <= eps on the sidelobes.
// w = 0 is always feasible with rho = 1, so a design is reported infeasible
// when eps <= 0 or the optimum does not improve on rho = 1.
MinimaxDesign design_minimax_weights(const Subarray& sub, const ArrayGeometry<double>& geometry,
                                     const ReceiveArray<double>& receive, const PatternGrid& grid,
                                     double sidelobe_eps, const MinimaxOptions& options = {});

std::optional<double> ripple_metric(const Subarray& sub, const ArrayGeometry<double>& geometry,
                                    const ReceiveArray<double>& receive, const PatternGrid& grid,
                                    double sidelobe_eps, const MinimaxOptions& options = {});

// Position set as integers on a 1e-9 wavelength lattice. Translated to start
// at zero when the design is translation invariant (ApertureCenter profile).
std::vector<std::int64_t> aperture_key(const VirtualAperture& aperture, PhaseProfile profile);

inline double db_to_linear(double db) { return std::pow(10.0, db / 20.0); }

} // namespace dfrc

#endif
