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

#ifndef DFRC_ARRAY_HPP
#define DFRC_ARRAY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfrc
{
template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using CVectorXd = CVector<double>;
using CMatrixXd = CMatrix<double>;

template <typename Scalar = double>
inline constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;

template <typename Scalar>
constexpr Scalar deg2rad(Scalar deg) { return deg * std::numbers::pi_v<Scalar> / Scalar(180); }

template <typename Scalar>
constexpr Scalar rad2deg(Scalar rad) { return rad * Scalar(180) / std::numbers::pi_v<Scalar>; }

template <typename Scalar>
std::complex<Scalar> unit_phasor(Scalar phase) { return std::polar(Scalar(1), phase); }

// Uniform linear grid of M candidate transmit antennas at positions m * spacing
// (in wavelengths), m = 0..M-1. The per-element phase increment toward theta is
// 2*pi*spacing*sin(theta).
template <typename Scalar = double>
struct ArrayGeometry
{
    int M = 0;
    Scalar spacing = Scalar(0.5);

    ArrayGeometry(int num_antennas, Scalar spacing_wavelengths)
        : M(num_antennas), spacing(spacing_wavelengths)
    {
        if (M < 2)
            throw std::invalid_argument("ArrayGeometry: need at least 2 candidate antennas");
        if (!(spacing > Scalar(0)))
            throw std::invalid_argument("ArrayGeometry: spacing must be positive");
    }

    Scalar position(int m) const { return spacing * Scalar(m); }
    Scalar phase_step(Scalar theta) const { return two_pi<Scalar> * spacing * std::sin(theta); }
};

// Radar receive array; positions in wavelengths, strictly increasing.
template <typename Scalar = double>
struct ReceiveArray
{
    std::vector<Scalar> positions;

    explicit ReceiveArray(std::vector<Scalar> pos) : positions(std::move(pos))
    {
        if (positions.empty())
            throw std::invalid_argument("ReceiveArray: need at least one antenna");
        for (std::size_t n = 1; n < positions.size(); ++n)
            if (!(positions[n] > positions[n - 1]))
                throw std::invalid_argument("ReceiveArray: positions must be strictly increasing");
    }

    static ReceiveArray uniform(int N, Scalar spacing)
    {
        if (N < 1)
            throw std::invalid_argument("ReceiveArray: need at least one antenna");
        std::vector<Scalar> pos(static_cast<std::size_t>(N));
        for (int n = 0; n < N; ++n)
            pos[n] = spacing * Scalar(n);
        return ReceiveArray(std::move(pos));
    }

    int size() const { return static_cast<int>(positions.size()); }

    CVector<Scalar> steering(Scalar theta) const
    {
        CVector<Scalar> b(size());
        const Scalar s = two_pi<Scalar> * std::sin(theta);
        for (int n = 0; n < size(); ++n)
            b(n) = unit_phasor(s * positions[n]);
        return b;
    }
};

// A K-element subset of the candidate grid, 0-based, strictly increasing.
class Subarray
{
public:
    Subarray() = default;
    explicit Subarray(std::vector<int> indices) : indices_(std::move(indices))
    {
        if (indices_.empty())
            throw std::invalid_argument("Subarray: empty index set");
        if (indices_.front() < 0)
            throw std::invalid_argument("Subarray: negative antenna index");
        for (std::size_t k = 1; k < indices_.size(); ++k)
            if (indices_[k] <= indices_[k - 1])
                throw std::invalid_argument("Subarray: indices must be strictly increasing");
    }

    const std::vector<int>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }
    int operator[](int k) const { return indices_[static_cast<std::size_t>(k)]; }
    bool fits(int M) const { return !indices_.empty() && indices_.back() < M; }

    void check_fits(int M) const
    {
        if (!fits(M))
            throw std::out_of_range("Subarray: antenna index " + std::to_string(indices_.back())
                                    + " outside candidate grid of " + std::to_string(M));
    }

    friend bool operator==(const Subarray&, const Subarray&) = default;
    friend auto operator<=>(const Subarray&, const Subarray&) = default;

private:
    std::vector<int> indices_;
};

// K x M binary selection matrix with rows in ascending antenna order.
class SelectionMatrix
{
public:
    SelectionMatrix(const Subarray& sub, int M) : sub_(sub), M_(M) { sub.check_fits(M); }

    int rows() const { return sub_.size(); }
    int cols() const { return M_; }
    const Subarray& subarray() const { return sub_; }

    Eigen::MatrixXd dense() const
    {
        Eigen::MatrixXd P = Eigen::MatrixXd::Zero(rows(), cols());
        for (int k = 0; k < rows(); ++k)
            P(k, sub_[k]) = 1.0;
        return P;
    }

    template <typename Derived>
    auto apply(const Eigen::MatrixBase<Derived>& full) const
    {
        using Plain = typename Derived::PlainObject;
        Plain out(rows());
        for (int k = 0; k < rows(); ++k)
            out(k) = full(sub_[k]);
        return out;
    }

private:
    Subarray sub_;
    int M_;
};

// Permutation of K waveform slots: (Q v)_k = v_{perm[k]}.
class PermutationMatrix
{
public:
    PermutationMatrix() = default;
    explicit PermutationMatrix(std::vector<int> perm) : perm_(std::move(perm))
    {
        std::vector<bool> seen(perm_.size(), false);
        for (int p : perm_)
        {
            if (p < 0 || p >= static_cast<int>(perm_.size()) || seen[static_cast<std::size_t>(p)])
                throw std::invalid_argument("PermutationMatrix: not a bijection");
            seen[static_cast<std::size_t>(p)] = true;
        }
    }

    static PermutationMatrix identity(int K)
    {
        std::vector<int> p(static_cast<std::size_t>(K));
        for (int k = 0; k < K; ++k)
            p[static_cast<std::size_t>(k)] = k;
        return PermutationMatrix(std::move(p));
    }

    int size() const { return static_cast<int>(perm_.size()); }
    const std::vector<int>& indices() const { return perm_; }
    int operator[](int k) const { return perm_[static_cast<std::size_t>(k)]; }
    bool is_identity() const
    {
        for (int k = 0; k < size(); ++k)
            if (perm_[static_cast<std::size_t>(k)] != k)
                return false;
        return true;
    }

    Eigen::MatrixXd dense() const
    {
        Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(size(), size());
        for (int k = 0; k < size(); ++k)
            Q(k, perm_[static_cast<std::size_t>(k)]) = 1.0;
        return Q;
    }

    template <typename Derived>
    auto apply(const Eigen::MatrixBase<Derived>& v) const
    {
        if (v.size() != size())
            throw std::invalid_argument("PermutationMatrix: dimension mismatch");
        using Plain = typename Derived::PlainObject;
        Plain out(v.size());
        for (int k = 0; k < size(); ++k)
            out(k) = v(perm_[static_cast<std::size_t>(k)]);
        return out;
    }

    friend bool operator==(const PermutationMatrix&, const PermutationMatrix&) = default;

private:
    std::vector<int> perm_;
};

// Per-antenna unit phasors u_m applied on top of the array response.
template <typename Scalar = double>
struct PhasePlan
{
    CVector<Scalar> u;

    std::vector<Scalar> angles() const
    {
        std::vector<Scalar> out(static_cast<std::size_t>(u.size()));
        for (Eigen::Index m = 0; m < u.size(); ++m)
            out[static_cast<std::size_t>(m)] = std::arg(u(m));
        return out;
    }
};

template <typename Scalar>
CVector<Scalar> steering_vector(const ArrayGeometry<Scalar>& geometry, Scalar theta)
{
    const Scalar step = geometry.phase_step(theta);
    CVector<Scalar> a(geometry.M);
    for (int m = 0; m < geometry.M; ++m)
        a(m) = unit_phasor(step * Scalar(m));
    return a;
}

template <typename Scalar>
CVector<Scalar> subarray_steering(const ArrayGeometry<Scalar>& geometry, const Subarray& sub, Scalar theta)
{
    sub.check_fits(geometry.M);
    const Scalar step = geometry.phase_step(theta);
    CVector<Scalar> a(sub.size());
    for (int k = 0; k < sub.size(); ++k)
        a(k) = unit_phasor(step * Scalar(sub[k]));
    return a;
}

// Angle at which the M candidate phases spread uniformly over the unit circle,
// asin(1 / (M * spacing)).
template <typename Scalar>
Scalar maximal_spread_angle(const ArrayGeometry<Scalar>& geometry)
{
    const Scalar arg = Scalar(1) / (Scalar(geometry.M) * geometry.spacing);
    if (arg > Scalar(1))
        throw std::domain_error("no real maximal spread angle: M * spacing < 1");
    return std::asin(arg);
}

// Directions where two candidate antennas alias onto the same phase, ascending.
template <typename Scalar>
std::vector<Scalar> ambiguity_angles(const ArrayGeometry<Scalar>& geometry)
{
    std::vector<Scalar> out;
    // Separations from M-1 down to 1 give increasing arcsine arguments.
    for (int delta = geometry.M - 1; delta >= 1; --delta)
    {
        const Scalar arg = Scalar(1) / (Scalar(delta) * geometry.spacing);
        if (arg <= Scalar(1))
            out.push_back(std::asin(arg));
    }
    return out;
}

// phi_m = 2*pi*m/M - 2*pi*spacing*m*sin(theta_c), so that u .* a(theta_c) is the
// sequence of M-th roots of unity.
template <typename Scalar>
PhasePlan<Scalar> phase_rotation_plan(const ArrayGeometry<Scalar>& geometry, Scalar theta_c)
{
    PhasePlan<Scalar> plan;
    plan.u.resize(geometry.M);
    const Scalar step = geometry.phase_step(theta_c);
    for (int m = 0; m < geometry.M; ++m)
    {
        const Scalar root = two_pi<Scalar> * Scalar(m) / Scalar(geometry.M);
        plan.u(m) = unit_phasor(root - step * Scalar(m));
    }
    return plan;
}

template <typename Scalar = double>
CVector<Scalar> rotated_symbol(const Subarray& sub, int M)
{
    sub.check_fits(M);
    CVector<Scalar> v(sub.size());
    for (int k = 0; k < sub.size(); ++k)
        v(k) = unit_phasor(two_pi<Scalar> * Scalar(sub[k]) / Scalar(M));
    return v;
}

// Broadside without phase rotation collapses every subarray onto the all-ones vector.
template <typename Scalar>
bool broadside_degenerate(Scalar theta_c, bool phase_rotation)
{
    return !phase_rotation && std::abs(std::sin(theta_c)) < Scalar(1e-12);
}

} // namespace dfrc

#endif
