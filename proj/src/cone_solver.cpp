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

#include "dfrc/cone_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dfrc::opt
{
const char* to_string(SolveStatus status)
{
    switch (status)
    {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::IterationLimit: return "iteration limit";
    case SolveStatus::InfeasibleStart: return "infeasible start";
    case SolveStatus::NumericalFailure: return "numerical failure";
    }
    return "unknown";
}

SocpProblem::SocpProblem(int num_vars)
    : c(Eigen::VectorXd::Zero(num_vars)),
      cone_map(0, num_vars),
      G(0, num_vars),
      A(0, num_vars)
{
}

void SocpProblem::reserve_cone_rows(int rows)
{
    if (rows > cone_map.rows())
    {
        cone_map.conservativeResize(rows, num_vars());
        cone_offset.conservativeResize(rows);
    }
}

void SocpProblem::add_cone(const Eigen::MatrixXd& rows, const Eigen::VectorXd& offset)
{
    if (rows.cols() != num_vars() || rows.rows() != offset.size() || rows.rows() < 2)
        throw std::invalid_argument("SocpProblem::add_cone: bad block shape");
    const int d = static_cast<int>(rows.rows());
    if (used_rows_ + d > cone_map.rows())
        reserve_cone_rows(std::max(2 * static_cast<int>(cone_map.rows()), used_rows_ + d));
    cone_map.middleRows(used_rows_, d) = rows;
    cone_offset.segment(used_rows_, d) = offset;
    cone_dims.push_back(d);
    used_rows_ += d;
}

void SocpProblem::finish()
{
    cone_map.conservativeResize(used_rows_, num_vars());
    cone_offset.conservativeResize(used_rows_);
}

namespace
{
constexpr double kInf = std::numeric_limits<double>::infinity();

class LogBarrier
{
public:
    explicit LogBarrier(const SocpProblem& p) : p_(p)
    {
        degree_ = 2.0 * p.num_cones() + static_cast<double>(p.G.rows());
    }

    double degree() const { return degree_; }

    // Barrier value, +inf outside the open feasible region.
    double value(const Eigen::VectorXd& x) const
    {
        double phi = 0.0;
        if (p_.cone_map.rows() > 0)
        {
            const Eigen::VectorXd y = p_.cone_map * x + p_.cone_offset;
            int o = 0;
            for (int d : p_.cone_dims)
            {
                const double t = y(o);
                const double s = t * t - y.segment(o + 1, d - 1).squaredNorm();
                if (!(t > 0.0) || !(s > 0.0))
                    return kInf;
                phi -= std::log(s);
                o += d;
            }
        }
        if (p_.G.rows() > 0)
        {
            const Eigen::VectorXd r = p_.h - p_.G * x;
            if (!(r.minCoeff() > 0.0))
                return kInf;
            phi -= r.array().log().sum();
        }
        return phi;
    }

    void derivatives(const Eigen::VectorXd& x, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const
    {
        const int n = p_.num_vars();
        grad.setZero(n);
        hess.setZero(n, n);
        if (p_.cone_map.rows() > 0)
        {
            const Eigen::VectorXd y = p_.cone_map * x + p_.cone_offset;
            Eigen::VectorXd gy(y.size());
            Eigen::MatrixXd T(p_.cone_map.rows(), n);
            int o = 0;
            for (int d : p_.cone_dims)
            {
                const double t = y(o);
                const auto u = y.segment(o + 1, d - 1);
                const double s = t * t - u.squaredNorm();
                gy(o) = -2.0 * t / s;
                gy.segment(o + 1, d - 1) = (2.0 / s) * u;
                // Hessian block: diag(-2, 2, ..., 2)/s + gy gy^T.
                const auto Lb = p_.cone_map.middleRows(o, d);
                const Eigen::RowVectorXd gl = gy.segment(o, d).transpose() * Lb;
                auto Tb = T.middleRows(o, d);
                Tb = (2.0 / s) * Lb;
                Tb.row(0) *= -1.0;
                Tb.noalias() += gy.segment(o, d) * gl;
                o += d;
            }
            grad.noalias() += p_.cone_map.transpose() * gy;
            hess.noalias() += p_.cone_map.transpose() * T;
        }
        if (p_.G.rows() > 0)
        {
            const Eigen::ArrayXd inv_r = (p_.h - p_.G * x).array().inverse();
            grad.noalias() += p_.G.transpose() * inv_r.matrix();
            hess.noalias() += p_.G.transpose() * (inv_r.square().matrix().asDiagonal() * p_.G);
        }
    }

private:
    const SocpProblem& p_;
    double degree_ = 0.0;
};

Eigen::VectorXd newton_direction(const Eigen::MatrixXd& H, const Eigen::VectorXd& g, const Eigen::MatrixXd& A)
{
    const Eigen::Index n = H.rows();
    if (A.rows() == 0)
    {
        Eigen::LLT<Eigen::MatrixXd> llt(H);
        if (llt.info() == Eigen::Success)
            return -llt.solve(g);
        return -H.ldlt().solve(g);
    }
    const Eigen::Index p = A.rows();
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + p, n + p);
    kkt.topLeftCorner(n, n) = H;
    kkt.topRightCorner(n, p) = A.transpose();
    kkt.bottomLeftCorner(p, n) = A;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + p);
    rhs.head(n) = -g;
    return kkt.partialPivLu().solve(rhs).head(n);
}

} // namespace

SocpResult solve_socp(const SocpProblem& problem, const Eigen::VectorXd& x0, const SocpOptions& options)
{
    SocpResult result;
    result.x = x0;
    const LogBarrier barrier(problem);

    double phi = barrier.value(x0);
    if (!std::isfinite(phi)
        || (problem.A.rows() > 0 && (problem.A * x0 - problem.b).lpNorm<Eigen::Infinity>() > 1e-9))
    {
        result.status = SolveStatus::InfeasibleStart;
        return result;
    }

    const double degree = std::max(barrier.degree(), 1.0);
    double t = degree;
    Eigen::VectorXd x = x0;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    int total = 0;

    while (true)
    {
        for (int it = 0; it < options.max_newton_per_center; ++it)
        {
            if (total >= options.max_newton_total)
                break;
            barrier.derivatives(x, grad, hess);
            const Eigen::VectorXd g = t * problem.c + grad;
            const Eigen::VectorXd dx = newton_direction(hess, g, problem.A);
            ++total;
            const double slope = g.dot(dx);
            if (!std::isfinite(slope))
            {
                result.status = SolveStatus::NumericalFailure;
                result.x = x;
                result.newton_steps = total;
                return result;
            }
            if (-slope / 2.0 <= 1e-10)
                break;

            const double cdx = problem.c.dot(dx);
            double step = 1.0;
            bool accepted = false;
            while (step > 1e-16)
            {
                const Eigen::VectorXd trial = x + step * dx;
                const double phi_trial = barrier.value(trial);
                if (std::isfinite(phi_trial))
                {
                    const double change = t * step * cdx + (phi_trial - phi);
                    if (change <= 0.25 * step * slope)
                    {
                        x = trial;
                        phi = phi_trial;
                        accepted = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if (!accepted)
                break;
        }

        if (degree / t < options.gap_tolerance)
        {
            result.status = SolveStatus::Optimal;
            break;
        }
        if (total >= options.max_newton_total)
        {
            result.status = SolveStatus::IterationLimit;
            break;
        }
        t *= options.growth;
    }

    result.x = x;
    result.objective = problem.c.dot(x);
    result.gap_bound = degree / t;
    result.newton_steps = total;
    return result;
}

LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const LpOptions& options)
{
    const Eigen::Index m = A.rows();
    const Eigen::Index n = A.cols();
    if (c.size() != n || b.size() != m)
        throw std::invalid_argument("solve_lp: dimension mismatch");

    LpResult res;
    const double reg = 1e-13;

    // Mehrotra's starting point.
    Eigen::MatrixXd AAt = A * A.transpose();
    AAt.diagonal().array() += reg * std::max(1.0, AAt.diagonal().maxCoeff());
    const Eigen::LDLT<Eigen::MatrixXd> aat(AAt);
    Eigen::VectorXd x = A.transpose() * aat.solve(b);
    Eigen::VectorXd y = aat.solve(A * c);
    Eigen::VectorXd s = c - A.transpose() * y;
    x.array() += std::max(-1.5 * x.minCoeff(), 0.0);
    s.array() += std::max(-1.5 * s.minCoeff(), 0.0);
    {
        const double xs = x.dot(s);
        const double sx = std::max(x.sum(), 1e-12);
        const double ss = std::max(s.sum(), 1e-12);
        x.array() += 0.5 * xs / ss + 1e-8;
        s.array() += 0.5 * xs / sx + 1e-8;
    }

    const double bnorm = 1.0 + b.norm();
    const double cnorm = 1.0 + c.norm();

    auto max_step = [](const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
        double a = 1.0;
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (dv(i) < 0.0)
                a = std::min(a, -v(i) / dv(i));
        return a;
    };

    res.status = SolveStatus::IterationLimit;
    for (int iter = 0; iter < options.max_iterations; ++iter)
    {
        res.iterations = iter;
        const Eigen::VectorXd rb = A * x - b;
        const Eigen::VectorXd rc = A.transpose() * y + s - c;
        const double mu = x.dot(s) / static_cast<double>(n);
        const double pres = rb.norm() / bnorm;
        const double dres = rc.norm() / cnorm;
        const double gap = mu / (1.0 + std::abs(c.dot(x)));
        if (pres < options.feasibility_tolerance && dres < options.feasibility_tolerance && gap < options.tolerance)
        {
            res.status = SolveStatus::Optimal;
            break;
        }
        // Near-singular normal equations at a converged point: accept at a
        // looser residual level rather than report a failure.
        const bool nearly = pres < 1e2 * options.feasibility_tolerance
                            && dres < 1e2 * options.feasibility_tolerance && gap < options.tolerance;

        const Eigen::VectorXd d = x.cwiseQuotient(s);
        Eigen::MatrixXd normal = A * d.asDiagonal() * A.transpose();
        normal.diagonal().array() += reg * std::max(1.0, normal.diagonal().maxCoeff());
        const Eigen::LDLT<Eigen::MatrixXd> fact(normal);
        if (fact.info() != Eigen::Success)
        {
            res.status = nearly ? SolveStatus::Optimal : SolveStatus::NumericalFailure;
            break;
        }

        auto solve = [&](const Eigen::VectorXd& rxs, Eigen::VectorXd& dx, Eigen::VectorXd& dy, Eigen::VectorXd& ds) {
            const Eigen::VectorXd rhs = -rb - A * rxs.cwiseQuotient(s) - A * d.cwiseProduct(rc);
            dy = fact.solve(rhs);
            ds = -rc - A.transpose() * dy;
            dx = (rxs - x.cwiseProduct(ds)).cwiseQuotient(s);
        };

        Eigen::VectorXd dx_aff, dy_aff, ds_aff;
        solve(-x.cwiseProduct(s), dx_aff, dy_aff, ds_aff);
        const double ap_aff = max_step(x, dx_aff);
        const double ad_aff = max_step(s, ds_aff);
        const double mu_aff = (x + ap_aff * dx_aff).dot(s + ad_aff * ds_aff) / static_cast<double>(n);
        const double sigma = std::pow(mu_aff / mu, 3.0);

        const Eigen::VectorXd rxs = -x.cwiseProduct(s) - dx_aff.cwiseProduct(ds_aff)
                                    + Eigen::VectorXd::Constant(n, sigma * mu);
        Eigen::VectorXd dx, dy, ds;
        solve(rxs, dx, dy, ds);
        if (!dx.allFinite() || !ds.allFinite() || !dy.allFinite())
        {
            res.status = nearly ? SolveStatus::Optimal : SolveStatus::NumericalFailure;
            break;
        }
        const double eta = std::max(0.9, 1.0 - mu);
        const double ap = std::min(1.0, eta * max_step(x, dx));
        const double ad = std::min(1.0, eta * max_step(s, ds));
        x += ap * dx;
        y += ad * dy;
        s += ad * ds;
    }

    res.x = x;
    res.y = y;
    res.s = s;
    res.objective = c.dot(x);
    return res;
}

} // namespace dfrc::opt
