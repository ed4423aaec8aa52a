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

#ifndef DFRC_CONE_SOLVER_HPP
#define DFRC_CONE_SOLVER_HPP

#include <Eigen/Dense>

#include <vector>

namespace dfrc::opt
{
enum class SolveStatus
{
    Optimal,
    IterationLimit,
    InfeasibleStart,
    NumericalFailure,
};

const char* to_string(SolveStatus status);

// minimize c^T x
//   subject to  ||u_i|| <= t_i,  [t_i; u_i] = L_i x + l_i   (second-order cones)
//               G x <= h
//               A x  = b
// Cone rows are stacked in `cone_map`/`cone_offset`; `cone_dims` gives the
// block sizes (1 + dim u_i).
struct SocpProblem
{
    Eigen::VectorXd c;
    Eigen::MatrixXd cone_map;
    Eigen::VectorXd cone_offset;
    std::vector<int> cone_dims;
    Eigen::MatrixXd G;
    Eigen::VectorXd h;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;

    explicit SocpProblem(int num_vars = 0);

    int num_vars() const { return static_cast<int>(c.size()); }
    int num_cones() const { return static_cast<int>(cone_dims.size()); }

    // Appends one cone; `rows` is (1 + dim u) x n.
    void add_cone(const Eigen::MatrixXd& rows, const Eigen::VectorXd& offset);
    void reserve_cone_rows(int rows);
    void finish();

private:
    int used_rows_ = 0;
};

struct SocpOptions
{
    double gap_tolerance = 1e-9;
    double growth = 20.0;
    int max_newton_per_center = 80;
    int max_newton_total = 1500;
};

struct SocpResult
{
    Eigen::VectorXd x;
    double objective = 0.0;
    double gap_bound = 0.0;
    SolveStatus status = SolveStatus::NumericalFailure;
    int newton_steps = 0;
};

// Log-barrier path following from a strictly feasible x0 (A x0 = b required).
SocpResult solve_socp(const SocpProblem& problem, const Eigen::VectorXd& x0, const SocpOptions& options = {});

// minimize c^T x  subject to  A x = b,  x >= 0.
struct LpResult
{
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    Eigen::VectorXd s;
    double objective = 0.0;
    SolveStatus status = SolveStatus::NumericalFailure;
    int iterations = 0;
};

struct LpOptions
{
    double tolerance = 1e-10;
    double feasibility_tolerance = 1e-9;
    int max_iterations = 200;
};

// Mehrotra predictor-corrector interior point on dense normal equations.
LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const LpOptions& options = {});

} // namespace dfrc::opt

#endif
