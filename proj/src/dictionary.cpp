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

#include "dfrc/cone_solver.hpp"
#include "dfrc/errors.hpp"
#include "dfrc/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

namespace dfrc
{
namespace
{
constexpr double kTieTol = 1e-9;
constexpr double kStallTol = 1e-6;
constexpr double kMinStallMu = 0.125;
constexpr double kShake = 0.1;

bool is_boolean(const Eigen::VectorXd& v, double tol)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::min(std::abs(v(i)), std::abs(v(i) - 1.0)) > tol)
            return false;
    return true;
}

int log2_exact(std::size_t size)
{
    if (size == 0 || !std::has_single_bit(size))
        throw std::invalid_argument("dictionary size must be a power of two");
    return std::countr_zero(size);
}

// 2 - 2 cos(2 pi delta / M) for delta = 0..M-1.
std::vector<double> root_distance_table(int M)
{
    std::vector<double> t(static_cast<std::size_t>(M));
    for (int delta = 0; delta < M; ++delta)
        t[static_cast<std::size_t>(delta)] = 2.0 - 2.0 * std::cos(two_pi<double> * delta / M);
    t[0] = 0.0;
    return t;
}

double root_distance(const std::vector<int>& a, const std::vector<int>& b, const std::vector<double>& table, int M)
{
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        d += table[static_cast<std::size_t>(((a[k] - b[k]) % M + M) % M)];
    return d;
}

void check_mk(int M, int K)
{
    if (M < 2)
        throw std::invalid_argument("need M >= 2");
    if (K < 1 || K > M)
        throw std::invalid_argument("need 1 <= K <= M");
}

} // namespace

std::string to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::Selection: return "selection";
    case Scheme::Hybrid: return "hybrid";
    case Scheme::Regularized: return "regularized";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    if (name == "selection")
        return Scheme::Selection;
    if (name == "hybrid")
        return Scheme::Hybrid;
    if (name == "regularized")
        return Scheme::Regularized;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i)
    {
        const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        // r * num / i stays integral; guard the multiplication.
        if (r > std::numeric_limits<std::uint64_t>::max() / num)
            throw std::overflow_error("binomial: overflow");
        r = r * num / static_cast<std::uint64_t>(i);
    }
    return r;
}

SubarrayRange::iterator& SubarrayRange::iterator::operator++()
{
    const int K = static_cast<int>(current_.size());
    int i = K - 1;
    while (i >= 0 && current_[static_cast<std::size_t>(i)] == M_ - K + i)
        --i;
    if (i < 0)
    {
        current_.clear();
        return *this;
    }
    ++current_[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < K; ++j)
        current_[static_cast<std::size_t>(j)] = current_[static_cast<std::size_t>(j - 1)] + 1;
    return *this;
}

SubarrayRange::SubarrayRange(int M, int K) : M_(M), K_(K), count_(0)
{
    if (K < 1 || M < 1)
        throw std::invalid_argument("enumerate_subarrays: need 1 <= K <= M");
    if (K > M)
        throw std::invalid_argument("enumerate_subarrays: K exceeds M");
    count_ = binomial(M, K);
}

SubarrayRange::iterator SubarrayRange::begin() const
{
    std::vector<int> first(static_cast<std::size_t>(K_));
    for (int k = 0; k < K_; ++k)
        first[static_cast<std::size_t>(k)] = k;
    return iterator(M_, std::move(first));
}

SubarrayRange enumerate_subarrays(int M, int K) { return SubarrayRange(M, K); }

Codeword make_codeword(const Subarray& sub, int M, std::optional<PermutationMatrix> perm, std::uint64_t bit_index)
{
    Codeword cw;
    cw.sub = sub;
    cw.bit_index = bit_index;
    CVectorXd v = rotated_symbol<double>(sub, M);
    if (perm)
    {
        if (perm->size() != sub.size())
            throw std::invalid_argument("make_codeword: permutation size differs from K");
        v = perm->apply(v);
    }
    cw.perm = std::move(perm);
    cw.vector = std::move(v);
    return cw;
}

void SymbolDictionary::validate() const
{
    if (entries.empty() || !std::has_single_bit(entries.size()))
        throw std::invalid_argument("dictionary: size must be a power of two");
    if ((std::size_t{1} << Nb) != entries.size())
        throw std::invalid_argument("dictionary: Nb does not match size");
    if (scheme == Scheme::Regularized && M != 2 * K)
        throw std::invalid_argument("dictionary: regularized scheme needs M = 2K");
    for (std::size_t i = 0; i < entries.size(); ++i)
    {
        const Codeword& cw = entries[i];
        if (cw.bit_index != i)
            throw std::invalid_argument("dictionary: bit_index must equal entry position");
        if (cw.sub.size() != K || cw.vector.size() != K)
            throw std::invalid_argument("dictionary: codeword length differs from K");
        cw.sub.check_fits(M);
        if (scheme == Scheme::Selection && cw.perm && !cw.perm->is_identity())
            throw std::invalid_argument("dictionary: selection codewords carry no permutation");
    }
}

double squared_distance(const CVectorXd& a, const CVectorXd& b) { return (a - b).squaredNorm(); }

DistanceStats distance_stats(const SymbolDictionary& dict)
{
    const std::size_t L = dict.size();
    if (L < 2)
        throw std::invalid_argument("distance_stats: need at least two codewords");
    DistanceStats st;
    st.d_min.assign(L, std::numeric_limits<double>::infinity());
    st.d_max.assign(L, 0.0);
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = i + 1; j < L; ++j)
        {
            const double d = squared_distance(dict.entries[i].vector, dict.entries[j].vector);
            st.d_min[i] = std::min(st.d_min[i], d);
            st.d_min[j] = std::min(st.d_min[j], d);
            st.d_max[i] = std::max(st.d_max[i], d);
            st.d_max[j] = std::max(st.d_max[j], d);
        }
    st.global_min = *std::min_element(st.d_min.begin(), st.d_min.end());
    st.global_max = *std::max_element(st.d_max.begin(), st.d_max.end());
    return st;
}

std::pair<Codeword, Codeword> analytic_extreme_pair(int M, int K)
{
    check_mk(M, K);
    if (M % 2 != 0)
        throw std::invalid_argument("analytic_extreme_pair: M must be even");
    if (K > M / 2)
        throw std::invalid_argument("analytic_extreme_pair: need K <= M/2");
    std::vector<int> first(static_cast<std::size_t>(K));
    std::vector<int> second(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
    {
        first[static_cast<std::size_t>(k)] = k;
        second[static_cast<std::size_t>(k)] = M / 2 + k;
    }
    return {make_codeword(Subarray(first), M, std::nullopt, 0), make_codeword(Subarray(second), M, std::nullopt, 1)};
}

SymbolDictionary greedy_maxmin_dictionary(int M, int K, std::size_t size)
{
    check_mk(M, K);
    const int Nb = log2_exact(size);
    if (size > binomial(M, K))
        throw std::invalid_argument("greedy_maxmin_dictionary: size exceeds C(M, K)");

    std::vector<std::vector<int>> cand;
    cand.reserve(static_cast<std::size_t>(binomial(M, K)));
    for (const Subarray& s : enumerate_subarrays(M, K))
        cand.push_back(s.indices());

    const auto table = root_distance_table(M);
    const auto pair = analytic_extreme_pair(M, K);
    std::vector<double> running(cand.size(), std::numeric_limits<double>::infinity());
    std::vector<bool> used(cand.size(), false);
    std::vector<std::size_t> chosen;

    auto take = [&](const std::vector<int>& idx) {
        const auto it = std::lower_bound(cand.begin(), cand.end(), idx);
        const auto c = static_cast<std::size_t>(it - cand.begin());
        used[c] = true;
        chosen.push_back(c);
        for (std::size_t i = 0; i < cand.size(); ++i)
            running[i] = std::min(running[i], root_distance(cand[i], cand[c], table, M));
    };
    take(pair.first.sub.indices());
    if (size >= 2)
        take(pair.second.sub.indices());
    if (size == 1)
        chosen.resize(1);

    while (chosen.size() < size)
    {
        std::size_t best = cand.size();
        for (std::size_t i = 0; i < cand.size(); ++i)
            if (!used[i] && (best == cand.size() || running[i] > running[best] + kTieTol))
                best = i;
        take(cand[best]);
    }

    SymbolDictionary dict;
    dict.scheme = Scheme::Selection;
    dict.M = M;
    dict.K = K;
    dict.Nb = Nb;
    for (std::size_t i = 0; i < chosen.size(); ++i)
        dict.entries.push_back(make_codeword(Subarray(cand[chosen[i]]), M, std::nullopt, i));
    return dict;
}

namespace
{
// LP data for the ordered selection matrix relaxation.
struct SelectionLp
{
    int M = 0;
    int K = 0;
    std::vector<std::pair<int, int>> cells; // (k, m) for each P variable
    int nu = -1;                            // column of nu, -1 if absent
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    int num_cols = 0;
};

SelectionLp build_selection_lp(int M, int K, const std::vector<Codeword>& chosen)
{
    SelectionLp lp;
    lp.M = M;
    lp.K = K;
    std::map<std::pair<int, int>, int> col;
    for (int k = 0; k < K; ++k)
        for (int m = k; m <= k + M - K; ++m)
        {
            col[{k, m}] = static_cast<int>(lp.cells.size());
            lp.cells.emplace_back(k, m);
        }
    int n = static_cast<int>(lp.cells.size());
    if (!chosen.empty())
        lp.nu = n++;

    const int num_order = (K - 1) * (M - K);
    const int num_chosen = static_cast<int>(chosen.size());
    const int rows = K + M + 2 * num_chosen + num_order;
    const int slack0 = n;
    n += M + 2 * num_chosen + num_order;
    lp.num_cols = n;
    lp.A = Eigen::MatrixXd::Zero(rows, n);
    lp.b = Eigen::VectorXd::Zero(rows);

    int r = 0;
    int slack = slack0;
    for (int k = 0; k < K; ++k, ++r)
    {
        for (int m = k; m <= k + M - K; ++m)
            lp.A(r, col[{k, m}]) = 1.0;
        lp.b(r) = 1.0;
    }
    for (int m = 0; m < M; ++m, ++r)
    {
        for (int k = std::max(0, m - (M - K)); k <= std::min(K - 1, m); ++k)
            lp.A(r, col[{k, m}]) = 1.0;
        lp.A(r, slack++) = 1.0;
        lp.b(r) = 1.0;
    }
    // nu + 2 Re sum_k conj(c_k) a_m P_km + s = 2K.
    for (const Codeword& cw : chosen)
    {
        if (cw.vector.size() != K)
            throw std::invalid_argument("scp_comm_select: chosen codeword length differs from K");
        lp.A(r, lp.nu) = 1.0;
        for (std::size_t c = 0; c < lp.cells.size(); ++c)
        {
            const auto [k, m] = lp.cells[c];
            const std::complex<double> am = unit_phasor(two_pi<double> * m / M);
            lp.A(r, static_cast<int>(c)) = 2.0 * std::real(std::conj(cw.vector(k)) * am);
        }
        lp.A(r, slack++) = 1.0;
        lp.b(r) = 2.0 * K;
        ++r;
    }
    // Exclusion cut: sum_k P_{k, s_k} <= K - 1 for every chosen subarray s.
    for (const Codeword& cw : chosen)
    {
        for (int k = 0; k < K; ++k)
        {
            const auto it = col.find({k, cw.sub[k]});
            if (it != col.end())
                lp.A(r, it->second) = 1.0;
        }
        lp.A(r, slack++) = 1.0;
        lp.b(r) = K - 1;
        ++r;
    }
    // Row k+1 may not place mass at or before m unless row k did strictly before m.
    for (int k = 0; k + 1 < K; ++k)
        for (int m = k + 1; m <= k + M - K; ++m, ++r)
        {
            for (int mm = k + 1; mm <= m; ++mm)
                lp.A(r, col[{k + 1, mm}]) += 1.0;
            for (int mm = k; mm < m; ++mm)
                lp.A(r, col[{k, mm}]) -= 1.0;
            lp.A(r, slack++) = 1.0;
        }
    return lp;
}

double min_distance_to(const CVectorXd& v, const std::vector<Codeword>& chosen)
{
    double d = std::numeric_limits<double>::infinity();
    for (const Codeword& c : chosen)
        d = std::min(d, squared_distance(v, c.vector));
    return d;
}

} // namespace

double comm_relaxation_bound(int M, int K, const std::vector<Codeword>& chosen)
{
    check_mk(M, K);
    if (chosen.empty())
        throw std::invalid_argument("comm_relaxation_bound: need at least one chosen codeword");
    const SelectionLp lp = build_selection_lp(M, K, chosen);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(lp.num_cols);
    c(lp.nu) = -1.0;
    const opt::LpResult res = opt::solve_lp(c, lp.A, lp.b);
    if (res.status != opt::SolveStatus::Optimal)
        throw std::runtime_error(std::string("comm_relaxation_bound: LP ") + opt::to_string(res.status));
    return res.x(lp.nu);
}

CommScpResult scp_comm_select(int M, int K, const std::vector<Codeword>& chosen, const CommScpOptions& options)
{
    check_mk(M, K);
    if (options.mu < 0.0)
        throw std::invalid_argument("scp_comm_select: mu must be non-negative");
    const SelectionLp lp = build_selection_lp(M, K, chosen);
    const std::size_t ncell = lp.cells.size();

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ncell));
    for (std::size_t i = 0; i < ncell; ++i)
        p(static_cast<Eigen::Index>(i)) = unit(rng);
    // Small fixed perturbation so that each LP has a unique optimal vertex.
    Eigen::VectorXd jitter(static_cast<Eigen::Index>(ncell));
    for (std::size_t i = 0; i < ncell; ++i)
        jitter(static_cast<Eigen::Index>(i)) = 1e-7 * unit(rng);

    CommScpResult out;
    bool boolean = false;
    double mu = options.mu;
    for (int it = 0; it < options.max_iter && !boolean; ++it)
    {
        out.iterations = it + 1;
        Eigen::VectorXd c = Eigen::VectorXd::Zero(lp.num_cols);
        if (lp.nu >= 0)
            c(lp.nu) = -1.0;
        for (std::size_t i = 0; i < ncell; ++i)
        {
            const auto e = static_cast<Eigen::Index>(i);
            c(e) = -mu * (2.0 * p(e) - 1.0) - jitter(e);
        }
        const opt::LpResult res = opt::solve_lp(c, lp.A, lp.b);
        if (res.status != opt::SolveStatus::Optimal && res.status != opt::SolveStatus::IterationLimit)
            return out;
        const Eigen::VectorXd next = res.x.head(static_cast<Eigen::Index>(ncell));
        boolean = is_boolean(next, options.boolean_tol);
        const bool stalled = !boolean && (next - p).lpNorm<Eigen::Infinity>() < kStallTol;
        p = next;
        // A fractional fixed point of the linearisation: redraw the
        // linearisation point and strengthen the penalty.
        if (stalled)
        {
            mu = std::max(2.0 * mu, kMinStallMu);
            for (Eigen::Index i = 0; i < p.size(); ++i)
                p(i) = unit(rng);
        }
    }
    if (!boolean)
        return out;

    std::vector<int> z(static_cast<std::size_t>(M), 0);
    for (std::size_t i = 0; i < ncell; ++i)
        if (p(static_cast<Eigen::Index>(i)) > 0.5)
            ++z[static_cast<std::size_t>(lp.cells[i].second)];
    std::vector<int> idx;
    for (int m = 0; m < M; ++m)
    {
        if (z[static_cast<std::size_t>(m)] > 1)
            return out;
        if (z[static_cast<std::size_t>(m)] == 1)
            idx.push_back(m);
    }
    if (static_cast<int>(idx.size()) != K)
        return out;
    out.codeword = make_codeword(Subarray(idx), M);
    out.min_distance = chosen.empty() ? 0.0 : min_distance_to(out.codeword->vector, chosen);
    return out;
}

SymbolDictionary scp_comm_dictionary(int M, int K, std::size_t size, int restarts, const CommScpOptions& options)
{
    const int Nb = log2_exact(size);
    if (size > binomial(M, K))
        throw std::invalid_argument("scp_comm_dictionary: size exceeds C(M, K)");
    if (restarts < 1)
        throw std::invalid_argument("scp_comm_dictionary: need at least one restart");
    const auto pair = analytic_extreme_pair(M, K);
    std::vector<Codeword> chosen{pair.first};
    if (size >= 2)
        chosen.push_back(pair.second);

    while (chosen.size() < size)
    {
        std::optional<Codeword> best;
        double best_d = -1.0;
        for (int r = 0; r < restarts; ++r)
        {
            CommScpOptions o = options;
            o.seed = options.seed + static_cast<std::uint64_t>(chosen.size()) * 1000003ull + static_cast<std::uint64_t>(r);
            const CommScpResult res = scp_comm_select(M, K, chosen, o);
            if (!res.codeword || !(res.min_distance > kTieTol))
                continue;
            if (res.min_distance > best_d + kTieTol
                || (std::abs(res.min_distance - best_d) <= kTieTol && res.codeword->sub < best->sub))
            {
                best = res.codeword;
                best_d = res.min_distance;
            }
        }
        if (!best)
            throw InfeasibleError("scp_comm_dictionary: no restart produced a new boolean codeword");
        best->bit_index = chosen.size();
        chosen.push_back(*best);
    }

    SymbolDictionary dict;
    dict.scheme = Scheme::Selection;
    dict.M = M;
    dict.K = K;
    dict.Nb = Nb;
    dict.entries = std::move(chosen);
    return dict;
}

RadarScpResult scp_radar_select(const ArrayGeometry<double>& geometry, int K, const ReceiveArray<double>& receive,
                                const PatternGrid& grid, double sidelobe_eps, const std::vector<Subarray>& exclude,
                                const RadarScpOptions& options)
{
    const int M = geometry.M;
    check_mk(M, K);
    if (options.mu < 0.0)
        throw std::invalid_argument("scp_radar_select: mu must be non-negative");
    if (!(sidelobe_eps > 0.0))
        throw InfeasibleError("scp_radar_select: sidelobe level must be positive");
    const int N = receive.size();
    const int MN = M * N;

    // Coupler scale: largest per-antenna block norm of the full-array design.
    std::vector<int> all(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m)
        all[static_cast<std::size_t>(m)] = m;
    const MinimaxDesign full = design_minimax_weights(Subarray(all), geometry, receive, grid, sidelobe_eps, options.design);
    if (!full.feasible)
        throw InfeasibleError("scp_radar_select: full array cannot meet the sidelobe level");
    double beta = 0.0;
    for (int m = 0; m < M; ++m)
        beta = std::max(beta, full.w.segment(m * N, N).norm());
    beta = std::max(beta, 1e-6);

    // Variables: [Re v (MN), Im v (MN), z (M), rho]; pattern is v^T c.
    const int iz = 2 * MN;
    const int irho = iz + M;
    const int n = irho + 1;
    const double ref = options.design.profile == PhaseProfile::ApertureCenter
                           ? 0.5 * (geometry.position(0) + geometry.position(M - 1) + receive.positions.front()
                                    + receive.positions.back())
                           : 0.0;

    opt::SocpProblem socp(n);
    socp.reserve_cone_rows(3 * static_cast<int>(grid.mainlobe.size() + grid.sidelobe.size()) + M * (1 + 2 * N));
    Eigen::MatrixXd rows(3, n);
    Eigen::VectorXd offset(3);
    auto fill_response = [&](double theta) {
        rows.setZero();
        const double s = two_pi<double> * std::sin(theta);
        for (int m = 0; m < M; ++m)
            for (int r = 0; r < N; ++r)
            {
                const int e = m * N + r;
                const double phase = s * (geometry.position(m) + receive.positions[r] - ref);
                rows(1, e) = std::cos(phase);
                rows(1, MN + e) = -std::sin(phase);
                rows(2, e) = std::sin(phase);
                rows(2, MN + e) = std::cos(phase);
            }
    };
    for (double theta : grid.mainlobe)
    {
        fill_response(theta);
        rows(0, irho) = 1.0;
        offset << 0.0, -1.0, 0.0;
        socp.add_cone(rows, offset);
    }
    for (double theta : grid.sidelobe)
    {
        fill_response(theta);
        offset << sidelobe_eps, 0.0, 0.0;
        socp.add_cone(rows, offset);
    }
    for (int m = 0; m < M; ++m)
    {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(1 + 2 * N, n);
        g(0, iz + m) = beta;
        for (int r = 0; r < N; ++r)
        {
            g(1 + r, m * N + r) = 1.0;
            g(1 + N + r, MN + m * N + r) = 1.0;
        }
        socp.add_cone(g, Eigen::VectorXd::Zero(1 + 2 * N));
    }
    socp.finish();

    const int nlin = 2 * M + static_cast<int>(exclude.size());
    socp.G = Eigen::MatrixXd::Zero(nlin, n);
    socp.h = Eigen::VectorXd::Zero(nlin);
    for (int m = 0; m < M; ++m)
    {
        socp.G(m, iz + m) = -1.0;
        socp.G(M + m, iz + m) = 1.0;
        socp.h(M + m) = 1.0;
    }
    for (std::size_t e = 0; e < exclude.size(); ++e)
    {
        const Subarray& s = exclude[e];
        if (s.size() != K)
            throw std::invalid_argument("scp_radar_select: excluded subarray size differs from K");
        for (int k = 0; k < K; ++k)
            socp.G(2 * M + static_cast<int>(e), iz + s[k]) = 1.0;
        socp.h(2 * M + static_cast<int>(e)) = K - 1;
    }
    socp.A = Eigen::MatrixXd::Zero(1, n);
    socp.A.block(0, iz, 1, M).setOnes();
    socp.b = Eigen::VectorXd::Constant(1, K);

    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    x0.segment(iz, M).setConstant(static_cast<double>(K) / M);
    x0(irho) = 1.5;

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd zk(M);
    for (int m = 0; m < M; ++m)
        zk(m) = unit(rng);
    zk *= static_cast<double>(K) / zk.sum();

    RadarScpResult out;
    bool boolean = false;
    double mu = options.mu;
    for (int it = 0; it < options.max_iter && !boolean; ++it)
    {
        out.iterations = it + 1;
        socp.c.setZero();
        socp.c(irho) = 1.0;
        for (int m = 0; m < M; ++m)
            socp.c(iz + m) = mu * (1.0 - 2.0 * zk(m));
        const opt::SocpResult res = opt::solve_socp(socp, x0, options.design.solver);
        if (res.status == opt::SolveStatus::InfeasibleStart)
            return out;
        const Eigen::VectorXd next = res.x.segment(iz, M);
        boolean = is_boolean(next, options.boolean_tol);
        const bool stalled = !boolean && (next - zk).lpNorm<Eigen::Infinity>() < kStallTol;
        zk = next;
        if (stalled)
        {
            mu = std::max(2.0 * mu, kMinStallMu);
            for (int m = 0; m < M; ++m)
                zk(m) += kShake * (unit(rng) - 0.5);
        }
    }
    if (!boolean)
        return out;

    std::vector<int> idx;
    for (int m = 0; m < M; ++m)
        if (zk(m) > 0.5)
            idx.push_back(m);
    if (static_cast<int>(idx.size()) != K)
        return out;
    const Subarray sub(idx);
    const MinimaxDesign d = design_minimax_weights(sub, geometry, receive, grid, sidelobe_eps, options.design);
    if (!d.feasible)
        return out;
    out.codeword = make_codeword(sub, M);
    out.ripple = d.ripple;
    return out;
}

std::vector<RadarRanking> rank_subarrays_by_ripple(const ArrayGeometry<double>& geometry, int K,
                                                   const ReceiveArray<double>& receive, const PatternGrid& grid,
                                                   double sidelobe_eps, const RadarRankingOptions& options)
{
    check_mk(geometry.M, K);
    std::vector<RadarRanking> ranking;
    std::vector<int> design_of;
    std::map<std::vector<std::int64_t>, int> design_ids;
    std::vector<std::vector<double>> design_positions;
    for (const Subarray& s : enumerate_subarrays(geometry.M, K))
    {
        const VirtualAperture ap = VirtualAperture::build(s, geometry, receive);
        const auto [it, fresh] =
            design_ids.emplace(aperture_key(ap, options.design.profile), static_cast<int>(design_positions.size()));
        if (fresh)
            design_positions.push_back(ap.positions);
        design_of.push_back(it->second);
        ranking.push_back({s, 1.0, 0.0, false});
    }

    // Subarrays sharing a virtual position set share a design; translated sets
    // differ only by a pattern phase under the aperture-centre profile.
    const std::vector<double> report = angle_grid(options.report_step_deg);
    std::vector<ApertureDesign> designs(design_positions.size());
    std::vector<double> side_db(design_positions.size(), 0.0);
    parallel_for(design_positions.size(), resolve_workers(options.workers), [&](std::size_t i) {
        designs[i] = design_aperture(design_positions[i], grid, sidelobe_eps, options.design);
        if (designs[i].feasible)
            side_db[i] = peak_sidelobe_db(report, aperture_pattern(design_positions[i], designs[i].coefficients, report),
                                          grid);
    });

    for (std::size_t c = 0; c < ranking.size(); ++c)
    {
        const auto id = static_cast<std::size_t>(design_of[c]);
        ranking[c].ripple = designs[id].ripple;
        ranking[c].feasible = designs[id].feasible;
        ranking[c].sidelobe_db = side_db[id];
    }
    std::stable_sort(ranking.begin(), ranking.end(),
                     [](const RadarRanking& a, const RadarRanking& b) { return a.ripple < b.ripple; });
    return ranking;
}

SymbolDictionary build_radar_dictionary_by_enumeration(const ArrayGeometry<double>& geometry, int K, std::size_t size,
                                                       const ReceiveArray<double>& receive, const PatternGrid& grid,
                                                       double sidelobe_eps, const RadarRankingOptions& options,
                                                       std::vector<RadarRanking>* ranking)
{
    const int Nb = log2_exact(size);
    if (size > binomial(geometry.M, K))
        throw std::invalid_argument("build_radar_dictionary_by_enumeration: size exceeds C(M, K)");
    std::vector<RadarRanking> ranked = rank_subarrays_by_ripple(geometry, K, receive, grid, sidelobe_eps, options);
    const double limit_db = 20.0 * std::log10(sidelobe_eps) + 1e-9;

    SymbolDictionary dict;
    dict.scheme = Scheme::Selection;
    dict.M = geometry.M;
    dict.K = K;
    dict.Nb = Nb;
    for (const RadarRanking& r : ranked)
    {
        if (dict.entries.size() == size)
            break;
        if (r.feasible && r.sidelobe_db <= limit_db)
            dict.entries.push_back(make_codeword(r.sub, geometry.M, std::nullopt, dict.entries.size()));
    }
    if (dict.entries.size() < size)
        throw InfeasibleError("radar dictionary: only " + std::to_string(dict.entries.size())
                              + " subarrays meet the sidelobe requirement");
    if (ranking)
        *ranking = std::move(ranked);
    return dict;
}

SymbolDictionary permute_augment(const SymbolDictionary& base)
{
    if (base.scheme != Scheme::Selection)
        throw std::invalid_argument("permute_augment: base dictionary must use the selection scheme");
    if (base.K > 10)
        throw std::invalid_argument("permute_augment: K! enumeration refused for K > 10");
    const int M = base.M;
    const int K = base.K;
    const auto table = root_distance_table(M);

    SymbolDictionary out;
    out.scheme = Scheme::Hybrid;
    out.M = M;
    out.K = K;
    out.Nb = base.Nb;

    std::vector<std::vector<int>> kept;
    std::vector<int> perm(static_cast<std::size_t>(K));
    std::vector<int> roots(static_cast<std::size_t>(K));
    for (const Codeword& cw : base.entries)
    {
        const std::vector<int>& idx = cw.sub.indices();
        for (int k = 0; k < K; ++k)
            perm[static_cast<std::size_t>(k)] = k;
        std::vector<int> best_perm = perm;
        double best = -1.0;
        std::size_t hint = 0; // codeword that last limited a candidate
        do
        {
            for (int k = 0; k < K; ++k)
                roots[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
            double running = std::numeric_limits<double>::infinity();
            bool pruned = false;
            for (std::size_t j = 0; j < kept.size() && !pruned; ++j)
            {
                const std::size_t q = (j + hint) % kept.size();
                running = std::min(running, root_distance(roots, kept[q], table, M));
                if (running <= best + kTieTol)
                {
                    hint = q;
                    pruned = true;
                }
            }
            if (!pruned && running > best + kTieTol)
            {
                best = running;
                best_perm = perm;
                if (kept.empty())
                    break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));

        for (int k = 0; k < K; ++k)
            roots[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(best_perm[static_cast<std::size_t>(k)])];
        kept.push_back(roots);
        out.entries.push_back(make_codeword(cw.sub, M, PermutationMatrix(best_perm), out.entries.size()));
    }
    return out;
}

SymbolDictionary build_regularized_dictionary(int K)
{
    if (K < 1 || K > 30)
        throw std::invalid_argument("build_regularized_dictionary: need 1 <= K <= 30");
    SymbolDictionary dict;
    dict.scheme = Scheme::Regularized;
    dict.M = 2 * K;
    dict.K = K;
    dict.Nb = K;
    const std::uint64_t L = std::uint64_t{1} << K;
    dict.entries.reserve(static_cast<std::size_t>(L));
    for (std::uint64_t value = 0; value < L; ++value)
    {
        std::vector<int> idx(static_cast<std::size_t>(K));
        Codeword cw;
        cw.vector.resize(K);
        for (int k = 0; k < K; ++k)
        {
            const int bit = static_cast<int>((value >> (K - 1 - k)) & 1u);
            idx[static_cast<std::size_t>(k)] = 2 * k + bit;
            cw.vector(k) = bit ? -1.0 : 1.0;
        }
        cw.sub = Subarray(std::move(idx));
        cw.bit_index = value;
        dict.entries.push_back(std::move(cw));
    }
    return dict;
}

} // namespace dfrc
