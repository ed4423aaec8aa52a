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

#ifndef DFRC_DICTIONARY_HPP
#define DFRC_DICTIONARY_HPP

#include "dfrc/array.hpp"
#include "dfrc/pattern.hpp"

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dfrc
{
enum class Scheme
{
    Selection,
    Hybrid,
    Regularized,
};

std::string to_string(Scheme scheme);
// Accepts "selection", "hybrid", "regularized".
Scheme parse_scheme(std::string_view name);

// C(n, k) in 64-bit arithmetic; throws on overflow.
std::uint64_t binomial(int n, int k);

// All K-subsets of {0..M-1} in lexicographic order, generated on demand.
class SubarrayRange
{
public:
    class iterator
    {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Subarray;
        using difference_type = std::ptrdiff_t;
        using pointer = const Subarray*;
        using reference = Subarray;

        iterator() = default;
        iterator(int M, std::vector<int> current) : M_(M), current_(std::move(current)) {}

        Subarray operator*() const { return Subarray(current_); }
        iterator& operator++();
        iterator operator++(int)
        {
            iterator old = *this;
            ++*this;
            return old;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.current_ == b.current_; }

    private:
        int M_ = 0;
        std::vector<int> current_;
    };

    SubarrayRange(int M, int K);

    std::uint64_t size() const { return count_; }
    iterator begin() const;
    iterator end() const { return iterator(M_, {}); }

private:
    int M_;
    int K_;
    std::uint64_t count_;
};

SubarrayRange enumerate_subarrays(int M, int K);

// One dictionary symbol. For selection and hybrid codewords `vector` is the
// rotated symbol of `sub` with slot k carrying antenna sub[perm[k]]; for
// regularized codewords it holds the +1/-1 per-subgroup phases.
struct Codeword
{
    Subarray sub;
    std::optional<PermutationMatrix> perm;
    CVectorXd vector;
    std::uint64_t bit_index = 0;

    // Antenna transmitting waveform slot k.
    int antenna(int k) const { return perm ? sub[(*perm)[k]] : sub[k]; }
};

Codeword make_codeword(const Subarray& sub, int M, std::optional<PermutationMatrix> perm = std::nullopt,
                       std::uint64_t bit_index = 0);

struct SymbolDictionary
{
    Scheme scheme = Scheme::Selection;
    int M = 0;
    int K = 0;
    int Nb = 0;
    std::vector<Codeword> entries;

    std::size_t size() const { return entries.size(); }

    // Throws std::invalid_argument on size, bit-index or geometry violations.
    void validate() const;
};

double squared_distance(const CVectorXd& a, const CVectorXd& b);

struct DistanceStats
{
    std::vector<double> d_min;
    std::vector<double> d_max;
    double global_min = 0.0;
    double global_max = 0.0;
};

DistanceStats distance_stats(const SymbolDictionary& dict);

// {0..K-1} and {M/2..M/2+K-1}: antipodal rotated symbols at distance 4K.
std::pair<Codeword, Codeword> analytic_extreme_pair(int M, int K);

// Grows the analytic pair by repeatedly adding the candidate with the largest
// minimum distance to the chosen set; ties go to the lexicographically smaller
// subarray.
SymbolDictionary greedy_maxmin_dictionary(int M, int K, std::size_t size);

struct CommScpOptions
{
    double mu = 1.0;
    int max_iter = 50;
    std::uint64_t seed = 1;
    double boolean_tol = 1e-6;
};

struct CommScpResult
{
    std::optional<Codeword> codeword;
    double min_distance = 0.0;
    int iterations = 0;
};

// Sequential linear programming over the ordered K x M selection matrix P:
// maximise nu + mu * (2 P^k - 1) . P subject to nu <= ||P a - c_l||^2 for every
// chosen codeword (linear in P for a valid selection), unit row sums, column
// sums <= 1 and ascending row order. Stops when P is boolean.
CommScpResult scp_comm_select(int M, int K, const std::vector<Codeword>& chosen, const CommScpOptions& options = {});

// Optimum nu of the mu = 0 relaxation; an upper bound on the boolean max-min.
double comm_relaxation_bound(int M, int K, const std::vector<Codeword>& chosen);

// Analytic pair followed by best-of-`restarts` SCP selections.
SymbolDictionary scp_comm_dictionary(int M, int K, std::size_t size, int restarts, const CommScpOptions& options = {});

struct RadarScpOptions
{
    double mu = 1.0;
    int max_iter = 30;
    std::uint64_t seed = 1;
    double boolean_tol = 1e-6;
    MinimaxOptions design{};
};

struct RadarScpResult
{
    std::optional<Codeword> codeword;
    double ripple = 1.0;
    int iterations = 0;
};

// Joint (w, z, rho) cone program with group couplers ||J_m w|| <= beta z_m,
// 0 <= z <= 1, 1^T z = K and the boolean penalty linearised at z^k. Subsets in
// `exclude` are cut off with sum_{m in S} z_m <= K - 1. The returned ripple is
// that of a fresh fixed-subarray design.
RadarScpResult scp_radar_select(const ArrayGeometry<double>& geometry, int K, const ReceiveArray<double>& receive,
                                const PatternGrid& grid, double sidelobe_eps, const std::vector<Subarray>& exclude,
                                const RadarScpOptions& options = {});

struct RadarRanking
{
    Subarray sub;
    double ripple = 1.0;
    double sidelobe_db = 0.0;
    bool feasible = false;
};

struct RadarRankingOptions
{
    MinimaxOptions design{};
    double report_step_deg = 0.1;
    int workers = 0;
};

// Every K-subset with its minimax ripple and reporting-grid peak sidelobe,
// sorted by ripple (stable on lexicographic order).
std::vector<RadarRanking> rank_subarrays_by_ripple(const ArrayGeometry<double>& geometry, int K,
                                                   const ReceiveArray<double>& receive, const PatternGrid& grid,
                                                   double sidelobe_eps, const RadarRankingOptions& options = {});

// The `size` best-ripple subarrays whose reporting-grid peak sidelobe is at or
// below 20 log10(sidelobe_eps) dB.
SymbolDictionary build_radar_dictionary_by_enumeration(const ArrayGeometry<double>& geometry, int K, std::size_t size,
                                                       const ReceiveArray<double>& receive, const PatternGrid& grid,
                                                       double sidelobe_eps, const RadarRankingOptions& options = {},
                                                       std::vector<RadarRanking>* ranking = nullptr);

// For each codeword in order, the waveform permutation maximising the minimum
// distance to the codewords already kept. Refuses K > 10.
SymbolDictionary permute_augment(const SymbolDictionary& base);

// M = 2K; bit b_k (MSB first) selects antenna 2k + b_k with phase 0 or pi.
SymbolDictionary build_regularized_dictionary(int K);

} // namespace dfrc

#endif
