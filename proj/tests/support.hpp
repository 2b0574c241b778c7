/*
Copyright 2026 The swapmc Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Helpers shared by the unit tests and the acceptance binary. Everything
// here that serves as an oracle is written from scratch on plain vectors and
// does not call into the library.

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "swapmc/swapmc.hpp"

namespace swapmc::testing {

using Margins = std::pair<std::vector<int>, std::vector<int>>;

/// Row and column sums of every 0/1 n x m matrix, by brute force over all
/// 2^(n*m) patterns. With `loopless` the diagonal is kept empty.
inline std::set<Margins> brute_force_margins(int n, int m, bool loopless = false) {
    std::vector<std::pair<int, int>> cells;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < m; ++v)
            if (!(loopless && u == v)) cells.emplace_back(u, v);
    std::set<Margins> out;
    const std::uint64_t total = std::uint64_t{1} << cells.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Margins mg{std::vector<int>(static_cast<std::size_t>(n), 0), std::vector<int>(static_cast<std::size_t>(m), 0)};
        for (std::size_t k = 0; k < cells.size(); ++k)
            if (mask >> k & 1) {
                ++mg.first[static_cast<std::size_t>(cells[k].first)];
                ++mg.second[static_cast<std::size_t>(cells[k].second)];
            }
        out.insert(std::move(mg));
    }
    return out;
}

/// Number of 0/1 matrices with the given margins avoiding `banned` cells,
/// by brute force.
inline std::uint64_t brute_force_count(const std::vector<int>& rows, const std::vector<int>& cols,
                                       const std::set<std::pair<int, int>>& banned = {}) {
    const int n = static_cast<int>(rows.size()), m = static_cast<int>(cols.size());
    std::uint64_t count = 0;
    const std::uint64_t total = std::uint64_t{1} << (n * m);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<int> r(static_cast<std::size_t>(n), 0), c(static_cast<std::size_t>(m), 0);
        bool bad = false;
        for (int k = 0; k < n * m && !bad; ++k)
            if (mask >> k & 1) {
                const int u = k / m, v = k % m;
                if (banned.count({u, v})) bad = true;
                ++r[static_cast<std::size_t>(u)];
                ++c[static_cast<std::size_t>(v)];
            }
        if (!bad && r == rows && c == cols) ++count;
    }
    return count;
}

/// Every vector of length `len` with entries in [0, hi].
inline std::vector<std::vector<int>> all_vectors(int len, int hi) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(len), 0);
    while (true) {
        out.push_back(cur);
        int k = len - 1;
        while (k >= 0 && cur[static_cast<std::size_t>(k)] == hi) cur[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) break;
        ++cur[static_cast<std::size_t>(k)];
    }
    return out;
}

inline int sum(const std::vector<int>& v) {
    int s = 0;
    for (int x : v) s += x;
    return s;
}

/// A uniformly random 0/1 matrix (diagonal empty when `loopless`) whose
/// row and column sums all lie in [lo, hi], by rejection.
inline BitMatrix random_matrix_with_margins(std::mt19937_64& gen, int n, int m, int lo, int hi, bool loopless) {
    std::bernoulli_distribution coin(0.5);
    while (true) {
        BitMatrix b(n, m);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < m; ++v)
                if (!(loopless && u == v) && coin(gen)) b.set(u, v);
        bool good = true;
        for (int u = 0; u < n && good; ++u) good = b.row_count(u) >= lo && b.row_count(u) <= hi;
        for (int v = 0; v < m && good; ++v) good = b.col_count(v) >= lo && b.col_count(v) <= hi;
        if (good) return b;
    }
}

/// A pair (X, Y) of realizations of one random instance: X is a random
/// matrix with margins in [lo, hi], Y is X after `steps` chain steps.
inline std::pair<BipartiteRealization, BipartiteRealization> random_pair(std::mt19937_64& gen, int n, int lo, int hi,
                                                                        bool directed, int steps = 400) {
    BitMatrix x = random_matrix_with_margins(gen, n, n, lo, hi, directed);
    BipartiteDegreeSequence seq;
    for (int u = 0; u < n; ++u) seq.u_degrees.push_back(x.row_count(u));
    for (int v = 0; v < n; ++v) seq.v_degrees.push_back(x.col_count(v));
    SpacePtr space = directed ? make_space(seq, ForbiddenMatching::diagonal(n)) : make_space(seq);
    BipartiteRealization a(space, x);
    BipartiteRealization b = a;
    Rng rng(gen(), 0);
    for (int t = 0; t < steps; ++t)
        step_in_place(b, rng, directed ? ChainKind::directed : ChainKind::bipartite, true);
    return {a, b};
}

/// Independent classification of the one-step jump between two distinct
/// realizations on the same instance: 4 if they differ by an alternating
/// 4-cycle, 6 if by an alternating hexagon whose three opposite pairs are
/// all forbidden, 0 otherwise.
inline int jump_type(const BipartiteRealization& a, const BipartiteRealization& b) {
    std::vector<std::pair<int, int>> gone, come;
    for (int u = 0; u < a.n(); ++u)
        for (int v = 0; v < a.m(); ++v) {
            if (a.has_edge(u, v) && !b.has_edge(u, v)) gone.emplace_back(u, v);
            if (!a.has_edge(u, v) && b.has_edge(u, v)) come.emplace_back(u, v);
        }
    if (gone.size() == 2 && come.size() == 2) {
        std::set<int> us, vs;
        for (auto [u, v] : gone) us.insert(u), vs.insert(v);
        return us.size() == 2 && vs.size() == 2 ? 4 : 0;
    }
    if (gone.size() == 3 && come.size() == 3) {
        std::set<int> us, vs;
        for (auto [u, v] : gone) us.insert(u), vs.insert(v);
        if (us.size() != 3 || vs.size() != 3) return 0;
        // The six changed cells span a 3x3 block; the other three cells of
        // the block are the opposite pairs and must all be forbidden.
        std::set<std::pair<int, int>> changed(gone.begin(), gone.end());
        changed.insert(come.begin(), come.end());
        for (int u : us)
            for (int v : vs)
                if (!changed.count({u, v}) && !a.forbidden().contains(u, v)) return 0;
        return 6;
    }
    return 0;
}

}  // namespace swapmc::testing
