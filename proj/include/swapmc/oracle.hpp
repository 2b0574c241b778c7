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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bit_matrix.hpp"
#include "chain.hpp"
#include "errors.hpp"
#include "realization.hpp"

namespace swapmc {

inline constexpr std::size_t default_position_budget = 36;
inline constexpr std::size_t default_state_budget = 5000;

// ---------------------------------------------------------------------------
// Exact rationals (small denominators only)

__extension__ typedef __int128 wide_int;

class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) { normalize(); }

    constexpr std::int64_t num() const noexcept { return num_; }
    constexpr std::int64_t den() const noexcept { return den_; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend constexpr Rational operator+(Rational a, Rational b) {
        return from_wide(static_cast<wide_int>(a.num_) * b.den_ + static_cast<wide_int>(b.num_) * a.den_,
                         static_cast<wide_int>(a.den_) * b.den_);
    }
    friend constexpr Rational operator-(Rational a, Rational b) { return a + Rational(-b.num_, b.den_); }
    friend constexpr Rational operator*(Rational a, Rational b) {
        return from_wide(static_cast<wide_int>(a.num_) * b.num_, static_cast<wide_int>(a.den_) * b.den_);
    }
    Rational& operator+=(Rational b) { return *this = *this + b; }
    Rational& operator-=(Rational b) { return *this = *this - b; }

    friend constexpr bool operator==(const Rational&, const Rational&) = default;
    friend constexpr bool operator<(Rational a, Rational b) {
        return static_cast<wide_int>(a.num_) * b.den_ < static_cast<wide_int>(b.num_) * a.den_;
    }

    friend constexpr Rational abs(Rational a) { return {a.num_ < 0 ? -a.num_ : a.num_, a.den_}; }

    std::string to_string() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

private:
    static constexpr wide_int gcd128(wide_int a, wide_int b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const wide_int t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static constexpr Rational from_wide(wide_int num, wide_int den) {
        const wide_int g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
            throw precondition_error("rational overflow");
        return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
    }

    constexpr void normalize() {
        if (den_ == 0) throw precondition_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline constexpr std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

inline void check_position_budget(const BipartiteDegreeSequence& seq, std::size_t budget) {
    const std::size_t positions = static_cast<std::size_t>(seq.n()) * static_cast<std::size_t>(seq.m());
    if (positions > budget)
        throw budget_error(std::to_string(positions) + " positions exceed the enumeration budget of " +
                           std::to_string(budget));
}

struct Enumerator {
    const BipartiteDegreeSequence& seq;
    const ForbiddenMatching& forbidden;
    std::optional<std::size_t> limit;
    std::vector<int> col_left;
    BitMatrix current;
    std::vector<BitMatrix> found;

    bool full() const { return limit && found.size() >= *limit; }

    // Places row u's edges choosing columns >= from; `need` still to place.
    void place(int u, int from, int need) {
        if (full()) return;
        if (need == 0) {
            row(u + 1);
            return;
        }
        const int m = seq.m();
        for (int v = from; v <= m - need; ++v) {
            if (col_left[static_cast<std::size_t>(v)] == 0 || forbidden.contains(u, v)) continue;
            --col_left[static_cast<std::size_t>(v)];
            current.set(u, v);
            place(u, v + 1, need - 1);
            current.set(u, v, false);
            ++col_left[static_cast<std::size_t>(v)];
        }
    }

    void row(int u) {
        if (full()) return;
        const int n = seq.n();
        if (u == n) {
            if (std::all_of(col_left.begin(), col_left.end(), [](int c) { return c == 0; })) found.push_back(current);
            return;
        }
        // A column cannot take more edges than there are rows left.
        for (int v = 0; v < seq.m(); ++v) {
            int room = 0;
            for (int w = u; w < n; ++w)
                if (!forbidden.contains(w, v)) ++room;
            if (col_left[static_cast<std::size_t>(v)] > room) return;
        }
        place(u, 0, seq.u_degrees[static_cast<std::size_t>(u)]);
    }
};

}  // namespace detail

/// Every realization of `seq` avoiding `forbidden`, without duplicates, in
/// increasing `BitMatrix` order (row bit-patterns, lexicographic). Throws
/// `budget_error` when n * m exceeds `budget`. `limit` stops early.
inline std::vector<BipartiteRealization> enumerate_realizations(const BipartiteDegreeSequence& seq,
                                                                const ForbiddenMatching& forbidden,
                                                                std::size_t budget = default_position_budget,
                                                                std::optional<std::size_t> limit = std::nullopt) {
    seq.validate();
    detail::check_position_budget(seq, budget);
    SpacePtr space = make_space(seq, forbidden);
    detail::Enumerator e{seq, forbidden, limit, seq.v_degrees, BitMatrix(seq.n(), seq.m()), {}};
    if (seq.n() > 0) e.row(0);
    else if (std::all_of(seq.v_degrees.begin(), seq.v_degrees.end(), [](int d) { return d == 0; }))
        e.found.push_back(e.current);
    std::sort(e.found.begin(), e.found.end());
    std::vector<BipartiteRealization> out;
    out.reserve(e.found.size());
    for (auto& bits : e.found) out.emplace_back(space, std::move(bits));
    return out;
}

inline std::vector<BipartiteRealization> enumerate_realizations(const BipartiteDegreeSequence& seq,
                                                                std::size_t budget = default_position_budget) {
    return enumerate_realizations(seq, ForbiddenMatching(seq.n(), seq.m()), budget);
}

/// Number of realizations, counted column by column over the multiset of
/// residual row degrees (memoized). Shares no code with the enumerator.
inline std::uint64_t count_realizations(const BipartiteDegreeSequence& seq, const ForbiddenMatching& forbidden) {
    seq.validate();
    const int n = seq.n(), m = seq.m();
    std::map<std::pair<int, std::vector<int>>, std::uint64_t> memo;
    auto count = [&](auto&& self, int v, std::vector<int>& residual) -> std::uint64_t {
        if (v == m) return std::all_of(residual.begin(), residual.end(), [](int r) { return r == 0; }) ? 1 : 0;
        auto key = std::make_pair(v, residual);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::uint64_t total = 0;
        const int need = seq.v_degrees[static_cast<std::size_t>(v)];
        const int banned = forbidden.partner_of_v(v);
        // Choose `need` rows with residual > 0 for column v.
        auto choose = [&](auto&& rec, int from, int left) -> void {
            if (left == 0) {
                total += self(self, v + 1, residual);
                return;
            }
            for (int u = from; u < n; ++u) {
                if (u == banned || residual[static_cast<std::size_t>(u)] == 0) continue;
                --residual[static_cast<std::size_t>(u)];
                rec(rec, u + 1, left - 1);
                ++residual[static_cast<std::size_t>(u)];
            }
        };
        choose(choose, 0, need);
        memo.emplace(std::move(key), total);
        return total;
    };
    std::vector<int> residual = seq.u_degrees;
    return count(count, 0, residual);
}

inline std::uint64_t count_realizations(const BipartiteDegreeSequence& seq) {
    return count_realizations(seq, ForbiddenMatching(seq.n(), seq.m()));
}

// ---------------------------------------------------------------------------
// Exact kernel

/// Sparse exact transition matrix over the enumerated state space.
struct TransitionMatrix {
    ChainKind kind = ChainKind::bipartite;
    bool lazy = true;
    std::vector<BipartiteRealization> states;
    /// Row i: (j, P[i][j]) for every j with a non-zero entry, sorted by j;
    /// the diagonal is included.
    std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;

    std::size_t size() const noexcept { return states.size(); }

    Rational at(std::size_t i, std::size_t j) const {
        const auto& r = rows[i];
        auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t k) { return e.first < k; });
        return it != r.end() && it->first == j ? it->second : Rational(0);
    }

    /// max |P[i][j] - P[j][i]|, exact.
    Rational max_asymmetry() const {
        Rational worst(0);
        for (std::size_t i = 0; i < size(); ++i)
            for (const auto& [j, p] : rows[i]) worst = std::max(worst, abs(p - at(j, i)));
        return worst;
    }

    /// max |sum_j P[i][j] - 1| over rows, exact.
    Rational max_row_sum_error() const {
        Rational worst(0);
        for (const auto& r : rows) {
            Rational s(0);
            for (const auto& e : r) s += e.second;
            worst = std::max(worst, abs(s - Rational(1)));
        }
        return worst;
    }

    /// max |sum_i P[i][j] - 1| over columns, exact.
    Rational max_col_sum_error() const {
        std::vector<Rational> col(size(), Rational(0));
        for (const auto& r : rows)
            for (const auto& [j, p] : r) col[j] += p;
        Rational worst(0);
        for (const auto& c : col) worst = std::max(worst, abs(c - Rational(1)));
        return worst;
    }

    /// max_j |(pi P)_j - pi_j| for the uniform vector pi, exact.
    Rational uniform_residual() const {
        if (size() == 0) return Rational(0);
        const Rational pi(1, static_cast<std::int64_t>(size()));
        std::vector<Rational> out(size(), Rational(0));
        for (const auto& r : rows)
            for (const auto& [j, p] : r) out[j] += pi * p;
        Rational worst(0);
        for (const auto& x : out) worst = std::max(worst, abs(x - pi));
        return worst;
    }

    bool has_positive_diagonal() const {
        for (std::size_t i = 0; i < size(); ++i)
            if (!(Rational(0) < at(i, i))) return false;
        return true;
    }
};

namespace detail {

using StateIndex = std::unordered_map<BitMatrix, std::size_t, BitMatrixHash>;

inline StateIndex index_states(const std::vector<BipartiteRealization>& states) {
    StateIndex idx;
    idx.reserve(states.size() * 2);
    for (std::size_t i = 0; i < states.size(); ++i) idx.emplace(states[i].matrix(), i);
    return idx;
}

/// Calls `f(move)` for every legal C4 proposal of `r` (one per unordered
/// u-pair and v-pair that alternates).
template <class F>
void for_each_c4(const BipartiteRealization& r, F&& f) {
    for (int ua = 0; ua < r.n(); ++ua)
        for (int ub = ua + 1; ub < r.n(); ++ub)
            for (int va = 0; va < r.m(); ++va)
                for (int vb = va + 1; vb < r.m(); ++vb)
                    if (auto mv = c4_proposal(r, ua, ub, va, vb)) f(*mv);
}

/// Calls `f(move)` for every legal C6 proposal. Only u-triples whose
/// forbidden partners all exist can fire, and each fixes its v-triple.
template <class F>
void for_each_c6(const BipartiteRealization& r, F&& f) {
    const auto& fm = r.forbidden();
    const int n = r.n();
    for (int a = 0; a < n; ++a) {
        if (fm.partner_of_u(a) < 0) continue;
        for (int b = a + 1; b < n; ++b) {
            if (fm.partner_of_u(b) < 0) continue;
            for (int c = b + 1; c < n; ++c) {
                if (fm.partner_of_u(c) < 0) continue;
                const std::array<int, 3> vs{fm.partner_of_u(a), fm.partner_of_u(b), fm.partner_of_u(c)};
                if (auto mv = c6_proposal(r, {a, b, c}, vs)) f(*mv);
            }
        }
    }
}

}  // namespace detail

/// One-step transition probabilities of the chain of kind `kind` over all
/// realizations, as exact rationals. Throws `budget_error` when the
/// enumeration exceeds `position_budget` or there are more than
/// `state_budget` states.
inline TransitionMatrix exact_transition_matrix(const BipartiteDegreeSequence& seq, const ForbiddenMatching& forbidden,
                                                ChainKind kind, bool lazy = true,
                                                std::size_t position_budget = default_position_budget,
                                                std::size_t state_budget = default_state_budget) {
    if (kind == ChainKind::bipartite && !forbidden.empty())
        throw precondition_error("bipartite kernel requires an empty forbidden set");
    if (seq.n() < 2 || seq.m() < 2) throw precondition_error("kernel needs at least two vertices per class");
    TransitionMatrix t;
    t.kind = kind;
    t.lazy = lazy;
    t.states = enumerate_realizations(seq, forbidden, position_budget, state_budget + 1);
    if (t.states.size() > state_budget)
        throw budget_error("more than " + std::to_string(state_budget) + " states");
    const auto idx = detail::index_states(t.states);
    const std::int64_t pairs = binomial(seq.n(), 2) * binomial(seq.m(), 2);
    const std::int64_t triples = binomial(seq.n(), 3) * binomial(seq.m(), 3);
    Rational p4, p6;
    if (kind == ChainKind::bipartite) {
        p4 = Rational(1, (lazy ? 2 : 1) * pairs);
    } else {
        p4 = Rational(1, (lazy ? 4 : 2) * pairs);
        if (triples > 0) p6 = Rational(1, (lazy ? 4 : 2) * triples);
    }
    t.rows.resize(t.states.size());
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        std::map<std::size_t, Rational> row;
        Rational out(0);
        auto add = [&](const SwapMove& mv, Rational p) {
            const std::size_t j = idx.at(apply_move(t.states[i], mv).matrix());
            row[j] += p;
            out += p;
        };
        detail::for_each_c4(t.states[i], [&](const SwapMove& mv) { add(mv, p4); });
        if (kind == ChainKind::directed && triples > 0)
            detail::for_each_c6(t.states[i], [&](const SwapMove& mv) { add(mv, p6); });
        row[i] += Rational(1) - out;
        t.rows[i].assign(row.begin(), row.end());
    }
    return t;
}

// ---------------------------------------------------------------------------
// Connectivity

enum class MoveSet { c4_only, c4_c6 };

struct ConnectivityReport {
    bool connected = true;
    std::size_t components = 0;
    std::size_t states = 0;
};

/// Components of the graph on all realizations whose edges are the legal
/// moves from `moves`.
inline ConnectivityReport swap_graph_connected(const BipartiteDegreeSequence& seq, const ForbiddenMatching& forbidden,
                                               MoveSet moves, std::size_t position_budget = default_position_budget,
                                               std::size_t state_budget = default_state_budget) {
    const auto states = enumerate_realizations(seq, forbidden, position_budget, state_budget + 1);
    if (states.size() > state_budget) throw budget_error("more than " + std::to_string(state_budget) + " states");
    const auto idx = detail::index_states(states);
    std::vector<std::size_t> parent(states.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = states.size();
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto join = [&](const SwapMove& mv) {
            const std::size_t a = find(i), b = find(idx.at(apply_move(states[i], mv).matrix()));
            if (a != b) {
                parent[a] = b;
                --components;
            }
        };
        detail::for_each_c4(states[i], join);
        if (moves == MoveSet::c4_c6) detail::for_each_c6(states[i], join);
    }
    return {components <= 1, components, states.size()};
}

// ---------------------------------------------------------------------------
// Total variation

/// Entry t is the largest total-variation distance to the uniform law,
/// over all point-mass starts, after t steps of the exact kernel.
inline std::vector<double> tv_curve(const TransitionMatrix& p, std::size_t horizon) {
    const std::size_t n = p.size();
    std::vector<double> curve(horizon + 1, 0.0);
    if (n == 0) return curve;
    const double pi = 1.0 / static_cast<double>(n);
    std::vector<std::vector<std::pair<std::size_t, double>>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [j, q] : p.rows[i]) rows[i].emplace_back(j, q.to_double());
    std::vector<double> d(n), next(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(d.begin(), d.end(), 0.0);
        d[s] = 1.0;
        for (std::size_t t = 0;; ++t) {
            double tv = 0.0;
            for (double x : d) tv += std::abs(x - pi);
            curve[t] = std::max(curve[t], 0.5 * tv);
            if (t == horizon) break;
            std::fill(next.begin(), next.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i)
                if (d[i] != 0.0)
                    for (const auto& [j, q] : rows[i]) next[j] += d[i] * q;
            d.swap(next);
        }
    }
    return curve;
}

inline std::vector<double> tv_curve(const BipartiteDegreeSequence& seq, const ForbiddenMatching& forbidden,
                                    ChainKind kind, std::size_t horizon) {
    return tv_curve(exact_transition_matrix(seq, forbidden, kind), horizon);
}

/// Total-variation distance between empirical counts and the uniform law on
/// `states` realizations.
inline double tv_to_uniform(const std::vector<std::uint64_t>& counts, std::size_t states) {
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0 || states == 0) return 1.0;
    const double pi = 1.0 / static_cast<double>(states);
    double tv = 0.0;
    for (auto c : counts) tv += std::abs(static_cast<double>(c) / static_cast<double>(total) - pi);
    tv += pi * static_cast<double>(states - std::min(states, counts.size()));
    return 0.5 * tv;
}

}  // namespace swapmc
