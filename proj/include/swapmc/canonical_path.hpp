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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bit_matrix.hpp"
#include "conditions.hpp"
#include "errors.hpp"
#include "realization.hpp"

namespace swapmc {

// ---------------------------------------------------------------------------
// Auxiliary matrix

/// Integer matrix over U x V with entries in {-1, 0, 1, 2}; forbidden
/// positions are stars and take no part in any arithmetic.
class AuxiliaryMatrix {
public:
    /// Value reported by `at` for a star position.
    static constexpr int star = 9;

    AuxiliaryMatrix(int n, int m, ForbiddenMatching stars)
        : n_(n), m_(m), entries_(static_cast<std::size_t>(n) * static_cast<std::size_t>(m), 0),
          stars_(std::move(stars)) {}

    /// The 0/1 matrix of a realization.
    explicit AuxiliaryMatrix(const BipartiteRealization& r) : AuxiliaryMatrix(r.n(), r.m(), r.forbidden()) {
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < m_; ++v) entries_[index(u, v)] = r.has_edge(u, v) ? 1 : 0;
    }

    int n() const noexcept { return n_; }
    int m() const noexcept { return m_; }
    const ForbiddenMatching& stars() const noexcept { return stars_; }

    bool is_star(int u, int v) const noexcept { return stars_.contains(u, v); }
    int at(int u, int v) const noexcept { return is_star(u, v) ? star : entries_[index(u, v)]; }

    void set(int u, int v, int value) {
        if (is_star(u, v)) throw precondition_error("cannot write to a star position");
        if (value < -1 || value > 2) throw precondition_error("auxiliary entries must lie in {-1,0,1,2}");
        entries_[index(u, v)] = static_cast<std::int8_t>(value);
    }

    int row_sum(int u) const noexcept {
        int s = 0;
        for (int v = 0; v < m_; ++v)
            if (!is_star(u, v)) s += entries_[index(u, v)];
        return s;
    }

    int col_sum(int v) const noexcept {
        int s = 0;
        for (int u = 0; u < n_; ++u)
            if (!is_star(u, v)) s += entries_[index(u, v)];
        return s;
    }

    int count(int value) const noexcept {
        int c = 0;
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < m_; ++v)
                if (!is_star(u, v) && entries_[index(u, v)] == value) ++c;
        return c;
    }

    std::vector<std::pair<int, int>> positions_of(int value) const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < m_; ++v)
                if (!is_star(u, v) && entries_[index(u, v)] == value) out.emplace_back(u, v);
        return out;
    }

    /// No -1 and no 2 entries.
    bool is_binary() const noexcept { return count(-1) == 0 && count(2) == 0; }

    /// Applies a switch (see `SwapMove`). Throws if it touches a star or
    /// would leave the entry range.
    void apply_switch(const SwapMove& sw) {
        if (sw.kind != MoveKind::switch_op && sw.kind != MoveKind::c4)
            throw precondition_error("only switches act on auxiliary matrices");
        for (const auto& [u, v] : sw.removed())
            if (is_star(u, v) || entries_[index(u, v)] <= -1)
                throw illegal_move_error("switch " + to_string(sw) + " would leave the entry range");
        for (const auto& [u, v] : sw.inserted())
            if (is_star(u, v) || entries_[index(u, v)] >= 2)
                throw illegal_move_error("switch " + to_string(sw) + " would leave the entry range");
        for (const auto& [u, v] : sw.removed()) --entries_[index(u, v)];
        for (const auto& [u, v] : sw.inserted()) ++entries_[index(u, v)];
    }

    /// The 0/1 pattern; requires `is_binary()`.
    BitMatrix to_bits() const {
        if (!is_binary()) throw precondition_error("auxiliary matrix is not a 0/1 matrix");
        BitMatrix bits(n_, m_);
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < m_; ++v)
                if (!is_star(u, v) && entries_[index(u, v)] == 1) bits.set(u, v);
        return bits;
    }

    /// One row per line, entries separated by spaces, stars as `*`.
    std::string render() const {
        std::string s;
        for (int u = 0; u < n_; ++u) {
            for (int v = 0; v < m_; ++v) {
                if (v) s += ' ';
                s += is_star(u, v) ? std::string("*") : std::to_string(entries_[index(u, v)]);
            }
            s += '\n';
        }
        return s;
    }

    friend bool operator==(const AuxiliaryMatrix&, const AuxiliaryMatrix&) = default;

private:
    std::size_t index(int u, int v) const noexcept {
        return static_cast<std::size_t>(u) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(v);
    }

    int n_ = 0;
    int m_ = 0;
    std::vector<std::int8_t> entries_;
    ForbiddenMatching stars_;
};

/// M_X + M_Y - M_Z, stars passed through.
inline AuxiliaryMatrix auxiliary(const BipartiteRealization& x, const BipartiteRealization& y,
                                 const BipartiteRealization& z) {
    if (!x.same_space(y) || !x.same_space(z))
        throw precondition_error("auxiliary: realizations belong to different instances");
    AuxiliaryMatrix a(x.n(), x.m(), x.forbidden());
    for (int u = 0; u < x.n(); ++u)
        for (int v = 0; v < x.m(); ++v) {
            if (a.is_star(u, v)) continue;
            a.set(u, v, int{x.has_edge(u, v)} + int{y.has_edge(u, v)} - int{z.has_edge(u, v)});
        }
    return a;
}

/// Positions (stars excluded) where the two matrices differ.
inline std::size_t hamming_distance(const AuxiliaryMatrix& a, const AuxiliaryMatrix& b) {
    if (a.n() != b.n() || a.m() != b.m()) throw precondition_error("hamming_distance: shape mismatch");
    if (!(a.stars() == b.stars())) throw precondition_error("hamming_distance: forbidden sets differ");
    std::size_t d = 0;
    for (int u = 0; u < a.n(); ++u)
        for (int v = 0; v < a.m(); ++v)
            if (!a.is_star(u, v) && a.at(u, v) != b.at(u, v)) ++d;
    return d;
}

inline std::size_t hamming_distance(const AuxiliaryMatrix& a, const BipartiteRealization& b) {
    return hamming_distance(a, AuxiliaryMatrix(b));
}

// ---------------------------------------------------------------------------
// Cycle decomposition

struct Chord {
    int u;
    int v;
    bool x_edge;  ///< in X but not Y; otherwise in Y but not X

    friend bool operator==(const Chord&, const Chord&) = default;
};

/// Alternating cycle u_0 v_0 u_1 v_1 ... u_{l-1} v_{l-1}. Chord (u_k, v_k)
/// is an X-edge and chord (v_k, u_{k+1 mod l}) a Y-edge.
struct AlternatingCycle {
    std::vector<int> us;
    std::vector<int> vs;

    /// Number of U-vertices; the cycle has 2 * half_length() chords.
    int half_length() const noexcept { return static_cast<int>(us.size()); }

    std::vector<Chord> chords() const {
        std::vector<Chord> out;
        const std::size_t l = us.size();
        for (std::size_t k = 0; k < l; ++k) {
            out.push_back({us[k], vs[k], true});
            out.push_back({us[(k + 1) % l], vs[k], false});
        }
        return out;
    }

    friend bool operator==(const AlternatingCycle&, const AlternatingCycle&) = default;
};

struct CycleDecomposition {
    std::vector<AlternatingCycle> cycles;

    std::size_t total_chords() const {
        std::size_t t = 0;
        for (const auto& c : cycles) t += 2 * c.us.size();
        return t;
    }

    friend bool operator==(const CycleDecomposition&, const CycleDecomposition&) = default;
};

/// Deterministic decomposition of E(X) symmetric-difference E(Y) into
/// alternating cycles.
///
/// Each circuit starts at the lowest-indexed u with unused chords, leaves
/// every u along its lowest-indexed unused X-edge and every v along its
/// lowest-indexed unused Y-edge, and ends on its first return to the start.
/// Along the walk the current trail is kept on a stack; the first repeated
/// vertex closes a cycle, which is popped off.
inline CycleDecomposition decompose(const BipartiteRealization& x, const BipartiteRealization& y) {
    if (!x.same_space(y)) throw precondition_error("decompose: realizations belong to different instances");
    const int n = x.n(), m = x.m();
    std::vector<std::vector<int>> x_out(static_cast<std::size_t>(n));  // u -> v over X-edges
    std::vector<std::vector<int>> y_out(static_cast<std::size_t>(m));  // v -> u over Y-edges
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < m; ++v) {
            const bool in_x = x.has_edge(u, v), in_y = y.has_edge(u, v);
            if (in_x && !in_y) x_out[static_cast<std::size_t>(u)].push_back(v);
            if (in_y && !in_x) y_out[static_cast<std::size_t>(v)].push_back(u);
        }
    std::vector<std::size_t> x_next(static_cast<std::size_t>(n), 0), y_next(static_cast<std::size_t>(m), 0);
    auto x_left = [&](int u) { return x_next[static_cast<std::size_t>(u)] < x_out[static_cast<std::size_t>(u)].size(); };

    // Stack entries: u encoded as u, v encoded as n + v.
    std::vector<int> stack;
    std::vector<int> where(static_cast<std::size_t>(n + m), -1);
    CycleDecomposition dec;

    auto close_cycle = [&](std::size_t from) {
        AlternatingCycle c;
        std::vector<int> seq(stack.begin() + static_cast<std::ptrdiff_t>(from), stack.end());
        if (seq.front() >= n) std::rotate(seq.begin(), seq.begin() + 1, seq.end());  // start at a u
        for (std::size_t k = 0; k < seq.size(); k += 2) {
            c.us.push_back(seq[k]);
            c.vs.push_back(seq[k + 1] - n);
        }
        for (std::size_t k = from + 1; k < stack.size(); ++k) where[static_cast<std::size_t>(stack[k])] = -1;
        stack.resize(from + 1);
        dec.cycles.push_back(std::move(c));
    };

    for (int start = 0; start < n; ++start) {
        while (x_left(start)) {
            stack.assign(1, start);
            where[static_cast<std::size_t>(start)] = 0;
            int cur = start;
            while (true) {
                int next;
                if (cur < n) {
                    auto& i = x_next[static_cast<std::size_t>(cur)];
                    next = n + x_out[static_cast<std::size_t>(cur)][i++];
                } else {
                    auto& i = y_next[static_cast<std::size_t>(cur - n)];
                    next = y_out[static_cast<std::size_t>(cur - n)][i++];
                }
                const int seen = where[static_cast<std::size_t>(next)];
                if (seen >= 0) {
                    close_cycle(static_cast<std::size_t>(seen));
                    if (next == start) break;
                } else {
                    where[static_cast<std::size_t>(next)] = static_cast<int>(stack.size());
                    stack.push_back(next);
                }
                cur = next;
            }
            where[static_cast<std::size_t>(start)] = -1;
        }
    }
    return dec;
}

/// `r` with every chord of `cycle` toggled.
inline BipartiteRealization flip_cycle(const BipartiteRealization& r, const AlternatingCycle& cycle) {
    BitMatrix bits = r.matrix();
    for (const Chord& c : cycle.chords()) bits.flip(c.u, c.v);
    return {r.space_ptr(), std::move(bits)};
}

/// Milestones H_0 = X, ..., H_l = Y; H_i is H_{i-1} with cycle i toggled.
inline std::vector<BipartiteRealization> milestones(const BipartiteRealization& x, const BipartiteRealization& y,
                                                   const CycleDecomposition& dec) {
    std::vector<BipartiteRealization> out{x};
    for (const auto& c : dec.cycles) out.push_back(flip_cycle(out.back(), c));
    if (!(out.back() == y)) throw precondition_error("milestones: decomposition does not lead from X to Y");
    return out;
}

// ---------------------------------------------------------------------------
// Sweep

/// The cycle's u-vertex whose row sum, restricted to the cycle's columns
/// (stars excluded), is smallest in `aux`; ties go to the lowest index.
/// `aux` is M_X + M_Y - M_G for the milestone G the cycle starts from.
inline int cornerstone(const AuxiliaryMatrix& aux, const AlternatingCycle& cycle) {
    if (cycle.us.empty()) throw precondition_error("cornerstone of an empty cycle");
    int best = -1;
    int best_sum = 0;
    for (int u : cycle.us) {
        int s = 0;
        for (int v : cycle.vs)
            if (!aux.is_star(u, v)) s += aux.at(u, v);
        if (best < 0 || s < best_sum || (s == best_sum && u < best)) {
            best = u;
            best_sum = s;
        }
    }
    return best;
}

inline int cornerstone(const BipartiteRealization& x, const BipartiteRealization& y, const BipartiteRealization& g,
                       const AlternatingCycle& cycle) {
    return cornerstone(auxiliary(x, y, g), cycle);
}

struct SweepResult {
    std::vector<SwapMove> moves;
    /// State after each move; the last one equals the target milestone.
    std::vector<BipartiteRealization> states;
    /// True for the state between the two C4-swaps of a double-step.
    std::vector<bool> intermediate;
    int cornerstone = -1;
    int single_steps = 0;
    int double_steps = 0;
    int c6_moves = 0;
};

/// Swap sequence from milestone `g` to milestone `g_next`, which differ
/// exactly on the chords of `cycle`, anchored at `corner`.
///
/// The cycle is relabelled u1 = corner, v1, u2, ..., u_l, v_l with u1v1
/// absent from `g` and v_l u1 present. Each sweep starts at the first v_i
/// (i > end) adjacent to u1 and walks the start-chord back to the end-chord
/// one single-step (C4) at a time. When the next position in row u1 is
/// forbidden, a double-step handles the hexagon u1 v_{s-2} u_{s-1} v_{s-1}
/// u_s v_s with one C6-swap or two C4-swaps.
inline SweepResult sweep(const BipartiteRealization& g, const BipartiteRealization& g_next,
                         const AlternatingCycle& cycle, int corner) {
    if (!g.same_space(g_next)) throw precondition_error("sweep: milestones belong to different instances");
    const int l = cycle.half_length();
    if (l < 2) throw precondition_error("sweep: an alternating cycle has at least four chords");
    {
        BitMatrix diff = g.matrix() ^ g_next.matrix();
        BitMatrix expect(g.n(), g.m());
        for (const Chord& c : cycle.chords()) expect.set(c.u, c.v);
        if (!(diff == expect)) throw precondition_error("sweep: milestones do not differ exactly on the cycle");
    }
    const auto at = std::find(cycle.us.begin(), cycle.us.end(), corner);
    if (at == cycle.us.end()) throw precondition_error("sweep: cornerstone is not on the cycle");
    const int c = static_cast<int>(at - cycle.us.begin());

    // 1-based labels: pu[1..l], pv[1..l].
    std::vector<int> pu(static_cast<std::size_t>(l) + 1), pv(static_cast<std::size_t>(l) + 1);
    const int fwd_v = cycle.vs[static_cast<std::size_t>(c)];
    const bool forward = !g.has_edge(corner, fwd_v);
    for (int k = 1; k <= l; ++k) {
        if (forward) {
            pu[static_cast<std::size_t>(k)] = cycle.us[static_cast<std::size_t>((c + k - 1) % l)];
            pv[static_cast<std::size_t>(k)] = cycle.vs[static_cast<std::size_t>((c + k - 1) % l)];
        } else {
            pu[static_cast<std::size_t>(k)] = cycle.us[static_cast<std::size_t>(((c - (k - 1)) % l + l) % l)];
            pv[static_cast<std::size_t>(k)] = cycle.vs[static_cast<std::size_t>(((c - k) % l + l) % l)];
        }
    }
    auto U = [&](int k) { return pu[static_cast<std::size_t>(k)]; };
    auto V = [&](int k) { return pv[static_cast<std::size_t>(k)]; };
    for (int k = 1; k <= l; ++k) {
        const int next_u = k == l ? U(1) : U(k + 1);
        if (g.has_edge(U(k), V(k)) || !g.has_edge(next_u, V(k)))
            throw precondition_error("sweep: cycle chords do not alternate in the start milestone");
    }

    SweepResult out;
    out.cornerstone = corner;
    BipartiteRealization z = g;
    auto emit = [&](const SwapMove& mv, bool intermediate) {
        apply_move_in_place(z, mv);
        out.moves.push_back(mv);
        out.states.push_back(z);
        out.intermediate.push_back(intermediate);
    };
    const int u1 = U(1);
    int end = 1;
    while (true) {
        int i = end + 1;
        while (i < l && !z.has_edge(u1, V(i))) ++i;
        int s = i;
        while (s > end) {
            if (z.is_chord(u1, V(s - 1))) {
                // v_{s-1}u_s, v_s u1  =>  u1 v_{s-1}, u_s v_s
                emit(SwapMove::c4(U(s), u1, V(s - 1), V(s)), false);
                ++out.single_steps;
                s -= 1;
                continue;
            }
            if (g.forbidden().empty())
                throw precondition_error("sweep: non-chord in the cornerstone row without a forbidden set");
            if (s - 2 < end) throw precondition_error("sweep: double-step would pass the end-chord");
            ++out.double_steps;
            const int a = V(s - 2), um = U(s - 1), vm = V(s - 1), us = U(s), vs = V(s);
            const bool p_chord = z.is_chord(us, a);   // v_{s-2} u_s
            const bool q_chord = z.is_chord(um, vs);  // u_{s-1} v_s
            if (!p_chord && !q_chord) {
                emit(SwapMove::c6(um, a, u1, vs, us, vm), false);
                ++out.c6_moves;
            } else {
                // Split the hexagon along the chord into two 4-cycles; exactly
                // one of them alternates now, the other after the first swap.
                std::array<std::array<int, 4>, 2> quads;
                if (p_chord)
                    quads = {{{u1, us, a, vs}, {um, us, a, vm}}};
                else
                    quads = {{{u1, um, a, vs}, {um, us, vm, vs}}};
                auto first = c4_on(z, quads[0][0], quads[0][1], quads[0][2], quads[0][3]);
                int other = 1;
                if (!first) {
                    first = c4_on(z, quads[1][0], quads[1][1], quads[1][2], quads[1][3]);
                    other = 0;
                }
                if (!first) throw precondition_error("sweep: no alternating 4-cycle in the double-step hexagon");
                emit(*first, true);
                const auto& q = quads[static_cast<std::size_t>(other)];
                const auto second = c4_on(z, q[0], q[1], q[2], q[3]);
                if (!second) throw precondition_error("sweep: double-step cannot be completed");
                emit(*second, false);
            }
            s -= 2;
        }
        if (i == l) break;
        end = i;
    }
    if (!(z == g_next)) throw precondition_error("sweep: did not reach the target milestone");
    return out;
}

inline SweepResult sweep(const BipartiteRealization& g, const BipartiteRealization& g_next,
                         const AlternatingCycle& cycle, const BipartiteRealization& x, const BipartiteRealization& y) {
    return sweep(g, g_next, cycle, cornerstone(x, y, g, cycle));
}

// ---------------------------------------------------------------------------
// Canonical path

struct CycleSummary {
    int half_length = 0;
    int cornerstone = -1;
    int moves = 0;
    int single_steps = 0;
    int double_steps = 0;
    int c6_moves = 0;
};

/// X = states[0], ..., states.back() = Y; states[k] follows from
/// states[k-1] by moves[k-1].
struct CanonicalPath {
    CycleDecomposition decomposition;
    std::vector<BipartiteRealization> states;
    std::vector<SwapMove> moves;
    /// Index in `states` of each milestone H_0..H_l.
    std::vector<std::size_t> milestone_indices;
    std::vector<bool> intermediate;
    /// Cycle being processed when the state was produced (-1 for X).
    std::vector<int> cycle_of_state;
    std::vector<CycleSummary> cycles;
};

inline CanonicalPath canonical_path(const BipartiteRealization& x, const BipartiteRealization& y) {
    CanonicalPath path;
    path.decomposition = decompose(x, y);
    path.states.push_back(x);
    path.intermediate.push_back(false);
    path.cycle_of_state.push_back(-1);
    path.milestone_indices.push_back(0);
    BipartiteRealization g = x;
    for (std::size_t i = 0; i < path.decomposition.cycles.size(); ++i) {
        const auto& cycle = path.decomposition.cycles[i];
        BipartiteRealization next = flip_cycle(g, cycle);
        SweepResult sw = sweep(g, next, cycle, cornerstone(x, y, g, cycle));
        for (std::size_t k = 0; k < sw.moves.size(); ++k) {
            path.moves.push_back(sw.moves[k]);
            path.states.push_back(std::move(sw.states[k]));
            path.intermediate.push_back(sw.intermediate[k]);
            path.cycle_of_state.push_back(static_cast<int>(i));
        }
        path.milestone_indices.push_back(path.states.size() - 1);
        path.cycles.push_back({cycle.half_length(), sw.cornerstone, static_cast<int>(sw.moves.size()), sw.single_steps,
                               sw.double_steps, sw.c6_moves});
        g = std::move(next);
    }
    if (!(path.states.back() == y)) throw precondition_error("canonical_path: did not reach Y");
    return path;
}

// ---------------------------------------------------------------------------
// Bad positions

struct BadCounts {
    int twos = 0;
    int minus_ones = 0;
    std::vector<std::pair<int, int>> positions;

    bool within_budget() const noexcept { return twos <= 2 && minus_ones <= 1; }
};

inline BadCounts bad_counts(const AuxiliaryMatrix& aux) {
    BadCounts b;
    for (const auto& p : aux.positions_of(2)) {
        ++b.twos;
        b.positions.push_back(p);
    }
    for (const auto& p : aux.positions_of(-1)) {
        ++b.minus_ones;
        b.positions.push_back(p);
    }
    return b;
}

struct BadPositionReport {
    bool ok = true;
    std::size_t states_checked = 0;
    /// Maxima over the matrices the bound is asserted on (the state itself,
    /// or its double-step completion).
    int max_twos = 0;
    int max_minus_ones = 0;
    /// Maxima over every state, intermediates included.
    int raw_max_twos = 0;
    int raw_max_minus_ones = 0;
    std::size_t resolved_by_completion = 0;
    /// States with a bad position outside the cornerstone's row.
    std::size_t off_cornerstone_row = 0;
    /// Columns of the -1 entries seen, for inspection.
    std::vector<int> minus_one_columns;
    /// First offending state index, if any.
    std::optional<std::size_t> first_violation;
    std::size_t violations = 0;
};

/// Checks that every M_X + M_Y - M_Z along `path` has at most two 2-entries
/// and at most one -1-entry. With a forbidden set, a state that exceeds this
/// is accepted when it is the intermediate of a double-step and the
/// completing state meets the bound.
inline BadPositionReport verify_bad_positions(const CanonicalPath& path, const BipartiteRealization& x,
                                              const BipartiteRealization& y) {
    BadPositionReport rep;
    const bool restricted = !x.forbidden().empty();
    std::vector<BadCounts> counts;
    counts.reserve(path.states.size());
    for (const auto& z : path.states) counts.push_back(bad_counts(auxiliary(x, y, z)));
    for (std::size_t k = 0; k < path.states.size(); ++k) {
        ++rep.states_checked;
        const BadCounts& c = counts[k];
        rep.raw_max_twos = std::max(rep.raw_max_twos, c.twos);
        rep.raw_max_minus_ones = std::max(rep.raw_max_minus_ones, c.minus_ones);
        for (const auto& [u, v] : auxiliary(x, y, path.states[k]).positions_of(-1))
            if (std::find(rep.minus_one_columns.begin(), rep.minus_one_columns.end(), v) == rep.minus_one_columns.end())
                rep.minus_one_columns.push_back(v);
        const int cyc = path.cycle_of_state[k];
        if (cyc >= 0 && !path.intermediate[k]) {
            const int corner = path.cycles[static_cast<std::size_t>(cyc)].cornerstone;
            for (const auto& [u, v] : c.positions)
                if (u != corner) {
                    ++rep.off_cornerstone_row;
                    break;
                }
        }
        const BadCounts* used = &c;
        if (!c.within_budget() && restricted && path.intermediate[k] && k + 1 < path.states.size()) {
            used = &counts[k + 1];
            ++rep.resolved_by_completion;
        }
        rep.max_twos = std::max(rep.max_twos, used->twos);
        rep.max_minus_ones = std::max(rep.max_minus_ones, used->minus_ones);
        if (!used->within_budget()) {
            rep.ok = false;
            ++rep.violations;
            if (!rep.first_violation) rep.first_violation = k;
        }
    }
    std::sort(rep.minus_one_columns.begin(), rep.minus_one_columns.end());
    return rep;
}

// ---------------------------------------------------------------------------
// Switch repair

/// Vertices of the cycle the state belongs to; the 2-entries are removed
/// with switches inside this submatrix.
struct RepairContext {
    std::vector<int> us;
    std::vector<int> vs;

    static RepairContext of(const AlternatingCycle& c) {
        RepairContext ctx{c.us, c.vs};
        std::sort(ctx.us.begin(), ctx.us.end());
        std::sort(ctx.vs.begin(), ctx.vs.end());
        return ctx;
    }
};

struct RepairResult {
    BipartiteRealization realization;
    std::vector<SwapMove> switches;
    /// Hamming distance between the input matrix and the realization.
    std::size_t distance = 0;
};

namespace detail {

inline bool contains(const std::vector<int>& sorted, int x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

/// Removes one 2-entry with a switch inside the cycle submatrix. Returns
/// false if no eligible switch exists.
inline bool eliminate_two(AuxiliaryMatrix& a, const RepairContext& ctx, std::vector<SwapMove>& switches) {
    const auto twos = a.positions_of(2);
    const auto [r, vj] = twos.front();
    if (!contains(ctx.us, r) || !contains(ctx.vs, vj))
        throw condition_violated_error("2-entry at " + detail::pos(r, vj) + " lies outside the cycle submatrix");
    for (int uk : ctx.us) {
        if (uk == r || a.at(uk, vj) != 0) continue;
        for (int vl : ctx.vs) {
            if (vl == vj || a.is_star(uk, vl) || a.is_star(r, vl)) continue;
            const int below = a.at(uk, vl), here = a.at(r, vl);
            if (below <= 1 && below > here) {
                // r vj, uk vl  =>  r vl, uk vj
                const SwapMove sw = SwapMove::make_switch(r, uk, vj, vl, 1);
                a.apply_switch(sw);
                switches.push_back(sw);
                return true;
            }
        }
    }
    return false;
}

/// Removes the -1-entry with one switch, or two through U'' x V''.
inline bool eliminate_minus_one(AuxiliaryMatrix& a, std::vector<SwapMove>& switches) {
    const auto [u0, v0] = a.positions_of(-1).front();
    std::vector<int> up, vp;  // U', V'
    for (int u = 0; u < a.n(); ++u)
        if (a.at(u, v0) == 1) up.push_back(u);
    for (int v = 0; v < a.m(); ++v)
        if (a.at(u0, v) == 1) vp.push_back(v);
    for (int u : up)
        for (int v : vp)
            if (a.at(u, v) == 0) {
                // u0 v, u v0  =>  u0 v0, u v
                const SwapMove sw = SwapMove::make_switch(u0, u, v, v0, 1);
                a.apply_switch(sw);
                switches.push_back(sw);
                return true;
            }
    std::vector<int> upp, vpp;  // U'', V''
    for (int u = 0; u < a.n(); ++u)
        for (int v : vp)
            if (a.at(u, v) == 0) {
                upp.push_back(u);
                break;
            }
    for (int v = 0; v < a.m(); ++v)
        for (int u : up)
            if (a.at(u, v) == 0) {
                vpp.push_back(v);
                break;
            }
    for (int u2 : upp)
        for (int v2 : vpp) {
            if (a.at(u2, v2) != 1) continue;
            for (int u1 : up) {
                if (a.at(u1, v2) != 0) continue;
                for (int v1 : vp) {
                    if (a.at(u2, v1) != 0 || a.at(u1, v1) != 1) continue;
                    // u1 v1, u2 v2 => u1 v2, u2 v1; then u0 v1, u1 v0 => u0 v0, u1 v1
                    const SwapMove first = SwapMove::make_switch(u1, u2, v1, v2, 1);
                    const SwapMove second = SwapMove::make_switch(u0, u1, v1, v0, 1);
                    a.apply_switch(first);
                    a.apply_switch(second);
                    switches.push_back(first);
                    switches.push_back(second);
                    return true;
                }
            }
        }
    return false;
}

}  // namespace detail

/// Turns an auxiliary matrix with a few bad entries into a realization by
/// switches: the 2-entries first (inside the cycle submatrix given by
/// `ctx`), then the -1-entry (anywhere in the matrix). Throws
/// `condition_violated_error` if no eligible switch exists; for instances
/// meeting the mixing condition that should not happen.
inline RepairResult repair_to_realization(const AuxiliaryMatrix& aux, const SpacePtr& space, const RepairContext& ctx) {
    if (aux.n() != space->n() || aux.m() != space->m() || !(aux.stars() == space->forbidden))
        throw precondition_error("repair: matrix does not match the instance");
    AuxiliaryMatrix a = aux;
    std::vector<SwapMove> switches;
    // Each switch removes one bad entry, so the loops are bounded by the
    // number of bad entries.
    for (int guard = a.count(2); a.count(2) > 0; --guard) {
        if (guard <= 0 || !detail::eliminate_two(a, ctx, switches))
            throw condition_violated_error("no eligible switch removes the 2-entry");
    }
    for (int guard = a.count(-1); a.count(-1) > 0; --guard) {
        if (guard <= 0 || !detail::eliminate_minus_one(a, switches))
            throw condition_violated_error("no eligible switch removes the -1-entry");
    }
    BipartiteRealization k(space, a.to_bits());
    const std::size_t d = hamming_distance(aux, k);
    return {std::move(k), std::move(switches), d};
}

/// Distance bound on M_X + M_Y - M_Z versus its repair: 16, plus 4 when the
/// state is the intermediate of a double-step and the repair starts from the
/// completing state.
inline std::size_t repair_distance_bound(bool via_completion) { return via_completion ? 20 : 16; }

struct RepairReport {
    bool ok = true;
    std::size_t states_checked = 0;
    std::size_t failures = 0;
    std::size_t max_distance = 0;
    std::size_t max_switches = 0;
    std::size_t via_completion = 0;
    std::vector<std::pair<std::size_t, std::string>> failure_details;
};

/// Runs the repair on every state of `path`, from the completing state for
/// double-step intermediates, and checks the switch count (at most 4) and
/// distance (`repair_distance_bound`).
inline RepairReport verify_repairs(const CanonicalPath& path, const BipartiteRealization& x,
                                   const BipartiteRealization& y) {
    RepairReport rep;
    for (std::size_t k = 0; k < path.states.size(); ++k) {
        ++rep.states_checked;
        const int cyc = path.cycle_of_state[k] >= 0 ? path.cycle_of_state[k] : 0;
        RepairContext ctx;
        if (!path.decomposition.cycles.empty())
            ctx = RepairContext::of(path.decomposition.cycles[static_cast<std::size_t>(cyc)]);
        const bool completion = path.intermediate[k] && k + 1 < path.states.size();
        if (completion) ++rep.via_completion;
        const AuxiliaryMatrix own = auxiliary(x, y, path.states[k]);
        const AuxiliaryMatrix used = completion ? auxiliary(x, y, path.states[k + 1]) : own;
        auto fail = [&](std::string why) {
            rep.ok = false;
            ++rep.failures;
            if (rep.failure_details.size() < 16) rep.failure_details.emplace_back(k, std::move(why));
        };
        try {
            RepairResult r = repair_to_realization(used, x.space_ptr(), ctx);
            const std::size_t d = hamming_distance(own, r.realization);
            rep.max_distance = std::max(rep.max_distance, d);
            rep.max_switches = std::max(rep.max_switches, r.switches.size());
            if (r.switches.size() > 4) fail("used " + std::to_string(r.switches.size()) + " switches");
            if (d > repair_distance_bound(completion)) fail("distance " + std::to_string(d));
        } catch (const condition_violated_error& e) {
            fail(e.what());
        }
    }
    return rep;
}

/// Per-cycle move counts against l - 1 (no forbidden set) or 2l.
struct ThetaReport {
    bool ok = true;
    std::size_t cycles = 0;
    std::size_t violations = 0;
    int max_moves_per_half_length_excess = 0;
};

inline ThetaReport verify_move_counts(const CanonicalPath& path, bool restricted) {
    ThetaReport rep;
    for (const auto& c : path.cycles) {
        ++rep.cycles;
        const bool good = restricted ? c.moves <= 2 * c.half_length : c.moves == c.half_length - 1;
        rep.max_moves_per_half_length_excess = std::max(rep.max_moves_per_half_length_excess, c.moves - (c.half_length - 1));
        if (!good) {
            rep.ok = false;
            ++rep.violations;
        }
    }
    return rep;
}

}  // namespace swapmc
