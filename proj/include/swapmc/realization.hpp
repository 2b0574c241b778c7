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

#include <array>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "bit_matrix.hpp"
#include "degree_model.hpp"
#include "errors.hpp"

namespace swapmc {

struct SwapMove;

/// A partial matching of forbidden (u, v) positions: every u and every v is
/// in at most one pair. Forbidden positions are the non-chords.
class ForbiddenMatching {
public:
    ForbiddenMatching() = default;

    ForbiddenMatching(int n, int m)
        : partner_of_u_(static_cast<std::size_t>(n), -1), partner_of_v_(static_cast<std::size_t>(m), -1) {}

    /// The loop positions (i, i) of a digraph's bipartite representation.
    static ForbiddenMatching diagonal(int n) {
        ForbiddenMatching f(n, n);
        for (int i = 0; i < n; ++i) f.add(i, i);
        return f;
    }

    static ForbiddenMatching from_pairs(int n, int m, const std::vector<std::pair<int, int>>& pairs) {
        ForbiddenMatching f(n, m);
        for (const auto& [u, v] : pairs) f.add(u, v);
        return f;
    }

    /// Adds (u, v). Throws `precondition_error` if the result is not a matching.
    void add(int u, int v) {
        if (u < 0 || u >= n() || v < 0 || v >= m())
            throw precondition_error("forbidden position (" + std::to_string(u + 1) + "," +
                                     std::to_string(v + 1) + ") out of range");
        int& pu = partner_of_u_[static_cast<std::size_t>(u)];
        int& pv = partner_of_v_[static_cast<std::size_t>(v)];
        if (pu == v) return;
        if (pu != -1 || pv != -1)
            throw precondition_error("forbidden set is not a partial matching at (" + std::to_string(u + 1) +
                                     "," + std::to_string(v + 1) + ")");
        pu = v;
        pv = u;
        ++size_;
    }

    int n() const noexcept { return static_cast<int>(partner_of_u_.size()); }
    int m() const noexcept { return static_cast<int>(partner_of_v_.size()); }
    int size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool contains(int u, int v) const noexcept { return partner_of_u_[static_cast<std::size_t>(u)] == v; }
    int partner_of_u(int u) const noexcept { return partner_of_u_[static_cast<std::size_t>(u)]; }
    int partner_of_v(int v) const noexcept { return partner_of_v_[static_cast<std::size_t>(v)]; }

    bool is_diagonal() const noexcept {
        if (n() != m()) return false;
        for (int i = 0; i < n(); ++i)
            if (partner_of_u(i) != i) return false;
        return true;
    }

    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n(); ++u)
            if (partner_of_u(u) >= 0) out.emplace_back(u, partner_of_u(u));
        return out;
    }

    friend bool operator==(const ForbiddenMatching&, const ForbiddenMatching&) = default;

private:
    std::vector<int> partner_of_u_;
    std::vector<int> partner_of_v_;
    int size_ = 0;
};

/// The set of realizations a state belongs to: degree targets plus the
/// forbidden matching. Shared (immutable) by every state of one instance.
struct RealizationSpace {
    BipartiteDegreeSequence degrees;
    ForbiddenMatching forbidden;

    RealizationSpace(BipartiteDegreeSequence seq, ForbiddenMatching f)
        : degrees(std::move(seq)), forbidden(std::move(f)) {
        degrees.validate();
        if (forbidden.n() != degrees.n() || forbidden.m() != degrees.m())
            throw precondition_error("forbidden matching shape does not match the degree sequence");
    }

    int n() const noexcept { return degrees.n(); }
    int m() const noexcept { return degrees.m(); }

    friend bool operator==(const RealizationSpace&, const RealizationSpace&) = default;
};

using SpacePtr = std::shared_ptr<const RealizationSpace>;

inline SpacePtr make_space(BipartiteDegreeSequence seq, ForbiddenMatching forbidden) {
    return std::make_shared<const RealizationSpace>(std::move(seq), std::move(forbidden));
}

inline SpacePtr make_space(BipartiteDegreeSequence seq) {
    const int n = seq.n(), m = seq.m();
    return make_space(std::move(seq), ForbiddenMatching(n, m));
}

/// A simple bipartite graph on U x V realizing the space's degrees and
/// avoiding its forbidden positions. Value type; copies share the space.
class BipartiteRealization {
public:
    /// Validates margins and forbidden positions; throws `precondition_error`.
    BipartiteRealization(SpacePtr space, BitMatrix edges) : space_(std::move(space)), edges_(std::move(edges)) {
        validate();
    }

    static BipartiteRealization from_edges(SpacePtr space, const std::vector<std::pair<int, int>>& edges) {
        BitMatrix mat(space->n(), space->m());
        for (const auto& [u, v] : edges) {
            if (u < 0 || u >= space->n() || v < 0 || v >= space->m())
                throw precondition_error("edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                                         ") out of range");
            if (mat.test(u, v))
                throw precondition_error("duplicate edge (" + std::to_string(u + 1) + "," +
                                         std::to_string(v + 1) + ")");
            mat.set(u, v);
        }
        return {std::move(space), std::move(mat)};
    }

    int n() const noexcept { return edges_.rows(); }
    int m() const noexcept { return edges_.cols(); }

    bool has_edge(int u, int v) const noexcept { return edges_.test(u, v); }
    bool is_chord(int u, int v) const noexcept { return !space_->forbidden.contains(u, v); }

    const BitMatrix& matrix() const noexcept { return edges_; }
    const RealizationSpace& space() const noexcept { return *space_; }
    const SpacePtr& space_ptr() const noexcept { return space_; }
    const BipartiteDegreeSequence& degrees() const noexcept { return space_->degrees; }
    const ForbiddenMatching& forbidden() const noexcept { return space_->forbidden; }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n(); ++u)
            for (int v = 0; v < m(); ++v)
                if (edges_.test(u, v)) out.emplace_back(u, v);
        return out;
    }

    void validate() const {
        if (!space_) throw precondition_error("realization without a space");
        if (edges_.rows() != space_->n() || edges_.cols() != space_->m())
            throw precondition_error("incidence matrix shape does not match the degree sequence");
        for (int u = 0; u < n(); ++u) {
            const int p = space_->forbidden.partner_of_u(u);
            if (p >= 0 && edges_.test(u, p))
                throw precondition_error("edge on forbidden position (" + std::to_string(u + 1) + "," +
                                         std::to_string(p + 1) + ")");
            if (edges_.row_count(u) != space_->degrees.u_degrees[static_cast<std::size_t>(u)])
                throw precondition_error("row sum of u" + std::to_string(u + 1) + " differs from its degree");
        }
        for (int v = 0; v < m(); ++v)
            if (edges_.col_count(v) != space_->degrees.v_degrees[static_cast<std::size_t>(v)])
                throw precondition_error("column sum of v" + std::to_string(v + 1) + " differs from its degree");
    }

    /// Same degrees and forbidden positions (not necessarily the same object).
    bool same_space(const BipartiteRealization& other) const noexcept {
        return space_ == other.space_ || *space_ == *other.space_;
    }

    friend bool operator==(const BipartiteRealization& a, const BipartiteRealization& b) noexcept {
        return a.edges_ == b.edges_ && a.same_space(b);
    }

private:
    friend void apply_move_in_place(BipartiteRealization&, const SwapMove&);

    SpacePtr space_;
    BitMatrix edges_;
};

/// A loopless digraph (anti-parallel arcs allowed) realizing a bi-sequence.
class DirectedRealization {
public:
    DirectedRealization(DirectedDegreeBiSequence seq, BitMatrix arcs) : seq_(std::move(seq)), arcs_(std::move(arcs)) {
        validate();
    }

    static DirectedRealization from_arcs(DirectedDegreeBiSequence seq, const std::vector<std::pair<int, int>>& arcs) {
        const int n = seq.n();
        BitMatrix mat(n, n);
        for (const auto& [x, y] : arcs) {
            if (x < 0 || x >= n || y < 0 || y >= n)
                throw precondition_error("arc " + std::to_string(x + 1) + " -> " + std::to_string(y + 1) +
                                         " out of range");
            if (mat.test(x, y))
                throw precondition_error("duplicate arc " + std::to_string(x + 1) + " -> " + std::to_string(y + 1));
            mat.set(x, y);
        }
        return {std::move(seq), std::move(mat)};
    }

    int n() const noexcept { return arcs_.rows(); }
    bool has_arc(int x, int y) const noexcept { return arcs_.test(x, y); }
    const BitMatrix& matrix() const noexcept { return arcs_; }
    const DirectedDegreeBiSequence& degrees() const noexcept { return seq_; }

    std::vector<std::pair<int, int>> arcs() const {
        std::vector<std::pair<int, int>> out;
        for (int x = 0; x < n(); ++x)
            for (int y = 0; y < n(); ++y)
                if (arcs_.test(x, y)) out.emplace_back(x, y);
        return out;
    }

    void validate() const {
        seq_.validate();
        const int n = seq_.n();
        if (arcs_.rows() != n || arcs_.cols() != n)
            throw precondition_error("adjacency matrix shape does not match the bi-sequence");
        for (int x = 0; x < n; ++x) {
            if (arcs_.test(x, x)) throw precondition_error("loop at vertex " + std::to_string(x + 1));
            if (arcs_.row_count(x) != seq_.out_degrees[static_cast<std::size_t>(x)])
                throw precondition_error("out-degree of vertex " + std::to_string(x + 1) + " is wrong");
            if (arcs_.col_count(x) != seq_.in_degrees[static_cast<std::size_t>(x)])
                throw precondition_error("in-degree of vertex " + std::to_string(x + 1) + " is wrong");
        }
    }

    friend bool operator==(const DirectedRealization&, const DirectedRealization&) = default;

private:
    DirectedDegreeBiSequence seq_;
    BitMatrix arcs_;
};

// ---------------------------------------------------------------------------
// Moves

enum class MoveKind { c4, c6, switch_op };

/// A C4-swap, a C6-swap, or a matrix switch.
///
/// C4 `(u[0], u[1]; v[0], v[1])` removes u0v0 and u1v1 and inserts u0v1 and
/// u1v0. C6 `(u[0], v[0], u[1], v[1], u[2], v[2])` is a hexagon in cyclic
/// order: it removes u_k v_k and inserts v_k u_{k+1}; the opposite pairs
/// (u0,v1), (u1,v2), (u2,v0) must be forbidden. A switch uses the C4 corner
/// convention on an integer matrix with `sign = +1` (decrement u0v0, u1v1,
/// increment u0v1, u1v0) or `sign = -1` (the reverse).
struct SwapMove {
    MoveKind kind = MoveKind::c4;
    std::array<int, 3> u{};
    std::array<int, 3> v{};
    int sign = 1;

    static SwapMove c4(int ua, int ub, int va, int vb) { return {MoveKind::c4, {ua, ub, -1}, {va, vb, -1}, 1}; }

    static SwapMove c6(int u1, int v1, int u2, int v2, int u3, int v3) {
        return {MoveKind::c6, {u1, u2, u3}, {v1, v2, v3}, 1};
    }

    static SwapMove make_switch(int ua, int ub, int va, int vb, int sign = 1) {
        return {MoveKind::switch_op, {ua, ub, -1}, {va, vb, -1}, sign};
    }

    /// Positions that lose one unit.
    std::vector<std::pair<int, int>> removed() const {
        switch (kind) {
        case MoveKind::c6:
            return {{u[0], v[0]}, {u[1], v[1]}, {u[2], v[2]}};
        case MoveKind::switch_op:
            if (sign < 0) return {{u[0], v[1]}, {u[1], v[0]}};
            [[fallthrough]];
        case MoveKind::c4:
            break;
        }
        return {{u[0], v[0]}, {u[1], v[1]}};
    }

    /// Positions that gain one unit.
    std::vector<std::pair<int, int>> inserted() const {
        switch (kind) {
        case MoveKind::c6:
            return {{u[1], v[0]}, {u[2], v[1]}, {u[0], v[2]}};
        case MoveKind::switch_op:
            if (sign < 0) return {{u[0], v[0]}, {u[1], v[1]}};
            [[fallthrough]];
        case MoveKind::c4:
            break;
        }
        return {{u[0], v[1]}, {u[1], v[0]}};
    }

    /// The opposite (distance-three) pairs of a C6 hexagon.
    std::array<std::pair<int, int>, 3> c6_opposites() const {
        return {{{u[0], v[1]}, {u[1], v[2]}, {u[2], v[0]}}};
    }

    friend bool operator==(const SwapMove&, const SwapMove&) = default;
};

inline SwapMove inverse(const SwapMove& mv) {
    switch (mv.kind) {
    case MoveKind::c4:
        return SwapMove::c4(mv.u[0], mv.u[1], mv.v[1], mv.v[0]);
    case MoveKind::c6:
        return SwapMove::c6(mv.u[1], mv.v[0], mv.u[0], mv.v[2], mv.u[2], mv.v[1]);
    case MoveKind::switch_op:
        break;
    }
    return SwapMove::make_switch(mv.u[0], mv.u[1], mv.v[0], mv.v[1], -mv.sign);
}

/// "C4 ua ub va vb" / "C6 u1 v1 u2 v2 u3 v3" / "SW ua ub va vb +1", 1-based.
inline std::string to_string(const SwapMove& mv) {
    auto id = [](int x) { return std::to_string(x + 1); };
    switch (mv.kind) {
    case MoveKind::c4:
        return "C4 " + id(mv.u[0]) + " " + id(mv.u[1]) + " " + id(mv.v[0]) + " " + id(mv.v[1]);
    case MoveKind::c6:
        return "C6 " + id(mv.u[0]) + " " + id(mv.v[0]) + " " + id(mv.u[1]) + " " + id(mv.v[1]) + " " +
               id(mv.u[2]) + " " + id(mv.v[2]);
    case MoveKind::switch_op:
        break;
    }
    return "SW " + id(mv.u[0]) + " " + id(mv.u[1]) + " " + id(mv.v[0]) + " " + id(mv.v[1]) +
           (mv.sign > 0 ? " +1" : " -1");
}

namespace detail {

inline bool distinct(int a, int b, int c) { return a != b && b != c && a != c; }

inline std::string pos(int u, int v) { return "(" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")"; }

}  // namespace detail

/// Nothing if `mv` is a legal move in `r`, otherwise the reason it is not.
inline std::optional<std::string> illegal_reason(const BipartiteRealization& r, const SwapMove& mv) {
    const int n = r.n(), m = r.m();
    const int arity = mv.kind == MoveKind::c6 ? 3 : 2;
    for (int k = 0; k < arity; ++k) {
        if (mv.u[static_cast<std::size_t>(k)] < 0 || mv.u[static_cast<std::size_t>(k)] >= n ||
            mv.v[static_cast<std::size_t>(k)] < 0 || mv.v[static_cast<std::size_t>(k)] >= m)
            return "vertex index out of range";
    }
    if (mv.kind == MoveKind::c6) {
        if (!detail::distinct(mv.u[0], mv.u[1], mv.u[2]) || !detail::distinct(mv.v[0], mv.v[1], mv.v[2]))
            return "C6 vertices are not distinct";
        for (const auto& [u, v] : mv.c6_opposites())
            if (r.is_chord(u, v)) return "C6 opposite pair " + detail::pos(u, v) + " is a chord";
    } else {
        if (mv.u[0] == mv.u[1] || mv.v[0] == mv.v[1]) return "C4 vertices are not distinct";
        if (mv.kind == MoveKind::switch_op && mv.sign != 1 && mv.sign != -1) return "switch sign must be +1 or -1";
    }
    for (const auto& [u, v] : mv.removed()) {
        if (!r.has_edge(u, v)) return "position " + detail::pos(u, v) + " is not an edge";
    }
    for (const auto& [u, v] : mv.inserted()) {
        if (!r.is_chord(u, v)) return "position " + detail::pos(u, v) + " is forbidden";
        if (r.has_edge(u, v)) return "position " + detail::pos(u, v) + " is already an edge";
    }
    return std::nullopt;
}

inline bool is_legal(const BipartiteRealization& r, const SwapMove& mv) { return !illegal_reason(r, mv); }

/// Applies `mv` to `r`. Throws `illegal_move_error` and leaves `r` untouched
/// if the move is not legal.
inline void apply_move_in_place(BipartiteRealization& r, const SwapMove& mv) {
    if (auto why = illegal_reason(r, mv)) throw illegal_move_error("illegal " + to_string(mv) + ": " + *why);
    for (const auto& [u, v] : mv.removed()) r.edges_.set(u, v, false);
    for (const auto& [u, v] : mv.inserted()) r.edges_.set(u, v, true);
#ifndef NDEBUG
    for (const auto& [u, v] : mv.removed()) {
        assert(r.edges_.row_count(u) == r.degrees().u_degrees[static_cast<std::size_t>(u)]);
        assert(r.edges_.col_count(v) == r.degrees().v_degrees[static_cast<std::size_t>(v)]);
    }
#endif
}

inline BipartiteRealization apply_move(BipartiteRealization r, const SwapMove& mv) {
    apply_move_in_place(r, mv);
    return r;
}

/// If {ua, ub} x {va, vb} carries an alternating 4-cycle whose flip is a
/// legal C4-swap in `r`, returns that swap.
inline std::optional<SwapMove> c4_on(const BipartiteRealization& r, int ua, int ub, int va, int vb) {
    if (ua == ub || va == vb) return std::nullopt;
    const SwapMove direct = SwapMove::c4(ua, ub, va, vb);
    if (is_legal(r, direct)) return direct;
    const SwapMove crossed = SwapMove::c4(ua, ub, vb, va);
    if (is_legal(r, crossed)) return crossed;
    return std::nullopt;
}

/// Number of positions (stars excluded) where the two realizations differ.
/// Throws `precondition_error` on a shape or forbidden-set mismatch.
inline std::size_t hamming_distance(const BipartiteRealization& a, const BipartiteRealization& b) {
    if (a.n() != b.n() || a.m() != b.m()) throw precondition_error("hamming_distance: shape mismatch");
    if (!(a.forbidden() == b.forbidden())) throw precondition_error("hamming_distance: forbidden sets differ");
    return a.matrix().hamming(b.matrix());
}

// ---------------------------------------------------------------------------
// Construction

namespace detail {

/// Max-flow (Dinic) construction of a bipartite realization that avoids the
/// forbidden positions. Used when the forbidden set is not empty.
inline std::optional<BitMatrix> flow_construct(const BipartiteDegreeSequence& seq, const ForbiddenMatching& f) {
    const int n = seq.n(), m = seq.m();
    const int source = n + m, sink = n + m + 1, nodes = n + m + 2;
    struct Arc {
        int to;
        int cap;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
    auto add = [&](int a, int b, int cap) {
        adj[static_cast<std::size_t>(a)].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({b, cap});
        adj[static_cast<std::size_t>(b)].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({a, 0});
    };
    for (int u = 0; u < n; ++u) add(source, u, seq.u_degrees[static_cast<std::size_t>(u)]);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < m; ++v)
            if (!f.contains(u, v)) add(u, n + v, 1);
    for (int v = 0; v < m; ++v) add(n + v, sink, seq.v_degrees[static_cast<std::size_t>(v)]);

    std::vector<int> level(static_cast<std::size_t>(nodes)), it(static_cast<std::size_t>(nodes));
    auto bfs = [&] {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[static_cast<std::size_t>(source)] = 0;
        q.push(source);
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            for (int id : adj[static_cast<std::size_t>(x)]) {
                const Arc& a = arcs[static_cast<std::size_t>(id)];
                if (a.cap > 0 && level[static_cast<std::size_t>(a.to)] < 0) {
                    level[static_cast<std::size_t>(a.to)] = level[static_cast<std::size_t>(x)] + 1;
                    q.push(a.to);
                }
            }
        }
        return level[static_cast<std::size_t>(sink)] >= 0;
    };
    auto dfs = [&](auto&& self, int x, int pushed) -> int {
        if (x == sink) return pushed;
        for (int& i = it[static_cast<std::size_t>(x)]; i < static_cast<int>(adj[static_cast<std::size_t>(x)].size()); ++i) {
            const int id = adj[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)];
            Arc& a = arcs[static_cast<std::size_t>(id)];
            if (a.cap <= 0 || level[static_cast<std::size_t>(a.to)] != level[static_cast<std::size_t>(x)] + 1) continue;
            const int got = self(self, a.to, std::min(pushed, a.cap));
            if (got > 0) {
                a.cap -= got;
                arcs[static_cast<std::size_t>(id ^ 1)].cap += got;
                return got;
            }
        }
        return 0;
    };
    long long flow = 0;
    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        while (int got = dfs(dfs, source, std::numeric_limits<int>::max())) flow += got;
    }
    if (flow != seq.edge_count()) return std::nullopt;
    BitMatrix mat(n, m);
    for (int u = 0; u < n; ++u)
        for (int id : adj[static_cast<std::size_t>(u)]) {
            const Arc& a = arcs[static_cast<std::size_t>(id)];
            if ((id & 1) == 0 && a.to >= n && a.to < n + m && a.cap == 0) mat.set(u, a.to - n);
        }
    return mat;
}

}  // namespace detail

/// Some realization of `seq` avoiding `forbidden`. Throws `parse_error` for a
/// malformed sequence and `infeasible_error` when no realization exists.
inline BipartiteRealization construct_bipartite(const BipartiteDegreeSequence& seq, const ForbiddenMatching& forbidden) {
    seq.validate();
    auto space = make_space(seq, forbidden);
    if (forbidden.empty()) {
        auto edges = detail::ryser_construct(seq);
        if (!edges) throw infeasible_error("bipartite degree sequence is not graphic");
        return BipartiteRealization::from_edges(std::move(space), *edges);
    }
    auto mat = detail::flow_construct(seq, forbidden);
    if (!mat) throw infeasible_error("no realization avoids the forbidden positions");
    return {std::move(space), std::move(*mat)};
}

inline BipartiteRealization construct_bipartite(const BipartiteDegreeSequence& seq) {
    return construct_bipartite(seq, ForbiddenMatching(seq.n(), seq.m()));
}

/// True iff some realization of `seq` avoids `forbidden`.
inline bool is_graphic_avoiding(const BipartiteDegreeSequence& seq, const ForbiddenMatching& forbidden) {
    if (!seq.is_valid() || forbidden.n() != seq.n() || forbidden.m() != seq.m()) return false;
    if (forbidden.empty()) return is_bipartite_graphic(seq);
    return detail::flow_construct(seq, forbidden).has_value();
}

/// Kleitman-Wang construction of a loopless digraph.
inline DirectedRealization construct_directed(const DirectedDegreeBiSequence& seq) {
    seq.validate();
    auto arcs = detail::kleitman_wang(seq);
    if (!arcs) throw infeasible_error("directed degree bi-sequence is not graphic");
    return DirectedRealization::from_arcs(seq, *arcs);
}

// ---------------------------------------------------------------------------
// Bipartite representation of digraphs

/// Arc x -> y becomes edge (u_x, v_y); the diagonal is forbidden. Vertices
/// of zero degree are kept so indices are stable.
inline BipartiteRealization to_bipartite_representation(const DirectedRealization& d) {
    const auto& s = d.degrees();
    auto space = make_space(BipartiteDegreeSequence{s.out_degrees, s.in_degrees}, ForbiddenMatching::diagonal(s.n()));
    return {std::move(space), d.matrix()};
}

inline DirectedRealization from_bipartite_representation(const BipartiteRealization& b) {
    if (b.n() != b.m()) throw precondition_error("bipartite representation must be square");
    if (!b.forbidden().is_diagonal())
        throw precondition_error("bipartite representation must forbid exactly the diagonal");
    return {DirectedDegreeBiSequence{b.degrees().u_degrees, b.degrees().v_degrees}, b.matrix()};
}

}  // namespace swapmc
