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

#include <gtest/gtest.h>

#include <deque>
#include <map>
#include <random>

#include "support.hpp"
#include "swapmc/canonical_path.hpp"

namespace swapmc {
namespace {

using Edges = std::vector<std::pair<int, int>>;

BipartiteRealization make(const SpacePtr& space, const Edges& edges) {
    return BipartiteRealization::from_edges(space, edges);
}

SpacePtr triangle_space() { return make_space({{1, 1, 1}, {1, 1, 1}}, ForbiddenMatching::diagonal(3)); }

TEST(Decompose, EqualRealizationsGiveNothing) {
    const auto x = construct_bipartite({{2, 1, 1}, {2, 1, 1}});
    EXPECT_TRUE(decompose(x, x).cycles.empty());
    const auto path = canonical_path(x, x);
    EXPECT_TRUE(path.moves.empty());
    EXPECT_EQ(path.states.size(), 1u);
    EXPECT_TRUE(verify_bad_positions(path, x, x).ok);
    EXPECT_EQ(milestones(x, x, decompose(x, x)).size(), 1u);
}

TEST(Decompose, TwoMatchingsFormOneSquare) {
    const auto s = make_space({{1, 1}, {1, 1}});
    const auto x = make(s, {{0, 0}, {1, 1}}), y = make(s, {{0, 1}, {1, 0}});
    const auto dec = decompose(x, y);
    ASSERT_EQ(dec.cycles.size(), 1u);
    EXPECT_EQ(dec.cycles[0].us, (std::vector<int>{0, 1}));
    EXPECT_EQ(dec.cycles[0].vs, (std::vector<int>{0, 1}));
    for (const auto& c : dec.cycles[0].chords()) EXPECT_EQ(c.x_edge, x.has_edge(c.u, c.v));
}

TEST(Decompose, TriangleOrientationsFormOneHexagon) {
    const auto s = triangle_space();
    const auto x = make(s, {{0, 1}, {1, 2}, {2, 0}}), y = make(s, {{0, 2}, {1, 0}, {2, 1}});
    const auto dec = decompose(x, y);
    ASSERT_EQ(dec.cycles.size(), 1u);
    const auto& c = dec.cycles[0];
    ASSERT_EQ(c.half_length(), 3);
    // Vertices three steps apart along the hexagon are the loop positions.
    for (int k = 0; k < 3; ++k) {
        const int u = c.us[static_cast<std::size_t>(k)];
        const int v_opposite = c.vs[static_cast<std::size_t>((k + 1) % 3)];
        EXPECT_TRUE(s->forbidden.contains(u, v_opposite));
    }
}

TEST(Decompose, PartitionsTheSymmetricDifferenceDeterministically) {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 200; ++trial) {
        auto [x, y] = testing::random_pair(gen, 7, 1, 5, trial % 2 == 0);
        const auto dec = decompose(x, y);
        EXPECT_EQ(dec, decompose(x, y));
        std::map<std::pair<int, int>, int> seen;
        for (const auto& c : dec.cycles) {
            ASSERT_GE(c.half_length(), 2);
            for (const auto& ch : c.chords()) {
                ++seen[{ch.u, ch.v}];
                EXPECT_EQ(ch.x_edge, x.has_edge(ch.u, ch.v));
                EXPECT_NE(x.has_edge(ch.u, ch.v), y.has_edge(ch.u, ch.v));
            }
            // Each vertex once per cycle.
            std::set<int> us(c.us.begin(), c.us.end()), vs(c.vs.begin(), c.vs.end());
            EXPECT_EQ(us.size(), c.us.size());
            EXPECT_EQ(vs.size(), c.vs.size());
        }
        EXPECT_EQ(seen.size(), x.matrix().hamming(y.matrix()));
        for (const auto& [pos, k] : seen) EXPECT_EQ(k, 1);
    }
}

TEST(Milestones, TwoDisjointSquares) {
    const auto s = make_space({{1, 1, 1, 1}, {1, 1, 1, 1}});
    const auto x = make(s, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    const auto y = make(s, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    const auto dec = decompose(x, y);
    ASSERT_EQ(dec.cycles.size(), 2u);
    const auto h = milestones(x, y, dec);
    ASSERT_EQ(h.size(), 3u);
    EXPECT_EQ(h.front(), x);
    EXPECT_EQ(h.back(), y);
    EXPECT_NO_THROW(h[1].validate());
    EXPECT_EQ(h[1].edges(), (Edges{{0, 1}, {1, 0}, {2, 2}, {3, 3}}));
}

TEST(Milestones, SingleCycleIsJustTheEndpoints) {
    const auto s = make_space({{1, 1}, {1, 1}});
    const auto x = make(s, {{0, 0}, {1, 1}}), y = make(s, {{0, 1}, {1, 0}});
    const auto h = milestones(x, y, decompose(x, y));
    ASSERT_EQ(h.size(), 2u);
    EXPECT_EQ(h[0], x);
    EXPECT_EQ(h[1], y);
}

TEST(Cornerstone, LowestRowSumThenLowestIndex) {
    const auto s = make_space({{1, 1}, {1, 1}});
    const auto x = make(s, {{0, 0}, {1, 1}}), y = make(s, {{0, 1}, {1, 0}});
    const auto c = decompose(x, y).cycles.at(0);
    EXPECT_EQ(cornerstone(x, y, x, c), 0);

    AuxiliaryMatrix a(3, 3, ForbiddenMatching(3, 3));
    const int rows[3][3] = {{1, 1, 0}, {1, 0, 0}, {0, 1, 0}};
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) a.set(u, v, rows[u][v]);
    EXPECT_EQ(cornerstone(a, AlternatingCycle{{2, 0, 1}, {0, 1, 2}}), 1);

    const auto t = triangle_space();
    const auto cw = make(t, {{0, 1}, {1, 2}, {2, 0}}), ccw = make(t, {{0, 2}, {1, 0}, {2, 1}});
    EXPECT_EQ(cornerstone(cw, ccw, cw, decompose(cw, ccw).cycles.at(0)), 0);
}

TEST(Sweep, SquareTakesOneSwap) {
    const auto s = make_space({{1, 1}, {1, 1}});
    const auto x = make(s, {{0, 0}, {1, 1}}), y = make(s, {{0, 1}, {1, 0}});
    const auto c = decompose(x, y).cycles.at(0);
    const auto sw = sweep(x, y, c, cornerstone(x, y, x, c));
    ASSERT_EQ(sw.moves.size(), 1u);
    EXPECT_EQ(sw.states.back(), y);
}

TEST(Sweep, TriangleTakesOneC6) {
    const auto t = triangle_space();
    const auto cw = make(t, {{0, 1}, {1, 2}, {2, 0}}), ccw = make(t, {{0, 2}, {1, 0}, {2, 1}});
    const auto c = decompose(cw, ccw).cycles.at(0);
    const auto sw = sweep(cw, ccw, c, cw, ccw);
    ASSERT_EQ(sw.moves.size(), 1u);
    EXPECT_EQ(sw.moves[0].kind, MoveKind::c6);
    EXPECT_EQ(sw.c6_moves, 1);
    EXPECT_EQ(sw.states.back(), ccw);
}

TEST(Sweep, RejectsMismatchedMilestones) {
    const auto s = make_space({{1, 1}, {1, 1}});
    const auto x = make(s, {{0, 0}, {1, 1}});
    const auto c = AlternatingCycle{{0, 1}, {0, 1}};
    EXPECT_THROW(sweep(x, x, c, 0), precondition_error);
}

TEST(Sweep, TenChordCycleOnEightByEightTakesFourSwaps) {
    std::mt19937_64 gen(8);
    int checked = 0;
    for (int trial = 0; trial < 2000 && checked < 20; ++trial) {
        auto [x, y] = testing::random_pair(gen, 8, 2, 6, false, 200);
        const auto dec = decompose(x, y);
        const auto h = milestones(x, y, dec);
        for (std::size_t i = 0; i < dec.cycles.size(); ++i) {
            if (dec.cycles[i].half_length() != 5) continue;
            const auto sw = sweep(h[i], h[i + 1], dec.cycles[i], x, y);
            EXPECT_EQ(sw.moves.size(), 4u);
            EXPECT_EQ(sw.double_steps, 0);
            // Set-level check of the end state.
            const BitMatrix diff = h[i].matrix() ^ sw.states.back().matrix();
            for (const auto& ch : dec.cycles[i].chords()) EXPECT_TRUE(diff.test(ch.u, ch.v));
            EXPECT_EQ(diff.count(), 10u);
            ++checked;
        }
    }
    EXPECT_GT(checked, 0);
}

TEST(Auxiliary, EntryCasesAndMargins) {
    std::mt19937_64 gen(31);
    std::set<int> values;
    for (int trial = 0; trial < 100; ++trial) {
        auto [x, y] = testing::random_pair(gen, 6, 2, 4, trial % 2 == 1);
        const auto path = canonical_path(x, y);
        const auto& z = path.states[static_cast<std::size_t>(gen() % path.states.size())];
        const auto a = auxiliary(x, y, z);
        for (int u = 0; u < 6; ++u) {
            EXPECT_EQ(a.row_sum(u), x.matrix().row_count(u));
            for (int v = 0; v < 6; ++v) {
                if (x.forbidden().contains(u, v)) {
                    EXPECT_TRUE(a.is_star(u, v));
                    continue;
                }
                const int want = int{x.has_edge(u, v)} + int{y.has_edge(u, v)} - int{z.has_edge(u, v)};
                EXPECT_EQ(a.at(u, v), want);
                EXPECT_EQ(a.at(u, v) == 2, x.has_edge(u, v) && y.has_edge(u, v) && !z.has_edge(u, v));
                values.insert(want);
            }
        }
        for (int v = 0; v < 6; ++v) EXPECT_EQ(a.col_sum(v), x.matrix().col_count(v));
    }
    EXPECT_EQ(values, (std::set<int>{-1, 0, 1, 2}));
    // Z = X leaves M_Y.
    auto [x, y] = testing::random_pair(gen, 5, 1, 4, false);
    const auto a = auxiliary(x, y, x);
    EXPECT_TRUE(a.is_binary());
    EXPECT_EQ(a.to_bits(), y.matrix());
}

TEST(Auxiliary, RenderMarksStars) {
    const auto t = triangle_space();
    const auto cw = make(t, {{0, 1}, {1, 2}, {2, 0}});
    EXPECT_EQ(AuxiliaryMatrix(cw).render(), "* 1 0\n0 * 1\n1 0 *\n");
}

TEST(CanonicalPath, ReplaysFromXToY) {
    std::mt19937_64 gen(41);
    for (int trial = 0; trial < 200; ++trial) {
        const bool directed = trial % 2 == 1;
        auto [x, y] = testing::random_pair(gen, 6, 2, 4, directed);
        const auto path = canonical_path(x, y);
        ASSERT_EQ(path.states.size(), path.moves.size() + 1);
        auto z = x;
        for (std::size_t k = 0; k < path.moves.size(); ++k) {
            const std::size_t before = z.matrix().hamming(path.states[k + 1].matrix());
            EXPECT_TRUE(before == 4 || before == 6);
            apply_move_in_place(z, path.moves[k]);
            EXPECT_EQ(z, path.states[k + 1]);
        }
        EXPECT_EQ(z, y);
        ASSERT_EQ(path.milestone_indices.size(), path.decomposition.cycles.size() + 1);
        const auto h = milestones(x, y, path.decomposition);
        for (std::size_t i = 0; i < h.size(); ++i) EXPECT_EQ(path.states[path.milestone_indices[i]], h[i]);
        const auto theta = verify_move_counts(path, directed);
        EXPECT_TRUE(theta.ok);
        if (!directed) {
            for (const auto& c : path.cycles) EXPECT_EQ(c.double_steps, 0);
        }
        EXPECT_EQ(path.moves, canonical_path(x, y).moves);
    }
}

TEST(BadPositions, SingleSquare) {
    const auto s = make_space({{1, 1}, {1, 1}});
    const auto x = make(s, {{0, 0}, {1, 1}}), y = make(s, {{0, 1}, {1, 0}});
    const auto rep = verify_bad_positions(canonical_path(x, y), x, y);
    EXPECT_TRUE(rep.ok);
    EXPECT_LE(rep.max_twos, 1);
    EXPECT_LE(rep.max_minus_ones, 1);
}

TEST(BadPositions, RandomSixBySix) {
    std::mt19937_64 gen(51);
    for (int trial = 0; trial < 300; ++trial) {
        auto [x, y] = testing::random_pair(gen, 6, 2, 4, trial % 2 == 1);
        const auto rep = verify_bad_positions(canonical_path(x, y), x, y);
        EXPECT_TRUE(rep.ok) << "first violation at state " << rep.first_violation.value_or(0);
        EXPECT_LE(rep.max_twos, 2);
        EXPECT_LE(rep.max_minus_ones, 1);
    }
}

// Fewest switches turning an integer matrix with entries in [-1, 2] into a
// 0/1 matrix, by breadth-first search over all switch sequences.
int min_switches_to_binary(const std::vector<int>& start, int n, int m, int max_depth) {
    auto binary = [](const std::vector<int>& s) {
        return std::all_of(s.begin(), s.end(), [](int x) { return x == 0 || x == 1; });
    };
    std::map<std::vector<int>, int> dist{{start, 0}};
    std::deque<std::vector<int>> queue{start};
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        const int d = dist[s];
        if (binary(s)) return d;
        if (d == max_depth) continue;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = 0; c < m; ++c)
                    for (int e = c + 1; e < m; ++e)
                        for (int sign : {1, -1}) {
                            auto t = s;
                            t[static_cast<std::size_t>(a * m + c)] -= sign;
                            t[static_cast<std::size_t>(b * m + e)] -= sign;
                            t[static_cast<std::size_t>(a * m + e)] += sign;
                            t[static_cast<std::size_t>(b * m + c)] += sign;
                            if (std::any_of(t.begin(), t.end(), [](int x) { return x < -1 || x > 2; })) continue;
                            if (dist.emplace(t, d + 1).second) queue.push_back(std::move(t));
                        }
    }
    return -1;
}

TEST(Repair, BinaryMatrixNeedsNothing) {
    const auto x = construct_bipartite({{2, 1, 1}, {2, 1, 1}});
    const AuxiliaryMatrix a(x);
    const auto r = repair_to_realization(a, x.space_ptr(), {});
    EXPECT_TRUE(r.switches.empty());
    EXPECT_EQ(r.distance, 0u);
    EXPECT_EQ(r.realization, x);
}

TEST(Repair, OneTwoAndOneMinusOne) {
    const int rows[4][4] = {{2, 0, 0, 0}, {-1, 1, 1, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}};
    AuxiliaryMatrix a(4, 4, ForbiddenMatching(4, 4));
    std::vector<int> flat;
    BipartiteDegreeSequence seq{{0, 0, 0, 0}, {0, 0, 0, 0}};
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) {
            a.set(u, v, rows[u][v]);
            flat.push_back(rows[u][v]);
            seq.u_degrees[static_cast<std::size_t>(u)] += rows[u][v];
            seq.v_degrees[static_cast<std::size_t>(v)] += rows[u][v];
        }
    const int best = min_switches_to_binary(flat, 4, 4, 4);
    // One switch on rows 0,1 and columns 0,1 clears both.
    ASSERT_EQ(best, 1);
    const RepairContext ctx{{0, 1, 2, 3}, {0, 1, 2, 3}};
    const auto r = repair_to_realization(a, make_space(seq), ctx);
    EXPECT_GE(static_cast<int>(r.switches.size()), best);
    EXPECT_LE(r.switches.size(), 4u);
    EXPECT_LE(r.distance, 16u);
    EXPECT_EQ(r.distance, hamming_distance(a, r.realization));
    EXPECT_NO_THROW(r.realization.validate());
}

TEST(Repair, ReportsConditionViolations) {
    AuxiliaryMatrix a(2, 2, ForbiddenMatching(2, 2));
    a.set(0, 0, 2);
    const auto space = make_space({{2, 0}, {2, 0}});
    // The 2 lies outside the cycle's submatrix.
    EXPECT_THROW(repair_to_realization(a, space, RepairContext{{1}, {1}}), condition_violated_error);
    // Inside it, but no row can take the unit.
    EXPECT_THROW(repair_to_realization(a, space, RepairContext{{0, 1}, {0, 1}}), condition_violated_error);
}

TEST(Repair, EveryStateOfRandomPaths) {
    std::mt19937_64 gen(61);
    for (int trial = 0; trial < 200; ++trial) {
        const bool directed = trial % 2 == 1;
        auto [x, y] = testing::random_pair(gen, 6, 2, 4, directed);
        const auto rep = verify_repairs(canonical_path(x, y), x, y);
        EXPECT_TRUE(rep.ok) << (rep.failure_details.empty() ? "" : rep.failure_details[0].second);
        EXPECT_LE(rep.max_switches, 4u);
        EXPECT_LE(rep.max_distance, directed ? 20u : 16u);
    }
}

}  // namespace
}  // namespace swapmc
