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

#include <cmath>

#include "swapmc/conditions.hpp"

namespace swapmc {
namespace {

// The reference endpoints are quoted to three or four digits, some as sums of
// rounded terms.
constexpr double kEndpointTolerance = 5e-4;

TEST(BipartiteCondition, RegularHolds) {
    const auto r = theorem2_check({2, 2, 2, 2, 4, 4});
    EXPECT_EQ(r.lhs, 1);
    EXPECT_EQ(r.rhs, 4);
    EXPECT_EQ(r.verdict, Verdict::holds);
}

TEST(BipartiteCondition, WideIntervalsFail) {
    const auto r = theorem2_check({1, 5, 1, 5, 6, 6});
    EXPECT_EQ(r.lhs, 9);
    EXPECT_EQ(r.rhs, 1);
    EXPECT_EQ(r.first_branch, 1);
    EXPECT_EQ(r.second_branch, 1);
    EXPECT_EQ(r.verdict, Verdict::fails);
}

TEST(BipartiteCondition, AlmostHalfRegularHolds) {
    for (int n = 2; n <= 10; ++n)
        for (int m = 2; m <= 10; ++m)
            for (int c1 = 1; c1 + 1 < n; ++c1)
                for (int d1 = 1; d1 < m; ++d1)
                    for (int d2 = d1; d2 < m; ++d2) {
                        const auto r = theorem2_check({c1, c1 + 1, d1, d2, n, m});
                        EXPECT_EQ(r.lhs, 0);
                        EXPECT_EQ(r.verdict, Verdict::holds);
                    }
}

TEST(BipartiteCondition, HalfRegularHoldsInsideWindow) {
    for (int n = 2; n <= 10; ++n)
        for (int m = 2; m <= 10; ++m)
            for (int c = 1; c < n; ++c)
                for (int d1 = 1; d1 < m; ++d1)
                    for (int d2 = d1; d2 < m; ++d2) EXPECT_EQ(theorem2_check({c, c, d1, d2, n, m}).verdict, Verdict::holds);
}

TEST(BipartiteCondition, OutsideWindowIsNotApplicable) {
    const auto r = theorem2_check({1, 4, 1, 2, 4, 4});  // c2 = n
    EXPECT_EQ(r.verdict, Verdict::not_applicable);
    EXPECT_FALSE(r.reason.empty());
    EXPECT_EQ(theorem2_check({0, 2, 1, 2, 4, 4}).verdict, Verdict::not_applicable);
    EXPECT_EQ(theorem2_check({1, 2, 1, 4, 4, 4}).verdict, Verdict::not_applicable);
}

TEST(BipartiteCondition, ShrinkingNeverBreaksIt) {
    for (int n = 2; n <= 12; ++n)
        for (int m = 2; m <= 12; ++m)
            for (int c1 = 1; c1 < n; ++c1)
                for (int c2 = c1; c2 < n; ++c2)
                    for (int d1 = 1; d1 < m; ++d1)
                        for (int d2 = d1; d2 < m; ++d2) {
                            if (theorem2_check({c1, c2, d1, d2, n, m}).verdict != Verdict::holds) continue;
                            if (c1 < c2) {
                                ASSERT_EQ(theorem2_check({c1 + 1, c2, d1, d2, n, m}).verdict, Verdict::holds);
                                ASSERT_EQ(theorem2_check({c1, c2 - 1, d1, d2, n, m}).verdict, Verdict::holds);
                            }
                            if (d1 < d2) {
                                ASSERT_EQ(theorem2_check({c1, c2, d1 + 1, d2, n, m}).verdict, Verdict::holds);
                                ASSERT_EQ(theorem2_check({c1, c2, d1, d2 - 1, n, m}).verdict, Verdict::holds);
                            }
                        }
}

TEST(DirectedCondition, WorkedExamples) {
    const auto a = theorem3_check({3, 5, 3, 5, 8, 8});
    EXPECT_EQ(a.lhs, 4);
    EXPECT_EQ(a.first_branch, 14);
    EXPECT_EQ(a.rhs, 8);
    EXPECT_EQ(a.verdict, Verdict::holds);
    const auto b = theorem3_check({1, 6, 1, 6, 8, 8});
    EXPECT_EQ(b.lhs, 25);
    EXPECT_EQ(b.rhs, 2);
    EXPECT_EQ(b.verdict, Verdict::fails);
    const auto c = theorem3_check({2, 2, 2, 2, 6, 6});
    EXPECT_EQ(c.lhs, 0);
    EXPECT_EQ(c.rhs, 6);
}

TEST(DirectedCondition, RegularAlwaysHolds) {
    for (int n = 3; n <= 30; ++n)
        for (int k = 1; k <= n - 2; ++k) {
            const auto r = theorem3_check({k, k, k, k, n, n});
            EXPECT_EQ(r.rhs, 2 + k * (n - k - 1) + 2 * k - n);
            EXPECT_EQ(r.verdict, Verdict::holds) << n << " " << k;
        }
}

TEST(DirectedCondition, ShrinkingNeverBreaksIt) {
    for (int n = 2; n <= 12; ++n)
        for (int c1 = 1; c1 < n; ++c1)
            for (int c2 = c1; c2 < n; ++c2)
                for (int d1 = 1; d1 < n; ++d1)
                    for (int d2 = d1; d2 < n; ++d2) {
                        if (theorem3_check({c1, c2, d1, d2, n, n}).verdict != Verdict::holds) continue;
                        if (c1 < c2) {
                            ASSERT_EQ(theorem3_check({c1 + 1, c2, d1, d2, n, n}).verdict, Verdict::holds);
                            ASSERT_EQ(theorem3_check({c1, c2 - 1, d1, d2, n, n}).verdict, Verdict::holds);
                        }
                        if (d1 < d2) {
                            ASSERT_EQ(theorem3_check({c1, c2, d1 + 1, d2, n, n}).verdict, Verdict::holds);
                            ASSERT_EQ(theorem3_check({c1, c2, d1, d2 - 1, n, n}).verdict, Verdict::holds);
                        }
                    }
}

TEST(ConditionCheck, DispatchesOnKind) {
    EXPECT_EQ(condition_check(DirectedDegreeBiSequence{{1, 1, 1}, {1, 1, 1}}).verdict, Verdict::holds);
    EXPECT_EQ(condition_check(DirectedDegreeBiSequence{{1, 1, 1}, {1, 1, 1}}).lhs, 0);
    EXPECT_EQ(condition_check(BipartiteDegreeSequence{{1, 1}, {1, 1}}).verdict, Verdict::holds);
    EXPECT_EQ(condition_check(BipartiteDegreeSequence{{2, 2}, {2, 2}}).verdict, Verdict::not_applicable);
}

TEST(ErWindow, BipartiteThousandHolds) {
    const auto r = er_window_bipartite(1000, 1000, 0.5);
    EXPECT_NEAR(r.lower, 3.0 * std::sqrt((std::log(1000.0) + 0.5 * std::log(2.0)) / 1000.0), 1e-15);
    EXPECT_NEAR(r.lower, 0.2556, kEndpointTolerance);
    EXPECT_NEAR(r.upper, 0.7444, kEndpointTolerance);
    EXPECT_TRUE(r.holds);
}

TEST(ErWindow, BipartiteHundredFails) {
    const auto r = er_window_bipartite(100, 100, 0.5);
    EXPECT_NEAR(r.lower, 0.667, 1e-3);
    EXPECT_FALSE(r.holds);
}

TEST(ErWindow, DirectedThousandHolds) {
    const auto r = er_window_directed(1000, 0.5);
    EXPECT_NEAR(r.lower, 0.3189, kEndpointTolerance);
    EXPECT_NEAR(r.upper, 0.6811, kEndpointTolerance);
    EXPECT_TRUE(r.holds);
}

TEST(ErWindow, SwappedOrientationCounts) {
    // Lopsided classes: only one orientation can contain p.
    const auto r = er_window_bipartite(2000, 200, 0.5);
    EXPECT_EQ(r.holds, r.holds_primary || r.holds_swapped);
    EXPECT_NE(r.lower, r.lower_swapped);
}

TEST(ErWindow, BadArguments) {
    EXPECT_THROW(er_window_bipartite(1, 5, 0.5), precondition_error);
    EXPECT_THROW(er_window_directed(10, 1.0), precondition_error);
    EXPECT_THROW(er_window_directed(10, 0.0), precondition_error);
}

}  // namespace
}  // namespace swapmc
