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

#include <map>

#include "support.hpp"
#include "swapmc/chain.hpp"
#include "swapmc/oracle.hpp"

namespace swapmc {
namespace {

constexpr double kFrequencyTolerance = 0.01;
constexpr double kTvTolerance = 0.02;

BipartiteRealization matching22() {
    return BipartiteRealization::from_edges(make_space({{1, 1}, {1, 1}}), {{0, 0}, {1, 1}});
}

BipartiteRealization triangle() {
    return BipartiteRealization::from_edges(make_space({{1, 1, 1}, {1, 1, 1}}, ForbiddenMatching::diagonal(3)),
                                            {{0, 1}, {1, 2}, {2, 0}});
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    Rng a(42, 0), b(42, 0), c(42, 1);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        EXPECT_EQ(x, b.next());
        (void)c;
    }
    EXPECT_NE(Rng(42, 0).next(), Rng(42, 1).next());
    Rng r(7);
    std::vector<int> hist(5, 0);
    for (int i = 0; i < 50000; ++i) ++hist[static_cast<std::size_t>(r.below(5))];
    for (int h : hist) EXPECT_NEAR(h / 50000.0, 0.2, 0.01);
}

TEST(StepBipartite, MatchingMovesHalfTheTime) {
    // One legal swap; it is proposed whenever the chain does not hold.
    auto r = matching22();
    Rng rng(1);
    int moved = 0;
    const int steps = 100000;
    for (int t = 0; t < steps; ++t) moved += step_bipartite_in_place(r, rng).moved ? 1 : 0;
    EXPECT_NEAR(static_cast<double>(moved) / steps, 0.5, kFrequencyTolerance);
}

TEST(StepBipartite, FullQuadrupleIsIllegal) {
    auto full = BipartiteRealization::from_edges(make_space({{2, 2}, {2, 2}}), {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    EXPECT_FALSE(c4_proposal(full, 0, 1, 0, 1).has_value());
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const auto o = step_bipartite_in_place(full, rng);
        EXPECT_FALSE(o.moved);
        EXPECT_TRUE(o.reason == StepReason::lazy || o.reason == StepReason::proposal_illegal);
    }
}

TEST(StepBipartite, RejectsForbiddenInstances) {
    auto t = triangle();
    Rng rng(1);
    EXPECT_THROW(step_bipartite_in_place(t, rng), precondition_error);
}

TEST(StepBipartite, CopyAndInPlaceAgree) {
    auto a = matching22();
    Rng r1(9), r2(9);
    for (int t = 0; t < 100; ++t) {
        auto [next, o] = step_bipartite(a, r1);
        auto b = a;
        const auto o2 = step_bipartite_in_place(b, r2);
        EXPECT_EQ(next, b);
        EXPECT_EQ(o.moved, o2.moved);
        a = next;
    }
}

TEST(StepDirected, TriangleSwapsAQuarterOfTheTime) {
    auto r = triangle();
    Rng rng(2);
    int c6 = 0;
    const int steps = 100000;
    for (int t = 0; t < steps; ++t) c6 += step_directed_in_place(r, rng).reason == StepReason::applied_c6 ? 1 : 0;
    EXPECT_NEAR(static_cast<double>(c6) / steps, 0.25, kFrequencyTolerance);
}

TEST(StepDirected, C6NeedsForbiddenPairs) {
    const auto t = triangle();
    EXPECT_TRUE(c6_proposal(t, {0, 1, 2}, {0, 1, 2}).has_value());
    // Without a forbidden matching no triple pairs up.
    const auto plain = BipartiteRealization::from_edges(make_space({{1, 1, 1}, {1, 1, 1}}), {{0, 1}, {1, 2}, {2, 0}});
    EXPECT_FALSE(c6_proposal(plain, {0, 1, 2}, {0, 1, 2}).has_value());
    // u-triple partners {0,1,2} but v-triple {0,1,3} on a 4x4 instance.
    const auto sq = to_bipartite_representation(construct_directed({{1, 1, 1, 1}, {1, 1, 1, 1}}));
    EXPECT_FALSE(c6_proposal(sq, {0, 1, 2}, {0, 1, 3}).has_value());
}

TEST(StepDirected, SmallClassesNeverFireC6) {
    auto r = to_bipartite_representation(construct_directed({{1, 1}, {1, 1}}));
    Rng rng(4);
    for (int t = 0; t < 1000; ++t) EXPECT_NE(step_directed_in_place(r, rng).reason, StepReason::applied_c6);
}

TEST(Sample, DeterministicAndValid) {
    ChainConfig cfg;
    cfg.seed = 1;
    cfg.burn_in = 0;
    cfg.samples = 2;
    cfg.thinning = 1;
    const BipartiteDegreeSequence seq{{1, 1}, {1, 1}};
    const auto a = sample(seq, ForbiddenMatching(2, 2), cfg);
    const auto b = sample(seq, ForbiddenMatching(2, 2), cfg);
    ASSERT_EQ(a.states.size(), 2u);
    EXPECT_EQ(a.states, b.states);
    EXPECT_EQ(a.stats, b.stats);
    EXPECT_EQ(a.stats.total_steps, 2u);
    for (const auto& s : a.states) EXPECT_NO_THROW(s.validate());
}

TEST(Sample, ZeroSamplesIsAConfigError) {
    ChainConfig cfg;
    cfg.samples = 0;
    EXPECT_THROW(sample({{1, 1}, {1, 1}}, ForbiddenMatching(2, 2), cfg), precondition_error);
    cfg.samples = 1;
    cfg.thinning = 0;
    EXPECT_THROW(cfg.validate(), precondition_error);
}

TEST(Sample, DefaultBurnIn) {
    const auto space = make_space({{2, 1, 1}, {2, 1, 1}});
    EXPECT_EQ(default_burn_in(*space), 10u * 4u * 3u);
}

TEST(Sample, TriangleIsUniform) {
    ChainConfig cfg;
    cfg.seed = 5;
    cfg.samples = 100000;
    cfg.thinning = 10;
    cfg.kind = ChainKind::directed;
    const BipartiteDegreeSequence seq{{1, 1, 1}, {1, 1, 1}};
    std::map<BitMatrix, std::uint64_t> counts;
    sample(seq, ForbiddenMatching::diagonal(3), cfg, [&](const BipartiteRealization& r) { ++counts[r.matrix()]; });
    ASSERT_EQ(counts.size(), 2u);
    std::vector<std::uint64_t> c;
    for (const auto& [k, v] : counts) c.push_back(v);
    EXPECT_LT(tv_to_uniform(c, 2), kTvTolerance);
}

TEST(SampleChains, IndependentOfThreadCount) {
    ChainConfig cfg;
    cfg.seed = 99;
    cfg.samples = 20;
    cfg.thinning = 3;
    cfg.burn_in = 50;
    const auto start = construct_bipartite({{2, 2, 1, 1}, {2, 1, 2, 1}});
    const auto one = sample_chains(start, cfg, 4, 1);
    const auto many = sample_chains(start, cfg, 4, 4);
    ASSERT_EQ(one.size(), many.size());
    for (std::size_t c = 0; c < one.size(); ++c) {
        EXPECT_EQ(one[c].states, many[c].states);
        EXPECT_EQ(one[c].stats, many[c].stats);
    }
    EXPECT_NE(one[0].states, one[1].states);
}

TEST(Kernel, HoldingProbabilityAtLeastHalf) {
    for (const auto& [seq, f, kind] :
         std::vector<std::tuple<BipartiteDegreeSequence, ForbiddenMatching, ChainKind>>{
             {{{2, 1, 1}, {2, 1, 1}}, ForbiddenMatching(3, 3), ChainKind::bipartite},
             {{{2, 2, 1, 1}, {1, 2, 2, 1}}, ForbiddenMatching(4, 4), ChainKind::bipartite},
             {{{1, 1, 1}, {1, 1, 1}}, ForbiddenMatching::diagonal(3), ChainKind::directed},
             {{{2, 1, 1, 1}, {1, 2, 1, 1}}, ForbiddenMatching::diagonal(4), ChainKind::directed}}) {
        const auto p = exact_transition_matrix(seq, f, kind);
        for (std::size_t i = 0; i < p.size(); ++i) EXPECT_FALSE(p.at(i, i) < Rational(1, 2));
    }
}

}  // namespace
}  // namespace swapmc
