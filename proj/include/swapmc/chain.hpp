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
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "realization.hpp"
#include "rng.hpp"

namespace swapmc {

/// Which kernel drives the chain: the plain bipartite swap chain, or the
/// restricted chain with C4- and C6-swaps on a forbidden matching (digraphs
/// through their bipartite representation).
enum class ChainKind { bipartite, directed };

inline const char* to_string(ChainKind k) { return k == ChainKind::bipartite ? "bipartite" : "directed"; }

enum class StepReason { lazy, proposal_illegal, applied_c4, applied_c6 };

inline const char* to_string(StepReason r) {
    switch (r) {
    case StepReason::lazy: return "lazy";
    case StepReason::proposal_illegal: return "proposal_illegal";
    case StepReason::applied_c4: return "applied_c4";
    case StepReason::applied_c6: return "applied_c6";
    }
    return "?";
}

struct StepOutcome {
    bool moved = false;
    std::optional<SwapMove> move;
    StepReason reason = StepReason::lazy;
};

struct ChainConfig {
    std::uint64_t seed = 0;
    /// Unset means the heuristic default, see `default_burn_in`.
    std::optional<std::uint64_t> burn_in;
    std::uint64_t thinning = 1;
    std::uint64_t samples = 1;
    ChainKind kind = ChainKind::bipartite;
    /// Hold with probability 1/2 at every step. Turning this off keeps the
    /// kernel symmetric but gives up the aperiodicity guarantee.
    bool lazy = true;

    void validate() const {
        if (thinning < 1) throw precondition_error("thinning must be at least 1");
        if (samples < 1) throw precondition_error("samples must be at least 1");
    }
};

/// Heuristic burn-in of 10 * |E| * max(n, m) steps. This is not a proven
/// mixing bound; the known polynomial bounds carry no usable constants.
inline std::uint64_t default_burn_in(const RealizationSpace& space) {
    const auto edges = static_cast<std::uint64_t>(space.degrees.edge_count());
    const auto width = static_cast<std::uint64_t>(std::max(space.n(), space.m()));
    return std::max<std::uint64_t>(1, 10 * edges * width);
}

struct ChainStats {
    std::uint64_t total_steps = 0;
    std::uint64_t lazy_steps = 0;
    std::uint64_t illegal_proposals = 0;
    std::uint64_t applied_c4 = 0;
    std::uint64_t applied_c6 = 0;

    void record(const StepOutcome& o) {
        ++total_steps;
        switch (o.reason) {
        case StepReason::lazy: ++lazy_steps; break;
        case StepReason::proposal_illegal: ++illegal_proposals; break;
        case StepReason::applied_c4: ++applied_c4; break;
        case StepReason::applied_c6: ++applied_c6; break;
        }
    }

    ChainStats& operator+=(const ChainStats& o) {
        total_steps += o.total_steps;
        lazy_steps += o.lazy_steps;
        illegal_proposals += o.illegal_proposals;
        applied_c4 += o.applied_c4;
        applied_c6 += o.applied_c6;
        return *this;
    }

    nlohmann::ordered_json to_json() const {
        return {{"total_steps", total_steps},
                {"lazy_steps", lazy_steps},
                {"illegal_proposals", illegal_proposals},
                {"applied_c4", applied_c4},
                {"applied_c6", applied_c6}};
    }

    friend bool operator==(const ChainStats&, const ChainStats&) = default;
};

namespace detail {

inline std::pair<int, int> draw_pair(Rng& rng, int n) {
    int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    return std::minmax(a, b);
}

inline std::array<int, 3> draw_triple(Rng& rng, int n) {
    const auto [lo, hi] = draw_pair(rng, n);
    int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 2)));
    if (c >= lo) ++c;
    if (c >= hi) ++c;
    std::array<int, 3> t{lo, hi, c};
    std::sort(t.begin(), t.end());
    return t;
}

inline StepOutcome try_apply(BipartiteRealization& r, const std::optional<SwapMove>& mv) {
    if (!mv) return {false, std::nullopt, StepReason::proposal_illegal};
    apply_move_in_place(r, *mv);
    return {true, mv, mv->kind == MoveKind::c6 ? StepReason::applied_c6 : StepReason::applied_c4};
}

}  // namespace detail

/// The C4-swap (if any) proposed by the vertex pairs {ua, ub} and {va, vb}.
/// At most one of the two pairings alternates, so the move is unique.
inline std::optional<SwapMove> c4_proposal(const BipartiteRealization& r, int ua, int ub, int va, int vb) {
    return c4_on(r, ua, ub, va, vb);
}

/// The C6-swap (if any) proposed by the u-triple `us` and v-triple `vs`.
/// The triples must pair up through the forbidden matching; the hexagon is
/// then fixed up to direction and at most one direction alternates.
inline std::optional<SwapMove> c6_proposal(const BipartiteRealization& r, std::array<int, 3> us, std::array<int, 3> vs) {
    const auto& f = r.forbidden();
    std::array<int, 3> p{};
    for (std::size_t k = 0; k < 3; ++k) {
        p[k] = f.partner_of_u(us[k]);
        if (p[k] < 0) return std::nullopt;
    }
    std::array<int, 3> ps = p;
    std::sort(ps.begin(), ps.end());
    std::sort(vs.begin(), vs.end());
    if (ps != vs) return std::nullopt;
    const int a = us[0], b = us[1], c = us[2];
    const int pa = p[0], pb = p[1], pc = p[2];
    const SwapMove one = SwapMove::c6(a, pc, b, pa, c, pb);
    if (is_legal(r, one)) return one;
    const SwapMove two = SwapMove::c6(a, pb, c, pa, b, pc);
    if (is_legal(r, two)) return two;
    return std::nullopt;
}

/// One step of the bipartite swap chain, in place. With probability 1/2
/// (when lazy) the state is kept; otherwise unordered pairs {u1,u2} and
/// {v1,v2} are drawn uniformly and the unique alternating C4 on them, if
/// any, is swapped. Each neighbour is reached with probability
/// 1 / (2 * C(n,2) * C(m,2)).
inline StepOutcome step_bipartite_in_place(BipartiteRealization& r, Rng& rng, bool lazy = true) {
    if (!r.forbidden().empty()) throw precondition_error("bipartite kernel requires an empty forbidden set");
    if (r.n() < 2 || r.m() < 2) throw precondition_error("bipartite kernel needs at least two vertices per class");
    if (lazy && rng.below(2) == 0) return {false, std::nullopt, StepReason::lazy};
    const auto [ua, ub] = detail::draw_pair(rng, r.n());
    const auto [va, vb] = detail::draw_pair(rng, r.m());
    return detail::try_apply(r, c4_proposal(r, ua, ub, va, vb));
}

inline std::pair<BipartiteRealization, StepOutcome> step_bipartite(BipartiteRealization r, Rng& rng, bool lazy = true) {
    StepOutcome o = step_bipartite_in_place(r, rng, lazy);
    return {std::move(r), o};
}

/// One step of the restricted chain, in place: hold with probability 1/2,
/// propose a C4-swap with probability 1/4, a C6-swap with probability 1/4.
/// Without laziness the two proposal branches get 1/2 each. When a class
/// has fewer than three vertices the C6 branch always rejects.
inline StepOutcome step_directed_in_place(BipartiteRealization& r, Rng& rng, bool lazy = true) {
    if (r.n() < 2 || r.m() < 2) throw precondition_error("restricted kernel needs at least two vertices per class");
    const auto branch = lazy ? rng.below(4) : 2 + rng.below(2);
    if (branch < 2) return {false, std::nullopt, StepReason::lazy};
    if (branch == 2) {
        const auto [ua, ub] = detail::draw_pair(rng, r.n());
        const auto [va, vb] = detail::draw_pair(rng, r.m());
        return detail::try_apply(r, c4_proposal(r, ua, ub, va, vb));
    }
    if (r.n() < 3 || r.m() < 3) return {false, std::nullopt, StepReason::proposal_illegal};
    const auto us = detail::draw_triple(rng, r.n());
    const auto vs = detail::draw_triple(rng, r.m());
    return detail::try_apply(r, c6_proposal(r, us, vs));
}

inline std::pair<BipartiteRealization, StepOutcome> step_directed(BipartiteRealization r, Rng& rng, bool lazy = true) {
    StepOutcome o = step_directed_in_place(r, rng, lazy);
    return {std::move(r), o};
}

inline StepOutcome step_in_place(BipartiteRealization& r, Rng& rng, ChainKind kind, bool lazy = true) {
    return kind == ChainKind::bipartite ? step_bipartite_in_place(r, rng, lazy) : step_directed_in_place(r, rng, lazy);
}

/// Kernel matching the forbidden set: plain chain when it is empty.
inline ChainKind kind_for(const ForbiddenMatching& f) { return f.empty() ? ChainKind::bipartite : ChainKind::directed; }

/// Runs one chain from `start`: `burn_in` steps, then `samples` states, each
/// after a further `thinning` steps. `sink(const BipartiteRealization&)` is
/// called once per retained state. Randomness comes from stream `stream` of
/// `cfg.seed`, so equal inputs give identical output.
template <class Sink>
ChainStats sample_from(BipartiteRealization start, const ChainConfig& cfg, Sink&& sink, std::uint64_t stream = 0) {
    cfg.validate();
    if (cfg.kind == ChainKind::bipartite && !start.forbidden().empty())
        throw precondition_error("bipartite chain requested on an instance with forbidden positions");
    Rng rng(cfg.seed, stream);
    ChainStats stats;
    const std::uint64_t burn = cfg.burn_in.value_or(default_burn_in(start.space()));
    for (std::uint64_t t = 0; t < burn; ++t) stats.record(step_in_place(start, rng, cfg.kind, cfg.lazy));
    for (std::uint64_t k = 0; k < cfg.samples; ++k) {
        for (std::uint64_t t = 0; t < cfg.thinning; ++t) stats.record(step_in_place(start, rng, cfg.kind, cfg.lazy));
        sink(static_cast<const BipartiteRealization&>(start));
    }
    return stats;
}

/// Initial state for the chain: Kleitman-Wang for a diagonal forbidden
/// set on a square instance, otherwise the generic bipartite construction.
inline BipartiteRealization initial_state(const BipartiteDegreeSequence& seq, const ForbiddenMatching& forbidden) {
    if (!forbidden.empty() && forbidden.is_diagonal())
        return to_bipartite_representation(construct_directed(DirectedDegreeBiSequence{seq.u_degrees, seq.v_degrees}));
    return construct_bipartite(seq, forbidden);
}

template <class Sink>
ChainStats sample(const BipartiteDegreeSequence& seq, const ForbiddenMatching& forbidden, const ChainConfig& cfg,
                  Sink&& sink, std::uint64_t stream = 0) {
    cfg.validate();
    return sample_from(initial_state(seq, forbidden), cfg, std::forward<Sink>(sink), stream);
}

struct SampleRun {
    std::vector<BipartiteRealization> states;
    ChainStats stats;
};

inline SampleRun sample(const BipartiteDegreeSequence& seq, const ForbiddenMatching& forbidden, const ChainConfig& cfg,
                        std::uint64_t stream = 0) {
    SampleRun run;
    run.stats = sample(seq, forbidden, cfg, [&](const BipartiteRealization& r) { run.states.push_back(r); }, stream);
    return run;
}

/// Runs `chains` independent chains from `start`, chain `c` on stream `c`.
/// Chains run concurrently on up to `threads` threads; the result is ordered
/// by chain index and does not depend on `threads`.
inline std::vector<SampleRun> sample_chains(const BipartiteRealization& start, const ChainConfig& cfg, int chains,
                                            int threads = 0) {
    cfg.validate();
    if (chains < 1) throw precondition_error("chain count must be at least 1");
    std::vector<SampleRun> runs(static_cast<std::size_t>(chains));
    auto work = [&](int c) {
        SampleRun& run = runs[static_cast<std::size_t>(c)];
        run.stats = sample_from(start, cfg, [&](const BipartiteRealization& r) { run.states.push_back(r); },
                                static_cast<std::uint64_t>(c));
    };
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, chains);
    if (threads == 1) {
        for (int c = 0; c < chains; ++c) work(c);
        return runs;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chains));
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (int c = t; c < chains; c += threads) {
                    try {
                        work(c);
                    } catch (...) {
                        errors[static_cast<std::size_t>(c)] = std::current_exception();
                    }
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return runs;
}

}  // namespace swapmc
