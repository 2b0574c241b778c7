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

// Command-line front end: check, sample, enumerate, diagnose, path.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swapmc/swapmc.hpp"

namespace {

using namespace swapmc;

enum Exit : int { ok = 0, failed = 1, usage = 2, over_budget = 3 };

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

bool is_graphic(const Instance& in) {
    if (in.directed()) return is_directed_graphic(std::get<DirectedDegreeBiSequence>(in.degrees));
    return in.forbidden.empty() ? is_bipartite_graphic(in.bipartite) : is_graphic_avoiding(in.bipartite, in.forbidden);
}

void print_er(std::ostream& out, const ErWindowReport& r) {
    out << "er_p: " << fmt12(r.p) << "\n";
    out << "er_window: [" << fmt12(r.lower) << ", " << fmt12(r.upper) << "]\n";
    if (r.has_swapped) out << "er_window_swapped: [" << fmt12(r.lower_swapped) << ", " << fmt12(r.upper_swapped) << "]\n";
    out << "er_verdict: " << (r.holds ? "holds" : "fails") << "\n";
}

int run_check(const std::string& file, std::optional<double> er_p) {
    const Instance in = parse_instance(read_file(file));
    const bool graphic = is_graphic(in);
    std::cout << "kind: " << (in.directed() ? "directed" : "bipartite") << "\n";
    std::cout << "graphic: " << yes_no(graphic) << "\n";
    const ConditionReport r = condition_check(in.degrees);
    const DegreeBounds& b = r.bounds;
    std::cout << "bounds: c1=" << b.c1 << " c2=" << b.c2 << " d1=" << b.d1 << " d2=" << b.d2 << " n=" << b.n
              << " m=" << b.m << "\n";
    std::cout << "condition: " << (in.directed() ? "directed" : "bipartite") << "\n";
    std::cout << "lhs: " << r.lhs << "\n";
    std::cout << "rhs: " << r.rhs << "\n";
    std::cout << "active_branch: " << r.active_branch + 1 << "\n";
    for (const auto& [name, value] : r.certificate) std::cout << "  " << name << " = " << value << "\n";
    std::cout << "verdict: " << to_string(r.verdict) << "\n";
    if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
    if (er_p) {
        if (in.directed())
            print_er(std::cout, er_window_directed(in.bipartite.n(), *er_p));
        else
            print_er(std::cout, er_window_bipartite(in.bipartite.n(), in.bipartite.m(), *er_p));
    }
    if (!graphic || r.verdict == Verdict::fails) return failed;
    return ok;
}

struct SampleOptions {
    std::string file;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> burn_in;
    std::uint64_t thin = 1;
    std::uint64_t count = 1;
    std::string format = "edges";
    int chains = 1;
    int threads = 1;
    bool no_lazy = false;
    bool stats = false;
};

int run_sample(const SampleOptions& o) {
    const Instance in = parse_instance(read_file(o.file));
    const OutputFormat fmt = parse_format(o.format);
    ChainConfig cfg;
    cfg.seed = o.seed;
    cfg.burn_in = o.burn_in;
    cfg.thinning = o.thin;
    cfg.samples = o.count;
    cfg.kind = kind_for(in.forbidden);
    cfg.lazy = !o.no_lazy;
    const BipartiteRealization start = initial_state(in.bipartite, in.forbidden);
    const auto runs = sample_chains(start, cfg, o.chains, o.threads);
    std::ostringstream out;
    if (fmt != OutputFormat::json) out << format_degrees(in) << "\n";
    ChainStats total;
    for (std::size_t c = 0; c < runs.size(); ++c) {
        total += runs[c].stats;
        for (std::size_t k = 0; k < runs[c].states.size(); ++k) {
            const auto& r = runs[c].states[k];
            r.validate();
            if (fmt != OutputFormat::json) out << "# chain " << c + 1 << " sample " << k + 1 << "\n";
            out << format_realization(in, r, fmt);
        }
    }
    std::cout << out.str();
    if (o.stats) std::cerr << total.to_json().dump() << "\n";
    return ok;
}

int run_enumerate(const std::string& file, std::size_t budget, const std::string& format) {
    const Instance in = parse_instance(read_file(file));
    const OutputFormat fmt = parse_format(format);
    const auto all = enumerate_realizations(in.bipartite, in.forbidden, budget);
    std::ostringstream out;
    if (fmt != OutputFormat::json) out << format_degrees(in) << "\n# realizations: " << all.size() << "\n";
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (fmt != OutputFormat::json) out << "# realization " << i + 1 << "\n";
        out << format_realization(in, all[i], fmt);
    }
    std::cout << out.str();
    return all.empty() ? failed : ok;
}

int run_diagnose(const std::string& file, std::size_t horizon, std::size_t budget) {
    const Instance in = parse_instance(read_file(file));
    const ChainKind kind = kind_for(in.forbidden);
    const TransitionMatrix p = exact_transition_matrix(in.bipartite, in.forbidden, kind, true, budget);
    if (p.size() == 0) throw infeasible_error("the sequence has no realization");
    const auto c4 = swap_graph_connected(in.bipartite, in.forbidden, MoveSet::c4_only, budget);
    std::cout << "states: " << p.size() << "\n";
    std::cout << "independent_count: " << count_realizations(in.bipartite, in.forbidden) << "\n";
    std::cout << "kernel: " << to_string(kind) << "\n";
    std::cout << "connected_c4: " << yes_no(c4.connected) << " (components " << c4.components << ")\n";
    bool connected = c4.connected;
    if (kind == ChainKind::directed) {
        const auto c6 = swap_graph_connected(in.bipartite, in.forbidden, MoveSet::c4_c6, budget);
        std::cout << "connected_c4_c6: " << yes_no(c6.connected) << " (components " << c6.components << ")\n";
        connected = c6.connected;
    }
    std::cout << "max_asymmetry: " << fmt12(p.max_asymmetry().to_double()) << "\n";
    std::cout << "max_row_sum_error: " << fmt12(p.max_row_sum_error().to_double()) << "\n";
    std::cout << "uniform_residual: " << fmt12(p.uniform_residual().to_double()) << "\n";
    std::cout << "step,tv\n";
    const auto tv = tv_curve(p, horizon);
    for (std::size_t t = 0; t < tv.size(); ++t) std::cout << t << "," << fmt12(tv[t]) << "\n";
    return connected ? ok : failed;
}

int run_path(const std::string& file_a, const std::string& file_b) {
    const RealizationFile a = parse_realization(read_file(file_a));
    const RealizationFile b = parse_realization(read_file(file_b));
    if (!(a.realization.space() == b.realization.space()))
        throw parse_error("the two realizations have different degree sequences or forbidden sets");
    // Share one space so the realizations are comparable.
    const BipartiteRealization& x = a.realization;
    const BipartiteRealization y(x.space_ptr(), b.realization.matrix());
    const CanonicalPath path = canonical_path(x, y);
    const bool restricted = !x.forbidden().empty();
    const auto theta = verify_move_counts(path, restricted);
    const auto bad = verify_bad_positions(path, x, y);
    const auto repair = verify_repairs(path, x, y);
    const ConditionReport cond = condition_check(a.instance.degrees);

    std::ostringstream out;
    out << "cycles: " << path.decomposition.cycles.size() << "\n";
    out << "moves: " << path.moves.size() << "\n";
    for (const auto& mv : path.moves) out << to_string(mv) << "\n";
    out << "milestones:";
    for (auto i : path.milestone_indices) out << " " << i;
    out << "\n";
    for (std::size_t i = 0; i < path.cycles.size(); ++i) {
        const auto& c = path.cycles[i];
        out << "cycle " << i + 1 << ": half_length " << c.half_length << " cornerstone " << c.cornerstone + 1
            << " moves " << c.moves << " single_steps " << c.single_steps << " double_steps " << c.double_steps
            << " c6 " << c.c6_moves << "\n";
    }
    out << "report: max 2-count " << bad.max_twos << ", max -1-count " << bad.max_minus_ones << "\n";
    out << "raw_max_2_count: " << bad.raw_max_twos << "\n";
    out << "raw_max_-1_count: " << bad.raw_max_minus_ones << "\n";
    out << "bad_positions: " << (bad.ok ? "ok" : "violated") << "\n";
    out << "move_counts: " << (theta.ok ? "ok" : "violated") << "\n";
    out << "max_repair_distance: " << repair.max_distance << "\n";
    out << "max_repair_switches: " << repair.max_switches << "\n";
    out << "repairs: " << (repair.ok ? "ok" : "failed " + std::to_string(repair.failures)) << "\n";
    for (const auto& [k, why] : repair.failure_details) out << "  state " << k << ": " << why << "\n";
    out << "condition: " << to_string(cond.verdict) << "\n";
    std::cout << out.str();
    if (!bad.ok || !theta.ok) return failed;
    if (!repair.ok && cond.verdict == Verdict::holds) return failed;
    return ok;
}

int fail_with(int code, const char* kind, const std::string& what) {
    std::cerr << "error: " << kind << ": " << what << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swap Markov chain sampler for bipartite graphs and digraphs with given degrees"};
    app.require_subcommand(1);

    std::string check_file;
    std::optional<double> er_p;
    auto* check = app.add_subcommand("check", "graphicality, degree bounds and mixing condition");
    check->add_option("seqfile", check_file, "degree file")->required();
    check->add_option("--er-p", er_p, "also test an edge probability against the random-graph window");

    SampleOptions so;
    auto* sample_cmd = app.add_subcommand("sample", "draw realizations with the swap chain");
    sample_cmd->add_option("seqfile", so.file, "degree file")->required();
    sample_cmd->add_option("--seed", so.seed, "random seed")->required();
    sample_cmd->add_option("--burn-in", so.burn_in, "steps before the first sample (default 10*|E|*max(n,m))");
    sample_cmd->add_option("--thin", so.thin, "steps between samples")->check(CLI::PositiveNumber);
    sample_cmd->add_option("--count", so.count, "samples per chain")->check(CLI::PositiveNumber);
    sample_cmd->add_option("--format", so.format, "edges, matrix or json");
    sample_cmd->add_option("--chains", so.chains, "independent chains")->check(CLI::PositiveNumber);
    sample_cmd->add_option("--threads", so.threads, "worker threads")->check(CLI::PositiveNumber);
    sample_cmd->add_flag("--no-lazy", so.no_lazy, "drop the holding probability");
    sample_cmd->add_flag("--stats", so.stats, "print step statistics as JSON on stderr");

    std::string enum_file, enum_format = "edges";
    std::size_t enum_budget = default_position_budget;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "list every realization (small instances)");
    enumerate_cmd->add_option("seqfile", enum_file, "degree file")->required();
    enumerate_cmd->add_option("--budget", enum_budget, "largest n*m accepted");
    enumerate_cmd->add_option("--format", enum_format, "edges, matrix or json");

    std::string diag_file;
    std::size_t horizon = 20, diag_budget = default_position_budget;
    auto* diagnose = app.add_subcommand("diagnose", "exact kernel checks and total-variation curve");
    diagnose->add_option("seqfile", diag_file, "degree file")->required();
    diagnose->add_option("--horizon", horizon, "steps of the TV curve");
    diagnose->add_option("--budget", diag_budget, "largest n*m accepted");

    std::string path_a, path_b;
    auto* path_cmd = app.add_subcommand("path", "canonical path between two realizations, with verification");
    path_cmd->add_option("realA", path_a, "realization file")->required();
    path_cmd->add_option("realB", path_b, "realization file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail_with(usage, "usage", e.what());
    }

    try {
        if (*check) return run_check(check_file, er_p);
        if (*sample_cmd) return run_sample(so);
        if (*enumerate_cmd) return run_enumerate(enum_file, enum_budget, enum_format);
        if (*diagnose) return run_diagnose(diag_file, horizon, diag_budget);
        if (*path_cmd) return run_path(path_a, path_b);
    } catch (const parse_error& e) {
        return fail_with(usage, "parse", e.what());
    } catch (const precondition_error& e) {
        return fail_with(usage, "precondition", e.what());
    } catch (const budget_error& e) {
        return fail_with(over_budget, "budget", e.what());
    } catch (const infeasible_error& e) {
        return fail_with(failed, "infeasible", e.what());
    } catch (const std::exception& e) {
        return fail_with(failed, "failed", e.what());
    }
    return usage;
}
