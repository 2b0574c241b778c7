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
#include <string>
#include <utility>
#include <vector>

#include "degree_model.hpp"
#include "errors.hpp"

namespace swapmc {

enum class Verdict { holds, fails, not_applicable };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::not_applicable: return "not_applicable";
    }
    return "?";
}

/// Outcome of an integer mixing-condition check together with every
/// intermediate quantity, so the arithmetic can be audited.
struct ConditionReport {
    Verdict verdict = Verdict::not_applicable;
    DegreeBounds bounds;
    long long lhs = 0;
    long long rhs = 0;
    /// The two arguments of the max on the right-hand side.
    long long first_branch = 0;
    long long second_branch = 0;
    /// 0 if the first argument attains the max (ties go to the first), else 1.
    int active_branch = 0;
    /// Named intermediate values in evaluation order.
    std::vector<std::pair<std::string, long long>> certificate;
    /// Why the theorem does not apply, when it does not.
    std::string reason;
};

namespace detail {

inline std::string window_violation(const DegreeBounds& b, int c_cap, int d_cap, const char* c_cap_name,
                                    const char* d_cap_name) {
    if (!(0 < b.c1)) return "requires c1 > 0";
    if (!(b.c1 <= b.c2)) return "requires c1 <= c2";
    if (!(b.c2 < c_cap)) return std::string("requires c2 < ") + c_cap_name;
    if (!(0 < b.d1)) return "requires d1 > 0";
    if (!(b.d1 <= b.d2)) return "requires d1 <= d2";
    if (!(b.d2 < d_cap)) return std::string("requires d2 < ") + d_cap_name;
    return {};
}

inline void settle(ConditionReport& r) {
    r.active_branch = r.first_branch >= r.second_branch ? 0 : 1;
    if (r.reason.empty()) r.verdict = r.lhs <= r.rhs ? Verdict::holds : Verdict::fails;
}

}  // namespace detail

/// Bipartite condition
///   (c2 - c1 - 1)(d2 - d1 - 1) <= max{ c1 (m - d2), d1 (n - c2) }
/// on the window 0 < c1 <= c2 < n, 0 < d1 <= d2 < m. Outside the window the
/// verdict is `not_applicable`, never `fails`.
inline ConditionReport theorem2_check(const DegreeBounds& b) {
    ConditionReport r;
    r.bounds = b;
    r.reason = detail::window_violation(b, b.n, b.m, "n", "m");
    const long long fc = static_cast<long long>(b.c2) - b.c1 - 1;
    const long long fd = static_cast<long long>(b.d2) - b.d1 - 1;
    r.lhs = fc * fd;
    r.first_branch = static_cast<long long>(b.c1) * (b.m - b.d2);
    r.second_branch = static_cast<long long>(b.d1) * (b.n - b.c2);
    r.rhs = std::max(r.first_branch, r.second_branch);
    r.certificate = {{"c2-c1-1", fc},
                     {"d2-d1-1", fd},
                     {"lhs", r.lhs},
                     {"c1*(m-d2)", r.first_branch},
                     {"d1*(n-c2)", r.second_branch},
                     {"rhs", r.rhs}};
    detail::settle(r);
    return r;
}

/// Directed condition
///   (c2 - c1)(d2 - d1) <= 2 + max{ c1(n-d2-1) + d1 + c2, d1(n-c2-1) + c1 + d2 } - n
/// on the window 0 < c1 <= c2 < n, 0 < d1 <= d2 < n, with c bounding the
/// out-degrees and d the in-degrees.
inline ConditionReport theorem3_check(const DegreeBounds& b) {
    ConditionReport r;
    r.bounds = b;
    r.reason = detail::window_violation(b, b.n, b.n, "n", "n");
    const long long n = b.n;
    const long long fc = static_cast<long long>(b.c2) - b.c1;
    const long long fd = static_cast<long long>(b.d2) - b.d1;
    r.lhs = fc * fd;
    const long long p1 = static_cast<long long>(b.c1) * (n - b.d2 - 1);
    const long long p2 = static_cast<long long>(b.d1) * (n - b.c2 - 1);
    r.first_branch = p1 + b.d1 + b.c2;
    r.second_branch = p2 + b.c1 + b.d2;
    r.rhs = 2 + std::max(r.first_branch, r.second_branch) - n;
    r.certificate = {{"c2-c1", fc},
                     {"d2-d1", fd},
                     {"lhs", r.lhs},
                     {"c1*(n-d2-1)", p1},
                     {"c1*(n-d2-1)+d1+c2", r.first_branch},
                     {"d1*(n-c2-1)", p2},
                     {"d1*(n-c2-1)+c1+d2", r.second_branch},
                     {"rhs", r.rhs}};
    detail::settle(r);
    return r;
}

/// The check that matches the sequence kind.
inline ConditionReport condition_check(const DegreeSequence& seq) {
    const DegreeBounds b = bounds_of(seq);
    return std::holds_alternative<BipartiteDegreeSequence>(seq) ? theorem2_check(b) : theorem3_check(b);
}

/// Edge-probability window for Erdos-Renyi random graphs, natural logs.
struct ErWindowReport {
    double p = 0;
    double lower = 0;
    double upper = 0;
    bool holds_primary = false;
    /// Bipartite only: the window with the roles of n and m exchanged.
    bool has_swapped = false;
    double lower_swapped = 0;
    double upper_swapped = 0;
    bool holds_swapped = false;
    bool holds = false;
};

namespace detail {
inline double er_term(double log_arg, double denom) {
    return 3.0 * std::sqrt((std::log(log_arg) + 0.5 * std::log(2.0)) / denom);
}
inline void check_er_args(int n, int m, double p) {
    if (n < 2 || m < 2) throw precondition_error("window needs n, m >= 2");
    if (!(p > 0.0 && p < 1.0)) throw precondition_error("edge probability must lie in (0, 1)");
}
}  // namespace detail

/// 3 sqrt((log m + log(2)/2) / n) <= p <= 1 - 3 sqrt((log n + log(2)/2) / m),
/// or the same with n and m exchanged.
inline ErWindowReport er_window_bipartite(int n, int m, double p) {
    detail::check_er_args(n, m, p);
    ErWindowReport r;
    r.p = p;
    r.lower = detail::er_term(m, n);
    r.upper = 1.0 - detail::er_term(n, m);
    r.holds_primary = r.lower <= p && p <= r.upper;
    r.has_swapped = true;
    r.lower_swapped = detail::er_term(n, m);
    r.upper_swapped = 1.0 - detail::er_term(m, n);
    r.holds_swapped = r.lower_swapped <= p && p <= r.upper_swapped;
    r.holds = r.holds_primary || r.holds_swapped;
    return r;
}

/// 3 sqrt((log n + log(2)/2) / n) + 2/sqrt(n) <= p <= 1 - (same).
inline ErWindowReport er_window_directed(int n, double p) {
    detail::check_er_args(n, n, p);
    ErWindowReport r;
    r.p = p;
    const double margin = detail::er_term(n, n) + 2.0 / std::sqrt(static_cast<double>(n));
    r.lower = margin;
    r.upper = 1.0 - margin;
    r.holds_primary = r.lower <= p && p <= r.upper;
    r.holds = r.holds_primary;
    return r;
}

}  // namespace swapmc
