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
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <iterator>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "errors.hpp"

namespace swapmc {

/// Prescribed degrees of a bipartite graph on U (rows) and V (columns).
struct BipartiteDegreeSequence {
    std::vector<int> u_degrees;
    std::vector<int> v_degrees;

    int n() const noexcept { return static_cast<int>(u_degrees.size()); }
    int m() const noexcept { return static_cast<int>(v_degrees.size()); }
    long long edge_count() const noexcept {
        return std::accumulate(u_degrees.begin(), u_degrees.end(), 0LL);
    }

    /// Throws `parse_error` naming the first violated invariant.
    void validate() const;
    bool is_valid() const noexcept;

    friend bool operator==(const BipartiteDegreeSequence&, const BipartiteDegreeSequence&) = default;
};

/// Prescribed out- and in-degrees of a loopless digraph on n vertices.
struct DirectedDegreeBiSequence {
    std::vector<int> out_degrees;
    std::vector<int> in_degrees;

    int n() const noexcept { return static_cast<int>(out_degrees.size()); }
    long long arc_count() const noexcept {
        return std::accumulate(out_degrees.begin(), out_degrees.end(), 0LL);
    }

    void validate() const;
    bool is_valid() const noexcept;

    friend bool operator==(const DirectedDegreeBiSequence&, const DirectedDegreeBiSequence&) = default;
};

using DegreeSequence = std::variant<BipartiteDegreeSequence, DirectedDegreeBiSequence>;

/// Degree bounds in the orientation of the mixing theorems.
///
/// Bipartite: `c1..c2` bounds the V-degrees and `d1..d2` the U-degrees,
/// with `n = |U|` and `m = |V|`. Directed: `c1..c2` bounds out-degrees and
/// `d1..d2` in-degrees, with `n = m` = number of vertices.
struct DegreeBounds {
    int c1 = 0;
    int c2 = 0;
    int d1 = 0;
    int d2 = 0;
    int n = 0;
    int m = 0;

    friend bool operator==(const DegreeBounds&, const DegreeBounds&) = default;
};

namespace detail {

inline void check_degrees(const std::vector<int>& degrees, int cap, const char* side, const char* other) {
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 0)
            throw parse_error("negative degree " + std::to_string(degrees[i]) + " at " + side +
                              std::to_string(i + 1));
        if (degrees[i] > cap)
            throw parse_error("degree " + std::to_string(degrees[i]) + " at " + side +
                              std::to_string(i + 1) + " exceeds " + other + " = " + std::to_string(cap));
    }
}

inline long long sum_of(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0LL); }

}  // namespace detail

inline void BipartiteDegreeSequence::validate() const {
    detail::check_degrees(u_degrees, m(), "u", "|V|");
    detail::check_degrees(v_degrees, n(), "v", "|U|");
    const long long su = detail::sum_of(u_degrees);
    const long long sv = detail::sum_of(v_degrees);
    if (su != sv)
        throw parse_error("degree sums differ: sum(U) = " + std::to_string(su) +
                          ", sum(V) = " + std::to_string(sv));
}

inline bool BipartiteDegreeSequence::is_valid() const noexcept {
    try {
        validate();
        return true;
    } catch (const parse_error&) {
        return false;
    }
}

inline void DirectedDegreeBiSequence::validate() const {
    if (out_degrees.size() != in_degrees.size())
        throw parse_error("out-degree and in-degree lists have different lengths (" +
                          std::to_string(out_degrees.size()) + " vs " + std::to_string(in_degrees.size()) + ")");
    const int cap = std::max(0, n() - 1);
    detail::check_degrees(out_degrees, cap, "out", "n-1");
    detail::check_degrees(in_degrees, cap, "in", "n-1");
    const long long so = detail::sum_of(out_degrees);
    const long long si = detail::sum_of(in_degrees);
    if (so != si)
        throw parse_error("degree sums differ: sum(out) = " + std::to_string(so) +
                          ", sum(in) = " + std::to_string(si));
}

inline bool DirectedDegreeBiSequence::is_valid() const noexcept {
    try {
        validate();
        return true;
    } catch (const parse_error&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Graphicality

/// Gale-Ryser test: true iff a simple bipartite graph realizes `seq`.
/// Sequences that break the type invariants are simply not graphic.
inline bool is_bipartite_graphic(const BipartiteDegreeSequence& seq) {
    if (!seq.is_valid()) return false;
    std::vector<int> a = seq.u_degrees;
    std::sort(a.begin(), a.end(), std::greater<>());
    // conj[k] = sum_j min(b_j, k), built from a histogram of the V-degrees.
    const int n = seq.n();
    std::vector<long long> at_least(static_cast<std::size_t>(n) + 2, 0);
    for (int b : seq.v_degrees) ++at_least[static_cast<std::size_t>(b)];
    for (int k = n - 1; k >= 0; --k) at_least[static_cast<std::size_t>(k)] += at_least[static_cast<std::size_t>(k) + 1];
    long long lhs = 0;
    long long rhs = 0;
    for (int k = 1; k <= n; ++k) {
        lhs += a[static_cast<std::size_t>(k) - 1];
        rhs += at_least[static_cast<std::size_t>(k)];  // number of b_j >= k
        if (lhs > rhs) return false;
    }
    return true;
}

namespace detail {

/// Greedy Kleitman-Wang construction. Vertices are processed in index
/// order; each is joined to the vertices (other than itself) of largest
/// remaining in-degree, ties broken by larger remaining out-degree, then by
/// lower index. Returns the arcs, or nothing if the bi-sequence is not
/// realizable.
inline std::optional<std::vector<std::pair<int, int>>> kleitman_wang(const DirectedDegreeBiSequence& seq) {
    if (!seq.is_valid()) return std::nullopt;
    const int n = seq.n();
    std::vector<int> out = seq.out_degrees;
    std::vector<int> in = seq.in_degrees;
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(static_cast<std::size_t>(seq.arc_count()));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        const int need = out[static_cast<std::size_t>(x)];
        if (need == 0) continue;
        order.clear();
        for (int y = 0; y < n; ++y)
            if (y != x && in[static_cast<std::size_t>(y)] > 0) order.push_back(y);
        if (static_cast<int>(order.size()) < need) return std::nullopt;
        std::partial_sort(order.begin(), order.begin() + need, order.end(), [&](int a, int b) {
            const auto ia = in[static_cast<std::size_t>(a)], ib = in[static_cast<std::size_t>(b)];
            if (ia != ib) return ia > ib;
            const auto oa = out[static_cast<std::size_t>(a)], ob = out[static_cast<std::size_t>(b)];
            if (oa != ob) return oa > ob;
            return a < b;
        });
        for (int k = 0; k < need; ++k) {
            const int y = order[static_cast<std::size_t>(k)];
            --in[static_cast<std::size_t>(y)];
            arcs.emplace_back(x, y);
        }
        out[static_cast<std::size_t>(x)] = 0;
    }
    for (int d : in)
        if (d != 0) return std::nullopt;
    return arcs;
}

/// Ryser-style greedy construction for the unrestricted bipartite case:
/// each u (in index order) is joined to the v's of largest remaining degree.
inline std::optional<std::vector<std::pair<int, int>>> ryser_construct(const BipartiteDegreeSequence& seq) {
    if (!seq.is_valid()) return std::nullopt;
    std::vector<int> rem = seq.v_degrees;
    std::vector<int> order;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(seq.edge_count()));
    for (int u = 0; u < seq.n(); ++u) {
        const int need = seq.u_degrees[static_cast<std::size_t>(u)];
        if (need == 0) continue;
        order.clear();
        for (int v = 0; v < seq.m(); ++v)
            if (rem[static_cast<std::size_t>(v)] > 0) order.push_back(v);
        if (static_cast<int>(order.size()) < need) return std::nullopt;
        std::partial_sort(order.begin(), order.begin() + need, order.end(), [&](int a, int b) {
            const auto ra = rem[static_cast<std::size_t>(a)], rb = rem[static_cast<std::size_t>(b)];
            return ra != rb ? ra > rb : a < b;
        });
        for (int k = 0; k < need; ++k) {
            const int v = order[static_cast<std::size_t>(k)];
            --rem[static_cast<std::size_t>(v)];
            edges.emplace_back(u, v);
        }
    }
    for (int d : rem)
        if (d != 0) return std::nullopt;
    return edges;
}

}  // namespace detail

/// True iff a loopless digraph (anti-parallel arcs allowed) realizes `seq`.
inline bool is_directed_graphic(const DirectedDegreeBiSequence& seq) {
    return detail::kleitman_wang(seq).has_value();
}

// ---------------------------------------------------------------------------
// Bounds

namespace detail {
inline std::pair<int, int> min_max(const std::vector<int>& v, const char* what) {
    if (v.empty()) throw precondition_error(std::string("empty class: no ") + what + " degrees");
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return {*lo, *hi};
}
}  // namespace detail

inline DegreeBounds bounds_of(const BipartiteDegreeSequence& seq) {
    const auto [c1, c2] = detail::min_max(seq.v_degrees, "V");
    const auto [d1, d2] = detail::min_max(seq.u_degrees, "U");
    return {c1, c2, d1, d2, seq.n(), seq.m()};
}

inline DegreeBounds bounds_of(const DirectedDegreeBiSequence& seq) {
    const auto [c1, c2] = detail::min_max(seq.out_degrees, "out");
    const auto [d1, d2] = detail::min_max(seq.in_degrees, "in");
    return {c1, c2, d1, d2, seq.n(), seq.n()};
}

inline DegreeBounds bounds_of(const DegreeSequence& seq) {
    return std::visit([](const auto& s) { return bounds_of(s); }, seq);
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<int> parse_int_list(std::string_view text, std::string_view context) {
    std::vector<int> values;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        const std::string_view token = text.substr(i, j - i);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw parse_error("malformed integer '" + std::string(token) + "' in " + std::string(context));
        values.push_back(value);
        i = j;
    }
    return values;
}

/// Splits "key: payload". Returns nothing for lines without a colon.
inline std::optional<std::pair<std::string, std::string_view>> split_key(std::string_view line) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    std::string key(trim(line.substr(0, colon)));
    for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return std::pair{key, line.substr(colon + 1)};
}

inline bool looks_like_json(std::string_view text) {
    const auto t = trim(text);
    return !t.empty() && t.front() == '{';
}

inline std::vector<int> json_int_list(const nlohmann::json& doc, const char* key) {
    const auto& node = doc.at(key);
    if (!node.is_array()) throw parse_error(std::string("key '") + key + "' must be an array");
    std::vector<int> values;
    for (const auto& x : node) {
        if (!x.is_number_integer()) throw parse_error(std::string("non-integer entry in '") + key + "'");
        values.push_back(x.get<int>());
    }
    return values;
}

/// Reads the degree part of a structured document.
inline DegreeSequence sequence_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw parse_error("structured degree input must be an object");
    const bool bip = doc.contains("u_degrees") || doc.contains("v_degrees");
    const bool dir = doc.contains("out_degrees") || doc.contains("in_degrees");
    if (bip == dir)
        throw parse_error("expected exactly one of u_degrees/v_degrees or out_degrees/in_degrees");
    try {
        if (bip) {
            BipartiteDegreeSequence seq{json_int_list(doc, "u_degrees"), json_int_list(doc, "v_degrees")};
            seq.validate();
            return seq;
        }
        DirectedDegreeBiSequence seq{json_int_list(doc, "out_degrees"), json_int_list(doc, "in_degrees")};
        seq.validate();
        return seq;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("structured degree input: ") + e.what());
    }
}

/// Accumulates the degree header lines of a text file.
struct HeaderLines {
    std::optional<std::vector<int>> u, v, out, in;

    /// Returns true if the line was a degree line and has been consumed.
    bool accept(std::string_view line) {
        const auto kv = split_key(line);
        if (!kv) return false;
        const auto& [key, payload] = *kv;
        std::optional<std::vector<int>>* slot = nullptr;
        if (key == "u") slot = &u;
        else if (key == "v") slot = &v;
        else if (key == "out") slot = &out;
        else if (key == "in") slot = &in;
        else return false;
        if (slot->has_value()) throw parse_error("duplicate '" + key + ":' line");
        *slot = parse_int_list(payload, key + ": line");
        return true;
    }

    DegreeSequence finish() const {
        const bool bip = u || v;
        const bool dir = out || in;
        if (bip && dir) throw parse_error("mixed bipartite (U:/V:) and directed (out:/in:) lines");
        if (bip) {
            if (!u || !v) throw parse_error("bipartite input needs both 'U:' and 'V:' lines");
            BipartiteDegreeSequence seq{*u, *v};
            seq.validate();
            return seq;
        }
        if (dir) {
            if (!out || !in) throw parse_error("directed input needs both 'out:' and 'in:' lines");
            DirectedDegreeBiSequence seq{*out, *in};
            seq.validate();
            return seq;
        }
        throw parse_error("no degree lines found");
    }
};

inline std::string strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return std::string(trim(line.substr(0, hash)));
}

}  // namespace detail

/// Parses a degree file: text lines `U: ...`/`V: ...` or `out: ...`/`in: ...`
/// (`#` starts a comment), or a JSON object with `u_degrees`/`v_degrees` or
/// `out_degrees`/`in_degrees`. Throws `parse_error` on malformed input or
/// violated invariants.
inline DegreeSequence parse_sequence(std::string_view text) {
    if (detail::looks_like_json(text)) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("invalid JSON: ") + e.what());
        }
        for (const auto& [key, value] : doc.items()) {
            if (key != "u_degrees" && key != "v_degrees" && key != "out_degrees" && key != "in_degrees")
                throw parse_error("unexpected key '" + key + "' in degree document");
        }
        return detail::sequence_from_json(doc);
    }
    detail::HeaderLines header;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = detail::strip_comment(raw);
        if (line.empty()) continue;
        if (!header.accept(line))
            throw parse_error("line " + std::to_string(line_no) + ": expected 'U:', 'V:', 'out:' or 'in:'");
    }
    return header.finish();
}

inline DegreeSequence parse_sequence(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_sequence(std::string_view(text));
}

inline std::string format_degrees(const BipartiteDegreeSequence& seq) {
    std::string s = "U:";
    for (int d : seq.u_degrees) s += " " + std::to_string(d);
    s += "\nV:";
    for (int d : seq.v_degrees) s += " " + std::to_string(d);
    return s;
}

inline std::string format_degrees(const DirectedDegreeBiSequence& seq) {
    std::string s = "out:";
    for (int d : seq.out_degrees) s += " " + std::to_string(d);
    s += "\nin:";
    for (int d : seq.in_degrees) s += " " + std::to_string(d);
    return s;
}

}  // namespace swapmc
