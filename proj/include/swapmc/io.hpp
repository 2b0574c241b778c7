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

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "degree_model.hpp"
#include "errors.hpp"
#include "realization.hpp"

namespace swapmc {

/// A degree sequence together with the bipartite form the machinery works
/// on: a digraph becomes U = out-side, V = in-side with the diagonal
/// forbidden.
struct Instance {
    DegreeSequence degrees;
    BipartiteDegreeSequence bipartite;
    ForbiddenMatching forbidden;

    bool directed() const noexcept { return std::holds_alternative<DirectedDegreeBiSequence>(degrees); }
};

inline Instance instance_of(const DegreeSequence& seq) {
    if (const auto* d = std::get_if<DirectedDegreeBiSequence>(&seq)) {
        d->validate();
        return {seq, BipartiteDegreeSequence{d->out_degrees, d->in_degrees}, ForbiddenMatching::diagonal(d->n())};
    }
    const auto& b = std::get<BipartiteDegreeSequence>(seq);
    b.validate();
    return {seq, b, ForbiddenMatching(b.n(), b.m())};
}

inline Instance instance_of(const DegreeSequence& seq, ForbiddenMatching forbidden) {
    Instance in = instance_of(seq);
    if (in.directed()) {
        if (!(forbidden == in.forbidden)) throw parse_error("directed instances use the loop positions as forbidden set");
        return in;
    }
    if (forbidden.n() != in.bipartite.n() || forbidden.m() != in.bipartite.m())
        throw parse_error("forbidden set does not match the degree sequence");
    in.forbidden = std::move(forbidden);
    return in;
}

enum class OutputFormat { edges, matrix, json };

inline OutputFormat parse_format(std::string_view s) {
    if (s == "edges") return OutputFormat::edges;
    if (s == "matrix") return OutputFormat::matrix;
    if (s == "json") return OutputFormat::json;
    throw parse_error("unknown format '" + std::string(s) + "' (expected edges, matrix or json)");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

inline int parse_vertex(std::string_view token, int limit, const std::string& where) {
    const auto values = parse_int_list(token, where);
    if (values.size() != 1) throw parse_error(where + ": expected one vertex, got '" + std::string(token) + "'");
    const int x = values.front();
    if (x < 1 || x > limit) throw parse_error(where + ": vertex " + std::to_string(x) + " out of range 1.." + std::to_string(limit));
    return x - 1;
}

/// "u v" or "x -> y", 1-based; returns 0-based (row, column).
inline std::pair<int, int> parse_edge_line(std::string_view line, const Instance& in, const std::string& where) {
    const int n = in.bipartite.n(), m = in.bipartite.m();
    if (const auto arrow = line.find("->"); arrow != std::string_view::npos) {
        if (!in.directed()) throw parse_error(where + ": arc syntax in a bipartite file");
        return {parse_vertex(trim(line.substr(0, arrow)), n, where), parse_vertex(trim(line.substr(arrow + 2)), m, where)};
    }
    if (in.directed()) throw parse_error(where + ": expected 'x -> y'");
    const auto values = parse_int_list(line, where);
    if (values.size() != 2) throw parse_error(where + ": expected 'u v'");
    if (values[0] < 1 || values[0] > n || values[1] < 1 || values[1] > m) throw parse_error(where + ": vertex out of range");
    return {values[0] - 1, values[1] - 1};
}

/// "F: u v, u v, ..." with 1-based pairs.
inline std::vector<std::pair<int, int>> parse_forbidden_line(std::string_view payload) {
    std::vector<std::pair<int, int>> pairs;
    std::string text(payload);
    std::istringstream parts(text);
    std::string item;
    while (std::getline(parts, item, ',')) {
        if (trim(item).empty()) continue;
        const auto v = parse_int_list(item, "F: line");
        if (v.size() != 2) throw parse_error("F: line: expected pairs 'u v' separated by commas");
        pairs.emplace_back(v[0] - 1, v[1] - 1);
    }
    return pairs;
}

inline ForbiddenMatching forbidden_from_pairs(const BipartiteDegreeSequence& seq,
                                              const std::vector<std::pair<int, int>>& pairs) {
    try {
        return ForbiddenMatching::from_pairs(seq.n(), seq.m(), pairs);
    } catch (const precondition_error& e) {
        throw parse_error(e.what());
    }
}

struct ParsedFile {
    Instance instance;
    std::vector<std::pair<int, int>> edges;
    bool has_edges = false;
};

inline ParsedFile parse_json_file(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw parse_error("expected a JSON object");
    nlohmann::json degrees = nlohmann::json::object();
    ParsedFile out;
    std::vector<std::pair<int, int>> forbidden;
    bool has_forbidden = false;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "u_degrees" || key == "v_degrees" || key == "out_degrees" || key == "in_degrees") {
                degrees[key] = value;
            } else if (key == "edges" || key == "arcs") {
                out.has_edges = true;
                for (const auto& e : value) out.edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
            } else if (key == "forbidden") {
                has_forbidden = true;
                for (const auto& e : value) forbidden.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
            } else if (key != "kind") {
                throw parse_error("unexpected key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed JSON document: ") + e.what());
    }
    const DegreeSequence seq = sequence_from_json(degrees);
    out.instance = instance_of(seq);
    if (has_forbidden) {
        if (out.instance.directed()) throw parse_error("'forbidden' is only allowed for bipartite sequences");
        out.instance.forbidden = forbidden_from_pairs(out.instance.bipartite, forbidden);
    }
    return out;
}

inline ParsedFile parse_file(std::string_view text) {
    if (looks_like_json(text)) return parse_json_file(text);
    HeaderLines header;
    std::optional<std::vector<std::pair<int, int>>> forbidden;
    std::vector<std::pair<int, std::string>> body;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = strip_comment(raw);
        if (line.empty() || header.accept(line)) continue;
        if (auto kv = split_key(line); kv && kv->first == "f") {
            if (forbidden) throw parse_error("duplicate 'F:' line");
            forbidden = parse_forbidden_line(kv->second);
            continue;
        }
        body.emplace_back(line_no, line);
    }
    ParsedFile out;
    out.instance = instance_of(header.finish());
    if (forbidden) {
        if (out.instance.directed()) throw parse_error("'F:' is only allowed for bipartite sequences");
        out.instance.forbidden = forbidden_from_pairs(out.instance.bipartite, *forbidden);
    }
    for (const auto& [no, line] : body)
        out.edges.push_back(parse_edge_line(line, out.instance, "line " + std::to_string(no)));
    out.has_edges = !body.empty();
    return out;
}

}  // namespace detail

/// Parses a degree file, optionally carrying a forbidden matching (`F:`
/// line or JSON `forbidden`, 1-based pairs). Edge lines are rejected.
inline Instance parse_instance(std::string_view text) {
    auto parsed = detail::parse_file(text);
    if (parsed.has_edges) throw parse_error("degree file contains edge lines");
    return parsed.instance;
}

struct RealizationFile {
    Instance instance;
    BipartiteRealization realization;
};

/// Parses a realization file: the degree header, then one edge per line
/// ("u v", or "x -> y" for digraphs), 1-based; or the JSON document written
/// by `format_realization`. The graph is validated against the header.
inline RealizationFile parse_realization(std::string_view text) {
    auto parsed = detail::parse_file(text);
    SpacePtr space = make_space(parsed.instance.bipartite, parsed.instance.forbidden);
    BitMatrix bits(space->n(), space->m());
    for (const auto& [u, v] : parsed.edges) {
        if (u < 0 || u >= space->n() || v < 0 || v >= space->m()) throw parse_error("edge endpoint out of range");
        if (bits.test(u, v)) throw parse_error("duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
        bits.set(u, v);
    }
    try {
        return {parsed.instance, BipartiteRealization(space, std::move(bits))};
    } catch (const precondition_error& e) {
        throw parse_error(std::string("realization does not match its header: ") + e.what());
    }
}

inline std::string format_degrees(const Instance& in) {
    std::string s = std::visit([](const auto& seq) { return format_degrees(seq); }, in.degrees);
    if (!in.directed() && !in.forbidden.empty()) {
        s += "\nF:";
        bool first = true;
        for (const auto& [u, v] : in.forbidden.pairs()) {
            s += (first ? " " : ", ") + std::to_string(u + 1) + " " + std::to_string(v + 1);
            first = false;
        }
    }
    return s;
}

inline nlohmann::ordered_json realization_json(const Instance& in, const BipartiteRealization& r) {
    nlohmann::ordered_json doc;
    auto pairs = nlohmann::ordered_json::array();
    for (const auto& [u, v] : r.edges()) pairs.push_back({u + 1, v + 1});
    if (in.directed()) {
        const auto& d = std::get<DirectedDegreeBiSequence>(in.degrees);
        doc["kind"] = "directed";
        doc["out_degrees"] = d.out_degrees;
        doc["in_degrees"] = d.in_degrees;
        doc["arcs"] = std::move(pairs);
    } else {
        doc["kind"] = "bipartite";
        doc["u_degrees"] = in.bipartite.u_degrees;
        doc["v_degrees"] = in.bipartite.v_degrees;
        auto f = nlohmann::ordered_json::array();
        for (const auto& [u, v] : in.forbidden.pairs()) f.push_back({u + 1, v + 1});
        if (!f.empty()) doc["forbidden"] = std::move(f);
        doc["edges"] = std::move(pairs);
    }
    return doc;
}

/// The body of one realization: edge lines ("u v" or "x -> y"), matrix rows
/// (0/1 separated by spaces), or a single-line JSON document.
inline std::string format_realization(const Instance& in, const BipartiteRealization& r, OutputFormat fmt) {
    std::string s;
    switch (fmt) {
    case OutputFormat::edges:
        for (const auto& [u, v] : r.edges())
            s += std::to_string(u + 1) + (in.directed() ? " -> " : " ") + std::to_string(v + 1) + "\n";
        break;
    case OutputFormat::matrix:
        for (int u = 0; u < r.n(); ++u) {
            for (int v = 0; v < r.m(); ++v) {
                if (v) s += ' ';
                s += r.has_edge(u, v) ? '1' : '0';
            }
            s += '\n';
        }
        break;
    case OutputFormat::json:
        s = realization_json(in, r).dump() + "\n";
        break;
    }
    return s;
}

/// A complete realization file (header plus edges) that `parse_realization`
/// reads back.
inline std::string realization_file(const Instance& in, const BipartiteRealization& r) {
    return format_degrees(in) + "\n" + format_realization(in, r, OutputFormat::edges);
}

}  // namespace swapmc
