#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "arbo/graph.hpp"

namespace arbo {

// Edge-list document: header "n m r", then m lines "u v". Lines starting with
// '#' and blank lines are skipped. Edge k is the k-th edge line.
inline rooted_digraph parse_graph(std::istream& in)
{
    std::string line;
    int lineno = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            ++lineno;
            std::size_t p = out.find_first_not_of(" \t\r");
            if (p == std::string::npos || out[p] == '#') continue;
            return true;
        }
        return false;
    };
    auto fail = [&](const std::string& what) {
        throw parse_error("line " + std::to_string(lineno) + ": " + what);
    };

    if (!next_line(line)) throw parse_error("missing header");
    long long n = 0, m = 0, r = 0;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m >> r) || (hs >> extra)) fail("header must be \"n m r\"");
    }
    if (n < 1 || n > 100000000) fail("node count out of range");
    if (m < 0 || m > 1000000000) fail("edge count out of range");
    if (r < 1 || r > n) fail("root out of range");

    rooted_digraph g(static_cast<node_id>(n), static_cast<node_id>(r));
    for (long long k = 1; k <= m; ++k) {
        if (!next_line(line)) fail("expected " + std::to_string(m) + " edges, got " + std::to_string(k - 1));
        std::istringstream ls(line);
        long long u = 0, v = 0;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra)) fail("malformed edge line");
        if (u < 1 || u > n || v < 1 || v > n) fail("endpoint out of range");
        if (u == v) fail("self-loop");
        g.add_edge(static_cast<node_id>(u), static_cast<node_id>(v), static_cast<payload_id>(k));
    }
    if (next_line(line)) fail("trailing content after edge list");
    return g;
}

inline rooted_digraph parse_graph(const std::string& text)
{
    std::istringstream in(text);
    return parse_graph(in);
}

// Writes the linked edges in slot order; only meaningful for parsed graphs.
inline void write_graph(std::ostream& out, const rooted_digraph& g)
{
    std::vector<edge_id> es;
    for (edge_id e = 1; e <= g.slot_bound(); ++e)
        if (g.is_linked(e)) es.push_back(e);
    out << g.node_count() << ' ' << es.size() << ' ' << g.root() << '\n';
    for (edge_id e : es) out << g.tail(e) << ' ' << g.head(e) << '\n';
}

inline std::string to_text(const rooted_digraph& g)
{
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

// Edge list builder used by generators and tests.
struct edge_list {
    node_id n = 1;
    node_id root = 1;
    std::vector<std::pair<node_id, node_id>> edges;

    rooted_digraph build() const
    {
        rooted_digraph g(n, root);
        payload_id k = 0;
        for (auto [u, v] : edges) g.add_edge(u, v, ++k);
        return g;
    }
    std::string text() const
    {
        std::ostringstream out;
        out << n << ' ' << edges.size() << ' ' << root << '\n';
        for (auto [u, v] : edges) out << u << ' ' << v << '\n';
        return out.str();
    }
};

} // namespace arbo
