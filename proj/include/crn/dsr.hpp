#pragma once

#include <functional>
#include <string>

#include "crn/network.hpp"

namespace crn {

// Bipartite digraph on species vertices 0..n-1 and reaction vertices
// n..n+m-1. Arc signs are recorded for diagnostics; connectivity checks
// ignore them.
struct DsrArc {
    std::size_t from = 0, to = 0;
    int sign = 0;

    bool operator==(const DsrArc&) const = default;
};

struct DsrGraph {
    std::size_t species_vertices = 0;
    std::size_t reaction_vertices = 0;
    std::vector<DsrArc> arcs;

    std::size_t vertex_count() const { return species_vertices + reaction_vertices; }
    std::size_t species_vertex(std::size_t i) const { return i; }
    std::size_t reaction_vertex(std::size_t j) const { return species_vertices + j; }

    bool has_arc(std::size_t from, std::size_t to) const {
        return std::any_of(arcs.begin(), arcs.end(),
                           [&](const DsrArc& a) { return a.from == from && a.to == to; });
    }
};

// The interior-point graph: R_j -> S_i whenever G_ij != 0, and S_i -> R_j
// whenever v_j depends on x_i at interior points, i.e. for every participant
// of a reversible reaction and exactly the left-side species of an
// irreversible one. Constant on the interior, so built once per network.
inline DsrGraph build_dsr(const Network& net, const Mat& gamma) {
    if (gamma.rows() != net.n() || gamma.cols() != net.m())
        throw std::invalid_argument("build_dsr: matrix does not match network");
    DsrGraph g;
    g.species_vertices = net.n();
    g.reaction_vertices = net.m();
    for (std::size_t j = 0; j < net.m(); ++j) {
        for (std::size_t i = 0; i < net.n(); ++i) {
            int s = rat_sign(gamma(i, j));
            if (s != 0) g.arcs.push_back({g.reaction_vertex(j), g.species_vertex(i), s});
        }
        const Reaction& r = net.reactions[j];
        for (const auto& [i, k] : r.left)
            g.arcs.push_back({g.species_vertex(i), g.reaction_vertex(j), rat_sign(gamma(i, j))});
        if (r.reversible)
            for (const auto& [i, k] : r.right)
                g.arcs.push_back({g.species_vertex(i), g.reaction_vertex(j), rat_sign(gamma(i, j))});
    }
    return g;
}

// Tarjan; linear in vertices + arcs.
inline std::size_t scc_count(const DsrGraph& g) {
    const std::size_t nv = g.vertex_count();
    std::vector<std::vector<std::size_t>> adj(nv);
    for (const auto& a : g.arcs) adj[a.from].push_back(a.to);

    std::vector<std::size_t> index(nv, SIZE_MAX), low(nv, 0);
    std::vector<bool> on_stack(nv, false);
    std::vector<std::size_t> stack;
    std::size_t next = 0, comps = 0;

    std::function<void(std::size_t)> strongconnect = [&](std::size_t v) {
        index[v] = low[v] = next++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w : adj[v]) {
            if (index[w] == SIZE_MAX) {
                strongconnect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            ++comps;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
            } while (w != v);
        }
    };
    for (std::size_t v = 0; v < nv; ++v)
        if (index[v] == SIZE_MAX) strongconnect(v);
    return comps;
}

inline bool is_strongly_connected(const DsrGraph& g) {
    return g.vertex_count() <= 1 || scc_count(g) == 1;
}

// DOT export; negative arcs dashed, matching the usual drawing convention.
inline std::string to_dot(const DsrGraph& g, const Network& net) {
    std::string out = "digraph dsr {\n";
    for (std::size_t i = 0; i < g.species_vertices; ++i)
        out += "  v" + std::to_string(i) + " [label=\"S:" + net.name_of(i) + "\"];\n";
    for (std::size_t j = 0; j < g.reaction_vertices; ++j)
        out += "  v" + std::to_string(g.reaction_vertex(j)) + " [label=\"R:" + std::to_string(j) +
               "\" shape=box];\n";
    for (const auto& a : g.arcs)
        out += "  v" + std::to_string(a.from) + " -> v" + std::to_string(a.to) +
               (a.sign < 0 ? " [style=dashed];\n" : ";\n");
    out += "}\n";
    return out;
}

}  // namespace crn
