#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "combdyn/errors.hpp"
#include "combdyn/matrix.hpp"
#include "combdyn/permutation.hpp"

namespace combdyn {

// One signed directed edge E_src -> E_tgt of a Markov graph.  Vertices are
// 1-indexed edge symbols E_1..E_d; sign is +1 (orientation preserving) or
// -1 (reversing).
struct SignedEdge {
    int src;
    int tgt;
    int sign;

    bool operator==(const SignedEdge& o) const {
        return src == o.src && tgt == o.tgt && sign == o.sign;
    }
};

// Directed multigraph with signed edges.  For graphs coming from interval
// permutations or tree vertex maps there is at most one edge per ordered
// (src, tgt) pair; graph vertex maps may produce parallel edges.
struct MarkovGraph {
    int vertex_count = 0;
    std::vector<SignedEdge> edges;

    // Deterministic edge order: by source, then target, '+' before '-'.
    void normalize() {
        std::sort(edges.begin(), edges.end(), [](const SignedEdge& a, const SignedEdge& b) {
            if (a.src != b.src) return a.src < b.src;
            if (a.tgt != b.tgt) return a.tgt < b.tgt;
            return a.sign > b.sign;
        });
    }

    // out[src-1] lists (tgt, sign) in the normalized order.
    std::vector<std::vector<SignedEdge>> out_adjacency() const {
        std::vector<std::vector<SignedEdge>> adj(static_cast<std::size_t>(vertex_count));
        for (const SignedEdge& e : edges) adj[static_cast<std::size_t>(e.src - 1)].push_back(e);
        return adj;
    }
};

// Markov graph of the connect-the-dots map of theta.  Vertex E_i stands for
// the interval [i, i+1].  The linear piece over E_i maps it onto the hull of
// {theta(i), theta(i+1)}, so E_i -> E_j is drawn whenever [j, j+1] lies in
// that hull, with sign +1 if theta(i) < theta(i+1) and -1 otherwise (the
// standard left-to-right orientation on every E_j).
inline MarkovGraph markov_graph(const Permutation& theta) {
    const int n = theta.n();
    if (n < 2) throw domain_error("markov_graph needs a permutation of n >= 2 points");
    MarkovGraph g;
    g.vertex_count = n - 1;
    for (int i = 1; i <= n - 1; ++i) {
        const int a = theta(i), b = theta(i + 1);
        const int lo = std::min(a, b), hi = std::max(a, b);
        const int sign = a < b ? +1 : -1;
        for (int j = lo; j + 1 <= hi; ++j) g.edges.push_back({i, j, sign});
    }
    g.normalize();
    return g;
}

// (M, OM) of an arbitrary signed graph: M counts edges E_j -> E_i at entry
// (i, j), OM counts them with sign.
inline std::pair<SignedMatrix, SignedMatrix> matrices_of_graph(const MarkovGraph& g) {
    SignedMatrix m(g.vertex_count), om(g.vertex_count);
    for (const SignedEdge& e : g.edges) {
        m.at(e.tgt - 1, e.src - 1) += 1;
        om.at(e.tgt - 1, e.src - 1) += e.sign;
    }
    return {m, om};
}

inline SignedMatrix markov_matrix(const Permutation& theta) {
    return matrices_of_graph(markov_graph(theta)).first;
}

inline SignedMatrix om_of(const Permutation& theta) {
    return matrices_of_graph(markov_graph(theta)).second;
}

// DOT rendering; edge labels are the signs.
inline std::string to_dot(const MarkovGraph& g, const std::string& name = "markov") {
    MarkovGraph sorted = g;
    sorted.normalize();
    std::string out = "digraph " + name + " {\n";
    for (int v = 1; v <= g.vertex_count; ++v) out += "  E" + std::to_string(v) + ";\n";
    for (const SignedEdge& e : sorted.edges)
        out += "  E" + std::to_string(e.src) + " -> E" + std::to_string(e.tgt) + " [label=\"" +
               (e.sign > 0 ? "+" : "-") + "\"];\n";
    out += "}\n";
    return out;
}

}  // namespace combdyn
