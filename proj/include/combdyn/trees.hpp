#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "combdyn/errors.hpp"
#include "combdyn/markov.hpp"
#include "combdyn/matrix.hpp"
#include "combdyn/orders.hpp"
#include "combdyn/permutation.hpp"
#include "combdyn/walks.hpp"

namespace combdyn {

// A combinatorial tree on vertices 1..v.  Edges keep their input indices
// E_1..E_{v-1}; each is oriented from its smaller to its larger vertex
// label.  (Any fixed orientation choice only conjugates OM by a diagonal
// sign matrix, so traces are unaffected; the tests assert this.)
class Tree {
public:
    Tree(int v, std::vector<std::pair<int, int>> edge_list) : v_(v) {
        if (v < 2) throw domain_error("tree needs at least 2 vertices");
        if (static_cast<int>(edge_list.size()) != v - 1)
            throw domain_error("tree on v vertices needs exactly v-1 edges");
        for (auto& [a, b] : edge_list) {
            if (a < 1 || a > v || b < 1 || b > v || a == b)
                throw domain_error("bad tree edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
            if (a > b) std::swap(a, b);
        }
        edges_ = std::move(edge_list);
        adj_.assign(static_cast<std::size_t>(v) + 1, {});
        for (int e = 0; e < v - 1; ++e) {
            const auto [a, b] = edges_[static_cast<std::size_t>(e)];
            adj_[static_cast<std::size_t>(a)].push_back({b, e + 1});
            adj_[static_cast<std::size_t>(b)].push_back({a, -(e + 1)});
        }
        // Connectivity (with v-1 edges this also rules out cycles).
        std::vector<char> seen(static_cast<std::size_t>(v) + 1, 0);
        std::queue<int> q;
        q.push(1);
        seen[1] = 1;
        int count = 0;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            ++count;
            for (const auto& [w, id] : adj_[static_cast<std::size_t>(u)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    q.push(w);
                }
        }
        if (count != v) throw domain_error("tree edges do not connect all vertices");
    }

    int vertex_count() const { return v_; }
    int edge_count() const { return v_ - 1; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int tail(int e) const { return edges_[static_cast<std::size_t>(e - 1)].first; }
    int head(int e) const { return edges_[static_cast<std::size_t>(e - 1)].second; }

    // The unique reduced path from u to w as signed edge indices: +e means
    // E_e traversed tail-to-head, -e the reverse.  Empty when u == w.
    std::vector<int> reduced_path(int u, int w) const {
        if (u < 1 || u > v_ || w < 1 || w > v_) throw domain_error("reduced_path: bad vertex");
        if (u == w) return {};
        std::vector<int> parent_edge(static_cast<std::size_t>(v_) + 1, 0);
        std::vector<int> parent(static_cast<std::size_t>(v_) + 1, 0);
        std::vector<char> seen(static_cast<std::size_t>(v_) + 1, 0);
        std::queue<int> q;
        q.push(u);
        seen[static_cast<std::size_t>(u)] = 1;
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            if (x == w) break;
            for (const auto& [y, id] : adj_[static_cast<std::size_t>(x)])
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    parent[static_cast<std::size_t>(y)] = x;
                    parent_edge[static_cast<std::size_t>(y)] = id;
                    q.push(y);
                }
        }
        std::vector<int> path;
        for (int x = w; x != u; x = parent[static_cast<std::size_t>(x)])
            path.push_back(parent_edge[static_cast<std::size_t>(x)]);
        std::reverse(path.begin(), path.end());
        return path;
    }

private:
    int v_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;  // vertex -> (neighbor, signed edge id)
};

// A tree together with a permutation of its vertices.  Edge images are the
// unique reduced paths between image endpoints, so no extra continuity data
// is needed.
struct TreeVertexMap {
    Tree tree;
    Permutation perm;

    TreeVertexMap(Tree t, Permutation p) : tree(std::move(t)), perm(std::move(p)) {
        if (perm.n() != tree.vertex_count())
            throw domain_error("vertex map permutation size differs from vertex count");
    }

    std::vector<int> edge_route(int e) const {
        return tree.reduced_path(perm(tree.tail(e)), perm(tree.head(e)));
    }
};

// OM entry (i, j) is the signed occurrence of E_i in the route of E_j (at
// most one per edge, since reduced tree paths are simple); M is |OM|.
inline std::pair<SignedMatrix, SignedMatrix> tree_matrices(const TreeVertexMap& tvm) {
    const int e = tvm.tree.edge_count();
    SignedMatrix m(e), om(e);
    for (int j = 1; j <= e; ++j)
        for (int step : tvm.edge_route(j)) {
            const int i = step > 0 ? step : -step;
            m.at(i - 1, j - 1) += 1;
            om.at(i - 1, j - 1) += step > 0 ? +1 : -1;
        }
    return {m, om};
}

inline MarkovGraph tree_markov_graph(const TreeVertexMap& tvm) {
    const SignedMatrix om = tree_matrices(tvm).second;
    MarkovGraph g;
    g.vertex_count = om.dim();
    for (int j = 1; j <= om.dim(); ++j)
        for (int i = 1; i <= om.dim(); ++i) {
            const Int& s = om.at(i - 1, j - 1);
            if (s != 0) g.edges.push_back({j, i, s > 0 ? +1 : -1});
        }
    g.normalize();
    return g;
}

// Trace of OM plus the dot certificate behind it: edge E_i gets 1 - OM_ii
// dots, and with no fixed vertex every vertex drops exactly one dot, so the
// total is v and the trace is e - v = -1.
struct TraceCertificate {
    Int trace;
    std::vector<Int> dots;
    Int dot_total;
};

inline TraceCertificate tree_trace_check(const TreeVertexMap& tvm) {
    const SignedMatrix om = tree_matrices(tvm).second;
    TraceCertificate cert{om.trace(), {}, 0};
    for (int i = 0; i < om.dim(); ++i) {
        cert.dots.push_back(1 - om.at(i, i));
        cert.dot_total += cert.dots.back();
    }
    return cert;
}

// Routes of the k-th iterate map, built by substituting the one-step routes
// and cancelling backtracks (+e,-e or -e,+e pairs) until stable.
inline std::vector<std::vector<int>> iterate_routes(const TreeVertexMap& tvm, int k) {
    if (k < 1) throw domain_error("iterate_routes needs k >= 1");
    const int e = tvm.tree.edge_count();
    std::vector<std::vector<int>> one, cur;
    for (int j = 1; j <= e; ++j) one.push_back(tvm.edge_route(j));
    cur = one;
    auto reduce = [](std::vector<int> seq) {
        std::vector<int> out;
        for (int s : seq) {
            if (!out.empty() && out.back() == -s)
                out.pop_back();
            else
                out.push_back(s);
        }
        return out;
    };
    for (int t = 1; t < k; ++t) {
        std::vector<std::vector<int>> next;
        for (int j = 0; j < e; ++j) {
            std::vector<int> seq;
            for (int s : cur[static_cast<std::size_t>(j)]) {
                const std::vector<int>& r = one[static_cast<std::size_t>(std::abs(s) - 1)];
                if (s > 0)
                    seq.insert(seq.end(), r.begin(), r.end());
                else
                    for (auto it = r.rbegin(); it != r.rend(); ++it) seq.push_back(-*it);
            }
            next.push_back(reduce(std::move(seq)));
        }
        cur = std::move(next);
    }
    return cur;
}

inline SignedMatrix om_of_routes(int edge_count, const std::vector<std::vector<int>>& routes) {
    SignedMatrix om(edge_count);
    for (int j = 0; j < edge_count; ++j)
        for (int s : routes[static_cast<std::size_t>(j)])
            om.at(std::abs(s) - 1, j) += s > 0 ? +1 : -1;
    return om;
}

// Negative non-repetitive closed walk of length m in the tree's oriented
// Markov graph, when the walk constructions reach m; otherwise exhaustive
// search under the budget, with absence reported as a value.
inline std::optional<Walk> tree_walk_witnesses(const TreeVertexMap& tvm, long m, Budget& budget) {
    const int v = tvm.tree.vertex_count();
    if (tvm.perm.cycle_type() != std::vector<int>{v})
        throw domain_error("tree_walk_witnesses needs the vertices to form one orbit");
    if (m < 1) throw domain_error("tree_walk_witnesses needs m >= 1");
    const MarkovGraph g = tree_markov_graph(tvm);
    const PeriodClass pc = two_adic(v);

    if (is_power_of_two(m) && m % v != 0) {
        // theta^m is fixed-point-free, so tr(OM^m) = -1 and a negative
        // closed walk of length m exists; negative walks of power-of-two
        // length cannot be repetitions.
        const std::optional<Walk> w = lemma2_walk_in_graph(g, m, budget);
        if (w) return w;
        throw invariant_error("power-of-two trace mechanism found no negative walk");
    }
    if (pc.s > 1 && two_adic(m).k >= pc.k && (m >> pc.k) > pc.s)
        return lemma3_walk_in_graph(g, pc.k, pc.s, m >> pc.k, budget);

    EnumerateOptions opts;
    opts.sign_filter = -1;
    opts.nonrepetitive_only = true;
    for (int base = 1; base <= g.vertex_count; ++base) {
        const std::vector<Walk> found = enumerate_closed(g, base, static_cast<int>(m), budget, opts);
        if (!found.empty()) return found.front();
    }
    return std::nullopt;
}

// A finite connected graph with explicitly oriented edges and, for each
// edge, an explicit route for its image: vertex images alone do not pin
// down edge images once the graph has cycles.
struct GraphVertexMap {
    int v = 0;
    std::vector<std::pair<int, int>> edges;  // (tail, head) as given
    Permutation perm;
    std::vector<std::vector<int>> routes;  // signed edge indices per edge

    GraphVertexMap(int vertex_count, std::vector<std::pair<int, int>> edge_list, Permutation p,
                   std::vector<std::vector<int>> route_list)
        : v(vertex_count), edges(std::move(edge_list)), perm(std::move(p)), routes(std::move(route_list)) {
        if (v < 1) throw domain_error("graph needs at least one vertex");
        if (perm.n() != v) throw domain_error("graph vertex map permutation size differs from vertex count");
        for (const auto& [a, b] : edges)
            if (a < 1 || a > v || b < 1 || b > v)
                throw domain_error("graph edge endpoint out of range");
        if (routes.size() != edges.size())
            throw domain_error("graph vertex map needs one route per edge");
        for (std::size_t j = 0; j < routes.size(); ++j) validate_route(static_cast<int>(j) + 1);
    }

    int tail(int e) const { return edges[static_cast<std::size_t>(e - 1)].first; }
    int head(int e) const { return edges[static_cast<std::size_t>(e - 1)].second; }

private:
    void validate_route(int j) const {
        const std::vector<int>& r = routes[static_cast<std::size_t>(j - 1)];
        int at = perm(tail(j));
        const int goal = perm(head(j));
        int prev = 0;
        for (int s : r) {
            const int e = std::abs(s);
            if (e < 1 || e > static_cast<int>(edges.size()))
                throw domain_error("route of E" + std::to_string(j) + " uses a bad edge index");
            if (prev != 0 && prev == -s)
                throw domain_error("route of E" + std::to_string(j) + " is not reduced");
            const int from = s > 0 ? tail(e) : head(e);
            const int to = s > 0 ? head(e) : tail(e);
            if (from != at)
                throw domain_error("route of E" + std::to_string(j) + " breaks at edge " +
                                   std::to_string(s));
            at = to;
            prev = s;
        }
        if (at != goal)
            throw domain_error("route of E" + std::to_string(j) +
                               " does not end at the image of its head");
    }
};

// OM entry (i, j): occurrences of +E_i minus occurrences of -E_i in the
// route of E_j; M counts unsigned occurrences (routes may repeat an edge).
inline std::pair<SignedMatrix, SignedMatrix> graph_matrices(const GraphVertexMap& gvm) {
    const int e = static_cast<int>(gvm.edges.size());
    SignedMatrix m(e), om(e);
    for (int j = 1; j <= e; ++j)
        for (int s : gvm.routes[static_cast<std::size_t>(j - 1)]) {
            const int i = std::abs(s);
            m.at(i - 1, j - 1) += 1;
            om.at(i - 1, j - 1) += s > 0 ? +1 : -1;
        }
    return {m, om};
}

}  // namespace combdyn
