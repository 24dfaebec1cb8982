#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "combdyn/io.hpp"
#include "combdyn/markov.hpp"
#include "combdyn/orders.hpp"
#include "combdyn/pwl.hpp"
#include "combdyn/trees.hpp"
#include "combdyn/walks.hpp"

namespace combdyn {

// Outcome of one verification sweep.  On failure `counterexample` holds the
// offending instance as JSON.
struct VerifyResult {
    bool pass = true;
    long checked = 0;
    Json counterexample;

    void fail(Json ce) {
        if (pass) {
            pass = false;
            counterexample = std::move(ce);
        }
    }
};

// Fixed-point-free permutations have tr(OM) = -1, and OM of any identity
// power is the identity matrix.  Exhaustive through n_max (capped at 6),
// then all 7-cycles plus `samples` seeded random derangements of 7.
inline VerifyResult verify_trace(int n_max, long samples = 10000, unsigned seed = 20240801) {
    VerifyResult res;
    auto check = [&](const Permutation& p) {
        ++res.checked;
        if (!p.fixed_points().empty()) return;
        if (om_of(p).trace() != -1)
            res.fail(Json{{"kind", "trace"}, {"perm", permutation_to_json(p)}});
        const Permutation identity_power = power(p, p.order());
        if (om_of(identity_power) != SignedMatrix::identity(p.n() - 1))
            res.fail(Json{{"kind", "identity-power"}, {"perm", permutation_to_json(p)}});
    };
    for (int n = 2; n <= std::min(n_max, 6); ++n) for_each_permutation(n, check);
    if (n_max >= 7) {
        for_each_cycle(7, check);
        std::mt19937_64 rng(seed);
        std::vector<int> img(7);
        for (long t = 0; t < samples; ++t) {
            std::iota(img.begin(), img.end(), 1);
            std::shuffle(img.begin(), img.end(), rng);
            bool fp = false;
            for (int i = 0; i < 7; ++i)
                if (img[static_cast<std::size_t>(i)] == i + 1) fp = true;
            if (fp) {
                --t;
                continue;
            }
            check(Permutation::from_image(img));
        }
    }
    return res;
}

// OM(theta)^k = OM(theta^k) for all n-cycles, n <= n_max, k <= k_max.
inline VerifyResult verify_power(int n_max, int k_max) {
    VerifyResult res;
    for (int n = 2; n <= n_max; ++n)
        for_each_cycle(n, [&](const Permutation& theta) {
            const SignedMatrix om = om_of(theta);
            SignedMatrix pw = SignedMatrix::identity(om.dim());
            for (int k = 1; k <= k_max; ++k) {
                pw = mat_mul(pw, om);
                ++res.checked;
                if (pw != om_of(power(theta, k)))
                    res.fail(Json{{"kind", "power"}, {"perm", permutation_to_json(theta)}, {"k", k}});
            }
        });
    return res;
}

// OM(alpha) OM(beta) = OM(alpha beta) over all permutation pairs, n <= n_max.
inline VerifyResult verify_product(int n_max) {
    VerifyResult res;
    for (int n = 2; n <= n_max; ++n) {
        std::vector<Permutation> perms;
        for_each_permutation(n, [&](const Permutation& p) { perms.push_back(p); });
        for (const Permutation& a : perms)
            for (const Permutation& b : perms) {
                ++res.checked;
                if (mat_mul(om_of(a), om_of(b)) != om_of(compose(a, b)))
                    res.fail(Json{{"kind", "product"},
                                  {"alpha", permutation_to_json(a)},
                                  {"beta", permutation_to_json(b)}});
            }
    }
    return res;
}

// Sharkovsky soundness against the exact PL oracle: every period the order
// forces below n is realized by the connect-the-dots map of every n-cycle.
inline VerifyResult verify_forcing(int n_max, long K, unsigned long long cap = Budget::kDefaultCap) {
    VerifyResult res;
    for (int n = 2; n <= n_max; ++n)
        for_each_cycle(n, [&](const Permutation& theta) {
            Budget budget(cap, "pwl piece cap");
            const LeastPeriodSet lps = least_period_set(theta, K, budget);
            for (long m : shark_forced(n, K)) {
                ++res.checked;
                if (!lps.periods.count(m))
                    res.fail(Json{{"kind", "forcing"},
                                  {"perm", permutation_to_json(theta)},
                                  {"missing_period", m}});
            }
        });
    return res;
}

// Seeded random tree via a Pruefer sequence (uniform over labeled trees).
inline Tree random_tree(int v, std::mt19937_64& rng) {
    if (v == 2) return Tree(2, {{1, 2}});
    std::uniform_int_distribution<int> pick(1, v);
    std::vector<int> pruefer(static_cast<std::size_t>(v - 2));
    for (int& x : pruefer) x = pick(rng);
    std::vector<int> degree(static_cast<std::size_t>(v) + 1, 1);
    for (int x : pruefer) ++degree[static_cast<std::size_t>(x)];
    std::vector<std::pair<int, int>> edges;
    std::set<int> leaves;
    for (int i = 1; i <= v; ++i)
        if (degree[static_cast<std::size_t>(i)] == 1) leaves.insert(i);
    for (int x : pruefer) {
        const int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(leaf, x);
        if (--degree[static_cast<std::size_t>(x)] == 1) leaves.insert(x);
    }
    const int a = *leaves.begin(), b = *std::next(leaves.begin());
    edges.emplace_back(a, b);
    return Tree(v, std::move(edges));
}

inline Permutation random_fixed_point_free(int n, std::mt19937_64& rng) {
    std::vector<int> img(static_cast<std::size_t>(n));
    while (true) {
        std::iota(img.begin(), img.end(), 1);
        std::shuffle(img.begin(), img.end(), rng);
        bool fp = false;
        for (int i = 0; i < n; ++i)
            if (img[static_cast<std::size_t>(i)] == i + 1) fp = true;
        if (!fp) return Permutation::from_image(img);
    }
}

// Random trees with fixed-point-free vertex permutations: tr(OM) = -1 and
// the dot certificate sums to v.
inline VerifyResult verify_tree_trace(long count = 200, int v_min = 3, int v_max = 9,
                                      unsigned seed = 20240801) {
    VerifyResult res;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> vpick(v_min, v_max);
    for (long t = 0; t < count; ++t) {
        const int v = vpick(rng);
        const TreeVertexMap tvm(random_tree(v, rng), random_fixed_point_free(v, rng));
        const TraceCertificate cert = tree_trace_check(tvm);
        ++res.checked;
        if (cert.trace != -1 || cert.dot_total != v)
            res.fail(Json{{"kind", "tree-trace"},
                          {"v", v},
                          {"perm", permutation_to_json(tvm.perm)},
                          {"trace", int_to_json(cert.trace)},
                          {"dot_total", int_to_json(cert.dot_total)}});
    }
    return res;
}

// tr(M^k) counts closed walks (with starting vertex) and the Moebius sum
// counts non-repetitive rotation classes; both against direct enumeration.
inline VerifyResult verify_walk_counts(int n_max, int k_max,
                                       unsigned long long cap = Budget::kDefaultCap) {
    VerifyResult res;
    for (int n = 2; n <= n_max; ++n)
        for_each_cycle(n, [&](const Permutation& theta) {
            const MarkovGraph g = markov_graph(theta);
            const SignedMatrix m = markov_matrix(theta);
            for (int k = 1; k <= k_max; ++k) {
                Budget budget(cap, "walk enumeration cap");
                long total = 0;
                for (int base = 1; base <= g.vertex_count; ++base)
                    total += static_cast<long>(enumerate_closed(g, base, k, budget).size());
                ++res.checked;
                if (count_closed(m, k) != total)
                    res.fail(Json{{"kind", "walk-count"},
                                  {"perm", permutation_to_json(theta)},
                                  {"k", k},
                                  {"enumerated", total}});
                const Int classes = static_cast<long>(nonrepetitive_classes(g, k, budget).size());
                ++res.checked;
                if (count_nonrepetitive_closed(m, k) != classes)
                    res.fail(Json{{"kind", "nonrepetitive-count"},
                                  {"perm", permutation_to_json(theta)},
                                  {"k", k}});
            }
        });
    return res;
}

}  // namespace combdyn
