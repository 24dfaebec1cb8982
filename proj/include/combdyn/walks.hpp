#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "combdyn/errors.hpp"
#include "combdyn/markov.hpp"
#include "combdyn/matrix.hpp"
#include "combdyn/orders.hpp"
#include "combdyn/permutation.hpp"

namespace combdyn {

// A walk of length k through a Markov graph: k+1 vertex symbols (closed iff
// first == last) and the product of the signs of its edges.
struct Walk {
    std::vector<int> vertices;
    int sign = +1;

    int length() const { return static_cast<int>(vertices.size()) - 1; }
    bool closed() const {
        return vertices.size() >= 2 && vertices.front() == vertices.back();
    }
    int base() const { return vertices.front(); }

    bool operator==(const Walk& o) const { return vertices == o.vertices && sign == o.sign; }
    bool operator<(const Walk& o) const {
        return vertices != o.vertices ? vertices < o.vertices : sign < o.sign;
    }

    std::string to_string() const {
        std::string s;
        for (int v : vertices) s += "E" + std::to_string(v);
        s += sign > 0 ? " (+)" : " (-)";
        return s;
    }
};

namespace detail {

// Sign of the (unique) edge src -> tgt, or nullopt if absent.  On parallel
// edges of opposite sign this prefers '+'; interval and tree graphs never
// have parallel edges.
inline std::optional<int> edge_sign(const MarkovGraph& g, int src, int tgt) {
    std::optional<int> best;
    for (const SignedEdge& e : g.edges)
        if (e.src == src && e.tgt == tgt && (!best || e.sign > *best)) best = e.sign;
    return best;
}

}  // namespace detail

// Checks that w's consecutive pairs are edges of g and that w.sign is the
// product of their signs.
inline void validate_walk(const MarkovGraph& g, const Walk& w) {
    if (w.vertices.size() < 2) throw contract_error("walk must have at least one step");
    int sign = +1;
    for (std::size_t t = 0; t + 1 < w.vertices.size(); ++t) {
        const int a = w.vertices[t], b = w.vertices[t + 1];
        if (a < 1 || a > g.vertex_count || b < 1 || b > g.vertex_count)
            throw contract_error("walk vertex out of range");
        const std::optional<int> s = detail::edge_sign(g, a, b);
        if (!s)
            throw contract_error("walk uses missing edge E" + std::to_string(a) + " -> E" +
                                 std::to_string(b));
        sign *= *s;
    }
    if (sign != w.sign) throw contract_error("walk sign does not match edge signs");
}

// Concatenation of closed walks with a common base.
inline Walk concat(const Walk& a, const Walk& b) {
    if (!a.closed() || !b.closed() || a.base() != b.base())
        throw contract_error("concat needs closed walks with a common base");
    Walk w = a;
    w.vertices.insert(w.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
    w.sign = a.sign * b.sign;
    return w;
}

// True iff the closed walk is a d-fold repetition (d >= 2) of a shorter
// closed walk.
inline bool is_repetitive(const Walk& w) {
    if (!w.closed()) throw contract_error("is_repetitive needs a closed walk");
    const int k = w.length();
    for (int len = 1; len < k; ++len) {
        if (k % len) continue;
        bool match = true;
        for (int t = 0; t < k && match; ++t)
            if (w.vertices[static_cast<std::size_t>(t)] !=
                w.vertices[static_cast<std::size_t>(t % len)])
                match = false;
        if (match) return true;
    }
    return false;
}

// Lexicographically least rotation of a closed walk; the canonical
// representative of its rotation class.
inline Walk canonical_rotation(const Walk& w) {
    if (!w.closed()) throw contract_error("canonical_rotation needs a closed walk");
    const int k = w.length();
    std::vector<int> best(w.vertices.begin(), w.vertices.end() - 1);
    std::vector<int> cur = best;
    for (int r = 1; r < k; ++r) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    best.push_back(best.front());
    return Walk{std::move(best), w.sign};
}

// A closed walk split at every interior visit to its base vertex.  Each
// factor is prime there: the base appears only at its two ends.
struct PrimeDecomposition {
    int base_vertex;
    std::vector<Walk> factors;
};

inline PrimeDecomposition prime_decompose(const Walk& w) {
    if (!w.closed()) throw contract_error("prime_decompose needs a closed walk");
    PrimeDecomposition out{w.base(), {}};
    Walk cur{{w.base()}, +1};
    for (std::size_t t = 1; t < w.vertices.size(); ++t) {
        cur.vertices.push_back(w.vertices[t]);
        if (w.vertices[t] == w.base()) {
            out.factors.push_back(cur);
            cur = Walk{{w.base()}, +1};
        }
    }
    // Factor signs are recovered from edge data by callers that need them;
    // here only the vertex sequences matter.
    return out;
}

namespace detail {

inline int factor_sign(const MarkovGraph& g, const Walk& f) {
    int s = +1;
    for (std::size_t t = 0; t + 1 < f.vertices.size(); ++t)
        s *= *edge_sign(g, f.vertices[t], f.vertices[t + 1]);
    return s;
}

}  // namespace detail

// Rearranges the prime factors of a closed walk into a non-repetitive closed
// walk of the same length, sign and factor multiset: all copies of the
// lexicographically least prime first, then the rest in sorted order.  With
// the least prime contiguous at the front and at least one different factor
// behind it, no rotation period can fit, so the result cannot be a
// repetition; this is checked before returning.
inline Walk surgery_nonrepetitive(const MarkovGraph& g, const Walk& w) {
    if (!w.closed()) throw contract_error("surgery needs a closed walk");
    PrimeDecomposition dec = prime_decompose(w);
    std::sort(dec.factors.begin(), dec.factors.end(),
              [](const Walk& a, const Walk& b) { return a.vertices < b.vertices; });
    const Walk& least = dec.factors.front();
    bool all_equal = true;
    for (const Walk& f : dec.factors)
        if (f.vertices != least.vertices) all_equal = false;
    if (all_equal)
        throw contract_error("cannot desynchronize: all prime factors of the walk are identical");

    Walk out{{w.base()}, +1};
    for (const Walk& f : dec.factors) {
        out.vertices.insert(out.vertices.end(), f.vertices.begin() + 1, f.vertices.end());
        out.sign *= detail::factor_sign(g, f);
    }
    if (out.length() != w.length() || out.sign != w.sign)
        throw invariant_error("surgery changed length or sign");
    if (is_repetitive(out)) throw invariant_error("surgery produced a repetitive walk");
    return out;
}

struct EnumerateOptions {
    std::optional<int> sign_filter;  // keep only walks of this sign
    bool nonrepetitive_only = false;
};

// All closed walks of length k based at `base`, depth-first with edges in
// normalized order (ascending target, '+' before '-'), so the output order
// is deterministic and the first hit is the lexicographically least.
inline std::vector<Walk> enumerate_closed(const MarkovGraph& g, int base, int k, Budget& budget,
                                          const EnumerateOptions& opts = {}) {
    if (base < 1 || base > g.vertex_count) throw contract_error("enumerate_closed: bad base vertex");
    if (k < 1) throw contract_error("enumerate_closed: length must be positive");
    const auto adj = g.out_adjacency();
    std::vector<Walk> out;
    Walk cur{{base}, +1};

    std::function<void(int, int)> dfs = [&](int vertex, int remaining) {
        budget.charge();
        if (remaining == 0) {
            if (vertex != base) return;
            if (opts.sign_filter && cur.sign != *opts.sign_filter) return;
            if (opts.nonrepetitive_only && is_repetitive(cur)) return;
            out.push_back(cur);
            return;
        }
        for (const SignedEdge& e : adj[static_cast<std::size_t>(vertex - 1)]) {
            cur.vertices.push_back(e.tgt);
            cur.sign *= e.sign;
            dfs(e.tgt, remaining - 1);
            cur.sign *= e.sign;
            cur.vertices.pop_back();
        }
    };
    dfs(base, k);
    return out;
}

// First closed walk of length k at `base` with the given sign, in DFS order.
inline std::optional<Walk> first_closed_walk(const MarkovGraph& g, int base, int k, int sign,
                                             Budget& budget) {
    EnumerateOptions opts;
    opts.sign_filter = sign;
    // Full enumeration keeps the "lexicographically least" choice obvious;
    // lengths used by the constructions are small.
    std::vector<Walk> all = enumerate_closed(g, base, k, budget, opts);
    if (all.empty()) return std::nullopt;
    return all.front();
}

// Number of closed walks of length k (with starting vertex counted), i.e.
// tr(m^k).  m must be an unsigned Markov matrix.
inline Int count_closed(const SignedMatrix& m, long k) {
    if (k < 1) throw contract_error("count_closed: length must be positive");
    if (!m.is_nonnegative())
        throw contract_error("count_closed needs the unsigned Markov matrix");
    return mat_pow(m, k).trace();
}

// Number of non-repetitive closed walks of length k counted up to rotation:
// (1/k) * sum over d | k of mu(d) * tr(m^(k/d)); the familiar small cases
// (3-1)/2 and (11-3)/4 are this sum with its zero terms dropped.
inline Int count_nonrepetitive_closed(const SignedMatrix& m, long k) {
    if (k < 1) throw contract_error("count_nonrepetitive_closed: length must be positive");
    if (!m.is_nonnegative())
        throw contract_error("count_nonrepetitive_closed needs the unsigned Markov matrix");
    Int sum = 0;
    for (long d : divisors(k)) sum += mobius(d) * mat_pow(m, k / d).trace();
    if (sum % k != 0 || sum < 0)
        throw invariant_error("necklace count is not a nonnegative multiple of k");
    return sum / k;
}

// All rotation classes of non-repetitive closed walks of length k, any base.
inline std::set<Walk> nonrepetitive_classes(const MarkovGraph& g, int k, Budget& budget) {
    std::set<Walk> classes;
    EnumerateOptions opts;
    opts.nonrepetitive_only = true;
    for (int base = 1; base <= g.vertex_count; ++base)
        for (const Walk& w : enumerate_closed(g, base, k, budget, opts))
            classes.insert(canonical_rotation(w));
    return classes;
}

// Walk construction behind lemma3_walk, over any signed graph whose OM
// obeys the trace and identity properties (interval permutations and tree
// vertex maps both qualify).  Given the orbit size n = 2^k * r (r > 1 odd)
// and a target s > r, write s - r = 2^p * q with q odd.  tr(OM^(2^(k+p)))
// = -1 supplies a vertex with a negative closed walk of that length, and
// OM^(2^k r) = I supplies a positive closed walk of length 2^k r at every
// vertex.  q rounds of the former plus one of the latter give a negative
// closed walk of length 2^k s; the prime-factor surgery makes it
// non-repetitive.
inline Walk lemma3_walk_in_graph(const MarkovGraph& g, int k, long r, long s, Budget& budget) {
    if (r <= 1 || r % 2 == 0) throw domain_error("lemma3 needs odd r > 1");
    if (s <= r) throw domain_error("lemma3 needs s > r");
    const PeriodClass diff = two_adic(s - r);
    const int p = diff.k;
    const long q = diff.s;
    const long neg_len = 1L << (k + p);
    const long pos_len = (1L << k) * r;

    const SignedMatrix om = matrices_of_graph(g).second;
    const SignedMatrix om_neg = mat_pow(om, neg_len);

    for (int v = 1; v <= g.vertex_count; ++v) {
        if (om_neg.at(v - 1, v - 1) >= 0) continue;
        const std::optional<Walk> neg = first_closed_walk(g, v, static_cast<int>(neg_len), -1, budget);
        if (!neg) throw invariant_error("negative diagonal entry without a negative closed walk");
        const std::optional<Walk> pos = first_closed_walk(g, v, static_cast<int>(pos_len), +1, budget);
        if (!pos) continue;
        Walk raw = *pos;
        for (long i = 0; i < q; ++i) raw = concat(raw, *neg);
        // raw wraps q negative rounds after the positive one; order is
        // irrelevant, the surgery re-arranges the primes anyway.
        Walk out = surgery_nonrepetitive(g, raw);
        if (out.length() != (1L << k) * s || out.sign != -1)
            throw invariant_error("lemma3 walk has wrong length or sign");
        return out;
    }
    throw invariant_error("no vertex carries both walks required by lemma3");
}

// Interval case: theta an n-cycle with n = 2^k * r, r > 1 odd; returns a
// negative non-repetitive closed walk of length 2^k * s in the oriented
// Markov graph of the connect-the-dots map.
inline Walk lemma3_walk(const Permutation& theta, long s, Budget& budget) {
    if (!theta.is_cycle()) throw domain_error("lemma3_walk needs an n-cycle");
    const PeriodClass pc = two_adic(theta.n());
    if (pc.s <= 1) throw domain_error("lemma3_walk: n must not be a power of two");
    if (s <= pc.s) throw domain_error("lemma3_walk needs s > r");
    return lemma3_walk_in_graph(markov_graph(theta), pc.k, pc.s, s, budget);
}

// Negative closed walk of length 2^l from the trace mechanism: powers of a
// fixed-point-free permutation keep trace -1, so some diagonal entry of
// OM^(2^l) is negative and a negative closed walk of that length exists.
// Negative walks of power-of-two length are never repetitive (a repetition
// would have an even number of rounds, hence positive sign).
inline std::optional<Walk> lemma2_walk_in_graph(const MarkovGraph& g, long len, Budget& budget) {
    const SignedMatrix om = matrices_of_graph(g).second;
    const SignedMatrix pw = mat_pow(om, len);
    for (int v = 1; v <= g.vertex_count; ++v) {
        if (pw.at(v - 1, v - 1) >= 0) continue;
        const std::optional<Walk> w = first_closed_walk(g, v, static_cast<int>(len), -1, budget);
        if (!w) throw invariant_error("negative diagonal entry without a negative closed walk");
        return w;
    }
    return std::nullopt;
}

}  // namespace combdyn
