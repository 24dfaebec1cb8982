#pragma once

#include <set>
#include <vector>

#include "combdyn/errors.hpp"

namespace combdyn {

// n written as 2^k * s with s odd.
struct PeriodClass {
    int k;   // 2-adic valuation
    long s;  // odd part

    long value() const { return (1L << k) * s; }
};

inline PeriodClass two_adic(long n) {
    if (n < 1) throw domain_error("two_adic needs a positive integer");
    PeriodClass pc{0, n};
    while (pc.s % 2 == 0) {
        pc.s /= 2;
        ++pc.k;
    }
    return pc;
}

inline bool is_power_of_two(long n) { return n >= 1 && (n & (n - 1)) == 0; }

inline std::vector<long> divisors(long k) {
    if (k < 1) throw domain_error("divisors needs a positive integer");
    std::vector<long> small, large;
    for (long d = 1; d * d <= k; ++d) {
        if (k % d) continue;
        small.push_back(d);
        if (d != k / d) large.push_back(k / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline int mobius(long d) {
    if (d < 1) throw domain_error("mobius needs a positive integer");
    int primes = 0;
    for (long p = 2; p * p <= d; ++p) {
        if (d % p) continue;
        d /= p;
        if (d % p == 0) return 0;
        ++primes;
    }
    if (d > 1) ++primes;
    return primes % 2 == 0 ? 1 : -1;
}

enum class Order { less, equal, greater };

// The Sharkovsky order.  Powers of two ascend and sit below everything
// else; among n = 2^k * s with s > 1 odd, a larger power of two means
// smaller, and with equal powers a larger odd factor means smaller.
// Returns how m compares to n: Order::less means m comes strictly before n
// (period n forces period m).
inline Order shark_cmp(long m, long n) {
    if (m < 1 || n < 1) throw domain_error("shark_cmp needs positive integers");
    if (m == n) return Order::equal;
    const PeriodClass a = two_adic(m), b = two_adic(n);
    const bool ma = a.s == 1, nb = b.s == 1;
    if (ma && nb) return a.k < b.k ? Order::less : Order::greater;
    if (ma) return Order::less;
    if (nb) return Order::greater;
    if (a.k != b.k) return a.k > b.k ? Order::less : Order::greater;
    return a.s > b.s ? Order::less : Order::greater;
}

// { m <= K : m is forced by n in the Sharkovsky order }, n itself included.
inline std::set<long> shark_forced(long n, long K) {
    std::set<long> out;
    for (long m = 1; m <= K; ++m)
        if (shark_cmp(m, n) != Order::greater) out.insert(m);
    return out;
}

// The set forced by the two walk-construction lemmas, truncated at K.
// For n = 2^k: the periods 2^l, l <= k.  For n = 2^k * s with s > 1 odd:
// every power of two, every 2^k * r with r odd and r >= s, and every
// 2^l * r with l > k, r > 1 odd and 2^(l-k) * r > s.  Includes n.
inline std::set<long> basic_forced(long n, long K) {
    if (n < 1) throw domain_error("basic_forced needs a positive integer");
    const PeriodClass pc = two_adic(n);
    std::set<long> out;
    if (n <= K) out.insert(n);
    if (pc.s == 1) {
        for (long p = 1; p <= K && p <= n; p *= 2) out.insert(p);
        return out;
    }
    for (long p = 1; p <= K; p *= 2) out.insert(p);
    for (long m = 1; m <= K; ++m) {
        const PeriodClass mc = two_adic(m);
        if (mc.s == 1) continue;
        if (mc.k == pc.k && mc.s >= pc.s) out.insert(m);
        if (mc.k > pc.k && (m >> pc.k) > pc.s) out.insert(m);
    }
    return out;
}

// Repeatedly clear the lowest set bit, recording each result down to 0.
inline std::vector<long> remove_ones(long v) {
    if (v < 1) throw domain_error("remove_ones needs a positive integer");
    std::vector<long> out;
    while (v > 0) {
        v &= v - 1;
        out.push_back(v);
    }
    return out;
}

// Forced set for vertex maps on trees whose vertices form one orbit of size
// v, truncated at K: the power-of-two clause, 2^p * r for every r >= q
// (where v = 2^p * q, q > 1 odd; r unrestricted), and everything reachable
// from v by removing ones from the right of its binary expansion.
inline std::set<long> tree_forced(long v, long K) {
    if (v < 2) throw domain_error("tree_forced needs v >= 2");
    const PeriodClass pc = two_adic(v);
    std::set<long> out;
    if (v <= K) out.insert(v);
    if (pc.s == 1) {
        for (long p = 1; p <= K && p <= v; p *= 2) out.insert(p);
    } else {
        for (long p = 1; p <= K; p *= 2) out.insert(p);
        for (long r = pc.s; (r << pc.k) <= K; ++r) out.insert(r << pc.k);
    }
    for (long m : remove_ones(v))
        if (m >= 1 && m <= K) out.insert(m);
    return out;
}

}  // namespace combdyn
