#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "combdyn/errors.hpp"
#include "combdyn/markov.hpp"
#include "combdyn/rational.hpp"
#include "combdyn/walks.hpp"

namespace combdyn {

// Piecewise-linear map with exact rational breakpoints x_0 < ... < x_m and
// values y_t = f(x_t); linear in between, domain [x_0, x_m].
struct PLMap {
    std::vector<Rat> xs;
    std::vector<Rat> ys;

    int piece_count() const { return static_cast<int>(xs.size()) - 1; }
    const Rat& domain_lo() const { return xs.front(); }
    const Rat& domain_hi() const { return xs.back(); }

    bool operator==(const PLMap& o) const { return xs == o.xs && ys == o.ys; }
};

inline PLMap make_plmap(std::vector<Rat> xs, std::vector<Rat> ys) {
    if (xs.size() < 2 || xs.size() != ys.size())
        throw domain_error("PL map needs matching breakpoint/value lists, length >= 2");
    for (std::size_t t = 0; t + 1 < xs.size(); ++t)
        if (!(xs[t] < xs[t + 1])) throw domain_error("PL breakpoints must strictly increase");
    return PLMap{std::move(xs), std::move(ys)};
}

inline PLMap identity_map(const Rat& lo, const Rat& hi) { return make_plmap({lo, hi}, {lo, hi}); }

// Connect-the-dots map of theta: breakpoints 1..n, values theta(1)..theta(n),
// domain [1, n] (the convex hull of the orbit).
inline PLMap build_map(const Permutation& theta) {
    const int n = theta.n();
    if (n < 2) throw domain_error("build_map needs a permutation of n >= 2 points");
    std::vector<Rat> xs, ys;
    for (int i = 1; i <= n; ++i) {
        xs.push_back(Rat(i));
        ys.push_back(Rat(theta(i)));
    }
    return make_plmap(std::move(xs), std::move(ys));
}

// Slope and intercept of piece t (between xs[t] and xs[t+1]).
inline std::pair<Rat, Rat> piece_line(const PLMap& f, int t) {
    const Rat a = (f.ys[static_cast<std::size_t>(t) + 1] - f.ys[static_cast<std::size_t>(t)]) /
                  (f.xs[static_cast<std::size_t>(t) + 1] - f.xs[static_cast<std::size_t>(t)]);
    const Rat b = f.ys[static_cast<std::size_t>(t)] - a * f.xs[static_cast<std::size_t>(t)];
    return {a, b};
}

// Index of a piece containing x (the left one at shared breakpoints).
inline int piece_containing(const PLMap& f, const Rat& x) {
    if (x < f.domain_lo() || x > f.domain_hi())
        throw domain_error("evaluation outside domain [" + rat_to_string(f.domain_lo()) + ", " +
                           rat_to_string(f.domain_hi()) + "]: " + rat_to_string(x));
    const auto it = std::upper_bound(f.xs.begin(), f.xs.end(), x);
    int t = static_cast<int>(it - f.xs.begin()) - 1;
    if (t >= f.piece_count()) t = f.piece_count() - 1;
    if (t > 0 && f.xs[static_cast<std::size_t>(t)] == x) --t;
    return t;
}

inline Rat eval(const PLMap& f, const Rat& x) {
    const int t = piece_containing(f, x);
    const auto [a, b] = piece_line(f, t);
    return a * x + b;
}

// True iff x is a breakpoint (including the domain endpoints); at these the
// one-sided slopes may differ, so orientations are undefined there.
inline bool is_breakpoint(const PLMap& f, const Rat& x) {
    return std::binary_search(f.xs.begin(), f.xs.end(), x);
}

// Equality as functions: same domain and the same value everywhere.  Two PL
// maps agreeing on the union of their breakpoints agree on every point, so
// this ignores redundant collinear breakpoints.
inline bool maps_equal(const PLMap& f, const PLMap& g) {
    if (f.domain_lo() != g.domain_lo() || f.domain_hi() != g.domain_hi()) return false;
    std::set<Rat> cuts(f.xs.begin(), f.xs.end());
    cuts.insert(g.xs.begin(), g.xs.end());
    for (const Rat& x : cuts)
        if (eval(f, x) != eval(g, x)) return false;
    return true;
}

// Exact composition f after g.  Breakpoints are g's plus the preimages under
// g of f's breakpoints; collinear interior breakpoints are pruned.
inline PLMap compose(const PLMap& f, const PLMap& g, Budget& budget) {
    for (const Rat& y : g.ys)
        if (y < f.domain_lo() || y > f.domain_hi())
            throw domain_error("compose: range of inner map escapes outer domain at value " +
                               rat_to_string(y));

    std::set<Rat> cuts(g.xs.begin(), g.xs.end());
    for (int t = 0; t < g.piece_count(); ++t) {
        const Rat &u = g.xs[static_cast<std::size_t>(t)], &v = g.xs[static_cast<std::size_t>(t) + 1];
        const Rat &p = g.ys[static_cast<std::size_t>(t)], &q = g.ys[static_cast<std::size_t>(t) + 1];
        if (p == q) continue;
        const Rat lo = std::min(p, q), hi = std::max(p, q);
        const auto [a, b] = piece_line(g, t);
        for (const Rat& c : f.xs) {
            if (!(lo < c && c < hi)) continue;
            Rat x = (c - b) / a;
            if (u < x && x < v) cuts.insert(std::move(x));
        }
    }

    std::vector<Rat> xs(cuts.begin(), cuts.end());
    std::vector<Rat> ys;
    ys.reserve(xs.size());
    for (const Rat& x : xs) ys.push_back(eval(f, eval(g, x)));
    budget.charge(xs.size());

    // Prune interior breakpoints where the slope does not actually change.
    std::vector<Rat> pxs{xs.front()}, pys{ys.front()};
    for (std::size_t t = 1; t + 1 < xs.size(); ++t) {
        const Rat left = (ys[t] - pys.back()) * (xs[t + 1] - xs[t]);
        const Rat right = (ys[t + 1] - ys[t]) * (xs[t] - pxs.back());
        if (left != right) {
            pxs.push_back(xs[t]);
            pys.push_back(ys[t]);
        }
    }
    pxs.push_back(xs.back());
    pys.push_back(ys.back());
    return make_plmap(std::move(pxs), std::move(pys));
}

// L_theta composed with itself k times.
inline PLMap iterate_map(const Permutation& theta, long k, Budget& budget) {
    if (k < 1) throw domain_error("iterate_map needs k >= 1");
    const PLMap base = build_map(theta);
    PLMap acc = base;
    for (long t = 1; t < k; ++t) acc = compose(base, acc, budget);
    return acc;
}

// Solutions of f(x) = x: isolated crossings plus whole fixed segments
// (pieces of slope exactly 1 lying on the diagonal).
struct FixedStructures {
    std::vector<Rat> points;                  // sorted, not inside any segment
    std::vector<std::pair<Rat, Rat>> segments;  // sorted, disjoint, merged
};

inline FixedStructures fixed_structures(const PLMap& f) {
    std::set<Rat> points;
    std::vector<std::pair<Rat, Rat>> segments;
    for (int t = 0; t < f.piece_count(); ++t) {
        const auto [a, b] = piece_line(f, t);
        if (a == 1) {
            if (b == 0)
                segments.emplace_back(f.xs[static_cast<std::size_t>(t)],
                                      f.xs[static_cast<std::size_t>(t) + 1]);
            continue;
        }
        Rat x = b / (1 - a);
        if (f.xs[static_cast<std::size_t>(t)] <= x && x <= f.xs[static_cast<std::size_t>(t) + 1])
            points.insert(std::move(x));
    }
    FixedStructures out;
    std::sort(segments.begin(), segments.end());
    for (auto& seg : segments) {
        if (!out.segments.empty() && seg.first <= out.segments.back().second)
            out.segments.back().second = std::max(out.segments.back().second, seg.second);
        else
            out.segments.push_back(seg);
    }
    for (const Rat& x : points) {
        bool inside = false;
        for (const auto& seg : out.segments)
            if (seg.first <= x && x <= seg.second) inside = true;
        if (!inside) out.points.push_back(x);
    }
    return out;
}

// Least t in [1, bound] with f^t(x) = x, if any.
inline std::optional<long> least_period(const PLMap& f, const Rat& x, long bound) {
    Rat cur = x;
    for (long t = 1; t <= bound; ++t) {
        cur = eval(f, cur);
        if (cur == x) return t;
    }
    return std::nullopt;
}

// Sign of the slope of f^m at a periodic point, or 0 ("undefined") when some
// iterate lands on a breakpoint of f.
inline int orbit_orientation(const PLMap& f, const Rat& x, long m) {
    Rat cur = x;
    int sign = +1;
    for (long t = 0; t < m; ++t) {
        if (is_breakpoint(f, cur)) return 0;
        const auto [a, b] = piece_line(f, piece_containing(f, cur));
        sign *= sign_of(a) > 0 ? +1 : -1;
        cur = a * cur + b;
    }
    return sign;
}

// Edge symbols E_{j_0}, ..., E_{j_m} visited by the orbit of x under the
// connect-the-dots map (j_t = floor of the t-th iterate); empty when some
// iterate is an integer, where the edge is ambiguous.
inline std::vector<int> orbit_itinerary(const Permutation& theta, const Rat& x, long m) {
    const PLMap f = build_map(theta);
    std::vector<int> edges;
    Rat cur = x;
    for (long t = 0; t <= m; ++t) {
        if (rat_is_integer(cur)) return {};
        edges.push_back(static_cast<int>(rat_floor(cur).get_si()));
        if (t < m) cur = eval(f, cur);
    }
    return edges;
}

// An exactly solved periodic point: least period, orientation (sign of the
// slope of L^period there, 0 when undefined) and itinerary.
struct PeriodicPointRecord {
    Rat point;
    long least_period = 0;
    int orientation = 0;
    std::vector<int> itinerary;

    bool operator<(const PeriodicPointRecord& o) const { return point < o.point; }
};

// A maximal interval on which L^period is the identity.
struct PeriodicSegment {
    Rat lo, hi;
    long period;
};

struct PeriodicPoints {
    std::vector<PeriodicPointRecord> points;
    std::vector<PeriodicSegment> segments;
};

namespace detail {

inline PeriodicPointRecord make_record(const Permutation& theta, const PLMap& base, const Rat& x,
                                       long k) {
    const std::optional<long> m = least_period(base, x, k);
    if (!m) throw invariant_error("fixed point of the iterate is not periodic under the base map");
    PeriodicPointRecord rec;
    rec.point = x;
    rec.least_period = *m;
    rec.orientation = orbit_orientation(base, x, *m);
    rec.itinerary = orbit_itinerary(theta, x, *m);
    return rec;
}

}  // namespace detail

// The exact solution set of L_theta^k(x) = x, found by composing the map and
// solving every linear piece.  Isolated points come back as records with
// exact least periods; slope-one stretches on the diagonal come back as
// segments.
inline PeriodicPoints periodic_points(const Permutation& theta, long k, Budget& budget) {
    if (k < 1) throw domain_error("periodic_points needs k >= 1");
    const PLMap base = build_map(theta);
    const PLMap fk = iterate_map(theta, k, budget);
    const FixedStructures fs = fixed_structures(fk);
    PeriodicPoints out;
    for (const Rat& x : fs.points) out.points.push_back(detail::make_record(theta, base, x, k));
    for (const auto& seg : fs.segments) out.segments.push_back({seg.first, seg.second, k});
    return out;
}

namespace detail {

// Interval coverage check used for fixed segments: does the union of the
// given points/segments cover [lo, hi]?  If not, puts one uncovered point
// into *gap.
inline bool covers_interval(const Rat& lo, const Rat& hi,
                            std::vector<std::pair<Rat, Rat>> pieces, Rat* gap) {
    std::sort(pieces.begin(), pieces.end());
    Rat reach = lo;
    for (const auto& p : pieces) {
        if (p.first > reach) break;
        reach = std::max(reach, p.second);
        if (reach >= hi) return true;
    }
    if (reach >= hi) return true;
    // Uncovered just beyond `reach`: the midpoint of the gap up to the next
    // piece start (or hi).
    Rat next = hi;
    for (const auto& p : pieces)
        if (p.first > reach) {
            next = std::min(next, p.first);
            break;
        }
    *gap = (reach + next) / 2;
    return false;
}

}  // namespace detail

struct LeastPeriodSet {
    std::set<long> periods;
    std::map<long, PeriodicPointRecord> witnesses;
};

// { m <= K : L_theta has a point of least period exactly m }, with one exact
// witness per member.  Isolated fixed points of L^k are classified by direct
// iteration.  A fixed segment of L^k contributes k iff the fixed sets of the
// proper-divisor iterates fail to cover it; any point of a gap then has
// least period exactly k.
inline LeastPeriodSet least_period_set(const Permutation& theta, long K, Budget& budget) {
    if (K < 1) throw domain_error("least_period_set needs K >= 1");
    const PLMap base = build_map(theta);
    LeastPeriodSet out;
    std::map<long, FixedStructures> fixed_by_k;
    PLMap fk = base;
    for (long k = 1; k <= K; ++k) {
        if (k > 1) fk = compose(base, fk, budget);
        const FixedStructures fs = fixed_structures(fk);
        fixed_by_k[k] = fs;
        for (const Rat& x : fs.points) {
            if (out.periods.count(k)) break;
            const std::optional<long> m = least_period(base, x, k);
            if (m && *m == k) {
                out.periods.insert(k);
                out.witnesses.emplace(k, detail::make_record(theta, base, x, k));
            }
        }
        for (const auto& seg : fs.segments) {
            if (out.periods.count(k)) break;
            std::vector<std::pair<Rat, Rat>> smaller;
            for (long t = 1; t < k; ++t) {
                if (k % t) continue;
                for (const Rat& x : fixed_by_k[t].points) smaller.emplace_back(x, x);
                for (const auto& s : fixed_by_k[t].segments) smaller.push_back(s);
            }
            Rat gap;
            if (!detail::covers_interval(seg.first, seg.second, std::move(smaller), &gap)) {
                const std::optional<long> m = least_period(base, gap, k);
                if (!m || *m != k)
                    throw invariant_error("segment gap point has unexpected least period");
                out.periods.insert(k);
                out.witnesses.emplace(k, detail::make_record(theta, base, gap, k));
            }
        }
    }
    return out;
}

// Lifts a closed walk in the oriented Markov graph of L_theta to an exact
// periodic point by backward interval nesting.  Each step stays inside one
// linear piece of the map, so the nested composite is affine and the fixed
// point solves exactly.  A non-repetitive negative walk of length m is
// guaranteed to come back with least period exactly m and an interior,
// non-integer point; that guarantee is checked.
inline PeriodicPointRecord lift_walk(const Permutation& theta, const Walk& w) {
    const MarkovGraph g = markov_graph(theta);
    validate_walk(g, w);
    if (!w.closed()) throw contract_error("lift_walk needs a closed walk");
    const PLMap f = build_map(theta);
    const long m = w.length();

    Rat lo(w.base()), hi(w.base() + 1);
    for (long t = m - 1; t >= 0; --t) {
        const int j = w.vertices[static_cast<std::size_t>(t)];
        const Rat a = Rat(theta(j + 1) - theta(j));
        const Rat b = Rat(theta(j)) - a * j;
        Rat u = (lo - b) / a, v = (hi - b) / a;
        if (u > v) std::swap(u, v);
        lo = u;
        hi = v;
    }

    Rat A(1), B(0);
    for (long t = 0; t < m; ++t) {
        const int j = w.vertices[static_cast<std::size_t>(t)];
        const Rat a = Rat(theta(j + 1) - theta(j));
        const Rat b = Rat(theta(j)) - a * j;
        A = a * A;
        B = a * B + b;
    }
    if ((sign_of(A) > 0 ? +1 : -1) != w.sign)
        throw invariant_error("lift_walk: composite slope sign disagrees with walk sign");

    Rat x;
    if (A == 1) {
        // The whole nested interval is fixed; any point represents it.
        if (B != 0) throw invariant_error("lift_walk: slope-one composite off the diagonal");
        x = (lo + hi) / 2;
    } else {
        x = B / (1 - A);
    }
    if (x < lo || x > hi) throw invariant_error("lift_walk: fixed point escaped the nest");

    PeriodicPointRecord rec = detail::make_record(theta, f, x, m);
    if (w.sign == -1 && !is_repetitive(w)) {
        if (rec.least_period != m)
            throw invariant_error("negative non-repetitive walk lifted to a shorter period");
        if (rat_is_integer(rec.point))
            throw invariant_error("negative non-repetitive walk lifted to an orbit point");
    }
    return rec;
}

// The itinerary walk of a periodic point whose orbit avoids the breakpoints
// (Lemma 5 direction: point -> walk).  Its sign equals the orbit's
// orientation, and a negative orbit always yields a non-repetitive walk.
inline Walk itinerary_walk(const Permutation& theta, const Rat& point, long m) {
    const PLMap f = build_map(theta);
    if (m < 1) throw contract_error("itinerary_walk needs a positive period");
    {
        const std::optional<long> lp = least_period(f, point, m);
        if (!lp || *lp != m) throw contract_error("itinerary_walk: point does not have the stated least period");
    }
    const std::vector<int> edges = orbit_itinerary(theta, point, m);
    if (edges.empty())
        throw contract_error("critical itinerary: an iterate lands on a breakpoint");
    Walk w{edges, orbit_orientation(f, point, m)};
    validate_walk(markov_graph(theta), w);
    if (w.sign == -1 && is_repetitive(w))
        throw invariant_error("negative orbit produced a repetitive itinerary walk");
    return w;
}

inline Walk itinerary_walk(const Permutation& theta, const PeriodicPointRecord& rec) {
    return itinerary_walk(theta, rec.point, rec.least_period);
}

// ---------------------------------------------------------------------------
// Covering lift over arbitrary rational intervals.
//
// Used where the itinerary intervals are not single linear pieces of the map
// (the horseshoe intervals, orbit-pattern intervals); the map may fold
// several times over each interval, so preimages are located by scanning the
// exact solutions of f(x) = boundary.

namespace detail {

// A closed subinterval J of I with f(J) = K exactly, endpoints mapped
// according to sign (+: f(lo J) = lo K; -: f(lo J) = hi K).  Chooses the
// leftmost such J.
inline std::pair<Rat, Rat> signed_preimage(const PLMap& f, const std::pair<Rat, Rat>& interval,
                                           const std::pair<Rat, Rat>& target, int sign) {
    const Rat &klo = target.first, &khi = target.second;
    struct Hit {
        Rat x;
        bool is_hi;
    };
    std::vector<Hit> hits;
    for (int t = 0; t < f.piece_count(); ++t) {
        const Rat u = std::max(f.xs[static_cast<std::size_t>(t)], interval.first);
        const Rat v = std::min(f.xs[static_cast<std::size_t>(t) + 1], interval.second);
        if (u > v) continue;
        const auto [a, b] = piece_line(f, t);
        if (a == 0) continue;
        for (int which = 0; which < 2; ++which) {
            const Rat& c = which ? khi : klo;
            Rat x = (c - b) / a;
            if (u <= x && x <= v) hits.push_back({std::move(x), which == 1});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.x < b.x; });
    hits.erase(std::unique(hits.begin(), hits.end(),
                           [](const Hit& a, const Hit& b) { return a.x == b.x && a.is_hi == b.is_hi; }),
               hits.end());

    const bool first_hi = sign < 0;
    for (std::size_t i = 0; i + 1 < hits.size(); ++i) {
        if (hits[i].is_hi != first_hi || hits[i + 1].is_hi == first_hi) continue;
        if (hits[i].x == hits[i + 1].x) continue;
        const Rat mid_val = eval(f, (hits[i].x + hits[i + 1].x) / 2);
        if (klo < mid_val && mid_val < khi) return {hits[i].x, hits[i + 1].x};
    }
    throw invariant_error("signed covering preimage not found");
}

}  // namespace detail

// Exact fixed points of f^m along a closed itinerary through the given
// intervals with the given per-step covering signs.  Returns all solutions
// in the innermost nest, sorted; callers filter by least period.
inline std::vector<Rat> lift_itinerary_fixed_points(const PLMap& f,
                                                    const std::vector<std::pair<Rat, Rat>>& intervals,
                                                    const std::vector<int>& walk_vertices,
                                                    const std::vector<int>& step_signs,
                                                    Budget& budget) {
    const std::size_t m = step_signs.size();
    if (walk_vertices.size() != m + 1 || walk_vertices.front() != walk_vertices.back())
        throw contract_error("lift_itinerary needs a closed itinerary");
    auto interval_of = [&](int v) -> const std::pair<Rat, Rat>& {
        if (v < 1 || v > static_cast<int>(intervals.size()))
            throw contract_error("lift_itinerary: interval index out of range");
        return intervals[static_cast<std::size_t>(v - 1)];
    };

    std::pair<Rat, Rat> target = interval_of(walk_vertices.front());
    for (std::size_t t = m; t-- > 0;) {
        target = detail::signed_preimage(f, interval_of(walk_vertices[t]), target,
                                         step_signs[t]);
        budget.charge();
    }

    PLMap nest = identity_map(target.first, target.second);
    for (std::size_t t = 0; t < m; ++t) nest = compose(f, nest, budget);
    const FixedStructures fs = fixed_structures(nest);
    std::vector<Rat> out = fs.points;
    for (const auto& seg : fs.segments) out.push_back((seg.first + seg.second) / 2);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace combdyn
