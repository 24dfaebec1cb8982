#include <catch2/catch_amalgamated.hpp>

#include "combdyn/witnesses.hpp"

using namespace combdyn;

namespace {
Rat q(long num, long den = 1) { return make_rat(num, den); }

void check_lemma7(const Permutation& theta) {
    Budget budget;
    const Lemma7Witness w = lemma7_witness(theta, budget);
    const long target = 3L << (two_adic(theta.n()).k + 1);
    REQUIRE(w.target_period == target);
    if (w.walk) {
        validate_walk(markov_graph(theta), *w.walk);
        REQUIRE(w.walk->length() == target);
        REQUIRE(w.walk->sign == -1);
        REQUIRE_FALSE(is_repetitive(*w.walk));
        REQUIRE(lift_walk(theta, *w.walk).least_period == target);
    } else {
        REQUIRE(w.point.has_value());
        REQUIRE(w.point->least_period == target);
        const PLMap f = build_map(theta);
        REQUIRE(least_period(f, w.point->point, target) == std::optional<long>(target));
    }
}
}  // namespace

TEST_CASE("horseshoe witness presence follows the diagonal count") {
    CHECK_FALSE(horseshoe_witness(Permutation::from_cycle({1, 2, 3, 4})).has_value());
    CHECK_FALSE(horseshoe_witness(Permutation::identity(4)).has_value());

    const Permutation theta = Permutation::from_cycle({1, 3, 4, 2});
    const std::optional<HorseshoeTriple> t = horseshoe_witness(theta);
    REQUIRE(t.has_value());
    const PLMap f = build_map(theta);
    CHECK(horseshoe_inequalities_hold(f, *t));
    // The scan picks the integer minimum b = 2 between the first two fixed
    // points 5/3 and 5/2, and throws c = 1 past a.
    CHECK(t->a == q(5, 2));
    CHECK(t->b == q(2));
    CHECK(t->c == q(1));
}

TEST_CASE("horseshoe walks have one negative edge") {
    const Permutation theta = Permutation::from_cycle({1, 3, 4, 2});
    const HorseshoeTriple t = *horseshoe_witness(theta);

    const Walk w1 = horseshoe_walks(t, theta, 1);
    CHECK(w1.vertices == std::vector<int>{1, 1});
    CHECK(w1.sign == -1);

    const Walk w2 = horseshoe_walks(t, theta, 2);
    CHECK(w2.vertices == std::vector<int>{1, 2, 1});
    CHECK(w2.sign == -1);

    const Walk w5 = horseshoe_walks(t, theta, 5);
    CHECK(w5.length() == 5);
    CHECK(w5.sign == -1);
    CHECK_FALSE(is_repetitive(w5));

    const HorseshoeTriple bad{q(5, 2), q(2), q(3, 2)};  // f(3/2) = 2 < a: not a horseshoe
    CHECK_THROWS_AS(horseshoe_walks(bad, theta, 2), contract_error);
}

TEST_CASE("horseshoe itineraries lift to points of every least period") {
    const Permutation theta = Permutation::from_cycle({1, 3, 4, 2});
    const HorseshoeTriple t = *horseshoe_witness(theta);
    const PLMap f = build_map(theta);
    Budget budget;
    for (int k = 1; k <= 6; ++k) {
        const Rat p = lift_horseshoe_point(f, t, k, budget);
        REQUIRE(least_period(f, p, k) == std::optional<long>(k));
        REQUIRE(t.c <= p);
        REQUIRE(p <= t.b);
    }
}

TEST_CASE("horseshoe witnesses across all cycles up to n = 6") {
    for (int n = 2; n <= 6; ++n)
        for_each_cycle(n, [](const Permutation& theta) {
            const std::optional<HorseshoeTriple> t = horseshoe_witness(theta);
            REQUIRE(t.has_value() == (om_of(theta).count_nonzero_diagonal() >= 2));
            if (t) REQUIRE(horseshoe_inequalities_hold(build_map(theta), *t));
        });
}

TEST_CASE("orbit patterns") {
    const Permutation theta = Permutation::from_cycle({1, 2, 3, 4});
    const PLMap f = build_map(theta);
    const OrbitPattern pat = orbit_pattern(f, q(5, 2), 2);
    CHECK(pat.perm == Permutation::from_cycle({1, 2}));
    CHECK(pat.points == std::vector<Rat>{q(5, 2), q(7, 2)});
    CHECK_THROWS_AS(orbit_pattern(f, q(5, 2), 3), contract_error);
}

TEST_CASE("lemma7 witness for the standard 6-cycle") {
    check_lemma7(Permutation::from_cycle({1, 2, 3, 4, 5, 6}));
}

TEST_CASE("lemma7 witnesses for all 3- and 5-cycles") {
    for_each_cycle(3, check_lemma7);
    for_each_cycle(5, check_lemma7);
}

TEST_CASE("lemma7 rejects powers of two and non-cycles") {
    Budget budget;
    CHECK_THROWS_AS(lemma7_witness(Permutation::from_cycle({1, 2, 3, 4}), budget), domain_error);
    CHECK_THROWS_AS(lemma7_witness(Permutation::identity(6), budget), domain_error);
}

TEST_CASE("pattern walks lift through the base map over orbit intervals") {
    // The machinery of the lemma7 pattern branch, driven directly: take a
    // least-period-5 orbit of the 3-cycle map, read off its pattern, build a
    // length-7 walk on the pattern, and lift it through the ORIGINAL map
    // over the orbit's own (non-integer, fold-crossing) interval partition.
    const Permutation theta = Permutation::from_cycle({1, 2, 3});
    Budget budget;
    const PLMap f = build_map(theta);
    const PeriodicPointRecord p5 = lift_walk(theta, lemma3_walk(theta, 5, budget));
    REQUIRE(p5.least_period == 5);

    const OrbitPattern pat = orbit_pattern(f, p5.point, 5);
    REQUIRE(pat.perm.is_cycle());
    REQUIRE(pat.points.size() == 5);

    const Walk wpat = lemma3_walk(pat.perm, 7, budget);
    REQUIRE(wpat.length() == 7);
    const MarkovGraph gpat = markov_graph(pat.perm);
    std::vector<std::pair<Rat, Rat>> intervals;
    for (std::size_t i = 0; i + 1 < pat.points.size(); ++i)
        intervals.emplace_back(pat.points[i], pat.points[i + 1]);
    std::vector<int> signs;
    for (std::size_t t = 0; t + 1 < wpat.vertices.size(); ++t)
        signs.push_back(*detail::edge_sign(gpat, wpat.vertices[t], wpat.vertices[t + 1]));
    const std::vector<Rat> cands =
        lift_itinerary_fixed_points(f, intervals, wpat.vertices, signs, budget);
    bool found = false;
    for (const Rat& x : cands)
        if (least_period(f, x, 7) == std::optional<long>(7)) found = true;
    CHECK(found);
}

TEST_CASE("lemma3 walks lift to points of the stated least period") {
    Budget budget;
    for_each_cycle(3, [&](const Permutation& theta) {
        for (long s : {4L, 5L, 7L}) {
            const Walk w = lemma3_walk(theta, s, budget);
            REQUIRE(lift_walk(theta, w).least_period == s);
        }
    });
    const Permutation six = Permutation::from_cycle({1, 2, 3, 4, 5, 6});
    for (long s : {4L, 5L}) {
        const Walk w = lemma3_walk(six, s, budget);
        REQUIRE(lift_walk(six, w).least_period == 2 * s);
    }
}
