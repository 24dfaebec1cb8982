#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "combdyn/orders.hpp"
#include "combdyn/pwl.hpp"

using namespace combdyn;

namespace {
const Permutation four_cycle = Permutation::from_cycle({1, 2, 3, 4});
const PLMap L4 = build_map(four_cycle);

Rat q(long num, long den = 1) { return make_rat(num, den); }
}  // namespace

TEST_CASE("connect-the-dots construction") {
    CHECK(eval(L4, q(1)) == q(2));
    CHECK(eval(L4, q(2)) == q(3));
    CHECK(eval(L4, q(3)) == q(4));
    CHECK(eval(L4, q(4)) == q(1));

    const PLMap id3 = build_map(Permutation::identity(3));
    CHECK(eval(id3, q(5, 2)) == q(5, 2));

    const PLMap swap2 = build_map(Permutation::from_cycle({1, 2}));
    CHECK(eval(swap2, q(1)) == q(2));
    CHECK(eval(swap2, q(2)) == q(1));

    CHECK_THROWS_AS(build_map(Permutation::identity(1)), domain_error);
}

TEST_CASE("exact evaluation on the E3 piece") {
    // On [3,4] the map is y = 13 - 3x.
    CHECK(eval(L4, q(7, 2)) == q(5, 2));
    CHECK_THROWS_AS(eval(L4, q(9, 2)), domain_error);
    CHECK_THROWS_AS(eval(L4, q(1, 2)), domain_error);
}

TEST_CASE("composition") {
    Budget budget;
    const PLMap L2 = compose(L4, L4, budget);
    CHECK(eval(L2, q(4)) == q(2));
    CHECK(eval(L2, q(10, 3)) == q(4));  // interior local maximum
    CHECK(is_breakpoint(L2, q(10, 3)));

    const PLMap id4 = identity_map(q(1), q(4));
    CHECK(maps_equal(compose(L4, id4, budget), L4));

    // Range escape: a map into [1,4] cannot be composed into a smaller domain.
    const PLMap small = identity_map(q(2), q(3));
    CHECK_THROWS_AS(compose(small, L4, budget), domain_error);
}

TEST_CASE("composition agrees with iterated evaluation at random rationals") {
    Budget budget;
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<long> num(0, 3000);
    for_each_cycle(4, [&](const Permutation& theta) {
        const PLMap f = build_map(theta);
        const PLMap f2 = compose(f, f, budget);
        for (int t = 0; t < 1000; ++t) {
            const Rat x = q(1) + q(num(rng), 1000);
            REQUIRE(eval(f2, x) == eval(f, eval(f, x)));
        }
    });
}

TEST_CASE("iterates act on integers like permutation powers") {
    for (int n = 2; n <= 6; ++n)
        for_each_cycle(n, [n](const Permutation& theta) {
            const PLMap f = build_map(theta);
            for (int i = 1; i <= n; ++i) {
                Rat x = Rat(i);
                for (int k = 1; k <= 10; ++k) {
                    x = eval(f, x);
                    REQUIRE(x == Rat(power(theta, k)(i)));
                }
            }
        });
    for_each_permutation(5, [](const Permutation& p) {
        const PLMap f = build_map(p);
        for (int i = 1; i <= 5; ++i) {
            Rat x = Rat(i);
            for (int k = 1; k <= 10; ++k) {
                x = eval(f, x);
                REQUIRE(x == Rat(power(p, k)(i)));
            }
        }
    });
}

TEST_CASE("fixed point of the 4-cycle map") {
    Budget budget;
    const PeriodicPoints pp = periodic_points(four_cycle, 1, budget);
    REQUIRE(pp.points.size() == 1);
    CHECK(pp.segments.empty());
    CHECK(pp.points[0].point == q(13, 4));
    CHECK(pp.points[0].least_period == 1);
    CHECK(pp.points[0].orientation == -1);
    CHECK(pp.points[0].itinerary == std::vector<int>{3, 3});
}

TEST_CASE("period-2 solutions of the 4-cycle map") {
    Budget budget;
    const PeriodicPoints pp = periodic_points(four_cycle, 2, budget);
    REQUIRE(pp.points.size() == 3);
    CHECK(pp.points[0].point == q(5, 2));
    CHECK(pp.points[1].point == q(13, 4));
    CHECK(pp.points[2].point == q(7, 2));
    CHECK(pp.points[0].least_period == 2);
    CHECK(pp.points[1].least_period == 1);
    CHECK(pp.points[2].least_period == 2);
    CHECK(pp.points[0].orientation == -1);
}

TEST_CASE("defining orbit shows up at its own period") {
    Budget budget;
    const PeriodicPoints pp = periodic_points(four_cycle, 4, budget);
    int orbit_points = 0;
    for (const PeriodicPointRecord& rec : pp.points)
        if (rat_is_integer(rec.point)) {
            ++orbit_points;
            CHECK(rec.least_period == 4);
            CHECK(rec.orientation == 0);  // iterates sit on breakpoints
            CHECK(rec.itinerary.empty());
        }
    CHECK(orbit_points == 4);
}

TEST_CASE("identity map is one big fixed segment") {
    Budget budget;
    const PeriodicPoints pp = periodic_points(Permutation::identity(3), 1, budget);
    CHECK(pp.points.empty());
    REQUIRE(pp.segments.size() == 1);
    CHECK(pp.segments[0].lo == q(1));
    CHECK(pp.segments[0].hi == q(3));
}

TEST_CASE("least period sets") {
    Budget budget;
    CHECK(least_period_set(four_cycle, 6, budget).periods == std::set<long>{1, 2, 3, 4, 5, 6});
    CHECK(least_period_set(Permutation::from_cycle({1, 2}), 4, budget).periods ==
          std::set<long>{1, 2});
    CHECK(least_period_set(Permutation::identity(3), 3, budget).periods == std::set<long>{1});
}

TEST_CASE("least period witnesses check out") {
    Budget budget;
    const LeastPeriodSet lps = least_period_set(four_cycle, 6, budget);
    const PLMap f = build_map(four_cycle);
    for (const auto& [m, rec] : lps.witnesses) {
        REQUIRE(rec.least_period == m);
        REQUIRE(least_period(f, rec.point, m) == std::optional<long>(m));
    }
}

TEST_CASE("resource cap on composition") {
    Budget tiny(10, "pwl piece cap");
    CHECK_THROWS_AS(least_period_set(four_cycle, 8, tiny), resource_error);
}

TEST_CASE("lifting closed walks to exact periodic points") {
    const Walk loop{{3, 3}, -1};
    const PeriodicPointRecord rec1 = lift_walk(four_cycle, loop);
    CHECK(rec1.point == q(13, 4));
    CHECK(rec1.least_period == 1);

    const Walk two{{3, 2, 3}, -1};
    const PeriodicPointRecord rec2 = lift_walk(four_cycle, two);
    CHECK(rec2.point == q(7, 2));
    CHECK(rec2.least_period == 2);

    // A repetition of the fixed loop comes back with the smaller period.
    const Walk rep{{3, 3, 3, 3, 3}, +1};
    CHECK(lift_walk(four_cycle, rep).point == q(13, 4));
    CHECK(lift_walk(four_cycle, rep).least_period == 1);

    const Walk five{{3, 1, 2, 3, 2, 3}, +1};
    const PeriodicPointRecord rec5 = lift_walk(four_cycle, five);
    CHECK(rec5.least_period == 5);
    CHECK_FALSE(rat_is_integer(rec5.point));

    CHECK_THROWS_AS(lift_walk(four_cycle, Walk{{3, 2, 3}, +1}), contract_error);  // wrong sign
    CHECK_THROWS_AS(lift_walk(four_cycle, Walk{{3, 2}, -1}), contract_error);     // not closed
    CHECK_THROWS_AS(lift_walk(four_cycle, Walk{{1, 3, 1}, +1}), contract_error);  // no such edge
}

TEST_CASE("itinerary walks") {
    const Walk w1 = itinerary_walk(four_cycle, q(13, 4), 1);
    CHECK(w1.vertices == std::vector<int>{3, 3});
    CHECK(w1.sign == -1);

    const Walk w2 = itinerary_walk(four_cycle, q(7, 2), 2);
    CHECK(w2.vertices == std::vector<int>{3, 2, 3});
    CHECK(w2.sign == -1);

    // Orbit points land on breakpoints: the itinerary is ambiguous there.
    CHECK_THROWS_AS(itinerary_walk(four_cycle, q(1), 4), contract_error);

    // Round trip: lift then read back the itinerary.
    const Walk five{{3, 1, 2, 3, 2, 3}, +1};
    const PeriodicPointRecord rec = lift_walk(four_cycle, five);
    CHECK(itinerary_walk(four_cycle, rec) == five);
}

TEST_CASE("negative walk classes are a lower bound for oracle orbit counts") {
    Budget budget;
    for (int n = 2; n <= 5; ++n)
        for_each_cycle(n, [&](const Permutation& theta) {
            const MarkovGraph g = markov_graph(theta);
            for (int k = 1; k <= 6; ++k) {
                long negative_classes = 0;
                for (const Walk& w : nonrepetitive_classes(g, k, budget))
                    if (w.sign == -1) ++negative_classes;
                const PeriodicPoints pp = periodic_points(theta, k, budget);
                long points_of_period_k = 0;
                for (const PeriodicPointRecord& rec : pp.points)
                    if (rec.least_period == k) ++points_of_period_k;
                REQUIRE(points_of_period_k % k == 0);
                REQUIRE(points_of_period_k / k >= negative_classes);
            }
        });
}

TEST_CASE("sharkovsky forcing against the oracle at small scale") {
    Budget budget;
    for (int n = 2; n <= 4; ++n)
        for_each_cycle(n, [&](const Permutation& theta) {
            const LeastPeriodSet lps = least_period_set(theta, 6, budget);
            for (long m : shark_forced(n, 6)) REQUIRE(lps.periods.count(m) == 1);
        });
}
