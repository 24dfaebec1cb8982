#include <catch2/catch_amalgamated.hpp>

#include "combdyn/markov.hpp"
#include "combdyn/matrix.hpp"
#include "combdyn/permutation.hpp"

using namespace combdyn;

namespace {
const Permutation four_cycle = Permutation::from_cycle({1, 2, 3, 4});

// The worked example's matrices.
const SignedMatrix M4 = SignedMatrix::from_rows({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}});
const SignedMatrix OM4 = SignedMatrix::from_rows({{0, 0, -1}, {1, 0, -1}, {0, 1, -1}});
const SignedMatrix OM4_sq = SignedMatrix::from_rows({{0, -1, 1}, {0, -1, 0}, {1, -1, 0}});
}  // namespace

TEST_CASE("markov graph of the 4-cycle") {
    const MarkovGraph g = markov_graph(four_cycle);
    CHECK(g.vertex_count == 3);
    const std::vector<SignedEdge> expected{
        {1, 2, +1}, {2, 3, +1}, {3, 1, -1}, {3, 2, -1}, {3, 3, -1}};
    CHECK(g.edges == expected);
}

TEST_CASE("markov graph edge cases") {
    const MarkovGraph id4 = markov_graph(Permutation::identity(4));
    CHECK(id4.edges == std::vector<SignedEdge>{{1, 1, +1}, {2, 2, +1}, {3, 3, +1}});

    const MarkovGraph swap2 = markov_graph(Permutation::from_cycle({1, 2}));
    CHECK(swap2.edges == std::vector<SignedEdge>{{1, 1, -1}});

    CHECK_THROWS_AS(markov_graph(Permutation::identity(1)), domain_error);
}

TEST_CASE("markov matrices of the worked example") {
    CHECK(markov_matrix(four_cycle) == M4);
    CHECK(markov_matrix(Permutation::identity(4)) == SignedMatrix::identity(3));
    CHECK(markov_matrix(Permutation::from_image({3, 1, 2})) ==
          SignedMatrix::from_rows({{1, 1}, {1, 0}}));
    CHECK(om_of(four_cycle) == OM4);
    CHECK(om_of(power(four_cycle, 2)) == OM4_sq);
}

TEST_CASE("om of (1,3,4,2) has diagonal -1, +1, -1") {
    const SignedMatrix om = om_of(Permutation::from_cycle({1, 3, 4, 2}));
    CHECK(om.at(0, 0) == -1);
    CHECK(om.at(1, 1) == 1);
    CHECK(om.at(2, 2) == -1);
}

TEST_CASE("matrix algebra reproduces the printed powers") {
    CHECK(mat_mul(OM4, OM4) == OM4_sq);
    CHECK(mat_pow(M4, 4) == SignedMatrix::from_rows({{1, 2, 4}, {2, 3, 6}, {2, 4, 7}}));
    CHECK(mat_mul(M4, SignedMatrix::identity(3)) == M4);
    CHECK_THROWS_AS(mat_mul(M4, SignedMatrix::identity(2)), domain_error);
}

TEST_CASE("traces 1, 3, 11") {
    CHECK(trace(M4) == 1);
    CHECK(trace(mat_pow(M4, 2)) == 3);
    CHECK(trace(mat_pow(M4, 4)) == 11);
}

TEST_CASE("unsigned matrices of iterate vs power permutation differ") {
    CHECK(mat_pow(M4, 2) == SignedMatrix::from_rows({{0, 1, 1}, {0, 1, 2}, {1, 1, 2}}));
    CHECK(markov_matrix(power(four_cycle, 2)) ==
          SignedMatrix::from_rows({{0, 1, 1}, {0, 1, 0}, {1, 1, 0}}));
    CHECK(mat_pow(M4, 2) != markov_matrix(power(four_cycle, 2)));
    // ... while the oriented matrices agree (the power identity).
    CHECK(mat_pow(OM4, 2) == om_of(power(four_cycle, 2)));
}

TEST_CASE("|OM| = M entrywise for every permutation up to n = 6") {
    for (int n = 2; n <= 6; ++n)
        for_each_permutation(n, [](const Permutation& p) {
            REQUIRE(om_of(p).abs() == markov_matrix(p));
        });
}

TEST_CASE("power identity on small cycles") {
    for (int n = 2; n <= 4; ++n)
        for_each_cycle(n, [](const Permutation& theta) {
            const SignedMatrix om = om_of(theta);
            for (int k = 1; k <= 6; ++k)
                REQUIRE(mat_pow(om, k) == om_of(power(theta, k)));
        });
}

TEST_CASE("product identity on small permutation pairs") {
    for (int n = 2; n <= 4; ++n) {
        std::vector<Permutation> perms;
        for_each_permutation(n, [&](const Permutation& p) { perms.push_back(p); });
        for (const Permutation& a : perms)
            for (const Permutation& b : perms)
                REQUIRE(mat_mul(om_of(a), om_of(b)) == om_of(compose(a, b)));
    }
}

TEST_CASE("fixed-point-free trace is -1 (exhaustive n <= 5)") {
    for (int n = 2; n <= 5; ++n)
        for_each_permutation(n, [](const Permutation& p) {
            if (!p.fixed_points().empty()) return;
            REQUIRE(om_of(p).trace() == -1);
        });
}

TEST_CASE("identity powers give the identity matrix") {
    for (int n = 2; n <= 5; ++n)
        for_each_cycle(n, [](const Permutation& theta) {
            REQUIRE(om_of(power(theta, theta.order())) == SignedMatrix::identity(theta.n() - 1));
        });
}

TEST_CASE("dot export of the oriented graph") {
    const std::string dot = to_dot(markov_graph(four_cycle));
    CHECK(dot ==
          "digraph markov {\n"
          "  E1;\n"
          "  E2;\n"
          "  E3;\n"
          "  E1 -> E2 [label=\"+\"];\n"
          "  E2 -> E3 [label=\"+\"];\n"
          "  E3 -> E1 [label=\"-\"];\n"
          "  E3 -> E2 [label=\"-\"];\n"
          "  E3 -> E3 [label=\"-\"];\n"
          "}\n");
}
