#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>

#include "combdyn/io.hpp"

using namespace combdyn;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(COMBDYN_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

const std::string counterexample_tree =
    std::string(COMBDYN_DATA_DIR) + "/counterexample_tree.json";

}  // namespace

TEST_CASE("perm analyze reproduces the worked example") {
    const RunResult r = run("perm analyze --cycle 1,2,3,4");
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["markov_matrix"]["entries"] == Json::parse("[[0,0,1],[1,0,1],[0,1,1]]"));
    CHECK(j["oriented_markov_matrix"]["entries"] == Json::parse("[[0,0,-1],[1,0,-1],[0,1,-1]]"));
    std::vector<long> traces;
    for (const Json& t : j["traces"]) traces.push_back(t["trace_m"].get<long>());
    CHECK(traces == std::vector<long>{1, 3, 7, 11});
}

TEST_CASE("perm analyze --dot carries the five signed edges") {
    const RunResult r = run("perm analyze --cycle 1,2,3,4 --dot");
    REQUIRE(r.exit_code == 0);
    const std::string dot = Json::parse(r.out)["dot"].get<std::string>();
    CHECK(dot.find("E1 -> E2 [label=\"+\"]") != std::string::npos);
    CHECK(dot.find("E3 -> E3 [label=\"-\"]") != std::string::npos);
}

TEST_CASE("exit code contract") {
    CHECK(run("perm analyze --cycle 1").exit_code == 2);           // n < 2
    CHECK(run("perm analyze --cycle 1,2,2").exit_code == 2);       // not a bijection
    CHECK(run("nonsense").exit_code == 2);                         // unknown subcommand
    CHECK(run("verify no-such-suite").exit_code == 2);             // unknown suite
    CHECK(run("tree analyze /no/such/file.json").exit_code == 2);  // missing file
}

TEST_CASE("determinism: identical invocations, identical bytes") {
    const std::string cmd = "perm analyze --cycle 1,3,4,2 --dot";
    CHECK(run(cmd).out == run(cmd).out);
    const std::string walks = "perm walks --cycle 1,2,3,4 --length 5 --nonrepetitive";
    CHECK(run(walks).out == run(walks).out);
}

TEST_CASE("perm walks surfaces enumeration") {
    const RunResult r = run("perm walks --cycle 1,2,3,4 --length 1 --base 3");
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    REQUIRE(j["walks"].size() == 1);
    CHECK(j["walks"][0]["vertices"] == Json::parse("[3,3]"));
    CHECK(j["walks"][0]["sign"] == -1);
}

TEST_CASE("pwl periods emits witnesses as exact rationals") {
    const RunResult r = run("pwl periods --cycle 1,2,3,4 --upto 6");
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    std::vector<long> ms;
    for (const Json& p : j["periods"]) ms.push_back(p["m"].get<long>());
    CHECK(ms == std::vector<long>{1, 2, 3, 4, 5, 6});
    CHECK(j["periods"][0]["witness"]["point"] == "13/4");
    CHECK(j["periods"][0]["witness"]["orientation"] == -1);
}

TEST_CASE("order subcommands") {
    CHECK(run("order cmp 6 3").out == "6 ◁ 3\n");
    CHECK(run("order cmp 3 6").out == "6 ◁ 3\n");
    CHECK(run("order cmp 5 5").out == "5 = 5\n");
    CHECK(Json::parse(run("order forced 9 --model tree --upto 12").out) ==
          Json::parse("[1,2,4,8,9,10,11,12]"));
    CHECK(Json::parse(run("order forced 9 --model basic --upto 12").out) ==
          Json::parse("[1,2,4,8,9,10,11,12]"));
    CHECK(Json::parse(run("order forced 9 --upto 12").out) ==
          Json::parse("[1,2,4,6,8,9,10,11,12]"));
    CHECK(Json::parse(run("order remove-ones 31").out) == Json::parse("[30,28,24,16,0]"));
}

TEST_CASE("tree analyze on the counterexample tree") {
    const RunResult absent = run("tree analyze " + counterexample_tree + " --walk-length 6");
    REQUIRE(absent.exit_code == 0);
    const Json ja = Json::parse(absent.out);
    CHECK(ja["trace_om"] == -1);
    CHECK(ja["dot_total"] == 9);
    CHECK(ja["walk"] == "absent");

    const RunResult present = run("tree analyze " + counterexample_tree + " --walk-length 8");
    const Json jp = Json::parse(present.out);
    CHECK(jp["walk"]["length"] == 8);
    CHECK(jp["walk"]["sign"] == -1);
}

TEST_CASE("graph analyze rejects broken routes and accepts the rotation") {
    const std::string good = std::string(COMBDYN_DATA_DIR) + "/circle_rotation.json";
    const RunResult r = run("graph analyze " + good);
    REQUIRE(r.exit_code == 0);
    CHECK(Json::parse(r.out)["trace_om"] == 0);
}

TEST_CASE("verify suites pass at small scale") {
    const RunResult trace = run("verify trace --n-max 5");
    REQUIRE(trace.exit_code == 0);
    CHECK(Json::parse(trace.out)["pass"] == true);

    const RunResult power = run("verify power --n-max 4 --upto 6");
    CHECK(power.exit_code == 0);

    const RunResult walks = run("verify walk-counts --n-max 4 --upto 5");
    CHECK(walks.exit_code == 0);

    const RunResult forcing = run("verify forcing --n-max 4 --upto 6");
    CHECK(forcing.exit_code == 0);

    const RunResult trees = run("verify tree-trace --count 40 --seed 7");
    CHECK(trees.exit_code == 0);
}

TEST_CASE("export dot matches the analyze rendering") {
    const RunResult r = run("export dot --cycle 1,2,3,4");
    CHECK(r.out == to_dot(markov_graph(Permutation::from_cycle({1, 2, 3, 4}))));
    const RunResult t = run("export dot --tree " + counterexample_tree);
    CHECK(t.out.find("E7 -> E4 [label=\"-\"]") != std::string::npos);
}

TEST_CASE("COMBDYN_CAP drives the resource exit code") {
    const std::string cmd = std::string("COMBDYN_CAP=3 ") + COMBDYN_CLI_PATH +
                            " perm walks --cycle 1,2,3,4 --length 6 --base 3 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 256> buf;
    while (fread(buf.data(), 1, buf.size(), pipe)) {
    }
    CHECK(WEXITSTATUS(pclose(pipe)) == 3);
}

TEST_CASE("json round trips") {
    const Permutation theta = Permutation::from_cycle({1, 3, 4, 2});
    CHECK(permutation_from_json(permutation_to_json(theta)) == theta);
    CHECK(rat_from_string("13/4") == make_rat(13, 4));
    CHECK(rat_to_string(make_rat(-26, 8)) == "-13/4");
    CHECK_THROWS_AS(rat_from_string("1/0"), domain_error);
    CHECK_THROWS_AS(permutation_from_json(Json{{"n", 3}, {"image", {1, 2}}}), domain_error);
}
