// Command-line front end: exact Markov/oriented-Markov analysis of cyclic
// permutations, periodic points of connect-the-dots maps, forcing orders,
// tree and graph vertex maps, and the verification sweeps.
//
// Exit codes: 0 success, 1 counterexample or failed invariant, 2 usage or
// invalid input, 3 resource cap exceeded.  COMBDYN_CAP overrides the default
// exploration cap.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "combdyn/combdyn.hpp"

using namespace combdyn;

namespace {

unsigned long long env_cap() {
    const char* s = std::getenv("COMBDYN_CAP");
    if (!s) return Budget::kDefaultCap;
    try {
        return std::stoull(s);
    } catch (...) {
        throw domain_error("COMBDYN_CAP must be a positive integer");
    }
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (...) {
            throw domain_error("expected a comma-separated integer list, got '" + s + "'");
        }
    }
    if (out.empty()) throw domain_error("empty integer list");
    return out;
}

struct PermFlags {
    std::string cycle;
    std::string image;

    void attach(CLI::App* cmd) {
        cmd->add_option("--cycle", cycle, "n-cycle in cycle notation, e.g. 1,2,3,4");
        cmd->add_option("--image", image, "image table theta(1..n), e.g. 2,3,4,1");
    }

    Permutation get() const {
        if (!cycle.empty() && !image.empty())
            throw domain_error("give either --cycle or --image, not both");
        if (!cycle.empty()) return Permutation::from_cycle(parse_int_list(cycle));
        if (!image.empty()) return Permutation::from_image(parse_int_list(image));
        throw domain_error("a permutation is required (--cycle or --image)");
    }
};

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw domain_error("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw domain_error("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_perm_analyze(const Permutation& theta, int power_bound, bool with_dot, bool table) {
    const SignedMatrix m = markov_matrix(theta);
    const SignedMatrix om = om_of(theta);
    Json traces = Json::array();
    SignedMatrix mk = SignedMatrix::identity(m.dim());
    SignedMatrix omk = SignedMatrix::identity(om.dim());
    Json nonrep = Json::array();
    for (int k = 1; k <= power_bound; ++k) {
        mk = mat_mul(mk, m);
        omk = mat_mul(omk, om);
        traces.push_back(Json{{"k", k},
                              {"trace_m", int_to_json(mk.trace())},
                              {"trace_om", int_to_json(omk.trace())}});
        nonrep.push_back(
            Json{{"k", k}, {"count", int_to_json(count_nonrepetitive_closed(m, k))}});
    }
    Json report{{"n", theta.n()},
                {"permutation", permutation_to_json(theta)},
                {"markov_matrix", matrix_to_json(m)},
                {"oriented_markov_matrix", matrix_to_json(om)},
                {"traces", traces},
                {"nonrepetitive_closed_walks", nonrep}};
    if (with_dot) report["dot"] = to_dot(markov_graph(theta));
    if (table) {
        std::cout << "n = " << theta.n() << "\nM =\n"
                  << m.to_string() << "\nOM =\n"
                  << om.to_string() << "\ntraces of M^k: ";
        for (const Json& t : traces) std::cout << t["trace_m"] << " ";
        std::cout << "\nnon-repetitive closed walks: ";
        for (const Json& t : nonrep) std::cout << t["count"] << " ";
        std::cout << "\n";
        if (with_dot) std::cout << report["dot"].get<std::string>();
        return 0;
    }
    emit(report);
    return 0;
}

int run_perm_walks(const Permutation& theta, int length, int base, const std::string& sign,
                   bool nonrepetitive) {
    const MarkovGraph g = markov_graph(theta);
    Budget budget(env_cap(), "walk enumeration cap");
    EnumerateOptions opts;
    if (sign == "+")
        opts.sign_filter = +1;
    else if (sign == "-")
        opts.sign_filter = -1;
    else if (!sign.empty())
        throw domain_error("--sign must be + or -");
    opts.nonrepetitive_only = nonrepetitive;

    Json walks = Json::array();
    if (base != 0) {
        for (const Walk& w : enumerate_closed(g, base, length, budget, opts))
            walks.push_back(walk_to_json(w));
    } else {
        for (const Walk& w : nonrepetitive_classes(g, length, budget)) {
            if (opts.sign_filter && w.sign != *opts.sign_filter) continue;
            walks.push_back(walk_to_json(w));
        }
    }
    emit(Json{{"n", theta.n()}, {"length", length}, {"walks", walks}});
    return 0;
}

int run_pwl_periods(const Permutation& theta, long K, unsigned long long cap) {
    Budget budget(cap, "pwl piece cap");
    const LeastPeriodSet lps = least_period_set(theta, K, budget);
    Json periods = Json::array();
    for (long m : lps.periods) {
        Json entry{{"m", m}};
        entry["witness"] = record_to_json(lps.witnesses.at(m));
        periods.push_back(std::move(entry));
    }
    emit(Json{{"n", theta.n()}, {"upto", K}, {"periods", periods}});
    return 0;
}

int run_order_cmp(long m, long n) {
    const Order o = shark_cmp(m, n);
    if (o == Order::equal)
        std::cout << m << " = " << n << "\n";
    else if (o == Order::less)
        std::cout << m << " ◁ " << n << "\n";
    else
        std::cout << n << " ◁ " << m << "\n";
    return 0;
}

int run_order_forced(long n, const std::string& model, long K) {
    std::set<long> forced;
    if (model == "sharkovsky")
        forced = shark_forced(n, K);
    else if (model == "basic")
        forced = basic_forced(n, K);
    else if (model == "tree")
        forced = tree_forced(n, K);
    else
        throw domain_error("--model must be sharkovsky, basic or tree");
    emit(Json(forced));
    return 0;
}

int run_tree_analyze(const std::string& path, std::optional<long> walk_length, bool with_dot,
                     bool table) {
    const TreeVertexMap tvm = tree_vertex_map_from_json(load_json_file(path));
    const auto [m, om] = tree_matrices(tvm);
    const TraceCertificate cert = tree_trace_check(tvm);
    Json dots = Json::array();
    for (const Int& d : cert.dots) dots.push_back(int_to_json(d));
    Json report{{"v", tvm.tree.vertex_count()},
                {"perm", permutation_to_json(tvm.perm)},
                {"markov_matrix", matrix_to_json(m)},
                {"oriented_markov_matrix", matrix_to_json(om)},
                {"trace_om", int_to_json(cert.trace)},
                {"dots", dots},
                {"dot_total", int_to_json(cert.dot_total)}};
    if (walk_length) {
        Budget budget(env_cap(), "walk enumeration cap");
        const std::optional<Walk> w = tree_walk_witnesses(tvm, *walk_length, budget);
        report["walk_length"] = *walk_length;
        report["walk"] = w ? walk_to_json(*w) : Json("absent");
    }
    if (with_dot) report["dot"] = to_dot(tree_markov_graph(tvm), "tree_markov");
    if (table) {
        std::cout << "v = " << tvm.tree.vertex_count() << "\nM =\n"
                  << m.to_string() << "\nOM =\n"
                  << om.to_string() << "\ntrace(OM) = " << cert.trace << "\n";
        if (walk_length)
            std::cout << "walk of length " << *walk_length << ": "
                      << (report["walk"].is_string() ? "absent" : report["walk"].dump()) << "\n";
        if (with_dot) std::cout << report["dot"].get<std::string>();
        return 0;
    }
    emit(report);
    return 0;
}

int run_graph_analyze(const std::string& path) {
    const GraphVertexMap gvm = graph_vertex_map_from_json(load_json_file(path));
    const auto [m, om] = graph_matrices(gvm);
    emit(Json{{"v", gvm.v},
              {"edges", gvm.edges},
              {"perm", permutation_to_json(gvm.perm)},
              {"markov_matrix", matrix_to_json(m)},
              {"oriented_markov_matrix", matrix_to_json(om)},
              {"trace_om", int_to_json(om.trace())}});
    return 0;
}

int run_verify(const std::string& suite, int n_max, long K, long count, unsigned seed,
               long samples) {
    VerifyResult res;
    if (suite == "trace")
        res = verify_trace(n_max, samples, seed);
    else if (suite == "power")
        res = verify_power(n_max, static_cast<int>(K));
    else if (suite == "product")
        res = verify_product(n_max);
    else if (suite == "forcing")
        res = verify_forcing(n_max, K, env_cap());
    else if (suite == "tree-trace")
        res = verify_tree_trace(count, 3, 9, seed);
    else if (suite == "walk-counts")
        res = verify_walk_counts(n_max, static_cast<int>(K), env_cap());
    else
        throw domain_error("unknown verify suite: " + suite);

    Json report{{"suite", suite}, {"checked", res.checked}, {"pass", res.pass}};
    if (!res.pass) report["counterexample"] = res.counterexample;
    emit(report);
    return res.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact one-dimensional combinatorial dynamics"};
    app.require_subcommand(1);
    int exit_code = 0;

    // perm analyze / perm walks
    CLI::App* perm = app.add_subcommand("perm", "Markov analysis of a permutation");
    perm->require_subcommand(1);
    {
        CLI::App* analyze = perm->add_subcommand("analyze", "matrices, traces and walk counts");
        auto flags = std::make_shared<PermFlags>();
        auto power_bound = std::make_shared<int>(4);
        auto with_dot = std::make_shared<bool>(false);
        auto table = std::make_shared<bool>(false);
        flags->attach(analyze);
        analyze->add_option("--power", *power_bound, "largest matrix power to report (default 4)");
        analyze->add_flag("--dot", *with_dot, "include the DOT rendering of the oriented graph");
        analyze->add_flag("--table", *table, "human-readable tables instead of JSON");
        analyze->callback([=, &exit_code] {
            exit_code = run_perm_analyze(flags->get(), *power_bound, *with_dot, *table);
        });
    }
    {
        CLI::App* walks = perm->add_subcommand("walks", "closed walks in the oriented graph");
        auto flags = std::make_shared<PermFlags>();
        auto length = std::make_shared<int>(1);
        auto base = std::make_shared<int>(0);
        auto sign = std::make_shared<std::string>();
        auto nonrep = std::make_shared<bool>(false);
        flags->attach(walks);
        walks->add_option("--length", *length, "walk length")->required();
        walks->add_option("--base", *base, "base vertex (omit for rotation classes)");
        walks->add_option("--sign", *sign, "keep only walks of this sign (+ or -)");
        walks->add_flag("--nonrepetitive", *nonrep, "keep only non-repetitive walks");
        walks->callback([=, &exit_code] {
            exit_code = run_perm_walks(flags->get(), *length, *base, *sign, *nonrep);
        });
    }

    // pwl periods
    CLI::App* pwl = app.add_subcommand("pwl", "exact piecewise-linear dynamics");
    pwl->require_subcommand(1);
    {
        CLI::App* periods = pwl->add_subcommand("periods", "least periods with exact witnesses");
        auto flags = std::make_shared<PermFlags>();
        auto upto = std::make_shared<long>(6);
        auto cap = std::make_shared<unsigned long long>(0);
        flags->attach(periods);
        periods->add_option("--upto", *upto, "largest period to search (default 6)");
        periods->add_option("--cap", *cap, "piece exploration cap (default COMBDYN_CAP or 10^6)");
        periods->callback([=, &exit_code] {
            exit_code = run_pwl_periods(flags->get(), *upto, *cap ? *cap : env_cap());
        });
    }

    // order cmp / forced / remove-ones
    CLI::App* order = app.add_subcommand("order", "forcing orders on the positive integers");
    order->require_subcommand(1);
    {
        CLI::App* cmp = order->add_subcommand("cmp", "compare two periods");
        auto m = std::make_shared<long>(0);
        auto n = std::make_shared<long>(0);
        cmp->add_option("m", *m)->required();
        cmp->add_option("n", *n)->required();
        cmp->callback([=, &exit_code] { exit_code = run_order_cmp(*m, *n); });
    }
    {
        CLI::App* forced = order->add_subcommand("forced", "the set of forced periods");
        auto n = std::make_shared<long>(0);
        auto model = std::make_shared<std::string>("sharkovsky");
        auto upto = std::make_shared<long>(0);
        forced->add_option("n", *n)->required();
        forced->add_option("--model", *model, "sharkovsky | basic | tree");
        forced->add_option("--upto", *upto, "truncation bound")->required();
        forced->callback([=, &exit_code] { exit_code = run_order_forced(*n, *model, *upto); });
    }
    {
        CLI::App* ro = order->add_subcommand("remove-ones", "clear low bits down to zero");
        auto v = std::make_shared<long>(0);
        ro->add_option("v", *v)->required();
        ro->callback([=] { emit(Json(remove_ones(*v))); });
    }

    // tree analyze / graph analyze
    {
        CLI::App* tree = app.add_subcommand("tree", "vertex maps on trees");
        tree->require_subcommand(1);
        CLI::App* analyze = tree->add_subcommand("analyze", "matrices, trace, walk search");
        auto path = std::make_shared<std::string>();
        auto walk_len = std::make_shared<long>(-1);
        auto with_dot = std::make_shared<bool>(false);
        auto table = std::make_shared<bool>(false);
        analyze->add_option("file", *path, "tree JSON file")->required();
        analyze->add_option("--walk-length", *walk_len, "search for a negative non-repetitive walk");
        analyze->add_flag("--dot", *with_dot, "include DOT of the Markov graph");
        analyze->add_flag("--table", *table, "human-readable output");
        analyze->callback([=, &exit_code] {
            exit_code = run_tree_analyze(
                *path, *walk_len >= 0 ? std::optional<long>(*walk_len) : std::nullopt, *with_dot,
                *table);
        });
    }
    {
        CLI::App* graph = app.add_subcommand("graph", "vertex maps on graphs with explicit routes");
        graph->require_subcommand(1);
        CLI::App* analyze = graph->add_subcommand("analyze", "matrices and trace");
        auto path = std::make_shared<std::string>();
        analyze->add_option("file", *path, "graph JSON file")->required();
        analyze->callback([=, &exit_code] { exit_code = run_graph_analyze(*path); });
    }

    // verify
    {
        CLI::App* verify = app.add_subcommand("verify", "exhaustive/seeded invariant sweeps");
        auto suite = std::make_shared<std::string>();
        auto n_max = std::make_shared<int>(5);
        auto upto = std::make_shared<long>(8);
        auto count = std::make_shared<long>(200);
        auto seed = std::make_shared<unsigned>(20240801);
        auto samples = std::make_shared<long>(10000);
        verify
            ->add_option("suite", *suite,
                         "trace | power | product | forcing | tree-trace | walk-counts")
            ->required();
        verify->add_option("--n-max", *n_max, "largest permutation size");
        verify->add_option("--upto", *upto, "power/period bound");
        verify->add_option("--count", *count, "number of random instances");
        verify->add_option("--seed", *seed, "random seed");
        verify->add_option("--samples", *samples, "random derangement samples at n = 7");
        verify->callback([=, &exit_code] {
            exit_code = run_verify(*suite, *n_max, *upto, *count, *seed, *samples);
        });
    }

    // export dot
    {
        CLI::App* exp = app.add_subcommand("export", "export graphs");
        exp->require_subcommand(1);
        CLI::App* dot = exp->add_subcommand("dot", "DOT of a Markov graph");
        auto flags = std::make_shared<PermFlags>();
        auto tree_path = std::make_shared<std::string>();
        flags->attach(dot);
        dot->add_option("--tree", *tree_path, "tree JSON file");
        dot->callback([=] {
            if (!tree_path->empty()) {
                const TreeVertexMap tvm = tree_vertex_map_from_json(load_json_file(*tree_path));
                std::cout << to_dot(tree_markov_graph(tvm), "tree_markov");
            } else {
                std::cout << to_dot(markov_graph(flags->get()));
            }
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
