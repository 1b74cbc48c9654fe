// Command-line front end: experiment runner, property checks, exhaustive
// comparison. Exit codes: 0 success, 1 usage/config error, 2 data error,
// 3 property-check violations.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "navtime/absorbing.hpp"
#include "navtime/errors.hpp"
#include "navtime/greedy.hpp"
#include "navtime/harness.hpp"
#include "navtime/oracle.hpp"
#include "navtime/rng.hpp"

namespace {

struct RunOptions {
    std::string graph;
    int c_size = 3;
    int trials = 20;
    int k_max = 15;
    // Reverse greedy is opt-in: its cost dominates on large graphs when k
    // is small.
    std::vector<std::string> algorithms = {"greedy", "ra", "jaccard",
                                           "aa", "pa", "random"};
    std::uint64_t seed = 0;
    std::string out;
};

struct CheckOptions {
    std::string property;
    int instances = 100;
    std::uint64_t seed = 1;
    long walks = 100000;
    std::string out;
};

struct ExactOptions {
    std::string graph;
    int c_size = 1;
    int k = 1;
    std::uint64_t seed = 1;
};

int do_run(const RunOptions& opt) {
    navtime::ExperimentConfig cfg;
    cfg.graph_path = opt.graph;
    cfg.c_size = opt.c_size;
    cfg.trials = opt.trials;
    cfg.k_max = opt.k_max;
    cfg.master_seed = opt.seed;
    cfg.output_path = opt.out;
    for (const std::string& name : opt.algorithms) {
        auto algo = navtime::parse_algorithm(name);
        if (!algo) throw navtime::UsageError("unknown algorithm: " + name);
        cfg.algorithms.push_back(*algo);
    }
    const auto records = navtime::run_experiment(cfg);
    navtime::write_csv(cfg.output_path, records);
    std::cout << "wrote " << records.size() << " records to " << cfg.output_path << "\n";
    return 0;
}

int do_check(const CheckOptions& opt) {
    navtime::PropertyReport report;
    // Matches the acceptance bound of one 3-sigma miss per 50 instances.
    int allowed_violations = 0;
    if (opt.property == "monotonicity") {
        report = navtime::check_monotonicity(opt.instances, opt.seed);
    } else if (opt.property == "supermodularity") {
        report = navtime::check_supermodularity(opt.instances, opt.seed);
    } else if (opt.property == "sherman-morrison") {
        report = navtime::check_sherman_morrison(opt.instances, opt.seed);
    } else if (opt.property == "montecarlo") {
        report = navtime::check_monte_carlo(opt.instances, opt.seed, opt.walks);
        allowed_violations = std::max(1, static_cast<int>(std::ceil(0.02 * opt.instances)));
    } else {
        throw navtime::UsageError("unknown property: " + opt.property);
    }
    std::cout << report.to_text();
    if (!opt.out.empty()) {
        std::ofstream out(opt.out, std::ios::binary);
        if (!out) throw navtime::DataError("cannot open output file: " + opt.out);
        out << report.to_csv();
    }
    if (report.violations > allowed_violations) return 3;
    std::cout << "OK (" << report.violations << " violations, allowed "
              << allowed_violations << ")\n";
    return 0;
}

int do_exact(const ExactOptions& opt) {
    const navtime::Graph g =
        navtime::largest_component(navtime::load_edge_list_file(opt.graph));
    std::mt19937_64 rng(opt.seed);
    const navtime::Partition p = navtime::sample_partition(g, opt.c_size, rng);
    const auto candidates = navtime::candidate_edges(g, p);
    if (opt.k < 0 || static_cast<std::size_t>(opt.k) > candidates.size()) {
        throw navtime::UsageError("k must be in [0, " +
                                  std::to_string(candidates.size()) + "]");
    }

    const navtime::AbsorbingSystem base(g, p);
    const auto exhaustive = navtime::exhaustive_best_k(g, p, candidates, opt.k);
    const auto greedy = navtime::greedy_descent(base, candidates, opt.k);
    const double greedy_m = greedy.trajectory.back();

    auto print_edges = [&](const std::vector<navtime::CandidateEdge>& edges) {
        for (const auto& e : edges) {
            std::cout << " (" << g.label(e.q) << "->" << g.label(e.c) << ")";
        }
        std::cout << "\n";
    };
    std::cout << "graph: N=" << g.node_count() << " M=" << g.edge_count()
              << " |Q|=" << p.query.size() << " |C|=" << p.target.size()
              << " candidates=" << candidates.size() << "\n";
    std::printf("base m:     %.12g\n", base.absorption_time());
    std::printf("optimum m:  %.12g  edges:", exhaustive.best_m);
    print_edges(exhaustive.best);
    std::printf("greedy m:   %.12g  edges:", greedy_m);
    print_edges(greedy.chosen);
    std::printf("ratio:      %.12g\n",
                exhaustive.best_m > 0 ? greedy_m / exhaustive.best_m : 1.0);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expected absorption time of random walks between node sets, "
                 "and greedy edge placement to reduce it"};
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "run the experiment protocol, write CSV");
    run->add_option("--graph", run_opt.graph, "edge-list file")->required();
    run->add_option("--c-size", run_opt.c_size, "target set size")->required();
    run->add_option("--trials", run_opt.trials, "number of sampled partitions");
    run->add_option("--k-max", run_opt.k_max, "largest number of added edges");
    run->add_option("--algorithms", run_opt.algorithms,
                    "comma-separated subset of "
                    "greedy,reverse,ra,jaccard,aa,pa,random "
                    "(default: all but reverse)")
        ->delimiter(',');
    run->add_option("--seed", run_opt.seed, "master seed");
    run->add_option("--out", run_opt.out, "output CSV path")->required();

    CheckOptions check_opt;
    CLI::App* check = app.add_subcommand("check", "run a property check suite");
    check->add_option("--property", check_opt.property,
                      "monotonicity|supermodularity|sherman-morrison|montecarlo")
        ->required();
    check->add_option("--instances", check_opt.instances, "number of random instances");
    check->add_option("--seed", check_opt.seed, "master seed");
    check->add_option("--walks", check_opt.walks, "walks per instance (montecarlo)");
    check->add_option("--out", check_opt.out, "optional CSV report path");

    ExactOptions exact_opt;
    CLI::App* exact = app.add_subcommand(
        "exact", "compare greedy descent against exhaustive search");
    exact->add_option("--graph", exact_opt.graph, "edge-list file")->required();
    exact->add_option("--c-size", exact_opt.c_size, "target set size")->required();
    exact->add_option("--k", exact_opt.k, "edges to add")->required();
    exact->add_option("--seed", exact_opt.seed, "partition seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return do_run(run_opt);
        if (check->parsed()) return do_check(check_opt);
        if (exact->parsed()) return do_exact(exact_opt);
    } catch (const navtime::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const navtime::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
