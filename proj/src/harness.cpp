#include "navtime/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "navtime/absorbing.hpp"
#include "navtime/errors.hpp"
#include "navtime/greedy.hpp"
#include "navtime/linkpred.hpp"
#include "navtime/rng.hpp"

namespace navtime {

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::greedy: return "greedy";
        case Algorithm::reverse: return "reverse";
        case Algorithm::ra: return "ra";
        case Algorithm::jaccard: return "jaccard";
        case Algorithm::aa: return "aa";
        case Algorithm::pa: return "pa";
        case Algorithm::random: return "random";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (Algorithm a : all_algorithms()) {
        if (algorithm_name(a) == name) return a;
    }
    return std::nullopt;
}

std::vector<Algorithm> all_algorithms() {
    return {Algorithm::greedy, Algorithm::reverse, Algorithm::ra,
            Algorithm::jaccard, Algorithm::aa, Algorithm::pa, Algorithm::random};
}

namespace {

std::optional<LinkScore> scorer_of(Algorithm a) {
    switch (a) {
        case Algorithm::ra: return LinkScore::resource_allocation;
        case Algorithm::jaccard: return LinkScore::jaccard;
        case Algorithm::aa: return LinkScore::adamic_adar;
        case Algorithm::pa: return LinkScore::preferential_attachment;
        default: return std::nullopt;
    }
}

// m after adding the first 1..k_max edges of `order`, one rank-1 step each.
std::vector<double> prefix_curve(const AbsorbingSystem& base,
                                 const std::vector<CandidateEdge>& order, int k_max) {
    AbsorbingSystem sys = base;
    std::vector<double> curve;
    curve.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) {
        sys.add_edge(order[k - 1]);
        curve.push_back(sys.absorption_time());
    }
    return curve;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.graph_path.empty()) throw UsageError("run_experiment: graph_path is required");
    Graph g = largest_component(load_edge_list_file(cfg.graph_path));
    ExperimentConfig named = cfg;
    if (named.graph_name.empty()) {
        named.graph_name = std::filesystem::path(cfg.graph_path).stem().string();
    }
    return run_experiment(g, named);
}

std::vector<ExperimentRecord> run_experiment(const Graph& g, const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw UsageError("run_experiment: trials must be positive");
    if (cfg.k_max < 0) throw UsageError("run_experiment: k_max must be nonnegative");
    if (cfg.c_size < 1 || cfg.c_size > g.node_count() - 1) {
        throw UsageError("run_experiment: c_size must be in [1, N-1]");
    }
    const std::vector<Algorithm> algorithms =
        cfg.algorithms.empty() ? all_algorithms() : cfg.algorithms;
    const std::string graph_name = cfg.graph_name.empty() ? "graph" : cfg.graph_name;

    std::vector<ExperimentRecord> records;
    records.reserve(static_cast<std::size_t>(cfg.trials) * algorithms.size() *
                    (cfg.k_max + 1));

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t trial_master = derive_seed(cfg.master_seed, trial);

        // Resample until the partition leaves at least k_max candidates.
        Partition partition;
        std::vector<CandidateEdge> candidates;
        std::uint64_t trial_seed = 0;
        bool accepted = false;
        for (int attempt = 0; attempt <= cfg.resample_cap; ++attempt) {
            trial_seed = derive_seed(trial_master, 0, attempt);
            std::mt19937_64 rng(trial_seed);
            partition = sample_partition(g, cfg.c_size, rng, cfg.partition_attempts);
            candidates = candidate_edges(g, partition);
            if (static_cast<int>(candidates.size()) >= cfg.k_max) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            throw UsageError("run_experiment: trial " + std::to_string(trial) +
                             ": no partition with at least " + std::to_string(cfg.k_max) +
                             " candidates after " + std::to_string(cfg.resample_cap + 1) +
                             " attempts");
        }

        const AbsorbingSystem base(g, partition);
        const double base_m = base.absorption_time();

        auto emit = [&](Algorithm a, int k, double m) {
            records.push_back({graph_name, a, trial, trial_seed, k, m});
        };

        for (Algorithm algo : algorithms) {
            emit(algo, 0, base_m);
            if (cfg.k_max == 0) continue;

            if (algo == Algorithm::greedy) {
                const GreedyResult res = greedy_descent(base, candidates, cfg.k_max);
                for (int k = 1; k <= cfg.k_max; ++k) emit(algo, k, res.trajectory[k]);
            } else if (algo == Algorithm::reverse) {
                // One removal run down to a single edge yields every nested
                // size-k selection; m at size k sits at index |cand| - k.
                const GreedyResult res = reverse_greedy(base, candidates, 1);
                for (int k = 1; k <= cfg.k_max; ++k) {
                    emit(algo, k, res.trajectory[candidates.size() - k]);
                }
            } else if (auto scorer = scorer_of(algo)) {
                const auto order = top_k(score_candidates(g, candidates, *scorer),
                                         static_cast<int>(candidates.size()));
                const auto curve = prefix_curve(base, order, cfg.k_max);
                for (int k = 1; k <= cfg.k_max; ++k) emit(algo, k, curve[k - 1]);
            } else {
                std::mt19937_64 rng(derive_seed(trial_master, 1));
                const auto order =
                    random_k(candidates, static_cast<int>(candidates.size()), rng);
                const auto curve = prefix_curve(base, order, cfg.k_max);
                for (int k = 1; k <= cfg.k_max; ++k) emit(algo, k, curve[k - 1]);
            }
        }
    }
    return records;
}

std::string to_csv(const std::vector<ExperimentRecord>& records) {
    std::string out = "graph,algorithm,trial,seed,k,m\n";
    char buf[64];
    for (const ExperimentRecord& r : records) {
        std::snprintf(buf, sizeof(buf), "%.12g", r.mean_steps);
        out += r.graph;
        out += ',';
        out += algorithm_name(r.algorithm);
        out += ',';
        out += std::to_string(r.trial);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += std::to_string(r.k);
        out += ',';
        out += buf;
        out += '\n';
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<ExperimentRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + path);
    out << to_csv(records);
    if (!out) throw DataError("failed writing output file: " + path);
}

}  // namespace navtime
