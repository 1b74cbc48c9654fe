#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "navtime/graph.hpp"

namespace navtime {

enum class Algorithm { greedy, reverse, ra, jaccard, aa, pa, random };

std::string algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);
std::vector<Algorithm> all_algorithms();

struct ExperimentConfig {
    std::string graph_path;
    std::string graph_name;  // defaults to the file stem
    int c_size = 3;
    int trials = 20;
    int k_max = 15;
    std::vector<Algorithm> algorithms;  // empty = all
    std::uint64_t master_seed = 0;
    std::string output_path;
    int partition_attempts = 10000;
    /// Partitions whose candidate set is smaller than k_max are resampled up
    /// to this many times per trial before the run fails.
    int resample_cap = 100;
};

/// One (graph, algorithm, trial, k) measurement. `seed` is the accepted
/// partition seed of the trial, so any row can be reproduced in isolation.
struct ExperimentRecord {
    std::string graph;
    Algorithm algorithm = Algorithm::greedy;
    int trial = 0;
    std::uint64_t seed = 0;
    int k = 0;
    double mean_steps = 0.0;
};

/// Runs the full protocol: per trial, sample a connected-query partition
/// (trial seeds derived from the master seed), then record the mean
/// absorption time of every algorithm's size-k selection for k = 0..k_max.
/// Greedy variants contribute their trajectories; scorers add edges in
/// descending score order; the random baseline adds a per-trial uniform
/// permutation prefix. Fully deterministic for a fixed master seed.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);
std::vector<ExperimentRecord> run_experiment(const Graph& g, const ExperimentConfig& cfg);

/// CSV with header graph,algorithm,trial,seed,k,m; m carries 12 significant
/// digits; LF line endings.
std::string to_csv(const std::vector<ExperimentRecord>& records);
void write_csv(const std::string& path, const std::vector<ExperimentRecord>& records);

}  // namespace navtime
