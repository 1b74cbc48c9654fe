#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "navtime/graph.hpp"

namespace navtime {

struct MonteCarloEstimate {
    double mean = 0.0;       // steps
    double std_error = 0.0;  // sample standard deviation / sqrt(n_walks)
    long n_walks = 0;
    long n_capped = 0;  // walks truncated at the step cap, never hidden
};

/// Simulates absorbing walks: each walk starts at a uniform query node,
/// steps to a uniform out-neighbor (original adjacency plus added edges) and
/// stops on first arrival in C. Throws DataError when more than 1% of walks
/// hit the step cap.
MonteCarloEstimate monte_carlo_absorption(const Graph& g, const Partition& p,
                                          const std::vector<CandidateEdge>& added,
                                          long n_walks, std::mt19937_64& rng,
                                          long step_cap = 1000000);

struct ExhaustiveResult {
    std::vector<CandidateEdge> best;  // lexicographically smallest optimum
    double best_m = 0.0;
};

/// Evaluates every k-combination of candidates by a fresh dense solve.
/// Refuses (UsageError, reporting the count) when the number of
/// combinations exceeds `max_combinations`.
ExhaustiveResult exhaustive_best_k(const Graph& g, const Partition& p,
                                   const std::vector<CandidateEdge>& candidates,
                                   int k, std::uint64_t max_combinations = 1000000);

/// Mean first passage time to `target`: the average over all other nodes of
/// the expected hitting time of `target` by the unmodified random walk.
/// Solved by a self-contained dense elimination, independent of the
/// absorbing-system code path.
double mean_first_passage_time(const Graph& g, NodeId target);

/// Random test instances: connected Erdos-Renyi graphs with a valid sampled
/// partition.
struct InstanceOptions {
    int min_nodes = 8;
    int max_nodes = 30;
    double min_avg_degree = 2.0;
    double max_avg_degree = 6.0;
    int max_c_size = 6;    // c_size is drawn from [1, min(max_c_size, N-2)]
    int fixed_c_size = 0;  // > 0 pins c_size exactly
    int min_candidates = 1;
    int max_candidates = 0;  // 0 = unbounded
};

struct RandomInstance {
    Graph graph;
    Partition partition;
    std::vector<CandidateEdge> candidates;
};

RandomInstance random_instance(std::mt19937_64& rng, const InstanceOptions& opts = {});

/// One checked inequality; lhs and rhs are the two sides as evaluated.
struct PropertyRow {
    std::uint64_t instance_seed = 0;
    std::string quantity;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct PropertyReport {
    std::string property;
    int instances = 0;
    int violations = 0;
    std::vector<PropertyRow> rows;

    std::string to_text() const;
    /// Header: instance_seed,quantity,lhs,rhs,pass
    std::string to_csv() const;
};

/// m(Y) <= m(X) + 1e-9 for random nested subsets X within Y of the
/// candidate set, each side evaluated by a fresh dense solve.
PropertyReport check_monotonicity(int instances, std::uint64_t seed,
                                  const InstanceOptions& opts = {});

/// m(X) - m(X+e) >= m(Y) - m(Y+e) - 1e-9 for random nested X within Y and
/// e outside Y; four fresh solves per instance.
PropertyReport check_supermodularity(int instances, std::uint64_t seed,
                                     const InstanceOptions& opts = {});

constexpr InstanceOptions sherman_morrison_defaults() {
    InstanceOptions opts;
    opts.max_nodes = 50;
    return opts;
}

/// Runs a random add/remove sequence and compares the incrementally
/// maintained fundamental matrix against a from-scratch rebuild after every
/// operation; reports the worst max-abs deviation per instance against 1e-8.
PropertyReport check_sherman_morrison(int instances, std::uint64_t seed,
                                      int sequence_length = 100,
                                      const InstanceOptions& opts = sherman_morrison_defaults());

/// |Monte Carlo mean - analytic m| <= 3 * stderr per instance.
PropertyReport check_monte_carlo(int instances, std::uint64_t seed,
                                 long n_walks = 100000,
                                 const InstanceOptions& opts = {});

}  // namespace navtime
