#pragma once

#include <random>
#include <string>
#include <vector>

#include "navtime/graph.hpp"

namespace navtime {

/// Neighborhood-based link-prediction indices, computed on the original
/// undirected graph.
enum class LinkScore {
    resource_allocation,
    jaccard,
    adamic_adar,
    preferential_attachment,
};

struct ScoredEdge {
    CandidateEdge edge;
    double score = 0.0;
};

/// Scores every candidate (q, c). With Z = N(q) intersect N(c):
///   resource allocation   sum_{z in Z} 1/d_z
///   jaccard               |Z| / |N(q) union N(c)|
///   adamic-adar           sum_{z in Z} 1/ln d_z   (d_z >= 2 for any z in Z)
///   preferential attach.  d_q * d_c
/// Output order matches the input order.
std::vector<ScoredEdge> score_candidates(const Graph& g,
                                         const std::vector<CandidateEdge>& candidates,
                                         LinkScore method);

/// The k highest-scoring edges; ties resolve to the lexicographically
/// smallest (q, c). Deterministic.
std::vector<CandidateEdge> top_k(const std::vector<ScoredEdge>& scored, int k);

/// Uniform k-subset without replacement, returned in draw order (so prefixes
/// of a draw with k = |candidates| form nested uniform selections).
std::vector<CandidateEdge> random_k(const std::vector<CandidateEdge>& candidates,
                                    int k, std::mt19937_64& rng);

}  // namespace navtime
