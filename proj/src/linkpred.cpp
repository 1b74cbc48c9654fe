#include "navtime/linkpred.hpp"

#include <algorithm>
#include <cmath>

#include "navtime/errors.hpp"
#include "navtime/rng.hpp"

namespace navtime {

namespace {

std::vector<NodeId> common_neighbors(const Graph& g, NodeId a, NodeId b) {
    std::vector<NodeId> out;
    auto na = g.neighbors(a);
    auto nb = g.neighbors(b);
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                          std::back_inserter(out));
    return out;
}

}  // namespace

std::vector<ScoredEdge> score_candidates(const Graph& g,
                                         const std::vector<CandidateEdge>& candidates,
                                         LinkScore method) {
    std::vector<ScoredEdge> out;
    out.reserve(candidates.size());
    for (const CandidateEdge& e : candidates) {
        const double dq = g.degree(e.q);
        const double dc = g.degree(e.c);
        double score = 0.0;
        if (method == LinkScore::preferential_attachment) {
            score = dq * dc;
        } else {
            const std::vector<NodeId> common = common_neighbors(g, e.q, e.c);
            switch (method) {
                case LinkScore::resource_allocation:
                    for (NodeId z : common) score += 1.0 / g.degree(z);
                    break;
                case LinkScore::adamic_adar:
                    for (NodeId z : common) score += 1.0 / std::log(g.degree(z));
                    break;
                case LinkScore::jaccard: {
                    const double union_size = dq + dc - static_cast<double>(common.size());
                    score = union_size > 0 ? common.size() / union_size : 0.0;
                    break;
                }
                default:
                    break;
            }
        }
        out.push_back({e, score});
    }
    return out;
}

std::vector<CandidateEdge> top_k(const std::vector<ScoredEdge>& scored, int k) {
    if (k < 0 || static_cast<std::size_t>(k) > scored.size()) {
        throw UsageError("top_k: k must be in [0, |scored|]");
    }
    std::vector<ScoredEdge> ranked = scored;
    std::sort(ranked.begin(), ranked.end(), [](const ScoredEdge& a, const ScoredEdge& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.edge < b.edge;
    });
    std::vector<CandidateEdge> out;
    out.reserve(k);
    for (int i = 0; i < k; ++i) out.push_back(ranked[i].edge);
    return out;
}

std::vector<CandidateEdge> random_k(const std::vector<CandidateEdge>& candidates,
                                    int k, std::mt19937_64& rng) {
    if (k < 0 || static_cast<std::size_t>(k) > candidates.size()) {
        throw UsageError("random_k: k must be in [0, |candidates|]");
    }
    std::vector<CandidateEdge> pool = candidates;
    const std::size_t n = pool.size();
    for (int i = 0; i < k; ++i) {
        std::size_t j = i + uniform_below(rng, n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace navtime
