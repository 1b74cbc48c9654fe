#include "navtime/greedy.hpp"

#include <algorithm>
#include <limits>

#include "navtime/errors.hpp"

namespace navtime {

namespace {

constexpr double kPlateauTolerance = 1e-12;

std::vector<CandidateEdge> sorted_unique(std::vector<CandidateEdge> edges) {
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw UsageError("candidate set contains duplicates");
    }
    return edges;
}

}  // namespace

GreedyResult greedy_descent(AbsorbingSystem sys,
                            const std::vector<CandidateEdge>& candidates, int k) {
    if (k < 0 || static_cast<std::size_t>(k) > candidates.size()) {
        throw UsageError("greedy_descent: k must be in [0, |candidates|]");
    }
    std::vector<CandidateEdge> pool = sorted_unique(candidates);

    GreedyResult result;
    result.algorithm = GreedyVariant::descent;
    result.trajectory.push_back(sys.absorption_time());

    for (int step = 0; step < k; ++step) {
        std::size_t best = 0;
        double best_gain = -1.0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const double gain = sys.marginal_gain(pool[i]);
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        // On an all-zero plateau still commit an edge so |chosen| == k, and
        // make the pick order-independent of rounding noise.
        if (best_gain <= kPlateauTolerance) best = 0;

        sys.add_edge(pool[best]);
        result.chosen.push_back(pool[best]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
        result.trajectory.push_back(sys.absorption_time());
    }
    return result;
}

GreedyResult reverse_greedy(const AbsorbingSystem& sys,
                            const std::vector<CandidateEdge>& candidates, int k) {
    if (k < 0 || static_cast<std::size_t>(k) > candidates.size()) {
        throw UsageError("reverse_greedy: k must be in [0, |candidates|]");
    }
    if (!sys.added_edges().empty()) {
        throw UsageError("reverse_greedy: base system must have no added edges");
    }
    std::vector<CandidateEdge> remaining = sorted_unique(candidates);

    const Eigen::VectorXd& s = sys.start_distribution();
    AbsorbingSystem all_added(sys.graph(), sys.partition(), remaining,
                              std::vector<double>(s.data(), s.data() + s.size()));

    GreedyResult result;
    result.algorithm = GreedyVariant::reverse;
    result.trajectory.push_back(all_added.absorption_time());

    while (remaining.size() > static_cast<std::size_t>(k)) {
        std::size_t worst = 0;
        double least_loss = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            const double loss = all_added.marginal_loss(remaining[i]);
            if (loss < least_loss) {
                least_loss = loss;
                worst = i;
            }
        }
        all_added.remove_edge(remaining[worst]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(worst));
        result.trajectory.push_back(all_added.absorption_time());
    }
    result.chosen = std::move(remaining);
    return result;
}

}  // namespace navtime
