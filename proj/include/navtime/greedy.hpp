#pragma once

#include <string>
#include <vector>

#include "navtime/absorbing.hpp"
#include "navtime/graph.hpp"

namespace navtime {

enum class GreedyVariant { descent, reverse };

struct GreedyResult {
    std::vector<CandidateEdge> chosen;
    /// Mean absorption times along the run. For descent: m after 0..k
    /// additions (non-increasing, length k+1). For reverse: m at the
    /// all-added state and after each removal (non-decreasing, length
    /// |candidates| - k + 1).
    std::vector<double> trajectory;
    GreedyVariant algorithm = GreedyVariant::descent;
};

/// Adds k candidate edges one at a time, each step committing the edge with
/// the largest marginal reduction of the mean absorption time. Exact ties,
/// and plateaus where the best gain is <= 1e-12, resolve to the
/// lexicographically smallest (q, c). Deterministic.
GreedyResult greedy_descent(AbsorbingSystem sys,
                            const std::vector<CandidateEdge>& candidates, int k);

/// Starts from the system with every candidate added (the minimizer of m)
/// and repeatedly removes the edge whose removal increases m the least until
/// exactly k remain. `sys` supplies graph, partition and start distribution
/// and must not have added edges of its own.
GreedyResult reverse_greedy(const AbsorbingSystem& sys,
                            const std::vector<CandidateEdge>& candidates, int k);

}  // namespace navtime
