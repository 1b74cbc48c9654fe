#pragma once

#include <Eigen/Dense>
#include <vector>

#include "navtime/graph.hpp"

namespace navtime {

/// Absorbing random-walk system for a partition (Q, C) of a graph, plus a
/// set of added q -> c edges.
///
/// The walk moves from a transient node i to a uniform out-neighbor, where
/// the out-neighborhood is the original adjacency plus any added edges from
/// i; nodes in C have their out-links removed and absorb the walk. The
/// transient block P_QQ holds the Q-to-Q transition probabilities, and the
/// fundamental matrix
///
///     F = (I - P_QQ)^-1
///
/// gives in entry (i, j) the expected number of visits to j for a walk
/// started at i. Cached alongside F:
///
///     L = F 1        expected steps to absorption per start node,
///     w = F^T s      expected visits per node under the start distribution,
///     m = s^T L      mean absorption time, the quantity everything else
///                    minimizes.
///
/// Adding an edge (q, c) rescales row q of P_QQ by d/(d+1) (d = out-degree
/// of q before the addition), a rank-1 change of I - P_QQ. F is maintained
/// under additions and removals by the Sherman-Morrison correction
///
///     add:    F' = F - F e_q (F(q,:) - e_q^T) / (d + F(q,q))
///     remove: F' = F + F e_q (F(q,:) - e_q^T) / (d - F(q,q))
///
/// in O(|Q|^2). Every `rebuild_interval` updates, and whenever a cheap
/// residual check detects drift, F is recomputed from scratch by a dense
/// solve.
///
/// Thread-safety: absorption_time/marginal_gain/marginal_loss are pure reads
/// and may run concurrently; add_edge/remove_edge need exclusive access. The
/// referenced Graph must outlive the system.
class AbsorbingSystem {
public:
    /// Max-abs tolerance on ||(I - P_QQ) F - I|| enforced at every rebuild.
    static constexpr double kResidualTolerance = 1e-8;
    /// Sherman-Morrison denominators closer to zero than this trigger a
    /// full rebuild instead of the rank-1 path.
    static constexpr double kDenominatorFloor = 1e-12;
    static constexpr int kDefaultRebuildInterval = 50;

    /// Builds the system by a dense linear solve. `start` is the start
    /// distribution over Q in row order (uniform when empty).
    /// Throws UsageError for invalid partitions or candidate sets, and
    /// DataError naming an offending node when some q cannot reach C.
    AbsorbingSystem(const Graph& g, const Partition& p,
                    const std::vector<CandidateEdge>& added = {},
                    std::vector<double> start = {});

    /// Mean absorption time m = s^T L.
    double absorption_time() const { return mean_steps_; }

    /// m(current) - m(current + e), evaluated from the cached vectors
    /// without mutating the system. Nonnegative up to rounding.
    double marginal_gain(const CandidateEdge& e) const;

    /// m(current - e) - m(current) for a previously added e; pure read.
    double marginal_loss(const CandidateEdge& e) const;

    /// Commits a candidate edge via the rank-1 update (or a rebuild per the
    /// drift policy). Throws UsageError on duplicates or non-candidates.
    void add_edge(const CandidateEdge& e);

    /// Reverts a previously added edge. Original graph edges are never
    /// removable. Throws UsageError when e was not added.
    void remove_edge(const CandidateEdge& e);

    int transient_count() const { return static_cast<int>(query_nodes_.size()); }
    const std::vector<NodeId>& query_nodes() const { return query_nodes_; }
    const std::vector<NodeId>& target_nodes() const { return target_nodes_; }
    Partition partition() const { return {query_nodes_, target_nodes_}; }
    const Graph& graph() const { return *graph_; }
    const std::vector<CandidateEdge>& added_edges() const { return added_; }

    const Eigen::MatrixXd& fundamental_matrix() const { return fundamental_; }
    const Eigen::VectorXd& expected_steps() const { return steps_; }
    const Eigen::VectorXd& start_distribution() const { return start_; }
    /// Current out-degree of a query node (base degree + added edges).
    int out_degree(NodeId q) const { return out_degree_[row_of(q)]; }

    /// Full residual ||(I - P_QQ) F - I||_max; O(|Q|^3), meant for tests.
    double residual() const;

    int rebuild_interval() const { return rebuild_interval_; }
    void set_rebuild_interval(int interval);

private:
    int row_of(NodeId q) const;
    void require_candidate(const CandidateEdge& e) const;
    void check_reachability() const;
    void rebuild();
    void refresh_cached_vectors();
    void apply_rank1(int row, double coefficient);
    double steps_residual() const;

    const Graph* graph_ = nullptr;
    std::vector<NodeId> query_nodes_;   // sorted
    std::vector<NodeId> target_nodes_;  // sorted
    std::vector<int> row_of_node_;      // node id -> row, -1 outside Q
    std::vector<int> out_degree_;       // per row
    std::vector<CandidateEdge> added_;  // insertion order

    Eigen::MatrixXd p_qq_;
    Eigen::MatrixXd fundamental_;
    Eigen::VectorXd steps_;    // L
    Eigen::VectorXd visits_;   // w = F^T s
    Eigen::VectorXd start_;    // s
    double mean_steps_ = 0.0;  // m

    int rebuild_interval_ = kDefaultRebuildInterval;
    int updates_since_rebuild_ = 0;
};

}  // namespace navtime
