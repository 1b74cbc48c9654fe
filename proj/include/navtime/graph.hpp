#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace navtime {

using NodeId = int;

/// Undirected simple graph. Nodes carry their original string labels and are
/// addressed by dense ids 0..N-1. Immutable after construction; safe to share
/// across threads.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from labels and raw edges. Self-loops and duplicate
    /// edges are dropped; adjacency lists come out sorted.
    static Graph from_edges(std::vector<std::string> labels,
                            const std::vector<std::pair<NodeId, NodeId>>& edges);

    int node_count() const { return static_cast<int>(adjacency_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    int degree(NodeId i) const { return static_cast<int>(adjacency_[i].size()); }
    std::span<const NodeId> neighbors(NodeId i) const { return adjacency_[i]; }
    bool has_edge(NodeId a, NodeId b) const;

    const std::string& label(NodeId i) const { return node_labels_[i]; }
    const std::vector<std::string>& labels() const { return node_labels_; }

private:
    std::vector<std::string> node_labels_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Disjoint query set Q and target set C covering all nodes. Q induces a
/// connected subgraph (enforced by sample_partition; validate_partition
/// checks it for hand-built instances).
struct Partition {
    std::vector<NodeId> query;   // Q, sorted
    std::vector<NodeId> target;  // C, sorted
};

/// A directed q -> c pair absent from the original edge set.
struct CandidateEdge {
    NodeId q = -1;
    NodeId c = -1;
    auto operator<=>(const CandidateEdge&) const = default;
};

/// Parses a whitespace- or comma-separated edge list, one "label label" pair
/// per line. Lines starting with '#' or '%' are comments; blank lines are
/// skipped. Labels get dense ids in first-appearance order.
/// Throws DataError on malformed lines (with the line number) and on graphs
/// with no nodes or no edges.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// Induced subgraph on the largest connected component, ids re-densified in
/// ascending order of the old ids (so equal-size ties resolve to the
/// component containing the smallest id). Labels are preserved.
Graph largest_component(const Graph& g);

bool is_connected(const Graph& g);

/// True iff the subgraph induced by `nodes` is connected (empty set counts
/// as connected).
bool induced_connected(const Graph& g, const std::vector<NodeId>& nodes);

/// Throws UsageError unless p is a valid partition of g: disjoint cover,
/// both sides nonempty, Q induced-connected.
void validate_partition(const Graph& g, const Partition& p);

/// Rejection-samples a partition: C is a uniform c_size-subset among those
/// whose complement induces a connected Q. Deterministic for a fixed
/// generator state. Throws UsageError when no valid partition is found
/// within `max_attempts`.
Partition sample_partition(const Graph& g, int c_size, std::mt19937_64& rng,
                           int max_attempts = 10000);

/// All absent q -> c pairs with q in Q and c in C, sorted lexicographically
/// by (q, c).
std::vector<CandidateEdge> candidate_edges(const Graph& g, const Partition& p);

}  // namespace navtime
