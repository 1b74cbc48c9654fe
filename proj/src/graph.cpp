#include "navtime/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "navtime/errors.hpp"
#include "navtime/rng.hpp"

namespace navtime {

Graph Graph::from_edges(std::vector<std::string> labels,
                        const std::vector<std::pair<NodeId, NodeId>>& edges) {
    Graph g;
    g.node_labels_ = std::move(labels);
    const int n = static_cast<int>(g.node_labels_.size());
    g.adjacency_.assign(n, {});

    std::set<std::pair<NodeId, NodeId>> seen;
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n) throw UsageError("edge endpoint out of range");
        if (a == b) continue;  // self-loop
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) continue;  // duplicate
        g.adjacency_[a].push_back(b);
        g.adjacency_[b].push_back(a);
    }
    for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
    g.edge_count_ = seen.size();
    return g;
}

bool Graph::has_edge(NodeId a, NodeId b) const {
    const auto& adj = adjacency_[a];
    return std::binary_search(adj.begin(), adj.end(), b);
}

Graph load_edge_list(std::istream& in) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> id_of;
    std::vector<std::pair<NodeId, NodeId>> edges;

    auto intern = [&](const std::string& label) {
        auto [it, inserted] = id_of.try_emplace(label, static_cast<NodeId>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream tokens(line);
        std::string a, b, extra;
        if (!(tokens >> a)) continue;  // blank line
        if (a.front() == '#' || a.front() == '%') continue;
        if (!(tokens >> b) || (tokens >> extra)) {
            throw DataError("line " + std::to_string(line_no) +
                            ": expected exactly 2 tokens");
        }
        const NodeId first = intern(a);  // sequenced: ids follow appearance order
        const NodeId second = intern(b);
        edges.emplace_back(first, second);
    }

    if (labels.empty()) throw DataError("empty graph: no edges found");
    Graph g = Graph::from_edges(std::move(labels), edges);
    if (g.edge_count() == 0) throw DataError("empty graph: no usable edges after deduplication");
    return g;
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open graph file: " + path);
    return load_edge_list(in);
}

namespace {

// Marks the component containing `start`; returns its members in ascending order.
std::vector<NodeId> component_of(const Graph& g, NodeId start, std::vector<char>& visited) {
    std::vector<NodeId> members;
    std::queue<NodeId> frontier;
    visited[start] = 1;
    frontier.push(start);
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop();
        members.push_back(u);
        for (NodeId v : g.neighbors(u)) {
            if (!visited[v]) {
                visited[v] = 1;
                frontier.push(v);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

}  // namespace

Graph largest_component(const Graph& g) {
    if (g.node_count() == 0) throw UsageError("largest_component: empty graph");
    std::vector<char> visited(g.node_count(), 0);
    std::vector<NodeId> best;
    for (NodeId start = 0; start < g.node_count(); ++start) {
        if (visited[start]) continue;
        auto members = component_of(g, start, visited);
        // Strict > keeps the earliest (smallest-id) component on size ties.
        if (members.size() > best.size()) best = std::move(members);
    }

    std::vector<NodeId> new_id(g.node_count(), -1);
    std::vector<std::string> labels;
    labels.reserve(best.size());
    for (std::size_t i = 0; i < best.size(); ++i) {
        new_id[best[i]] = static_cast<NodeId>(i);
        labels.push_back(g.label(best[i]));
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u : best) {
        for (NodeId v : g.neighbors(u)) {
            if (u < v) edges.emplace_back(new_id[u], new_id[v]);
        }
    }
    return Graph::from_edges(std::move(labels), edges);
}

bool is_connected(const Graph& g) {
    if (g.node_count() == 0) return false;
    std::vector<char> visited(g.node_count(), 0);
    return static_cast<int>(component_of(g, 0, visited).size()) == g.node_count();
}

bool induced_connected(const Graph& g, const std::vector<NodeId>& nodes) {
    if (nodes.empty()) return true;
    std::vector<char> member(g.node_count(), 0);
    for (NodeId v : nodes) member[v] = 1;

    std::vector<char> visited(g.node_count(), 0);
    std::queue<NodeId> frontier;
    visited[nodes.front()] = 1;
    frontier.push(nodes.front());
    std::size_t reached = 0;
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop();
        ++reached;
        for (NodeId v : g.neighbors(u)) {
            if (member[v] && !visited[v]) {
                visited[v] = 1;
                frontier.push(v);
            }
        }
    }
    return reached == nodes.size();
}

void validate_partition(const Graph& g, const Partition& p) {
    if (p.query.empty() || p.target.empty()) {
        throw UsageError("partition: both Q and C must be nonempty");
    }
    std::vector<char> side(g.node_count(), 0);
    for (NodeId v : p.query) {
        if (v < 0 || v >= g.node_count() || side[v]) throw UsageError("partition: invalid Q");
        side[v] = 1;
    }
    for (NodeId v : p.target) {
        if (v < 0 || v >= g.node_count() || side[v]) {
            throw UsageError("partition: C overlaps Q or is invalid");
        }
        side[v] = 2;
    }
    if (p.query.size() + p.target.size() != static_cast<std::size_t>(g.node_count())) {
        throw UsageError("partition: Q and C must cover all nodes");
    }
    if (!induced_connected(g, p.query)) {
        throw UsageError("partition: query set does not induce a connected subgraph");
    }
}

Partition sample_partition(const Graph& g, int c_size, std::mt19937_64& rng,
                           int max_attempts) {
    const int n = g.node_count();
    if (c_size < 1 || c_size > n - 1) {
        throw UsageError("sample_partition: c_size must be in [1, N-1]");
    }

    std::vector<NodeId> ids(n);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        for (int i = 0; i < n; ++i) ids[i] = i;
        // Partial Fisher-Yates: the first c_size entries are a uniform subset.
        for (int i = 0; i < c_size; ++i) {
            int j = i + static_cast<int>(uniform_below(rng, n - i));
            std::swap(ids[i], ids[j]);
        }
        Partition p;
        p.target.assign(ids.begin(), ids.begin() + c_size);
        std::sort(p.target.begin(), p.target.end());
        p.query.assign(ids.begin() + c_size, ids.end());
        std::sort(p.query.begin(), p.query.end());
        if (induced_connected(g, p.query)) return p;
    }
    throw UsageError("sample_partition: no connected-query partition found in " +
                     std::to_string(max_attempts) + " attempts");
}

std::vector<CandidateEdge> candidate_edges(const Graph& g, const Partition& p) {
    std::vector<CandidateEdge> out;
    for (NodeId q : p.query) {
        for (NodeId c : p.target) {
            if (!g.has_edge(q, c)) out.push_back({q, c});
        }
    }
    return out;  // lexicographic: Q and C are sorted, loops are nested
}

}  // namespace navtime
