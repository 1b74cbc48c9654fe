// Test-only reference implementations, deliberately independent of the
// library's Eigen-backed code path: a hand-rolled dense solve for absorption
// times and a union-find connectivity check.
#pragma once

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "navtime/graph.hpp"

namespace testref {

inline std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-14) throw std::runtime_error("singular");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        const double inv = 1.0 / a[col][col];
        for (std::size_t c = col; c < n; ++c) a[col][c] *= inv;
        b[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    return b;
}

struct AbsorptionRef {
    std::vector<double> steps;  // L in Q row order
    double mean = 0.0;          // m under the uniform start distribution
};

/// Expected steps to absorption by direct assembly of I - P_QQ and a dense
/// solve of (I - P_QQ) L = 1.
inline AbsorptionRef absorption_reference(const navtime::Graph& g,
                                          const navtime::Partition& p,
                                          const std::vector<navtime::CandidateEdge>& added) {
    const std::size_t n = p.query.size();
    std::vector<int> row(g.node_count(), -1);
    for (std::size_t r = 0; r < n; ++r) row[p.query[r]] = static_cast<int>(r);

    std::vector<double> out_degree(n);
    for (std::size_t r = 0; r < n; ++r) out_degree[r] = g.degree(p.query[r]);
    for (const auto& e : added) out_degree[row[e.q]] += 1.0;

    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t r = 0; r < n; ++r) {
        a[r][r] = 1.0;
        for (navtime::NodeId nb : g.neighbors(p.query[r])) {
            if (row[nb] >= 0) a[r][row[nb]] -= 1.0 / out_degree[r];
        }
    }
    AbsorptionRef ref;
    ref.steps = solve_dense(std::move(a), std::vector<double>(n, 1.0));
    ref.mean = std::accumulate(ref.steps.begin(), ref.steps.end(), 0.0) /
               static_cast<double>(n);
    return ref;
}

/// Union-find connectivity of the subgraph induced by `nodes`.
inline bool connected_by_union_find(const navtime::Graph& g,
                                    const std::vector<navtime::NodeId>& nodes) {
    if (nodes.empty()) return true;
    std::vector<int> parent(g.node_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<char> member(g.node_count(), 0);
    for (auto v : nodes) member[v] = 1;

    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto u : nodes) {
        for (auto v : g.neighbors(u)) {
            if (member[v]) parent[find(u)] = find(v);
        }
    }
    const int root = find(nodes.front());
    for (auto v : nodes) {
        if (find(v) != root) return false;
    }
    return true;
}

}  // namespace testref
