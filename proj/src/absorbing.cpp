#include "navtime/absorbing.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <queue>

#include "navtime/errors.hpp"

namespace navtime {

AbsorbingSystem::AbsorbingSystem(const Graph& g, const Partition& p,
                                 const std::vector<CandidateEdge>& added,
                                 std::vector<double> start)
    : graph_(&g), query_nodes_(p.query), target_nodes_(p.target) {
    validate_partition(g, p);

    row_of_node_.assign(g.node_count(), -1);
    for (int r = 0; r < transient_count(); ++r) row_of_node_[query_nodes_[r]] = r;

    const int n = transient_count();
    if (start.empty()) {
        start_ = Eigen::VectorXd::Constant(n, 1.0 / n);
    } else {
        if (static_cast<int>(start.size()) != n) {
            throw UsageError("start distribution size must equal |Q|");
        }
        double sum = 0.0;
        for (double v : start) {
            if (v < 0.0) throw UsageError("start distribution must be nonnegative");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw UsageError("start distribution must sum to 1");
        }
        start_ = Eigen::Map<const Eigen::VectorXd>(start.data(), n);
    }

    out_degree_.resize(n);
    for (int r = 0; r < n; ++r) out_degree_[r] = g.degree(query_nodes_[r]);
    for (const CandidateEdge& e : added) {
        require_candidate(e);
        if (std::find(added_.begin(), added_.end(), e) != added_.end()) {
            throw UsageError("duplicate candidate edge in added set");
        }
        added_.push_back(e);
        ++out_degree_[row_of(e.q)];
    }

    rebuild();
}

int AbsorbingSystem::row_of(NodeId q) const {
    if (q < 0 || q >= static_cast<int>(row_of_node_.size()) || row_of_node_[q] < 0) {
        throw UsageError("node " + std::to_string(q) + " is not a query node");
    }
    return row_of_node_[q];
}

void AbsorbingSystem::require_candidate(const CandidateEdge& e) const {
    row_of(e.q);
    if (!std::binary_search(target_nodes_.begin(), target_nodes_.end(), e.c)) {
        throw UsageError("candidate target " + std::to_string(e.c) + " is not in C");
    }
    if (graph_->has_edge(e.q, e.c)) {
        throw UsageError("(" + graph_->label(e.q) + ", " + graph_->label(e.c) +
                         ") is an original edge, not a candidate");
    }
}

void AbsorbingSystem::check_reachability() const {
    // A query node reaches C iff it is connected, within the Q-induced
    // subgraph, to some node with a C neighbor or an added edge.
    const Graph& g = *graph_;
    std::vector<char> reaches(transient_count(), 0);
    std::queue<int> frontier;
    for (int r = 0; r < transient_count(); ++r) {
        for (NodeId nb : g.neighbors(query_nodes_[r])) {
            if (row_of_node_[nb] < 0) {
                reaches[r] = 1;
                frontier.push(r);
                break;
            }
        }
    }
    for (const CandidateEdge& e : added_) {
        int r = row_of_node_[e.q];
        if (!reaches[r]) {
            reaches[r] = 1;
            frontier.push(r);
        }
    }
    while (!frontier.empty()) {
        int r = frontier.front();
        frontier.pop();
        for (NodeId nb : g.neighbors(query_nodes_[r])) {
            int rn = row_of_node_[nb];
            if (rn >= 0 && !reaches[rn]) {
                reaches[rn] = 1;
                frontier.push(rn);
            }
        }
    }
    for (int r = 0; r < transient_count(); ++r) {
        if (!reaches[r]) {
            throw DataError("query node '" + g.label(query_nodes_[r]) +
                            "' cannot reach the target set");
        }
    }
}

void AbsorbingSystem::rebuild() {
    check_reachability();
    const int n = transient_count();
    p_qq_.setZero(n, n);
    for (int r = 0; r < n; ++r) {
        const double inv = 1.0 / out_degree_[r];
        for (NodeId nb : graph_->neighbors(query_nodes_[r])) {
            int rn = row_of_node_[nb];
            if (rn >= 0) p_qq_(r, rn) = inv;
        }
    }
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - p_qq_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    fundamental_ = lu.inverse();
    const double res =
        (system * fundamental_ - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!(res <= kResidualTolerance)) {
        throw DataError("absorbing system is numerically singular (residual " +
                        std::to_string(res) + ")");
    }
    updates_since_rebuild_ = 0;
    refresh_cached_vectors();
}

void AbsorbingSystem::refresh_cached_vectors() {
    steps_ = fundamental_.rowwise().sum();
    visits_ = fundamental_.transpose() * start_;
    mean_steps_ = start_.dot(steps_);
}

double AbsorbingSystem::steps_residual() const {
    const Eigen::VectorXd r = steps_ - p_qq_ * steps_;
    return (r.array() - 1.0).abs().maxCoeff();
}

void AbsorbingSystem::apply_rank1(int row, double coefficient) {
    Eigen::VectorXd col = fundamental_.col(row);
    Eigen::RowVectorXd visits_from_row = fundamental_.row(row);
    visits_from_row(row) -= 1.0;
    fundamental_.noalias() += coefficient * col * visits_from_row;
    refresh_cached_vectors();
}

double AbsorbingSystem::marginal_gain(const CandidateEdge& e) const {
    require_candidate(e);
    if (std::find(added_.begin(), added_.end(), e) != added_.end()) {
        throw UsageError("marginal_gain: edge already added");
    }
    const int r = row_of(e.q);
    const double d = out_degree_[r];
    return visits_(r) * (steps_(r) - 1.0) / (d + fundamental_(r, r));
}

double AbsorbingSystem::marginal_loss(const CandidateEdge& e) const {
    auto it = std::find(added_.begin(), added_.end(), e);
    if (it == added_.end()) throw UsageError("marginal_loss: edge was not added");
    const int r = row_of(e.q);
    const double d = out_degree_[r];
    const double denom = d - fundamental_(r, r);
    if (std::abs(denom) < kDenominatorFloor) {
        // Cannot happen for valid systems (original edges alone connect Q to
        // C); solve a scratch system if numerics degenerate this far.
        std::vector<CandidateEdge> remaining(added_.begin(), added_.end());
        remaining.erase(std::find(remaining.begin(), remaining.end(), e));
        std::vector<double> s(start_.data(), start_.data() + start_.size());
        AbsorbingSystem scratch(*graph_, partition(), remaining, std::move(s));
        return scratch.absorption_time() - mean_steps_;
    }
    return visits_(r) * (steps_(r) - 1.0) / denom;
}

void AbsorbingSystem::add_edge(const CandidateEdge& e) {
    require_candidate(e);
    if (std::find(added_.begin(), added_.end(), e) != added_.end()) {
        throw UsageError("add_edge: edge already added");
    }
    const int r = row_of(e.q);
    const double d = out_degree_[r];

    added_.push_back(e);
    ++out_degree_[r];
    p_qq_.row(r) *= d / (d + 1.0);

    if (++updates_since_rebuild_ >= rebuild_interval_) {
        rebuild();
        return;
    }
    const double denom = d + fundamental_(r, r);
    if (std::abs(denom) / (d + 1.0) < kDenominatorFloor) {
        std::cerr << "navtime: degenerate rank-1 denominator on add, rebuilding\n";
        rebuild();
        return;
    }
    apply_rank1(r, -1.0 / denom);
    if (steps_residual() > kResidualTolerance) rebuild();
}

void AbsorbingSystem::remove_edge(const CandidateEdge& e) {
    auto it = std::find(added_.begin(), added_.end(), e);
    if (it == added_.end()) throw UsageError("remove_edge: edge was not added");
    const int r = row_of(e.q);
    const double d = out_degree_[r];  // >= 2: base degree plus the added edge

    added_.erase(it);
    --out_degree_[r];
    p_qq_.row(r) *= d / (d - 1.0);

    if (++updates_since_rebuild_ >= rebuild_interval_) {
        rebuild();
        return;
    }
    const double denom = d - fundamental_(r, r);
    if (std::abs(denom) / (d - 1.0) < kDenominatorFloor) {
        std::cerr << "navtime: degenerate rank-1 denominator on remove, rebuilding\n";
        rebuild();
        return;
    }
    apply_rank1(r, 1.0 / denom);
    if (steps_residual() > kResidualTolerance) rebuild();
}

double AbsorbingSystem::residual() const {
    const int n = transient_count();
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - p_qq_;
    return (system * fundamental_ - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

void AbsorbingSystem::set_rebuild_interval(int interval) {
    if (interval < 1) throw UsageError("rebuild interval must be positive");
    rebuild_interval_ = interval;
}

}  // namespace navtime
