#include "navtime/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "navtime/absorbing.hpp"
#include "navtime/errors.hpp"
#include "navtime/rng.hpp"

namespace navtime {

MonteCarloEstimate monte_carlo_absorption(const Graph& g, const Partition& p,
                                          const std::vector<CandidateEdge>& added,
                                          long n_walks, std::mt19937_64& rng,
                                          long step_cap) {
    if (n_walks < 1) throw UsageError("monte_carlo_absorption: n_walks must be positive");
    if (step_cap < 1) throw UsageError("monte_carlo_absorption: step_cap must be positive");
    validate_partition(g, p);

    std::vector<char> absorbing(g.node_count(), 0);
    for (NodeId c : p.target) absorbing[c] = 1;
    std::vector<std::vector<NodeId>> extra(g.node_count());
    for (const CandidateEdge& e : added) extra[e.q].push_back(e.c);

    MonteCarloEstimate est;
    est.n_walks = n_walks;
    double mean = 0.0;
    double m2 = 0.0;
    for (long walk = 0; walk < n_walks; ++walk) {
        NodeId node = p.query[uniform_below(rng, p.query.size())];
        long steps = 0;
        while (!absorbing[node] && steps < step_cap) {
            const auto nbrs = g.neighbors(node);
            const std::size_t base = nbrs.size();
            const std::size_t out = base + extra[node].size();
            const std::size_t pick = uniform_below(rng, out);
            node = pick < base ? nbrs[pick] : extra[node][pick - base];
            ++steps;
        }
        if (!absorbing[node]) ++est.n_capped;
        // Welford per-walk update
        const double x = static_cast<double>(steps);
        const double delta = x - mean;
        mean += delta / static_cast<double>(walk + 1);
        m2 += delta * (x - mean);
    }
    est.mean = mean;
    est.std_error =
        n_walks > 1 ? std::sqrt(m2 / static_cast<double>(n_walks - 1) / n_walks) : 0.0;
    if (est.n_capped * 100 > n_walks) {
        throw DataError("monte_carlo_absorption: " + std::to_string(est.n_capped) +
                        " of " + std::to_string(n_walks) +
                        " walks hit the step cap; raise step_cap");
    }
    return est;
}

namespace {

std::uint64_t combination_count(std::size_t n, int k, std::uint64_t cap) {
    // n choose k. The partial products C(n-k+i, i) are nondecreasing, so
    // once one passes the cap it is a valid lower bound and we can stop.
    std::uint64_t count = 1;
    for (int i = 1; i <= k; ++i) {
        count = count * (n - static_cast<std::size_t>(k) + i) / i;
        if (count > cap) return count;
    }
    return count;
}

}  // namespace

ExhaustiveResult exhaustive_best_k(const Graph& g, const Partition& p,
                                   const std::vector<CandidateEdge>& candidates,
                                   int k, std::uint64_t max_combinations) {
    if (k < 0 || static_cast<std::size_t>(k) > candidates.size()) {
        throw UsageError("exhaustive_best_k: k must be in [0, |candidates|]");
    }
    std::vector<CandidateEdge> pool = candidates;
    std::sort(pool.begin(), pool.end());
    const std::uint64_t count = combination_count(pool.size(), k, max_combinations);
    if (count > max_combinations) {
        throw UsageError("exhaustive_best_k: at least " + std::to_string(count) +
                         " combinations exceed the bound of " +
                         std::to_string(max_combinations));
    }

    ExhaustiveResult result;
    result.best_m = std::numeric_limits<double>::infinity();
    std::vector<int> index(k);
    for (int i = 0; i < k; ++i) index[i] = i;
    const int n = static_cast<int>(pool.size());
    while (true) {
        std::vector<CandidateEdge> subset;
        subset.reserve(k);
        for (int i : index) subset.push_back(pool[i]);
        const double m = AbsorbingSystem(g, p, subset).absorption_time();
        // Strict < keeps the lexicographically first optimum (enumeration is
        // in lexicographic order).
        if (m < result.best_m) {
            result.best_m = m;
            result.best = subset;
        }
        if (k == 0) break;
        int pos = k - 1;
        while (pos >= 0 && index[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++index[pos];
        for (int i = pos + 1; i < k; ++i) index[i] = index[i - 1] + 1;
    }
    return result;
}

namespace {

// Dense Gauss-Jordan solve with partial pivoting; deliberately independent
// of the Eigen-backed implementation it cross-checks.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-14) {
            throw DataError("mean_first_passage_time: singular system");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        const double inv = 1.0 / a[col][col];
        for (std::size_t c = col; c < n; ++c) a[col][c] *= inv;
        b[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0.0) continue;
            const double factor = a[r][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    return b;
}

}  // namespace

double mean_first_passage_time(const Graph& g, NodeId target) {
    const int n = g.node_count();
    if (target < 0 || target >= n) throw UsageError("mean_first_passage_time: bad target");
    if (n < 2) throw UsageError("mean_first_passage_time: need at least 2 nodes");

    // Hitting times h(i) for i != target satisfy h = 1 + P|restricted h.
    std::vector<int> row(n, -1);
    int next = 0;
    for (NodeId v = 0; v < n; ++v) {
        if (v != target) row[v] = next++;
    }
    std::vector<std::vector<double>> a(next, std::vector<double>(next, 0.0));
    std::vector<double> b(next, 1.0);
    for (NodeId v = 0; v < n; ++v) {
        if (v == target) continue;
        const int r = row[v];
        a[r][r] = 1.0;
        const double inv = 1.0 / g.degree(v);
        for (NodeId nb : g.neighbors(v)) {
            if (nb != target) a[r][row[nb]] -= inv;
        }
    }
    const std::vector<double> h = solve_dense(std::move(a), std::move(b));
    double total = 0.0;
    for (double v : h) total += v;
    return total / static_cast<double>(next);
}

RandomInstance random_instance(std::mt19937_64& rng, const InstanceOptions& opts) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const int n = opts.min_nodes +
                      static_cast<int>(uniform_below(rng, opts.max_nodes - opts.min_nodes + 1));
        const double avg_degree =
            opts.min_avg_degree +
            uniform_unit(rng) * (opts.max_avg_degree - opts.min_avg_degree);
        const double p_edge = std::min(1.0, avg_degree / (n - 1));

        std::vector<std::string> labels(n);
        for (int i = 0; i < n; ++i) labels[i] = "n" + std::to_string(i);
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (uniform_unit(rng) < p_edge) edges.emplace_back(u, v);
            }
        }
        Graph g = Graph::from_edges(std::move(labels), edges);
        if (g.edge_count() == 0 || !is_connected(g)) continue;

        int c_size;
        if (opts.fixed_c_size > 0) {
            c_size = opts.fixed_c_size;
            if (c_size > n - 1) continue;
        } else {
            const int c_max = std::max(1, std::min(opts.max_c_size, n - 2));
            c_size = 1 + static_cast<int>(uniform_below(rng, c_max));
        }

        Partition p;
        try {
            p = sample_partition(g, c_size, rng, 200);
        } catch (const UsageError&) {
            continue;
        }
        auto candidates = candidate_edges(g, p);
        if (static_cast<int>(candidates.size()) < opts.min_candidates) continue;
        if (opts.max_candidates > 0 &&
            static_cast<int>(candidates.size()) > opts.max_candidates) {
            continue;
        }
        return {std::move(g), std::move(p), std::move(candidates)};
    }
    throw UsageError("random_instance: options admit no instance after 10000 attempts");
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void add_row(PropertyReport& report, std::uint64_t instance_seed, std::string quantity,
             double lhs, double rhs, bool pass) {
    report.rows.push_back({instance_seed, std::move(quantity), lhs, rhs, pass});
    ++report.instances;
    if (!pass) ++report.violations;
}

// Draws nested subsets X within Y of `candidates`; when `need_extra` is set,
// Y leaves at least one candidate out and that candidate is returned as e.
struct NestedDraw {
    std::vector<CandidateEdge> x;
    std::vector<CandidateEdge> y;
    CandidateEdge extra;
};

NestedDraw draw_nested(const std::vector<CandidateEdge>& candidates, bool need_extra,
                       std::mt19937_64& rng) {
    std::vector<CandidateEdge> shuffled = candidates;
    for (std::size_t i = 0; i + 1 < shuffled.size(); ++i) {
        std::size_t j = i + uniform_below(rng, shuffled.size() - i);
        std::swap(shuffled[i], shuffled[j]);
    }
    const std::size_t n = shuffled.size();
    const std::size_t y_max = need_extra ? n - 1 : n;
    const std::size_t y_size = uniform_below(rng, y_max + 1);
    const std::size_t x_size = uniform_below(rng, y_size + 1);
    NestedDraw draw;
    draw.y.assign(shuffled.begin(), shuffled.begin() + y_size);
    draw.x.assign(draw.y.begin(), draw.y.begin() + x_size);
    if (need_extra) draw.extra = shuffled[y_size];
    return draw;
}

}  // namespace

std::string PropertyReport::to_text() const {
    std::ostringstream out;
    out << "property: " << property << "\n"
        << "instances: " << instances << "\n"
        << "violations: " << violations << "\n";
    for (const PropertyRow& row : rows) {
        if (row.pass) continue;
        out << "  VIOLATION seed=" << row.instance_seed << " " << row.quantity
            << " lhs=" << format_double(row.lhs) << " rhs=" << format_double(row.rhs)
            << "\n";
    }
    return out.str();
}

std::string PropertyReport::to_csv() const {
    std::ostringstream out;
    out << "instance_seed,quantity,lhs,rhs,pass\n";
    for (const PropertyRow& row : rows) {
        out << row.instance_seed << "," << row.quantity << "," << format_double(row.lhs)
            << "," << format_double(row.rhs) << "," << (row.pass ? 1 : 0) << "\n";
    }
    return out.str();
}

PropertyReport check_monotonicity(int instances, std::uint64_t seed,
                                  const InstanceOptions& opts) {
    constexpr double kTolerance = 1e-9;
    PropertyReport report;
    report.property = "monotonicity";
    for (int i = 0; i < instances; ++i) {
        const std::uint64_t instance_seed = derive_seed(seed, i);
        std::mt19937_64 rng(instance_seed);
        const RandomInstance inst = random_instance(rng, opts);
        const NestedDraw draw = draw_nested(inst.candidates, false, rng);
        const double m_x =
            AbsorbingSystem(inst.graph, inst.partition, draw.x).absorption_time();
        const double m_y =
            AbsorbingSystem(inst.graph, inst.partition, draw.y).absorption_time();
        add_row(report, instance_seed, "m(Y)<=m(X)", m_y, m_x, m_y <= m_x + kTolerance);
    }
    return report;
}

PropertyReport check_supermodularity(int instances, std::uint64_t seed,
                                     const InstanceOptions& opts) {
    constexpr double kTolerance = 1e-9;
    PropertyReport report;
    report.property = "supermodularity";
    for (int i = 0; i < instances; ++i) {
        const std::uint64_t instance_seed = derive_seed(seed, i);
        std::mt19937_64 rng(instance_seed);
        const RandomInstance inst = random_instance(rng, opts);
        NestedDraw draw = draw_nested(inst.candidates, true, rng);

        auto m_of = [&](const std::vector<CandidateEdge>& added) {
            return AbsorbingSystem(inst.graph, inst.partition, added).absorption_time();
        };
        auto with = [&](std::vector<CandidateEdge> base) {
            base.push_back(draw.extra);
            return base;
        };
        const double gain_x = m_of(draw.x) - m_of(with(draw.x));
        const double gain_y = m_of(draw.y) - m_of(with(draw.y));
        add_row(report, instance_seed, "gain(X)>=gain(Y)", gain_x, gain_y,
                gain_x >= gain_y - kTolerance);
    }
    return report;
}

PropertyReport check_sherman_morrison(int instances, std::uint64_t seed,
                                      int sequence_length, const InstanceOptions& opts) {
    constexpr double kTolerance = 1e-8;
    PropertyReport report;
    report.property = "sherman-morrison";
    for (int i = 0; i < instances; ++i) {
        const std::uint64_t instance_seed = derive_seed(seed, i);
        std::mt19937_64 rng(instance_seed);
        const RandomInstance inst = random_instance(rng, opts);

        AbsorbingSystem sys(inst.graph, inst.partition);
        std::vector<CandidateEdge> added;
        double worst = 0.0;
        for (int op = 0; op < sequence_length; ++op) {
            const bool can_add = added.size() < inst.candidates.size();
            const bool can_remove = !added.empty();
            const bool do_add =
                can_add && (!can_remove || uniform_below(rng, 2) == 0);
            if (do_add) {
                CandidateEdge e;
                do {
                    e = inst.candidates[uniform_below(rng, inst.candidates.size())];
                } while (std::find(added.begin(), added.end(), e) != added.end());
                sys.add_edge(e);
                added.push_back(e);
            } else {
                const std::size_t pick = uniform_below(rng, added.size());
                sys.remove_edge(added[pick]);
                added.erase(added.begin() + static_cast<std::ptrdiff_t>(pick));
            }
            const AbsorbingSystem fresh(inst.graph, inst.partition, added);
            const double diff = (sys.fundamental_matrix() - fresh.fundamental_matrix())
                                    .cwiseAbs()
                                    .maxCoeff();
            worst = std::max(worst, diff);
        }
        add_row(report, instance_seed, "max_abs_F_drift", worst, kTolerance,
                worst <= kTolerance);
    }
    return report;
}

PropertyReport check_monte_carlo(int instances, std::uint64_t seed, long n_walks,
                                 const InstanceOptions& opts) {
    PropertyReport report;
    report.property = "montecarlo";
    for (int i = 0; i < instances; ++i) {
        const std::uint64_t instance_seed = derive_seed(seed, i);
        std::mt19937_64 rng(instance_seed);
        const RandomInstance inst = random_instance(rng, opts);
        const double analytic =
            AbsorbingSystem(inst.graph, inst.partition).absorption_time();
        const MonteCarloEstimate est =
            monte_carlo_absorption(inst.graph, inst.partition, {}, n_walks, rng);
        const double error = std::abs(est.mean - analytic);
        const double bound = 3.0 * est.std_error;
        add_row(report, instance_seed, "abs_err<=3*stderr", error, bound,
                error <= bound + 1e-12);
    }
    return report;
}

}  // namespace navtime
