#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "navtime/absorbing.hpp"
#include "navtime/errors.hpp"
#include "navtime/oracle.hpp"
#include "navtime/rng.hpp"
#include "support/fixtures.hpp"
#include "support/reference.hpp"

using namespace navtime;
using doctest::Approx;

namespace {

const CandidateEdge kEdge03{0, 3};
const CandidateEdge kEdge13{1, 3};

AbsorbingSystem four_path_system(const Graph& g,
                                 const std::vector<CandidateEdge>& added = {}) {
    return AbsorbingSystem(g, fixtures::four_path_partition(), added);
}

}  // namespace

TEST_CASE("reference solver reproduces the four-path values") {
    const Graph g = fixtures::four_path();
    const Partition p = fixtures::four_path_partition();

    auto base = testref::absorption_reference(g, p, {});
    CHECK(base.steps[0] == Approx(9.0).epsilon(1e-12));
    CHECK(base.steps[1] == Approx(8.0).epsilon(1e-12));
    CHECK(base.steps[2] == Approx(5.0).epsilon(1e-12));
    CHECK(base.mean == Approx(22.0 / 3.0).epsilon(1e-12));

    auto with03 = testref::absorption_reference(g, p, {kEdge03});
    CHECK(with03.steps[0] == Approx(3.0).epsilon(1e-12));
    CHECK(with03.steps[1] == Approx(4.0).epsilon(1e-12));
    CHECK(with03.steps[2] == Approx(3.0).epsilon(1e-12));
    CHECK(with03.mean == Approx(10.0 / 3.0).epsilon(1e-12));

    CHECK(testref::absorption_reference(g, p, {kEdge13}).mean ==
          Approx(31.0 / 9.0).epsilon(1e-12));
    CHECK(testref::absorption_reference(g, p, {kEdge03, kEdge13}).mean ==
          Approx(7.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("single forced step gives m = 1") {
    const Graph g = fixtures::graph_from_text("a b\n");
    const AbsorbingSystem sys(g, {{0}, {1}});
    CHECK(sys.expected_steps()(0) == Approx(1.0).epsilon(1e-12));
    CHECK(sys.absorption_time() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("build_system matches the frozen four-path values") {
    const Graph g = fixtures::four_path();

    const AbsorbingSystem base = four_path_system(g);
    CHECK(base.expected_steps()(0) == Approx(9.0).epsilon(1e-9));
    CHECK(base.expected_steps()(1) == Approx(8.0).epsilon(1e-9));
    CHECK(base.expected_steps()(2) == Approx(5.0).epsilon(1e-9));
    CHECK(base.absorption_time() == Approx(22.0 / 3.0).epsilon(1e-9));

    const AbsorbingSystem with03 = four_path_system(g, {kEdge03});
    CHECK(with03.expected_steps()(0) == Approx(3.0).epsilon(1e-9));
    CHECK(with03.expected_steps()(1) == Approx(4.0).epsilon(1e-9));
    CHECK(with03.expected_steps()(2) == Approx(3.0).epsilon(1e-9));
    CHECK(with03.absorption_time() == Approx(10.0 / 3.0).epsilon(1e-9));

    CHECK(four_path_system(g, {kEdge03, kEdge13}).absorption_time() ==
          Approx(7.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("system invariants hold after build") {
    const Graph g = fixtures::four_path();
    const AbsorbingSystem sys = four_path_system(g, {kEdge13});

    CHECK(sys.residual() <= AbsorbingSystem::kResidualTolerance);
    const auto& f = sys.fundamental_matrix();
    for (int i = 0; i < sys.transient_count(); ++i) {
        CHECK(f(i, i) >= 1.0);
        CHECK(sys.expected_steps()(i) >= 1.0);
        for (int j = 0; j < sys.transient_count(); ++j) CHECK(f(i, j) >= 0.0);
    }
    CHECK(sys.out_degree(1) == 3);  // base degree 2 plus one added edge
    CHECK(sys.out_degree(0) == 1);
}

TEST_CASE("build rejects unreachable query nodes, naming one") {
    // Two components; Q is connected but C lives entirely in the other one.
    const Graph g = fixtures::graph_from_text("a b\nc d\n");
    const Partition p{{0, 1}, {2, 3}};
    CHECK_THROWS_WITH_AS(AbsorbingSystem(g, p), doctest::Contains("'a'"), DataError);
}

TEST_CASE("build validates the partition") {
    const Graph g = fixtures::four_path();
    CHECK_THROWS_AS(AbsorbingSystem(g, Partition{{0, 1}, {3}}), UsageError);   // no cover
    CHECK_THROWS_AS(AbsorbingSystem(g, Partition{{0, 2}, {1, 3}}), UsageError);  // Q split
    CHECK_THROWS_AS(AbsorbingSystem(g, Partition{{0, 1, 2, 3}, {}}), UsageError);
}

TEST_CASE("marginal_gain matches the frozen values") {
    const Graph g = fixtures::four_path();
    const AbsorbingSystem base = four_path_system(g);
    CHECK(base.marginal_gain(kEdge03) == Approx(4.0).epsilon(1e-9));
    CHECK(base.marginal_gain(kEdge13) == Approx(35.0 / 9.0).epsilon(1e-9));

    const AbsorbingSystem with13 = four_path_system(g, {kEdge13});
    CHECK(with13.marginal_gain(kEdge03) == Approx(10.0 / 9.0).epsilon(1e-9));
}

TEST_CASE("marginal_gain agrees with rebuild differences on random instances") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 15; ++i) {
        const RandomInstance inst = random_instance(rng);
        const AbsorbingSystem sys(inst.graph, inst.partition);
        for (const CandidateEdge& e : inst.candidates) {
            const double gain = sys.marginal_gain(e);
            CHECK(gain >= -1e-9);
            const double rebuilt =
                AbsorbingSystem(inst.graph, inst.partition, {e}).absorption_time();
            const double expected = sys.absorption_time() - rebuilt;
            CHECK(gain == Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("marginal_gain equals the add_edge delta") {
    std::mt19937_64 rng(5);
    const RandomInstance inst = random_instance(rng);
    const AbsorbingSystem sys(inst.graph, inst.partition);
    for (const CandidateEdge& e : inst.candidates) {
        AbsorbingSystem copy = sys;
        copy.add_edge(e);
        CHECK(sys.marginal_gain(e) ==
              Approx(sys.absorption_time() - copy.absorption_time()).epsilon(1e-9));
    }
}

TEST_CASE("add_edge reproduces the rebuilt system") {
    const Graph g = fixtures::four_path();
    AbsorbingSystem sys = four_path_system(g);
    sys.add_edge(kEdge03);
    CHECK(sys.absorption_time() == Approx(10.0 / 3.0).epsilon(1e-9));
    sys.add_edge(kEdge13);
    CHECK(sys.absorption_time() == Approx(7.0 / 3.0).epsilon(1e-9));

    const AbsorbingSystem rebuilt = four_path_system(g, {kEdge03, kEdge13});
    CHECK((sys.fundamental_matrix() - rebuilt.fundamental_matrix())
              .cwiseAbs()
              .maxCoeff() <= 1e-8);
}

TEST_CASE("adding then removing an edge restores the system") {
    const Graph g = fixtures::four_path();
    AbsorbingSystem sys = four_path_system(g);
    const Eigen::MatrixXd original = sys.fundamental_matrix();

    sys.add_edge(kEdge03);
    sys.remove_edge(kEdge03);
    CHECK(sys.absorption_time() == Approx(22.0 / 3.0).epsilon(1e-9));
    CHECK((sys.fundamental_matrix() - original).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(sys.added_edges().empty());
    CHECK(sys.out_degree(0) == 1);
}

TEST_CASE("remove_edge matches rebuilt values") {
    const Graph g = fixtures::four_path();

    AbsorbingSystem sys = four_path_system(g, {kEdge03, kEdge13});
    sys.remove_edge(kEdge13);
    CHECK(sys.absorption_time() == Approx(10.0 / 3.0).epsilon(1e-9));

    AbsorbingSystem sys2 = four_path_system(g, {kEdge03, kEdge13});
    sys2.remove_edge(kEdge03);
    CHECK(sys2.absorption_time() == Approx(31.0 / 9.0).epsilon(1e-9));
}

TEST_CASE("marginal_loss matches the frozen values") {
    const Graph g = fixtures::four_path();
    const AbsorbingSystem sys = four_path_system(g, {kEdge03, kEdge13});
    CHECK(sys.marginal_loss(kEdge13) == Approx(1.0).epsilon(1e-9));
    CHECK(sys.marginal_loss(kEdge03) == Approx(10.0 / 9.0).epsilon(1e-9));
}

TEST_CASE("loss of a single added edge equals its original gain") {
    std::mt19937_64 rng(9);
    const RandomInstance inst = random_instance(rng);
    const AbsorbingSystem base(inst.graph, inst.partition);
    for (const CandidateEdge& e : inst.candidates) {
        const AbsorbingSystem with(inst.graph, inst.partition, {e});
        CHECK(with.marginal_loss(e) == Approx(base.marginal_gain(e)).epsilon(1e-9));
    }
}

TEST_CASE("usage errors on duplicate or missing edges") {
    const Graph g = fixtures::four_path();
    AbsorbingSystem sys = four_path_system(g, {kEdge03});
    CHECK_THROWS_AS(sys.add_edge(kEdge03), UsageError);
    CHECK_THROWS_AS(sys.remove_edge(kEdge13), UsageError);
    CHECK_THROWS_AS(sys.marginal_gain(kEdge03), UsageError);
    CHECK_THROWS_AS(sys.marginal_loss(kEdge13), UsageError);
    CHECK_THROWS_AS(sys.add_edge(CandidateEdge{2, 3}), UsageError);  // original edge
    CHECK_THROWS_AS(four_path_system(g, {kEdge03, kEdge03}), UsageError);
}

TEST_CASE("custom start distributions are honored") {
    const Graph g = fixtures::four_path();
    const Partition p = fixtures::four_path_partition();
    const AbsorbingSystem sys(g, p, {}, {1.0, 0.0, 0.0});
    CHECK(sys.absorption_time() == Approx(9.0).epsilon(1e-9));
    CHECK_THROWS_AS(AbsorbingSystem(g, p, {}, {0.5, 0.5}), UsageError);
    CHECK_THROWS_AS(AbsorbingSystem(g, p, {}, {0.9, 0.0, 0.0}), UsageError);
    CHECK_THROWS_AS(AbsorbingSystem(g, p, {}, {1.5, -0.5, 0.0}), UsageError);
}

TEST_CASE("incremental maintenance tracks rebuilds over long random sequences") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
        const RandomInstance inst = random_instance(rng);
        AbsorbingSystem sys(inst.graph, inst.partition);
        std::vector<CandidateEdge> added;
        for (int op = 0; op < 60; ++op) {
            const bool can_add = added.size() < inst.candidates.size();
            const bool do_add = can_add && (added.empty() || uniform_below(rng, 2) == 0);
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
        }
        const AbsorbingSystem fresh(inst.graph, inst.partition, added);
        CHECK((sys.fundamental_matrix() - fresh.fundamental_matrix())
                  .cwiseAbs()
                  .maxCoeff() <= 1e-8);
        const auto ref = testref::absorption_reference(inst.graph, inst.partition, added);
        CHECK(sys.absorption_time() == Approx(ref.mean).epsilon(1e-9));
    }
}

TEST_CASE("monotonicity holds for every single addition on random instances") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 10; ++i) {
        const RandomInstance inst = random_instance(rng);
        AbsorbingSystem sys(inst.graph, inst.partition);
        double previous = sys.absorption_time();
        for (const CandidateEdge& e : inst.candidates) {
            sys.add_edge(e);
            CHECK(sys.absorption_time() <= previous + 1e-9);
            previous = sys.absorption_time();
        }
    }
}

TEST_CASE("absorption time reduces to mean first passage time when |C| = 1") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 5; ++i) {
        InstanceOptions opts;
        opts.fixed_c_size = 1;
        const RandomInstance inst = random_instance(rng, opts);
        const double analytic =
            AbsorbingSystem(inst.graph, inst.partition).absorption_time();
        const double mfpt =
            mean_first_passage_time(inst.graph, inst.partition.target[0]);
        CHECK(analytic == Approx(mfpt).epsilon(1e-9));
    }
}
