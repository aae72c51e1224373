#include "egs/pc.hpp"
#include "egs/simulation.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

namespace egs {
namespace {

Dag make_dag(int n, std::initializer_list<Edge> edges) {
    MixedGraph g(n);
    for (auto [t, h] : edges) g.add_directed(t, h);
    return Dag(g);
}

TEST(RunPcTest, OracleCollider) {
    const DSeparationTest oracle(make_dag(3, {{0, 1}, {2, 1}}));
    Rng rng(1);
    for (int i = 0; i < 10; ++i) {
        auto out = run_pc(oracle, 0.05, NodeOrdering::random(3, rng));
        ASSERT_TRUE(out);
        EXPECT_TRUE(out->graph.has_directed(0, 1));
        EXPECT_TRUE(out->graph.has_directed(2, 1));
        EXPECT_FALSE(out->graph.adjacent(0, 2));
        ASSERT_NE(out->sepsets.find(0, 2), nullptr);
        EXPECT_TRUE(out->sepsets.find(0, 2)->empty());
        EXPECT_EQ(out->sepsets.size(), 1u);
    }
}

TEST(RunPcTest, OracleChain) {
    const DSeparationTest oracle(make_dag(3, {{0, 1}, {1, 2}}));
    auto out = run_pc(oracle, 0.05, NodeOrdering::identity(3));
    ASSERT_TRUE(out);
    MixedGraph expected(3);
    expected.add_undirected(0, 1);
    expected.add_undirected(1, 2);
    EXPECT_EQ(out->graph, expected);
    EXPECT_EQ(*out->sepsets.find(2, 0), (std::vector<NodeId>{1}));
}

TEST(RunPcTest, OracleEmptyTruth) {
    const DSeparationTest oracle{Dag(3)};
    auto out = run_pc(oracle, 0.05, NodeOrdering::identity(3));
    ASSERT_TRUE(out);
    EXPECT_EQ(out->graph, MixedGraph(3));
    EXPECT_EQ(out->sepsets.size(), 3u);
    for (const auto& [pair, s] : out->sepsets.entries()) EXPECT_TRUE(s.empty());
    EXPECT_EQ(out->tests_performed, 3u);
}

TEST(RunPcTest, OracleExactOnRandomDagsAndOrderings) {
    Rng rng(2);
    for (int n = 1; n <= 6; ++n)
        for (int i = 0; i < 60; ++i) {
            const double p = std::min(1.0, 1.5 * n / (n * (n - 1) / 2.0 + 1e-9));
            const Dag truth = random_ordered_dag(n, n > 1 ? p : 0.0, rng);
            const DSeparationTest oracle(truth);
            const auto expected = dag_to_essential(truth);
            for (int k = 0; k < 4; ++k) {
                auto out = run_pc(oracle, 0.1, NodeOrdering::random(n, rng));
                ASSERT_TRUE(out);
                ASSERT_EQ(out->graph, expected) << canonical_encoding(truth.graph());
            }
        }
}

TEST(RunPcTest, SepsetsSeparateUnderOracle) {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const Dag truth = random_ordered_dag(6, 0.4, rng);
        const DSeparationTest oracle(truth);
        auto out = run_pc(oracle, 0.1, NodeOrdering::random(6, rng));
        ASSERT_TRUE(out);
        for (auto [x, y] : testing::all_pairs(6)) {
            const auto* s = out->sepsets.find(x, y);
            ASSERT_EQ(s != nullptr, !out->graph.adjacent(x, y));
            if (s) ASSERT_TRUE(testing::brute_force_d_separated(truth, x, y, *s));
        }
    }
}

TEST(RunPcTest, ConditioningSetsRespectAdjacency) {
    Rng rng(4);
    const Dag truth = random_dag({8, 12, 4});
    Rng data_rng(5);
    const auto data = sample_linear_sem(truth, draw_sem_params(truth, data_rng), 300, data_rng);
    const FisherZTest test(data);
    for (int i = 0; i < 20; ++i) {
        PcOptions options;
        std::size_t observed = 0;
        options.on_test = [&](NodeId x, NodeId y, std::span<const NodeId> s, const MixedGraph& g) {
            ++observed;
            ASSERT_TRUE(g.adjacent(x, y));
            for (NodeId v : s) ASSERT_TRUE(g.adjacent(v, x) || g.adjacent(v, y));
        };
        std::uniform_real_distribution<double> alpha(0.005, 0.2);
        auto out = run_pc(test, alpha(rng), NodeOrdering::random(8, rng), options);
        if (out) {
            EXPECT_EQ(out->tests_performed, observed);
            EXPECT_FALSE(has_directed_cycle(out->graph));
        }
    }
}

TEST(RunPcTest, DeterministicGivenInputs) {
    const Dag truth = random_dag({10, 15, 6});
    Rng data_rng(7);
    const auto data = sample_linear_sem(truth, draw_sem_params(truth, data_rng), 250, data_rng);
    const FisherZTest memo(data), plain(data, false);
    Rng rng(8);
    for (int i = 0; i < 10; ++i) {
        const auto order = NodeOrdering::random(10, rng);
        auto a = run_pc(memo, 0.05, order);
        auto b = run_pc(plain, 0.05, order);
        ASSERT_EQ(a.has_value(), b.has_value());
        if (!a) continue;
        EXPECT_EQ(a->graph, b->graph);
        EXPECT_EQ(a->tests_performed, b->tests_performed);
        EXPECT_EQ(a->sepsets.entries(), b->sepsets.entries());
        EXPECT_EQ(a->alpha_used, 0.05);
    }
}

TEST(RunPcTest, ConditionSizeCap) {
    // Truth 0 -> 1 -> 2 with 0 -> 3 -> 2: separating 0 and 2 needs {1, 3}.
    const DSeparationTest oracle(make_dag(4, {{0, 1}, {1, 2}, {0, 3}, {3, 2}}));
    PcOptions capped;
    capped.max_condition_size = 1;
    auto out = run_pc(oracle, 0.05, NodeOrdering::identity(4), capped);
    ASSERT_TRUE(out);
    EXPECT_TRUE(out->graph.adjacent(0, 2));
    auto full = run_pc(oracle, 0.05, NodeOrdering::identity(4));
    ASSERT_TRUE(full);
    EXPECT_FALSE(full->graph.adjacent(0, 2));
}

TEST(RunPcTest, RejectsBadAlphaAndOrdering) {
    const DSeparationTest oracle{Dag(3)};
    EXPECT_THROW(run_pc(oracle, 0.0, NodeOrdering::identity(3)), std::invalid_argument);
    EXPECT_THROW(run_pc(oracle, 0.05, NodeOrdering::identity(4)), std::invalid_argument);
    EXPECT_THROW(NodeOrdering({0, 0, 1}), std::invalid_argument);
}

TEST(SepsetTableTest, UnorderedKeysAndValidation) {
    SepsetTable t;
    t.record(3, 1, {4, 2});
    EXPECT_EQ(*t.find(1, 3), (std::vector<NodeId>{2, 4}));
    EXPECT_FALSE(t.contains(1, 2));
    EXPECT_THROW(t.record(1, 2, {1}), std::invalid_argument);
}

TEST(FindSkeletonTest, RemovesOnlySeparablePairs) {
    const DSeparationTest oracle(make_dag(4, {{0, 1}, {1, 2}, {2, 3}}));
    auto sk = find_skeleton(oracle, 0.05, NodeOrdering::identity(4));
    EXPECT_TRUE(sk.skeleton.directed_edges().empty());
    EXPECT_EQ(sk.skeleton.undirected_edges(), (std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_EQ(sk.sepsets.size(), 3u);
}

}  // namespace
}  // namespace egs
