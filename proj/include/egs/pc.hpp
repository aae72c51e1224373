#pragma once

#include "egs/equivalence.hpp"
#include "egs/independence.hpp"
#include "egs/ordering.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

namespace egs {

struct PcOutput {
    EssentialGraph graph;
    SepsetTable sepsets;
    double alpha_used = 0.0;
    std::size_t tests_performed = 0;
};

struct PcOptions {
    /// Largest conditioning set tried; unbounded when empty.
    std::optional<int> max_condition_size;
    /// Called before every test with the graph as it stands at that moment.
    std::function<void(NodeId, NodeId, std::span<const NodeId>, const MixedGraph&)> on_test;
};

struct PcSkeleton {
    MixedGraph skeleton;
    SepsetTable sepsets;
    std::size_t tests_performed = 0;
};

/// Edge-removal phase alone: the undirected graph left after pruning the
/// complete graph, with the separating set of every removed pair.
PcSkeleton find_skeleton(const IndependenceTest& test, double alpha, const NodeOrdering& order,
                         const PcOptions& options = {});

/// Edge removal starting from the complete graph, conditioning on subsets of
/// adj(x) + adj(y) of increasing size, followed by v-structure orientation
/// and orientation closure. Pairs and conditioning sets are visited
/// lexicographically by rank in `order`. Returns std::nullopt when the
/// orientation phase runs into a directed cycle.
std::optional<PcOutput> run_pc(const IndependenceTest& test, double alpha,
                               const NodeOrdering& order, const PcOptions& options = {});

}  // namespace egs
