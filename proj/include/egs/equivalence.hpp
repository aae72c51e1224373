#pragma once

#include "egs/graph.hpp"
#include "egs/ordering.hpp"
#include "egs/random.hpp"

#include <optional>
#include <string>
#include <vector>

namespace egs {

/// Mixed graph closed under the two orientation rules of meek_closure.
using EssentialGraph = MixedGraph;

/// x -> y <- z with x and z non-adjacent; stored with x < z.
struct VStructure {
    NodeId x;
    NodeId y;
    NodeId z;
    auto operator<=>(const VStructure&) const = default;
};

/// Unshielded colliders formed by the directed edges of g, sorted.
std::vector<VStructure> v_structures(const MixedGraph& g);

bool markov_equivalent(const Dag& a, const Dag& b);

/// Orients x - y - z as x -> y <- z whenever y is outside the sepset of
/// (x, z). Triples are visited lexicographically by order rank of
/// (x, y, z); an arrowhead that would make an edge double-headed is dropped.
MixedGraph orient_v_structures(const MixedGraph& skel, const SepsetTable& seps,
                               const NodeOrdering& order);

/// Repeatedly orients b - c as b -> c when some a -> b has a and c
/// non-adjacent, and a - b as a -> b when a directed path a ~> b exists.
/// When both rules apply to the same edge, the path rule wins. Returns std::nullopt if the input or any intermediate graph has a
/// directed cycle.
std::optional<MixedGraph> meek_closure(MixedGraph g);

/// Random DAG with the skeleton of g that keeps g's directed edges and adds
/// no v-structure. Sinks are eliminated one at a time, each picked uniformly
/// among the admissible nodes; this does not sample extensions uniformly.
/// Returns std::nullopt when g has no such extension.
std::optional<Dag> consistent_extension(const MixedGraph& g, Rng& rng);

EssentialGraph dag_to_essential(const Dag& d);

/// Deterministic text token; equal iff the graphs are equal.
std::string canonical_encoding(const MixedGraph& g);

}  // namespace egs
