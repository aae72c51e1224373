#pragma once

#include "egs/graph.hpp"

#include <stdexcept>

namespace egs {

struct StructuralDiff {
    int adj_plus = 0;    // adjacencies in learned, not in reference
    int adj_minus = 0;   // adjacencies in reference, not in learned
    int arcs_plus = 0;   // directed arcs in learned, not in reference
    int arcs_minus = 0;  // directed arcs in reference, not in learned

    bool operator==(const StructuralDiff&) const = default;
};

/// essential: the reference is dag_to_essential(truth). raw_dag: the
/// reference is truth itself.
enum class ComparisonMode { essential, raw_dag };

struct NodeCountMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

StructuralDiff structural_diff(const MixedGraph& learned, const Dag& truth, ComparisonMode mode);
/// Counts against an explicit reference graph.
StructuralDiff structural_diff(const MixedGraph& learned, const MixedGraph& reference);

inline int total_error(const StructuralDiff& d) {
    return d.adj_plus + d.adj_minus + d.arcs_plus + d.arcs_minus;
}

}  // namespace egs
