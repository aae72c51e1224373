#include "egs/evaluation.hpp"

#include "egs/equivalence.hpp"

namespace egs {

StructuralDiff structural_diff(const MixedGraph& learned, const MixedGraph& reference) {
    const int n = learned.num_nodes();
    if (reference.num_nodes() != n) throw NodeCountMismatch("graphs have different node counts");
    StructuralDiff d;
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = 0; b < n; ++b) {
            if (a == b) continue;
            if (a < b) {
                if (learned.adjacent(a, b) && !reference.adjacent(a, b)) ++d.adj_plus;
                if (!learned.adjacent(a, b) && reference.adjacent(a, b)) ++d.adj_minus;
            }
            if (learned.has_directed(a, b) && !reference.has_directed(a, b)) ++d.arcs_plus;
            if (!learned.has_directed(a, b) && reference.has_directed(a, b)) ++d.arcs_minus;
        }
    return d;
}

StructuralDiff structural_diff(const MixedGraph& learned, const Dag& truth, ComparisonMode mode) {
    if (learned.num_nodes() != truth.num_nodes())
        throw NodeCountMismatch("graphs have different node counts");
    if (mode == ComparisonMode::essential) return structural_diff(learned, dag_to_essential(truth));
    return structural_diff(learned, truth.graph());
}

}  // namespace egs
