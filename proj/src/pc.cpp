#include "egs/pc.hpp"

#include <algorithm>
#include <stdexcept>

namespace egs {

namespace {

// Advances `idx` to the next size-k combination of [0, n) in lexicographic order.
bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

}  // namespace

PcSkeleton find_skeleton(const IndependenceTest& test, double alpha, const NodeOrdering& order,
                         const PcOptions& options) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    const int n = test.num_variables();
    if (order.size() != n) throw std::invalid_argument("ordering size does not match variables");

    MixedGraph g(n);
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b) g.add_undirected(a, b);

    PcSkeleton out;
    std::vector<NodeId> pool;
    std::vector<NodeId> given;
    std::vector<int> idx;
    auto by_rank = [&order](NodeId a, NodeId b) { return order.rank(a) < order.rank(b); };

    for (int level = 0;; ++level) {
        if (options.max_condition_size && level > *options.max_condition_size) break;
        bool any_pair = false;
        for (int rx = 0; rx < n; ++rx) {
            const NodeId x = order.at(rx);
            for (int ry = rx + 1; ry < n; ++ry) {
                const NodeId y = order.at(ry);
                if (!g.adjacent(x, y)) continue;
                pool.clear();
                for (NodeId v = 0; v < n; ++v)
                    if (v != x && v != y && (g.adjacent(x, v) || g.adjacent(y, v))) pool.push_back(v);
                if (static_cast<int>(pool.size()) < level) continue;
                any_pair = true;
                std::sort(pool.begin(), pool.end(), by_rank);

                idx.resize(level);
                for (int i = 0; i < level; ++i) idx[i] = i;
                do {
                    given.clear();
                    for (int i : idx) given.push_back(pool[i]);
                    if (options.on_test) options.on_test(x, y, given, g);
                    ++out.tests_performed;
                    if (test.test(x, y, given, alpha).independent) {
                        g.remove_edge(x, y);
                        out.sepsets.record(x, y, given);
                        break;
                    }
                } while (next_combination(idx, static_cast<int>(pool.size())));
            }
        }
        if (!any_pair) break;
    }

    out.skeleton = std::move(g);
    return out;
}

std::optional<PcOutput> run_pc(const IndependenceTest& test, double alpha,
                               const NodeOrdering& order, const PcOptions& options) {
    PcSkeleton skel = find_skeleton(test, alpha, order, options);
    auto closed = meek_closure(orient_v_structures(skel.skeleton, skel.sepsets, order));
    if (!closed) return std::nullopt;
    return PcOutput{*std::move(closed), std::move(skel.sepsets), alpha, skel.tests_performed};
}

}  // namespace egs
