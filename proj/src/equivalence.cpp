#include "egs/equivalence.hpp"

#include <algorithm>
#include <stdexcept>

namespace egs {

std::vector<VStructure> v_structures(const MixedGraph& g) {
    std::vector<VStructure> out;
    for (NodeId y = 0; y < g.num_nodes(); ++y) {
        auto pa = g.parents(y);
        for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t j = i + 1; j < pa.size(); ++j)
                if (!g.adjacent(pa[i], pa[j])) out.push_back({pa[i], y, pa[j]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool markov_equivalent(const Dag& a, const Dag& b) {
    return skeleton(a.graph()) == skeleton(b.graph()) &&
           v_structures(a.graph()) == v_structures(b.graph());
}

MixedGraph orient_v_structures(const MixedGraph& skel, const SepsetTable& seps,
                               const NodeOrdering& order) {
    const int n = skel.num_nodes();
    if (order.size() != n) throw std::invalid_argument("ordering size does not match graph");
    MixedGraph out = skel;

    auto place_head = [&out](NodeId tail, NodeId head) {
        if (out.has_undirected(tail, head)) out.set_directed(tail, head);
        // Already tail -> head: nothing to do. Already head -> tail: the
        // second arrowhead is refused.
    };

    for (int rx = 0; rx < n; ++rx) {
        NodeId x = order.at(rx);
        for (int ry = 0; ry < n; ++ry) {
            NodeId y = order.at(ry);
            if (y == x || !skel.adjacent(x, y)) continue;
            for (int rz = rx + 1; rz < n; ++rz) {
                NodeId z = order.at(rz);
                if (z == y || !skel.adjacent(y, z) || skel.adjacent(x, z)) continue;
                const auto* s = seps.find(x, z);
                if (s == nullptr || std::find(s->begin(), s->end(), y) != s->end()) continue;
                place_head(x, y);
                place_head(z, y);
            }
        }
    }
    return out;
}

namespace {

// Rule (a): some a -> u with a not adjacent to v forces u -> v.
bool avoids_new_collider(const MixedGraph& g, NodeId u, NodeId v) {
    for (NodeId a : g.parents(u))
        if (a != v && !g.adjacent(a, v)) return true;
    return false;
}

}  // namespace

std::optional<MixedGraph> meek_closure(MixedGraph g) {
    if (has_directed_cycle(g)) return std::nullopt;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b] : g.undirected_edges()) {
            if (!g.has_undirected(a, b)) continue;
            // Cycle avoidance wins over collider avoidance when both fire.
            std::optional<Edge> oriented;
            if (has_directed_path(g, a, b)) oriented = Edge{a, b};
            else if (has_directed_path(g, b, a)) oriented = Edge{b, a};
            else if (avoids_new_collider(g, a, b)) oriented = Edge{a, b};
            else if (avoids_new_collider(g, b, a)) oriented = Edge{b, a};
            if (!oriented) continue;
            g.set_directed(oriented->first, oriented->second);
            if (has_directed_cycle(g)) return std::nullopt;
            changed = true;
        }
    }
    return g;
}

std::optional<Dag> consistent_extension(const MixedGraph& g, Rng& rng) {
    if (has_directed_cycle(g)) return std::nullopt;
    const int n = g.num_nodes();
    MixedGraph result = g;
    std::vector<char> alive(n, 1);
    std::vector<NodeId> candidates;
    for (int remaining = n; remaining > 0; --remaining) {
        candidates.clear();
        for (NodeId x = 0; x < n; ++x) {
            if (!alive[x]) continue;
            bool ok = true;
            for (NodeId y = 0; y < n && ok; ++y)
                if (alive[y] && g.has_directed(x, y)) ok = false;
            for (NodeId y = 0; y < n && ok; ++y) {
                if (!alive[y] || !g.has_undirected(x, y)) continue;
                for (NodeId z = 0; z < n && ok; ++z)
                    if (z != y && z != x && alive[z] && g.adjacent(x, z) && !g.adjacent(y, z))
                        ok = false;
            }
            if (ok) candidates.push_back(x);
        }
        if (candidates.empty()) return std::nullopt;
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        NodeId sink = candidates[pick(rng)];
        for (NodeId y = 0; y < n; ++y)
            if (alive[y] && g.has_undirected(sink, y)) result.set_directed(y, sink);
        alive[sink] = 0;
    }
    return Dag(std::move(result));
}

EssentialGraph dag_to_essential(const Dag& d) {
    MixedGraph g = skeleton(d.graph());
    for (const auto& v : v_structures(d.graph())) {
        g.set_directed(v.x, v.y);
        g.set_directed(v.z, v.y);
    }
    auto closed = meek_closure(std::move(g));
    if (!closed) throw std::logic_error("closure of a DAG's pattern produced a cycle");
    return *std::move(closed);
}

std::string canonical_encoding(const MixedGraph& g) {
    std::string out = std::to_string(g.num_nodes()) + "|";
    for (const auto& [t, h] : g.directed_edges())
        out += std::to_string(t) + ">" + std::to_string(h) + ";";
    out += "|";
    for (const auto& [a, b] : g.undirected_edges())
        out += std::to_string(a) + "-" + std::to_string(b) + ";";
    return out;
}

}  // namespace egs
