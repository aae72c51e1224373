#include "egs/graph.hpp"

#include <algorithm>

namespace egs {

MixedGraph::MixedGraph(int num_nodes)
    : n_(num_nodes), cells_(static_cast<std::size_t>(num_nodes) * num_nodes, Mark::none) {
    if (num_nodes < 0) throw std::invalid_argument("negative node count");
}

int MixedGraph::num_edges() const {
    int count = 0;
    for (NodeId a = 0; a < n_; ++a)
        for (NodeId b = a + 1; b < n_; ++b)
            if (adjacent(a, b)) ++count;
    return count;
}

void MixedGraph::set(NodeId a, NodeId b, Mark ab, Mark ba) {
    check(a);
    check(b);
    if (a == b) throw std::invalid_argument("self-loops are not allowed");
    cells_[static_cast<std::size_t>(a) * n_ + b] = ab;
    cells_[static_cast<std::size_t>(b) * n_ + a] = ba;
}

void MixedGraph::add_directed(NodeId tail, NodeId head) {
    if (tail != head && adjacent(tail, head)) throw std::logic_error("pair already adjacent");
    set(tail, head, Mark::out, Mark::in);
}

void MixedGraph::add_undirected(NodeId a, NodeId b) {
    if (a != b && adjacent(a, b)) throw std::logic_error("pair already adjacent");
    set(a, b, Mark::undirected, Mark::undirected);
}

void MixedGraph::set_directed(NodeId tail, NodeId head) { set(tail, head, Mark::out, Mark::in); }

void MixedGraph::set_undirected(NodeId a, NodeId b) {
    set(a, b, Mark::undirected, Mark::undirected);
}

void MixedGraph::remove_edge(NodeId a, NodeId b) { set(a, b, Mark::none, Mark::none); }

std::vector<Edge> MixedGraph::directed_edges() const {
    std::vector<Edge> out;
    for (NodeId a = 0; a < n_; ++a)
        for (NodeId b = 0; b < n_; ++b)
            if (has_directed(a, b)) out.emplace_back(a, b);
    return out;
}

std::vector<Edge> MixedGraph::undirected_edges() const {
    std::vector<Edge> out;
    for (NodeId a = 0; a < n_; ++a)
        for (NodeId b = a + 1; b < n_; ++b)
            if (has_undirected(a, b)) out.emplace_back(a, b);
    return out;
}

std::vector<NodeId> MixedGraph::adjacencies(NodeId x) const {
    std::vector<NodeId> out;
    for (NodeId y = 0; y < n_; ++y)
        if (y != x && adjacent(x, y)) out.push_back(y);
    return out;
}

std::vector<NodeId> MixedGraph::parents(NodeId x) const {
    std::vector<NodeId> out;
    for (NodeId y = 0; y < n_; ++y)
        if (y != x && has_directed(y, x)) out.push_back(y);
    return out;
}

std::vector<NodeId> MixedGraph::children(NodeId x) const {
    std::vector<NodeId> out;
    for (NodeId y = 0; y < n_; ++y)
        if (y != x && has_directed(x, y)) out.push_back(y);
    return out;
}

std::vector<NodeId> MixedGraph::neighbors(NodeId x) const {
    std::vector<NodeId> out;
    for (NodeId y = 0; y < n_; ++y)
        if (y != x && has_undirected(x, y)) out.push_back(y);
    return out;
}

Dag::Dag(MixedGraph g) : g_(std::move(g)) {
    if (!g_.undirected_edges().empty()) throw std::invalid_argument("DAG cannot hold undirected edges");
    if (has_directed_cycle(g_)) throw std::invalid_argument("graph contains a directed cycle");
}

void Dag::add_edge(NodeId tail, NodeId head) {
    if (tail != head && has_directed_path(g_, head, tail))
        throw std::invalid_argument("edge would create a directed cycle");
    g_.add_directed(tail, head);
}

void Dag::remove_edge(NodeId tail, NodeId head) {
    if (!g_.has_directed(tail, head)) throw std::invalid_argument("edge not present");
    g_.remove_edge(tail, head);
}

void Dag::reverse_edge(NodeId tail, NodeId head) {
    if (!g_.has_directed(tail, head)) throw std::invalid_argument("edge not present");
    g_.remove_edge(tail, head);
    if (has_directed_path(g_, tail, head)) {
        g_.add_directed(tail, head);
        throw std::invalid_argument("reversal would create a directed cycle");
    }
    g_.add_directed(head, tail);
}

bool has_directed_cycle(const MixedGraph& g) {
    // Kahn's algorithm: a cycle remains iff some node never reaches in-degree 0.
    const int n = g.num_nodes();
    std::vector<int> indegree(n, 0);
    for (const auto& [t, h] : g.directed_edges()) ++indegree[h];
    std::vector<NodeId> ready;
    for (NodeId v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.push_back(v);
    int removed = 0;
    while (!ready.empty()) {
        NodeId v = ready.back();
        ready.pop_back();
        ++removed;
        for (NodeId c : g.children(v))
            if (--indegree[c] == 0) ready.push_back(c);
    }
    return removed != n;
}

bool has_directed_path(const MixedGraph& g, NodeId from, NodeId to) {
    const int n = g.num_nodes();
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{from};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId c = 0; c < n; ++c) {
            if (!g.has_directed(v, c) || seen[c]) continue;
            if (c == to) return true;
            seen[c] = 1;
            stack.push_back(c);
        }
    }
    return false;
}

MixedGraph skeleton(const MixedGraph& g) {
    MixedGraph out(g.num_nodes());
    for (NodeId a = 0; a < g.num_nodes(); ++a)
        for (NodeId b = a + 1; b < g.num_nodes(); ++b)
            if (g.adjacent(a, b)) out.add_undirected(a, b);
    return out;
}

std::vector<NodeId> topological_order(const Dag& d) {
    const int n = d.num_nodes();
    std::vector<int> indegree(n, 0);
    for (const auto& [t, h] : d.edges()) ++indegree[h];
    std::vector<NodeId> order;
    order.reserve(n);
    // Smallest ready index first, so the result is deterministic.
    std::vector<NodeId> ready;
    for (NodeId v = n - 1; v >= 0; --v)
        if (indegree[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        NodeId v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (NodeId c : d.children(v))
            if (--indegree[c] == 0) {
                ready.push_back(c);
                std::sort(ready.begin(), ready.end(), std::greater<>());
            }
    }
    return order;
}

std::vector<NodeId> adjacencies(const MixedGraph& g, NodeId x) { return g.adjacencies(x); }

}  // namespace egs
