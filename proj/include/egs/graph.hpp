#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace egs {

// Nodes are positions in an externally held variable list.
using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;

/// Graph over nodes [0, n) with directed and undirected edges. A pair of
/// nodes carries at most one edge, so double-headed pairs cannot exist.
class MixedGraph {
public:
    explicit MixedGraph(int num_nodes = 0);

    int num_nodes() const { return n_; }
    int num_edges() const;

    bool adjacent(NodeId a, NodeId b) const { return mark(a, b) != Mark::none; }
    bool has_directed(NodeId tail, NodeId head) const { return mark(tail, head) == Mark::out; }
    bool has_undirected(NodeId a, NodeId b) const { return mark(a, b) == Mark::undirected; }

    // Adding to an already adjacent pair throws std::logic_error.
    void add_directed(NodeId tail, NodeId head);
    void add_undirected(NodeId a, NodeId b);
    // Replaces whatever edge joins the pair.
    void set_directed(NodeId tail, NodeId head);
    void set_undirected(NodeId a, NodeId b);
    void remove_edge(NodeId a, NodeId b);

    /// Sorted by (tail, head).
    std::vector<Edge> directed_edges() const;
    /// Sorted (min, max) pairs.
    std::vector<Edge> undirected_edges() const;

    std::vector<NodeId> adjacencies(NodeId x) const;
    std::vector<NodeId> parents(NodeId x) const;
    std::vector<NodeId> children(NodeId x) const;
    /// Nodes joined to x by an undirected edge.
    std::vector<NodeId> neighbors(NodeId x) const;

    bool operator==(const MixedGraph& other) const = default;

private:
    enum class Mark : std::uint8_t { none, out, in, undirected };

    Mark mark(NodeId a, NodeId b) const {
        check(a);
        check(b);
        return cells_[static_cast<std::size_t>(a) * n_ + b];
    }
    void set(NodeId a, NodeId b, Mark ab, Mark ba);
    void check(NodeId a) const {
        if (a < 0 || a >= n_) throw std::out_of_range("node index out of range");
    }

    int n_;
    std::vector<Mark> cells_;
};

/// A MixedGraph without undirected edges or directed cycles.
class Dag {
public:
    explicit Dag(int num_nodes = 0) : g_(num_nodes) {}
    /// Throws std::invalid_argument if g has undirected edges or a cycle.
    explicit Dag(MixedGraph g);

    const MixedGraph& graph() const { return g_; }
    int num_nodes() const { return g_.num_nodes(); }
    int num_edges() const { return g_.num_edges(); }
    bool has_edge(NodeId tail, NodeId head) const { return g_.has_directed(tail, head); }
    std::vector<NodeId> parents(NodeId x) const { return g_.parents(x); }
    std::vector<NodeId> children(NodeId x) const { return g_.children(x); }
    std::vector<Edge> edges() const { return g_.directed_edges(); }

    // Mutators throw std::invalid_argument when the result would be cyclic.
    void add_edge(NodeId tail, NodeId head);
    void remove_edge(NodeId tail, NodeId head);
    void reverse_edge(NodeId tail, NodeId head);

    bool operator==(const Dag& other) const = default;

private:
    MixedGraph g_;
};

bool has_directed_cycle(const MixedGraph& g);
/// Directed path from -> ... -> to of length >= 1 using directed edges only.
bool has_directed_path(const MixedGraph& g, NodeId from, NodeId to);
MixedGraph skeleton(const MixedGraph& g);
std::vector<NodeId> topological_order(const Dag& d);
std::vector<NodeId> adjacencies(const MixedGraph& g, NodeId x);

}  // namespace egs
