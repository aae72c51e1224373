#pragma once

#include "egs/graph.hpp"
#include "egs/random.hpp"

#include <map>
#include <optional>
#include <vector>

namespace egs {

/// Permutation of [0, n) that fixes the sequence in which PC visits pairs,
/// conditioning sets and triples.
class NodeOrdering {
public:
    /// Throws std::invalid_argument unless `sequence` is a permutation.
    explicit NodeOrdering(std::vector<NodeId> sequence);

    static NodeOrdering identity(int n);
    static NodeOrdering random(int n, Rng& rng);

    int size() const { return static_cast<int>(sequence_.size()); }
    const std::vector<NodeId>& sequence() const { return sequence_; }
    NodeId at(int rank) const { return sequence_[rank]; }
    int rank(NodeId v) const { return rank_[v]; }

private:
    std::vector<NodeId> sequence_;
    std::vector<int> rank_;
};

/// Conditioning set that separated each removed pair. Keys are unordered.
class SepsetTable {
public:
    void record(NodeId x, NodeId y, std::vector<NodeId> s);
    const std::vector<NodeId>* find(NodeId x, NodeId y) const;
    bool contains(NodeId x, NodeId y) const { return find(x, y) != nullptr; }
    std::size_t size() const { return table_.size(); }
    const std::map<Edge, std::vector<NodeId>>& entries() const { return table_; }

private:
    std::map<Edge, std::vector<NodeId>> table_;
};

}  // namespace egs
