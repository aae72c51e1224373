#include "egs/ordering.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace egs {

NodeOrdering::NodeOrdering(std::vector<NodeId> sequence)
    : sequence_(std::move(sequence)), rank_(sequence_.size(), -1) {
    const int n = size();
    for (int r = 0; r < n; ++r) {
        NodeId v = sequence_[r];
        if (v < 0 || v >= n || rank_[v] != -1)
            throw std::invalid_argument("node ordering is not a permutation");
        rank_[v] = r;
    }
}

NodeOrdering NodeOrdering::identity(int n) {
    std::vector<NodeId> seq(n);
    std::iota(seq.begin(), seq.end(), 0);
    return NodeOrdering(std::move(seq));
}

NodeOrdering NodeOrdering::random(int n, Rng& rng) {
    std::vector<NodeId> seq(n);
    std::iota(seq.begin(), seq.end(), 0);
    std::shuffle(seq.begin(), seq.end(), rng);
    return NodeOrdering(std::move(seq));
}

void SepsetTable::record(NodeId x, NodeId y, std::vector<NodeId> s) {
    if (x == y) throw std::invalid_argument("sepset pair must be distinct");
    if (std::find(s.begin(), s.end(), x) != s.end() || std::find(s.begin(), s.end(), y) != s.end())
        throw std::invalid_argument("sepset cannot contain its own pair");
    std::sort(s.begin(), s.end());
    table_[{std::min(x, y), std::max(x, y)}] = std::move(s);
}

const std::vector<NodeId>* SepsetTable::find(NodeId x, NodeId y) const {
    auto it = table_.find({std::min(x, y), std::max(x, y)});
    return it == table_.end() ? nullptr : &it->second;
}

}  // namespace egs
