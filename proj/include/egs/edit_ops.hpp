#pragma once

#include "egs/graph.hpp"

#include <stdexcept>
#include <string>

namespace egs {

/// Greedy operators: Add(x, y) inserts x -> y, Del(x, y) deletes x -> y,
/// Rev(x, y) turns x -> y into y -> x.
struct EditOp {
    enum class Kind { add, del, rev };
    Kind kind;
    NodeId x;
    NodeId y;

    static EditOp add(NodeId x, NodeId y) { return {Kind::add, x, y}; }
    static EditOp del(NodeId x, NodeId y) { return {Kind::del, x, y}; }
    static EditOp rev(NodeId x, NodeId y) { return {Kind::rev, x, y}; }

    bool operator==(const EditOp&) const = default;
};

struct InvalidEdit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// True when the edit's target exists (or is absent, for Add) and the
/// result stays acyclic.
bool is_applicable(const Dag& d, const EditOp& op);
/// Throws InvalidEdit when the edit is not applicable.
Dag apply_edit(const Dag& d, const EditOp& op);
std::string to_string(const EditOp& op);

}  // namespace egs
