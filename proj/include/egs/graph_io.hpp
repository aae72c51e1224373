#pragma once

#include "egs/graph.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace egs {

struct NamedGraph {
    std::vector<std::string> names;
    MixedGraph graph;
};

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text format:
//   nodes: A,B,C
//   A -> B
//   B -- C
// '#' starts a comment line; whitespace is ignored.
NamedGraph read_graph(std::istream& in);
NamedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const std::vector<std::string>& names, const MixedGraph& g);
void write_graph_file(const std::string& path, const std::vector<std::string>& names,
                      const MixedGraph& g);

/// Reorders `g` (named by `from`) onto the node positions of `to`.
MixedGraph remap_graph(const MixedGraph& g, const std::vector<std::string>& from,
                       const std::vector<std::string>& to);

}  // namespace egs
