#include "egs/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace egs {

namespace {

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, delim)) parts.push_back(item);
    return parts;
}

}  // namespace

NamedGraph read_graph(std::istream& in) {
    std::vector<std::string> names;
    std::unordered_map<std::string, NodeId> index;
    std::vector<std::tuple<std::string, std::string, bool>> edges;
    bool have_header = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.rfind("nodes:", 0) == 0) {
            if (have_header) throw FormatError("duplicate nodes: header");
            have_header = true;
            std::string list = s.substr(6);
            if (!list.empty())
                for (auto& name : split(list, ',')) {
                    if (name.empty()) throw FormatError("empty node name");
                    if (!index.emplace(name, static_cast<NodeId>(names.size())).second)
                        throw FormatError("duplicate node name: " + name);
                    names.push_back(name);
                }
            continue;
        }
        bool directed;
        std::size_t pos;
        if ((pos = s.find("->")) != std::string::npos)
            directed = true;
        else if ((pos = s.find("--")) != std::string::npos)
            directed = false;
        else
            throw FormatError("line " + std::to_string(line_no) + ": expected an edge");
        edges.emplace_back(s.substr(0, pos), s.substr(pos + 2), directed);
    }
    if (!have_header) throw FormatError("missing nodes: header");

    MixedGraph g(static_cast<int>(names.size()));
    for (const auto& [a, b, directed] : edges) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end() || ib == index.end())
            throw FormatError("edge references undeclared node: " + a + ", " + b);
        if (ia->second == ib->second) throw FormatError("self-loop on " + a);
        if (g.adjacent(ia->second, ib->second)) throw FormatError("duplicate edge " + a + ", " + b);
        if (directed)
            g.add_directed(ia->second, ib->second);
        else
            g.add_undirected(ia->second, ib->second);
    }
    return {std::move(names), std::move(g)};
}

NamedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const std::vector<std::string>& names, const MixedGraph& g) {
    if (static_cast<int>(names.size()) != g.num_nodes())
        throw std::invalid_argument("name list does not match node count");
    out << "nodes: ";
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
    out << '\n';
    for (const auto& [t, h] : g.directed_edges()) out << names[t] << " -> " << names[h] << '\n';
    for (const auto& [a, b] : g.undirected_edges()) out << names[a] << " -- " << names[b] << '\n';
}

void write_graph_file(const std::string& path, const std::vector<std::string>& names,
                      const MixedGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_graph(out, names, g);
}

MixedGraph remap_graph(const MixedGraph& g, const std::vector<std::string>& from,
                       const std::vector<std::string>& to) {
    if (from.size() != to.size()) throw std::invalid_argument("graphs have different node counts");
    std::unordered_map<std::string, NodeId> target;
    for (std::size_t i = 0; i < to.size(); ++i) target[to[i]] = static_cast<NodeId>(i);
    std::vector<NodeId> map(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) {
        auto it = target.find(from[i]);
        if (it == target.end()) throw std::invalid_argument("unknown node name: " + from[i]);
        map[i] = it->second;
    }
    MixedGraph out(g.num_nodes());
    for (const auto& [t, h] : g.directed_edges()) out.add_directed(map[t], map[h]);
    for (const auto& [a, b] : g.undirected_edges()) out.add_undirected(map[a], map[b]);
    return out;
}

}  // namespace egs
