#pragma once

// Graphviz emission: one node per vertex, ranks pinned to the height
// assignment, edge labels carrying mark counts.  Output is deterministic.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "follab/level_tree.hpp"

namespace follab {

namespace detail {

inline const char* dot_shape(VertexKind k) {
    switch (k) {
    case VertexKind::Min: return "invtriangle";
    case VertexKind::Max: return "triangle";
    case VertexKind::SaddleUp: return "diamond";
    case VertexKind::SaddleDown: return "box";
    }
    return "circle";
}

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace detail

inline std::string emit_dot(const LevelTree& tree) {
    auto ranks = height_assignment(tree);
    std::map<int, std::vector<std::string>> by_rank;
    for (const auto& [id, r] : ranks) by_rank[r].push_back(id);

    std::ostringstream out;
    out << "digraph foliation {\n";
    out << "  rankdir=BT;\n";
    out << "  node [fontsize=10];\n";
    for (const auto& [r, ids] : by_rank) {
        for (const auto& id : ids) {
            const auto& v = tree.vertex(id);
            out << "  " << detail::dot_quote(id) << " [shape=" << detail::dot_shape(v.kind)
                << ", label=" << detail::dot_quote(id) << "];\n";
        }
    }
    for (const auto& [r, ids] : by_rank) {
        out << "  { rank=same;";
        for (const auto& id : ids) out << " " << detail::dot_quote(id) << ";";
        out << " }\n";
    }
    std::vector<std::string> edge_ids;
    for (const auto& e : tree.edges()) edge_ids.push_back(e.id);
    std::sort(edge_ids.begin(), edge_ids.end());
    for (const auto& id : edge_ids) {
        const auto& e = tree.edge(id);
        out << "  " << detail::dot_quote(e.lower.vertex) << " -> "
            << detail::dot_quote(e.upper.vertex) << " [label=\"" << e.marks.size() << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace follab
