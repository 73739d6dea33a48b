#pragma once

// Level trees: combinatorial encodings of the singular foliation a height
// function induces on an embedded marked sphere.  Vertices are critical
// leaves (extrema and saddles), edges are maximal monotone annuli/disks, and
// marked points on an edge record punctures in ascending height order.

#include <algorithm>
#include <array>
#include <cassert>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "follab/core.hpp"

namespace follab {

struct MarkPoint {
    std::string id;
    std::optional<Germ> germ;

    bool operator==(const MarkPoint&) const = default;
};

struct EndpointRef {
    std::string vertex;
    Port port = Port::Cap;

    bool operator==(const EndpointRef&) const = default;
};

struct EdgeData {
    std::string id;
    EndpointRef lower;
    EndpointRef upper;
    std::vector<MarkPoint> marks;  // ascending height along the edge

    bool operator==(const EdgeData&) const = default;
};

struct VertexData {
    std::string id;
    VertexKind kind = VertexKind::Min;

    bool operator==(const VertexData&) const = default;
};

// Plain candidate structure; may violate every invariant.  validate() turns
// violations into data, LevelTree wraps a structure that passed.
struct LevelTreeData {
    std::vector<VertexData> vertices;
    std::vector<EdgeData> edges;

    bool operator==(const LevelTreeData&) const = default;
};

struct Violation {
    std::string code;
    std::string message;
    std::vector<std::string> ids;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool valid() const { return violations.empty(); }
};

inline ValidationReport validate(const LevelTreeData& data) {
    ValidationReport report;
    auto add = [&report](std::string code, std::string message, std::vector<std::string> ids) {
        report.violations.push_back({std::move(code), std::move(message), std::move(ids)});
    };

    if (data.vertices.empty()) {
        add("empty-tree", "tree has no vertices", {});
        return report;
    }

    std::unordered_map<std::string, std::size_t> vertex_index;
    for (std::size_t i = 0; i < data.vertices.size(); ++i) {
        const auto& v = data.vertices[i];
        if (!vertex_index.emplace(v.id, i).second)
            add("duplicate-vertex-id", "duplicate vertex id " + v.id, {v.id});
    }

    std::set<std::string> edge_ids;
    std::set<std::string> mark_ids;
    // (vertex index, port) -> first edge claiming it
    std::map<std::pair<std::size_t, int>, std::string> port_use;
    bool structure_ok = true;

    for (const auto& e : data.edges) {
        if (!edge_ids.insert(e.id).second)
            add("duplicate-edge-id", "duplicate edge id " + e.id, {e.id});
        for (const auto& m : e.marks)
            if (!mark_ids.insert(m.id).second)
                add("duplicate-mark-id", "duplicate mark id " + m.id, {m.id, e.id});

        bool endpoints_ok = true;
        for (const auto* end : {&e.lower, &e.upper}) {
            auto it = vertex_index.find(end->vertex);
            if (it == vertex_index.end()) {
                add("unknown-vertex", "edge " + e.id + " references unknown vertex " + end->vertex,
                    {e.id, end->vertex});
                endpoints_ok = false;
                continue;
            }
            const auto& v = data.vertices[it->second];
            if (!port_side(v.kind, end->port)) {
                add("invalid-port", "vertex " + v.id + " has no port " + port_name(end->port) +
                                        " (edge " + e.id + ")",
                    {e.id, v.id});
                endpoints_ok = false;
                continue;
            }
            auto key = std::make_pair(it->second, static_cast<int>(end->port));
            auto [slot, fresh] = port_use.emplace(key, e.id);
            if (!fresh) {
                add("port-conflict", "port " + std::string(port_name(end->port)) + " of vertex " +
                                         v.id + " used by edges " + slot->second + " and " + e.id,
                    {slot->second, e.id, v.id});
                endpoints_ok = false;
            }
        }
        if (!endpoints_ok) {
            structure_ok = false;
            continue;
        }

        const auto& lo = data.vertices[vertex_index.at(e.lower.vertex)];
        const auto& up = data.vertices[vertex_index.at(e.upper.vertex)];
        if (*port_side(lo.kind, e.lower.port) != Side::Above ||
            *port_side(up.kind, e.upper.port) != Side::Below) {
            add("port-side-mismatch", "port side mismatch on edge " + e.id,
                {e.id, lo.id, up.id});
            structure_ok = false;
        }
    }

    // Every port of every vertex used exactly once.
    for (std::size_t i = 0; i < data.vertices.size(); ++i) {
        const auto& v = data.vertices[i];
        const auto ports = is_saddle(v.kind)
                               ? std::vector<Port>{Port::PairA, Port::PairB, Port::Join}
                               : std::vector<Port>{Port::Cap};
        for (Port p : ports) {
            if (!port_use.count({i, static_cast<int>(p)})) {
                add("unused-port", "port " + std::string(port_name(p)) + " of vertex " + v.id +
                                       " is not attached to any edge",
                    {v.id});
                structure_ok = false;
            }
        }
    }

    if (data.edges.size() + 1 != data.vertices.size()) {
        add("edge-count", "tree must have |vertices|-1 edges (" +
                              std::to_string(data.vertices.size()) + " vertices, " +
                              std::to_string(data.edges.size()) + " edges)",
            {});
        structure_ok = false;
    }

    if (structure_ok) {
        // Connectivity; acyclicity then follows from the edge count.
        std::unordered_map<std::string, std::vector<std::string>> adj;
        for (const auto& e : data.edges) {
            adj[e.lower.vertex].push_back(e.upper.vertex);
            adj[e.upper.vertex].push_back(e.lower.vertex);
        }
        std::set<std::string> seen;
        std::vector<std::string> stack{data.vertices.front().id};
        seen.insert(stack.front());
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (const auto& w : adj[v])
                if (seen.insert(w).second) stack.push_back(w);
        }
        if (seen.size() != data.vertices.size())
            add("disconnected", "underlying graph is not connected", {});
    }

    int maxima = 0, minima = 0, saddles = 0;
    for (const auto& v : data.vertices) {
        if (v.kind == VertexKind::Max) ++maxima;
        else if (v.kind == VertexKind::Min) ++minima;
        else ++saddles;
    }
    if (maxima + minima != saddles + 2)
        add("euler-relation", "#max + #min must equal #saddles + 2", {});

    return report;
}

// Immutable validated tree.  All library operations are pure functions over
// these values; sharing across threads is safe.
class LevelTree {
public:
    static LevelTree from_data(LevelTreeData data) {
        auto report = validate(data);
        if (!report.valid()) {
            std::string msg = "tree rejected:";
            for (const auto& v : report.violations) msg += " [" + v.message + "]";
            throw Error(Errc::InvalidTree, msg);
        }
        return LevelTree(std::move(data));
    }

    // For values that are valid by construction (moves, decode, enumeration).
    static LevelTree from_data_unchecked(LevelTreeData data) {
        assert(validate(data).valid());
        return LevelTree(std::move(data));
    }

    const LevelTreeData& data() const { return data_; }
    const std::vector<VertexData>& vertices() const { return data_.vertices; }
    const std::vector<EdgeData>& edges() const { return data_.edges; }

    const VertexData* find_vertex(const std::string& id) const {
        auto it = vertex_index_.find(id);
        return it == vertex_index_.end() ? nullptr : &data_.vertices[it->second];
    }

    const EdgeData* find_edge(const std::string& id) const {
        auto it = edge_index_.find(id);
        return it == edge_index_.end() ? nullptr : &data_.edges[it->second];
    }

    const VertexData& vertex(const std::string& id) const {
        const auto* v = find_vertex(id);
        if (!v) throw Error(Errc::InvalidWitness, "no vertex with id " + id);
        return *v;
    }

    const EdgeData& edge(const std::string& id) const {
        const auto* e = find_edge(id);
        if (!e) throw Error(Errc::InvalidWitness, "no edge with id " + id);
        return *e;
    }

    // The unique edge attached at (vertex, port).
    const EdgeData& edge_at(const std::string& vertex_id, Port port) const {
        auto vi = vertex_index_.at(vertex_id);
        int ei = port_edge_[vi][static_cast<int>(port)];
        assert(ei >= 0);
        return data_.edges[static_cast<std::size_t>(ei)];
    }

    int k() const {
        int total = 0;
        for (const auto& e : data_.edges) total += static_cast<int>(e.marks.size());
        return total;
    }

    int saddle_count() const { return saddle_count_; }
    int extremum_count() const { return static_cast<int>(data_.vertices.size()) - saddle_count_; }

    bool is_leaf_edge(const EdgeData& e) const {
        return is_extremum(vertex(e.lower.vertex).kind) ||
               is_extremum(vertex(e.upper.vertex).kind);
    }

    // Leaf edge hanging off a saddle's pair port: the cap is an outermost
    // disk of the foliation.  Returns the saddle id, or nullopt.
    std::optional<std::string> outermost_saddle_of(const EdgeData& e) const {
        const auto& lo = vertex(e.lower.vertex);
        const auto& up = vertex(e.upper.vertex);
        if (is_extremum(up.kind) && is_saddle(lo.kind) && is_pair_port(e.lower.port))
            return lo.id;
        if (is_extremum(lo.kind) && is_saddle(up.kind) && is_pair_port(e.upper.port))
            return up.id;
        return std::nullopt;
    }

    bool operator==(const LevelTree& other) const { return data_ == other.data_; }

private:
    explicit LevelTree(LevelTreeData data) : data_(std::move(data)) {
        for (std::size_t i = 0; i < data_.vertices.size(); ++i) {
            vertex_index_.emplace(data_.vertices[i].id, i);
            if (is_saddle(data_.vertices[i].kind)) ++saddle_count_;
        }
        port_edge_.assign(data_.vertices.size(), {-1, -1, -1, -1});
        for (std::size_t i = 0; i < data_.edges.size(); ++i) {
            const auto& e = data_.edges[i];
            edge_index_.emplace(e.id, i);
            port_edge_[vertex_index_.at(e.lower.vertex)][static_cast<int>(e.lower.port)] =
                static_cast<int>(i);
            port_edge_[vertex_index_.at(e.upper.vertex)][static_cast<int>(e.upper.port)] =
                static_cast<int>(i);
        }
    }

    LevelTreeData data_;
    std::unordered_map<std::string, std::size_t> vertex_index_;
    std::unordered_map<std::string, std::size_t> edge_index_;
    std::vector<std::array<int, 4>> port_edge_;
    int saddle_count_ = 0;
};

struct FoliationStats {
    int k = 0;
    int s = 0;
    int m = 0;
    int outermost_count = 0;

    bool operator==(const FoliationStats&) const = default;
};

inline FoliationStats stats(const LevelTree& tree) {
    FoliationStats st;
    st.k = tree.k();
    st.s = tree.saddle_count();
    st.m = tree.extremum_count();
    for (const auto& e : tree.edges())
        if (tree.outermost_saddle_of(e)) ++st.outermost_count;
    return st;
}

// The h -> -h image: extrema and saddle kinds swap, edges reverse, mark
// order along each edge reverses.  Germ annotations survive (an endpoint
// extremum stays an endpoint extremum under reflection).
inline LevelTree flip(const LevelTree& tree) {
    LevelTreeData out = tree.data();
    for (auto& v : out.vertices) v.kind = flipped_kind(v.kind);
    for (auto& e : out.edges) {
        std::swap(e.lower, e.upper);
        std::reverse(e.marks.begin(), e.marks.end());
    }
    return LevelTree::from_data_unchecked(std::move(out));
}

// Distinct integer ranks with rank(lower) < rank(upper) for every edge.
// Kahn's algorithm with lexicographic tie-breaking, so the result is a pure
// function of the tree.
inline std::map<std::string, int> height_assignment(const LevelTree& tree) {
    std::map<std::string, int> pending;  // vertex -> unresolved lower neighbours
    std::map<std::string, std::vector<std::string>> above;
    for (const auto& v : tree.vertices()) pending[v.id] = 0;
    for (const auto& e : tree.edges()) {
        ++pending[e.upper.vertex];
        above[e.lower.vertex].push_back(e.upper.vertex);
    }
    std::set<std::string> ready;
    for (const auto& [id, n] : pending)
        if (n == 0) ready.insert(id);

    std::map<std::string, int> rank;
    int next = 0;
    while (!ready.empty()) {
        auto id = *ready.begin();
        ready.erase(ready.begin());
        rank[id] = next++;
        for (const auto& w : above[id])
            if (--pending[w] == 0) ready.insert(w);
    }
    assert(rank.size() == tree.vertices().size());
    return rank;
}

}  // namespace follab
