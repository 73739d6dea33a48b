#pragma once

// Canonical codes for level trees: a decodable string that is equal for two
// trees exactly when they are isomorphic (relabeling of vertices, edges and
// marks, plus swapping PairA/PairB at any saddle).
//
// Code grammar.  A tree is encoded rooted at every vertex and the
// lexicographically smallest string wins.  Rooted encoding:
//
//   enc(v)      = kind-char followed by the child parts of v
//   child part  = '[' germ-chars ']' enc(child)
//
// kind-chars: m=min M=max u=saddle-up d=saddle-down; germ-chars (ascending
// height along the edge): n=unannotated t=monotone-through e=endpoint
// extremum.  Part order is fixed by port role (entry port, then pair before
// join), except that the two pair-port parts of a saddle reached through its
// join port (or used as the root) are sorted — that quotient is exactly the
// PairA/PairB relabeling freedom.  Arities are determined by kind and entry
// direction, so the string parses back to a tree.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "follab/core.hpp"
#include "follab/level_tree.hpp"

namespace follab {

namespace detail {

inline char kind_char(VertexKind k) {
    switch (k) {
    case VertexKind::Min: return 'm';
    case VertexKind::Max: return 'M';
    case VertexKind::SaddleUp: return 'u';
    case VertexKind::SaddleDown: return 'd';
    }
    return '?';
}

inline char germ_char(const std::optional<Germ>& g) {
    if (!g) return 'n';
    return *g == Germ::MonotoneThrough ? 't' : 'e';
}

struct CodeContext {
    const LevelTree& tree;

    std::string germ_string(const EdgeData& e) const {
        std::string s;
        s.reserve(e.marks.size());
        for (const auto& m : e.marks) s.push_back(germ_char(m.germ));
        return s;
    }

    std::string part(const std::string& from_vertex, Port exit_port) const {
        const auto& e = tree.edge_at(from_vertex, exit_port);
        bool going_up = e.lower.vertex == from_vertex && e.lower.port == exit_port;
        const auto& far = going_up ? e.upper : e.lower;
        return "[" + germ_string(e) + "]" + encode_from(far.vertex, far.port);
    }

    std::string encode_from(const std::string& vertex_id, std::optional<Port> entry) const {
        const auto& v = tree.vertex(vertex_id);
        std::string out(1, kind_char(v.kind));
        if (is_extremum(v.kind)) {
            if (!entry) out += part(vertex_id, Port::Cap);
            return out;
        }
        if (!entry) {
            auto a = part(vertex_id, Port::PairA);
            auto b = part(vertex_id, Port::PairB);
            if (b < a) std::swap(a, b);
            return out + a + b + part(vertex_id, Port::Join);
        }
        if (is_pair_port(*entry)) {
            Port other = *entry == Port::PairA ? Port::PairB : Port::PairA;
            return out + part(vertex_id, other) + part(vertex_id, Port::Join);
        }
        auto a = part(vertex_id, Port::PairA);
        auto b = part(vertex_id, Port::PairB);
        if (b < a) std::swap(a, b);
        return out + a + b;
    }
};

}  // namespace detail

inline std::string canonical_form(const LevelTree& tree) {
    detail::CodeContext ctx{tree};
    std::string best;
    for (const auto& v : tree.vertices()) {
        auto code = ctx.encode_from(v.id, std::nullopt);
        if (best.empty() || code < best) best = std::move(code);
    }
    return best;
}

namespace detail {

// Recursive-descent parser for the code grammar; produces fresh ids v0..,
// e0.., m0.. in traversal order so decoding is deterministic.
class CodeDecoder {
public:
    explicit CodeDecoder(const std::string& code) : code_(code) {}

    LevelTreeData run() {
        LevelTreeData data;
        VertexKind kind = take_kind();
        std::string root = add_vertex(data, kind);
        if (is_extremum(kind)) {
            child(data, root, Port::Cap, kind);
        } else {
            child(data, root, Port::PairA, kind);
            child(data, root, Port::PairB, kind);
            child(data, root, Port::Join, kind);
        }
        if (pos_ != code_.size()) fail("trailing characters");
        return data;
    }

private:
    void fail(const std::string& why) const {
        throw Error(Errc::ParseError, "bad canonical code at offset " +
                                          std::to_string(pos_) + ": " + why);
    }

    char peek() const {
        if (pos_ >= code_.size()) throw Error(Errc::ParseError, "truncated canonical code");
        return code_[pos_];
    }

    char take() {
        char c = peek();
        ++pos_;
        return c;
    }

    VertexKind take_kind() {
        switch (take()) {
        case 'm': return VertexKind::Min;
        case 'M': return VertexKind::Max;
        case 'u': return VertexKind::SaddleUp;
        case 'd': return VertexKind::SaddleDown;
        default: --pos_; fail("expected kind character"); return VertexKind::Min;
        }
    }

    std::string add_vertex(LevelTreeData& data, VertexKind kind) {
        std::string id = "v" + std::to_string(data.vertices.size());
        data.vertices.push_back({id, kind});
        return id;
    }

    void child(LevelTreeData& data, const std::string& parent, Port exit_port,
               VertexKind parent_kind) {
        if (take() != '[') fail("expected '['");
        std::vector<MarkPoint> marks;
        while (peek() != ']') {
            MarkPoint m;
            m.id = "m" + std::to_string(mark_counter_++);
            switch (take()) {
            case 'n': break;
            case 't': m.germ = Germ::MonotoneThrough; break;
            case 'e': m.germ = Germ::EndpointExtremumOnCapSide; break;
            default: --pos_; fail("expected germ character");
            }
            marks.push_back(std::move(m));
        }
        take();  // ']'

        bool going_up = *port_side(parent_kind, exit_port) == Side::Above;
        VertexKind kind = take_kind();
        std::string vid = add_vertex(data, kind);

        // Entry port of the child is forced by its kind and the direction.
        Port entry;
        if (is_extremum(kind)) {
            entry = Port::Cap;
        } else if (going_up) {
            entry = kind == VertexKind::SaddleUp ? Port::PairA : Port::Join;
        } else {
            entry = kind == VertexKind::SaddleUp ? Port::Join : Port::PairA;
        }
        Side need = going_up ? Side::Below : Side::Above;
        if (*port_side(kind, entry) != need) fail("kind inconsistent with edge direction");

        EdgeData e;
        e.id = "e" + std::to_string(data.edges.size());
        if (going_up) {
            e.lower = {parent, exit_port};
            e.upper = {vid, entry};
        } else {
            e.lower = {vid, entry};
            e.upper = {parent, exit_port};
        }
        e.marks = std::move(marks);
        data.edges.push_back(std::move(e));

        if (is_extremum(kind)) return;
        if (is_pair_port(entry)) {
            child(data, vid, Port::PairB, kind);
            child(data, vid, Port::Join, kind);
        } else {
            child(data, vid, Port::PairA, kind);
            child(data, vid, Port::PairB, kind);
        }
    }

    const std::string& code_;
    std::size_t pos_ = 0;
    std::size_t mark_counter_ = 0;
};

}  // namespace detail

inline LevelTree decode_canonical(const std::string& code) {
    return LevelTree::from_data_unchecked(detail::CodeDecoder(code).run());
}

inline bool isomorphic(const LevelTree& a, const LevelTree& b) {
    return canonical_form(a) == canonical_form(b);
}

// Canonical code of the {tree, flip(tree)} orbit.
inline std::string canonical_form_mod_flip(const LevelTree& tree) {
    return std::min(canonical_form(tree), canonical_form(flip(tree)));
}

}  // namespace follab
