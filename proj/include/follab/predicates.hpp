#pragma once

// Saddle taxonomy and the admissibility predicate, evaluated purely on a
// level tree.  A saddle's pair edges carry the bicollar circles of its two
// wedge circles, the join edge the merged circle.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "follab/core.hpp"
#include "follab/level_tree.hpp"

namespace follab {

struct SaddleView {
    std::string saddle;
    std::array<std::string, 2> pair_edges;
    std::string join_edge;
};

inline SaddleView saddle_view(const LevelTree& tree, const std::string& saddle_id) {
    const auto& v = tree.vertex(saddle_id);
    if (!is_saddle(v.kind))
        throw Error(Errc::NotASaddle, "vertex " + saddle_id + " is a " + kind_name(v.kind));
    return SaddleView{saddle_id,
                      {tree.edge_at(saddle_id, Port::PairA).id,
                       tree.edge_at(saddle_id, Port::PairB).id},
                      tree.edge_at(saddle_id, Port::Join).id};
}

// Pair-attached leaf edges: their caps are the outermost disks.  Sorted by
// (saddle id, edge id).
inline std::vector<std::pair<std::string, std::string>> outermost_edges(const LevelTree& tree) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : tree.edges())
        if (auto s = tree.outermost_saddle_of(e)) out.emplace_back(*s, e.id);
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline const EdgeData& checked_outermost(const LevelTree& tree, const std::string& saddle,
                                         const std::string& edge) {
    const auto& e = tree.edge(edge);
    auto s = tree.outermost_saddle_of(e);
    if (!s || *s != saddle)
        throw Error(Errc::InvalidWitness,
                    "(" + saddle + ", " + edge + ") is not an outermost pair");
    return e;
}

}  // namespace detail

// Outermost saddle whose disk misses the knot.
inline bool is_inessential(const LevelTree& tree, const std::string& saddle,
                           const std::string& edge) {
    return detail::checked_outermost(tree, saddle, edge).marks.empty();
}

// A saddle is standard when its merged circle bounds a monotone disk
// disjoint from the knot: the join edge must cap off at an extremum and
// carry no marks.
inline bool is_standard(const LevelTree& tree, const std::string& saddle_id) {
    auto view = saddle_view(tree, saddle_id);
    const auto& join = tree.edge(view.join_edge);
    return tree.is_leaf_edge(join) && join.marks.empty();
}

// Saddle pairs whose wedge circles cobound an unmarked monotone annulus:
// an unmarked edge joining a pair port of one saddle to a pair port of the
// other.  Each pair is sorted internally; the list is sorted.
inline std::vector<std::array<std::string, 2>> adjacent_pairs(const LevelTree& tree) {
    std::vector<std::array<std::string, 2>> out;
    for (const auto& e : tree.edges()) {
        if (!e.marks.empty()) continue;
        if (!is_pair_port(e.lower.port) || !is_pair_port(e.upper.port)) continue;
        const auto& lo = tree.vertex(e.lower.vertex);
        const auto& up = tree.vertex(e.upper.vertex);
        if (!is_saddle(lo.kind) || !is_saddle(up.kind)) continue;
        std::array<std::string, 2> pair{lo.id, up.id};
        std::sort(pair.begin(), pair.end());
        out.push_back(std::move(pair));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// First (end, middle, end) triple of distinct standard saddles with both
// ends adjacent to the middle; ends sorted, middles scanned in id order.
inline std::optional<std::array<std::string, 3>> standard_three_chain(const LevelTree& tree) {
    std::map<std::string, bool> standard;
    for (const auto& v : tree.vertices())
        if (is_saddle(v.kind)) standard[v.id] = is_standard(tree, v.id);

    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& p : adjacent_pairs(tree)) {
        adj[p[0]].push_back(p[1]);
        adj[p[1]].push_back(p[0]);
    }

    for (auto& [mid, neighbours] : adj) {
        if (!standard[mid]) continue;
        std::vector<std::string> ends;
        for (const auto& n : neighbours)
            if (standard[n]) ends.push_back(n);
        if (ends.size() < 2) continue;
        std::sort(ends.begin(), ends.end());
        return std::array<std::string, 3>{ends[0], mid, ends[1]};
    }
    return std::nullopt;
}

struct AdmissibilityViolation {
    enum class Kind { UnmarkedOutermostDisk, StandardThreeChain };
    Kind kind;
    std::vector<std::string> witness;
};

inline const char* violation_kind_name(AdmissibilityViolation::Kind k) {
    return k == AdmissibilityViolation::Kind::UnmarkedOutermostDisk ? "UnmarkedOutermostDisk"
                                                                    : "StandardThreeChain";
}

struct AdmissibilityReport {
    bool admissible = false;
    std::vector<AdmissibilityViolation> violations;
};

// Admissible: every outermost disk carries at least one marked point and no
// chain of three standard saddles glued along adjacencies exists.
inline AdmissibilityReport is_admissible(const LevelTree& tree) {
    AdmissibilityReport report;
    for (const auto& [saddle, edge] : outermost_edges(tree))
        if (tree.edge(edge).marks.empty())
            report.violations.push_back({AdmissibilityViolation::Kind::UnmarkedOutermostDisk,
                                         {saddle, edge}});
    if (auto chain = standard_three_chain(tree))
        report.violations.push_back({AdmissibilityViolation::Kind::StandardThreeChain,
                                     {(*chain)[0], (*chain)[1], (*chain)[2]}});
    report.admissible = report.violations.empty();
    return report;
}

// Removability lives on the knot strands, which the tree does not model;
// every mark on the disk must carry a germ annotation.
inline bool is_removable(const LevelTree& tree, const std::string& saddle,
                         const std::string& edge) {
    const auto& e = detail::checked_outermost(tree, saddle, edge);
    for (const auto& m : e.marks)
        if (!m.germ)
            throw Error(Errc::AnnotationRequired,
                        "mark " + m.id + " on edge " + edge + " carries no germ annotation");
    return std::all_of(e.marks.begin(), e.marks.end(), [](const MarkPoint& m) {
        return *m.germ == Germ::EndpointExtremumOnCapSide;
    });
}

}  // namespace follab
