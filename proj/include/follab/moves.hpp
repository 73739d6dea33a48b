#pragma once

// Tree rewrites realizing the surface isotopies: saddle-creating finger and
// split moves, outermost-saddle elimination with its maxima-creation cost,
// and the five-saddle reduction.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "follab/core.hpp"
#include "follab/level_tree.hpp"
#include "follab/predicates.hpp"

namespace follab {

namespace detail {

struct FreshIds {
    std::string saddle, extremum, upper_edge, cap_edge;
};

inline FreshIds fresh_ids(const LevelTreeData& data) {
    std::set<std::string> used;
    for (const auto& v : data.vertices) used.insert(v.id);
    for (const auto& e : data.edges) used.insert(e.id);
    for (int n = 0;; ++n) {
        auto suffix = std::to_string(n);
        FreshIds ids{"w" + suffix, "x" + suffix, "es" + suffix, "ec" + suffix};
        if (!used.count(ids.saddle) && !used.count(ids.extremum) &&
            !used.count(ids.upper_edge) && !used.count(ids.cap_edge))
            return ids;
    }
}

// Core insertion rewrite: a new saddle w lands on the edge, splitting its
// mark list into (lower half | cap | upper half) at the given offsets, with
// a fresh cap extremum carrying the middle segment.  SaddleUp hangs the cap
// below w off a fresh minimum, SaddleDown above off a fresh maximum; the
// lower half keeps the edge id.
inline LevelTreeData insert_saddle(const LevelTree& tree, const std::string& edge_id,
                                   VertexKind saddle_kind, std::size_t lower_count,
                                   std::size_t cap_count) {
    const auto& e = tree.edge(edge_id);
    assert(saddle_kind == VertexKind::SaddleUp || saddle_kind == VertexKind::SaddleDown);
    assert(lower_count + cap_count <= e.marks.size());

    LevelTreeData out = tree.data();
    auto ids = fresh_ids(out);
    bool up = saddle_kind == VertexKind::SaddleUp;

    out.vertices.push_back({ids.saddle, saddle_kind});
    out.vertices.push_back({ids.extremum, up ? VertexKind::Min : VertexKind::Max});

    auto first = e.marks.begin();
    std::vector<MarkPoint> lower_marks(first, first + lower_count);
    std::vector<MarkPoint> cap_marks(first + lower_count, first + lower_count + cap_count);
    std::vector<MarkPoint> upper_marks(first + lower_count + cap_count, e.marks.end());

    EdgeData lower_half;
    lower_half.id = e.id;
    lower_half.lower = e.lower;
    lower_half.upper = {ids.saddle, up ? Port::PairA : Port::Join};
    lower_half.marks = std::move(lower_marks);

    EdgeData upper_half;
    upper_half.id = ids.upper_edge;
    upper_half.lower = {ids.saddle, up ? Port::Join : Port::PairA};
    upper_half.upper = e.upper;
    upper_half.marks = std::move(upper_marks);

    EdgeData cap;
    cap.id = ids.cap_edge;
    if (up) {
        cap.lower = {ids.extremum, Port::Cap};
        cap.upper = {ids.saddle, Port::PairB};
    } else {
        cap.lower = {ids.saddle, Port::PairB};
        cap.upper = {ids.extremum, Port::Cap};
    }
    cap.marks = std::move(cap_marks);

    for (auto& edge : out.edges)
        if (edge.id == edge_id) edge = std::move(lower_half);
    out.edges.push_back(std::move(upper_half));
    out.edges.push_back(std::move(cap));
    return out;
}

// Inverse of insert_saddle: cancel an outermost saddle against its cap
// extremum and fuse its two remaining edges, keeping the lower edge's id.
// The eliminated cap's marks land between the fused halves' marks.
inline std::pair<LevelTreeData, int> remove_saddle(const LevelTree& tree,
                                                   const std::string& saddle_id,
                                                   const std::string& cap_edge_id) {
    const auto& cap = detail::checked_outermost(tree, saddle_id, cap_edge_id);
    auto view = saddle_view(tree, saddle_id);
    const auto& other_pair = tree.edge(view.pair_edges[0] == cap_edge_id ? view.pair_edges[1]
                                                                         : view.pair_edges[0]);
    const auto& join = tree.edge(view.join_edge);
    bool up = tree.vertex(saddle_id).kind == VertexKind::SaddleUp;

    const EdgeData& lower_fused = up ? other_pair : join;
    const EdgeData& upper_fused = up ? join : other_pair;

    EdgeData fused;
    fused.id = lower_fused.id;
    fused.lower = lower_fused.lower;
    fused.upper = upper_fused.upper;
    fused.marks = lower_fused.marks;
    fused.marks.insert(fused.marks.end(), cap.marks.begin(), cap.marks.end());
    fused.marks.insert(fused.marks.end(), upper_fused.marks.begin(), upper_fused.marks.end());

    const std::string cap_extremum = is_extremum(tree.vertex(cap.lower.vertex).kind)
                                         ? cap.lower.vertex
                                         : cap.upper.vertex;

    LevelTreeData out;
    for (const auto& v : tree.vertices())
        if (v.id != saddle_id && v.id != cap_extremum) out.vertices.push_back(v);
    bool fused_emitted = false;
    for (const auto& e : tree.edges()) {
        if (e.id == cap_edge_id) continue;
        if (e.id == other_pair.id || e.id == join.id) {
            if (!fused_emitted) {
                out.edges.push_back(fused);
                fused_emitted = true;
            }
            continue;
        }
        out.edges.push_back(e);
    }
    return {std::move(out), static_cast<int>(cap.marks.size())};
}

}  // namespace detail

enum class FingerOrientation { PushUp, PushDown };
enum class ThroughSide { ContinuationOnJoin, ContinuationOnPair };

// Push a finger of the surface through the leaf carrying the designated
// mark: one more saddle, one more extremum, and the mark moves onto the
// fresh cap.  Pushing down dents a fresh minimum under a rising saddle, so
// the continuation toward the edge's upper endpoint leaves through the join
// port; pushing up mirrors this and the continuation leaves through a pair
// port.  The other two orientation/side combinations do not type-check
// against the edge's direction.
inline LevelTree finger_move(const LevelTree& tree, const std::string& edge_id,
                             std::size_t mark_index, FingerOrientation orientation,
                             ThroughSide through) {
    const auto& e = tree.edge(edge_id);
    if (mark_index >= e.marks.size())
        throw Error(Errc::InvalidWitness, "edge " + edge_id + " carries no mark at index " +
                                              std::to_string(mark_index));

    VertexKind kind;
    if (orientation == FingerOrientation::PushDown && through == ThroughSide::ContinuationOnJoin)
        kind = VertexKind::SaddleUp;
    else if (orientation == FingerOrientation::PushUp &&
             through == ThroughSide::ContinuationOnPair)
        kind = VertexKind::SaddleDown;
    else
        throw Error(Errc::InconsistentOrientation,
                    "push-down requires the continuation on the join port, push-up on a pair "
                    "port");

    return LevelTree::from_data_unchecked(
        detail::insert_saddle(tree, edge_id, kind, mark_index, 1));
}

struct SplitPartition {
    int below = 0;  // marks staying between the original saddle and the new one
    int cap = 0;    // marks moving onto the fresh cap
    int keep = 0;   // marks staying on the original cap
};

// Pinch an outermost disk carrying several marks into two outermost disks:
// `keep` marks stay with the original extremum, `cap` marks move onto a
// fresh cap, `below` marks stay on the join side toward the original
// saddle.  Both new outermost disks must end up marked.
inline LevelTree split_outermost(const LevelTree& tree, const std::string& edge_id,
                                 SplitPartition part) {
    const auto& e = tree.edge(edge_id);
    auto saddle = tree.outermost_saddle_of(e);
    if (!saddle)
        throw Error(Errc::InvalidWitness, "edge " + edge_id + " is not outermost");
    if (part.below < 0 || part.cap < 0 || part.keep < 0 ||
        static_cast<std::size_t>(part.below + part.cap + part.keep) != e.marks.size())
        throw Error(Errc::InvalidWitness, "partition must cover the edge's marks exactly");
    if (part.cap == 0 || part.keep == 0)
        throw Error(Errc::WouldCreateUnmarkedOutermostDisk,
                    "both resulting outermost disks must carry a mark");

    // Ascending mark order runs from the original cap toward a SaddleUp
    // saddle, and from a SaddleDown saddle toward the cap.
    bool up = tree.vertex(*saddle).kind == VertexKind::SaddleUp;
    std::size_t lower_count = static_cast<std::size_t>(up ? part.keep : part.below);
    return LevelTree::from_data_unchecked(
        detail::insert_saddle(tree, edge_id, up ? VertexKind::SaddleUp : VertexKind::SaddleDown,
                              lower_count, static_cast<std::size_t>(part.cap)));
}

// Cancel an outermost saddle against its cap extremum; the cost is the
// number of marks the isotopy drags past the saddle level (new maxima of
// the knot).
inline std::pair<LevelTree, int> eliminate_outermost(const LevelTree& tree,
                                                     const std::string& saddle_id,
                                                     const std::string& edge_id) {
    auto [data, cost] = detail::remove_saddle(tree, saddle_id, edge_id);
    return {LevelTree::from_data_unchecked(std::move(data)), cost};
}

// Five-saddle reduction: a non-standard saddle whose two pair subtrees are
// two-standard-saddle gadgets with a single marked outermost disk each is
// deleted along with both subtrees; the join edge caps off at a fresh
// extremum and keeps one representative mark.
inline LevelTree reduce_five(const LevelTree& tree, const std::string& saddle_id) {
    auto view = saddle_view(tree, saddle_id);
    if (is_standard(tree, saddle_id))
        throw Error(Errc::PatternNotFound, "saddle " + saddle_id + " is standard");

    std::set<std::string> doomed_vertices{saddle_id};
    std::set<std::string> doomed_edges;
    std::vector<std::string> removed_mark_ids;

    for (const auto& pair_edge_id : view.pair_edges) {
        const auto& pair_edge = tree.edge(pair_edge_id);
        const std::string far = pair_edge.lower.vertex == saddle_id ? pair_edge.upper.vertex
                                                                    : pair_edge.lower.vertex;
        // Component of tree - saddle on this side, plus the pair edge itself.
        std::set<std::string> comp{far};
        std::vector<std::string> stack{far};
        std::set<std::string> comp_edges{pair_edge_id};
        while (!stack.empty()) {
            auto vid = stack.back();
            stack.pop_back();
            const auto& v = tree.vertex(vid);
            const auto ports = is_saddle(v.kind)
                                   ? std::vector<Port>{Port::PairA, Port::PairB, Port::Join}
                                   : std::vector<Port>{Port::Cap};
            for (Port p : ports) {
                const auto& e = tree.edge_at(vid, p);
                if (e.id == pair_edge_id) continue;
                comp_edges.insert(e.id);
                const auto& other = e.lower.vertex == vid ? e.upper.vertex : e.lower.vertex;
                if (comp.insert(other).second) stack.push_back(other);
            }
        }

        int sub_saddles = 0, sub_standard = 0, sub_outermost = 0, sub_marks = 0;
        for (const auto& vid : comp)
            if (is_saddle(tree.vertex(vid).kind)) {
                ++sub_saddles;
                if (is_standard(tree, vid)) ++sub_standard;
            }
        for (const auto& eid : comp_edges) {
            const auto& e = tree.edge(eid);
            sub_marks += static_cast<int>(e.marks.size());
            if (auto s = tree.outermost_saddle_of(e); s && comp.count(*s)) ++sub_outermost;
        }

        const std::string where = "pair subtree at edge " + pair_edge_id;
        if (sub_saddles != 2)
            throw Error(Errc::PatternNotFound, where + " must contain exactly two saddles, found " +
                                                   std::to_string(sub_saddles));
        if (sub_standard != 2)
            throw Error(Errc::PatternNotFound, where + " contains a non-standard saddle");
        if (sub_outermost != 1)
            throw Error(Errc::PatternNotFound, where + " must contain exactly one outermost edge, found " +
                                                   std::to_string(sub_outermost));
        if (sub_marks != 1)
            throw Error(Errc::PatternNotFound, where + " must contain exactly one mark, found " +
                                                   std::to_string(sub_marks));

        doomed_vertices.insert(comp.begin(), comp.end());
        doomed_edges.insert(comp_edges.begin(), comp_edges.end());
        for (const auto& eid : comp_edges)
            for (const auto& m : tree.edge(eid).marks) removed_mark_ids.push_back(m.id);
    }

    LevelTreeData out;
    for (const auto& v : tree.vertices())
        if (!doomed_vertices.count(v.id)) out.vertices.push_back(v);
    for (const auto& e : tree.edges())
        if (!doomed_edges.count(e.id)) out.edges.push_back(e);

    auto ids = detail::fresh_ids(out);
    bool up = tree.vertex(saddle_id).kind == VertexKind::SaddleUp;
    out.vertices.push_back({ids.extremum, up ? VertexKind::Min : VertexKind::Max});

    MarkPoint gained{*std::min_element(removed_mark_ids.begin(), removed_mark_ids.end()),
                     std::nullopt};
    for (auto& e : out.edges) {
        if (e.id != view.join_edge) continue;
        if (up) {
            e.lower = {ids.extremum, Port::Cap};
            e.marks.insert(e.marks.begin(), gained);
        } else {
            e.upper = {ids.extremum, Port::Cap};
            e.marks.push_back(gained);
        }
    }
    return LevelTree::from_data_unchecked(std::move(out));
}

struct LedgerStep {
    std::string saddle;
    int cost = 0;

    bool operator==(const LedgerStep&) const = default;
};

struct EliminationLedger {
    std::vector<LedgerStep> steps;
    int total_cost = 0;

    bool operator==(const EliminationLedger&) const = default;
};

enum class EliminationStrategy { MinCostOutermost };

// Repeatedly cancel the cheapest outermost saddle until the foliation is
// saddle-free.  Two outermost disks always exist while saddles remain, so
// the greedy step costs at most floor(k/2).  Ties break on (cost, saddle
// id, edge id), which makes the ledger a pure function of the input.
inline std::pair<LevelTree, EliminationLedger> eliminate_all(
    const LevelTree& tree, EliminationStrategy strategy = EliminationStrategy::MinCostOutermost) {
    (void)strategy;
    LevelTree current = tree;
    EliminationLedger ledger;
    while (current.saddle_count() > 0) {
        auto candidates = outermost_edges(current);
        assert(!candidates.empty());
        const std::pair<std::string, std::string>* best = nullptr;
        int best_cost = 0;
        for (const auto& c : candidates) {
            int cost = static_cast<int>(current.edge(c.second).marks.size());
            if (!best || cost < best_cost) {
                best = &c;
                best_cost = cost;
            }
        }
        auto [next, cost] = eliminate_outermost(current, best->first, best->second);
        ledger.steps.push_back({best->first, cost});
        ledger.total_cost += cost;
        current = std::move(next);
    }
    return {std::move(current), std::move(ledger)};
}

}  // namespace follab
