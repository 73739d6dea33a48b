#pragma once

// Reference fixtures shared across the test suites.
//
//   t0(k)   single Min--Max edge with k marks
//   t1      one rising saddle, two marked minimum caps, unmarked join cap
//   t2      the two-saddle k=2 configuration (both saddles standard)
//   t3bad   t2 with a minimum replaced by a third standard saddle, creating
//           a standard three-chain
//   t5      non-standard saddle with two 2-standard-saddle pair gadgets;
//           the five-saddle reduction collapses it to t0(2)

#include <optional>
#include <string>

#include "follab/level_tree.hpp"

namespace follab::test {

inline LevelTreeData t0_data(int k) {
    LevelTreeData d;
    d.vertices = {{"m", VertexKind::Min}, {"M", VertexKind::Max}};
    EdgeData e{"e", {"m", Port::Cap}, {"M", Port::Cap}, {}};
    for (int i = 1; i <= k; ++i) e.marks.push_back({"x" + std::to_string(i), std::nullopt});
    d.edges.push_back(std::move(e));
    return d;
}

inline LevelTree t0(int k) { return LevelTree::from_data(t0_data(k)); }

inline LevelTreeData t1_data() {
    LevelTreeData d;
    d.vertices = {{"min1", VertexKind::Min},
                  {"min2", VertexKind::Min},
                  {"max1", VertexKind::Max},
                  {"sigma", VertexKind::SaddleUp}};
    d.edges = {{"a", {"min1", Port::Cap}, {"sigma", Port::PairA}, {{"p1", std::nullopt}}},
               {"b", {"min2", Port::Cap}, {"sigma", Port::PairB}, {{"p2", std::nullopt}}},
               {"c", {"sigma", Port::Join}, {"max1", Port::Cap}, {}}};
    return d;
}

inline LevelTree t1() { return LevelTree::from_data(t1_data()); }

inline LevelTreeData t2_data() {
    LevelTreeData d;
    d.vertices = {{"sigma", VertexKind::SaddleDown}, {"tau", VertexKind::SaddleUp},
                  {"min1", VertexKind::Min},         {"min2", VertexKind::Min},
                  {"max1", VertexKind::Max},         {"max2", VertexKind::Max}};
    d.edges = {{"e1", {"sigma", Port::PairA}, {"max1", Port::Cap}, {{"p1", std::nullopt}}},
               {"e2", {"sigma", Port::PairB}, {"tau", Port::PairA}, {}},
               {"e3", {"min1", Port::Cap}, {"tau", Port::PairB}, {{"p2", std::nullopt}}},
               {"e4", {"tau", Port::Join}, {"max2", Port::Cap}, {}},
               {"e5", {"min2", Port::Cap}, {"sigma", Port::Join}, {}}};
    return d;
}

inline LevelTree t2() { return LevelTree::from_data(t2_data()); }

inline LevelTreeData t3bad_data() {
    LevelTreeData d;
    d.vertices = {{"sigma", VertexKind::SaddleDown}, {"tau", VertexKind::SaddleUp},
                  {"rho", VertexKind::SaddleDown},   {"min2", VertexKind::Min},
                  {"min3", VertexKind::Min},         {"max1", VertexKind::Max},
                  {"max2", VertexKind::Max},         {"max3", VertexKind::Max}};
    d.edges = {{"e1", {"sigma", Port::PairA}, {"max1", Port::Cap}, {{"p1", std::nullopt}}},
               {"e2", {"sigma", Port::PairB}, {"tau", Port::PairA}, {}},
               {"e3", {"rho", Port::PairA}, {"tau", Port::PairB}, {}},
               {"e4", {"tau", Port::Join}, {"max2", Port::Cap}, {}},
               {"e5", {"min2", Port::Cap}, {"sigma", Port::Join}, {}},
               {"e6", {"rho", Port::PairB}, {"max3", Port::Cap}, {{"p2", std::nullopt}}},
               {"e7", {"min3", Port::Cap}, {"rho", Port::Join}, {}}};
    return d;
}

inline LevelTree t3bad() { return LevelTree::from_data(t3bad_data()); }

inline LevelTreeData t5_data() {
    LevelTreeData d;
    d.vertices = {{"nu", VertexKind::SaddleDown}, {"min0", VertexKind::Min}};
    d.edges.push_back({"ej", {"min0", Port::Cap}, {"nu", Port::Join}, {{"p0", std::nullopt}}});
    for (int i = 1; i <= 2; ++i) {
        auto n = std::to_string(i);
        Port nu_port = i == 1 ? Port::PairA : Port::PairB;
        d.vertices.push_back({"tau" + n, VertexKind::SaddleUp});
        d.vertices.push_back({"sig" + n, VertexKind::SaddleDown});
        d.vertices.push_back({"capmax" + n, VertexKind::Max});
        d.vertices.push_back({"joinmax" + n, VertexKind::Max});
        d.vertices.push_back({"joinmin" + n, VertexKind::Min});
        d.edges.push_back({"p" + n, {"nu", nu_port}, {"tau" + n, Port::PairA}, {}});
        d.edges.push_back({"q" + n, {"sig" + n, Port::PairA}, {"tau" + n, Port::PairB}, {}});
        d.edges.push_back(
            {"qq" + n, {"sig" + n, Port::PairB}, {"capmax" + n, Port::Cap}, {{"p" + n + "m", std::nullopt}}});
        d.edges.push_back({"qj" + n, {"joinmin" + n, Port::Cap}, {"sig" + n, Port::Join}, {}});
        d.edges.push_back({"r" + n, {"tau" + n, Port::Join}, {"joinmax" + n, Port::Cap}, {}});
    }
    return d;
}

inline LevelTree t5() { return LevelTree::from_data(t5_data()); }

// --- small mutation helpers ---

inline LevelTreeData& set_germ(LevelTreeData& d, const std::string& mark_id,
                               std::optional<Germ> germ) {
    for (auto& e : d.edges)
        for (auto& m : e.marks)
            if (m.id == mark_id) m.germ = germ;
    return d;
}

inline LevelTreeData& drop_mark(LevelTreeData& d, const std::string& mark_id) {
    for (auto& e : d.edges)
        for (auto it = e.marks.begin(); it != e.marks.end(); ++it)
            if (it->id == mark_id) {
                e.marks.erase(it);
                return d;
            }
    return d;
}

inline LevelTreeData& add_mark(LevelTreeData& d, const std::string& edge_id,
                               const std::string& mark_id, std::size_t position,
                               std::optional<Germ> germ = std::nullopt) {
    for (auto& e : d.edges)
        if (e.id == edge_id)
            e.marks.insert(e.marks.begin() + static_cast<std::ptrdiff_t>(position),
                           {mark_id, germ});
    return d;
}

}  // namespace follab::test
