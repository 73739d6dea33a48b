#pragma once

// JSON formats.  The foliation format round-trips bit-exactly: emission uses
// a fixed key order and 2-space indentation, and parsing preserves array
// order, so emit(parse(emit(t))) == emit(t).

#include <optional>
#include <string>

#include <json.hpp>

#include "follab/core.hpp"
#include "follab/level_tree.hpp"
#include "follab/moves.hpp"
#include "follab/predicates.hpp"

namespace follab {

using json = nlohmann::ordered_json;

namespace detail {

inline VertexKind kind_from_string(const std::string& s) {
    if (s == "min") return VertexKind::Min;
    if (s == "max") return VertexKind::Max;
    if (s == "saddle_up") return VertexKind::SaddleUp;
    if (s == "saddle_down") return VertexKind::SaddleDown;
    throw Error(Errc::ParseError, "unknown vertex kind \"" + s + "\"");
}

inline Port port_from_string(const std::string& s) {
    if (s == "cap") return Port::Cap;
    if (s == "pair_a") return Port::PairA;
    if (s == "pair_b") return Port::PairB;
    if (s == "join") return Port::Join;
    throw Error(Errc::ParseError, "unknown port \"" + s + "\"");
}

inline json endpoint_to_json(const EndpointRef& e) {
    return json{{"vertex", e.vertex}, {"port", port_name(e.port)}};
}

inline EndpointRef endpoint_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertex") || !j.contains("port"))
        throw Error(Errc::ParseError, "endpoint must carry \"vertex\" and \"port\"");
    return {j.at("vertex").get<std::string>(),
            port_from_string(j.at("port").get<std::string>())};
}

}  // namespace detail

inline json to_json(const LevelTreeData& data) {
    json j;
    j["vertices"] = json::array();
    for (const auto& v : data.vertices)
        j["vertices"].push_back(json{{"id", v.id}, {"kind", kind_name(v.kind)}});
    j["edges"] = json::array();
    for (const auto& e : data.edges) {
        json marks = json::array();
        for (const auto& m : e.marks) {
            json g;
            if (!m.germ)
                g = nullptr;
            else
                g = *m.germ == Germ::MonotoneThrough ? "monotone" : "endpoint_extremum";
            marks.push_back(json{{"id", m.id}, {"germ", g}});
        }
        j["edges"].push_back(json{{"id", e.id},
                                  {"lower", detail::endpoint_to_json(e.lower)},
                                  {"upper", detail::endpoint_to_json(e.upper)},
                                  {"marks", marks}});
    }
    return j;
}

inline json to_json(const LevelTree& tree) { return to_json(tree.data()); }

inline LevelTreeData tree_data_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw Error(Errc::ParseError, "foliation must carry \"vertices\" and \"edges\"");
    LevelTreeData data;
    for (const auto& v : j.at("vertices")) {
        if (!v.contains("id") || !v.contains("kind"))
            throw Error(Errc::ParseError, "vertex must carry \"id\" and \"kind\"");
        data.vertices.push_back({v.at("id").get<std::string>(),
                                 detail::kind_from_string(v.at("kind").get<std::string>())});
    }
    for (const auto& e : j.at("edges")) {
        if (!e.contains("id") || !e.contains("lower") || !e.contains("upper"))
            throw Error(Errc::ParseError, "edge must carry \"id\", \"lower\" and \"upper\"");
        EdgeData edge;
        edge.id = e.at("id").get<std::string>();
        edge.lower = detail::endpoint_from_json(e.at("lower"));
        edge.upper = detail::endpoint_from_json(e.at("upper"));
        if (e.contains("marks")) {
            for (const auto& m : e.at("marks")) {
                if (!m.contains("id"))
                    throw Error(Errc::ParseError, "mark must carry \"id\"");
                MarkPoint mark;
                mark.id = m.at("id").get<std::string>();
                if (m.contains("germ") && !m.at("germ").is_null()) {
                    auto g = m.at("germ").get<std::string>();
                    if (g == "monotone")
                        mark.germ = Germ::MonotoneThrough;
                    else if (g == "endpoint_extremum")
                        mark.germ = Germ::EndpointExtremumOnCapSide;
                    else
                        throw Error(Errc::ParseError, "unknown germ \"" + g + "\"");
                }
                edge.marks.push_back(std::move(mark));
            }
        }
        data.edges.push_back(std::move(edge));
    }
    return data;
}

inline std::string emit_json(const json& j) { return j.dump(2) + "\n"; }

inline std::string tree_to_string(const LevelTreeData& data) { return emit_json(to_json(data)); }
inline std::string tree_to_string(const LevelTree& tree) { return emit_json(to_json(tree)); }

inline LevelTreeData tree_data_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
    return tree_data_from_json(j);
}

inline json to_json(const ValidationReport& report) {
    json j;
    j["valid"] = report.valid();
    j["violations"] = json::array();
    for (const auto& v : report.violations)
        j["violations"].push_back(
            json{{"code", v.code}, {"message", v.message}, {"ids", v.ids}});
    return j;
}

inline json to_json(const AdmissibilityReport& report) {
    json j;
    j["admissible"] = report.admissible;
    j["violations"] = json::array();
    for (const auto& v : report.violations)
        j["violations"].push_back(
            json{{"kind", violation_kind_name(v.kind)}, {"witness", v.witness}});
    return j;
}

inline json to_json(const EliminationLedger& ledger) {
    json j;
    j["steps"] = json::array();
    for (const auto& s : ledger.steps)
        j["steps"].push_back(json{{"saddle", s.saddle}, {"cost", s.cost}});
    j["total_cost"] = ledger.total_cost;
    return j;
}

inline EliminationLedger ledger_from_json(const json& j) {
    if (!j.is_object() || !j.contains("steps") || !j.contains("total_cost"))
        throw Error(Errc::ParseError, "ledger must carry \"steps\" and \"total_cost\"");
    EliminationLedger ledger;
    for (const auto& s : j.at("steps")) {
        if (!s.contains("saddle") || !s.contains("cost"))
            throw Error(Errc::ParseError, "ledger step must carry \"saddle\" and \"cost\"");
        ledger.steps.push_back({s.at("saddle").get<std::string>(), s.at("cost").get<int>()});
    }
    ledger.total_cost = j.at("total_cost").get<int>();
    return ledger;
}

}  // namespace follab
