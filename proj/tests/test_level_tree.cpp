#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "follab/follab.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace follab;
using namespace follab::test;

namespace {

LevelTreeData relabeled(const LevelTreeData& d, const std::string& prefix) {
    LevelTreeData out = d;
    for (auto& v : out.vertices) v.id = prefix + v.id;
    for (auto& e : out.edges) {
        e.id = prefix + e.id;
        e.lower.vertex = prefix + e.lower.vertex;
        e.upper.vertex = prefix + e.upper.vertex;
        for (auto& m : e.marks) m.id = prefix + m.id;
    }
    return out;
}

bool has_violation(const ValidationReport& r, const std::string& code) {
    for (const auto& v : r.violations)
        if (v.code == code) return true;
    return false;
}

}  // namespace

TEST_CASE("fixtures validate") {
    CHECK(validate(t0_data(0)).valid());
    CHECK(validate(t0_data(2)).valid());
    CHECK(validate(t1_data()).valid());
    CHECK(validate(t2_data()).valid());
    CHECK(validate(t3bad_data()).valid());
    CHECK(validate(t5_data()).valid());
}

TEST_CASE("validate reports port side mismatch on a reversed edge") {
    auto d = t1_data();
    for (auto& e : d.edges)
        if (e.id == "c") std::swap(e.lower, e.upper);  // Max listed as lower endpoint
    auto report = validate(d);
    REQUIRE_FALSE(report.valid());
    bool found = false;
    for (const auto& v : report.violations)
        if (v.message == "port side mismatch on edge c") found = true;
    CHECK(found);
}

TEST_CASE("validate reports structural violations") {
    SECTION("empty") { CHECK(has_violation(validate({}), "empty-tree")); }

    SECTION("duplicate ids") {
        auto d = t0_data(2);
        d.vertices.push_back({"m", VertexKind::Min});
        CHECK(has_violation(validate(d), "duplicate-vertex-id"));
        auto d2 = t0_data(2);
        d2.edges[0].marks[1].id = "x1";
        CHECK(has_violation(validate(d2), "duplicate-mark-id"));
    }

    SECTION("unknown vertex and invalid port") {
        auto d = t0_data(0);
        d.edges[0].upper.vertex = "ghost";
        CHECK(has_violation(validate(d), "unknown-vertex"));
        auto d2 = t1_data();
        d2.edges[0].upper.port = Port::Cap;  // saddles expose no cap
        CHECK(has_violation(validate(d2), "invalid-port"));
    }

    SECTION("port conflict and unused port") {
        auto d = t1_data();
        d.edges[1].upper.port = Port::PairA;  // both minima into the same port
        auto report = validate(d);
        CHECK(has_violation(report, "port-conflict"));
        CHECK(has_violation(report, "unused-port"));
    }

    SECTION("edge count, euler") {
        LevelTreeData d;
        d.vertices = {{"m1", VertexKind::Min}, {"M1", VertexKind::Max},
                      {"m2", VertexKind::Min}, {"M2", VertexKind::Max}};
        d.edges = {{"e1", {"m1", Port::Cap}, {"M1", Port::Cap}, {}},
                   {"e2", {"m2", Port::Cap}, {"M2", Port::Cap}, {}}};
        CHECK(has_violation(validate(d), "edge-count"));

        LevelTreeData d2;
        d2.vertices = {{"m", VertexKind::Min}, {"M", VertexKind::Max},
                       {"s", VertexKind::SaddleUp}};
        d2.edges = {{"e1", {"m", Port::Cap}, {"s", Port::PairA}, {}},
                    {"e2", {"s", Port::Join}, {"M", Port::Cap}, {}}};
        auto report = validate(d2);
        CHECK(has_violation(report, "unused-port"));
        CHECK(has_violation(report, "euler-relation"));
    }

    SECTION("from_data throws on invalid structure") {
        auto d = t1_data();
        std::swap(d.edges[2].lower, d.edges[2].upper);
        CHECK_THROWS_AS(LevelTree::from_data(d), Error);
    }
}

TEST_CASE("stats") {
    auto st0 = stats(t0(2));
    CHECK(st0 == FoliationStats{2, 0, 2, 0});
    auto st1 = stats(t1());
    CHECK(st1 == FoliationStats{2, 1, 3, 2});
    auto st2 = stats(t2());
    CHECK(st2 == FoliationStats{2, 2, 4, 2});
}

TEST_CASE("flip") {
    CHECK(isomorphic(flip(t0(3)), t0(3)));

    auto f = flip(t1());
    CHECK(validate(f.data()).valid());
    int saddle_down = 0, maxima = 0, minima = 0;
    for (const auto& v : f.vertices()) {
        if (v.kind == VertexKind::SaddleDown) ++saddle_down;
        if (v.kind == VertexKind::Max) ++maxima;
        if (v.kind == VertexKind::Min) ++minima;
    }
    CHECK(saddle_down == 1);
    CHECK(maxima == 2);
    CHECK(minima == 1);
    for (const auto& [saddle, edge] : outermost_edges(f))
        CHECK(f.edge(edge).marks.size() == 1);

    // flip is an involution on the nose, not just up to isomorphism
    CHECK(flip(flip(t1())) == t1());
    CHECK(flip(flip(t5())) == t5());
}

TEST_CASE("height assignment") {
    auto h0 = height_assignment(t0(2));
    CHECK(h0 == std::map<std::string, int>{{"M", 1}, {"m", 0}});

    auto h1 = height_assignment(t1());
    CHECK(h1.at("min1") < h1.at("sigma"));
    CHECK(h1.at("min2") < h1.at("sigma"));
    CHECK(h1.at("sigma") < h1.at("max1"));

    auto h2 = height_assignment(t2());
    CHECK(h2.at("min2") < h2.at("sigma"));
    CHECK(h2.at("sigma") < h2.at("max1"));
    CHECK(h2.at("sigma") < h2.at("tau"));
    CHECK(h2.at("min1") < h2.at("tau"));
    CHECK(h2.at("tau") < h2.at("max2"));

    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto tree = random_tree(rng, 5, 4);
        auto ranks = height_assignment(tree);
        std::set<int> distinct;
        for (const auto& [id, r] : ranks) distinct.insert(r);
        CHECK(distinct.size() == tree.vertices().size());
        for (const auto& e : tree.edges())
            CHECK(ranks.at(e.lower.vertex) < ranks.at(e.upper.vertex));
    }
}

TEST_CASE("canonical form квotients exactly isomorphism") {
    SECTION("relabeling and pair swap") {
        auto code = canonical_form(t2());
        auto permuted = relabeled(t2_data(), "z_");
        std::swap(permuted.vertices[0], permuted.vertices[4]);
        std::swap(permuted.edges[0], permuted.edges[3]);
        for (auto& e : permuted.edges) {  // swap PairA/PairB at sigma
            if (e.lower.vertex == "z_sigma" && is_pair_port(e.lower.port))
                e.lower.port = e.lower.port == Port::PairA ? Port::PairB : Port::PairA;
        }
        CHECK(canonical_form(LevelTree::from_data(permuted)) == code);
    }

    SECTION("distinguishes k and flip") {
        CHECK(canonical_form(t0(2)) != canonical_form(t0(3)));
        CHECK(canonical_form(t1()) != canonical_form(flip(t1())));
    }

    SECTION("decode inverts encode") {
        for (const auto& tree : {t0(2), t1(), t2(), t3bad(), t5()}) {
            auto code = canonical_form(tree);
            auto decoded = decode_canonical(code);
            CHECK(validate(decoded.data()).valid());
            CHECK(canonical_form(decoded) == code);
            CHECK(brute_isomorphic(decoded, tree));
        }
    }

    SECTION("germ sequences are structural") {
        auto a = t1_data();
        set_germ(a, "p1", Germ::MonotoneThrough);
        auto b = t1_data();
        set_germ(b, "p1", Germ::EndpointExtremumOnCapSide);
        CHECK(canonical_form(LevelTree::from_data(a)) !=
              canonical_form(LevelTree::from_data(b)));
        CHECK(canonical_form(LevelTree::from_data(a)) != canonical_form(t1()));
    }

    SECTION("agreement with brute-force isomorphism on random trees") {
        std::mt19937 rng(99);
        std::vector<LevelTree> pool;
        for (int i = 0; i < 24; ++i)
            pool.push_back(random_tree(rng, 1 + static_cast<int>(rng() % 4),
                                       static_cast<int>(rng() % 4)));
        for (const auto& tree : pool) {
            auto copy = LevelTree::from_data(relabeled(tree.data(), "c_"));
            CHECK(canonical_form(copy) == canonical_form(tree));
            CHECK(brute_isomorphic(copy, tree));
        }
        for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
            bool same_code = canonical_form(pool[i]) == canonical_form(pool[i + 1]);
            CHECK(same_code == brute_isomorphic(pool[i], pool[i + 1]));
        }
    }
}

TEST_CASE("json round trip") {
    for (const auto& tree : {t0(0), t0(2), t1(), t2(), t3bad(), t5()}) {
        auto text = tree_to_string(tree);
        auto back = tree_data_from_string(text);
        CHECK(back == tree.data());
        CHECK(tree_to_string(back) == text);  // byte-stable
    }

    auto annotated = t1_data();
    set_germ(annotated, "p1", Germ::MonotoneThrough);
    set_germ(annotated, "p2", Germ::EndpointExtremumOnCapSide);
    auto text = tree_to_string(annotated);
    CHECK(tree_data_from_string(text) == annotated);
    CHECK(text.find("\"monotone\"") != std::string::npos);
    CHECK(text.find("\"endpoint_extremum\"") != std::string::npos);
}

TEST_CASE("json rejects malformed input") {
    CHECK_THROWS_AS(tree_data_from_string("not json"), Error);
    CHECK_THROWS_AS(tree_data_from_string("{}"), Error);
    CHECK_THROWS_AS(tree_data_from_string(
                        R"({"vertices":[{"id":"v","kind":"sideways"}],"edges":[]})"),
                    Error);
    CHECK_THROWS_AS(tree_data_from_string(
                        R"({"vertices":[{"id":"v","kind":"min"}],"edges":[{"id":"e"}]})"),
                    Error);
}

TEST_CASE("dot emission") {
    auto dot = emit_dot(t2());
    CHECK(dot.rfind("digraph foliation {", 0) == 0);
    CHECK(dot.find("\"sigma\" [shape=box") != std::string::npos);
    CHECK(dot.find("\"tau\" [shape=diamond") != std::string::npos);
    CHECK(dot.find("\"sigma\" -> \"max1\" [label=\"1\"]") != std::string::npos);
    CHECK(dot.find("rank=same") != std::string::npos);
    CHECK(emit_dot(t2()) == dot);  // deterministic
}
