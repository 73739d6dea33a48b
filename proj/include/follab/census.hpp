#pragma once

// Exhaustive enumeration of admissible level trees with k marks, and the
// saddle-bound census built on it.
//
// Shapes (unmarked trees) grow level by level: every valid tree with s+1
// saddles arises from one with s saddles by inserting a saddle on an edge,
// because eliminating any outermost saddle is the inverse rewrite.  Each
// level is deduplicated through canonical codes.  Saddle insertion never
// decreases the number of outermost edges, and an admissible tree with k
// marks has at most k of them, so shapes exceeding that are pruned with all
// their descendants.  Marks are then distributed over each surviving shape
// (every outermost edge needs one), filtered through the admissibility
// predicate and deduplicated the same way.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "follab/canonical.hpp"
#include "follab/core.hpp"
#include "follab/json_io.hpp"
#include "follab/level_tree.hpp"
#include "follab/moves.hpp"
#include "follab/predicates.hpp"

namespace follab {

struct CensusOptions {
    int threads = 1;
    std::uint64_t node_cap = 0;     // candidate structures examined; 0 = unlimited
    std::uint64_t time_cap_ms = 0;  // wall clock; 0 = unlimited
    bool mod_flip = false;          // additionally quotient classes by flip
};

struct CensusProgress {
    int k = 0;
    int s_max = 0;
    bool mod_flip = false;
    int completed_level = -1;  // saddle counts [0..completed_level] fully counted
    std::uint64_t nodes_examined = 0;
    std::map<int, std::uint64_t> table;
    int extremal_level = -1;
    std::vector<std::string> extremal_codes;
    std::vector<std::string> frontier_shape_codes;  // shape classes at completed_level
};

class CensusInterrupted : public Error {
public:
    explicit CensusInterrupted(CensusProgress progress)
        : Error(Errc::ResourceCapExceeded,
                "census interrupted after level " + std::to_string(progress.completed_level)),
          progress_(std::move(progress)) {}

    const CensusProgress& progress() const { return progress_; }

private:
    CensusProgress progress_;
};

struct CensusResult {
    int k = 0;
    int s_max = 0;
    bool mod_flip = false;
    std::map<int, std::uint64_t> table;  // every s in [0, s_max]
    int max_saddles_observed = -1;
    std::vector<std::string> extremal_codes;  // sorted, at max_saddles_observed
    std::uint64_t nodes_examined = 0;
};

namespace detail {

// Distribution-independent structure of a shape, for fast admissibility
// checks over mark-count vectors.
struct ShapeInfo {
    std::vector<bool> edge_outermost;
    int outermost_total = 0;
    std::vector<int> saddle_join_edge;            // per saddle, index into edges
    std::vector<bool> saddle_join_leaf;           // join edge caps off at an extremum
    std::vector<std::array<int, 2>> pair_edges;   // (saddle, saddle) per pair-pair edge
    std::vector<int> pair_edge_index;             // edge index per entry above
};

inline ShapeInfo shape_info(const LevelTree& shape) {
    ShapeInfo info;
    std::map<std::string, int> saddle_index;
    for (const auto& v : shape.vertices())
        if (is_saddle(v.kind)) {
            int idx = static_cast<int>(saddle_index.size());
            saddle_index.emplace(v.id, idx);
        }
    info.saddle_join_edge.assign(saddle_index.size(), -1);
    info.saddle_join_leaf.assign(saddle_index.size(), false);

    const auto& edges = shape.edges();
    info.edge_outermost.assign(edges.size(), false);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (shape.outermost_saddle_of(e)) {
            info.edge_outermost[i] = true;
            ++info.outermost_total;
        }
        const auto& lo = shape.vertex(e.lower.vertex);
        const auto& up = shape.vertex(e.upper.vertex);
        for (const auto* end : {&e.lower, &e.upper}) {
            const auto& v = shape.vertex(end->vertex);
            if (is_saddle(v.kind) && end->port == Port::Join) {
                int si = saddle_index.at(v.id);
                info.saddle_join_edge[si] = static_cast<int>(i);
                info.saddle_join_leaf[si] = shape.is_leaf_edge(e);
            }
        }
        if (is_saddle(lo.kind) && is_saddle(up.kind) && is_pair_port(e.lower.port) &&
            is_pair_port(e.upper.port)) {
            info.pair_edges.push_back({saddle_index.at(lo.id), saddle_index.at(up.id)});
            info.pair_edge_index.push_back(static_cast<int>(i));
        }
    }
    return info;
}

inline bool counts_admissible(const ShapeInfo& info, const std::vector<int>& counts) {
    // Outermost edges are marked by construction; only the three-chain
    // condition depends on the distribution.
    std::size_t n_saddles = info.saddle_join_edge.size();
    std::vector<bool> standard(n_saddles);
    for (std::size_t i = 0; i < n_saddles; ++i)
        standard[i] = info.saddle_join_leaf[i] && counts[info.saddle_join_edge[i]] == 0;

    std::vector<int> standard_neighbours(n_saddles, 0);
    for (std::size_t p = 0; p < info.pair_edges.size(); ++p) {
        if (counts[info.pair_edge_index[p]] != 0) continue;
        auto [a, b] = info.pair_edges[p];
        if (standard[a] && standard[b]) {
            ++standard_neighbours[a];
            ++standard_neighbours[b];
        }
    }
    for (std::size_t i = 0; i < n_saddles; ++i)
        if (standard[i] && standard_neighbours[i] >= 2) return false;
    return true;
}

template <class Fn>
inline void for_each_composition(int slots, int total, Fn&& fn) {
    std::vector<int> extra(static_cast<std::size_t>(slots), 0);
    auto rec = [&](auto&& self, int idx, int left) -> void {
        if (idx == slots - 1) {
            extra[static_cast<std::size_t>(idx)] = left;
            fn(extra);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            extra[static_cast<std::size_t>(idx)] = v;
            self(self, idx + 1, left - v);
        }
    };
    if (slots > 0) rec(rec, 0, total);
}

inline LevelTree t0_shape() {
    LevelTreeData d;
    d.vertices = {{"v0", VertexKind::Min}, {"v1", VertexKind::Max}};
    d.edges.push_back({"e0", {"v0", Port::Cap}, {"v1", Port::Cap}, {}});
    return LevelTree::from_data_unchecked(std::move(d));
}

inline int outermost_count(const LevelTree& tree) {
    int n = 0;
    for (const auto& e : tree.edges())
        if (tree.outermost_saddle_of(e)) ++n;
    return n;
}

}  // namespace detail

// Enumerates one canonical representative per isomorphism class of valid
// admissible trees with k marks and at most s_max saddles.  The visitor
// receives decoded canonical trees grouped by saddle count in code order,
// so the stream is deterministic regardless of the thread count.  On a
// resource-cap hit the partial result is thrown as CensusInterrupted; a
// saved progress value resumes a run (already-visited levels are not
// replayed).
inline CensusResult run_census(
    int k, int s_max, const CensusOptions& opts = {},
    const std::function<void(const LevelTree&, int)>& visitor = nullptr,
    const CensusProgress* resume = nullptr) {
    if (k < 0 || s_max < 0)
        throw Error(Errc::InvalidWitness, "census requires k >= 0 and s_max >= 0");

    const auto t_start = std::chrono::steady_clock::now();
    std::atomic<std::uint64_t> nodes{0};
    auto caps_hit = [&]() {
        if (opts.node_cap && nodes.load() > opts.node_cap) return true;
        if (opts.time_cap_ms) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t_start)
                          .count();
            if (static_cast<std::uint64_t>(ms) > opts.time_cap_ms) return true;
        }
        return false;
    };

    CensusResult result;
    result.k = k;
    result.s_max = s_max;
    result.mod_flip = opts.mod_flip;

    std::vector<std::string> frontier_codes;
    std::vector<LevelTree> frontier;
    int start_level = 0;

    if (resume) {
        if (resume->k != k || resume->s_max != s_max || resume->mod_flip != opts.mod_flip)
            throw Error(Errc::ParseError, "progress state does not match this census");
        nodes = resume->nodes_examined;
        result.table = resume->table;
        result.max_saddles_observed = resume->extremal_level;
        result.extremal_codes = resume->extremal_codes;
        frontier_codes = resume->frontier_shape_codes;
        for (const auto& code : frontier_codes) frontier.push_back(decode_canonical(code));
        start_level = resume->completed_level + 1;
    } else {
        auto shape = detail::t0_shape();
        frontier_codes = {canonical_form(shape)};
        frontier = {std::move(shape)};
    }

    const int threads = std::max(1, opts.threads);

    for (int s = start_level; s <= s_max; ++s) {
        std::set<std::string> level_codes;
        std::set<std::string> child_codes;
        std::mutex merge_mutex;
        std::atomic<bool> interrupted{false};
        const bool grow = s < s_max;

        auto worker = [&](int tid) {
            std::set<std::string> local_codes;
            std::set<std::string> local_children;
            std::uint64_t local_nodes = 0;
            for (std::size_t i = static_cast<std::size_t>(tid); i < frontier.size();
                 i += static_cast<std::size_t>(threads)) {
                if (interrupted.load()) break;
                const auto& shape = frontier[i];
                auto info = detail::shape_info(shape);
                if (info.outermost_total <= k) {
                    const int edge_count = static_cast<int>(shape.edges().size());
                    int rem = k - info.outermost_total;
                    detail::for_each_composition(edge_count, rem, [&](const std::vector<int>& extra) {
                        ++local_nodes;
                        std::vector<int> counts(extra.size());
                        for (std::size_t j = 0; j < extra.size(); ++j)
                            counts[j] = extra[j] + (info.edge_outermost[j] ? 1 : 0);
                        if (!detail::counts_admissible(info, counts)) return;
                        LevelTreeData data = shape.data();
                        int next_mark = 0;
                        for (std::size_t j = 0; j < data.edges.size(); ++j)
                            for (int c = 0; c < counts[j]; ++c)
                                data.edges[j].marks.push_back(
                                    {"m" + std::to_string(next_mark++), std::nullopt});
                        auto tree = LevelTree::from_data_unchecked(std::move(data));
                        auto code = opts.mod_flip ? canonical_form_mod_flip(tree)
                                                  : canonical_form(tree);
                        local_codes.insert(std::move(code));
                    });
                }
                if (grow) {
                    for (const auto& e : shape.edges()) {
                        for (auto kind : {VertexKind::SaddleUp, VertexKind::SaddleDown}) {
                            ++local_nodes;
                            auto child = LevelTree::from_data_unchecked(
                                detail::insert_saddle(shape, e.id, kind, 0, 0));
                            if (detail::outermost_count(child) > k) continue;
                            local_children.insert(canonical_form(child));
                        }
                    }
                }
                nodes += local_nodes;
                local_nodes = 0;
                if (caps_hit()) interrupted.store(true);
            }
            nodes += local_nodes;
            std::lock_guard<std::mutex> lock(merge_mutex);
            level_codes.merge(local_codes);
            child_codes.merge(local_children);
        };

        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(threads));
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }

        if (interrupted.load()) {
            CensusProgress progress;
            progress.k = k;
            progress.s_max = s_max;
            progress.mod_flip = opts.mod_flip;
            progress.completed_level = s - 1;
            progress.nodes_examined = nodes.load();
            progress.table = result.table;
            progress.extremal_level = result.max_saddles_observed;
            progress.extremal_codes = result.extremal_codes;
            progress.frontier_shape_codes = frontier_codes;
            throw CensusInterrupted(std::move(progress));
        }

        result.table[s] = level_codes.size();
        if (!level_codes.empty()) {
            result.max_saddles_observed = s;
            result.extremal_codes.assign(level_codes.begin(), level_codes.end());
        }
        if (visitor)
            for (const auto& code : level_codes) visitor(decode_canonical(code), s);

        if (grow) {
            frontier_codes.assign(child_codes.begin(), child_codes.end());
            frontier.clear();
            frontier.reserve(frontier_codes.size());
            for (const auto& code : frontier_codes) frontier.push_back(decode_canonical(code));
        }
    }

    result.nodes_examined = nodes.load();
    return result;
}

inline CensusResult enumerate_admissible(
    int k, int s_max, const std::function<void(const LevelTree&, int)>& visitor,
    const CensusOptions& opts = {}) {
    return run_census(k, s_max, opts, visitor);
}

struct CensusReport {
    int k = 0;
    int s_max = 0;
    std::optional<int> probe_margin;
    bool mod_flip = false;
    std::map<int, std::uint64_t> table;
    int max_saddles_observed = -1;
    bool has_bound = false;  // the 5k-8 bound only makes sense for k >= 2
    int bound_5k_minus_8 = 0;
    bool probed_beyond_bound = false;
    bool bound_respected = false;
    bool achieved = false;
    std::vector<std::string> witnesses;
    std::vector<int> nonstandard_at_max;  // distinct counts over extremal classes
    std::uint64_t nodes_examined = 0;
};

namespace detail {

inline int nonstandard_count(const LevelTree& tree) {
    int n = 0;
    for (const auto& v : tree.vertices())
        if (is_saddle(v.kind) && !is_standard(tree, v.id)) ++n;
    return n;
}

inline CensusReport report_from(const CensusResult& result, std::optional<int> probe) {
    CensusReport report;
    report.k = result.k;
    report.s_max = result.s_max;
    report.probe_margin = probe;
    report.mod_flip = result.mod_flip;
    report.table = result.table;
    report.max_saddles_observed = result.max_saddles_observed;
    report.witnesses = result.extremal_codes;
    report.nodes_examined = result.nodes_examined;

    if (result.k >= 2) {
        report.has_bound = true;
        report.bound_5k_minus_8 = 5 * result.k - 8;
        report.probed_beyond_bound = result.s_max > report.bound_5k_minus_8;
        report.bound_respected = result.max_saddles_observed <= report.bound_5k_minus_8;
        for (const auto& [s, count] : result.table)
            if (s > report.bound_5k_minus_8 && count > 0) report.bound_respected = false;
        auto it = result.table.find(report.bound_5k_minus_8);
        report.achieved = it != result.table.end() && it->second >= 1;
    }

    std::set<int> nonstandard;
    for (const auto& code : result.extremal_codes)
        nonstandard.insert(nonstandard_count(decode_canonical(code)));
    report.nonstandard_at_max.assign(nonstandard.begin(), nonstandard.end());
    return report;
}

}  // namespace detail

// Census with an explicit saddle cap; bound bookkeeping is filled in for
// k >= 2.
inline CensusReport census_at(int k, int s_max, const CensusOptions& opts = {},
                              const CensusProgress* resume = nullptr) {
    return detail::report_from(run_census(k, s_max, opts, nullptr, resume), std::nullopt);
}

// Census probing past the 5k-8 bound: the falsifiable form of the saddle
// bound is "no admissible class above it", so the default probes one level
// beyond.
inline CensusReport max_saddle_census(int k, int probe_margin = 1,
                                      const CensusOptions& opts = {},
                                      const CensusProgress* resume = nullptr) {
    if (k < 2)
        throw Error(Errc::InvalidWitness, "max_saddle_census requires k >= 2");
    if (probe_margin < 0)
        throw Error(Errc::InvalidWitness, "probe margin must be >= 0");
    int s_max = (5 * k - 8) + probe_margin;
    return detail::report_from(run_census(k, s_max, opts, nullptr, resume), probe_margin);
}

struct ClaimCounterexample {
    std::string code;
    std::string clause;
};

struct ClaimReport {
    int k = 0;
    int extremal_s = -1;
    std::uint64_t classes_checked = 0;
    bool marks_on_outermost = true;
    bool outermost_singly_marked = true;
    bool nonstandard_is_k_minus_2 = true;
    std::vector<ClaimCounterexample> counterexamples;

    bool all_pass() const { return counterexamples.empty(); }
};

// Structure claims about saddle-maximal admissible foliations: every mark
// sits on an outermost disk, every outermost disk carries exactly one mark,
// and exactly k-2 saddles are non-standard.
inline ClaimReport verify_claims(const CensusReport& census) {
    ClaimReport report;
    report.k = census.k;
    report.extremal_s = census.max_saddles_observed;
    for (const auto& code : census.witnesses) {
        ++report.classes_checked;
        auto tree = decode_canonical(code);
        for (const auto& e : tree.edges()) {
            bool outermost = tree.outermost_saddle_of(e).has_value();
            if (!outermost && !e.marks.empty()) {
                report.marks_on_outermost = false;
                report.counterexamples.push_back({code, "mark off outermost edge " + e.id});
            }
            if (outermost && e.marks.size() != 1) {
                report.outermost_singly_marked = false;
                report.counterexamples.push_back(
                    {code, "outermost edge " + e.id + " carries " +
                               std::to_string(e.marks.size()) + " marks"});
            }
        }
        if (detail::nonstandard_count(tree) != census.k - 2) {
            report.nonstandard_is_k_minus_2 = false;
            report.counterexamples.push_back(
                {code, "non-standard saddle count != k-2"});
        }
    }
    return report;
}

inline ClaimReport verify_claims(int k, int probe_margin = 1, const CensusOptions& opts = {}) {
    return verify_claims(max_saddle_census(k, probe_margin, opts));
}

// --- serialization ---

inline json to_json(const CensusReport& r) {
    json j;
    j["k"] = r.k;
    j["s_max"] = r.s_max;
    j["probe_margin"] = r.probe_margin ? json(*r.probe_margin) : json(nullptr);
    j["mod_flip"] = r.mod_flip;
    json table = json::object();
    for (const auto& [s, count] : r.table) table[std::to_string(s)] = count;
    j["table"] = table;
    j["max_saddles_observed"] = r.max_saddles_observed;
    j["bound_5k_minus_8"] = r.has_bound ? json(r.bound_5k_minus_8) : json(nullptr);
    j["probed_beyond_bound"] = r.has_bound ? json(r.probed_beyond_bound) : json(nullptr);
    j["bound_respected"] = r.has_bound ? json(r.bound_respected) : json(nullptr);
    j["achieved"] = r.has_bound ? json(r.achieved) : json(nullptr);
    j["nonstandard_at_max"] = r.nonstandard_at_max;
    j["witnesses"] = r.witnesses;
    j["nodes_examined"] = r.nodes_examined;
    return j;
}

inline std::string census_text(const CensusReport& r) {
    std::ostringstream out;
    out << "census k=" << r.k << " (s <= " << r.s_max;
    if (r.probe_margin) out << ", probe " << *r.probe_margin;
    out << ", mod_flip " << (r.mod_flip ? "on" : "off") << ")\n";
    out << "  s  classes\n";
    for (const auto& [s, count] : r.table) out << "  " << s << "  " << count << "\n";
    out << "max saddles observed: " << r.max_saddles_observed << "\n";
    if (r.has_bound) {
        out << "bound 5k-8:           " << r.bound_5k_minus_8 << "\n";
        out << "bound respected:      " << (r.bound_respected ? "yes" : "no");
        if (!r.probed_beyond_bound) out << " (not probed beyond bound)";
        out << "\n";
        out << "achieved at bound:    " << (r.achieved ? "yes" : "no") << "\n";
    }
    out << "nonstandard at max:   ";
    for (std::size_t i = 0; i < r.nonstandard_at_max.size(); ++i)
        out << (i ? "," : "") << r.nonstandard_at_max[i];
    out << "\n";
    out << "extremal classes:     " << r.witnesses.size() << "\n";
    return out.str();
}

inline json to_json(const CensusProgress& p) {
    json j;
    j["k"] = p.k;
    j["s_max"] = p.s_max;
    j["mod_flip"] = p.mod_flip;
    j["completed_level"] = p.completed_level;
    j["nodes_examined"] = p.nodes_examined;
    json table = json::object();
    for (const auto& [s, count] : p.table) table[std::to_string(s)] = count;
    j["table"] = table;
    j["extremal_level"] = p.extremal_level;
    j["extremal_codes"] = p.extremal_codes;
    j["frontier"] = p.frontier_shape_codes;
    return j;
}

inline CensusProgress progress_from_json(const json& j) {
    CensusProgress p;
    try {
        p.k = j.at("k").get<int>();
        p.s_max = j.at("s_max").get<int>();
        p.mod_flip = j.at("mod_flip").get<bool>();
        p.completed_level = j.at("completed_level").get<int>();
        p.nodes_examined = j.at("nodes_examined").get<std::uint64_t>();
        for (const auto& [key, value] : j.at("table").items())
            p.table[std::stoi(key)] = value.get<std::uint64_t>();
        p.extremal_level = j.at("extremal_level").get<int>();
        p.extremal_codes = j.at("extremal_codes").get<std::vector<std::string>>();
        p.frontier_shape_codes = j.at("frontier").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("bad census progress state: ") + e.what());
    }
    return p;
}

inline json to_json(const ClaimReport& r) {
    json j;
    j["k"] = r.k;
    j["extremal_s"] = r.extremal_s;
    j["classes_checked"] = r.classes_checked;
    j["marks_on_outermost"] = r.marks_on_outermost;
    j["outermost_singly_marked"] = r.outermost_singly_marked;
    j["nonstandard_is_k_minus_2"] = r.nonstandard_is_k_minus_2;
    j["counterexamples"] = json::array();
    for (const auto& c : r.counterexamples)
        j["counterexamples"].push_back(json{{"code", c.code}, {"clause", c.clause}});
    return j;
}

}  // namespace follab
