#pragma once

// Independent test oracles.  Nothing here touches the canonical-code
// machinery or the pruned enumerator: isomorphism is decided by brute-force
// permutation search and trees are generated by wiring ports directly.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "follab/level_tree.hpp"
#include "follab/moves.hpp"
#include "follab/predicates.hpp"

namespace follab::test {

inline char role_class(Port p) {
    return p == Port::Cap ? 'c' : p == Port::Join ? 'j' : 'p';
}

struct EdgeSig {
    int lo = 0;
    char lo_role = '?';
    int up = 0;
    char up_role = '?';
    std::string germs;

    auto operator<=>(const EdgeSig&) const = default;
};

namespace oracle_detail {

inline std::string germ_string(const EdgeData& e) {
    std::string s;
    for (const auto& m : e.marks)
        s.push_back(!m.germ ? 'n' : (*m.germ == Germ::MonotoneThrough ? 't' : 'e'));
    return s;
}

inline std::vector<EdgeSig> signature(const LevelTreeData& d,
                                      const std::map<std::string, int>& vmap) {
    std::vector<EdgeSig> sig;
    for (const auto& e : d.edges)
        sig.push_back({vmap.at(e.lower.vertex), role_class(e.lower.port),
                       vmap.at(e.upper.vertex), role_class(e.upper.port), germ_string(e)});
    std::sort(sig.begin(), sig.end());
    return sig;
}

}  // namespace oracle_detail

// Brute-force isomorphism: try every kind-respecting vertex bijection and
// compare edge signatures with pair ports identified.
inline bool brute_isomorphic(const LevelTreeData& a, const LevelTreeData& b) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;

    std::map<VertexKind, std::vector<std::string>> group_a, group_b;
    for (const auto& v : a.vertices) group_a[v.kind].push_back(v.id);
    for (const auto& v : b.vertices) group_b[v.kind].push_back(v.id);
    if (group_a.size() != group_b.size()) return false;
    for (const auto& [kind, ids] : group_a) {
        auto it = group_b.find(kind);
        if (it == group_b.end() || it->second.size() != ids.size()) return false;
    }

    std::map<std::string, int> bmap;
    for (std::size_t i = 0; i < b.vertices.size(); ++i)
        bmap.emplace(b.vertices[i].id, static_cast<int>(i));
    const auto target = oracle_detail::signature(b, bmap);

    // Edges of a over a contiguous vertex indexing, for cheap re-mapping.
    std::map<std::string, int> amap;
    for (const auto& [kind, ids] : group_a)
        for (const auto& id : ids) {
            int next = static_cast<int>(amap.size());
            amap.emplace(id, next);
        }
    std::vector<EdgeSig> a_edges;
    for (const auto& e : a.edges)
        a_edges.push_back({amap.at(e.lower.vertex), role_class(e.lower.port),
                           amap.at(e.upper.vertex), role_class(e.upper.port),
                           oracle_detail::germ_string(e)});

    // phi maps a's contiguous indices to b's, built from per-group
    // permutations; group members occupy contiguous ranges of phi.
    std::vector<VertexKind> kinds;
    for (const auto& [kind, ids] : group_a) kinds.push_back(kind);
    std::map<VertexKind, std::vector<std::size_t>> perm;
    std::map<VertexKind, std::size_t> base;
    std::size_t offset = 0;
    for (const auto& [kind, ids] : group_a) {
        perm[kind].resize(ids.size());
        std::iota(perm[kind].begin(), perm[kind].end(), std::size_t{0});
        base[kind] = offset;
        offset += ids.size();
    }

    std::vector<int> phi(a.vertices.size());
    std::vector<EdgeSig> sig(a_edges.size());
    auto try_current = [&]() {
        for (auto kind : kinds)
            for (std::size_t i = 0; i < perm[kind].size(); ++i)
                phi[base[kind] + i] = bmap.at(group_b[kind][perm[kind][i]]);
        for (std::size_t i = 0; i < a_edges.size(); ++i) {
            sig[i] = a_edges[i];
            sig[i].lo = phi[static_cast<std::size_t>(sig[i].lo)];
            sig[i].up = phi[static_cast<std::size_t>(sig[i].up)];
        }
        std::sort(sig.begin(), sig.end());
        return sig == target;
    };

    // Odometer over the per-group permutations; next_permutation wrapping
    // back to the identity carries into the next group.
    while (true) {
        if (try_current()) return true;
        std::size_t gi = 0;
        while (gi < kinds.size() &&
               !std::next_permutation(perm[kinds[gi]].begin(), perm[kinds[gi]].end()))
            ++gi;
        if (gi == kinds.size()) return false;
    }
}

inline bool brute_isomorphic(const LevelTree& a, const LevelTree& b) {
    return brute_isomorphic(a.data(), b.data());
}

// All valid unmarked trees with s saddles, one representative per
// brute-force isomorphism class, generated by matching upward ports to
// downward ports directly.
inline std::vector<LevelTreeData> naive_shape_classes(int s) {
    std::vector<LevelTreeData> classes;
    std::map<std::string, std::vector<std::size_t>> buckets;  // cheap key -> class indices

    struct PortRef {
        std::string vertex;
        Port port;
    };

    for (int ups = 0; ups <= s; ++ups) {
        int downs = s - ups;
        LevelTreeData base;
        for (int i = 0; i < ups; ++i)
            base.vertices.push_back({"u" + std::to_string(i), VertexKind::SaddleUp});
        for (int i = 0; i < downs; ++i)
            base.vertices.push_back({"d" + std::to_string(i), VertexKind::SaddleDown});
        for (int i = 0; i <= ups; ++i)
            base.vertices.push_back({"p" + std::to_string(i), VertexKind::Min});
        for (int i = 0; i <= downs; ++i)
            base.vertices.push_back({"q" + std::to_string(i), VertexKind::Max});

        std::vector<PortRef> above, below;  // above: the vertex is the lower endpoint
        for (int i = 0; i <= ups; ++i) above.push_back({"p" + std::to_string(i), Port::Cap});
        for (int i = 0; i < ups; ++i) above.push_back({"u" + std::to_string(i), Port::Join});
        for (int i = 0; i < downs; ++i) {
            above.push_back({"d" + std::to_string(i), Port::PairA});
            above.push_back({"d" + std::to_string(i), Port::PairB});
        }
        for (int i = 0; i <= downs; ++i) below.push_back({"q" + std::to_string(i), Port::Cap});
        for (int i = 0; i < ups; ++i) {
            below.push_back({"u" + std::to_string(i), Port::PairA});
            below.push_back({"u" + std::to_string(i), Port::PairB});
        }
        for (int i = 0; i < downs; ++i) below.push_back({"d" + std::to_string(i), Port::Join});

        const std::size_t n_edges = above.size();
        std::vector<int> match(n_edges, -1);
        std::vector<bool> below_used(n_edges, false);

        std::map<std::string, int> comp;  // union-find over vertex ids
        int next_comp = 0;
        for (const auto& v : base.vertices) comp[v.id] = next_comp++;
        std::vector<int> parent(comp.size());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };

        std::function<void(std::size_t)> rec = [&](std::size_t idx) {
            if (idx == n_edges) {
                LevelTreeData data = base;
                for (std::size_t i = 0; i < n_edges; ++i) {
                    EdgeData e;
                    e.id = "E" + std::to_string(i);
                    e.lower = {above[i].vertex, above[i].port};
                    e.upper = {below[static_cast<std::size_t>(match[i])].vertex,
                               below[static_cast<std::size_t>(match[i])].port};
                    data.edges.push_back(std::move(e));
                }
                // Cheap invariant bucket, then brute-force isomorphism.
                std::map<std::string, int> kind_code;
                for (const auto& v : data.vertices) kind_code[v.id] = static_cast<int>(v.kind);
                std::string key;
                {
                    std::vector<std::string> parts;
                    for (const auto& e : data.edges) {
                        std::string p;
                        p += std::to_string(kind_code[e.lower.vertex]);
                        p += role_class(e.lower.port);
                        p += std::to_string(kind_code[e.upper.vertex]);
                        p += role_class(e.upper.port);
                        parts.push_back(std::move(p));
                    }
                    std::sort(parts.begin(), parts.end());
                    key = std::to_string(ups) + "|";
                    for (const auto& p : parts) key += p + ";";
                }
                for (auto ci : buckets[key])
                    if (brute_isomorphic(data, classes[ci])) return;
                buckets[key].push_back(classes.size());
                classes.push_back(std::move(data));
                return;
            }
            const auto& ap = above[idx];
            // Symmetry breaking: the second pair port of a rising saddle is
            // only used once the first is; a falling saddle's PairB matches
            // strictly after its PairA.
            for (std::size_t j = 0; j < n_edges; ++j) {
                if (below_used[j]) continue;
                const auto& bp = below[j];
                if (ap.vertex == bp.vertex) continue;
                if (bp.port == Port::PairB && !below_used[j - 1]) continue;  // PairA first
                if (ap.port == Port::PairB &&
                    (match[idx - 1] < 0 || static_cast<std::size_t>(match[idx - 1]) > j))
                    continue;
                int ra = find(comp[ap.vertex]);
                int rb = find(comp[bp.vertex]);
                if (ra == rb) continue;  // would close a cycle

                std::vector<int> saved = parent;
                parent[ra] = rb;
                match[idx] = static_cast<int>(j);
                below_used[j] = true;
                rec(idx + 1);
                below_used[j] = false;
                match[idx] = -1;
                parent = std::move(saved);
            }
        };
        rec(0);
    }
    return classes;
}

// Admissible class counts per saddle count, computed entirely through the
// naive generator plus brute-force deduplication.
inline std::map<int, std::uint64_t> naive_admissible_census(int k, int s_max) {
    std::map<int, std::uint64_t> table;
    for (int s = 0; s <= s_max; ++s) {
        std::uint64_t count = 0;
        for (const auto& shape : naive_shape_classes(s)) {
            std::vector<LevelTreeData> found;
            const int n_edges = static_cast<int>(shape.edges.size());
            std::vector<int> counts(static_cast<std::size_t>(n_edges), 0);
            std::function<void(int, int)> rec = [&](int idx, int left) {
                if (idx == n_edges - 1) {
                    counts[static_cast<std::size_t>(idx)] = left;
                    LevelTreeData data = shape;
                    int next = 0;
                    for (std::size_t j = 0; j < data.edges.size(); ++j)
                        for (int c = 0; c < counts[j]; ++c)
                            data.edges[j].marks.push_back(
                                {"m" + std::to_string(next++), std::nullopt});
                    auto tree = LevelTree::from_data(data);
                    if (!is_admissible(tree).admissible) return;
                    for (const auto& prev : found)
                        if (brute_isomorphic(data, prev)) return;
                    found.push_back(std::move(data));
                    return;
                }
                for (int v = 0; v <= left; ++v) {
                    counts[static_cast<std::size_t>(idx)] = v;
                    rec(idx + 1, left - v);
                }
            };
            if (n_edges > 0) rec(0, k);
            count += found.size();
        }
        table[s] = count;
    }
    return table;
}

// Deterministic pseudo-random valid trees: grow a shape by random saddle
// insertions, then sprinkle random marks and germs.
inline LevelTree random_tree(std::mt19937& rng, int saddles, int marks) {
    LevelTreeData d;
    d.vertices = {{"m", VertexKind::Min}, {"M", VertexKind::Max}};
    d.edges.push_back({"e", {"m", Port::Cap}, {"M", Port::Cap}, {}});
    auto tree = LevelTree::from_data_unchecked(std::move(d));
    for (int i = 0; i < saddles; ++i) {
        const auto& edges = tree.edges();
        std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
        auto kind = rng() % 2 == 0 ? VertexKind::SaddleUp : VertexKind::SaddleDown;
        tree = LevelTree::from_data_unchecked(
            detail::insert_saddle(tree, edges[pick(rng)].id, kind, 0, 0));
    }
    LevelTreeData data = tree.data();
    for (int i = 0; i < marks; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, data.edges.size() - 1);
        auto& e = data.edges[pick(rng)];
        std::uniform_int_distribution<std::size_t> pos(0, e.marks.size());
        std::optional<Germ> germ;
        switch (rng() % 3) {
        case 1: germ = Germ::MonotoneThrough; break;
        case 2: germ = Germ::EndpointExtremumOnCapSide; break;
        default: break;
        }
        e.marks.insert(e.marks.begin() + static_cast<std::ptrdiff_t>(pos(rng)),
                       {"r" + std::to_string(i), germ});
    }
    return LevelTree::from_data_unchecked(std::move(data));
}

}  // namespace follab::test
