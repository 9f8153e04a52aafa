#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "apps.hpp"
#include "graph.hpp"
#include "planar.hpp"
#include "xcsp.hpp"

/// Brute-force reference solvers. They use their own traversals and no field
/// arithmetic so that they stay independent of the solvers they check.
namespace tscu::oracle {

struct OracleBudget {
    int max_vertices = 12;
    std::uint64_t max_paths = 5'000'000;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

inline void check_vertices(const Multigraph& g, const OracleBudget& budget) {
    if (g.vertex_count() > budget.max_vertices)
        throw BudgetExceeded("oracle budget exceeded: " + std::to_string(g.vertex_count()) + " vertices");
}

/// Union-find over edges with both ends on the same side of `mask`.
inline Dsu side_components(const Multigraph& g, std::uint64_t mask) {
    Dsu dsu(g.vertex_count());
    for (const Edge& e : g.edges())
        if (((mask >> e.u) & 1u) == ((mask >> e.v) & 1u)) dsu.unite(e.u, e.v);
    return dsu;
}

inline Cut cut_of_mask(const Multigraph& g, std::uint64_t mask) {
    Cut cut;
    for (VertexId v = 0; v < g.vertex_count(); ++v) ((mask >> v) & 1u ? cut.side_a : cut.side_b).push_back(v);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (((mask >> g.edge(e).u) & 1u) != ((mask >> g.edge(e).v) & 1u)) cut.edges.push_back(e);
    return cut;
}

inline bool same_part(Dsu& dsu, const std::vector<VertexId>& vs) {
    for (VertexId v : vs)
        if (dsu.find(v) != dsu.find(vs.front())) return false;
    return true;
}

inline int popcount_cut(const Multigraph& g, std::uint64_t mask) {
    int c = 0;
    for (const Edge& e : g.edges()) c += ((mask >> e.u) & 1u) != ((mask >> e.v) & 1u);
    return c;
}

} // namespace detail

/// Minimum Two-Sets Cut-Uncut by enumerating every bipartition with S[0] on
/// side A. Ties go to the smallest side-A bitmask.
inline std::optional<Cut> brute_cut_uncut(const Multigraph& g, const std::vector<VertexId>& S,
                                          const std::vector<VertexId>& T, const OracleBudget& budget = {}) {
    detail::check_vertices(g, budget);
    if (S.empty() || T.empty()) throw std::invalid_argument("S and T must be nonempty");
    const int n = g.vertex_count();
    std::uint64_t s_mask = 0, t_mask = 0;
    for (VertexId v : S) s_mask |= std::uint64_t{1} << v;
    for (VertexId v : T) t_mask |= std::uint64_t{1} << v;
    if (s_mask & t_mask) throw std::invalid_argument("S and T must be disjoint");
    std::optional<std::uint64_t> best;
    int best_size = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if ((mask & s_mask) != s_mask || (mask & t_mask)) continue;
        auto dsu = detail::side_components(g, mask);
        if (!detail::same_part(dsu, S) || !detail::same_part(dsu, T)) continue;
        const int size = detail::popcount_cut(g, mask);
        if (!best || size < best_size) {
            best = mask;
            best_size = size;
        }
    }
    if (!best) return std::nullopt;
    return detail::cut_of_mask(g, *best);
}

/// Minimum minimal-cut with s on side A, t on side B and B inside the cut-set.
inline std::optional<Cut> brute_diversion(const Multigraph& g, VertexId s, VertexId t, const std::vector<EdgeId>& B,
                                          const OracleBudget& budget = {}) {
    detail::check_vertices(g, budget);
    const int n = g.vertex_count();
    std::optional<std::uint64_t> best;
    int best_size = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (!((mask >> s) & 1u) || ((mask >> t) & 1u)) continue;
        bool crossing = true;
        for (EdgeId b : B)
            crossing = crossing && (((mask >> g.edge(b).u) & 1u) != ((mask >> g.edge(b).v) & 1u));
        if (!crossing) continue;
        auto dsu = detail::side_components(g, mask);
        std::vector<VertexId> a, rest;
        for (VertexId v = 0; v < n; ++v) ((mask >> v) & 1u ? a : rest).push_back(v);
        if (!detail::same_part(dsu, a) || !detail::same_part(dsu, rest)) continue;
        const int size = detail::popcount_cut(g, mask);
        if (!best || size < best_size) {
            best = mask;
            best_size = size;
        }
    }
    if (!best) return std::nullopt;
    return detail::cut_of_mask(g, *best);
}

namespace detail {

/// Depth-first enumeration of simple paths from `from`; `visit` is called
/// with the vertex and edge sequences each time the path ends at `to`.
inline void simple_paths(const Multigraph& g, VertexId from, VertexId to, const std::vector<char>& blocked,
                         const OracleBudget& budget,
                         const std::function<void(const std::vector<VertexId>&, const std::vector<EdgeId>&)>& visit) {
    std::vector<char> on(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<VertexId> verts{from};
    std::vector<EdgeId> edges;
    std::uint64_t steps = 0;
    on[from] = 1;
    std::function<void(VertexId)> go = [&](VertexId x) {
        if (++steps > budget.max_paths) throw BudgetExceeded("oracle budget exceeded: path enumeration");
        if (x == to) {
            visit(verts, edges);
            return;
        }
        for (EdgeId e : g.incident(x)) {
            const Edge& ed = g.edge(e);
            if (ed.is_loop()) continue;
            const VertexId y = ed.other(x);
            if (on[y] || (!blocked.empty() && blocked[y] && y != to)) continue;
            on[y] = 1;
            verts.push_back(y);
            edges.push_back(e);
            go(y);
            verts.pop_back();
            edges.pop_back();
            on[y] = 0;
        }
    };
    go(from);
}

inline GroupVec xor_of(const XcspInstance& inst, const std::vector<EdgeId>& edges) {
    GroupVec acc = 0;
    for (EdgeId e : edges) acc ^= inst.labels[e];
    return acc;
}

inline bool meets_x_once(const XcspInstance& inst, const std::vector<VertexId>& verts) {
    for (const auto& x : inst.x_sets) {
        int hits = 0;
        for (VertexId v : verts) hits += std::count(x.begin(), x.end(), v) > 0;
        if (hits > 1) return false;
    }
    return true;
}

} // namespace detail

/// Shortest simple s-t path with label sum c meeting every X set at most
/// once. Ties go to the first path found in incidence order.
inline std::optional<Path> brute_xcsp(const XcspInstance& inst, const OracleBudget& budget = {}) {
    detail::check_vertices(inst.graph, budget);
    std::optional<Path> best;
    if (inst.s == inst.t) {
        if (inst.target == 0 && detail::meets_x_once(inst, {inst.s})) best = Path{{inst.s}, {}};
        return best;
    }
    detail::simple_paths(inst.graph, inst.s, inst.t, {}, budget,
                         [&](const std::vector<VertexId>& verts, const std::vector<EdgeId>& edges) {
                             if (best && best->edges.size() <= edges.size()) return;
                             if (detail::xor_of(inst, edges) != inst.target) return;
                             if (!detail::meets_x_once(inst, verts)) return;
                             best = Path{verts, edges};
                         });
    return best;
}

/// Every simple cycle (length >= 2, loops excluded) as a sorted edge set,
/// each listed once, with its vertices in cyclic order.
inline std::vector<XcspCycle> simple_cycles(const Multigraph& g, const OracleBudget& budget = {}) {
    std::set<std::vector<EdgeId>> seen;
    std::vector<XcspCycle> out;
    const int n = g.vertex_count();
    for (VertexId low = 0; low < n; ++low) {
        std::vector<char> blocked(static_cast<std::size_t>(n), 0);
        for (VertexId v = 0; v < low; ++v) blocked[v] = 1;
        for (EdgeId first : g.incident(low)) {
            const Edge& ed = g.edge(first);
            if (ed.is_loop()) continue;
            const VertexId next = ed.other(low);
            if (next < low) continue;
            std::vector<char> block = blocked;
            block[low] = 1;
            // paths next -> low avoiding `first`
            std::vector<char> on(static_cast<std::size_t>(n), 0);
            std::vector<VertexId> verts{low, next};
            std::vector<EdgeId> edges{first};
            std::uint64_t steps = 0;
            on[low] = on[next] = 1;
            std::function<void(VertexId)> go = [&](VertexId x) {
                if (++steps > budget.max_paths) throw BudgetExceeded("oracle budget exceeded: cycle enumeration");
                for (EdgeId e : g.incident(x)) {
                    if (e == first) continue;
                    const Edge& ee = g.edge(e);
                    if (ee.is_loop()) continue;
                    const VertexId y = ee.other(x);
                    if (y == low) {
                        std::vector<EdgeId> key = edges;
                        key.push_back(e);
                        std::vector<EdgeId> sorted = key;
                        std::sort(sorted.begin(), sorted.end());
                        if (seen.insert(sorted).second) out.push_back(XcspCycle{verts, key});
                        continue;
                    }
                    if (on[y] || y < low) continue;
                    on[y] = 1;
                    verts.push_back(y);
                    edges.push_back(e);
                    go(y);
                    verts.pop_back();
                    edges.pop_back();
                    on[y] = 0;
                }
            };
            go(next);
        }
    }
    return out;
}

/// Shortest simple cycle with label sum c meeting every X set at most once.
inline std::optional<XcspCycle> brute_xcsp_cycle(const XcspInstance& inst, const OracleBudget& budget = {}) {
    detail::check_vertices(inst.graph, budget);
    std::optional<XcspCycle> best;
    for (auto& cyc : simple_cycles(inst.graph, budget)) {
        if (best && best->length() <= cyc.length()) continue;
        if (detail::xor_of(inst, cyc.edges) != inst.target || !detail::meets_x_once(inst, cyc.vertices)) continue;
        best = cyc;
    }
    return best;
}

/// Size of a smallest face set whose frontiers cover U, by subsets of
/// increasing size.
inline int brute_face_cover(const Multigraph& g, const PlaneEmbedding& emb, const std::vector<VertexId>& U,
                            const OracleBudget& budget = {}) {
    detail::check_vertices(g, budget);
    if (U.empty()) return 0;
    const int f = emb.face_count();
    if (f > 40) throw BudgetExceeded("oracle budget exceeded: faces");
    std::vector<std::set<VertexId>> on_face(static_cast<std::size_t>(f));
    for (int x = 0; x < f; ++x)
        for (DartId d : emb.faces[x]) on_face[x].insert(dart_tail(g, d));
    for (int size = 1; size <= f; ++size) {
        std::vector<int> pick(static_cast<std::size_t>(size));
        std::iota(pick.begin(), pick.end(), 0);
        for (;;) {
            bool ok = true;
            for (VertexId u : U) {
                bool hit = false;
                for (int x : pick) hit = hit || on_face[x].count(u);
                ok = ok && hit;
            }
            if (ok) return size;
            int i = size - 1;
            while (i >= 0 && pick[i] == f - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    throw std::invalid_argument("some vertex of U lies on no face");
}

/// Cut-sets of all minimal cuts (both sides nonempty and connected).
inline std::set<std::vector<EdgeId>> minimal_cut_sets(const Multigraph& g, const OracleBudget& budget = {}) {
    detail::check_vertices(g, budget);
    const int n = g.vertex_count();
    std::set<std::vector<EdgeId>> out;
    if (n < 2) return out;
    // vertex n-1 always on side B, so each cut appears once
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        auto dsu = detail::side_components(g, mask);
        std::vector<VertexId> a, rest;
        for (VertexId v = 0; v < n; ++v) ((mask >> v) & 1u ? a : rest).push_back(v);
        if (!detail::same_part(dsu, a) || !detail::same_part(dsu, rest)) continue;
        out.insert(detail::cut_of_mask(g, mask).edges);
    }
    return out;
}

/// Primal edge sets of the simple cycles of the dual graph.
inline std::set<std::vector<EdgeId>> dual_cycle_images(const Multigraph& g, const PlaneEmbedding& emb,
                                                       const OracleBudget& budget = {}) {
    Multigraph d(emb.face_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) d.add_edge(emb.face_of_dart[2 * e], emb.face_of_dart[2 * e + 1]);
    std::set<std::vector<EdgeId>> out;
    for (auto& cyc : simple_cycles(d, budget)) {
        auto edges = cyc.edges;
        std::sort(edges.begin(), edges.end());
        out.insert(edges);
    }
    return out;
}

/// Second formulation of Two-Sets Cut-Uncut on a connected plane graph: the
/// smallest simple dual cycle whose primal image leaves all of S in one part
/// and all of T in the other.
inline std::optional<int> dual_cycle_cut_uncut(const Multigraph& g, const PlaneEmbedding& emb,
                                               const std::vector<VertexId>& S, const std::vector<VertexId>& T,
                                               const OracleBudget& budget = {}) {
    detail::check_vertices(g, budget);
    std::optional<int> best;
    for (const auto& image : dual_cycle_images(g, emb, budget)) {
        std::vector<char> cut(static_cast<std::size_t>(g.edge_count()), 0);
        for (EdgeId e : image) cut[e] = 1;
        detail::Dsu dsu(g.vertex_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            if (!cut[e]) dsu.unite(g.edge(e).u, g.edge(e).v);
        if (!detail::same_part(dsu, S) || !detail::same_part(dsu, T)) continue;
        if (dsu.find(S.front()) == dsu.find(T.front())) continue;
        const int size = static_cast<int>(image.size());
        if (!best || size < *best) best = size;
    }
    return best;
}

/// Shortest GLCSP solution by enumerating simple s-t paths whose internal
/// vertices avoid the outer frontier. Faces are located with breadth-first
/// search in the dual.
inline std::optional<Path> brute_glcsp(const GlcspInstance& inst, const OracleBudget& budget = {}) {
    const auto& g = inst.graph;
    const auto& emb = inst.embedding;
    detail::check_vertices(g, budget);
    std::vector<char> outer(static_cast<std::size_t>(g.vertex_count()), 0);
    for (DartId d : emb.faces[emb.outer_face]) outer[dart_tail(g, d)] = 1;
    outer[inst.s] = 0;

    // lower arc edges: outer walk from the first t after the first s back to s
    const auto& walk = emb.faces[emb.outer_face];
    const int len = static_cast<int>(walk.size());
    int i = 0;
    while (i < len && dart_tail(g, walk[i]) != inst.s) ++i;
    if (i == len) throw std::invalid_argument("s is not on the outer face");
    int j = (i + 1) % len;
    while (j != i && dart_tail(g, walk[j]) != inst.t) j = (j + 1) % len;
    if (j == i) throw std::invalid_argument("t is not on the outer face");
    std::vector<EdgeId> lower;
    for (int p = j; p != i; p = (p + 1) % len) lower.push_back(walk[p] >> 1);

    // face -> parent edge in a BFS tree of the dual rooted at the outer face
    const int f = emb.face_count();
    std::vector<EdgeId> via(static_cast<std::size_t>(f), -1);
    std::vector<char> reached(static_cast<std::size_t>(f), 0);
    std::vector<std::vector<std::pair<int, EdgeId>>> adj(static_cast<std::size_t>(f));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const int a = emb.face_of_dart[2 * e], b = emb.face_of_dart[2 * e + 1];
        adj[a].push_back({b, e});
        adj[b].push_back({a, e});
    }
    std::vector<int> queue{emb.outer_face};
    reached[emb.outer_face] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (auto [y, e] : adj[queue[h]])
            if (!reached[y]) {
                reached[y] = 1;
                via[y] = e;
                queue.push_back(y);
            }
    auto inside = [&](int face, const std::vector<int>& on_closed) {
        int parity = 0;
        for (int x = face; x != emb.outer_face;) {
            const EdgeId e = via[x];
            parity ^= on_closed[e];
            x = emb.face_of_dart[2 * e] == x ? emb.face_of_dart[2 * e + 1] : emb.face_of_dart[2 * e];
        }
        return parity == 1;
    };

    std::optional<Path> best;
    detail::simple_paths(g, inst.s, inst.t, outer, budget,
                         [&](const std::vector<VertexId>& verts, const std::vector<EdgeId>& edges) {
                             if (best && best->edges.size() <= edges.size()) return;
                             std::vector<int> on_closed(static_cast<std::size_t>(g.edge_count()), 0);
                             for (EdgeId e : edges) on_closed[e] ^= 1;
                             for (EdgeId e : lower) on_closed[e] ^= 1;
                             for (int x : inst.FA)
                                 if (inside(x, on_closed)) return;
                             for (int x : inst.FB)
                                 if (!inside(x, on_closed)) return;
                             best = Path{verts, edges};
                         });
    return best;
}

} // namespace tscu::oracle
