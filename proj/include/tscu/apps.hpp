#pragma once

#include <algorithm>
#include <climits>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cutuncut.hpp"
#include "graph.hpp"
#include "planar.hpp"

namespace tscu {

/// Network Diversion: a minimal s-t cut of size at most k whose cut-set
/// contains every edge of B.
struct DiversionInstance {
    Multigraph graph;
    std::optional<PlaneEmbedding> embedding;
    VertexId s = 0;
    VertexId t = 0;
    std::vector<EdgeId> B;
    int k = INT_MAX;
};

namespace detail {

/// Moves every component of G[B] that avoids `keep_b` over to side A. The
/// cut-set only shrinks, and edges between A and the component of `keep_b`
/// stay cut.
inline Cut absorb_strays(const Multigraph& g, const Cut& cut, VertexId keep_b) {
    std::vector<char> removed(static_cast<std::size_t>(g.edge_count()), 0);
    for (EdgeId e : cut.edges) removed[e] = 1;
    const auto label = component_labels(g, removed);
    std::vector<VertexId> side_a;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (label[v] != label[keep_b]) side_a.push_back(v);
    return make_cut(g, std::move(side_a));
}

inline bool is_diversion_cut(const DiversionInstance& inst, const Cut& cut) {
    const auto in_a = vertex_mask(inst.graph.vertex_count(), cut.side_a);
    if (!in_a[inst.s] || in_a[inst.t]) return false;
    for (EdgeId b : inst.B)
        if (!std::binary_search(cut.edges.begin(), cut.edges.end(), b)) return false;
    return is_minimal_cut(inst.graph, cut) && cut.size() <= inst.k;
}

} // namespace detail

/// Generalized Network Diversion on a connected planar graph. Each edge of B
/// puts one endpoint into S and the other into T, starting from S = {s} and
/// T = {t}; every one of the 2^|B| choices that does not force a vertex onto
/// both sides is solved as a Two-Sets Cut-Uncut instance and the smallest cut
/// is kept.
inline std::optional<Cut> generalized_network_diversion(const DiversionInstance& inst, const SolverConfig& cfg = {}) {
    const auto& g = inst.graph;
    if (!g.has_vertex(inst.s) || !g.has_vertex(inst.t)) throw std::invalid_argument("s or t out of range");
    if (inst.s == inst.t) throw std::invalid_argument("s and t must differ");
    if (inst.B.size() > 20) throw std::invalid_argument("too many diversion edges");
    for (EdgeId b : inst.B) {
        if (b < 0 || b >= g.edge_count()) throw std::invalid_argument("diversion edge out of range");
        if (g.edge(b).is_loop()) return std::nullopt;
    }
    if (!is_connected(g)) return std::nullopt;

    std::optional<Cut> best;
    std::set<std::pair<std::vector<VertexId>, std::vector<VertexId>>> tried;
    const std::uint32_t choices = 1u << inst.B.size();
    for (std::uint32_t mask = 0; mask < choices; ++mask) {
        std::vector<VertexId> S{inst.s}, T{inst.t};
        for (std::size_t i = 0; i < inst.B.size(); ++i) {
            const Edge& ed = g.edge(inst.B[i]);
            const bool flip = (mask >> i) & 1u;
            S.push_back(flip ? ed.v : ed.u);
            T.push_back(flip ? ed.u : ed.v);
        }
        S = detail::sorted_unique(std::move(S));
        T = detail::sorted_unique(std::move(T));
        std::vector<VertexId> both;
        std::set_intersection(S.begin(), S.end(), T.begin(), T.end(), std::back_inserter(both));
        if (!both.empty()) continue;
        if (!tried.emplace(S, T).second) continue;

        CutUncutInstance sub;
        sub.graph = g;
        sub.embedding = inst.embedding;
        sub.S = S;
        sub.T = T;
        sub.k = best ? std::min(inst.k, best->size() - 1) : inst.k;
        CutUncutOptions opts;
        opts.solver = cfg;
        auto cut = solve_cut_uncut(sub, opts);
        if (!cut) continue;
        Cut tidy = detail::absorb_strays(g, *cut, inst.t);
        if (!detail::is_diversion_cut(inst, tidy)) throw std::logic_error("diversion cut failed verification");
        if (!best || tidy.size() < best->size()) best = std::move(tidy);
    }
    return best;
}

/// Network Diversion with a single edge b = B[0].
inline std::optional<Cut> network_diversion(const DiversionInstance& inst, const SolverConfig& cfg = {}) {
    if (inst.B.size() != 1) throw std::invalid_argument("network_diversion takes exactly one diversion edge");
    return generalized_network_diversion(inst, cfg);
}

// ----------------------------------------------------------------------------
// Generalized Location Constrained Shortest Path

/// Plane graph with a designated outer face and s, t on its frontier. A
/// solution is an s-t path whose internal vertices avoid the outer frontier,
/// with every face of FA above it and every face of FB below it. The upper
/// arc is the outer-face walk from s to t, the lower arc the walk from t back
/// to s; "below P" means inside the closed walk P + lower arc.
struct GlcspInstance {
    Multigraph graph;
    PlaneEmbedding embedding;
    VertexId s = 0;
    VertexId t = 0;
    std::vector<int> FA;
    std::vector<int> FB;
};

/// Upper and lower outer arcs as dart sequences.
struct OuterArcs {
    std::vector<DartId> upper;
    std::vector<DartId> lower;
};

inline OuterArcs outer_arcs(const Multigraph& g, const PlaneEmbedding& emb, VertexId s, VertexId t) {
    const auto& walk = emb.faces.at(static_cast<std::size_t>(emb.outer_face));
    const int len = static_cast<int>(walk.size());
    int i = -1;
    for (int p = 0; p < len && i == -1; ++p)
        if (dart_tail(g, walk[p]) == s) i = p;
    if (i == -1) throw std::invalid_argument("s is not on the outer face");
    int j = -1;
    for (int step = 1; step < len && j == -1; ++step)
        if (dart_tail(g, walk[(i + step) % len]) == t) j = (i + step) % len;
    if (j == -1) throw std::invalid_argument("t is not on the outer face");
    OuterArcs arcs;
    for (int p = i; p != j; p = (p + 1) % len) arcs.upper.push_back(walk[p]);
    for (int p = j; p != i; p = (p + 1) % len) arcs.lower.push_back(walk[p]);
    return arcs;
}

/// Orders an edge set forming a simple s-t path.
inline Path order_path(const Multigraph& g, VertexId s, const std::vector<EdgeId>& edges) {
    Path path;
    path.vertices.push_back(s);
    std::vector<char> used(edges.size(), 0);
    VertexId at = s;
    for (std::size_t step = 0; step < edges.size(); ++step) {
        bool moved = false;
        for (std::size_t i = 0; i < edges.size() && !moved; ++i) {
            if (used[i]) continue;
            const Edge& ed = g.edge(edges[i]);
            if (ed.u != at && ed.v != at) continue;
            used[i] = 1;
            at = ed.other(at);
            path.vertices.push_back(at);
            path.edges.push_back(edges[i]);
            moved = true;
        }
        if (!moved) throw std::logic_error("edge set is not a path");
    }
    return path;
}

namespace detail {

inline void check_glcsp(const GlcspInstance& inst) {
    const auto& g = inst.graph;
    if (!g.has_vertex(inst.s) || !g.has_vertex(inst.t)) throw std::invalid_argument("s or t out of range");
    if (inst.s == inst.t) throw std::invalid_argument("s and t must differ");
    const int f = inst.embedding.face_count();
    std::set<int> fa;
    for (int x : inst.FA) {
        if (x < 0 || x >= f) throw std::invalid_argument("face id out of range");
        if (x == inst.embedding.outer_face) throw std::invalid_argument("FA must hold interior faces");
        fa.insert(x);
    }
    for (int x : inst.FB) {
        if (x < 0 || x >= f) throw std::invalid_argument("face id out of range");
        if (x == inst.embedding.outer_face) throw std::invalid_argument("FB must hold interior faces");
        if (fa.count(x)) throw std::invalid_argument("FA and FB overlap");
    }
}

/// Shortest dual walk (as primal edge ids) between two faces.
inline std::vector<EdgeId> dual_route(const Multigraph& g, const PlaneEmbedding& emb, int from, int to) {
    const DualGraph dg = dual(g, emb);
    std::vector<EdgeId> via(static_cast<std::size_t>(emb.face_count()), -1);
    std::vector<char> seen(static_cast<std::size_t>(emb.face_count()), 0);
    std::vector<int> queue{from};
    seen[from] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        const int x = queue[h];
        for (EdgeId e : dg.graph.incident(x)) {
            const int y = dg.graph.edge(e).other(x);
            if (seen[y]) continue;
            seen[y] = 1;
            via[y] = e;
            queue.push_back(y);
        }
    }
    if (!seen[to]) throw std::logic_error("dual graph is disconnected");
    std::vector<EdgeId> route;
    for (int x = to; x != from; x = dg.graph.edge(via[x]).other(x)) route.push_back(dg.primal_of[via[x]]);
    return route;
}

} // namespace detail

/// Whether `path` solves the instance: simple s-t path, internal vertices
/// off the outer frontier, FA faces outside and FB faces inside P + lower arc.
inline bool is_glcsp_path(const GlcspInstance& inst, const Path& path) {
    const auto& g = inst.graph;
    const auto& emb = inst.embedding;
    if (path.vertices.size() != path.edges.size() + 1 || path.edges.empty()) return false;
    if (path.vertices.front() != inst.s || path.vertices.back() != inst.t) return false;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
        const Edge& ed = g.edge(path.edges[i]);
        const VertexId a = path.vertices[i], b = path.vertices[i + 1];
        if (!((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a)) || ed.is_loop()) return false;
    }
    for (VertexId v : path.vertices) {
        if (seen[v]) return false;
        seen[v] = 1;
    }
    std::vector<char> outer(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId v : frontier_vertices(g, emb, emb.outer_face)) outer[v] = 1;
    for (std::size_t i = 1; i + 1 < path.vertices.size(); ++i)
        if (outer[path.vertices[i]]) return false;

    // closed walk P + lower arc, with edges used twice cancelling
    std::map<EdgeId, int> count;
    for (EdgeId e : path.edges) ++count[e];
    for (DartId d : outer_arcs(g, emb, inst.s, inst.t).lower) ++count[dart_edge(d)];
    std::vector<EdgeId> closed;
    for (auto [e, c] : count)
        if (c & 1) closed.push_back(e);
    for (int f : inst.FA)
        if (crossing_parity(detail::dual_route(g, emb, f, emb.outer_face), closed) != 0) return false;
    for (int f : inst.FB)
        if (crossing_parity(detail::dual_route(g, emb, f, emb.outer_face), closed) != 1) return false;
    return true;
}

/// Shortest solution via Two-Sets Cut-Uncut on a dual graph. The outer
/// frontier except s and t is deleted and an edge st is drawn across the
/// outer face with the upper arc on its inner side, giving face A (upper)
/// and face B (lower). A minimum cut of the dual separating FA + {A} from
/// FB + {B} is a cycle through st; removing st leaves the path.
inline std::optional<Path> glcsp(const GlcspInstance& inst, const SolverConfig& cfg = {}) {
    detail::check_glcsp(inst);
    const auto& g = inst.graph;
    const auto& emb = inst.embedding;
    const int m = g.edge_count();
    const OuterArcs arcs = outer_arcs(g, emb, inst.s, inst.t);

    // G+ = G + st (edge id m; dart 2m leaves s, dart 2m + 1 leaves t)
    Multigraph plus = g;
    plus.add_edge(inst.s, inst.t);
    auto rotation = emb.rotation;
    auto insert_before = [&](VertexId v, DartId anchor, DartId fresh) {
        auto& rot = rotation[v];
        rot.insert(std::find(rot.begin(), rot.end(), anchor), fresh);
    };
    insert_before(inst.t, twin(arcs.upper.back()), 2 * m + 1);
    insert_before(inst.s, twin(arcs.lower.back()), 2 * m);
    const PlaneEmbedding emb_plus = make_embedding(plus, std::move(rotation));
    const int face_a = emb_plus.face_of_dart[2 * m + 1];
    const int face_b = emb_plus.face_of_dart[2 * m];

    // G' = component of s in G+ minus the outer frontier other than s, t
    std::vector<char> keep(static_cast<std::size_t>(g.vertex_count()), 1);
    for (VertexId v : frontier_vertices(g, emb, emb.outer_face))
        if (v != inst.s && v != inst.t) keep[v] = 0;
    {
        std::vector<char> dead(keep.size(), 0);
        for (std::size_t v = 0; v < keep.size(); ++v) dead[v] = !keep[v];
        const auto label = component_labels(g, {}, dead);
        if (label[inst.s] != label[inst.t]) return std::nullopt;
        for (std::size_t v = 0; v < keep.size(); ++v) keep[v] = keep[v] && label[v] == label[inst.s];
    }
    const InducedSubgraph sub = induced_subgraph(plus, keep);
    const PlaneEmbedding emb_sub = restrict_embedding(plus, emb_plus, sub);

    // faces of G+ merge across deleted edges into faces of G'
    std::vector<int> parent(static_cast<std::size_t>(emb_plus.face_count()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (EdgeId e = 0; e <= m; ++e)
        if (sub.edge_image[e] == -1) parent[find(emb_plus.face_of_dart[2 * e])] = find(emb_plus.face_of_dart[2 * e + 1]);
    std::vector<int> class_face(parent.size(), -1);
    for (DartId d = 0; d < 2 * (m + 1); ++d) {
        const EdgeId ne = sub.edge_image[dart_edge(d)];
        if (ne == -1) continue;
        const int f = emb_sub.face_of_dart[2 * ne + (d & 1)];
        int& slot = class_face[find(emb_plus.face_of_dart[d])];
        if (slot != -1 && slot != f) throw std::logic_error("face merge is inconsistent");
        slot = f;
    }
    auto image = [&](int plus_face) {
        const int f = class_face[find(plus_face)];
        if (f == -1) throw std::logic_error("face vanished with the outer frontier");
        return f;
    };
    // faces of G keep their ids in G+ except the outer face, which the new edge splits
    auto plus_face_of = [&](int f) { return emb_plus.face_of_dart[emb.faces[f].front()]; };

    CutUncutInstance tscu;
    const DualGraph dg = dual(sub.graph, emb_sub);
    tscu.graph = dg.graph;
    tscu.S.push_back(image(face_a));
    tscu.T.push_back(image(face_b));
    for (int f : inst.FA) tscu.S.push_back(image(plus_face_of(f)));
    for (int f : inst.FB) tscu.T.push_back(image(plus_face_of(f)));
    tscu.S = detail::sorted_unique(tscu.S);
    tscu.T = detail::sorted_unique(tscu.T);
    std::vector<VertexId> both;
    std::set_intersection(tscu.S.begin(), tscu.S.end(), tscu.T.begin(), tscu.T.end(), std::back_inserter(both));
    if (!both.empty()) return std::nullopt;

    CutUncutOptions opts;
    opts.solver = cfg;
    const auto cut = solve_cut_uncut(tscu, opts);
    if (!cut) return std::nullopt;
    std::vector<EdgeId> path_edges;
    bool through_new = false;
    for (EdgeId de : cut->edges) {
        const EdgeId e = sub.edge_origin[dg.primal_of[de]];
        if (e == m) through_new = true;
        else path_edges.push_back(e);
    }
    if (!through_new) throw std::logic_error("dual cut misses the added edge");
    Path path = order_path(g, inst.s, path_edges);
    if (path.vertices.back() != inst.t || !is_glcsp_path(inst, path)) throw std::logic_error("glcsp path failed verification");
    return path;
}

} // namespace tscu
