#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "tscu/tscu.hpp"

namespace fx {

using namespace tscu;

// C4: 1-2-3-4-1, internal ids 0..3; e12=0, e23=1, e34=2, e41=3.
inline Multigraph c4() { return Multigraph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

// THETA: u=0, w1=1, w2=2, w3=3, v=4; uw1=0, uw2=1, uw3=2, w1v=3, w2v=4, w3v=5.
inline Multigraph theta() { return Multigraph::build(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}); }

// TRI: s=0, a=1, t=2; sa=0, at=1, st=2.
inline Multigraph tri() { return Multigraph::build(3, {{0, 1}, {1, 2}, {0, 2}}); }

// XPATH: s=0, a=1, b=2, t=3, c=4, d=5, e=6; s-a-b-t and s-c-d-e-t.
inline Multigraph xpath() {
    return Multigraph::build(7, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}, {6, 3}});
}

inline Multigraph k4() { return Multigraph::build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

inline Multigraph k5() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) e.emplace_back(i, j);
    return Multigraph::build(5, e);
}

using Point = std::pair<double, double>;

/// Grid with rows x cols vertices; vertex r * cols + c sits at (c, -r).
inline std::pair<Multigraph, std::vector<Point>> grid(int rows, int cols) {
    Multigraph g(rows * cols);
    std::vector<Point> xy;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) xy.emplace_back(c, -r);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(r * cols + c, r * cols + c + 1);
            if (r + 1 < rows) g.add_edge(r * cols + c, (r + 1) * cols + c);
        }
    return {g, xy};
}

/// Wheel with `rim` rim vertices 0..rim-1 (counterclockwise) and hub `rim`.
/// Edge i < rim joins i and i+1; edge rim + i joins the hub and i.
inline std::pair<Multigraph, std::vector<Point>> wheel(int rim) {
    Multigraph g(rim + 1);
    std::vector<Point> xy;
    for (int i = 0; i < rim; ++i) {
        const double a = 2 * M_PI * i / rim;
        xy.emplace_back(std::cos(a), std::sin(a));
    }
    xy.emplace_back(0, 0);
    for (int i = 0; i < rim; ++i) g.add_edge(i, (i + 1) % rim);
    for (int i = 0; i < rim; ++i) g.add_edge(rim, i);
    return {g, xy};
}

/// Counterclockwise rotation from straight-line coordinates (simple graphs).
inline std::vector<std::vector<DartId>> rotation_from_points(const Multigraph& g, const std::vector<Point>& xy) {
    std::vector<std::vector<DartId>> rot(static_cast<std::size_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<std::pair<double, DartId>> around;
        for (EdgeId e : g.incident(v)) {
            const VertexId w = g.edge(e).other(v);
            around.emplace_back(std::atan2(xy[w].second - xy[v].second, xy[w].first - xy[v].first), dart_from(g, e, v));
        }
        std::sort(around.begin(), around.end());
        for (auto& [angle, d] : around) rot[v].push_back(d);
    }
    return rot;
}

/// Face id whose frontier vertex set is exactly `verts`; -1 if none.
inline int face_with(const Multigraph& g, const PlaneEmbedding& emb, std::vector<VertexId> verts) {
    std::sort(verts.begin(), verts.end());
    for (int f = 0; f < emb.face_count(); ++f) {
        auto fv = frontier_vertices(g, emb, f);
        std::sort(fv.begin(), fv.end());
        fv.erase(std::unique(fv.begin(), fv.end()), fv.end());
        if (fv == verts) return f;
    }
    return -1;
}

/// The face that is the longest (the unbounded one for convex drawings of grids and wheels).
inline int longest_face(const PlaneEmbedding& emb) {
    int best = 0;
    for (int f = 1; f < emb.face_count(); ++f)
        if (emb.faces[f].size() > emb.faces[best].size()) best = f;
    return best;
}

inline PlaneEmbedding drawn(const Multigraph& g, const std::vector<Point>& xy) {
    auto emb = make_embedding(g, rotation_from_points(g, xy));
    return make_embedding(g, rotation_from_points(g, xy), longest_face(emb));
}

inline bool is_planar(const Multigraph& g) {
    try {
        embed(g);
        return true;
    } catch (const NonPlanarError&) {
        return false;
    }
}

inline bool biconnected(const Multigraph& g) {
    return g.vertex_count() >= 3 && is_connected(g) && cut_vertices(g).empty();
}

/// Connected planar multigraph on n vertices: random tree, then random extra
/// edges kept while the graph stays planar. Parallel edges appear with
/// probability `parallel`.
inline Multigraph random_planar(std::mt19937_64& rng, int n, int extra, double parallel = 0.0) {
    Multigraph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(static_cast<int>(rng() % v), v);
    std::uniform_real_distribution<double> coin(0, 1);
    for (int tries = 0; tries < 6 * extra && g.edge_count() < n - 1 + extra; ++tries) {
        int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
        if (a == b) continue;
        bool present = false;
        for (EdgeId e : g.incident(a)) present = present || g.edge(e).other(a) == b;
        if (present && coin(rng) >= parallel) continue;
        Multigraph h = g;
        h.add_edge(a, b);
        if (is_planar(h)) g = std::move(h);
    }
    return g;
}

/// Random 2-connected planar graph on n >= 3 vertices.
inline Multigraph random_biconnected(std::mt19937_64& rng, int n, double parallel = 0.0) {
    for (;;) {
        Multigraph g = random_planar(rng, n, n + static_cast<int>(rng() % (n + 1)), parallel);
        if (biconnected(g)) return g;
    }
}

/// Random disjoint nonempty S, T with |S| + |T| <= max_terminals.
inline std::pair<std::vector<VertexId>, std::vector<VertexId>> random_terminals(std::mt19937_64& rng, int n,
                                                                                int max_terminals) {
    std::vector<VertexId> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    const int total = 2 + static_cast<int>(rng() % static_cast<unsigned>(std::min(max_terminals, n) - 1));
    const int s_count = 1 + static_cast<int>(rng() % static_cast<unsigned>(total - 1));
    std::vector<VertexId> S(order.begin(), order.begin() + s_count);
    std::vector<VertexId> T(order.begin() + s_count, order.begin() + total);
    std::sort(S.begin(), S.end());
    std::sort(T.begin(), T.end());
    return {S, T};
}

/// Glues blocks along cut vertices: each new block is a random 2-connected
/// planar graph (or a single edge) sharing one vertex with the graph so far.
inline Multigraph planted_cut_vertices(std::mt19937_64& rng, int blocks, int max_block) {
    Multigraph g(1);
    for (int b = 0; b < blocks; ++b) {
        const int size = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_block - 1));
        Multigraph block = size == 2 ? Multigraph::build(2, {{0, 1}}) : random_biconnected(rng, size);
        const VertexId glue = static_cast<VertexId>(rng() % static_cast<unsigned>(g.vertex_count()));
        std::vector<VertexId> image(static_cast<std::size_t>(block.vertex_count()));
        image[0] = glue;
        for (int v = 1; v < block.vertex_count(); ++v) image[v] = g.add_vertex();
        for (const Edge& e : block.edges()) g.add_edge(image[e.u], image[e.v]);
    }
    return g;
}

inline std::vector<VertexId> terminal_union(std::vector<VertexId> S, const std::vector<VertexId>& T) {
    S.insert(S.end(), T.begin(), T.end());
    std::sort(S.begin(), S.end());
    return S;
}

inline int bits_of(const std::string& s) {
    int b = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') b |= 1 << i;
    return b;
}

} // namespace fx
