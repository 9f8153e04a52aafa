#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace tscu;

namespace {

void expect_valid(const Multigraph& g, const PlaneEmbedding& emb) {
    EXPECT_EQ(g.vertex_count() - g.edge_count() + emb.face_count(), 2);
    std::size_t total = 0;
    std::vector<int> seen(static_cast<std::size_t>(2 * g.edge_count()), 0);
    for (const auto& f : emb.faces) {
        total += f.size();
        for (DartId d : f) ++seen[d];
    }
    EXPECT_EQ(total, static_cast<std::size_t>(2 * g.edge_count()));
    for (int c : seen) EXPECT_EQ(c, 1);
}

} // namespace

TEST(Planar, EmbedExamples) {
    const auto k4 = fx::k4();
    const auto emb = embed(k4);
    EXPECT_EQ(emb.face_count(), 4);
    for (const auto& f : emb.faces) EXPECT_EQ(f.size(), 3u);
    EXPECT_THROW(embed(fx::k5()), NonPlanarError);
    const auto c4 = embed(fx::c4());
    EXPECT_EQ(c4.face_count(), 2);
    for (const auto& f : c4.faces) EXPECT_EQ(f.size(), 4u);
    EXPECT_THROW(embed(Multigraph(2)), std::invalid_argument);
}

TEST(Planar, FacesExamples) {
    const auto theta = fx::theta();
    const auto emb = embed(theta);
    EXPECT_EQ(emb.face_count(), 3);
    for (const auto& f : emb.faces) EXPECT_EQ(f.size(), 4u);
    const auto edge = Multigraph::build(2, {{0, 1}});
    const auto e = faces_of(edge, {{0}, {1}});
    EXPECT_EQ(e.face_count(), 1);
    EXPECT_EQ(e.faces[0].size(), 2u);
    EXPECT_THROW(faces_of(edge, {{1}, {0}}), MalformedRotationError);
    EXPECT_THROW(faces_of(edge, {{0}, {}}), MalformedRotationError);
    // K4 with a non-planar rotation fails the genus check
    const auto k4 = fx::k4();
    std::vector<std::vector<DartId>> rot(4);
    for (VertexId v = 0; v < 4; ++v)
        for (EdgeId x : k4.incident(v)) rot[v].push_back(dart_from(k4, x, v));
    std::swap(rot[0][0], rot[0][1]);
    bool malformed = false;
    try {
        auto a = make_embedding(k4, rot);
        std::swap(rot[1][0], rot[1][1]);
        auto b = make_embedding(k4, rot);
        (void)a;
        (void)b;
    } catch (const MalformedRotationError&) {
        malformed = true;
    }
    EXPECT_TRUE(malformed);
}

TEST(Planar, DualExamples) {
    const auto theta = fx::theta();
    const auto dt = dual(theta, embed(theta));
    EXPECT_EQ(dt.graph.vertex_count(), 3);
    EXPECT_EQ(dt.graph.edge_count(), 6);
    for (VertexId f = 0; f < 3; ++f) EXPECT_EQ(dt.graph.incident(f).size(), 4u);
    const auto c4 = fx::c4();
    const auto dc = dual(c4, embed(c4));
    EXPECT_EQ(dc.graph.vertex_count(), 2);
    for (const Edge& e : dc.graph.edges()) EXPECT_NE(e.u, e.v);
    const auto edge = Multigraph::build(2, {{0, 1}});
    const auto de = dual(edge, embed(edge));
    EXPECT_EQ(de.graph.vertex_count(), 1);
    EXPECT_TRUE(de.graph.edge(0).is_loop());
}

TEST(Planar, RandomEmbeddingsAreValid) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng() % 12);
        Multigraph g = fx::random_planar(rng, n, static_cast<int>(rng() % (2 * n + 1)), 0.25);
        if (rng() % 4 == 0) {
            Multigraph h = g;
            h.add_edge(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
            if (fx::is_planar(h)) g = h;
        }
        if (rng() % 6 == 0) {
            const VertexId v = static_cast<int>(rng() % n);
            g.add_edge(v, v);
        }
        const auto emb = embed(g);
        expect_valid(g, emb);
        const auto d = dual(g, emb);
        EXPECT_EQ(d.graph.edge_count(), g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e) EXPECT_EQ(d.primal_of[d.dual_of[e]], e);
        for (int f = 0; f < emb.face_count(); ++f) {
            // a dual loop is listed twice in its incidence list, matching its two darts
            EXPECT_EQ(d.graph.incident(f).size(), emb.faces[f].size());
        }
        // loops in the dual exactly at bridges
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (g.edge(e).is_loop()) continue;
            std::vector<char> removed(static_cast<std::size_t>(g.edge_count()), 0);
            removed[e] = 1;
            const auto label = component_labels(g, removed);
            EXPECT_EQ(d.graph.edge(e).is_loop(), label[g.edge(e).u] != label[g.edge(e).v]);
        }
    }
}

TEST(Planar, RestrictEmbedding) {
    const auto [g, xy] = fx::grid(3, 3);
    const auto emb = fx::drawn(g, xy);
    std::vector<char> keep(9, 1);
    keep[8] = 0;
    const auto sub = induced_subgraph(g, keep);
    const auto r = restrict_embedding(g, emb, sub);
    expect_valid(sub.graph, r);
}

TEST(Planar, CrossingParityExamples) {
    // C4, dual cycle through the duals of e12 and e34
    EXPECT_EQ(crossing_parity({0}, {0, 2}), 1);
    EXPECT_EQ(crossing_parity({0, 1}, {0, 2}), 1);
    EXPECT_EQ(crossing_parity({1, 3}, {0, 2}), 0);
}

TEST(Planar, FaceCoverExamples) {
    const auto c4 = fx::c4();
    const auto ec = embed(c4);
    const auto cover = face_cover(c4, ec, {0, 1, 2, 3}, 1);
    ASSERT_TRUE(cover);
    EXPECT_EQ(cover->faces.size(), 1u);
    for (auto [v, f] : cover->covered) {
        const auto fv = frontier_vertices(c4, ec, f);
        EXPECT_TRUE(std::count(fv.begin(), fv.end(), v));
    }
    const auto theta = fx::theta();
    EXPECT_TRUE(face_cover(theta, embed(theta), {0, 4}, 1));
    const auto [grid, xy] = fx::grid(3, 3);
    const auto eg = fx::drawn(grid, xy);
    std::vector<VertexId> all{0, 1, 2, 3, 4, 5, 6, 7, 8};
    EXPECT_FALSE(face_cover(grid, eg, all, 1));
    EXPECT_TRUE(face_cover(grid, eg, all, 2));
    EXPECT_TRUE(face_cover(grid, eg, {}, 0));
    EXPECT_EQ(minimum_face_cover(grid, eg, all).faces.size(), 2u);
}

TEST(Planar, FaceCoverMatchesExhaustive) {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 150; ++i) {
        const int n = 3 + static_cast<int>(rng() % 8);
        const auto g = fx::random_planar(rng, n, static_cast<int>(rng() % (n + 2)));
        const auto emb = embed(g);
        std::vector<VertexId> U;
        for (VertexId v = 0; v < n; ++v)
            if (rng() % 2) U.push_back(v);
        const int best = oracle::brute_face_cover(g, emb, U);
        const auto cover = minimum_face_cover(g, emb, U);
        EXPECT_EQ(static_cast<int>(cover.faces.size()), best);
        for (VertexId u : U) {
            ASSERT_TRUE(cover.covered.count(u));
            const auto fv = frontier_vertices(g, emb, cover.covered.at(u));
            EXPECT_TRUE(std::count(fv.begin(), fv.end(), u));
        }
        if (best > 0) EXPECT_FALSE(face_cover(g, emb, U, best - 1));
    }
}

TEST(Planar, CutCycleCorrespondence) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 40; ++i) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const auto g = fx::random_biconnected(rng, n, 0.15);
        const auto emb = embed(g);
        EXPECT_EQ(oracle::minimal_cut_sets(g), oracle::dual_cycle_images(g, emb));
    }
}

TEST(Planar, CrossingParityPredictsSeparation) {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 60; ++i) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const auto g = fx::random_biconnected(rng, n);
        const auto emb = embed(g);
        const auto cycles = oracle::dual_cycle_images(g, emb);
        std::vector<std::vector<EdgeId>> list(cycles.begin(), cycles.end());
        const auto& cyc = list[rng() % list.size()];
        const VertexId s = static_cast<int>(rng() % n), t = static_cast<int>(rng() % n);
        std::vector<char> removed(static_cast<std::size_t>(g.edge_count()), 0);
        for (EdgeId e : cyc) removed[e] = 1;
        const auto label = component_labels(g, removed);
        const int expected = label[s] != label[t];
        if (s == t) continue;
        int count = 0;
        std::function<void(VertexId, std::vector<char>&, std::vector<EdgeId>&)> walk =
            [&](VertexId x, std::vector<char>& on, std::vector<EdgeId>& edges) {
                if (x == t) {
                    EXPECT_EQ(crossing_parity(edges, cyc), expected);
                    ++count;
                    return;
                }
                for (EdgeId e : g.incident(x)) {
                    const VertexId y = g.edge(e).other(x);
                    if (on[y]) continue;
                    on[y] = 1;
                    edges.push_back(e);
                    walk(y, on, edges);
                    edges.pop_back();
                    on[y] = 0;
                }
            };
        std::vector<char> on(static_cast<std::size_t>(n), 0);
        on[s] = 1;
        std::vector<EdgeId> edges;
        walk(s, on, edges);
        EXPECT_GT(count, 0);
    }
}
