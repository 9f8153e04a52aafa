#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"

using namespace tscu;

namespace {

std::optional<int> size_of(const std::optional<Cut>& c) { return c ? std::optional<int>(c->size()) : std::nullopt; }

XcspInstance xcsp(const Multigraph& g, VertexId s, VertexId t, int d, std::vector<GroupVec> labels, GroupVec c) {
    XcspInstance inst;
    inst.graph = g;
    inst.s = s;
    inst.t = t;
    inst.dimension = d;
    inst.labels = std::move(labels);
    inst.target = c;
    return inst;
}

} // namespace

TEST(Oracle, CutUncutExamples) {
    EXPECT_EQ(size_of(oracle::brute_cut_uncut(fx::c4(), {0}, {2})), 2);
    EXPECT_EQ(size_of(oracle::brute_cut_uncut(fx::theta(), {0}, {4})), 3);
    // two triangles sharing v, each with one vertex of S and one of T
    const auto bowtie = Multigraph::build(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
    EXPECT_FALSE(oracle::brute_cut_uncut(bowtie, {0, 3}, {1, 4}));
}

TEST(Oracle, CutUncutWitness) {
    const auto cut = oracle::brute_cut_uncut(fx::theta(), {0}, {4});
    ASSERT_TRUE(cut);
    EXPECT_TRUE(is_two_sets_cut(fx::theta(), {0}, {4}, *cut));
    EXPECT_TRUE(is_minimal_cut(fx::theta(), *cut));
}

TEST(Oracle, XcspExamples) {
    const auto tri = fx::tri();
    // every label 1 in Z_2
    EXPECT_EQ(oracle::brute_xcsp(xcsp(tri, 0, 2, 1, {1, 1, 1}, 1))->length(), 1);
    EXPECT_EQ(oracle::brute_xcsp(xcsp(tri, 0, 2, 1, {1, 1, 1}, 0))->length(), 2);
    auto x = xcsp(fx::xpath(), 0, 3, 1, std::vector<GroupVec>(7, 0), 0);
    EXPECT_EQ(oracle::brute_xcsp(x)->length(), 3);
    x.x_sets = {{1, 2}};
    const auto p = oracle::brute_xcsp(x);
    ASSERT_TRUE(p);
    EXPECT_EQ(p->length(), 4);
    EXPECT_EQ(p->vertices, (std::vector<VertexId>{0, 4, 5, 6, 3}));
    // each path meets {a, c} at most once
    x.x_sets = {{1, 4}};
    EXPECT_EQ(oracle::brute_xcsp(x)->length(), 3);
    x.x_sets = {{1, 2}, {4, 5}};
    EXPECT_FALSE(oracle::brute_xcsp(x));
}

TEST(Oracle, FaceCoverExamples) {
    const auto c4 = fx::c4();
    EXPECT_EQ(oracle::brute_face_cover(c4, embed(c4), {0, 1, 2, 3}), 1);
    EXPECT_EQ(oracle::brute_face_cover(c4, embed(c4), {}), 0);
    auto [g, xy] = fx::grid(3, 3);
    const auto emb = fx::drawn(g, xy);
    std::vector<VertexId> all(9);
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(oracle::brute_face_cover(g, emb, all), 2);
    EXPECT_EQ(minimum_face_cover(g, emb, all).faces.size(), 2u);
}

TEST(Oracle, DiversionExamples) {
    const auto c4 = fx::c4();
    const auto one = oracle::brute_diversion(c4, 0, 2, {0});
    ASSERT_TRUE(one);
    EXPECT_EQ(one->size(), 2);
    EXPECT_TRUE(std::find(one->edges.begin(), one->edges.end(), 0) != one->edges.end());
    EXPECT_FALSE(oracle::brute_diversion(c4, 0, 2, {0, 1}));
    EXPECT_EQ(size_of(oracle::brute_diversion(fx::theta(), 0, 4, {})), 3);
}

TEST(Oracle, EmptyDiversionIsMinimumConnectedCut) {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 60; ++i) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const auto g = fx::random_planar(rng, n, static_cast<int>(rng() % (n + 1)), 0.1);
        const VertexId s = 0, t = 1 + static_cast<int>(rng() % (n - 1));
        EXPECT_EQ(size_of(oracle::brute_diversion(g, s, t, {})), size_of(oracle::brute_cut_uncut(g, {s}, {t})));
    }
}

TEST(Oracle, DualCycleFormulationAgrees) {
    std::mt19937_64 rng(62);
    for (int i = 0; i < 80; ++i) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const auto g = fx::random_biconnected(rng, n, 0.1);
        const auto emb = embed(g);
        auto [S, T] = fx::random_terminals(rng, n, 5);
        EXPECT_EQ(oracle::dual_cycle_cut_uncut(g, emb, S, T), size_of(oracle::brute_cut_uncut(g, S, T))) << "case " << i;
    }
}

TEST(Oracle, Deterministic) {
    std::mt19937_64 rng(63);
    for (int i = 0; i < 20; ++i) {
        const int n = 3 + static_cast<int>(rng() % 7);
        const auto g = fx::random_planar(rng, n, n);
        auto [S, T] = fx::random_terminals(rng, n, 4);
        const auto a = oracle::brute_cut_uncut(g, S, T), b = oracle::brute_cut_uncut(g, S, T);
        ASSERT_EQ(a.has_value(), b.has_value());
        if (a) {
            EXPECT_EQ(a->edges, b->edges);
            EXPECT_EQ(a->side_a, b->side_a);
        }
    }
}

TEST(Oracle, BudgetRefused) {
    const auto [g, xy] = fx::grid(4, 4);
    EXPECT_THROW(oracle::brute_cut_uncut(g, {0}, {15}), oracle::BudgetExceeded);
    EXPECT_THROW(oracle::brute_diversion(g, 0, 15, {0}), oracle::BudgetExceeded);
    oracle::OracleBudget wide;
    wide.max_vertices = 16;
    EXPECT_EQ(size_of(oracle::brute_cut_uncut(g, {0}, {15}, wide)), 2);
    oracle::OracleBudget tight{16, 3};
    EXPECT_THROW(oracle::brute_xcsp(xcsp(g, 0, 15, 1, std::vector<GroupVec>(24, 0), 1), tight),
                 oracle::BudgetExceeded);
}
