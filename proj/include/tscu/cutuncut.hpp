#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

#include "graph.hpp"
#include "planar.hpp"
#include "xcsp.hpp"

namespace tscu {

/// Two-Sets Cut-Uncut: find a cut (A, B) with |cut(A)| <= k such that S lies
/// in one component of G[A] and T in one component of G[B].
struct CutUncutInstance {
    Multigraph graph;
    std::optional<PlaneEmbedding> embedding;
    std::vector<VertexId> S;
    std::vector<VertexId> T;
    int k = INT_MAX;
};

enum class Parameterization { terminals, face_cover };

struct CutUncutOptions {
    Parameterization param = Parameterization::terminals;
    /// Face-cover budget r; the minimum cover is used when unset.
    std::optional<int> cover_size;
    SolverConfig solver;
};

// ----------------------------------------------------------------------------
// Cut helpers

/// Cut with sorted sides and its cut-set.
inline Cut make_cut(const Multigraph& g, std::vector<VertexId> side_a) {
    std::sort(side_a.begin(), side_a.end());
    Cut cut;
    const auto in_a = vertex_mask(g.vertex_count(), side_a);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (!in_a[v]) cut.side_b.push_back(v);
    cut.edges = cut_set(g, side_a);
    cut.side_a = std::move(side_a);
    return cut;
}

/// Whether `cut` is an S-T solution: cut-set consistent with its sides, all
/// of S in one component of G[A] and all of T in one component of G[B].
inline bool is_two_sets_cut(const Multigraph& g, const std::vector<VertexId>& S, const std::vector<VertexId>& T,
                            const Cut& cut) {
    const int n = g.vertex_count();
    const auto in_a = vertex_mask(n, cut.side_a);
    if (static_cast<int>(cut.side_a.size() + cut.side_b.size()) != n) return false;
    for (VertexId v : cut.side_b)
        if (in_a[v]) return false;
    if (cut_set(g, cut.side_a) != [&] { auto e = cut.edges; std::sort(e.begin(), e.end()); return e; }()) return false;
    std::vector<char> removed(static_cast<std::size_t>(g.edge_count()), 0);
    for (EdgeId e : cut.edges) removed[e] = 1;
    const auto label = component_labels(g, removed);
    for (VertexId v : S)
        if (!in_a[v] || label[v] != label[S.front()]) return false;
    for (VertexId v : T)
        if (in_a[v] || label[v] != label[T.front()]) return false;
    return true;
}

/// Whether both sides of the cut induce connected, nonempty subgraphs.
inline bool is_minimal_cut(const Multigraph& g, const Cut& cut) {
    if (cut.side_a.empty() || cut.side_b.empty()) return false;
    std::vector<char> removed(static_cast<std::size_t>(g.edge_count()), 0);
    for (EdgeId e : cut.edges) removed[e] = 1;
    const auto label = component_labels(g, removed);
    for (VertexId v : cut.side_a)
        if (label[v] != label[cut.side_a.front()]) return false;
    for (VertexId v : cut.side_b)
        if (label[v] != label[cut.side_b.front()]) return false;
    return label[cut.side_a.front()] != label[cut.side_b.front()];
}

/// The minimal cut whose cut-set is the primal image of a simple dual cycle.
/// Side A is the side holding the lowest vertex. Throws std::logic_error when
/// the image does not split G into exactly two sides with that cut-set.
inline Cut cycle_to_cut(const Multigraph& g, const std::vector<EdgeId>& dual_cycle) {
    std::vector<char> removed(static_cast<std::size_t>(g.edge_count()), 0);
    for (EdgeId e : dual_cycle) removed.at(static_cast<std::size_t>(e)) = 1;
    const auto label = component_labels(g, removed);
    std::vector<VertexId> side_a;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (label[v] > 1) throw std::logic_error("dual cycle splits the graph into more than two parts");
        if (label[v] == 0) side_a.push_back(v);
    }
    Cut cut = make_cut(g, std::move(side_a));
    std::vector<EdgeId> image = dual_cycle;
    std::sort(image.begin(), image.end());
    if (cut.edges != image) throw std::logic_error("dual cycle image is not the cut-set of its sides");
    return cut;
}

inline Cut orient_cut(const Multigraph& g, Cut cut, VertexId in_a) {
    if (std::binary_search(cut.side_a.begin(), cut.side_a.end(), in_a)) return cut;
    return make_cut(g, cut.side_b);
}

// ----------------------------------------------------------------------------
// Labels

/// Representatives with their Z_2^d labeling. Bit i of an edge label is set
/// when the edge lies on the tree path from `root` to `others[i]`; bit i of
/// the target is set when `others[i]` is in T.
struct Labeling {
    std::vector<VertexId> representatives;
    VertexId root = -1;
    std::vector<VertexId> others;
    int dimension = 0;
    std::vector<EdgeId> tree;
    std::vector<GroupVec> edge_labels; ///< per primal edge
    GroupVec target = 0;
};

inline Labeling build_labels(const Multigraph& g, std::vector<VertexId> reps, const std::vector<VertexId>& S,
                             const std::vector<VertexId>& T) {
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    const auto in_s = vertex_mask(g.vertex_count(), S);
    const auto in_t = vertex_mask(g.vertex_count(), T);
    Labeling lab;
    for (VertexId v : reps) {
        if (!in_s[v] && !in_t[v]) throw std::invalid_argument("representative is not a terminal");
        if (lab.root == -1 && in_s[v]) lab.root = v;
    }
    if (lab.root == -1) throw std::invalid_argument("representatives must include a vertex of S");
    for (VertexId v : reps)
        if (v != lab.root) lab.others.push_back(v);
    lab.dimension = static_cast<int>(lab.others.size());
    if (lab.dimension > 62) throw std::invalid_argument("too many representatives");
    lab.representatives = reps;
    lab.tree = spanning_tree_pruned(g, reps);
    lab.edge_labels.assign(static_cast<std::size_t>(g.edge_count()), 0);
    for (int i = 0; i < lab.dimension; ++i) {
        for (EdgeId e : tree_path(g, lab.tree, lab.root, lab.others[i])) lab.edge_labels[e] |= GroupVec{1} << i;
        if (in_t[lab.others[i]]) lab.target |= GroupVec{1} << i;
    }
    return lab;
}

// ----------------------------------------------------------------------------
// Terminal-count pipeline

namespace detail {

inline std::vector<VertexId> terminal_union(std::vector<VertexId> S, const std::vector<VertexId>& T) {
    S.insert(S.end(), T.begin(), T.end());
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    return S;
}

inline SolverConfig bounded(SolverConfig cfg, int k) {
    if (k != INT_MAX) cfg.max_length = cfg.max_length ? std::min(*cfg.max_length, k) : k;
    return cfg;
}

inline std::optional<Cut> cut_from_cycle(const Multigraph& g, const std::vector<VertexId>& S,
                                         const std::vector<VertexId>& T, const std::vector<EdgeId>& primal_image) {
    Cut cut = orient_cut(g, cycle_to_cut(g, primal_image), S.front());
    if (!is_two_sets_cut(g, S, T, cut)) throw std::logic_error("cycle solution does not separate S from T");
    return cut;
}

} // namespace detail

/// Shortest S-T cut of a 2-connected plane graph as a shortest dual cycle
/// with label sum c, taking every terminal as a representative
/// (d = |S| + |T| - 1). Returns the optimum when it is at most inst.k.
inline std::optional<Cut> solve_by_terminals(const CutUncutInstance& inst, const SolverConfig& cfg = {}) {
    const auto& g = inst.graph;
    if (!inst.embedding) throw std::invalid_argument("solve_by_terminals needs an embedding");
    const DualGraph dg = dual(g, *inst.embedding);
    const Labeling lab = build_labels(g, detail::terminal_union(inst.S, inst.T), inst.S, inst.T);

    XcspInstance xi;
    xi.graph = dg.graph;
    xi.dimension = lab.dimension;
    xi.target = lab.target;
    for (EdgeId e = 0; e < dg.graph.edge_count(); ++e) xi.labels.push_back(lab.edge_labels[dg.primal_of[e]]);
    const auto cycle = shortest_xcsp_cycle(xi, detail::bounded(cfg, inst.k));
    if (!cycle) return std::nullopt;
    std::vector<EdgeId> image;
    for (EdgeId e : cycle->edges) image.push_back(dg.primal_of[e]);
    return detail::cut_from_cycle(g, inst.S, inst.T, image);
}

// ----------------------------------------------------------------------------
// Face-cover pipeline

/// Dual graph after the cover modifications. F1 faces (frontier holds both S
/// and T) lose the dual edges of the two minimal frontier arcs spanning S'
/// and T'. F2 faces with q >= 2 terminals are split into one vertex per
/// frontier arc between consecutive terminals.
struct ModifiedDual {
    Multigraph graph;
    std::vector<EdgeId> origin_edge;                 ///< H edge -> primal edge
    std::vector<std::pair<int, int>> split_origin;   ///< H vertex -> (face, arc index or -1)
    std::vector<std::vector<VertexId>> x_sets;       ///< one per F2 face, in cover order
    std::vector<int> f1_faces;
    std::vector<int> f2_faces;
    std::vector<EdgeId> deleted;                     ///< primal edges whose duals were removed
};

/// S' and T' interleave on an F1 frontier, so no dual cycle separates them.
struct CoverInfeasible {
    int face = -1;
};

namespace detail {

/// Frontier of a face of a 2-connected plane graph; throws when it is not a cycle.
inline std::vector<VertexId> frontier_cycle(const Multigraph& g, const PlaneEmbedding& emb, int f) {
    auto verts = frontier_vertices(g, emb, f);
    auto sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("face frontier is not a cycle; the graph must be 2-connected");
    return verts;
}

} // namespace detail

inline std::variant<ModifiedDual, CoverInfeasible> modify_dual_for_cover(const Multigraph& g, const PlaneEmbedding& emb,
                                                                          const FaceCover& cover,
                                                                          const std::vector<VertexId>& S,
                                                                          const std::vector<VertexId>& T) {
    const auto in_s = vertex_mask(g.vertex_count(), S);
    const auto in_t = vertex_mask(g.vertex_count(), T);
    ModifiedDual md;
    std::vector<char> deleted(static_cast<std::size_t>(g.edge_count()), 0);
    // face -> (edge -> arc index) for split faces
    std::map<int, std::map<EdgeId, int>> arc_of;
    std::map<int, int> arcs_per_face;

    for (int f : cover.faces) {
        const auto verts = detail::frontier_cycle(g, emb, f);
        const auto& darts = emb.faces[f];
        const int len = static_cast<int>(verts.size());
        auto kind = [&](int i) { return in_s[verts[i]] ? 1 : (in_t[verts[i]] ? 2 : 0); };
        std::vector<int> terminal_pos;
        bool has_s = false, has_t = false;
        for (int i = 0; i < len; ++i) {
            if (kind(i) == 0) continue;
            terminal_pos.push_back(i);
            has_s |= kind(i) == 1;
            has_t |= kind(i) == 2;
        }
        const int q = static_cast<int>(terminal_pos.size());
        if (has_s && has_t) {
            md.f1_faces.push_back(f);
            int changes = 0;
            for (int j = 0; j < q; ++j)
                if (kind(terminal_pos[j]) != kind(terminal_pos[(j + 1) % q])) ++changes;
            if (changes > 2) return CoverInfeasible{f};
            // each block runs from the terminal following a kind change up to the next change
            for (int j = 0; j < q; ++j) {
                const int prev = terminal_pos[(j + q - 1) % q];
                if (kind(prev) == kind(terminal_pos[j])) continue;
                int end = j;
                while (kind(terminal_pos[(end + 1) % q]) == kind(terminal_pos[j])) end = (end + 1) % q;
                for (int i = terminal_pos[j]; i != terminal_pos[end]; i = (i + 1) % len) {
                    const EdgeId e = dart_edge(darts[i]);
                    if (!deleted[e]) md.deleted.push_back(e);
                    deleted[e] = 1;
                }
            }
        } else {
            md.f2_faces.push_back(f);
            if (q >= 2) {
                auto& arcs = arc_of[f];
                arcs_per_face[f] = q;
                for (int j = 0; j < q; ++j)
                    for (int i = terminal_pos[j]; i != terminal_pos[(j + 1) % q]; i = (i + 1) % len)
                        arcs[dart_edge(darts[i])] = j;
            }
        }
    }
    std::sort(md.deleted.begin(), md.deleted.end());

    std::vector<VertexId> base(static_cast<std::size_t>(emb.face_count()), -1);
    for (int f = 0; f < emb.face_count(); ++f) {
        base[f] = static_cast<VertexId>(md.split_origin.size());
        if (auto it = arcs_per_face.find(f); it != arcs_per_face.end()) {
            for (int j = 0; j < it->second; ++j) md.split_origin.emplace_back(f, j);
        } else {
            md.split_origin.emplace_back(f, -1);
        }
    }
    md.graph = Multigraph(static_cast<int>(md.split_origin.size()));
    auto endpoint = [&](int face, EdgeId e) {
        auto it = arc_of.find(face);
        return it == arc_of.end() ? base[face] : base[face] + it->second.at(e);
    };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (deleted[e]) continue;
        md.graph.add_edge(endpoint(emb.face_of_dart[2 * e], e), endpoint(emb.face_of_dart[2 * e + 1], e));
        md.origin_edge.push_back(e);
    }
    for (int f : md.f2_faces) {
        std::vector<VertexId> x;
        const int parts = arcs_per_face.count(f) ? arcs_per_face[f] : 1;
        for (int j = 0; j < parts; ++j) x.push_back(base[f] + j);
        md.x_sets.push_back(std::move(x));
    }
    return md;
}

/// Lowest S and lowest T vertex on each F1 frontier, lowest terminal on each
/// F2 frontier.
inline std::vector<VertexId> choose_representatives(const Multigraph& g, const PlaneEmbedding& emb,
                                                    const ModifiedDual& md, const std::vector<VertexId>& S,
                                                    const std::vector<VertexId>& T) {
    const auto in_s = vertex_mask(g.vertex_count(), S);
    const auto in_t = vertex_mask(g.vertex_count(), T);
    std::set<VertexId> reps;
    for (int f : md.f1_faces) {
        auto verts = frontier_vertices(g, emb, f);
        std::sort(verts.begin(), verts.end());
        for (const auto& in : {in_s, in_t})
            for (VertexId v : verts)
                if (in[v]) {
                    reps.insert(v);
                    break;
                }
    }
    for (int f : md.f2_faces) {
        auto verts = frontier_vertices(g, emb, f);
        std::sort(verts.begin(), verts.end());
        for (VertexId v : verts)
            if (in_s[v] || in_t[v]) {
                reps.insert(v);
                break;
            }
    }
    return {reps.begin(), reps.end()};
}

/// Shortest S-T cut of a 2-connected plane graph through a face cover of
/// size at most r: xor-constrained cycle search on the modified dual with one
/// X set per F2 face, so d + p <= 2r - 1.
inline std::optional<Cut> solve_by_face_cover(const CutUncutInstance& inst, int r, const SolverConfig& cfg = {}) {
    const auto& g = inst.graph;
    if (!inst.embedding) throw std::invalid_argument("solve_by_face_cover needs an embedding");
    const auto& emb = *inst.embedding;
    const auto cover = face_cover(g, emb, detail::terminal_union(inst.S, inst.T), r);
    if (!cover) return std::nullopt;
    auto modified = modify_dual_for_cover(g, emb, *cover, inst.S, inst.T);
    if (std::holds_alternative<CoverInfeasible>(modified)) return std::nullopt;
    const auto& md = std::get<ModifiedDual>(modified);
    const Labeling lab = build_labels(g, choose_representatives(g, emb, md, inst.S, inst.T), inst.S, inst.T);

    XcspInstance xi;
    xi.graph = md.graph;
    xi.dimension = lab.dimension;
    xi.target = lab.target;
    xi.x_sets = md.x_sets;
    for (EdgeId e = 0; e < md.graph.edge_count(); ++e) xi.labels.push_back(lab.edge_labels[md.origin_edge[e]]);
    const auto cycle = shortest_xcsp_cycle(xi, detail::bounded(cfg, inst.k));
    if (!cycle) return std::nullopt;
    std::vector<EdgeId> image;
    for (EdgeId e : cycle->edges) image.push_back(md.origin_edge[e]);
    return detail::cut_from_cycle(g, inst.S, inst.T, image);
}

// ----------------------------------------------------------------------------
// Preprocessing

/// Preprocessing settled the instance; `cut` is empty for a no-instance.
struct Resolved {
    std::optional<Cut> cut;
};

/// Equivalent instance on a 2-connected induced subgraph.
struct Reduced {
    CutUncutInstance instance;
    InducedSubgraph sub;
};

inline std::optional<Cut> solve_cut_uncut(const CutUncutInstance& inst, const CutUncutOptions& opts = {});

namespace detail {

inline void check_terminals(const Multigraph& g, const std::vector<VertexId>& S, const std::vector<VertexId>& T) {
    if (S.empty() || T.empty()) throw std::invalid_argument("S and T must be nonempty");
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId v : S) {
        if (!g.has_vertex(v)) throw std::invalid_argument("terminal out of range");
        seen[v] = 1;
    }
    for (VertexId v : T) {
        if (!g.has_vertex(v)) throw std::invalid_argument("terminal out of range");
        if (seen[v] == 1) throw std::invalid_argument("S and T must be disjoint");
    }
}

/// Cut of the whole graph from a cut-set found on a piece of it: side A is
/// everything reachable from S once the cut-set is removed.
inline std::optional<Cut> lift_cut(const CutUncutInstance& inst, const std::vector<EdgeId>& cut_edges) {
    const auto& g = inst.graph;
    std::vector<char> removed(static_cast<std::size_t>(g.edge_count()), 0);
    for (EdgeId e : cut_edges) removed[e] = 1;
    const auto label = component_labels(g, removed);
    std::vector<VertexId> side_a;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (label[v] == label[inst.S.front()]) side_a.push_back(v);
    Cut cut = make_cut(g, std::move(side_a));
    if (!is_two_sets_cut(g, inst.S, inst.T, cut)) throw std::logic_error("preprocessing produced an invalid cut");
    if (cut.size() > inst.k) return std::nullopt;
    return cut;
}

inline std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace detail

/// Reduces an instance to an equivalent one on a 2-connected induced
/// subgraph, or settles it. Loops are dropped first. For a cut vertex v with
/// separation (X, Y):
///  1. a side without terminals is deleted;
///  2. terminals of both kinds on both sides: no-instance;
///  3. one side holds terminals of one kind only while the other holds both:
///     that side is deleted and v joins the kind it held;
///  4. each side holds one kind: the better of the two single-terminal
///     subinstances (G[Y], {v}, T) and (G[X], S, {v}), solved recursively.
inline std::variant<Resolved, Reduced> preprocess_biconnect(const CutUncutInstance& inst, const SolverConfig& cfg = {}) {
    const auto& g = inst.graph;
    detail::check_terminals(g, inst.S, inst.T);
    const int n = g.vertex_count();

    std::vector<char> loops(static_cast<std::size_t>(g.edge_count()), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) loops[e] = g.edge(e).is_loop();

    // components
    {
        const auto label = component_labels(g, loops);
        const int ls = label[inst.S.front()], lt = label[inst.T.front()];
        for (VertexId v : inst.S)
            if (label[v] != ls) return Resolved{};
        for (VertexId v : inst.T)
            if (label[v] != lt) return Resolved{};
        if (ls != lt) return Resolved{detail::lift_cut(inst, {})};
    }

    std::vector<char> alive(static_cast<std::size_t>(n), 0);
    {
        const auto label = component_labels(g, loops);
        for (VertexId v = 0; v < n; ++v) alive[v] = label[v] == label[inst.S.front()];
    }
    std::vector<char> in_s = vertex_mask(n, inst.S);
    std::vector<char> in_t = vertex_mask(n, inst.T);

    for (;;) {
        InducedSubgraph sub = induced_subgraph(g, alive, loops);
        const auto cuts = cut_vertices(sub.graph);
        if (cuts.empty()) break;
        const VertexId cv = cuts.front();
        const VertexId v = sub.vertex_origin[cv];
        // pieces of G - v
        std::vector<char> dead(static_cast<std::size_t>(sub.graph.vertex_count()), 0);
        dead[cv] = 1;
        const auto label = component_labels(sub.graph, {}, dead);
        const int pieces = *std::max_element(label.begin(), label.end()) + 1;
        std::vector<int> s_count(static_cast<std::size_t>(pieces), 0), t_count(static_cast<std::size_t>(pieces), 0);
        for (VertexId x = 0; x < sub.graph.vertex_count(); ++x) {
            if (x == cv) continue;
            const VertexId o = sub.vertex_origin[x];
            s_count[label[x]] += in_s[o];
            t_count[label[x]] += in_t[o];
        }
        auto drop_piece = [&](int piece) {
            for (VertexId x = 0; x < sub.graph.vertex_count(); ++x)
                if (x != cv && label[x] == piece) alive[sub.vertex_origin[x]] = 0;
        };

        // Case 1
        bool dropped = false;
        for (int piece = 0; piece < pieces && !dropped; ++piece) {
            if (s_count[piece] == 0 && t_count[piece] == 0) {
                drop_piece(piece);
                dropped = true;
            }
        }
        if (dropped) continue;

        // X = piece 0 plus v, Y = the other pieces plus v
        int xs = s_count[0] + in_s[v], xt = t_count[0] + in_t[v];
        int ys = in_s[v], yt = in_t[v];
        for (int piece = 1; piece < pieces; ++piece) {
            ys += s_count[piece];
            yt += t_count[piece];
        }
        auto side_vertices = [&](bool x_side) {
            std::vector<VertexId> out;
            for (VertexId x = 0; x < sub.graph.vertex_count(); ++x)
                if (x == cv || ((label[x] == 0) == x_side)) out.push_back(sub.vertex_origin[x]);
            return out;
        };
        auto promote = [&](bool drop_x, std::vector<char>& kind) {
            for (VertexId o : side_vertices(drop_x)) {
                if (o == v) continue;
                alive[o] = 0;
                kind[o] = 0;
            }
            kind[v] = 1;
        };

        if (xs && xt && ys && yt) return Resolved{}; // Case 2
        if (xs && !xt && ys && yt) { promote(true, in_s); continue; }   // Case 3
        if (!xs && xt && ys && yt) { promote(true, in_t); continue; }
        if (xs && xt && ys && !yt) { promote(false, in_s); continue; }
        if (xs && xt && !ys && yt) { promote(false, in_t); continue; }

        // Case 4: one side only S, the other only T
        const bool s_on_x = xs != 0;
        const auto sx = side_vertices(s_on_x);  // side holding S
        const auto tx = side_vertices(!s_on_x); // side holding T
        auto solve_side = [&](const std::vector<VertexId>& side, std::vector<VertexId> S, std::vector<VertexId> T)
            -> std::optional<std::vector<EdgeId>> {
            std::vector<char> keep(static_cast<std::size_t>(n), 0);
            for (VertexId o : side) keep[o] = 1;
            InducedSubgraph piece = induced_subgraph(g, keep, loops);
            CutUncutInstance part;
            part.graph = piece.graph;
            part.k = inst.k;
            for (VertexId o : S) part.S.push_back(piece.vertex_image[o]);
            for (VertexId o : T) part.T.push_back(piece.vertex_image[o]);
            CutUncutOptions sub_opts;
            sub_opts.solver = cfg;
            const auto cut = solve_cut_uncut(part, sub_opts);
            if (!cut) return std::nullopt;
            std::vector<EdgeId> edges;
            for (EdgeId e : cut->edges) edges.push_back(piece.edge_origin[e]);
            return edges;
        };
        std::vector<VertexId> s_now, t_now;
        for (VertexId o = 0; o < n; ++o) {
            if (!alive[o]) continue;
            if (in_s[o]) s_now.push_back(o);
            if (in_t[o]) t_now.push_back(o);
        }
        std::optional<std::vector<EdgeId>> best;
        for (auto candidate : {solve_side(tx, {v}, t_now), solve_side(sx, s_now, {v})})
            if (candidate && (!best || candidate->size() < best->size())) best = candidate;
        if (!best) return Resolved{};
        return Resolved{detail::lift_cut(inst, *best)};
    }

    Reduced red;
    red.sub = induced_subgraph(g, alive, loops);
    red.instance.graph = red.sub.graph;
    red.instance.k = inst.k;
    for (VertexId o = 0; o < n; ++o) {
        if (!alive[o]) continue;
        if (in_s[o]) red.instance.S.push_back(red.sub.vertex_image[o]);
        if (in_t[o]) red.instance.T.push_back(red.sub.vertex_image[o]);
    }
    if (red.instance.graph.vertex_count() == 2) {
        // single S and single T vertex: the cut is every edge between them
        return Resolved{detail::lift_cut(inst, red.sub.edge_origin)};
    }
    if (inst.embedding) red.instance.embedding = restrict_embedding(g, *inst.embedding, red.sub);
    return red;
}

/// Full pipeline: planarity check, preprocessing, then the chosen
/// parameterized solver on the 2-connected remainder. The returned cut is
/// optimal (up to the randomized false-negative rate) and has size <= k.
inline std::optional<Cut> solve_cut_uncut(const CutUncutInstance& inst, const CutUncutOptions& opts) {
    detail::check_terminals(inst.graph, inst.S, inst.T);
    if (!inst.embedding) {
        for (const auto& comp : connected_components(inst.graph)) {
            std::vector<char> keep(static_cast<std::size_t>(inst.graph.vertex_count()), 0);
            for (VertexId v : comp) keep[v] = 1;
            embed(induced_subgraph(inst.graph, keep).graph);
        }
    }
    auto pre = preprocess_biconnect(inst, opts.solver);
    if (auto* resolved = std::get_if<Resolved>(&pre)) return resolved->cut;
    auto& red = std::get<Reduced>(pre);
    if (!red.instance.embedding) red.instance.embedding = embed(red.instance.graph);

    std::optional<Cut> cut;
    if (opts.param == Parameterization::terminals) {
        cut = solve_by_terminals(red.instance, opts.solver);
    } else {
        const int r = opts.cover_size ? *opts.cover_size
                                      : static_cast<int>(minimum_face_cover(red.instance.graph, *red.instance.embedding,
                                                                            detail::terminal_union(red.instance.S, red.instance.T))
                                                             .faces.size());
        cut = solve_by_face_cover(red.instance, r, opts.solver);
    }
    if (!cut) return std::nullopt;
    std::vector<EdgeId> edges;
    for (EdgeId e : cut->edges) edges.push_back(red.sub.edge_origin[e]);
    return detail::lift_cut(inst, edges);
}

} // namespace tscu
