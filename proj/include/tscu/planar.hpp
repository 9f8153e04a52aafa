#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "graph.hpp"

namespace tscu {

/// Thrown when a graph has no plane embedding.
struct NonPlanarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a supplied rotation system is not a permutation of the darts
/// or does not describe a genus-0 embedding.
struct MalformedRotationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Darts: edge e owns dart 2e (tail = edge.u) and dart 2e+1 (tail = edge.v).
using DartId = int;

inline DartId twin(DartId d) { return d ^ 1; }
inline EdgeId dart_edge(DartId d) { return d >> 1; }
inline VertexId dart_tail(const Multigraph& g, DartId d) {
    const Edge& e = g.edge(dart_edge(d));
    return (d & 1) ? e.v : e.u;
}
inline VertexId dart_head(const Multigraph& g, DartId d) { return dart_tail(g, twin(d)); }
/// The dart of edge e whose tail is x.
inline DartId dart_from(const Multigraph& g, EdgeId e, VertexId x) { return g.edge(e).u == x ? 2 * e : 2 * e + 1; }

/// Combinatorial plane embedding. `rotation[v]` lists the darts leaving v in
/// counterclockwise order; a face is traced by following, from the twin of the
/// current dart, the next dart clockwise (the predecessor in `rotation`).
struct PlaneEmbedding {
    std::vector<std::vector<DartId>> rotation;
    std::vector<std::vector<DartId>> faces;
    std::vector<int> face_of_dart;
    int outer_face = 0;

    int face_count() const { return static_cast<int>(faces.size()); }
};

/// Vertices along a face frontier, one per dart (the dart tails).
inline std::vector<VertexId> frontier_vertices(const Multigraph& g, const PlaneEmbedding& emb, int face) {
    std::vector<VertexId> out;
    for (DartId d : emb.faces.at(static_cast<std::size_t>(face))) out.push_back(dart_tail(g, d));
    return out;
}

/// Traces the faces of a rotation system. Faces are numbered by the lowest
/// dart they contain. Unless `outer` names a face, the outer face is the one
/// holding the dart of edge 0 that leaves its lower endpoint.
inline PlaneEmbedding faces_of(const Multigraph& g, std::vector<std::vector<DartId>> rotation,
                               std::optional<int> outer = std::nullopt) {
    const int n = g.vertex_count();
    const int darts = 2 * g.edge_count();
    if (static_cast<int>(rotation.size()) != n) throw MalformedRotationError("rotation must list every vertex");
    std::vector<int> pos(static_cast<std::size_t>(darts), -1);
    for (VertexId v = 0; v < n; ++v) {
        const auto& rot = rotation[v];
        for (std::size_t i = 0; i < rot.size(); ++i) {
            DartId d = rot[i];
            if (d < 0 || d >= darts) throw MalformedRotationError("rotation names an unknown dart");
            if (dart_tail(g, d) != v)
                throw MalformedRotationError("dart of edge " + std::to_string(dart_edge(d) + 1) +
                                             " does not leave vertex " + std::to_string(v + 1));
            if (pos[d] != -1) throw MalformedRotationError("dart listed twice in rotation");
            pos[d] = static_cast<int>(i);
        }
    }
    for (DartId d = 0; d < darts; ++d)
        if (pos[d] == -1) throw MalformedRotationError("edge " + std::to_string(dart_edge(d) + 1) + " missing from rotation");

    PlaneEmbedding emb;
    emb.face_of_dart.assign(static_cast<std::size_t>(darts), -1);
    for (DartId start = 0; start < darts; ++start) {
        if (emb.face_of_dart[start] != -1) continue;
        const int id = static_cast<int>(emb.faces.size());
        std::vector<DartId> face;
        DartId d = start;
        do {
            emb.face_of_dart[d] = id;
            face.push_back(d);
            const DartId back = twin(d);
            const auto& rot = rotation[dart_tail(g, back)];
            const int p = pos[back];
            d = rot[static_cast<std::size_t>((p + static_cast<int>(rot.size()) - 1) % static_cast<int>(rot.size()))];
        } while (d != start);
        emb.faces.push_back(std::move(face));
    }
    if (darts == 0) emb.faces.emplace_back();
    emb.rotation = std::move(rotation);
    if (outer) {
        if (*outer < 0 || *outer >= emb.face_count()) throw MalformedRotationError("outer face id out of range");
        emb.outer_face = *outer;
    } else if (darts > 0) {
        const Edge& e0 = g.edge(0);
        emb.outer_face = emb.face_of_dart[e0.u <= e0.v ? 0 : 1];
    }
    return emb;
}

/// Builds an embedding from a rotation system and checks it has genus 0
/// (Euler's formula n - m + f = 2 on a connected graph).
inline PlaneEmbedding make_embedding(const Multigraph& g, std::vector<std::vector<DartId>> rotation,
                                     std::optional<int> outer = std::nullopt) {
    if (!is_connected(g)) throw std::invalid_argument("plane embeddings are only built for connected graphs");
    PlaneEmbedding emb = faces_of(g, std::move(rotation), outer);
    if (g.vertex_count() - g.edge_count() + emb.face_count() != 2)
        throw MalformedRotationError("rotation system does not have genus 0");
    return emb;
}

/// Computes a plane embedding of a connected multigraph. Planarity and the
/// embedding of the underlying simple graph come from the Boyer-Myrvold
/// algorithm; parallel edges are then nested next to their representative and
/// loops are placed as consecutive dart pairs.
inline PlaneEmbedding embed(const Multigraph& g) {
    const int n = g.vertex_count();
    if (!is_connected(g)) throw std::invalid_argument("embed requires a connected graph");

    std::map<std::pair<VertexId, VertexId>, int> group_of_pair;
    std::vector<std::vector<EdgeId>> groups;
    std::vector<std::pair<VertexId, VertexId>> group_ends;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop()) continue;
        auto key = std::minmax(ed.u, ed.v);
        auto [it, fresh] = group_of_pair.try_emplace({key.first, key.second}, static_cast<int>(groups.size()));
        if (fresh) {
            groups.emplace_back();
            group_ends.emplace_back(key.first, key.second);
        }
        groups[it->second].push_back(e);
    }

    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                             boost::property<boost::vertex_index_t, int>,
                                             boost::property<boost::edge_index_t, int>>;
    using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;
    BoostGraph bg(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < groups.size(); ++k)
        boost::add_edge(group_ends[k].first, group_ends[k].second, static_cast<int>(k), bg);

    std::vector<std::vector<BoostEdge>> boost_rotation(static_cast<std::size_t>(n));
    const bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg,
        boost::boyer_myrvold_params::embedding = boost_rotation.data());
    if (!planar) throw NonPlanarError("graph is not planar");

    auto edge_index = boost::get(boost::edge_index, bg);
    std::vector<std::vector<DartId>> rotation(static_cast<std::size_t>(n));
    for (VertexId x = 0; x < n; ++x) {
        for (const BoostEdge& be : boost_rotation[x]) {
            const auto& group = groups[static_cast<std::size_t>(boost::get(edge_index, be))];
            const bool low_end = group_ends[static_cast<std::size_t>(boost::get(edge_index, be))].first == x;
            if (low_end) {
                for (EdgeId e : group) rotation[x].push_back(dart_from(g, e, x));
            } else {
                for (auto it = group.rbegin(); it != group.rend(); ++it) rotation[x].push_back(dart_from(g, *it, x));
            }
        }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (!ed.is_loop()) continue;
        rotation[ed.u].push_back(2 * e);
        rotation[ed.u].push_back(2 * e + 1);
    }
    return make_embedding(g, std::move(rotation));
}

/// Rotation restricted to an induced subgraph, with dart ids renumbered.
inline PlaneEmbedding restrict_embedding(const Multigraph& g, const PlaneEmbedding& emb, const InducedSubgraph& sub) {
    std::vector<std::vector<DartId>> rotation(static_cast<std::size_t>(sub.graph.vertex_count()));
    for (VertexId nv = 0; nv < sub.graph.vertex_count(); ++nv) {
        const VertexId old = sub.vertex_origin[nv];
        for (DartId d : emb.rotation[old]) {
            const EdgeId ne = sub.edge_image[dart_edge(d)];
            if (ne == -1) continue;
            rotation[nv].push_back(2 * ne + (d & 1));
        }
    }
    (void)g;
    return make_embedding(sub.graph, std::move(rotation));
}

/// The dual multigraph. Dual vertices are face ids; the dual of primal edge e
/// has the same id e and joins the faces on either side of e (a loop when e
/// is a bridge).
struct DualGraph {
    Multigraph graph;
    std::vector<EdgeId> dual_of;   ///< primal edge -> dual edge
    std::vector<EdgeId> primal_of; ///< dual edge -> primal edge
};

inline DualGraph dual(const Multigraph& g, const PlaneEmbedding& emb) {
    DualGraph out;
    out.graph = Multigraph(emb.face_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        out.graph.add_edge(emb.face_of_dart[2 * e], emb.face_of_dart[2 * e + 1]);
        out.dual_of.push_back(e);
        out.primal_of.push_back(e);
    }
    return out;
}

/// Number of path edges whose dual lies on the dual cycle, mod 2.
inline int crossing_parity(const std::vector<EdgeId>& path_edges, const std::vector<EdgeId>& dual_cycle) {
    int count = 0;
    for (EdgeId e : path_edges)
        if (std::find(dual_cycle.begin(), dual_cycle.end(), e) != dual_cycle.end()) ++count;
    return count & 1;
}

struct FaceCover {
    std::vector<int> faces;                    ///< chosen face ids, ascending
    std::map<VertexId, int> covered;           ///< terminal -> lowest chosen face covering it
};

namespace detail {

struct RedBlueSearch {
    std::vector<std::uint64_t> red_mask; // blue vertices dominated by each red vertex
    std::vector<int> red_id;
    std::uint64_t all = 0;
    std::unordered_map<std::uint64_t, int> failed_with_budget;
    std::vector<int> chosen;

    bool run(std::uint64_t covered, int budget) {
        if (covered == all) return true;
        if (budget == 0) return false;
        if (auto it = failed_with_budget.find(covered); it != failed_with_budget.end() && it->second >= budget)
            return false;
        // branch on the uncovered blue vertex with fewest red neighbours
        int best_blue = -1;
        int best_count = 1 << 30;
        for (int b = 0; b < 64; ++b) {
            const std::uint64_t bit = 1ull << b;
            if (!(all & bit) || (covered & bit)) continue;
            int count = 0;
            for (std::uint64_t m : red_mask)
                if (m & bit) ++count;
            if (count < best_count) {
                best_count = count;
                best_blue = b;
            }
        }
        if (best_count == 0) return false;
        const std::uint64_t bit = 1ull << best_blue;
        for (std::size_t r = 0; r < red_mask.size(); ++r) {
            if (!(red_mask[r] & bit)) continue;
            chosen.push_back(red_id[r]);
            if (run(covered | red_mask[r], budget - 1)) return true;
            chosen.pop_back();
        }
        auto& slot = failed_with_budget[covered];
        slot = std::max(slot, budget);
        return false;
    }
};

} // namespace detail

/// Face cover of `terminals` using at most `r` faces, found as a Red-Blue
/// Dominating Set (red = faces, blue = terminals) by exact branching.
inline std::optional<FaceCover> face_cover(const Multigraph& g, const PlaneEmbedding& emb,
                                           std::vector<VertexId> terminals, int r) {
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    if (terminals.size() > 64) throw std::invalid_argument("face_cover supports at most 64 terminals");
    if (terminals.empty()) return FaceCover{};
    if (r <= 0) return std::nullopt;

    std::vector<int> index_of(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < terminals.size(); ++i) index_of[terminals[i]] = static_cast<int>(i);
    std::vector<std::uint64_t> mask(static_cast<std::size_t>(emb.face_count()), 0);
    for (int f = 0; f < emb.face_count(); ++f)
        for (VertexId v : frontier_vertices(g, emb, f))
            if (index_of[v] != -1) mask[f] |= 1ull << index_of[v];
    if (g.edge_count() == 0)
        for (std::size_t i = 0; i < terminals.size(); ++i) mask[0] |= 1ull << i;

    detail::RedBlueSearch search;
    search.all = terminals.size() == 64 ? ~0ull : (1ull << terminals.size()) - 1;
    // dominance: keep a face only if no other face covers a strict superset
    // (or the same set with a lower id)
    for (int f = 0; f < emb.face_count(); ++f) {
        if (mask[f] == 0) continue;
        bool dominated = false;
        for (int h = 0; h < emb.face_count() && !dominated; ++h) {
            if (h == f || (mask[f] & ~mask[h]) != 0) continue;
            dominated = mask[h] != mask[f] || h < f;
        }
        if (dominated) continue;
        search.red_mask.push_back(mask[f]);
        search.red_id.push_back(f);
    }
    if (!search.run(0, r)) return std::nullopt;

    FaceCover cover;
    cover.faces = search.chosen;
    std::sort(cover.faces.begin(), cover.faces.end());
    for (std::size_t i = 0; i < terminals.size(); ++i)
        for (int f : cover.faces)
            if (mask[f] & (1ull << i)) {
                cover.covered.emplace(terminals[i], f);
                break;
            }
    return cover;
}

/// Smallest face cover of `terminals`.
inline FaceCover minimum_face_cover(const Multigraph& g, const PlaneEmbedding& emb, const std::vector<VertexId>& terminals) {
    for (int r = 0;; ++r)
        if (auto cover = face_cover(g, emb, terminals, r)) return *cover;
}

} // namespace tscu
