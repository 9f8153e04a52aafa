#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "graph.hpp"

namespace tscu {

/// A vector of Z_2^d, bit i holding coordinate i + 1.
using GroupVec = std::uint64_t;

/// Xor Constrained Shortest Path / Cycle instance. For paths, a solution is
/// an s-t path whose label sum equals `target` and which meets every X set in
/// at most one vertex. Cycle queries ignore s and t.
struct XcspInstance {
    Multigraph graph;
    VertexId s = 0;
    VertexId t = 0;
    int dimension = 0;
    std::vector<GroupVec> labels; ///< per edge id
    GroupVec target = 0;
    std::vector<std::vector<VertexId>> x_sets;
};

struct SolverConfig {
    int repetitions = 20;
    std::uint64_t seed = 0;
    /// Longest solution length considered, in edges of the input graph.
    std::optional<int> max_length;
    /// Upper bound on d + p; the DP holds n * 2^(d+p) field elements per layer.
    int bit_budget = 30;
};

using XcspPath = Path;

struct XcspCycle {
    std::vector<VertexId> vertices; ///< cyclic order, first vertex not repeated
    std::vector<EdgeId> edges;      ///< edges[i] joins vertices[i] and vertices[i+1 mod len]
    int length() const { return static_cast<int>(edges.size()); }
};

// ----------------------------------------------------------------------------
// Randomness

/// splitmix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed of the random stream identified by (seed, a, b, c). Every evaluation
/// draws from its own stream so runs are reproducible and streams do not
/// depend on how many values earlier evaluations consumed.
inline constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    return mix64(mix64(mix64(mix64(seed) ^ a) ^ b) ^ c);
}

/// Uniform assignment of field values to `m` edge variables.
inline std::vector<FieldElem> random_assignment(const Field& field, int m, std::uint64_t stream) {
    std::mt19937_64 gen(stream);
    std::vector<FieldElem> out(static_cast<std::size_t>(m));
    for (auto& x : out) x = field.from_bits(gen());
    return out;
}

// ----------------------------------------------------------------------------
// Walk polynomial evaluation

/// Dynamic program over states (vertex u, length l, label sum y, visited
/// X-set indices T). The value of a state is the sum, over s-u walks of
/// length l with label sum y that meet exactly the X sets in T (each once),
/// of the product of the edge variables along the walk. Layers are rolled,
/// so memory is two layers of n * 2^(d+p) values.
class WalkPolynomial {
public:
    /// `graph` must be simple. `labels` is indexed by edge id.
    WalkPolynomial(const Multigraph& graph, VertexId s, VertexId t, int dimension, std::vector<GroupVec> labels,
                   GroupVec target, const std::vector<std::vector<VertexId>>& x_sets, Field field)
        : graph_(&graph), s_(s), t_(t), dimension_(dimension), target_(target), field_(field),
          labels_(std::move(labels)) {
        const int p = static_cast<int>(x_sets.size());
        if (dimension < 0 || p < 0 || dimension + p > 62) throw std::invalid_argument("d + p too large");
        if (static_cast<int>(labels_.size()) != graph.edge_count()) throw std::invalid_argument("label count mismatch");
        subset_bits_ = p;
        states_per_vertex_ = std::size_t{1} << (dimension + p);
        member_.assign(static_cast<std::size_t>(graph.vertex_count()), 0);
        for (int i = 0; i < p; ++i)
            for (VertexId v : x_sets[i]) member_.at(static_cast<std::size_t>(v)) |= GroupVec{1} << i;
    }

    const Field& field() const { return field_; }
    std::size_t states_per_layer() const { return states_per_vertex_ * static_cast<std::size_t>(graph_->vertex_count()); }
    /// States filled by the most recent evaluation, counting layer 0.
    std::uint64_t states_computed() const { return states_computed_; }

    /// Values of f(C_l) for l = 0..max_len (index l). Edges with
    /// `active[e] == 0` are treated as absent. If `stop_at_nonzero`, the
    /// sweep ends at the first l >= min_len with a nonzero value.
    std::vector<FieldElem> sweep(std::span<const FieldElem> assignment, int max_len, const std::vector<char>* active = nullptr,
                                 bool stop_at_nonzero = false, int min_len = 1) {
        const int n = graph_->vertex_count();
        const std::size_t width = states_per_vertex_;
        const GroupVec ymask = (GroupVec{1} << dimension_) - 1;
        cur_.assign(states_per_layer(), 0);
        next_.assign(states_per_layer(), 0);
        cur_[static_cast<std::size_t>(s_) * width + (member_[s_] << dimension_)] = 1;
        states_computed_ = states_per_layer();

        std::vector<FieldElem> out{answer(cur_)};
        for (int l = 1; l <= max_len; ++l) {
            std::fill(next_.begin(), next_.end(), 0);
            for (VertexId u = 0; u < n; ++u) {
                std::uint64_t* dst = next_.data() + static_cast<std::size_t>(u) * width;
                const GroupVec tu = member_[u];
                for (EdgeId e : graph_->incident(u)) {
                    if (active && !(*active)[e]) continue;
                    const FieldElem val = assignment[e];
                    if (val.is_zero()) continue;
                    const VertexId w = graph_->edge(e).other(u);
                    const std::uint64_t* src = cur_.data() + static_cast<std::size_t>(w) * width;
                    const GroupVec g = labels_[e];
                    for (GroupVec subset = 0; subset < (GroupVec{1} << subset_bits_); ++subset) {
                        if ((subset & tu) != tu) continue;
                        const std::size_t to = subset << dimension_;
                        const std::size_t from = (subset & ~tu) << dimension_;
                        for (GroupVec y = 0; y <= ymask; ++y) {
                            const std::uint64_t prev = src[from + (y ^ g)];
                            if (prev != 0) dst[to + y] ^= field_.mul(val, FieldElem{prev}).bits;
                        }
                    }
                }
            }
            cur_.swap(next_);
            states_computed_ += states_per_layer();
            out.push_back(answer(cur_));
            if (stop_at_nonzero && l >= min_len && !out.back().is_zero()) break;
        }
        return out;
    }

    /// Length of the first nonzero evaluation in [min_len, max_len], if any.
    std::optional<int> first_nonzero(std::span<const FieldElem> assignment, int max_len, const std::vector<char>* active = nullptr,
                                     int min_len = 1) {
        if (max_len < min_len) return std::nullopt;
        auto values = sweep(assignment, max_len, active, true, min_len);
        for (int l = min_len; l < static_cast<int>(values.size()); ++l)
            if (!values[l].is_zero()) return l;
        return std::nullopt;
    }

private:
    FieldElem answer(const std::vector<std::uint64_t>& layer) const {
        std::uint64_t acc = 0;
        const std::size_t base = static_cast<std::size_t>(t_) * states_per_vertex_;
        for (GroupVec subset = 0; subset < (GroupVec{1} << subset_bits_); ++subset)
            acc ^= layer[base + (subset << dimension_) + target_];
        return {acc};
    }

    const Multigraph* graph_;
    VertexId s_;
    VertexId t_;
    int dimension_;
    GroupVec target_;
    Field field_;
    std::vector<GroupVec> labels_;
    int subset_bits_ = 0;
    std::size_t states_per_vertex_ = 1;
    std::vector<GroupVec> member_;
    std::vector<std::uint64_t> cur_;
    std::vector<std::uint64_t> next_;
    std::uint64_t states_computed_ = 0;
};

inline bool is_simple(const Multigraph& g) {
    std::vector<VertexId> seen_at(static_cast<std::size_t>(g.vertex_count()), -1);
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        for (EdgeId e : g.incident(u)) {
            const VertexId w = g.edge(e).other(u);
            if (w == u || seen_at[w] == u) return false;
            seen_at[w] = u;
        }
    }
    return true;
}

/// f(C_l) under `assignment`, summed over all T: the sum of walk monomials of
/// feasible s-t walks of length exactly l. `inst.graph` must be simple.
inline FieldElem evaluate_polynomial(const XcspInstance& inst, int length, std::span<const FieldElem> assignment,
                                     const Field& field) {
    if (length < 1) throw std::invalid_argument("evaluate_polynomial needs length >= 1");
    if (inst.s == inst.t) throw std::invalid_argument("evaluate_polynomial needs s != t");
    if (!is_simple(inst.graph)) throw std::invalid_argument("evaluate_polynomial needs a simple graph");
    WalkPolynomial poly(inst.graph, inst.s, inst.t, inst.dimension, inst.labels, inst.target, inst.x_sets, field);
    return poly.sweep(assignment, length).back();
}

/// Field used for a simple graph with `n` vertices.
inline Field field_for_graph(int n) { return Field::for_size(static_cast<std::uint64_t>(std::max(n, 1))); }

// ----------------------------------------------------------------------------
// Verification

inline GroupVec label_sum(const XcspInstance& inst, const std::vector<EdgeId>& edges) {
    GroupVec acc = 0;
    for (EdgeId e : edges) acc ^= inst.labels[e];
    return acc;
}

inline bool respects_x_sets(const XcspInstance& inst, const std::vector<VertexId>& vertices) {
    for (const auto& x : inst.x_sets) {
        int hits = 0;
        for (VertexId v : vertices)
            if (std::find(x.begin(), x.end(), v) != x.end()) ++hits;
        if (hits > 1) return false;
    }
    return true;
}

/// Whether `path` is a simple s-t path of `inst` meeting both constraints.
inline bool is_feasible_path(const XcspInstance& inst, const XcspPath& path) {
    const auto& g = inst.graph;
    if (path.vertices.size() != path.edges.size() + 1) return false;
    if (path.vertices.front() != inst.s || path.vertices.back() != inst.t) return false;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId v : path.vertices) {
        if (!g.has_vertex(v) || seen[v]) return false;
        seen[v] = 1;
    }
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
        const EdgeId e = path.edges[i];
        if (e < 0 || e >= g.edge_count()) return false;
        const Edge& ed = g.edge(e);
        const VertexId a = path.vertices[i], b = path.vertices[i + 1];
        if (!((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a))) return false;
    }
    return label_sum(inst, path.edges) == inst.target && respects_x_sets(inst, path.vertices);
}

/// Whether `cycle` is a simple cycle (length >= 2, distinct edges) meeting both constraints.
inline bool is_feasible_cycle(const XcspInstance& inst, const XcspCycle& cycle) {
    const auto& g = inst.graph;
    const std::size_t len = cycle.edges.size();
    if (len < 2 || cycle.vertices.size() != len) return false;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId v : cycle.vertices) {
        if (!g.has_vertex(v) || seen[v]) return false;
        seen[v] = 1;
    }
    std::vector<EdgeId> sorted = cycle.edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (std::size_t i = 0; i < len; ++i) {
        const EdgeId e = cycle.edges[i];
        if (e < 0 || e >= g.edge_count()) return false;
        const Edge& ed = g.edge(e);
        const VertexId a = cycle.vertices[i], b = cycle.vertices[(i + 1) % len];
        if (!((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a))) return false;
    }
    return label_sum(inst, cycle.edges) == inst.target && respects_x_sets(inst, cycle.vertices);
}

// ----------------------------------------------------------------------------
// Solvers

namespace detail {

inline void validate_instance(const XcspInstance& inst, const SolverConfig& cfg) {
    const auto& g = inst.graph;
    if (static_cast<int>(inst.labels.size()) != g.edge_count()) throw std::invalid_argument("every edge needs a label");
    if (inst.dimension < 0 || inst.dimension > 62) throw std::invalid_argument("dimension out of range");
    const GroupVec dmask = inst.dimension == 0 ? 0 : (~GroupVec{0} >> (64 - inst.dimension));
    for (GroupVec l : inst.labels)
        if (l & ~dmask) throw std::invalid_argument("label wider than dimension");
    if (inst.target & ~dmask) throw std::invalid_argument("target wider than dimension");
    if (inst.dimension + static_cast<int>(inst.x_sets.size()) > cfg.bit_budget)
        throw std::invalid_argument("d + p = " + std::to_string(inst.dimension + inst.x_sets.size()) +
                                    " exceeds the bit budget " + std::to_string(cfg.bit_budget));
    if (cfg.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    for (const auto& x : inst.x_sets)
        for (VertexId v : x)
            if (!g.has_vertex(v)) throw std::invalid_argument("X set names an unknown vertex");
}

inline int ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : static_cast<int>(std::bit_width(x - 1)); }

/// Path search on an already simple graph: Schwartz-Zippel detection of the
/// shortest feasible length, then recovery by deleting every edge whose
/// removal keeps a feasible walk of that length.
class SimplePathSearch {
public:
    SimplePathSearch(const Multigraph& simple, VertexId s, VertexId t, int dimension, std::vector<GroupVec> labels,
                     GroupVec target, const std::vector<std::vector<VertexId>>& x_sets, const SolverConfig& cfg,
                     std::uint64_t tag)
        : graph_(&simple), s_(s), t_(t), cfg_(cfg), tag_(tag),
          poly_(simple, s, t, dimension, std::move(labels), target, x_sets, field_for_graph(simple.vertex_count())) {}

    int default_max_length() const { return graph_->vertex_count() - 1; }

    /// Smallest length in [1, bound] detected by any repetition.
    std::optional<int> detect(int bound) {
        std::optional<int> best;
        for (int rep = 0; rep < cfg_.repetitions; ++rep) {
            const int limit = best ? *best - 1 : bound;
            if (limit < 1) break;
            auto values = random_assignment(poly_.field(), graph_->edge_count(), stream_seed(cfg_.seed, tag_, 0, rep));
            if (auto l = poly_.first_nonzero(values, limit)) best = *l;
        }
        return best;
    }

    /// Recovers the edge sequence of a feasible path of exactly `length`.
    std::optional<std::vector<EdgeId>> recover(int length) {
        const int m = graph_->edge_count();
        const int probes = ceil_log2(static_cast<std::uint64_t>(std::max(m, 1))) + cfg_.repetitions;
        for (int attempt = 0; attempt < 3; ++attempt) {
            std::vector<char> active(static_cast<std::size_t>(m), 1);
            for (EdgeId e = 0; e < m; ++e) {
                active[e] = 0;
                bool still = false;
                for (int r = 0; r < probes && !still; ++r) {
                    auto values = random_assignment(poly_.field(), m,
                                                    stream_seed(cfg_.seed, tag_, 1 + static_cast<std::uint64_t>(attempt),
                                                                (static_cast<std::uint64_t>(e) << 20) | static_cast<std::uint64_t>(r)));
                    still = !poly_.sweep(values, length, &active).back().is_zero();
                }
                if (!still) active[e] = 1;
            }
            if (auto path = walk_active(active, length)) return path;
        }
        return std::nullopt;
    }

private:
    std::optional<std::vector<EdgeId>> walk_active(const std::vector<char>& active, int length) const {
        if (std::count(active.begin(), active.end(), 1) != length) return std::nullopt;
        std::vector<EdgeId> path;
        std::vector<char> used(active.size(), 0);
        VertexId at = s_;
        while (at != t_) {
            EdgeId next = -1;
            for (EdgeId e : graph_->incident(at))
                if (active[e] && !used[e]) {
                    if (next != -1) return std::nullopt;
                    next = e;
                }
            if (next == -1) return std::nullopt;
            used[next] = 1;
            path.push_back(next);
            at = graph_->edge(next).other(at);
        }
        if (static_cast<int>(path.size()) != length) return std::nullopt;
        return path;
    }

    const Multigraph* graph_;
    VertexId s_;
    VertexId t_;
    SolverConfig cfg_;
    std::uint64_t tag_;
    WalkPolynomial poly_;
};

/// Subdivided copy of a multigraph with labels moved onto the carrier halves.
struct SimpleCopy {
    SubdivisionMap map;
    std::vector<GroupVec> labels;
};

inline SimpleCopy simple_copy(const Multigraph& g, const std::vector<GroupVec>& labels) {
    SimpleCopy out{subdivide_to_simple(g), {}};
    out.labels.assign(static_cast<std::size_t>(out.map.simple.edge_count()), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (out.map.label_carrier[e] != -1) out.labels[out.map.label_carrier[e]] = labels[e];
    return out;
}

/// Original path behind a path of the subdivided graph.
inline XcspPath lift_path(const Multigraph& g, const SubdivisionMap& map, VertexId s, const std::vector<EdgeId>& simple_edges) {
    XcspPath path;
    path.vertices.push_back(s);
    for (std::size_t i = 0; i < simple_edges.size(); i += 2) {
        const EdgeId e = map.origin[simple_edges[i]];
        path.edges.push_back(e);
        path.vertices.push_back(g.edge(e).other(path.vertices.back()));
    }
    return path;
}

} // namespace detail

/// Shortest xor-constrained s-t path (one-sided error: a returned path is
/// always feasible; a miss happens with probability at most 2^-repetitions
/// per length, and reported lengths are never below the optimum).
inline std::optional<XcspPath> shortest_xcsp_path(const XcspInstance& inst, const SolverConfig& cfg = {}) {
    detail::validate_instance(inst, cfg);
    const auto& g = inst.graph;
    if (!g.has_vertex(inst.s) || !g.has_vertex(inst.t)) throw std::invalid_argument("s or t out of range");
    if (inst.s == inst.t) {
        if (inst.target != 0) return std::nullopt;
        return XcspPath{{inst.s}, {}};
    }
    auto copy = detail::simple_copy(g, inst.labels);
    detail::SimplePathSearch search(copy.map.simple, inst.s, inst.t, inst.dimension, copy.labels, inst.target,
                                    inst.x_sets, cfg, /*tag=*/0);
    const int bound = cfg.max_length ? std::min(2 * *cfg.max_length, search.default_max_length()) : search.default_max_length();
    const auto length = search.detect(bound);
    if (!length) return std::nullopt;
    const auto simple_path = search.recover(*length);
    if (!simple_path) return std::nullopt;
    XcspPath path = detail::lift_path(g, copy.map, inst.s, *simple_path);
    if (!is_feasible_path(inst, path)) throw std::logic_error("xcsp path solver produced an infeasible path");
    return path;
}

namespace detail {

/// Path instance rooting cycles at `anchor`: a twin vertex joined to the
/// anchor's neighbours by copies of the chosen anchor edges (carrying the
/// same labels), with earlier anchors and `skipped` edges removed.
struct AnchorGraph {
    Multigraph graph;
    std::vector<GroupVec> labels;
    std::vector<EdgeId> origin; ///< anchor-graph edge -> original edge (twin copies map to the copied edge)
    VertexId twin = -1;
};

inline AnchorGraph anchor_graph(const XcspInstance& inst, VertexId anchor, const std::vector<char>& dead,
                                const std::vector<EdgeId>& twin_edges, const std::vector<char>& skipped) {
    const auto& g = inst.graph;
    AnchorGraph out;
    out.graph = Multigraph(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop() || dead[ed.u] || dead[ed.v] || skipped[e]) continue;
        out.graph.add_edge(ed.u, ed.v);
        out.labels.push_back(inst.labels[e]);
        out.origin.push_back(e);
    }
    out.twin = out.graph.add_vertex();
    for (EdgeId e : twin_edges) {
        out.graph.add_edge(out.twin, g.edge(e).other(anchor));
        out.labels.push_back(inst.labels[e]);
        out.origin.push_back(e);
    }
    return out;
}

} // namespace detail

/// Shortest xor-constrained cycle (length >= 2; loops are not cycles).
///
/// Each vertex v in turn anchors the search, and vertices anchored earlier
/// are removed. A false twin u of v receives copies of v's edges with the
/// same labels, and a shortest u-v path is a shortest cycle through v. When
/// the target is zero the walk u-w-v over an edge and its own copy would be
/// feasible, so the twin instead receives one anchor edge at a time, that
/// edge is removed from the graph, and anchor edges tried earlier are removed.
inline std::optional<XcspCycle> shortest_xcsp_cycle(const XcspInstance& inst, const SolverConfig& cfg = {}) {
    detail::validate_instance(inst, cfg);
    const auto& g = inst.graph;
    const int n = g.vertex_count();

    struct Probe {
        VertexId anchor;
        std::vector<EdgeId> twin_edges;
        std::vector<char> dead;
        std::vector<char> skipped;
        std::uint64_t tag;
    };
    std::optional<Probe> best_probe;
    std::optional<int> best_len; // in subdivided units

    std::vector<char> dead(static_cast<std::size_t>(n), 0);
    std::uint64_t tag = 1;
    for (VertexId v = 0; v < n; ++v) {
        std::vector<EdgeId> anchor_edges;
        for (EdgeId e : g.incident(v)) {
            const Edge& ed = g.edge(e);
            if (!ed.is_loop() && !dead[ed.other(v)]) anchor_edges.push_back(e);
        }

        std::vector<std::vector<EdgeId>> groups;
        if (inst.target != 0) {
            groups.push_back(anchor_edges);
        } else {
            for (EdgeId e : anchor_edges) groups.push_back({e});
        }
        std::vector<char> skipped(static_cast<std::size_t>(g.edge_count()), 0);
        for (const auto& group : groups) {
            if (inst.target == 0) skipped[group.front()] = 1;
            auto anchored = detail::anchor_graph(inst, v, dead, group, skipped);
            auto copy = detail::simple_copy(anchored.graph, anchored.labels);
            detail::SimplePathSearch search(copy.map.simple, anchored.twin, v, inst.dimension, copy.labels,
                                            inst.target, inst.x_sets, cfg, tag++);
            int bound = search.default_max_length();
            if (cfg.max_length) bound = std::min(bound, 2 * *cfg.max_length);
            if (best_len) bound = std::min(bound, *best_len - 1);
            if (bound >= 1) {
                if (auto l = search.detect(bound)) {
                    best_len = *l;
                    best_probe = Probe{v, group, dead, skipped, tag - 1};
                }
            }
        }
        dead[v] = 1;
    }
    if (!best_probe) return std::nullopt;

    auto anchored = detail::anchor_graph(inst, best_probe->anchor, best_probe->dead, best_probe->twin_edges,
                                         best_probe->skipped);
    auto copy = detail::simple_copy(anchored.graph, anchored.labels);
    detail::SimplePathSearch search(copy.map.simple, anchored.twin, best_probe->anchor, inst.dimension, copy.labels,
                                    inst.target, inst.x_sets, cfg, best_probe->tag);
    const auto simple_path = search.recover(*best_len);
    if (!simple_path) return std::nullopt;
    const XcspPath twin_path = detail::lift_path(anchored.graph, copy.map, anchored.twin, *simple_path);

    XcspCycle cycle;
    cycle.vertices.push_back(best_probe->anchor);
    for (std::size_t i = 1; i + 1 < twin_path.vertices.size(); ++i) cycle.vertices.push_back(twin_path.vertices[i]);
    for (EdgeId e : twin_path.edges) cycle.edges.push_back(anchored.origin[e]);
    if (!is_feasible_cycle(inst, cycle)) throw std::logic_error("xcsp cycle solver produced an infeasible cycle");
    return cycle;
}

} // namespace tscu
