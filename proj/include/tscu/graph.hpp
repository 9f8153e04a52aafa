#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tscu {

using VertexId = int;
using EdgeId = int;

struct Edge {
    VertexId u;
    VertexId v;

    VertexId other(VertexId x) const { return x == u ? v : u; }
    bool is_loop() const { return u == v; }
};

/// Undirected multigraph with dense, stable edge ids. Parallel edges and
/// self-loops are allowed. A self-loop appears twice in its vertex's incidence
/// list, once per edge-end.
class Multigraph {
public:
    Multigraph() = default;
    explicit Multigraph(int n) : incident_(static_cast<std::size_t>(n)) {}

    /// Builds a graph whose edge ids follow the order of `endpoints`.
    static Multigraph build(int n, const std::vector<std::pair<VertexId, VertexId>>& endpoints) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        Multigraph g(n);
        for (auto [u, v] : endpoints) g.add_edge(u, v);
        return g;
    }

    EdgeId add_edge(VertexId u, VertexId v) {
        check_vertex(u);
        check_vertex(v);
        const EdgeId id = static_cast<EdgeId>(edges_.size());
        edges_.push_back({u, v});
        incident_[u].push_back(id);
        incident_[v].push_back(id);
        return id;
    }

    VertexId add_vertex() {
        incident_.emplace_back();
        return static_cast<VertexId>(incident_.size() - 1);
    }

    int vertex_count() const { return static_cast<int>(incident_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    const std::vector<Edge>& edges() const { return edges_; }
    /// Incident edge ids of `v` in ascending id order.
    const std::vector<EdgeId>& incident(VertexId v) const { return incident_.at(static_cast<std::size_t>(v)); }

    bool has_vertex(VertexId v) const { return v >= 0 && v < vertex_count(); }

private:
    void check_vertex(VertexId v) const {
        if (!has_vertex(v))
            throw std::out_of_range("vertex " + std::to_string(v) + " out of range [0, " +
                                    std::to_string(vertex_count()) + ")");
    }

    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> incident_;
};

/// Simple path: vertices[i] and vertices[i+1] are joined by edges[i].
struct Path {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
    int length() const { return static_cast<int>(edges.size()); }
};

/// Bipartition (A, B) with its cut-set.
struct Cut {
    std::vector<VertexId> side_a;
    std::vector<VertexId> side_b;
    std::vector<EdgeId> edges;

    int size() const { return static_cast<int>(edges.size()); }
};

/// Membership mask over the vertices of `g`.
inline std::vector<char> vertex_mask(int n, const std::vector<VertexId>& set) {
    std::vector<char> mask(static_cast<std::size_t>(n), 0);
    for (VertexId v : set) mask.at(static_cast<std::size_t>(v)) = 1;
    return mask;
}

/// Edges with exactly one endpoint in A, ascending.
inline std::vector<EdgeId> cut_set(const Multigraph& g, const std::vector<VertexId>& side_a) {
    const auto in_a = vertex_mask(g.vertex_count(), side_a);
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (in_a[ed.u] != in_a[ed.v]) out.push_back(e);
    }
    return out;
}

/// Component label per vertex, ignoring edges flagged in `removed` and
/// vertices flagged in `dead` (dead vertices get label -1). Labels are
/// assigned in order of the lowest vertex of each component.
inline std::vector<int> component_labels(const Multigraph& g, const std::vector<char>& removed = {},
                                         const std::vector<char>& dead = {}) {
    const int n = g.vertex_count();
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    int next = 0;
    std::vector<VertexId> stack;
    for (VertexId root = 0; root < n; ++root) {
        if (label[root] != -1 || (!dead.empty() && dead[root])) continue;
        label[root] = next;
        stack.push_back(root);
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            for (EdgeId e : g.incident(x)) {
                if (!removed.empty() && removed[e]) continue;
                VertexId y = g.edge(e).other(x);
                if (label[y] != -1 || (!dead.empty() && dead[y])) continue;
                label[y] = next;
                stack.push_back(y);
            }
        }
        ++next;
    }
    return label;
}

/// Vertex partition into connected components, each sorted, ordered by lowest vertex.
inline std::vector<std::vector<VertexId>> connected_components(const Multigraph& g) {
    const auto label = component_labels(g);
    std::vector<std::vector<VertexId>> comps;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (label[v] >= static_cast<int>(comps.size())) comps.resize(static_cast<std::size_t>(label[v]) + 1);
        comps[label[v]].push_back(v);
    }
    return comps;
}

inline bool is_connected(const Multigraph& g) { return connected_components(g).size() <= 1; }

/// Articulation vertices of a connected graph (iterative low-point DFS).
inline std::vector<VertexId> cut_vertices(const Multigraph& g) {
    const int n = g.vertex_count();
    if (n == 0) return {};
    if (!is_connected(g)) throw std::invalid_argument("cut_vertices requires a connected graph");
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<char> is_cut(static_cast<std::size_t>(n), 0);
    struct Frame {
        VertexId v;
        EdgeId parent_edge;
        std::size_t next;
    };
    std::vector<Frame> stack;
    int timer = 0;
    int root_children = 0;
    disc[0] = low[0] = timer++;
    stack.push_back({0, -1, 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& inc = g.incident(f.v);
        if (f.next < inc.size()) {
            EdgeId e = inc[f.next++];
            if (e == f.parent_edge) continue;
            VertexId w = g.edge(e).other(f.v);
            if (disc[w] == -1) {
                disc[w] = low[w] = timer++;
                if (f.v == 0) ++root_children;
                stack.push_back({w, e, 0});
            } else {
                low[f.v] = std::min(low[f.v], disc[w]);
            }
        } else {
            const VertexId child = f.v;
            stack.pop_back();
            if (stack.empty()) break;
            const VertexId parent = stack.back().v;
            low[parent] = std::min(low[parent], low[child]);
            if (parent != 0 && low[child] >= disc[parent]) is_cut[parent] = 1;
        }
    }
    if (root_children > 1) is_cut[0] = 1;
    std::vector<VertexId> out;
    for (VertexId v = 0; v < n; ++v)
        if (is_cut[v]) out.push_back(v);
    return out;
}

/// Result of turning a multigraph into a simple graph: loops are dropped and
/// every remaining edge uv becomes u - x_e - v. The half incident to the
/// lower-numbered endpoint carries the original label.
struct SubdivisionMap {
    Multigraph simple;
    /// original edge -> simple edge carrying its label, or -1 for dropped loops
    std::vector<EdgeId> label_carrier;
    /// original edge -> subdivision vertex x_e, or -1 for dropped loops
    std::vector<VertexId> midpoint;
    /// simple edge -> original edge
    std::vector<EdgeId> origin;
    int length_factor = 2;
};

inline SubdivisionMap subdivide_to_simple(const Multigraph& g) {
    SubdivisionMap out;
    out.simple = Multigraph(g.vertex_count());
    out.label_carrier.assign(static_cast<std::size_t>(g.edge_count()), -1);
    out.midpoint.assign(static_cast<std::size_t>(g.edge_count()), -1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop()) continue;
        const VertexId lo = std::min(ed.u, ed.v);
        const VertexId hi = std::max(ed.u, ed.v);
        const VertexId x = out.simple.add_vertex();
        out.midpoint[e] = x;
        out.label_carrier[e] = out.simple.add_edge(lo, x);
        out.simple.add_edge(x, hi);
        out.origin.push_back(e);
        out.origin.push_back(e);
    }
    return out;
}

/// Inclusion-minimal tree spanning `required`: BFS from its lowest vertex
/// (neighbors scanned by ascending edge id), then non-required leaves are
/// stripped until none remain. Returns the tree's edge ids, ascending.
inline std::vector<EdgeId> spanning_tree_pruned(const Multigraph& g, const std::vector<VertexId>& required) {
    if (required.empty()) throw std::invalid_argument("spanning_tree_pruned needs a nonempty vertex set");
    const int n = g.vertex_count();
    const auto need = vertex_mask(n, required);
    const VertexId root = *std::min_element(required.begin(), required.end());

    std::vector<EdgeId> parent_edge(static_cast<std::size_t>(n), -1);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<VertexId> bfs;
    seen[root] = 1;
    bfs.push(root);
    while (!bfs.empty()) {
        VertexId x = bfs.front();
        bfs.pop();
        for (EdgeId e : g.incident(x)) {
            VertexId y = g.edge(e).other(x);
            if (seen[y]) continue;
            seen[y] = 1;
            parent_edge[y] = e;
            bfs.push(y);
        }
    }
    for (VertexId r : required)
        if (!seen[r]) throw std::invalid_argument("spanning_tree_pruned: required vertices span several components");

    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
    for (VertexId v = 0; v < n; ++v) {
        if (!seen[v]) continue;
        in_tree[v] = 1;
        if (parent_edge[v] != -1) {
            ++degree[v];
            ++degree[g.edge(parent_edge[v]).other(v)];
        }
    }
    std::vector<VertexId> leaves;
    for (VertexId v = 0; v < n; ++v)
        if (in_tree[v] && degree[v] <= 1 && !need[v]) leaves.push_back(v);
    // Children always precede the root in removal since the root is required.
    std::vector<char> dropped(static_cast<std::size_t>(n), 0);
    while (!leaves.empty()) {
        VertexId v = leaves.back();
        leaves.pop_back();
        if (dropped[v]) continue;
        dropped[v] = 1;
        if (parent_edge[v] == -1) continue;
        VertexId p = g.edge(parent_edge[v]).other(v);
        if (--degree[p] <= 1 && !need[p] && !dropped[p]) leaves.push_back(p);
    }
    std::vector<EdgeId> tree;
    for (VertexId v = 0; v < n; ++v)
        if (in_tree[v] && !dropped[v] && parent_edge[v] != -1) tree.push_back(parent_edge[v]);
    std::sort(tree.begin(), tree.end());
    return tree;
}

/// Edges of the unique a-b path in a forest given by edge ids, ascending.
inline std::vector<EdgeId> tree_path(const Multigraph& g, const std::vector<EdgeId>& tree, VertexId a, VertexId b) {
    if (a == b) {
        if (!g.has_vertex(a)) throw std::invalid_argument("tree_path: vertex not in tree");
        return {};
    }
    const int n = g.vertex_count();
    std::vector<std::vector<EdgeId>> adj(static_cast<std::size_t>(n));
    for (EdgeId e : tree) {
        adj[g.edge(e).u].push_back(e);
        adj[g.edge(e).v].push_back(e);
    }
    if (!g.has_vertex(a) || !g.has_vertex(b) || adj[a].empty() || adj[b].empty())
        throw std::invalid_argument("tree_path: vertex not in tree");
    std::vector<EdgeId> via(static_cast<std::size_t>(n), -1);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<VertexId> stack{a};
    seen[a] = 1;
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (EdgeId e : adj[x]) {
            VertexId y = g.edge(e).other(x);
            if (seen[y]) continue;
            seen[y] = 1;
            via[y] = e;
            stack.push_back(y);
        }
    }
    if (!seen[b]) throw std::invalid_argument("tree_path: vertices lie in different trees");
    std::vector<EdgeId> path;
    for (VertexId x = b; x != a; x = g.edge(via[x]).other(x)) path.push_back(via[x]);
    std::sort(path.begin(), path.end());
    return path;
}

/// Subgraph induced by `keep` (flag per vertex). Vertices and edges are
/// renumbered densely preserving relative order; loops are kept.
struct InducedSubgraph {
    Multigraph graph;
    std::vector<VertexId> vertex_origin; ///< new vertex -> old vertex
    std::vector<EdgeId> edge_origin;     ///< new edge -> old edge
    std::vector<VertexId> vertex_image;  ///< old vertex -> new vertex or -1
    std::vector<EdgeId> edge_image;      ///< old edge -> new edge or -1
};

inline InducedSubgraph induced_subgraph(const Multigraph& g, const std::vector<char>& keep,
                                        const std::vector<char>& drop_edges = {}) {
    InducedSubgraph out;
    out.vertex_image.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    out.edge_image.assign(static_cast<std::size_t>(g.edge_count()), -1);
    int n = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!keep[v]) continue;
        out.vertex_image[v] = n++;
        out.vertex_origin.push_back(v);
    }
    out.graph = Multigraph(n);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!drop_edges.empty() && drop_edges[e]) continue;
        const Edge& ed = g.edge(e);
        if (!keep[ed.u] || !keep[ed.v]) continue;
        out.edge_image[e] = out.graph.add_edge(out.vertex_image[ed.u], out.vertex_image[ed.v]);
        out.edge_origin.push_back(e);
    }
    return out;
}

} // namespace tscu
