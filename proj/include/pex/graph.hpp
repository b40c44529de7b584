#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pex {

using VertexId = int;
using EdgeId = int;

/// Simple undirected graph with a canonical edge ordering.
///
/// Edges are stored as (u, v) pairs with u < v, sorted lexicographically.
/// EdgeId i refers to the i-th edge in that order; every deterministic
/// tie-break in the library uses this ordering.
struct Graph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adjacency;      // sorted neighbor lists
    std::vector<std::vector<int>> incident_edges; // edge ids per vertex, ascending

    Graph() = default;

    Graph(int n, std::vector<std::pair<int, int>> edge_list) : vertex_count(n) {
        if (n < 1) throw std::invalid_argument("graph: vertex set must be nonempty");
        for (auto& [u, v] : edge_list) {
            if (u == v) throw std::invalid_argument("graph: loop at vertex " + std::to_string(u));
            if (u > v) std::swap(u, v);
            if (u < 0 || v >= n) throw std::invalid_argument("graph: edge endpoint out of range");
        }
        std::sort(edge_list.begin(), edge_list.end());
        for (std::size_t i = 1; i < edge_list.size(); ++i)
            if (edge_list[i] == edge_list[i - 1])
                throw std::invalid_argument("graph: parallel edge");
        edges = std::move(edge_list);
        rebuild_derived();
    }

    int edge_count() const { return static_cast<int>(edges.size()); }

    int degree(int v) const { return static_cast<int>(adjacency.at(v).size()); }

    bool has_edge(int u, int v) const { return edge_id(u, v) >= 0; }

    /// Canonical id of edge {u, v}, or -1 if absent.
    int edge_id(int u, int v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
        if (it == edges.end() || *it != std::make_pair(u, v)) return -1;
        return static_cast<int>(it - edges.begin());
    }

    std::pair<int, int> endpoints(int e) const { return edges.at(e); }

    /// The endpoint of edge e distinct from v.
    int other_endpoint(int e, int v) const {
        auto [a, b] = edges.at(e);
        if (v == a) return b;
        if (v == b) return a;
        throw std::invalid_argument("other_endpoint: vertex not on edge");
    }

    bool edges_adjacent(int e, int f) const {
        auto [a, b] = edges.at(e);
        auto [c, d] = edges.at(f);
        return a == c || a == d || b == c || b == d;
    }

    bool operator==(const Graph& o) const {
        return vertex_count == o.vertex_count && edges == o.edges;
    }
    bool operator!=(const Graph& o) const { return !(*this == o); }

private:
    void rebuild_derived() {
        adjacency.assign(vertex_count, {});
        incident_edges.assign(vertex_count, {});
        for (int e = 0; e < edge_count(); ++e) {
            auto [u, v] = edges[e];
            adjacency[u].push_back(v);
            adjacency[v].push_back(u);
            incident_edges[u].push_back(e);
            incident_edges[v].push_back(e);
        }
        for (auto& a : adjacency) std::sort(a.begin(), a.end());
    }
};

// ---------------------------------------------------------------------------
// Family builders. Vertex numbering is documented and deterministic.

/// Path on n vertices 0,1,...,n-1 with edges (i, i+1).
inline Graph build_path(int n) {
    if (n < 1) throw std::invalid_argument("build_path: n must be >= 1");
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
    return Graph(n, std::move(es));
}

/// Cycle on n vertices 0,...,n-1 with edges (i, i+1) and (0, n-1).
inline Graph build_cycle(int n) {
    if (n < 3) throw std::invalid_argument("build_cycle: n must be >= 3");
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
    es.push_back({0, n - 1});
    return Graph(n, std::move(es));
}

/// Star K_{1,n}: center 0, leaves 1..n.
inline Graph build_star(int n) {
    if (n < 1) throw std::invalid_argument("build_star: n must be >= 1");
    std::vector<std::pair<int, int>> es;
    for (int i = 1; i <= n; ++i) es.push_back({0, i});
    return Graph(n + 1, std::move(es));
}

inline Graph build_complete(int n) {
    if (n < 1) throw std::invalid_argument("build_complete: n must be >= 1");
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.push_back({u, v});
    return Graph(n, std::move(es));
}

/// K_{m,n} with parts {0..m-1} and {m..m+n-1}.
inline Graph build_complete_bipartite(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("build_complete_bipartite: parts must be >= 1");
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < m; ++u)
        for (int v = m; v < m + n; ++v) es.push_back({u, v});
    return Graph(m + n, std::move(es));
}

/// Hypercube Q_d: vertices are the integers 0..2^d-1, edges join words at
/// Hamming distance one.
inline Graph build_hypercube(int d) {
    if (d < 0) throw std::invalid_argument("build_hypercube: d must be >= 0");
    if (d > 20) throw std::invalid_argument("build_hypercube: d too large");
    int n = 1 << d;
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v < n; ++v)
        for (int b = 0; b < d; ++b) {
            int w = v ^ (1 << b);
            if (v < w) es.push_back({v, w});
        }
    return Graph(n, std::move(es));
}

/// Tree on n = seq.size() + 2 vertices decoded from a Pruefer sequence.
inline Graph build_tree_from_pruefer(const std::vector<int>& seq) {
    int n = static_cast<int>(seq.size()) + 2;
    for (int s : seq)
        if (s < 0 || s >= n) throw std::invalid_argument("build_tree_from_pruefer: label out of range");
    std::vector<int> deg(n, 1);
    for (int s : seq) ++deg[s];
    std::vector<std::pair<int, int>> es;
    // Repeatedly join the smallest leaf to the next sequence entry.
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) leaves.push(v);
    for (int s : seq) {
        int leaf = leaves.top();
        leaves.pop();
        es.push_back({std::min(leaf, s), std::max(leaf, s)});
        if (--deg[s] == 1) leaves.push(s);
    }
    int a = leaves.top();
    leaves.pop();
    int b = leaves.top();
    es.push_back({std::min(a, b), std::max(a, b)});
    return Graph(n, std::move(es));
}

// ---------------------------------------------------------------------------
// Products.

/// Cartesian product: vertex (u, v) gets id u * |V(h)| + v; (u,v) ~ (u',v')
/// iff equal in one coordinate and adjacent in the other.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
    if (g.vertex_count == 0 || h.vertex_count == 0)
        throw std::invalid_argument("cartesian_product: empty factor");
    int hn = h.vertex_count;
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < g.vertex_count; ++u)
        for (auto [a, b] : h.edges) es.push_back({u * hn + a, u * hn + b});
    for (auto [u, v] : g.edges)
        for (int a = 0; a < hn; ++a) es.push_back({u * hn + a, v * hn + a});
    return Graph(g.vertex_count * hn, std::move(es));
}

/// Canonical split of g x K_2 into two copies of g joined by a perfect
/// matching. Copy 1 occupies vertices 0..n-1, copy 2 occupies n..2n-1, and
/// matching edge i connects i and n+i, so all correspondence maps are O(1).
struct PrismDecomposition {
    enum class EdgeKind { Copy1, Copy2, Matching };

    Graph base;
    Graph product;
    int base_vertex_count = 0;
    // copy_edges[side][base_edge_id] = product edge id of that edge's copy.
    std::vector<int> copy_edges[2];
    // matching_edges[v] = product edge id of the edge {v, n+v}.
    std::vector<int> matching_edges;
    // Per product edge: which part it lies in and the base edge/vertex index.
    std::vector<std::pair<EdgeKind, int>> edge_info;

    int copy_vertex(int base_v, int side) const { return base_v + side * base_vertex_count; }
    int base_vertex(int product_v) const { return product_v % base_vertex_count; }
    int side_of_vertex(int product_v) const { return product_v / base_vertex_count; }

    /// Product edge corresponding to e on the other copy; e must be a copy edge.
    int corresponding_edge(int product_e) const {
        auto [kind, idx] = edge_info.at(product_e);
        if (kind == EdgeKind::Copy1) return copy_edges[1][idx];
        if (kind == EdgeKind::Copy2) return copy_edges[0][idx];
        throw std::invalid_argument("corresponding_edge: matching edge has no correspondent");
    }

    bool is_matching_edge(int product_e) const {
        return edge_info.at(product_e).first == EdgeKind::Matching;
    }

    int side_of_edge(int product_e) const {
        auto kind = edge_info.at(product_e).first;
        if (kind == EdgeKind::Copy1) return 0;
        if (kind == EdgeKind::Copy2) return 1;
        throw std::invalid_argument("side_of_edge: matching edge");
    }

    int base_edge_of(int product_e) const {
        auto [kind, idx] = edge_info.at(product_e);
        if (kind == EdgeKind::Matching)
            throw std::invalid_argument("base_edge_of: matching edge");
        return idx;
    }
};

inline PrismDecomposition prism(const Graph& g) {
    if (g.vertex_count == 0) throw std::invalid_argument("prism: empty base");
    int n = g.vertex_count;
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : g.edges) es.push_back({u, v});
    for (int v = 0; v < n; ++v) es.push_back({v, v + n});
    for (auto [u, v] : g.edges) es.push_back({u + n, v + n});

    PrismDecomposition pd;
    pd.base = g;
    pd.base_vertex_count = n;
    pd.product = Graph(2 * n, std::move(es));
    pd.copy_edges[0].assign(g.edge_count(), -1);
    pd.copy_edges[1].assign(g.edge_count(), -1);
    pd.matching_edges.assign(n, -1);
    pd.edge_info.resize(pd.product.edge_count());
    for (int e = 0; e < pd.product.edge_count(); ++e) {
        auto [u, v] = pd.product.edges[e];
        if (v < n) {
            int idx = g.edge_id(u, v);
            pd.copy_edges[0][idx] = e;
            pd.edge_info[e] = {PrismDecomposition::EdgeKind::Copy1, idx};
        } else if (u >= n) {
            int idx = g.edge_id(u - n, v - n);
            pd.copy_edges[1][idx] = e;
            pd.edge_info[e] = {PrismDecomposition::EdgeKind::Copy2, idx};
        } else {
            pd.matching_edges[u] = e;
            pd.edge_info[e] = {PrismDecomposition::EdgeKind::Matching, u};
        }
    }
    return pd;
}

// ---------------------------------------------------------------------------
// Structural predicates.

inline int max_degree(const Graph& g) {
    int d = 0;
    for (int v = 0; v < g.vertex_count; ++v) d = std::max(d, g.degree(v));
    return d;
}

inline bool is_regular(const Graph& g) {
    for (int v = 0; v < g.vertex_count; ++v)
        if (g.degree(v) != g.degree(0)) return false;
    return true;
}

inline bool is_triangle_free(const Graph& g) {
    for (auto [u, v] : g.edges) {
        const auto& a = g.adjacency[u];
        const auto& b = g.adjacency[v];
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) return false;
            if (a[i] < b[j]) ++i;
            else ++j;
        }
    }
    return true;
}

inline bool is_connected(const Graph& g) {
    if (g.vertex_count <= 1) return true;
    std::vector<char> seen(g.vertex_count, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.adjacency[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                q.push(w);
            }
    }
    return count == g.vertex_count;
}

/// Component label per vertex, labels assigned in order of smallest member.
inline std::vector<int> component_labels(const Graph& g) {
    std::vector<int> label(g.vertex_count, -1);
    int next = 0;
    for (int s = 0; s < g.vertex_count; ++s) {
        if (label[s] >= 0) continue;
        label[s] = next;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : g.adjacency[v])
                if (label[w] < 0) {
                    label[w] = next;
                    q.push(w);
                }
        }
        ++next;
    }
    return label;
}

inline bool is_forest(const Graph& g) {
    auto label = component_labels(g);
    int components = label.empty() ? 0 : 1 + *std::max_element(label.begin(), label.end());
    return g.edge_count() == g.vertex_count - components;
}

inline bool is_tree(const Graph& g) {
    return g.vertex_count >= 1 && is_connected(g) && g.edge_count() == g.vertex_count - 1;
}

/// Two-coloring of the vertices if g is bipartite.
inline std::optional<std::vector<int>> bipartition(const Graph& g) {
    std::vector<int> side(g.vertex_count, -1);
    for (int s = 0; s < g.vertex_count; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : g.adjacency[v]) {
                if (side[w] < 0) {
                    side[w] = 1 - side[v];
                    q.push(w);
                } else if (side[w] == side[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

inline std::vector<int> vertex_distances(const Graph& g, const std::vector<int>& sources) {
    std::vector<int> dist(g.vertex_count, -1);
    std::queue<int> q;
    for (int s : sources) {
        dist[s] = 0;
        q.push(s);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.adjacency[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

/// Number of edges on a shortest path between an endpoint of e and an
/// endpoint of f; adjacent edges are at distance 0. Empty when no path exists.
inline std::optional<int> edge_distance(const Graph& g, int e, int f) {
    if (e == f) throw std::invalid_argument("edge_distance: edges must differ");
    auto [a, b] = g.endpoints(e);
    auto dist = vertex_distances(g, {a, b});
    auto [c, d] = g.endpoints(f);
    int best = -1;
    for (int x : {c, d})
        if (dist[x] >= 0 && (best < 0 || dist[x] < best)) best = dist[x];
    if (best < 0) return std::nullopt;
    return best;
}

/// Relabel vertices by perm (new id of v is perm[v]); edges are re-sorted
/// into canonical order.
inline Graph relabel_graph(const Graph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.vertex_count)
        throw std::invalid_argument("relabel_graph: permutation size mismatch");
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : g.edges) es.push_back({perm[u], perm[v]});
    return Graph(g.vertex_count, std::move(es));
}

/// Subgraph keeping every vertex but only the selected edges.
inline Graph edge_subgraph(const Graph& g, const std::vector<int>& edge_ids) {
    std::vector<std::pair<int, int>> es;
    for (int e : edge_ids) es.push_back(g.endpoints(e));
    return Graph(g.vertex_count, std::move(es));
}

} // namespace pex
