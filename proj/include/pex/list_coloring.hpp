#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pex/graph.hpp"

namespace pex {

// Allowed colors per edge, indexed by edge id (graph level) or by sequence
// position (detail level).
using ListAssignment = std::vector<std::vector<int>>;

namespace detail {

inline std::vector<int> clean_list(const std::vector<int>& list) {
    std::vector<int> out = list;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!out.empty() && out.front() < 1)
        throw std::invalid_argument("list coloring: colors must be positive");
    return out;
}

inline int smallest_avoiding(const std::vector<int>& list, int forbidden) {
    for (int c : list)
        if (c != forbidden) return c;
    throw std::logic_error("list coloring: no available color in list");
}

// Path of edges given as consecutive positions (position i shares a vertex
// with position i+1 and nothing further). Every list except the designated
// one must have at least two colors; the designated one at least one. Colors
// the designated edge with its smallest color and sweeps outward, always
// taking the smallest color avoiding the already colored neighbor.
inline std::vector<int> list_color_sequence_path(const std::vector<std::vector<int>>& lists,
                                                int designated) {
    const int m = static_cast<int>(lists.size());
    if (m < 1) throw std::invalid_argument("list coloring: empty path");
    if (designated < 0 || designated >= m)
        throw std::invalid_argument("list coloring: designated edge out of range");
    std::vector<std::vector<int>> clean(m);
    for (int i = 0; i < m; ++i) {
        clean[i] = clean_list(lists[i]);
        const std::size_t need = i == designated ? 1 : 2;
        if (clean[i].size() < need) {
            std::ostringstream msg;
            msg << "list coloring: list at position " << i << " needs at least " << need
                << " colors";
            throw std::invalid_argument(msg.str());
        }
    }
    std::vector<int> colors(m, 0);
    colors[designated] = clean[designated].front();
    for (int i = designated + 1; i < m; ++i)
        colors[i] = smallest_avoiding(clean[i], colors[i - 1]);
    for (int i = designated - 1; i >= 0; --i)
        colors[i] = smallest_avoiding(clean[i], colors[i + 1]);
    return colors;
}

// Cycle of edges given as cyclic consecutive positions. Every list must have
// at least two colors and the lists must not all be equal; the all-equal case
// is outside the precondition even when a coloring happens to exist. Finds an
// ordered adjacent pair whose first list is not contained in the second,
// fixes the smallest color of the difference on the first edge, and reduces
// to the path case.
inline std::vector<int> list_color_sequence_cycle(const std::vector<std::vector<int>>& lists) {
    const int m = static_cast<int>(lists.size());
    if (m < 3) throw std::invalid_argument("list coloring: cycle needs at least three edges");
    std::vector<std::vector<int>> clean(m);
    for (int i = 0; i < m; ++i) {
        clean[i] = clean_list(lists[i]);
        if (clean[i].size() < 2) {
            std::ostringstream msg;
            msg << "list coloring: list at position " << i << " needs at least 2 colors";
            throw std::invalid_argument(msg.str());
        }
    }
    bool all_equal = true;
    for (int i = 1; i < m && all_equal; ++i)
        if (clean[i] != clean[0]) all_equal = false;
    if (all_equal)
        throw std::invalid_argument("list coloring: cycle lists must not all be equal");

    auto not_subset = [](const std::vector<int>& a, const std::vector<int>& b) {
        for (int c : a)
            if (!std::binary_search(b.begin(), b.end(), c)) return true;
        return false;
    };
    int x = -1;
    int away = 0;  // +1: path runs x-1, x-2, ...; -1: path runs x+1, x+2, ...
    for (int i = 0; i < m && x < 0; ++i) {
        const int j = (i + 1) % m;
        if (not_subset(clean[i], clean[j])) {
            x = i;
            away = -1;  // y = i+1 untouched, designated z = i-1
        } else if (not_subset(clean[j], clean[i])) {
            x = j;
            away = +1;  // y = i untouched, designated z = j+1
        }
    }
    if (x < 0) throw std::logic_error("list coloring: differing adjacent pair not found");

    const int y = away == -1 ? (x + 1) % m : (x + m - 1) % m;
    int fixed = -1;
    for (int c : clean[x]) {
        if (!std::binary_search(clean[y].begin(), clean[y].end(), c)) {
            fixed = c;
            break;
        }
    }
    if (fixed < 0) throw std::logic_error("list coloring: difference vanished");

    // Remaining edges form a path from z (the neighbor of x away from y)
    // around to y; z must additionally avoid the fixed color.
    std::vector<int> order(m - 1);
    std::vector<std::vector<int>> path_lists(m - 1);
    for (int s = 0; s < m - 1; ++s) {
        const int pos = away == -1 ? (x + m - 1 - s) % m : (x + 1 + s) % m;
        order[s] = pos;
        path_lists[s] = clean[pos];
    }
    std::vector<int>& z_list = path_lists[0];
    z_list.erase(std::remove(z_list.begin(), z_list.end(), fixed), z_list.end());

    std::vector<int> path_colors = list_color_sequence_path(path_lists, 0);
    std::vector<int> colors(m, 0);
    colors[x] = fixed;
    for (int s = 0; s < m - 1; ++s) colors[order[s]] = path_colors[s];
    return colors;
}

}  // namespace detail

// Edge ids of a path graph ordered from the endpoint with the smaller vertex
// id to the other endpoint.
inline std::vector<int> path_edge_order(const Graph& g) {
    if (g.edge_count() < 1) throw std::invalid_argument("path order: graph has no edges");
    if (!is_tree(g) || max_degree(g) > 2)
        throw std::invalid_argument("path order: graph is not a path");
    int start = -1;
    for (int v = 0; v < g.vertex_count; ++v) {
        if (g.degree(v) == 1) {
            start = v;
            break;
        }
    }
    std::vector<int> order;
    int prev = -1;
    int at = start;
    while (true) {
        int next_edge = -1;
        for (int e : g.incident_edges[at]) {
            if (g.other_endpoint(e, at) != prev) {
                next_edge = e;
                break;
            }
        }
        if (next_edge < 0) break;
        order.push_back(next_edge);
        prev = at;
        at = g.other_endpoint(next_edge, at);
    }
    return order;
}

// Edge ids of a cycle graph in cyclic order, starting at vertex 0 with its
// smallest incident edge.
inline std::vector<int> cycle_edge_order(const Graph& g) {
    const int n = g.vertex_count;
    if (n < 3 || g.edge_count() != n || !is_connected(g) || max_degree(g) != 2)
        throw std::invalid_argument("cycle order: graph is not a cycle");
    std::vector<int> order;
    int prev = -1;
    int at = 0;
    do {
        int next_edge = -1;
        for (int e : g.incident_edges[at]) {
            if (g.other_endpoint(e, at) != prev) {
                next_edge = e;
                break;
            }
        }
        order.push_back(next_edge);
        prev = at;
        at = g.other_endpoint(next_edge, at);
    } while (at != 0);
    return order;
}

// Proper list edge coloring of a path. `lists` is indexed by edge id. The
// designated edge may have a single-color list; all others need two. When
// `designated_edge` is -1 the edge with the smallest list (ties: smallest id)
// is designated. Returns colors indexed by edge id.
inline std::vector<int> list_color_path(const Graph& p, const ListAssignment& lists,
                                        int designated_edge = -1) {
    const int m = p.edge_count();
    if (static_cast<int>(lists.size()) != m)
        throw std::invalid_argument("list coloring: one list per edge required");
    std::vector<int> order = path_edge_order(p);
    if (designated_edge == -1) {
        std::size_t best = static_cast<std::size_t>(-1);
        for (int e = 0; e < m; ++e) {
            std::size_t size = detail::clean_list(lists[e]).size();
            if (size < best) {
                best = size;
                designated_edge = e;
            }
        }
    }
    if (designated_edge < 0 || designated_edge >= m)
        throw std::invalid_argument("list coloring: designated edge out of range");
    int designated_pos = -1;
    std::vector<std::vector<int>> seq_lists(m);
    for (int pos = 0; pos < m; ++pos) {
        seq_lists[pos] = lists[order[pos]];
        if (order[pos] == designated_edge) designated_pos = pos;
    }
    std::vector<int> seq_colors = detail::list_color_sequence_path(seq_lists, designated_pos);
    std::vector<int> colors(m, 0);
    for (int pos = 0; pos < m; ++pos) colors[order[pos]] = seq_colors[pos];
    return colors;
}

// Proper list edge coloring of a cycle. Every list needs at least two colors
// and the lists must not all be equal. Returns colors indexed by edge id.
inline std::vector<int> list_color_cycle(const Graph& c, const ListAssignment& lists) {
    const int m = c.edge_count();
    if (static_cast<int>(lists.size()) != m)
        throw std::invalid_argument("list coloring: one list per edge required");
    std::vector<int> order = cycle_edge_order(c);
    std::vector<std::vector<int>> seq_lists(m);
    for (int pos = 0; pos < m; ++pos) seq_lists[pos] = lists[order[pos]];
    std::vector<int> seq_colors = detail::list_color_sequence_cycle(seq_lists);
    std::vector<int> colors(m, 0);
    for (int pos = 0; pos < m; ++pos) colors[order[pos]] = seq_colors[pos];
    return colors;
}

}  // namespace pex
