#pragma once

#include <functional>
#include <queue>
#include <sstream>
#include <vector>

#include "pex/extend_common.hpp"

namespace pex {

namespace detail {

// True when the component of `start` in the subgraph of c's graph spanned by
// `edges`, after deleting vertex `removed`, contains no colored edge.
inline bool component_has_no_colored_edge(const PartialEdgeColoring& c,
                                          const std::vector<int>& edges, int removed,
                                          int start) {
    const Graph& g = c.graph();
    std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count);
    for (int e : edges) {
        auto [u, v] = g.endpoints(e);
        if (u == removed || v == removed) continue;
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }
    if (start == removed) return true;
    std::vector<char> seen(g.vertex_count, 0);
    std::queue<int> queue;
    seen[start] = 1;
    queue.push(start);
    while (!queue.empty()) {
        int at = queue.front();
        queue.pop();
        for (auto [next, e] : adj[at]) {
            if (c.is_colored(e)) return false;
            if (!seen[next]) {
                seen[next] = 1;
                queue.push(next);
            }
        }
    }
    return true;
}

inline std::vector<int> palette_prefix(int r) {
    std::vector<int> colors(r);
    for (int i = 0; i < r; ++i) colors[i] = i + 1;
    return colors;
}

inline PartialEdgeColoring tree_prism_body(const PrismContext& ctx,
                                           const PartialEdgeColoring& norm,
                                           ExtensionTrace& trace) {
    const PrismDecomposition& dec = ctx.dec;
    const Graph& base = dec.base;
    const int delta = max_degree(base);
    const int n = dec.base_vertex_count;
    TracedColoring work(norm, trace);
    const int in_copy1 = ctx.colored_in_copy(0);
    const int in_copy2 = ctx.colored_in_copy(1);
    const int in_matching = ctx.colored_in_matching();

    if (in_matching == 0) {
        if (in_copy2 == 0 || in_copy1 == 0) {
            const int side = in_copy2 == 0 ? 0 : 1;
            std::ostringstream note;
            note << "case 1, one-sided: all precolored edges lie in copy " << side + 1
                 << "; extend that copy over the full palette, mirror it, then give every "
                    "matching edge the smallest color missing at its endpoints";
            trace.note(note.str());
            extend_edges_in_place(work, dec.copy_edges[side], {}, "one-sided copy extension");
            copy_colors_across(work, dec, side);
            fill_matching_smallest_missing(work, dec);
        } else {
            trace.note(
                "case 1, split: each copy has at most maxdeg-1 precolored edges; extend both "
                "copies inside the degree palette and color the whole matching with the extra "
                "color");
            const std::vector<int> degree_colors = palette_prefix(delta);
            extend_edges_in_place(work, dec.copy_edges[0], degree_colors, "copy 1 extension");
            extend_edges_in_place(work, dec.copy_edges[1], degree_colors, "copy 2 extension");
            for (int e : dec.matching_edges) work.set(e, delta + 1);
        }
        return work.coloring();
    }

    std::vector<int> side_plus_matching[2];
    for (int side = 0; side < 2; ++side) {
        side_plus_matching[side] = dec.copy_edges[side];
        side_plus_matching[side].insert(side_plus_matching[side].end(), dec.matching_edges.begin(),
                                        dec.matching_edges.end());
    }

    if (in_copy2 == 0 || in_copy1 == 0) {
        const int side = in_copy2 == 0 ? 0 : 1;
        std::ostringstream note;
        note << "case 2, one-sided: copy " << 2 - side
             << " is clean; extend copy " << side + 1
             << " plus the matching pendants over the full palette and mirror the copy";
        trace.note(note.str());
        extend_edges_in_place(work, side_plus_matching[side], {},
                              "copy plus matching extension");
        copy_colors_across(work, dec, side);
        return work.coloring();
    }

    // Both copies and the matching carry precolored edges. Pick pendant-free
    // partner edges for every full-degree vertex whose matching edge is
    // precolored, push a common color onto the partner matching edges, finish
    // the reduced copies inside the degree palette, and spend the extra color
    // on the partner edges plus the untouched matching edges.
    std::vector<int> heavy;
    for (int v = 0; v < n; ++v)
        if (base.degree(v) == delta && norm.is_colored(dec.matching_edges[v])) heavy.push_back(v);

    std::vector<char> partner_used(n, 0);
    std::vector<char> is_heavy(n, 0);
    for (int v : heavy) is_heavy[v] = 1;
    std::vector<std::pair<int, int>> chosen;  // (heavy vertex, base edge id)

    std::function<bool(std::size_t)> pick = [&](std::size_t i) -> bool {
        if (i == heavy.size()) return true;
        const int u = heavy[i];
        for (int be : base.incident_edges[u]) {
            const int w = base.other_endpoint(be, u);
            if (is_heavy[w] || partner_used[w]) continue;
            if (norm.is_colored(dec.copy_edges[0][be]) || norm.is_colored(dec.copy_edges[1][be]))
                continue;
            bool clean = true;
            for (int side = 0; side < 2 && clean; ++side) {
                clean = component_has_no_colored_edge(norm, side_plus_matching[side],
                                                      dec.copy_vertex(u, side),
                                                      dec.copy_vertex(w, side));
            }
            if (!clean) continue;
            partner_used[w] = 1;
            chosen.push_back({u, be});
            if (pick(i + 1)) return true;
            partner_used[w] = 0;
            chosen.pop_back();
        }
        return false;
    };
    require_step(pick(0), "partner matching for full-degree vertices not found");

    {
        std::ostringstream note;
        note << "case 2, split: full-degree vertices with precolored matching pendants:";
        for (int v : heavy) note << " " << v;
        note << "; partner edges in the base:";
        for (auto [u, be] : chosen) {
            auto [a, b] = base.endpoints(be);
            note << " (" << a << "," << b << ")";
        }
        trace.note(note.str());
    }

    const int common = 1;
    for (auto [u, be] : chosen) {
        const int w = base.other_endpoint(be, u);
        const int pendant = dec.matching_edges[w];
        require_step(!work.coloring().is_colored(pendant),
                     "partner matching edge unexpectedly precolored");
        work.set(pendant, common);
    }
    {
        std::ostringstream note;
        note << "matching edges next to the partner edges get color " << common;
        trace.note(note.str());
    }

    std::vector<char> removed_base_edge(base.edge_count(), 0);
    for (auto [u, be] : chosen) removed_base_edge[be] = 1;
    const std::vector<int> degree_colors = palette_prefix(delta);
    for (int side = 0; side < 2; ++side) {
        std::vector<int> reduced;
        for (int b = 0; b < base.edge_count(); ++b)
            if (!removed_base_edge[b]) reduced.push_back(dec.copy_edges[side][b]);
        for (int v = 0; v < n; ++v)
            if (work.coloring().is_colored(dec.matching_edges[v]))
                reduced.push_back(dec.matching_edges[v]);
        extend_edges_in_place(work, reduced, degree_colors, "reduced copy extension");
    }

    for (int b = 0; b < base.edge_count(); ++b) {
        if (!removed_base_edge[b]) continue;
        work.set(dec.copy_edges[0][b], delta + 1);
        work.set(dec.copy_edges[1][b], delta + 1);
    }
    for (int v = 0; v < n; ++v)
        if (!work.coloring().is_colored(dec.matching_edges[v]))
            work.set(dec.matching_edges[v], delta + 1);
    trace.note("partner edges in both copies and the untouched matching edges get the extra color");
    return work.coloring();
}

}  // namespace detail

// Extends a proper precoloring of at most maxdeg(t) edges of the prism over a
// tree t to a total proper coloring with maxdeg(t) + 1 colors.
inline ExtenderOutcome extend_tree_prism(const Graph& t, const PartialEdgeColoring& c) {
    if (!is_tree(t)) throw std::invalid_argument("extend_tree_prism: base graph is not a tree");
    const int delta = max_degree(t);
    PrismContext ctx = analyze_prism(t, c, delta + 1, delta, "extend_tree_prism");
    return run_prism_extender(c, delta, "extend_tree_prism",
                              [&](const PartialEdgeColoring& norm, ExtensionTrace& trace) {
                                  return detail::tree_prism_body(ctx, norm, trace);
                              });
}

}  // namespace pex
