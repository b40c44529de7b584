#pragma once

#include <algorithm>
#include <functional>
#include <sstream>
#include <vector>

#include "pex/extend_common.hpp"
#include "pex/list_coloring.hpp"

namespace pex {

namespace detail {

// Colors allowed on a product edge given the colors already present at its
// endpoints, drawn from `base_set`.
inline std::vector<int> free_colors_from(const PartialEdgeColoring& c, int e,
                                         const std::vector<int>& base_set) {
    auto [u, v] = c.graph().endpoints(e);
    std::uint64_t used = color_mask_at(c, u) | color_mask_at(c, v);
    std::vector<int> out;
    for (int col : base_set)
        if (!(used >> col & 1)) out.push_back(col);
    return out;
}

// Colors the uncolored edges of one cycle copy. Colored copy edges split the
// cycle into uncolored segments; each segment is finished by the path lemma
// with lists drawn from `base_set` minus the colors already present at the
// endpoints. A fully uncolored copy is handed to the cycle lemma when the
// lists differ, or painted with the canonical two-alternation-plus-one
// pattern when they are all equal.
inline void color_cycle_copy(TracedColoring& work, const PrismDecomposition& dec, int side,
                             const std::vector<int>& base_set,
                             const std::vector<int>& base_order) {
    const int m = static_cast<int>(base_order.size());
    std::vector<int> product_of(m);
    std::vector<char> colored(m, 0);
    bool any_colored = false;
    for (int pos = 0; pos < m; ++pos) {
        product_of[pos] = dec.copy_edges[side][base_order[pos]];
        colored[pos] = work.coloring().is_colored(product_of[pos]) ? 1 : 0;
        if (colored[pos]) any_colored = true;
    }

    if (!any_colored) {
        std::vector<std::vector<int>> lists(m);
        bool all_equal = true;
        for (int pos = 0; pos < m; ++pos) {
            lists[pos] = free_colors_from(work.coloring(), product_of[pos], base_set);
            if (lists[pos] != lists[0]) all_equal = false;
        }
        if (all_equal) {
            require_step(lists[0].size() >= 2 + (m % 2),
                         "not enough colors for a bare cycle copy");
            for (int pos = 0; pos < m; ++pos) {
                int col = (m % 2 == 1 && pos == m - 1) ? lists[0][2] : lists[0][pos % 2];
                work.set(product_of[pos], col);
            }
        } else {
            std::vector<int> colors = list_color_sequence_cycle(lists);
            for (int pos = 0; pos < m; ++pos) work.set(product_of[pos], colors[pos]);
        }
        return;
    }

    int anchor = 0;
    while (!colored[anchor]) ++anchor;
    int pos = anchor;
    while (true) {
        pos = (pos + 1) % m;
        if (pos == anchor) break;
        if (colored[pos]) continue;
        std::vector<int> segment;
        while (!colored[pos]) {
            segment.push_back(pos);
            pos = (pos + 1) % m;
        }
        std::vector<std::vector<int>> lists(segment.size());
        int designated = -1;
        std::size_t best = static_cast<std::size_t>(-1);
        for (std::size_t i = 0; i < segment.size(); ++i) {
            lists[i] = free_colors_from(work.coloring(), product_of[segment[i]], base_set);
            if (lists[i].size() < best) {
                best = lists[i].size();
                designated = static_cast<int>(i);
            }
        }
        std::vector<int> colors = list_color_sequence_path(lists, designated);
        for (std::size_t i = 0; i < segment.size(); ++i)
            work.set(product_of[segment[i]], colors[i]);
        if (pos == anchor) break;
    }
}

// Joint search over the uncolored copy edges of a triangle prism, using only
// colors from `allowed`, in ascending edge order with ascending colors.
inline void color_triangle_copies(TracedColoring& work, const PrismDecomposition& dec,
                                  const std::vector<int>& allowed) {
    std::vector<int> open;
    for (int side = 0; side < 2; ++side)
        for (int e : dec.copy_edges[side])
            if (!work.coloring().is_colored(e)) open.push_back(e);
    std::sort(open.begin(), open.end());

    PartialEdgeColoring probe = work.coloring();
    std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
        if (i == open.size()) return true;
        for (int col : free_colors_from(probe, open[i], allowed)) {
            probe.set(open[i], col);
            if (assign(i + 1)) return true;
            probe.unset(open[i]);
        }
        return false;
    };
    require_step(assign(0), "triangle copies admit no coloring from the allowed set");
    for (int e : open) work.set(e, probe.color(e));
}

inline PartialEdgeColoring even_cycle_prism_body(const PrismContext& ctx,
                                                 const PartialEdgeColoring& norm,
                                                 ExtensionTrace& trace) {
    const PrismDecomposition& dec = ctx.dec;
    const Graph& base = dec.base;
    TracedColoring work(norm, trace);
    const std::vector<int> base_order = cycle_edge_order(base);
    const int in_copy1 = ctx.colored_in_copy(0);
    const int in_copy2 = ctx.colored_in_copy(1);
    const int in_matching = ctx.colored_in_matching();

    if (in_matching == 0) {
        if (in_copy2 == 0 || in_copy1 == 0) {
            const int side = in_copy2 == 0 ? 0 : 1;
            std::ostringstream note;
            note << "matching clean, precolored edges confined to copy " << side + 1
                 << ": finish that copy, mirror it, fill the matching with missing colors";
            trace.note(note.str());
            extend_edges_in_place(work, dec.copy_edges[side], {}, "loaded copy extension");
            copy_colors_across(work, dec, side);
            fill_matching_smallest_missing(work, dec);
            return work.coloring();
        }
        // One precolored edge in each copy: alternate both copies over a
        // common color pair containing both precolored colors.
        const int c1 = norm.color(ctx.colored_copy[0][0]);
        const int c2 = norm.color(ctx.colored_copy[1][0]);
        std::vector<int> pair;
        if (c1 == c2) {
            pair = {c1, c1 == 1 ? 2 : 1};
        } else {
            pair = {std::min(c1, c2), std::max(c1, c2)};
        }
        std::ostringstream note;
        note << "matching clean, one precolored edge per copy: alternate both copies over {"
             << pair[0] << "," << pair[1] << "} and fill the matching with the missing color";
        trace.note(note.str());
        extend_edges_in_place(work, dec.copy_edges[0], pair, "copy 1 alternation");
        extend_edges_in_place(work, dec.copy_edges[1], pair, "copy 2 alternation");
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    }

    if (in_matching == 1) {
        const int side = in_copy2 == 0 ? 0 : 1;
        std::ostringstream note;
        note << "one matching edge precolored: finish copy " << side + 1
             << " together with the colored matching edge, mirror the copy, fill the matching";
        trace.note(note.str());
        std::vector<int> edges = dec.copy_edges[side];
        edges.insert(edges.end(), ctx.colored_matching.begin(), ctx.colored_matching.end());
        extend_edges_in_place(work, edges, {}, "copy plus matching edge extension");
        copy_colors_across(work, dec, side);
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    }

    // Both precolored edges lie in the matching.
    const int em1 = ctx.colored_matching[0];
    const int em2 = ctx.colored_matching[1];
    const int ca = norm.color(em1);
    const int cb = norm.color(em2);
    const int va = dec.base_vertex(norm.graph().endpoints(em1).first);
    const int vb = dec.base_vertex(norm.graph().endpoints(em2).first);

    if (ca == cb) {
        std::ostringstream note;
        note << "two matching edges share color " << ca
             << ": alternate both copies over the other two colors, matching takes " << ca;
        trace.note(note.str());
        std::vector<int> others;
        for (int col = 1; col <= 3; ++col)
            if (col != ca) others.push_back(col);
        extend_edges_in_place(work, dec.copy_edges[0], others, "copy 1 alternation");
        copy_colors_across(work, dec, 0);
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    }

    const bool endpoints_adjacent = base.has_edge(va, vb);
    if (!endpoints_adjacent) {
        std::ostringstream note;
        note << "matching edges colored " << ca << " and " << cb
             << " at nonadjacent base vertices " << va << " and " << vb
             << ": cycle lemma on each copy with lists avoiding the matching colors";
        trace.note(note.str());
        const int m = base.edge_count();
        std::vector<std::vector<int>> lists(m);
        for (int pos = 0; pos < m; ++pos) {
            int be = base_order[pos];
            auto [x, y] = base.endpoints(be);
            std::vector<int> list;
            for (int col = 1; col <= 3; ++col) {
                if ((x == va || y == va) && col == ca) continue;
                if ((x == vb || y == vb) && col == cb) continue;
                list.push_back(col);
            }
            lists[pos] = list;
        }
        std::vector<int> colors = list_color_sequence_cycle(lists);
        for (int pos = 0; pos < m; ++pos) {
            work.set(dec.copy_edges[0][base_order[pos]], colors[pos]);
            work.set(dec.copy_edges[1][base_order[pos]], colors[pos]);
        }
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    }

    // Matching colors differ and their base vertices are adjacent: force the
    // three surrounding copy edges and finish the rest by the path lemma.
    int third = 1;
    while (third == ca || third == cb) ++third;
    std::ostringstream note;
    note << "matching edges colored " << ca << " and " << cb << " at adjacent base vertices "
         << va << " and " << vb << ": force the bridging edge to " << third
         << ", its neighbors to the opposite matching colors, finish with the path lemma";
    trace.note(note.str());
    const int bridge = base.edge_id(std::min(va, vb), std::max(va, vb));
    int ua = -1, ub = -1;
    for (int nb : base.adjacency[va])
        if (nb != vb) ua = nb;
    for (int nb : base.adjacency[vb])
        if (nb != va) ub = nb;
    const int edge_a = base.edge_id(std::min(va, ua), std::max(va, ua));
    const int edge_b = base.edge_id(std::min(vb, ub), std::max(vb, ub));
    for (int side = 0; side < 2; ++side) {
        work.set(dec.copy_edges[side][bridge], third);
        work.set(dec.copy_edges[side][edge_a], cb);
        work.set(dec.copy_edges[side][edge_b], ca);
    }
    const std::vector<int> full = {1, 2, 3};
    color_cycle_copy(work, dec, 0, full, base_order);
    color_cycle_copy(work, dec, 1, full, base_order);
    fill_matching_smallest_missing(work, dec);
    return work.coloring();
}

inline PartialEdgeColoring odd_cycle_prism_body(const PrismContext& ctx,
                                                const PartialEdgeColoring& norm,
                                                ExtensionTrace& trace) {
    const PrismDecomposition& dec = ctx.dec;
    const Graph& base = dec.base;
    const int n_base = base.vertex_count;
    TracedColoring work(norm, trace);
    const std::vector<int> base_order = cycle_edge_order(base);
    const int in_copy1 = ctx.colored_in_copy(0);
    const int in_copy2 = ctx.colored_in_copy(1);
    const int in_matching = ctx.colored_in_matching();
    const std::vector<int> low = {1, 2, 3};
    const std::vector<int> full = {1, 2, 3, 4};

    if (in_matching == 0) {
        trace.note(
            "matching clean: finish each copy inside colors 1..3 around its precolored "
            "edges, matching takes color 4");
        color_cycle_copy(work, dec, 0, low, base_order);
        color_cycle_copy(work, dec, 1, low, base_order);
        for (int e : dec.matching_edges)
            if (!work.coloring().is_colored(e)) work.set(e, 4);
        return work.coloring();
    }

    if (in_matching == 1) {
        if (in_copy1 >= 1 && in_copy2 >= 1) {
            if (n_base == 3) {
                const int e1 = ctx.colored_copy[0][0];
                const int e2 = ctx.colored_matching[0];
                const int e3 = ctx.colored_copy[1][0];
                const bool adj12 = norm.graph().edges_adjacent(e1, e2);
                const bool adj23 = norm.graph().edges_adjacent(e2, e3);
                const int c2 = norm.color(e2);
                std::vector<int> allowed;
                if (adj12 && adj23) {
                    for (int col : full)
                        if (col != c2) allowed.push_back(col);
                    trace.note(
                        "triangle prism, matching edge adjacent to both copy edges: color the "
                        "copies avoiding its color");
                } else if (adj12 || adj23) {
                    const int adjacent_color = norm.color(adj12 ? e1 : e3);
                    const int lone_color = norm.color(adj12 ? e3 : e1);
                    if (lone_color == c2) {
                        allowed = {adjacent_color, c2};
                        for (int col : full) {
                            if (col != adjacent_color && col != c2) {
                                allowed.push_back(col);
                                break;
                            }
                        }
                        std::sort(allowed.begin(), allowed.end());
                        trace.note(
                            "triangle prism, one adjacency and the far copy edge repeats the "
                            "matching color: reuse both colors plus one fresh color");
                    } else {
                        for (int col : full)
                            if (col != c2) allowed.push_back(col);
                        trace.note(
                            "triangle prism, one adjacency with distinct far color: color the "
                            "copies avoiding the matching color");
                    }
                } else {
                    std::vector<int> present = {norm.color(e1), c2, norm.color(e3)};
                    std::sort(present.begin(), present.end());
                    present.erase(std::unique(present.begin(), present.end()), present.end());
                    if (present.size() <= 2) {
                        std::vector<int> pair = present;
                        for (int col : full) {
                            if (pair.size() >= 2) break;
                            if (std::find(pair.begin(), pair.end(), col) == pair.end())
                                pair.push_back(col);
                        }
                        for (int col : full)
                            if (std::find(pair.begin(), pair.end(), col) == pair.end())
                                allowed.push_back(col);
                        trace.note(
                            "triangle prism, independent precolored edges on two colors: color "
                            "the copies with the complementary pair");
                    } else {
                        for (int col : full)
                            if (col != c2) allowed.push_back(col);
                        trace.note(
                            "triangle prism, independent precolored edges on three colors: "
                            "color the copies avoiding the matching color");
                    }
                }
                color_triangle_copies(work, dec, allowed);
                fill_matching_smallest_missing(work, dec);
                return work.coloring();
            }
            trace.note(
                "one matching edge and one edge per copy precolored: finish each copy inside "
                "colors 1..3 by the path lemma, matching takes color 4");
            color_cycle_copy(work, dec, 0, low, base_order);
            color_cycle_copy(work, dec, 1, low, base_order);
            for (int e : dec.matching_edges)
                if (!work.coloring().is_colored(e)) work.set(e, 4);
            return work.coloring();
        }
        const int side = in_copy2 == 0 ? 0 : 1;
        std::ostringstream note;
        note << "one matching edge precolored, copy " << 2 - side
             << " clean: finish copy " << side + 1
             << " over the full palette, mirror it, fill the matching";
        trace.note(note.str());
        color_cycle_copy(work, dec, side, full, base_order);
        copy_colors_across(work, dec, side);
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    }

    if (in_matching == 2) {
        if (in_copy1 + in_copy2 >= 1) {
            const int side = in_copy1 >= 1 ? 0 : 1;
            std::ostringstream note;
            note << "two matching edges and one copy edge precolored: finish copy " << side + 1
                 << " over the full palette by the path lemma, mirror it, fill the matching";
            trace.note(note.str());
            color_cycle_copy(work, dec, side, full, base_order);
            copy_colors_across(work, dec, side);
            fill_matching_smallest_missing(work, dec);
            return work.coloring();
        }
        const int ca = norm.color(ctx.colored_matching[0]);
        const int cb = norm.color(ctx.colored_matching[1]);
        if (n_base == 3 && ca == cb) {
            std::vector<int> allowed;
            for (int col : full)
                if (col != ca) allowed.push_back(col);
            trace.note(
                "triangle prism, two matching edges share a color: color the copies from the "
                "other three colors, fill the matching");
            color_triangle_copies(work, dec, allowed);
            fill_matching_smallest_missing(work, dec);
            return work.coloring();
        }
        trace.note(
            "two matching edges precolored, copies clean: cycle lemma on each copy with lists "
            "avoiding the matching colors, fill the matching");
        color_cycle_copy(work, dec, 0, full, base_order);
        copy_colors_across(work, dec, 0);
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    }

    // All three precolored edges lie in the matching.
    std::vector<int> matching_colors;
    for (int e : ctx.colored_matching) matching_colors.push_back(norm.color(e));
    std::sort(matching_colors.begin(), matching_colors.end());
    matching_colors.erase(std::unique(matching_colors.begin(), matching_colors.end()),
                          matching_colors.end());
    if (matching_colors.size() == 1) {
        const int shared = matching_colors[0];
        std::ostringstream note;
        note << "three matching edges share color " << shared
             << ": color both copies from the other three colors, fill the matching";
        trace.note(note.str());
        std::vector<int> allowed;
        for (int col : full)
            if (col != shared) allowed.push_back(col);
        for (int pos = 0; pos < base.edge_count(); ++pos) {
            int col = pos == base.edge_count() - 1 ? allowed[2] : allowed[pos % 2];
            work.set(dec.copy_edges[0][base_order[pos]], col);
            work.set(dec.copy_edges[1][base_order[pos]], col);
        }
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    }
    trace.note(
        "three matching edges on at least two colors: give the rest of the matching color 1, "
        "then the cycle lemma colors both copies with lists avoiding the matching colors");
    for (int e : dec.matching_edges)
        if (!work.coloring().is_colored(e)) work.set(e, 1);
    const int m = base.edge_count();
    std::vector<std::vector<int>> lists(m);
    for (int pos = 0; pos < m; ++pos) {
        int be = base_order[pos];
        auto [x, y] = base.endpoints(be);
        const int mx = work.coloring().color(dec.matching_edges[x]);
        const int my = work.coloring().color(dec.matching_edges[y]);
        std::vector<int> list;
        for (int col : full)
            if (col != mx && col != my) list.push_back(col);
        lists[pos] = list;
    }
    std::vector<int> colors = list_color_sequence_cycle(lists);
    for (int pos = 0; pos < m; ++pos) {
        work.set(dec.copy_edges[0][base_order[pos]], colors[pos]);
        work.set(dec.copy_edges[1][base_order[pos]], colors[pos]);
    }
    return work.coloring();
}

}  // namespace detail

// Extends a proper precoloring of the prism over a cycle: an even cycle with
// at most two precolored edges gets a proper 3-coloring, an odd cycle with at
// most three precolored edges a proper 4-coloring.
inline ExtenderOutcome extend_cycle_prism(const Graph& cy, const PartialEdgeColoring& c) {
    const int n = cy.vertex_count;
    if (n < 3 || cy.edge_count() != n || !is_connected(cy) || max_degree(cy) != 2)
        throw std::invalid_argument("extend_cycle_prism: base graph is not a cycle");
    const bool even = n % 2 == 0;
    const int palette = even ? 3 : 4;
    const int max_precolored = even ? 2 : 3;
    PrismContext ctx = analyze_prism(cy, c, palette, max_precolored, "extend_cycle_prism");
    return run_prism_extender(
        c, max_precolored, "extend_cycle_prism",
        [&](const PartialEdgeColoring& norm, ExtensionTrace& trace) {
            return even ? detail::even_cycle_prism_body(ctx, norm, trace)
                        : detail::odd_cycle_prism_body(ctx, norm, trace);
        });
}

}  // namespace pex
