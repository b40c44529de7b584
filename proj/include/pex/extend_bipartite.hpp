#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pex/characterizations.hpp"
#include "pex/extend_common.hpp"
#include "pex/extend_cycle.hpp"

namespace pex {

namespace detail {

// For each base vertex carrying a precolored matching edge, picks a base edge
// to an uncovered, unused partner vertex such that the picked edges form a
// matching, both copies of every picked edge are uncolored, and neither copy
// of a picked edge touches a precolored copy edge whose color equals the
// matching color at the covered endpoint. Returns (covered vertex, base edge)
// pairs aligned with `covered`, or nullopt when no such matching exists.
inline std::optional<std::vector<std::pair<int, int>>> find_partner_matching(
    const PrismContext& ctx, const PartialEdgeColoring& norm, const std::vector<int>& covered,
    const std::vector<int>& match_color) {
    const Graph& base = ctx.dec.base;
    std::vector<char> is_covered(base.vertex_count, 0);
    for (int v : covered) is_covered[v] = 1;
    std::vector<char> used(base.vertex_count, 0);
    std::vector<std::pair<int, int>> picks;

    const PartialEdgeColoring phi[2] = {
        side_restriction(norm, ctx.dec, 0, norm.palette()),
        side_restriction(norm, ctx.dec, 1, norm.palette()),
    };

    std::function<bool(std::size_t)> pick = [&](std::size_t i) -> bool {
        if (i == covered.size()) return true;
        int u = covered[i];
        int gamma = match_color[i];
        for (int be : base.incident_edges[u]) {
            int w = base.other_endpoint(be, u);
            if (is_covered[w] || used[w]) continue;
            bool ok = true;
            for (int side = 0; side < 2 && ok; ++side) {
                if (norm.is_colored(ctx.dec.copy_edges[side][be]))
                    ok = false;
                else if ((color_mask_at(phi[side], u) >> gamma & 1) ||
                         (color_mask_at(phi[side], w) >> gamma & 1))
                    ok = false;
            }
            if (!ok) continue;
            used[w] = 1;
            picks.push_back({u, be});
            if (pick(i + 1)) return true;
            used[w] = 0;
            picks.pop_back();
        }
        return false;
    };
    if (!pick(0)) return std::nullopt;
    return picks;
}

inline std::string describe_partner_picks(const Graph& base,
                                          const std::vector<std::pair<int, int>>& picks) {
    std::ostringstream msg;
    msg << "partner edges:";
    for (auto [u, be] : picks) {
        auto [x, y] = base.endpoints(be);
        msg << " (" << x << "," << y << ") for matched vertex " << u;
    }
    return msg.str();
}

inline PartialEdgeColoring knn_prism_body(const PrismContext& ctx, int n,
                                          const PartialEdgeColoring& norm,
                                          ExtensionTrace& trace) {
    const PrismDecomposition& dec = ctx.dec;
    const Graph& base = dec.base;
    const int full = n + 1;
    TracedColoring work(norm, trace);

    std::vector<int> palette_n(n);
    std::iota(palette_n.begin(), palette_n.end(), 1);

    const int in1 = ctx.colored_in_copy(0);
    const int in2 = ctx.colored_in_copy(1);
    const int in_m = ctx.colored_in_matching();

    if (in_m == 0) {
        if (in1 == n || in2 == n) {
            // One copy carries every precolored edge. That copy extends with
            // all n+1 colors, since it sits inside a larger balanced complete
            // bipartite graph where so few precolored edges never block. The
            // other copy mirrors it and each matching pair misses exactly one
            // color.
            int side = in1 == n ? 0 : 1;
            trace.note("no matching edge precolored and one copy holds all of them; "
                       "extending that copy with the full palette and mirroring");
            extend_edges_in_place(work, dec.copy_edges[side], {}, "loaded copy extension");
            copy_colors_across(work, dec, side);
            fill_matching_smallest_missing(work, dec);
        } else {
            trace.note("no matching edge precolored; each copy extends within the first n "
                       "colors and the matching takes the extra color");
            for (int side = 0; side < 2; ++side)
                extend_edges_in_place(work, dec.copy_edges[side], palette_n,
                                      side == 0 ? "first copy extension" : "second copy extension");
            for (int e : dec.matching_edges) work.set(e, full);
        }
        return work.coloring();
    }

    std::vector<int> covered, mcolor;
    for (int v = 0; v < base.vertex_count; ++v) {
        if (std::optional<int> col = norm.color_if_any(dec.matching_edges[v])) {
            covered.push_back(v);
            mcolor.push_back(*col);
        }
    }

    if (in1 >= 1 && in2 >= 1) {
        // Matching plus both copies. Pin a partner edge at every matched
        // vertex with the matching color, extend both copies within the first
        // n colors, then push the partner edges up to the extra color; each
        // partner pair then misses exactly the matching color.
        trace.note("matching edges and both copies precolored; pinning partner edges "
                   "at the matched vertices");
        auto picks = find_partner_matching(ctx, norm, covered, mcolor);
        require_step(picks.has_value(), "no admissible partner matching");
        trace.note(describe_partner_picks(base, *picks));
        std::vector<char> is_pick(base.edge_count(), 0);
        for (auto [u, be] : *picks) is_pick[be] = 1;
        for (int side = 0; side < 2; ++side) {
            PartialEdgeColoring phi = side_restriction(norm, dec, side, n);
            for (std::size_t i = 0; i < picks->size(); ++i)
                phi.set((*picks)[i].second, mcolor[i]);
            PartialEdgeColoring f = oracle_extend_checked(
                phi, side == 0 ? "first pinned copy extension" : "second pinned copy extension");
            for (int b = 0; b < base.edge_count(); ++b)
                work.set(dec.copy_edges[side][b], is_pick[b] ? full : f.color(b));
        }
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    }

    // Matching edges plus at most one loaded copy.
    const int s = in2 == 0 ? 0 : 1;
    trace.note(in1 + in2 == 0
                   ? "only matching edges precolored; working in the first copy"
                   : "matching edges and one copy precolored; working in the loaded copy");
    auto picks = find_partner_matching(ctx, norm, covered, mcolor);
    require_step(picks.has_value(), "no admissible partner matching");
    trace.note(describe_partner_picks(base, *picks));
    std::vector<char> is_pick(base.edge_count(), 0);
    int pick_of_color_once = -1;
    for (auto [u, be] : *picks) is_pick[be] = 1;

    PartialEdgeColoring phi = side_restriction(norm, dec, s, n);
    for (std::size_t i = 0; i < picks->size(); ++i) phi.set((*picks)[i].second, mcolor[i]);

    ExtensionOutcome first = extend_exhaustive(phi);
    if (first.status == ExtendStatus::Extended) {
        trace.note("pinned copy extends within the first n colors; partner edges take "
                   "the extra color and the other copy mirrors");
        for (int b = 0; b < base.edge_count(); ++b)
            work.set(dec.copy_edges[s][b], is_pick[b] ? full : first.coloring->color(b));
        copy_colors_across(work, dec, s);
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    }
    require_step(first.status == ExtendStatus::NotExtendable,
                 "pinned copy search ended without an answer");
    ConditionReport why = ah_bipartite_condition(n, phi);
    require_step(why.fired(), "pinned copy is blocked but no blocking condition holds");

    // Count how often each color is used by the precoloring; with the clean
    // second copy this matches the pinned copy's counts.
    std::vector<int> uses(full + 1, 0);
    for (int b = 0; b < base.edge_count(); ++b)
        if (std::optional<int> col = phi.color_if_any(b)) ++uses[*col];
    int once_on_matching = -1;
    for (std::size_t i = 0; i < mcolor.size() && once_on_matching < 0; ++i)
        if (uses[mcolor[i]] == 1) {
            once_on_matching = mcolor[i];
            pick_of_color_once = (*picks)[i].second;
        }

    if (once_on_matching > 0) {
        // Free the pinned edge carrying that color, extend avoiding the
        // color entirely, then hand the color back to the other partner
        // edges; every matched vertex again misses exactly its matching
        // color.
        std::ostringstream msg;
        msg << "blocked copy: color " << once_on_matching
            << " is used once and sits on the matching; freeing its partner edge and "
               "extending without that color";
        trace.note(msg.str());
        PartialEdgeColoring phiw = phi.with_palette(full);
        phiw.unset(pick_of_color_once);
        std::vector<int> avoid;
        for (int col = 1; col <= full; ++col)
            if (col != once_on_matching) avoid.push_back(col);
        PartialEdgeColoring f =
            oracle_extend_colorset_checked(phiw, avoid, "freed copy extension");
        for (int b = 0; b < base.edge_count(); ++b) {
            int col = f.color(b);
            if (is_pick[b] && b != pick_of_color_once) col = once_on_matching;
            work.set(dec.copy_edges[s][b], col);
        }
        copy_colors_across(work, dec, s);
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    }

    // Every color on the matching repeats, so a single color covers all
    // matching edges. Drop the pins, extend the copy's own edges within the
    // first n colors, and push the edges of that color next to matched
    // vertices up to the extra color.
    for (std::size_t i = 1; i < mcolor.size(); ++i)
        require_step(mcolor[i] == mcolor[0], "expected a single repeated matching color");
    const int conly = mcolor[0];
    std::ostringstream msg;
    msg << "blocked copy: color " << conly
        << " covers the matching; dropping the pins and recoloring its class next to "
           "matched vertices";
    trace.note(msg.str());
    std::vector<char> is_covered(base.vertex_count, 0);
    for (int v : covered) is_covered[v] = 1;
    PartialEdgeColoring rest = side_restriction(norm, dec, s, n);
    PartialEdgeColoring f = oracle_extend_checked(rest, "unpinned copy extension");
    for (int b = 0; b < base.edge_count(); ++b) {
        int col = f.color(b);
        auto [x, y] = base.endpoints(b);
        if (col == conly && (is_covered[x] || is_covered[y])) col = full;
        work.set(dec.copy_edges[s][b], col);
    }
    copy_colors_across(work, dec, s);
    fill_matching_smallest_missing(work, dec);
    return work.coloring();
}

}  // namespace detail

// Extends a partial proper edge coloring of the prism over the canonical
// balanced complete bipartite graph K_{n,n}, with at most n precolored edges
// and palette n+1.
inline ExtenderOutcome extend_knn_prism(int n, const PartialEdgeColoring& c) {
    if (n < 2) throw std::invalid_argument("extend_knn_prism: n must be at least 2");
    Graph base = build_complete_bipartite(n, n);
    PrismContext ctx = analyze_prism(base, c, n + 1, n, "extend_knn_prism");
    if (n == 2) {
        // K_{2,2} is a 4-cycle on these labels and the bounds agree, so the
        // even cycle routine settles this case.
        ExtenderOutcome out = extend_cycle_prism(base, c);
        out.trace.notes.insert(out.trace.notes.begin(),
                               "K_{2,2} is a 4-cycle; using the even cycle routine");
        return out;
    }
    return run_prism_extender(c, n, "extend_knn_prism",
                              [&](const PartialEdgeColoring& norm, ExtensionTrace& trace) {
                                  return detail::knn_prism_body(ctx, n, norm, trace);
                              });
}

}  // namespace pex
