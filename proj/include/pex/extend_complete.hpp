#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
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

inline std::vector<int> colors_except(int palette, int avoid) {
    std::vector<int> out;
    for (int col = 1; col <= palette; ++col)
        if (col != avoid) out.push_back(col);
    return out;
}

// One helper edge for the matched vertices of a complete-graph prism:
// `base_edge` is pinned at `color` during a copy extension and recolored with
// the top color afterwards, which leaves each end missing exactly its
// matching color. `ends` lists the matched base vertices the pick retires
// (two when it joins a pair of equally colored matched vertices).
struct CoverPick {
    int base_edge;
    int color;
    std::vector<int> ends;
};

// Picks helper edges covering every matched vertex (base vertices whose
// matching edge is precolored) so that the picks form a matching, both copies
// of every pick are uncolored, and no pick touches a copy edge precolored
// with the color it will be pinned with. With `allow_pairs` a pick may join
// two matched vertices whose matching edges agree in color, retiring both at
// once. Returns nullopt when no such set exists.
inline std::optional<std::vector<CoverPick>> find_cover_matching(const PrismContext& ctx,
                                                                 const PartialEdgeColoring& current,
                                                                 const std::vector<int>& covered,
                                                                 const std::vector<int>& match_color,
                                                                 bool allow_pairs) {
    const Graph& base = ctx.dec.base;
    std::vector<int> gamma(base.vertex_count, 0);
    std::vector<char> is_covered(base.vertex_count, 0);
    for (std::size_t i = 0; i < covered.size(); ++i) {
        is_covered[covered[i]] = 1;
        gamma[covered[i]] = match_color[i];
    }
    const PartialEdgeColoring phi[2] = {
        side_restriction(current, ctx.dec, 0, current.palette()),
        side_restriction(current, ctx.dec, 1, current.palette()),
    };
    std::vector<char> used(base.vertex_count, 0);
    std::vector<CoverPick> picks;

    auto usable = [&](int be, int u, int w, int g) {
        for (int side = 0; side < 2; ++side) {
            if (current.is_colored(ctx.dec.copy_edges[side][be])) return false;
            if (color_mask_at(phi[side], u) >> g & 1) return false;
            if (color_mask_at(phi[side], w) >> g & 1) return false;
        }
        return true;
    };

    std::function<bool(std::size_t)> pick = [&](std::size_t i) -> bool {
        while (i < covered.size() && used[covered[i]]) ++i;
        if (i == covered.size()) return true;
        const int u = covered[i];
        const int g = gamma[u];
        // Pairing two matched vertices first keeps the pinned instance small.
        for (int pass = 0; pass < 2; ++pass) {
            if (pass == 0 && !allow_pairs) continue;
            for (int be : base.incident_edges[u]) {
                const int w = base.other_endpoint(be, u);
                if (used[w]) continue;
                if (pass == 0 ? (!is_covered[w] || gamma[w] != g) : is_covered[w] != 0) continue;
                if (!usable(be, u, w, g)) continue;
                used[u] = used[w] = 1;
                CoverPick p{be, g, {u}};
                if (pass == 0) p.ends.push_back(w);
                picks.push_back(std::move(p));
                if (pick(i + 1)) return true;
                used[u] = used[w] = 0;
                picks.pop_back();
            }
        }
        return false;
    };
    if (!pick(0)) return std::nullopt;
    return picks;
}

inline std::string describe_cover_picks(const Graph& base, const std::vector<CoverPick>& picks) {
    std::ostringstream msg;
    msg << "helper edges:";
    for (const CoverPick& p : picks) {
        auto [x, y] = base.endpoints(p.base_edge);
        msg << " (" << x << "," << y << ") pinned " << p.color;
        if (p.ends.size() == 2) msg << " for the matched pair " << p.ends[0] << "," << p.ends[1];
        else msg << " for matched vertex " << p.ends[0];
    }
    return msg.str();
}

// Extends the listed copies with colors 1..chi while the picks hold their
// matching colors, then writes the results with every pick recolored to
// `extra` and fills the open matching edges. All copy extensions are found
// before anything is written, so a refusal leaves the working coloring
// untouched.
inline bool try_assemble_pins(TracedColoring& work, const PrismContext& ctx,
                              const std::vector<CoverPick>& picks, const std::vector<int>& sides,
                              bool mirror, int chi, int extra) {
    const PrismDecomposition& dec = ctx.dec;
    std::vector<char> is_pick(dec.base.edge_count(), 0);
    for (const CoverPick& p : picks) is_pick[p.base_edge] = 1;
    std::vector<PartialEdgeColoring> done;
    for (int side : sides) {
        PartialEdgeColoring phi = side_restriction(work.coloring(), dec, side, chi);
        for (const CoverPick& p : picks) phi.set(p.base_edge, p.color);
        ExtensionOutcome out = extend_exhaustive(phi);
        if (out.status != ExtendStatus::Extended) return false;
        done.push_back(*out.coloring);
    }
    for (std::size_t i = 0; i < sides.size(); ++i)
        for (int b = 0; b < dec.base.edge_count(); ++b)
            work.set(dec.copy_edges[sides[i]][b], is_pick[b] ? extra : done[i].color(b));
    if (mirror) copy_colors_across(work, dec, sides.front());
    fill_matching_smallest_missing(work, dec);
    return true;
}

// Keeps the class of `avoid`-colored edges fixed and extends every other
// product edge with the remaining colors. Sound whenever that class is large
// enough to serve as one color class of a finished coloring.
inline bool try_large_class_route(TracedColoring& work, const PrismContext& ctx, int avoid) {
    const Graph& product = ctx.dec.product;
    std::vector<int> rest;
    for (int e = 0; e < product.edge_count(); ++e)
        if (work.coloring().color_if_any(e) != std::optional<int>(avoid)) rest.push_back(e);
    SubInstance sub = restrict_to_edges(work.coloring(), rest, work.palette());
    ExtensionOutcome out =
        extend_exhaustive_colorset(sub.coloring, colors_except(work.palette(), avoid));
    if (out.status != ExtendStatus::Extended) return false;
    adopt_sub_solution(work, sub, *out.coloring);
    return true;
}

// Extends one copy together with the colored matching edges as pendant
// constraints, so the copy avoids each matched vertex's matching color.
// `strip` (0 = keep everything) temporarily uncolors that color's copy edges
// and restores them afterwards; matching edges whose color falls outside
// `colorset` stay out of the sub-instance, their avoidance being implied by
// the colorset itself. On refusal the working coloring is left as found.
inline bool try_pendant_copy_route(TracedColoring& work, const PrismContext& ctx, int side,
                                   int strip, const std::vector<int>& colorset) {
    const PrismDecomposition& dec = ctx.dec;
    std::vector<int> stripped;
    if (strip > 0) {
        for (int b = 0; b < dec.base.edge_count(); ++b) {
            int e = dec.copy_edges[side][b];
            if (work.coloring().color_if_any(e) == std::optional<int>(strip)) stripped.push_back(e);
        }
        for (int e : stripped) work.unset(e);
    }
    std::vector<int> edges = dec.copy_edges[side];
    for (int e : ctx.colored_matching) {
        int col = work.coloring().color(e);
        if (std::find(colorset.begin(), colorset.end(), col) != colorset.end())
            edges.push_back(e);
    }
    SubInstance sub = restrict_to_edges(work.coloring(), edges, work.palette());
    ExtensionOutcome out = extend_exhaustive_colorset(sub.coloring, colorset);
    if (out.status != ExtendStatus::Extended) {
        for (int e : stripped) work.set(e, strip);
        return false;
    }
    adopt_sub_solution(work, sub, *out.coloring);
    for (int e : stripped) work.set(e, strip);
    return true;
}

// Even order 2n, palette 2n, at most n precolored edges.
inline PartialEdgeColoring complete_even_body(const PrismContext& ctx, int n,
                                              const PartialEdgeColoring& norm,
                                              ExtensionTrace& trace) {
    const PrismDecomposition& dec = ctx.dec;
    const Graph& base = dec.base;
    const int chi = 2 * n - 1;
    const int full = 2 * n;
    TracedColoring work(norm, trace);
    const std::vector<int> lower = colors_except(full, full);

    const int in1 = ctx.colored_in_copy(0);
    const int in2 = ctx.colored_in_copy(1);
    const int in_m = ctx.colored_in_matching();

    if (in_m == 0) {
        const int loaded = in1 == n ? 0 : (in2 == n ? 1 : -1);
        if (loaded >= 0) {
            PartialEdgeColoring phi = side_restriction(norm, dec, loaded, chi);
            ConditionReport why = complete_even_condition(n, phi);
            if (!why.fired()) {
                trace.note("one copy holds every precolored edge; it extends within the "
                           "first 2n-1 colors, the other copy mirrors it and the matching "
                           "takes the top color");
                extend_edges_in_place(work, dec.copy_edges[loaded], lower, "loaded copy extension");
                copy_colors_across(work, dec, loaded);
                for (int e : dec.matching_edges) work.set(e, full);
            } else {
                const int eprime = dec.copy_edges[loaded][*why.witness.special_edge];
                const int cprime = *why.witness.special_color;
                trace.note("the loaded copy shows the near-matching pattern; its odd edge "
                           "out steps aside, the copy extends without that color, and the "
                           "edge returns");
                work.unset(eprime);
                extend_edges_in_place(work, dec.copy_edges[loaded], colors_except(full, cprime),
                                      "unblocked copy extension");
                work.set(eprime, cprime);
                copy_colors_across(work, dec, loaded);
                fill_matching_smallest_missing(work, dec);
            }
        } else {
            trace.note("no matching edge precolored; each copy extends within the first "
                       "2n-1 colors and the matching takes the top color");
            for (int side = 0; side < 2; ++side)
                extend_edges_in_place(work, dec.copy_edges[side], lower,
                                      side == 0 ? "first copy extension" : "second copy extension");
            for (int e : dec.matching_edges) work.set(e, full);
        }
        return work.coloring();
    }

    std::vector<int> covered, mcolor;
    for (int v = 0; v < base.vertex_count; ++v)
        if (std::optional<int> col = norm.color_if_any(dec.matching_edges[v])) {
            covered.push_back(v);
            mcolor.push_back(*col);
        }

    std::optional<std::vector<CoverPick>> picks =
        find_cover_matching(ctx, work.coloring(), covered, mcolor, true);
    require_step(picks.has_value(), "no helper matching for the matched vertices");
    trace.note(describe_cover_picks(base, *picks));

    if (in1 >= 1 && in2 >= 1) {
        trace.note("matching and both copies precolored; each copy extends with its helper "
                   "edges pinned, which then take the top color");
        require_step(try_assemble_pins(work, ctx, *picks, {0, 1}, false, chi, full),
                     "pinned copy refuses a guaranteed extension");
        return work.coloring();
    }

    const int s = in2 >= 1 ? 1 : 0;
    if (try_assemble_pins(work, ctx, *picks, {s}, true, chi, full)) {
        trace.note("the pinned copy extends within the first 2n-1 colors; the other copy "
                   "mirrors it and the helper edges take the top color");
        return work.coloring();
    }

    // The pinned instance refused, so it must show the near-matching pattern.
    PartialEdgeColoring pinned = side_restriction(norm, dec, s, chi);
    for (const CoverPick& p : *picks) pinned.set(p.base_edge, p.color);
    ConditionReport why = complete_even_condition(n, pinned);
    require_step(why.fired(), "pinned copy blocked without the near-matching pattern");
    const int eprime = *why.witness.special_edge;
    const int cprime = *why.witness.special_color;
    std::vector<char> is_pick(base.edge_count(), 0);
    for (const CoverPick& p : *picks) is_pick[p.base_edge] = 1;

    if (is_pick[eprime]) {
        trace.note("pinned copy blocked; the odd helper edge out is released, the copy "
                   "extends without its color, and that color moves to the other helpers");
        PartialEdgeColoring freed = pinned.with_palette(full);
        freed.unset(eprime);
        PartialEdgeColoring f = oracle_extend_colorset_checked(freed, colors_except(full, cprime),
                                                               "released helper extension");
        for (int b = 0; b < base.edge_count(); ++b) {
            int target = f.color(b);
            if (is_pick[b] && b != eprime) target = cprime;
            work.set(dec.copy_edges[s][b], target);
        }
        copy_colors_across(work, dec, s);
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    }

    // The odd edge out is a genuine precolored copy edge, so every matching
    // color equals the majority color: drop the pins, extend the bare
    // restriction, and lift its majority edges at matched vertices.
    const int major = *why.witness.matching_color;
    for (int g : mcolor) require_step(g == major, "blocked copy with a stray matching color");
    trace.note("pinned copy blocked by a precolored edge; the pins are dropped and the "
               "majority-colored edges at matched vertices lift to the top color");
    PartialEdgeColoring rest = side_restriction(norm, dec, s, chi);
    PartialEdgeColoring f = oracle_extend_checked(rest, "bare copy extension");
    std::vector<char> is_covered(base.vertex_count, 0);
    for (int v : covered) is_covered[v] = 1;
    for (int b = 0; b < base.edge_count(); ++b) {
        auto [x, y] = base.endpoints(b);
        int target = f.color(b);
        if (target == major && (is_covered[x] || is_covered[y])) target = full;
        work.set(dec.copy_edges[s][b], target);
    }
    copy_colors_across(work, dec, s);
    fill_matching_smallest_missing(work, dec);
    return work.coloring();
}

// Odd Case 1 rescue: the helper search can only fail when exactly one
// matching edge is precolored and the copies spread its color over
// independent positions blocking every neighbor. Completing those positions
// into a perfect matching that misses only the matched vertex pins the whole
// color class away from it on both sides at once.
inline void odd_single_matched_vertex(TracedColoring& work, const PrismContext& ctx, int n, int a,
                                      const std::vector<int>& covered, ExtensionTrace& trace) {
    const PrismDecomposition& dec = ctx.dec;
    const Graph& base = dec.base;
    const int chi = 2 * n - 1;
    require_step(covered.size() == 1, "helper search failed with several matched vertices");
    const int u = covered.front();

    std::vector<char> seen(base.vertex_count, 0);
    std::vector<char> blocked(base.edge_count(), 0);
    std::vector<int> cls;
    for (int b = 0; b < base.edge_count(); ++b) {
        bool colored_a = false, colored_any = false;
        for (int side = 0; side < 2; ++side)
            if (std::optional<int> col = work.coloring().color_if_any(dec.copy_edges[side][b])) {
                colored_any = true;
                if (*col == a) colored_a = true;
            }
        if (colored_a) {
            auto [x, y] = base.endpoints(b);
            require_step(x != u && y != u, "matching-colored copy edge at the matched vertex");
            require_step(!seen[x] && !seen[y], "matching-colored positions are not independent");
            seen[x] = seen[y] = 1;
            cls.push_back(b);
        } else if (colored_any) {
            blocked[b] = 1;
        }
    }

    std::vector<int> rest;
    for (int v = 0; v < base.vertex_count; ++v)
        if (v != u && !seen[v]) rest.push_back(v);
    std::function<bool()> complete = [&]() -> bool {
        int x = -1;
        for (int v : rest)
            if (!seen[v]) {
                x = v;
                break;
            }
        if (x < 0) return true;
        seen[x] = 1;
        for (int y : rest) {
            if (seen[y]) continue;
            const int b = base.edge_id(x, y);
            if (b < 0 || blocked[b]) continue;
            seen[y] = 1;
            cls.push_back(b);
            if (complete()) return true;
            seen[y] = 0;
            cls.pop_back();
        }
        seen[x] = 0;
        return false;
    };
    require_step(complete(), "the matching color class cannot avoid the matched vertex");

    trace.note("helper search failed; the matching color's positions complete into a "
               "perfect matching missing only the matched vertex, pinned on both sides");
    for (int side = 0; side < 2; ++side) {
        PartialEdgeColoring phi = side_restriction(work.coloring(), dec, side, chi);
        for (int b : cls) phi.set(b, a);
        PartialEdgeColoring f = oracle_extend_checked(phi, "pinned class extension");
        write_side(work, dec, side, f);
    }
    fill_matching_smallest_missing(work, dec);
}

// Last structural resorts for the odd cases whose counting arguments stop
// short of a guarantee: helper pins, fixing a well-used color class, and
// pendant routes stripping one color at a time. Each attempt leaves the
// working coloring untouched on refusal.
inline bool odd_escape_ladder(TracedColoring& work, const PrismContext& ctx,
                              const std::vector<int>& covered, const std::vector<int>& mcolor,
                              int chi, int full, ExtensionTrace& trace) {
    const PrismDecomposition& dec = ctx.dec;
    const int s = ctx.colored_in_copy(1) > ctx.colored_in_copy(0) ? 1 : 0;
    const bool other_clean = ctx.colored_in_copy(1 - s) == 0;

    if (std::optional<std::vector<CoverPick>> picks =
            find_cover_matching(ctx, work.coloring(), covered, mcolor, true)) {
        const std::vector<int> sides = other_clean ? std::vector<int>{s} : std::vector<int>{0, 1};
        if (try_assemble_pins(work, ctx, *picks, sides, other_clean, chi, full)) {
            trace.note("helper edges pinned on the loaded side carried the extension");
            trace.note(describe_cover_picks(dec.base, *picks));
            return true;
        }
    }

    std::vector<std::pair<int, int>> census;  // (count, color), busiest first
    {
        std::vector<int> counts(full + 1, 0);
        for (int e : work.coloring().colored_edges()) ++counts[work.coloring().color(e)];
        for (int col = 1; col <= full; ++col)
            if (counts[col] > 0) census.push_back({counts[col], col});
        std::sort(census.begin(), census.end(), [](auto& lhs, auto& rhs) {
            return lhs.first != rhs.first ? lhs.first > rhs.first : lhs.second < rhs.second;
        });
    }
    for (auto [count, col] : census) {
        if (count < 2) break;
        if (try_large_class_route(work, ctx, col)) {
            trace.note("fixing the best-used color class and coloring around it carried the "
                       "extension");
            return true;
        }
    }

    bool mirrorable = true;
    for (int b = 0; b < dec.base.edge_count() && mirrorable; ++b) {
        std::optional<int> far = work.coloring().color_if_any(dec.copy_edges[1 - s][b]);
        if (far && work.coloring().color_if_any(dec.copy_edges[s][b]) != far) mirrorable = false;
    }
    if (mirrorable) {
        if (try_pendant_copy_route(work, ctx, s, 0, colors_except(full, full))) {
            trace.note("pendant route over the first 2n-1 colors carried the extension");
            copy_colors_across(work, dec, s);
            fill_matching_smallest_missing(work, dec);
            return true;
        }
        for (auto [count, col] : census) {
            if (try_pendant_copy_route(work, ctx, s, col, colors_except(full, col))) {
                trace.note("pendant route avoiding one used color carried the extension");
                copy_colors_across(work, dec, s);
                fill_matching_smallest_missing(work, dec);
                return true;
            }
        }
    }
    return false;
}

// Odd order 2n-1, palette 2n, at most n+1 precolored edges.
inline PartialEdgeColoring complete_odd_body(const PrismContext& ctx, int n,
                                             const PartialEdgeColoring& norm,
                                             ExtensionTrace& trace) {
    const PrismDecomposition& dec = ctx.dec;
    const Graph& base = dec.base;
    const int chi = 2 * n - 1;
    const int full = 2 * n;
    TracedColoring work(norm, trace);
    const std::vector<int> lower = colors_except(full, full);

    const int in1 = ctx.colored_in_copy(0);
    const int in2 = ctx.colored_in_copy(1);
    const int in_m = ctx.colored_in_matching();

    if (in_m == 0) {
        const int loaded = in1 == n + 1 ? 0 : (in2 == n + 1 ? 1 : -1);
        if (loaded >= 0) {
            PartialEdgeColoring phi = side_restriction(norm, dec, loaded, chi);
            ConditionReport why = complete_odd_condition(n, phi);
            if (!why.fired()) {
                trace.note("one copy holds every precolored edge and extends within the "
                           "first 2n-1 colors; the other copy mirrors it");
                extend_edges_in_place(work, dec.copy_edges[loaded], lower, "loaded copy extension");
            } else {
                trace.note(why.condition == Condition::CompleteOddTriangle
                               ? "the loaded copy shows the spread-and-triangle pattern, so "
                                 "it extends over the whole palette instead"
                               : "the loaded copy pins two color classes to the same missing "
                                 "vertex, so it extends over the whole palette instead");
                extend_edges_in_place(work, dec.copy_edges[loaded], {}, "blocked copy extension");
            }
            copy_colors_across(work, dec, loaded);
            fill_matching_smallest_missing(work, dec);
        } else if (in1 >= 1 && in2 >= 1) {
            trace.note("no matching edge precolored; each copy extends within the first "
                       "2n-1 colors and the matching takes the top color");
            for (int side = 0; side < 2; ++side)
                extend_edges_in_place(work, dec.copy_edges[side], lower,
                                      side == 0 ? "first copy extension" : "second copy extension");
            for (int e : dec.matching_edges) work.set(e, full);
        } else {
            const int s = in1 >= 1 ? 0 : 1;
            trace.note("no matching edge precolored; the loaded copy extends within the "
                       "first 2n-1 colors and the other copy mirrors it");
            extend_edges_in_place(work, dec.copy_edges[s], lower, "loaded copy extension");
            copy_colors_across(work, dec, s);
            fill_matching_smallest_missing(work, dec);
        }
        return work.coloring();
    }

    std::vector<int> covered, mcolor;
    for (int v = 0; v < base.vertex_count; ++v)
        if (std::optional<int> col = norm.color_if_any(dec.matching_edges[v])) {
            covered.push_back(v);
            mcolor.push_back(*col);
        }

    // A color on n or more of the n+1 precolored edges nearly fills a class;
    // fix that class and color everything else around it.
    {
        std::vector<int> counts(full + 1, 0);
        for (int e : norm.colored_edges()) ++counts[norm.color(e)];
        int heavy = 0;
        for (int col = 1; col <= full; ++col)
            if (counts[col] >= n && (heavy == 0 || counts[col] > counts[heavy])) heavy = col;
        if (norm.colored_count() == n + 1 && heavy > 0) {
            if (try_large_class_route(work, ctx, heavy)) {
                trace.note("one color already fills most of a class; everything else was "
                           "colored around that class");
                return work.coloring();
            }
            trace.note("large class route refused; continuing with the case analysis");
        }
    }

    std::set<int> mset(mcolor.begin(), mcolor.end());
    std::set<int> cset;
    for (int side = 0; side < 2; ++side)
        for (int e : ctx.colored_copy[side]) cset.insert(norm.color(e));

    // Case 1: a single matching color.
    if (mset.size() == 1) {
        const int a = mcolor.front();
        if (in1 == 0 || in2 == 0) {
            const int s = in1 >= 1 ? 0 : (in2 >= 1 ? 1 : 0);
            trace.note("every matching color agrees; that color steps out of the loaded "
                       "copy, the copy extends without it, and the edges return");
            std::vector<int> stripped;
            for (int e : ctx.colored_copy[s])
                if (norm.color(e) == a) stripped.push_back(e);
            for (int e : stripped) work.unset(e);
            extend_edges_in_place(work, dec.copy_edges[s], colors_except(full, a),
                                  "stripped copy extension");
            for (int e : stripped) work.set(e, a);
            copy_colors_across(work, dec, s);
            fill_matching_smallest_missing(work, dec);
            return work.coloring();
        }
        std::optional<std::vector<CoverPick>> picks =
            find_cover_matching(ctx, work.coloring(), covered, mcolor, true);
        if (picks) {
            trace.note(describe_cover_picks(base, *picks));
            require_step(try_assemble_pins(work, ctx, *picks, {0, 1}, false, chi, full),
                         "pinned copy refuses a guaranteed extension");
            return work.coloring();
        }
        odd_single_matched_vertex(work, ctx, n, a, covered, trace);
        return work.coloring();
    }

    if (cset.size() <= 1) {
        // Case 2: several matching colors, at most one copy color.
        const int c = cset.empty() ? 0 : *cset.begin();
        std::vector<int> m_count(full + 1, 0);
        for (int g : mcolor) ++m_count[g];
        std::vector<int> repeated;
        for (int col = 1; col <= full; ++col)
            if (col != c && m_count[col] >= 2) repeated.push_back(col);

        if (in1 == 0 && in2 == 0) {
            if (repeated.size() <= 1) {
                const int avoid = repeated.empty() ? 0 : repeated.front();
                if (try_pendant_copy_route(
                        work, ctx, 0, 0,
                        avoid == 0 ? lower : colors_except(full, avoid))) {
                    trace.note("matching colors nearly distinct; the copy was colored "
                               "against the pendant matching edges and mirrored");
                    copy_colors_across(work, dec, 0);
                    fill_matching_smallest_missing(work, dec);
                    return work.coloring();
                }
            }
        } else if (in1 == 0 || in2 == 0) {
            const int s = in1 >= 1 ? 0 : 1;
            if (repeated.empty()) {
                if (try_pendant_copy_route(work, ctx, s, c, colors_except(full, c))) {
                    trace.note("matching colors distinct apart from the copy color; that "
                               "color stepped aside for a pendant-constrained extension "
                               "and returned");
                    copy_colors_across(work, dec, s);
                    fill_matching_smallest_missing(work, dec);
                    return work.coloring();
                }
            } else if (repeated.size() == 1) {
                int c_on_copy = 0;
                for (int e : ctx.colored_copy[s])
                    if (norm.color(e) == c) ++c_on_copy;
                if (c_on_copy <= 1 &&
                    try_pendant_copy_route(work, ctx, s, 0,
                                           colors_except(full, repeated.front()))) {
                    trace.note("one matching color repeats; the copy avoided it while "
                               "keeping its own colors and the pendant matching edges");
                    copy_colors_across(work, dec, s);
                    fill_matching_smallest_missing(work, dec);
                    return work.coloring();
                }
            }
        } else {
            // Both copies carry the single color c. When every precolored
            // position is independent the far copy folds onto the near one
            // and the one-sided argument runs; otherwise pin helpers on both
            // sides.
            std::vector<int> fold;
            std::vector<char> touched(base.vertex_count, 0);
            bool foldable = true;
            for (int b = 0; b < base.edge_count() && foldable; ++b) {
                if (!norm.is_colored(dec.copy_edges[0][b]) &&
                    !norm.is_colored(dec.copy_edges[1][b]))
                    continue;
                auto [x, y] = base.endpoints(b);
                if (touched[x] || touched[y]) foldable = false;
                touched[x] = touched[y] = 1;
                fold.push_back(b);
            }
            if (foldable) {
                trace.note("both copies carry the same color on independent positions; the "
                           "far copy folds onto the near one");
                for (int b : fold) work.set(dec.copy_edges[0][b], c);
                if (repeated.empty() &&
                    try_pendant_copy_route(work, ctx, 0, c, colors_except(full, c))) {
                    trace.note("folded copy extended around its color with the matching "
                               "edges pendant");
                    copy_colors_across(work, dec, 0);
                    fill_matching_smallest_missing(work, dec);
                    return work.coloring();
                }
            } else {
                std::optional<std::vector<CoverPick>> picks =
                    find_cover_matching(ctx, work.coloring(), covered, mcolor, true);
                if (picks) {
                    trace.note(describe_cover_picks(base, *picks));
                    require_step(try_assemble_pins(work, ctx, *picks, {0, 1}, false, chi, full),
                                 "pinned copy refuses a guaranteed extension");
                    return work.coloring();
                }
            }
        }
    } else if (in1 >= 1 && in2 >= 1) {
        // Case 3 with both copies loaded: the per-copy load stays at n, so
        // pinned helpers extend whenever they exist.
        std::optional<std::vector<CoverPick>> picks =
            find_cover_matching(ctx, work.coloring(), covered, mcolor, true);
        if (picks) {
            trace.note(describe_cover_picks(base, *picks));
            require_step(try_assemble_pins(work, ctx, *picks, {0, 1}, false, chi, full),
                         "pinned copy refuses a guaranteed extension");
            return work.coloring();
        }
    }

    require_step(odd_escape_ladder(work, ctx, covered, mcolor, chi, full, trace),
                 "no structural route fits this pattern");
    return work.coloring();
}

}  // namespace detail

// Extends a partial proper edge coloring of K_m square K_2 to a total proper
// coloring with one color more than the chromatic index of K_m. Even orders
// 2n admit up to n precolored edges, odd orders 2n-1 up to n+1.
inline ExtenderOutcome extend_complete_prism(int m, const PartialEdgeColoring& c) {
    if (m < 3) throw std::invalid_argument("extend_complete_prism: order must be at least 3");
    const bool even = m % 2 == 0;
    const int n = even ? m / 2 : (m + 1) / 2;
    const int maxpre = even ? n : n + 1;
    if (!even && c.palette() == 2 * n - 1)
        throw std::invalid_argument(
            "extend_complete_prism: odd orders need the full 2n-color palette; with 2n-1 "
            "colors even two precolored edges can block");
    Graph base = build_complete(m);
    PrismContext ctx = analyze_prism(base, c, 2 * n, maxpre, "extend_complete_prism");
    if (m == 3) {
        ExtenderOutcome out = extend_cycle_prism(base, c);
        out.trace.notes.insert(out.trace.notes.begin(),
                               "K_3 is a triangle; using the odd cycle routine");
        return out;
    }
    return run_prism_extender(c, maxpre, "extend_complete_prism",
                              [&](const PartialEdgeColoring& norm, ExtensionTrace& trace) {
                                  return even ? detail::complete_even_body(ctx, n, norm, trace)
                                              : detail::complete_odd_body(ctx, n, norm, trace);
                              });
}

}  // namespace pex
