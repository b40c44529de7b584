#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pex/chromatic.hpp"
#include "pex/coloring.hpp"
#include "pex/extend_common.hpp"
#include "pex/graph.hpp"
#include "pex/oracle.hpp"
#include "pex/trace.hpp"

namespace pex {

// Extension backend for the base graph of a prism. The caller certifies that
// every proper precoloring of at most k independent edges of the base graph
// extends to a total proper coloring within the coloring's own palette, and
// `extend` realizes one such extension (nullopt on failure, which the prism
// routine treats as a broken certificate).
struct BaseExtender {
    int k = 0;
    std::function<std::optional<PartialEdgeColoring>(const PartialEdgeColoring&)> extend;
};

// Exact-search backend. The search itself never certifies the (g, k)
// property; asserting it is still on the caller.
inline BaseExtender oracle_base_extender(int k) {
    BaseExtender b;
    b.k = k;
    b.extend = [](const PartialEdgeColoring& c) -> std::optional<PartialEdgeColoring> {
        ExtensionOutcome out = extend_exhaustive(c);
        if (out.status != ExtendStatus::Extended) return std::nullopt;
        return out.coloring;
    };
    return b;
}

namespace detail {

// Extends `pre` (a base-graph precoloring at the product palette whose colors
// all lie in `allowed`, |allowed| = the base palette the certificate speaks
// about) to a total coloring using only colors from `allowed`. The base
// extender works on 1..|allowed|, so colors are renamed there and back.
inline PartialEdgeColoring base_extend_within(const BaseExtender& base, const Graph& g,
                                              const std::vector<int>& allowed,
                                              const PartialEdgeColoring& pre,
                                              const std::string& what) {
    const int chi = static_cast<int>(allowed.size());
    std::vector<int> fwd(pre.palette() + 1, 0);
    for (int i = 0; i < chi; ++i) fwd[allowed[i]] = i + 1;
    PartialEdgeColoring renamed(g, chi);
    for (int e : pre.colored_edges()) {
        require_step(fwd[pre.color(e)] > 0, what + ": precolored color outside the allowed set");
        renamed.set(e, fwd[pre.color(e)]);
    }
    require_step(static_cast<bool>(base.extend), what + ": base extender has no callable");
    std::optional<PartialEdgeColoring> got = base.extend(renamed);
    require_step(got.has_value(), what + ": base extension failed");
    require_step(got->graph() == g && got->palette() == chi,
                 what + ": base extension changed the instance shape");
    require_step(got->colored_count() == g.edge_count(),
                 what + ": base extension left edges uncolored");
    require_step(is_proper(*got), what + ": base extension is not proper");
    require_step(agrees_with(*got, renamed), what + ": base extension moved a precolored edge");
    PartialEdgeColoring out(g, pre.palette());
    for (int e = 0; e < g.edge_count(); ++e) out.set(e, allowed[got->color(e) - 1]);
    return out;
}

// Colors 1..t except `avoid` (avoid == 0 keeps all of them).
inline std::vector<int> palette_slice(int t, int avoid) {
    std::vector<int> out;
    out.reserve(t);
    for (int col = 1; col <= t; ++col)
        if (col != avoid) out.push_back(col);
    return out;
}

// For each target base vertex, picks one incident base edge whose far end
// avoids `blocked_vertex` and the ends of earlier picks, and which passes
// `edge_ok`; the picks form a matching pinned at the targets. First fit in
// canonical adjacency order, with backtracking.
inline bool pick_pinned_matching(const Graph& base, const std::vector<int>& targets,
                                 std::vector<char> blocked_vertex,
                                 const std::function<bool(int)>& edge_ok,
                                 std::vector<int>& picked) {
    picked.assign(targets.size(), -1);
    std::function<bool(std::size_t)> go = [&](std::size_t j) {
        if (j == targets.size()) return true;
        int v = targets[j];
        for (int e : base.incident_edges[v]) {
            auto [x, y] = base.endpoints(e);
            int w = x == v ? y : x;
            if (blocked_vertex[w]) continue;
            if (edge_ok && !edge_ok(e)) continue;
            picked[j] = e;
            blocked_vertex[w] = 1;
            if (go(j + 1)) return true;
            blocked_vertex[w] = 0;
            picked[j] = -1;
        }
        return false;
    };
    return go(0);
}

}  // namespace detail

// Extends a precoloring of at most k+1 independent edges of the prism over a
// regular base graph to a total proper coloring with one color beyond the
// base chromatic index. `base` certifies that precolorings of at most k
// independent base edges extend within the base palette; the theorem needs
// k below the degree for triangle-free bases, and below half the degree
// otherwise.
inline ExtenderOutcome extend_regular_independent_prism(const Graph& g,
                                                        const PartialEdgeColoring& c,
                                                        const BaseExtender& base) {
    const std::string who = "extend_regular_independent_prism";
    if (g.edge_count() == 0) throw std::invalid_argument(who + ": base graph has no edges");
    if (!is_regular(g)) throw std::invalid_argument(who + ": base graph is not regular");
    const int delta = max_degree(g);
    const int k = base.k;
    if (k < 0) throw std::invalid_argument(who + ": negative certified bound");
    if (!(is_triangle_free(g) ? k < delta : 2 * k < delta)) {
        std::ostringstream msg;
        msg << who << ": certified bound " << k << " too large for degree " << delta
            << (is_triangle_free(g) ? " (triangle-free needs k < degree)"
                                    : " (triangles need k below half the degree)");
        throw std::invalid_argument(msg.str());
    }
    if (!base.extend) throw std::invalid_argument(who + ": base extender has no callable");
    ChromaticIndexResult ci = chromatic_index(g);
    if (ci.cls == ChromaticClass::Unknown)
        throw std::invalid_argument(who + ": base chromatic index undecided within budget");
    const int chi = ci.chi;
    PrismContext ctx = analyze_prism(g, c, chi + 1, k + 1, who);
    {
        std::vector<int> colored = c.colored_edges();
        for (std::size_t i = 0; i < colored.size(); ++i) {
            auto [a1, b1] = ctx.dec.product.endpoints(colored[i]);
            for (std::size_t j = i + 1; j < colored.size(); ++j) {
                auto [a2, b2] = ctx.dec.product.endpoints(colored[j]);
                if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2)
                    throw std::invalid_argument(who + ": precolored edges are not independent");
            }
        }
    }

    return run_prism_extender(c, k + 1, who, [&](const PartialEdgeColoring& norm,
                                                 ExtensionTrace& trace) {
        const PrismDecomposition& dec = ctx.dec;
        const Graph& bg = dec.base;
        const int full = chi + 1;
        TracedColoring work(norm, trace);

        const std::vector<int>& em = ctx.colored_matching;
        const int in1 = ctx.colored_in_copy(0);
        const int in2 = ctx.colored_in_copy(1);

        // Base vertices touched by any precolored edge.
        std::vector<char> blocked(bg.vertex_count, 0);
        for (int s = 0; s < 2; ++s)
            for (int e : ctx.colored_copy[s]) {
                auto [u, v] = dec.product.endpoints(e);
                blocked[dec.base_vertex(u)] = 1;
                blocked[dec.base_vertex(v)] = 1;
            }
        std::vector<int> m_vertices, m_colors;
        for (int e : em) {
            int v = dec.base_vertex(dec.product.endpoints(e).first);
            m_vertices.push_back(v);
            m_colors.push_back(norm.color(e));
            blocked[v] = 1;
        }

        if (em.empty() && in1 > 0 && in2 > 0) {
            trace.note("both copies hold precolored edges; each extends within the first " +
                       std::to_string(chi) + " colors and the matching takes the top color");
            for (int s = 0; s < 2; ++s) {
                PartialEdgeColoring phi = side_restriction(norm, dec, s, full);
                PartialEdgeColoring psi = detail::base_extend_within(
                    base, bg, detail::palette_slice(chi, 0), phi, "copy extension");
                write_side(work, dec, s, psi);
            }
            for (int e : dec.matching_edges) work.set(e, full);
            return work.coloring();
        }

        if (em.empty()) {
            int s = in2 > 0 ? 1 : 0;
            trace.note("all precolored edges sit in one copy; color 1 steps aside, the copy "
                       "extends without it, the other copy mirrors, and the matching takes "
                       "missing colors");
            PartialEdgeColoring phi = side_restriction(norm, dec, s, full);
            std::vector<int> ones;
            for (int b : phi.colored_edges())
                if (phi.color(b) == 1) ones.push_back(b);
            PartialEdgeColoring stripped = phi;
            for (int b : ones) stripped.unset(b);
            PartialEdgeColoring psi = detail::base_extend_within(
                base, bg, detail::palette_slice(full, 1), stripped,
                "copy extension outside color 1");
            for (int b : ones) {
                psi.unset(b);
                psi.set(b, 1);
            }
            write_side(work, dec, s, psi);
            copy_colors_across(work, dec, s);
            fill_matching_smallest_missing(work, dec);
            return work.coloring();
        }

        if (in1 == 0 && in2 == 0) {
            // Everything on the matching. Pins absorb the colors other than 1,
            // the copy extends around them without color 1, and the pins then
            // take color 1 so the matching colors fit at their endpoints.
            trace.note("every precolored edge lies on the matching; pins in the copies absorb "
                       "the colors other than 1 and then hand them back");
            std::vector<int> targets, colors;
            for (std::size_t j = 0; j < m_vertices.size(); ++j)
                if (m_colors[j] != 1) {
                    targets.push_back(m_vertices[j]);
                    colors.push_back(m_colors[j]);
                }
            std::vector<int> picked;
            require_step(detail::pick_pinned_matching(bg, targets, blocked, nullptr, picked),
                        "pin matching for the off-color matching edges");
            PartialEdgeColoring phi(bg, full);
            for (std::size_t j = 0; j < picked.size(); ++j) phi.set(picked[j], colors[j]);
            PartialEdgeColoring psi = detail::base_extend_within(
                base, bg, detail::palette_slice(full, 1), phi, "copy extension outside color 1");
            for (int b : picked) {
                psi.unset(b);
                psi.set(b, 1);
            }
            write_side(work, dec, 0, psi);
            copy_colors_across(work, dec, 0);
            fill_matching_smallest_missing(work, dec);
            return work.coloring();
        }

        if (in1 > 0 && in2 > 0) {
            // All three parts loaded. Corresponding pins on both copies take
            // the matching colors, the copies extend within the first chi
            // colors, and the pins are lifted to the top color afterwards.
            trace.note("copies and matching all hold precolored edges; corresponding pins "
                       "absorb the matching colors and are lifted to the top color");
            auto both_free = [&](int b) {
                return !norm.is_colored(dec.copy_edges[0][b]) &&
                       !norm.is_colored(dec.copy_edges[1][b]);
            };
            std::vector<int> picked;
            require_step(detail::pick_pinned_matching(bg, m_vertices, blocked, both_free, picked),
                        "corresponding pin matching for the precolored matching edges");
            for (int s = 0; s < 2; ++s) {
                PartialEdgeColoring phi = side_restriction(norm, dec, s, full);
                for (std::size_t j = 0; j < picked.size(); ++j)
                    phi.set(picked[j], m_colors[j]);
                PartialEdgeColoring psi = detail::base_extend_within(
                    base, bg, detail::palette_slice(chi, 0), phi,
                    "copy extension within the lower palette");
                for (int b : picked) {
                    psi.unset(b);
                    psi.set(b, full);
                }
                write_side(work, dec, s, psi);
            }
            fill_matching_smallest_missing(work, dec);
            return work.coloring();
        }

        // One copy plus the matching. Pins next to the matching edges absorb
        // their colors, color 1 steps aside for the copy extension, the pins
        // with off colors hand them back to the matching and take color 1.
        int s = in2 > 0 ? 1 : 0;
        trace.note("one copy and the matching hold precolored edges; pins absorb the matching "
                   "colors, color 1 steps aside, and the off-color pins hand back");
        std::vector<int> targets, colors;
        for (std::size_t j = 0; j < m_vertices.size(); ++j)
            if (m_colors[j] != 1) {
                targets.push_back(m_vertices[j]);
                colors.push_back(m_colors[j]);
            }
        auto side_free = [&](int b) { return !norm.is_colored(dec.copy_edges[s][b]); };
        std::vector<int> picked;
        require_step(detail::pick_pinned_matching(bg, targets, blocked, side_free, picked),
                    "pin matching beside the loaded copy");
        PartialEdgeColoring phi = side_restriction(norm, dec, s, full);
        std::vector<int> ones;
        for (int b : phi.colored_edges())
            if (phi.color(b) == 1) ones.push_back(b);
        for (std::size_t j = 0; j < picked.size(); ++j) phi.set(picked[j], colors[j]);
        PartialEdgeColoring stripped = phi;
        for (int b : ones) stripped.unset(b);
        PartialEdgeColoring psi = detail::base_extend_within(
            base, bg, detail::palette_slice(full, 1), stripped, "copy extension outside color 1");
        for (int b : ones) {
            psi.unset(b);
            psi.set(b, 1);
        }
        for (int b : picked) {
            psi.unset(b);
            psi.set(b, 1);
        }
        write_side(work, dec, s, psi);
        copy_colors_across(work, dec, s);
        fill_matching_smallest_missing(work, dec);
        return work.coloring();
    });
}

}  // namespace pex
