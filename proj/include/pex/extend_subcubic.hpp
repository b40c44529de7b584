#pragma once

#include <algorithm>
#include <array>
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

namespace detail {

// Sets e to col only when no edge at either endpoint already carries col.
inline bool set_if_proper(PartialEdgeColoring& c, int e, int col) {
    auto [u, v] = c.graph().endpoints(e);
    std::uint64_t used = color_mask_at(c, u) | color_mask_at(c, v);
    if (used >> col & 1) return false;
    c.set(e, col);
    return true;
}

inline bool fill_matching_plain(PartialEdgeColoring& c, const PrismDecomposition& dec) {
    for (int e : dec.matching_edges) {
        if (c.is_colored(e)) continue;
        int pick = smallest_common_missing(c, e);
        if (pick < 0) return false;
        c.set(e, pick);
    }
    return true;
}

// One way of finishing a subcubic prism instance. Pins are placed on the copy
// before it extends, flips recolor those edges afterwards (typically to the
// color the colorset avoids), and a strip color steps aside before the
// extension and returns after it. The mirror form colors the loaded copy and
// duplicates it; the split form extends both copies independently over the
// same colorset. A plan that runs into any properness conflict fails cleanly
// so the dispatcher can try the next one.
struct CopyMoves {
    std::vector<std::pair<int, int>> pins;   // base edge, pinned color
    std::vector<std::pair<int, int>> flips;  // base edge, color after the extension
};

struct SubcubicPlan {
    int side = 0;               // copy the mirror form extends
    bool split = false;         // extend both copies independently instead
    std::vector<int> colorset;  // the three colors the copy extension uses
    int strip_color = 0;        // copy edges of this color step aside and return
    CopyMoves moves[2];
    std::string note;
};

// Extends one side restriction within the plan's colorset after stripping and
// pinning. Every call keeps at most two colored edges on the base, which is
// exactly the two-edge hypothesis the caller asserts.
inline std::optional<PartialEdgeColoring> subcubic_side_coloring(const PartialEdgeColoring& norm,
                                                                 const PrismDecomposition& dec,
                                                                 const SubcubicPlan& plan,
                                                                 int side) {
    PartialEdgeColoring phi = side_restriction(norm, dec, side, norm.palette());
    std::vector<int> stripped;
    if (plan.strip_color) {
        for (int b : phi.colored_edges())
            if (phi.color(b) == plan.strip_color) stripped.push_back(b);
        for (int b : stripped) phi.unset(b);
    }
    for (auto [b, col] : plan.moves[side].pins) {
        if (phi.is_colored(b)) return std::nullopt;
        if (!set_if_proper(phi, b, col)) return std::nullopt;
    }
    if (phi.colored_count() > 2) return std::nullopt;
    for (int b : phi.colored_edges())
        if (std::find(plan.colorset.begin(), plan.colorset.end(), phi.color(b)) ==
            plan.colorset.end())
            return std::nullopt;
    ExtensionOutcome ext = extend_exhaustive_colorset(phi, plan.colorset);
    if (ext.status != ExtendStatus::Extended) return std::nullopt;
    PartialEdgeColoring psi = *ext.coloring;
    for (int b : stripped) {
        psi.unset(b);
        if (!set_if_proper(psi, b, plan.strip_color)) return std::nullopt;
    }
    for (auto [b, col] : plan.moves[side].flips) {
        psi.unset(b);
        if (!set_if_proper(psi, b, col)) return std::nullopt;
    }
    return psi;
}

// Runs one plan transactionally: builds the whole candidate against the
// precolored matching edges and hands it back only if every write stays
// proper and every matching edge finds a color missing at both ends.
inline std::optional<PartialEdgeColoring> run_subcubic_plan(const PartialEdgeColoring& norm,
                                                            const PrismDecomposition& dec,
                                                            const SubcubicPlan& plan) {
    PartialEdgeColoring out = norm;
    auto write = [&](int side, const PartialEdgeColoring& psi) {
        for (int b = 0; b < dec.base.edge_count(); ++b) {
            int e = dec.copy_edges[side][b];
            int col = psi.color(b);
            if (out.is_colored(e)) {
                if (out.color(e) != col) return false;
                continue;
            }
            if (!set_if_proper(out, e, col)) return false;
        }
        return true;
    };
    if (plan.split) {
        for (int side = 0; side < 2; ++side) {
            std::optional<PartialEdgeColoring> psi = subcubic_side_coloring(norm, dec, plan, side);
            if (!psi || !write(side, *psi)) return std::nullopt;
        }
    } else {
        std::optional<PartialEdgeColoring> psi = subcubic_side_coloring(norm, dec, plan, plan.side);
        if (!psi) return std::nullopt;
        if (!write(plan.side, *psi) || !write(1 - plan.side, *psi)) return std::nullopt;
    }
    if (!fill_matching_plain(out, dec)) return std::nullopt;
    return out;
}

// A triangle with a spare edge at a degree-3 corner. In a connected graph
// with maximum degree 3 every triangle has such a corner, since a triangle
// whose corners all have degree 2 would be the whole graph.
struct TriangleWitness {
    int x = -1, y = -1, z = -1;  // corners, x of degree 3
    int w = -1;                  // neighbor of x outside the triangle
};

inline std::optional<TriangleWitness> find_triangle_witness(const Graph& g) {
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [p, q] = g.endpoints(e);
        for (int r : g.adjacency[p]) {
            if (r == q || !g.has_edge(r, q)) continue;
            std::array<int, 3> corners{p, q, r};
            for (int x : corners) {
                if (g.degree(x) != 3) continue;
                TriangleWitness t;
                t.x = x;
                t.y = x == p ? q : p;
                t.z = x == r ? q : r;
                for (int v : g.adjacency[x])
                    if (v != t.y && v != t.z) t.w = v;
                if (t.w >= 0) return t;
            }
            TriangleWitness bare;
            bare.x = p;
            bare.y = q;
            bare.z = r;
            return bare;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Extends a partial proper 4-edge coloring of at most 3 edges of the prism
// over a connected class 1 base graph with maximum degree 3, assuming every
// proper 3-edge precoloring of at most 2 base edges extends to a proper
// 3-edge coloring of the base. Callers assert that hypothesis (or verify it
// through the harness); the routine enforces its checkable consequences and
// realizes each application of it as a bounded base search. Triangles defeat
// the hypothesis outright and are rejected with the witness spelled out.
//
// The construction splits on how many matching edges are precolored. With
// none, the copies extend within three colors and the matching absorbs what
// is missing. With one, the copies extend without the matching color when it
// is unique; otherwise that color steps aside, or pins steer it away from the
// matched vertex, lifting to the fourth color where the vertex degree forces
// it. With two or three, the loaded copy extends inside a three-color slice
// while pins and flips keep each matched vertex clear of its own color. Every
// plan is validated transactionally; exhausting all plans falls back to the
// search backend with the trace flagged.
inline ExtenderOutcome extend_subcubic_class1_prism(const Graph& g, const PartialEdgeColoring& c) {
    const std::string who = "extend_subcubic_class1_prism";
    if (max_degree(g) != 3)
        throw std::invalid_argument(who + ": base graph must have maximum degree 3");
    if (!is_connected(g)) throw std::invalid_argument(who + ": base graph must be connected");
    if (std::optional<detail::TriangleWitness> t = detail::find_triangle_witness(g)) {
        std::ostringstream msg;
        msg << who << ": base graph has a triangle " << t->x << "-" << t->y << "-" << t->z;
        if (t->w >= 0)
            msg << "; coloring edge " << t->x << "-" << t->w << " with 2 and edge " << t->y << "-"
                << t->z << " with 1 is a proper two-edge precoloring no proper 3-edge coloring "
                << "extends, so the two-edge hypothesis fails";
        throw std::invalid_argument(msg.str());
    }
    ChromaticIndexResult ci = chromatic_index(g);
    if (ci.cls == ChromaticClass::Unknown)
        throw std::invalid_argument(who + ": chromatic index search exhausted its budget");
    if (ci.cls != ChromaticClass::Class1)
        throw std::invalid_argument(who + ": base graph must be class 1");

    PrismContext ctx = analyze_prism(g, c, 4, 3, who);
    const PrismDecomposition& dec = ctx.dec;

    return run_prism_extender(c, 3, who, [&](const PartialEdgeColoring& norm,
                                             ExtensionTrace& trace) -> PartialEdgeColoring {
        const int full = 4;
        auto colorset_without = [&](int avoid) {
            std::vector<int> s;
            for (int col = 1; col <= full; ++col)
                if (col != avoid) s.push_back(col);
            return s;
        };

        std::vector<int> m_vertices, m_colors;
        for (int e : ctx.colored_matching) {
            m_vertices.push_back(dec.edge_info[e].second);
            m_colors.push_back(norm.color(e));
        }
        const int m = static_cast<int>(m_vertices.size());
        const int loaded0 = ctx.colored_in_copy(0);
        const int loaded1 = ctx.colored_in_copy(1);
        const int lone_side = loaded1 > 0 && loaded0 == 0 ? 1 : 0;

        std::vector<int> copy_colors;
        for (int side = 0; side < 2; ++side)
            for (int e : ctx.colored_copy[side]) {
                int col = norm.color(e);
                if (std::find(copy_colors.begin(), copy_colors.end(), col) == copy_colors.end())
                    copy_colors.push_back(col);
            }

        // Base edges at v with no precolored copy on either side; pins only
        // ever land on these, so they never collide with strips or restores.
        auto free_edges_at = [&](int v) {
            std::vector<int> out;
            for (int b : dec.base.incident_edges[v]) {
                if (norm.is_colored(dec.copy_edges[0][b])) continue;
                if (norm.is_colored(dec.copy_edges[1][b])) continue;
                out.push_back(b);
            }
            return out;
        };
        auto base_edges_adjacent = [&](int a, int b) {
            auto [p, q] = dec.base.endpoints(a);
            auto [r, s] = dec.base.endpoints(b);
            return p == r || p == s || q == r || q == s;
        };

        // A plan without strips or flips colors the copies entirely inside
        // its three-color set, so a degree-3 base vertex sees all three of
        // those colors; a matching edge precolored there needs its color
        // outside the set or the plan cannot succeed.
        auto slice_respects_matching = [&](const std::vector<int>& colorset) {
            for (int j = 0; j < m; ++j) {
                if (dec.base.degree(m_vertices[j]) < 3) continue;
                if (std::find(colorset.begin(), colorset.end(), m_colors[j]) != colorset.end())
                    return false;
            }
            return true;
        };

        std::vector<detail::SubcubicPlan> plans;
        auto add_mirror = [&](std::vector<int> cs, int strip, detail::CopyMoves moves,
                              std::string note) {
            detail::SubcubicPlan p;
            p.side = lone_side;
            p.colorset = std::move(cs);
            p.strip_color = strip;
            p.moves[p.side] = std::move(moves);
            p.note = std::move(note);
            if (strip == 0 && p.moves[p.side].flips.empty() &&
                !slice_respects_matching(p.colorset))
                return;
            plans.push_back(std::move(p));
        };
        auto add_split = [&](std::vector<int> cs, detail::CopyMoves m0, detail::CopyMoves m1,
                             std::string note) {
            detail::SubcubicPlan p;
            p.split = true;
            p.colorset = std::move(cs);
            p.moves[0] = std::move(m0);
            p.moves[1] = std::move(m1);
            p.note = std::move(note);
            if (p.moves[0].flips.empty() && p.moves[1].flips.empty() &&
                !slice_respects_matching(p.colorset))
                return;
            plans.push_back(std::move(p));
        };

        if (m == 0) {
            if (loaded0 > 0 && loaded1 > 0) {
                add_split(colorset_without(full), {}, {},
                          "both copies hold precolored edges; each extends within the first three "
                          "colors and the matching picks up what is missing");
            } else if (norm.colored_count() == 3) {
                add_mirror(colorset_without(1), 1, {},
                           "one copy holds all three precolored edges; color 1 steps aside, the "
                           "copy extends without it, and the stripped edges return");
            } else {
                add_mirror(colorset_without(full), 0, {},
                           "the precolored edges sit in one copy, which extends within the first "
                           "three colors and mirrors across");
            }
        } else if (m == 1) {
            const int mu = m_vertices[0];
            const int ce = m_colors[0];
            const bool shared =
                std::find(copy_colors.begin(), copy_colors.end(), ce) != copy_colors.end();
            if (!shared) {
                if (loaded0 > 0 && loaded1 > 0) {
                    add_split(colorset_without(ce), {}, {},
                              "the matching color appears in neither copy; both extend without it "
                              "and the matching keeps it");
                } else {
                    add_mirror(colorset_without(ce), 0, {},
                               "the matching color appears nowhere else; the loaded copy extends "
                               "without it and mirrors across");
                }
            } else if (loaded0 > 0 && loaded1 > 0) {
                // The matching color recurs in the copies and both copies are
                // loaded, so they cannot mirror. At a matched vertex of
                // degree at most 2 each copy extends inside the first three
                // colors, steered past the vertex by at most one pin; at
                // degree 3 the copies cannot avoid the matching color there,
                // so corresponding pins absorb it and lift to the top color.
                const std::vector<int> base_cs = colorset_without(full);
                if (dec.base.degree(mu) < 3) {
                    std::vector<detail::CopyMoves> options[2];
                    for (int side = 0; side < 2; ++side) {
                        options[side].push_back({});
                        for (int b : dec.base.incident_edges[mu]) {
                            if (norm.is_colored(dec.copy_edges[side][b])) continue;
                            for (int col : base_cs)
                                if (col != ce)
                                    options[side].push_back({{{b, col}}, {}});
                        }
                    }
                    for (const detail::CopyMoves& m0 : options[0])
                        for (const detail::CopyMoves& m1 : options[1])
                            add_split(base_cs, m0, m1,
                                      "both copies extend within the first three colors, steered "
                                      "so the matching color misses the matched vertex");
                }
                for (int b : free_edges_at(mu))
                    add_split(base_cs, {{{b, ce}}, {{b, full}}}, {{{b, ce}}, {{b, full}}},
                              "corresponding pins absorb the matching color at the matched vertex "
                              "and lift to the top color");
            } else {
                add_mirror(colorset_without(ce), ce, {},
                           "the matching color repeats in the loaded copy; those edges step "
                           "aside, the copy extends without the color, and they return");
            }
        } else if (m == 2) {
            const int u = m_vertices[0], v = m_vertices[1];
            const int cu = m_colors[0], cv = m_colors[1];
            const int e3_color = copy_colors.empty() ? 0 : copy_colors[0];
            auto strip_for = [&](int avoid) { return e3_color == avoid ? avoid : 0; };
            if (cu == cv) {
                add_mirror(colorset_without(cu), strip_for(cu), {},
                           "both matching edges carry one color; the loaded copy extends without "
                           "it and mirrors across");
            } else {
                for (int avoid = full; avoid >= 1; --avoid)
                    add_mirror(colorset_without(avoid), strip_for(avoid), {},
                               "the loaded copy extends inside a three-color slice that keeps "
                               "both matched vertices clear");
                struct FlipSpec {
                    int at, pin_color, avoid;
                };
                for (FlipSpec fs : {FlipSpec{u, cu, cv}, FlipSpec{v, cv, cu}})
                    for (int b : free_edges_at(fs.at))
                        add_mirror(colorset_without(fs.avoid), strip_for(fs.avoid),
                                   {{{b, fs.pin_color}}, {{b, fs.avoid}}},
                                   "a pin absorbs one matching color at its vertex and flips to "
                                   "the other");
                for (int ti = 0; ti < 2; ++ti) {
                    const int t = ti == 0 ? u : v;
                    const int tcol = ti == 0 ? cu : cv;
                    for (int b : free_edges_at(t))
                        for (int p = 1; p <= full; ++p) {
                            if (p == tcol) continue;
                            for (int avoid = 1; avoid <= full; ++avoid) {
                                if (avoid == p) continue;
                                add_mirror(colorset_without(avoid), strip_for(avoid),
                                           {{{b, p}}, {}},
                                           "pins at the matched vertices steer the extension "
                                           "around the matching colors");
                            }
                        }
                }
                if (copy_colors.empty())
                    for (int bu : free_edges_at(u))
                        for (int bv : free_edges_at(v)) {
                            if (bu == bv) continue;
                            for (int pu = 1; pu <= full; ++pu) {
                                if (pu == cu) continue;
                                for (int pv = 1; pv <= full; ++pv) {
                                    if (pv == cv) continue;
                                    for (int avoid = 1; avoid <= full; ++avoid) {
                                        if (avoid == pu || avoid == pv) continue;
                                        add_mirror(colorset_without(avoid), 0,
                                                   {{{bu, pu}, {bv, pv}}, {}},
                                                   "pins at the matched vertices steer the "
                                                   "extension around the matching colors");
                                    }
                                }
                            }
                        }
            }
        } else {
            const int u = m_vertices[0], v = m_vertices[1], w = m_vertices[2];
            const int c1 = m_colors[0], c2 = m_colors[1], c3 = m_colors[2];
            const bool same12 = c1 == c2, same13 = c1 == c3, same23 = c2 == c3;
            if (same12 && same13) {
                add_mirror(colorset_without(c1), 0, {},
                           "all matching edges share one color; the copies extend without it and "
                           "the matching keeps it");
            } else if (same12 || same13 || same23) {
                // Exactly two colors: the minority vertex needs shielding
                // while the copies extend without the majority color.
                int minority_v = w, minority_c = c3, majority_c = c1;
                if (same13) {
                    minority_v = v;
                    minority_c = c2;
                } else if (same23) {
                    minority_v = u;
                    minority_c = c1;
                    majority_c = c2;
                }
                const std::vector<int> cs = colorset_without(majority_c);
                std::vector<int> shield;
                for (int col = 1; col <= full; ++col)
                    if (col != majority_c && col != minority_c) shield.push_back(col);
                const std::vector<int> at_min = free_edges_at(minority_v);
                const std::string pin_note =
                    "pins shield the minority vertex while the copies extend without the "
                    "majority color";
                if (dec.base.degree(minority_v) < 3) {
                    add_mirror(cs, 0, {},
                               "the copies extend without the majority color and the minority "
                               "vertex stays clear");
                    if (at_min.size() == 1) {
                        for (int col : shield) add_mirror(cs, 0, {{{at_min[0], col}}, {}}, pin_note);
                    } else if (at_min.size() == 2) {
                        add_mirror(cs, 0, {{{at_min[0], shield[0]}, {at_min[1], shield[1]}}, {}},
                                   pin_note);
                        add_mirror(cs, 0, {{{at_min[0], shield[1]}, {at_min[1], shield[0]}}, {}},
                                   pin_note);
                        for (int b : at_min)
                            for (int col : shield) add_mirror(cs, 0, {{{b, col}}, {}}, pin_note);
                    }
                }
                for (int b : at_min)
                    add_mirror(cs, 0, {{{b, minority_c}}, {{b, majority_c}}},
                               "a pin absorbs the minority color at its vertex and lifts to the "
                               "majority color");
            } else {
                // Three distinct colors; normalization makes them 1, 2, 3.
                struct Anchor {
                    int vertex, color;
                };
                const std::array<Anchor, 3> anchors{Anchor{u, c1}, Anchor{v, c2}, Anchor{w, c3}};
                for (int avoid = 1; avoid <= full; ++avoid)
                    add_mirror(colorset_without(avoid), 0, {},
                               "the copies extend inside a slice leaving every matched vertex "
                               "clear");
                for (int i = 0; i < 3; ++i)
                    for (int j = i + 1; j < 3; ++j) {
                        const Anchor a = anchors[i], b = anchors[j];
                        const int lift = anchors[3 - i - j].color;
                        for (int ba : free_edges_at(a.vertex))
                            for (int bb : free_edges_at(b.vertex)) {
                                if (ba == bb || base_edges_adjacent(ba, bb)) continue;
                                add_mirror(colorset_without(lift), 0,
                                           {{{ba, a.color}, {bb, b.color}},
                                            {{ba, lift}, {bb, lift}}},
                                           "two independent pins absorb their matching colors "
                                           "and lift to the third");
                            }
                    }
                for (const Anchor& a : anchors)
                    for (int avoid = 1; avoid <= full; ++avoid) {
                        if (avoid == a.color) continue;
                        for (int b : free_edges_at(a.vertex))
                            add_mirror(colorset_without(avoid), 0, {{{b, a.color}}, {{b, avoid}}},
                                       "a pin absorbs one matching color and lifts outside the "
                                       "slice");
                    }
                for (const Anchor& a : anchors)
                    for (int avoid = 1; avoid <= full; ++avoid) {
                        if (avoid == a.color) continue;
                        const std::vector<int> cs = colorset_without(avoid);
                        for (const Anchor& b : anchors) {
                            if (b.vertex == a.vertex) continue;
                            for (int ba : free_edges_at(a.vertex))
                                for (int bb : free_edges_at(b.vertex)) {
                                    if (ba == bb) continue;
                                    for (int p : cs) {
                                        if (p == b.color) continue;
                                        add_mirror(cs, 0,
                                                   {{{ba, a.color}, {bb, p}}, {{ba, avoid}}},
                                                   "pins absorb matching colors and one lifts "
                                                   "outside the slice");
                                    }
                                }
                        }
                    }
            }
        }

        for (const detail::SubcubicPlan& plan : plans) {
            if (std::optional<PartialEdgeColoring> done =
                    detail::run_subcubic_plan(norm, dec, plan)) {
                trace.note(plan.note);
                TracedColoring work(norm, trace);
                work.adopt(*done);
                return work.coloring();
            }
        }
        require_step(false, "no structural plan completed");
        return norm;
    });
}

}  // namespace pex
