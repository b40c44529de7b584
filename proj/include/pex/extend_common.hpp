#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pex/characterizations.hpp"
#include "pex/coloring.hpp"
#include "pex/graph.hpp"
#include "pex/oracle.hpp"
#include "pex/trace.hpp"

namespace pex {

// A structural step that should be impossible to fail under the extender's
// precondition did fail. Extenders catch this and fall back to plain search,
// with the trace's fallback flag raised.
struct ProofStepFailure : std::logic_error {
    using std::logic_error::logic_error;
};

inline void require_step(bool ok, const std::string& what) {
    if (!ok) throw ProofStepFailure("structural step failed: " + what);
}

// Result of a structural extender: status, finished coloring, and the trace
// of how it was built.
struct ExtenderOutcome {
    ExtendStatus status = ExtendStatus::Unknown;
    std::optional<PartialEdgeColoring> coloring;
    ExtensionTrace trace;
};

// Validated view of a precolored prism: the decomposition plus the colored
// edges split by part.
struct PrismContext {
    PrismDecomposition dec;
    std::vector<int> colored_copy[2];
    std::vector<int> colored_matching;

    int colored_in_copy(int side) const { return static_cast<int>(colored_copy[side].size()); }
    int colored_in_matching() const { return static_cast<int>(colored_matching.size()); }
};

// Checks that `c` colors the canonical prism over `base` with the expected
// palette, is proper, and precolors at most `max_precolored` edges. Throws
// std::invalid_argument otherwise.
inline PrismContext analyze_prism(const Graph& base, const PartialEdgeColoring& c, int palette,
                                  int max_precolored, const std::string& who) {
    PrismContext ctx;
    ctx.dec = prism(base);
    if (!(c.graph() == ctx.dec.product))
        throw std::invalid_argument(who + ": coloring does not live on the prism of the base graph");
    if (c.palette() != palette) {
        std::ostringstream msg;
        msg << who << ": palette must be " << palette << ", got " << c.palette();
        throw std::invalid_argument(msg.str());
    }
    if (!is_proper(c)) throw std::invalid_argument(who + ": precoloring is not proper");
    if (c.colored_count() > max_precolored) {
        std::ostringstream msg;
        msg << who << ": at most " << max_precolored << " precolored edges allowed, got "
            << c.colored_count();
        throw std::invalid_argument(msg.str());
    }
    for (int e : c.colored_edges()) {
        if (ctx.dec.is_matching_edge(e)) {
            ctx.colored_matching.push_back(e);
        } else {
            ctx.colored_copy[ctx.dec.side_of_edge(e)].push_back(e);
        }
    }
    return ctx;
}

// Restriction of a coloring to an edge subset, materialized as a coloring of
// the subgraph spanned by those edges (all vertices kept).
struct SubInstance {
    Graph graph;
    std::vector<int> to_parent;  // sub edge id -> parent edge id
    PartialEdgeColoring coloring;
};

inline SubInstance restrict_to_edges(const PartialEdgeColoring& c, const std::vector<int>& edges,
                                     int palette) {
    const Graph& g = c.graph();
    Graph sub = edge_subgraph(g, edges);
    std::vector<int> to_parent(sub.edge_count());
    PartialEdgeColoring restriction(sub, palette);
    for (int e = 0; e < sub.edge_count(); ++e) {
        auto [u, v] = sub.endpoints(e);
        int parent = g.edge_id(u, v);
        to_parent[e] = parent;
        if (std::optional<int> col = c.color_if_any(parent)) restriction.set(e, *col);
    }
    return {std::move(sub), std::move(to_parent), std::move(restriction)};
}

// Copies a finished sub-instance coloring back into the working coloring.
inline void adopt_sub_solution(TracedColoring& work, const SubInstance& sub,
                               const PartialEdgeColoring& solved) {
    for (int e = 0; e < sub.graph.edge_count(); ++e) {
        if (std::optional<int> col = solved.color_if_any(e)) work.set(sub.to_parent[e], *col);
    }
}

// Exhaustive search on a step the surrounding argument guarantees solvable.
inline PartialEdgeColoring oracle_extend_checked(const PartialEdgeColoring& c,
                                                 const std::string& what) {
    ExtensionOutcome out = extend_exhaustive(c);
    require_step(out.status == ExtendStatus::Extended, what + ": no completion found");
    return *out.coloring;
}

inline PartialEdgeColoring oracle_extend_colorset_checked(const PartialEdgeColoring& c,
                                                          const std::vector<int>& colors,
                                                          const std::string& what) {
    ExtensionOutcome out = extend_exhaustive_colorset(c, colors);
    require_step(out.status == ExtendStatus::Extended, what + ": no completion found");
    return *out.coloring;
}

// Extends the restriction of `work` to `edges` using only `colors` (empty =
// whole palette) and writes the result back.
inline void extend_edges_in_place(TracedColoring& work, const std::vector<int>& edges,
                                  const std::vector<int>& colors, const std::string& what) {
    SubInstance sub = restrict_to_edges(work.coloring(), edges, work.palette());
    PartialEdgeColoring solved =
        colors.empty() ? oracle_extend_checked(sub.coloring, what)
                       : oracle_extend_colorset_checked(sub.coloring, colors, what);
    adopt_sub_solution(work, sub, solved);
}

// The colors one copy of the prism carries, viewed as a coloring of the base
// graph (base edge ids, matching edges excluded).
inline PartialEdgeColoring side_restriction(const PartialEdgeColoring& product_coloring,
                                            const PrismDecomposition& dec, int side,
                                            int palette) {
    PartialEdgeColoring out(dec.base, palette);
    for (int b = 0; b < dec.base.edge_count(); ++b) {
        if (std::optional<int> col = product_coloring.color_if_any(dec.copy_edges[side][b]))
            out.set(b, *col);
    }
    return out;
}

// Writes a base-level coloring onto one copy of the prism.
inline void write_side(TracedColoring& work, const PrismDecomposition& dec, int side,
                       const PartialEdgeColoring& base_coloring) {
    for (int b = 0; b < dec.base.edge_count(); ++b) {
        if (std::optional<int> col = base_coloring.color_if_any(b))
            work.set(dec.copy_edges[side][b], *col);
    }
}

// Smallest color absent at both endpoints of an edge, or -1.
inline int smallest_common_missing(const PartialEdgeColoring& c, int e) {
    auto [u, v] = c.graph().endpoints(e);
    std::uint64_t used = color_mask_at(c, u) | color_mask_at(c, v);
    for (int col = 1; col <= c.palette(); ++col)
        if (!(used >> col & 1)) return col;
    return -1;
}

// Colors every uncolored matching edge with the smallest color missing at
// both of its endpoints, in matching order.
inline void fill_matching_smallest_missing(TracedColoring& work, const PrismDecomposition& dec) {
    for (int e : dec.matching_edges) {
        if (work.coloring().is_colored(e)) continue;
        int pick = smallest_common_missing(work.coloring(), e);
        require_step(pick > 0, "matching edge has no common missing color");
        work.set(e, pick);
    }
}

// Copies every colored edge of one copy onto its uncolored correspondent.
inline void copy_colors_across(TracedColoring& work, const PrismDecomposition& dec,
                               int from_side) {
    const int m = dec.base.edge_count();
    for (int b = 0; b < m; ++b) {
        int from = dec.copy_edges[from_side][b];
        int to = dec.copy_edges[1 - from_side][b];
        std::optional<int> col = work.coloring().color_if_any(from);
        if (!col) continue;
        if (std::optional<int> existing = work.coloring().color_if_any(to)) {
            require_step(*existing == *col, "corresponding edge already carries another color");
        } else {
            work.set(to, *col);
        }
    }
}

// Runs a structural prism extender body over the color-normalized input and
// translates the answer back. The body receives the normalized input and the
// trace and returns the finished normalized coloring; any std::logic_error
// inside it (including ProofStepFailure) triggers the search fallback.
template <typename Body>
ExtenderOutcome run_prism_extender(const PartialEdgeColoring& input, int assumed_colors,
                                   const std::string& who, Body body) {
    auto [norm, pi] = normalize_colors(input, assumed_colors);
    ColorPermutation inv = pi.inverse();
    ExtenderOutcome out;
    if (!pi.is_identity()) {
        std::ostringstream msg;
        msg << "colors renamed by first appearance; inverse map:";
        for (int col = 1; col <= inv.palette(); ++col) msg << " " << col << "->" << inv.apply(col);
        out.trace.note(msg.str());
    }
    PartialEdgeColoring finished = norm;
    bool solved = false;
    try {
        finished = body(norm, out.trace);
        require_step(agrees_with(finished, norm), who + ": result is not a valid extension");
        solved = true;
    } catch (const std::logic_error& err) {
        out.trace.fallback = true;
        out.trace.ops.clear();
        out.trace.note(std::string("structural routine failed (") + err.what() +
                       "); falling back to exhaustive search");
        ExtensionOutcome rescue = extend_exhaustive(norm);
        if (rescue.status == ExtendStatus::Extended) {
            finished = *rescue.coloring;
            TracedColoring diff(norm, out.trace);
            diff.adopt(finished);
            solved = true;
        } else {
            out.status = rescue.status;
        }
    }
    if (!solved) return out;
    out.status = ExtendStatus::Extended;
    out.coloring = apply_permutation(finished, inv);
    map_trace_colors(out.trace, inv);
    return out;
}

// Extends a partial proper edge coloring of a forest to a total proper
// coloring with palette equal to the maximum degree. Accepts up to maxdeg - 1
// precolored edges unconditionally, or exactly maxdeg when no obstruction
// condition holds.
inline ExtenderOutcome extend_forest(const Graph& f, const PartialEdgeColoring& c) {
    if (!(c.graph() == f)) throw std::invalid_argument("extend_forest: coloring is not on the graph");
    if (!is_forest(f)) throw std::invalid_argument("extend_forest: graph is not a forest");
    const int delta = max_degree(f);
    if (c.palette() != delta) {
        std::ostringstream msg;
        msg << "extend_forest: palette must equal the maximum degree " << delta << ", got "
            << c.palette();
        throw std::invalid_argument(msg.str());
    }
    if (!is_proper(c)) throw std::invalid_argument("extend_forest: precoloring is not proper");
    const int k = c.colored_count();
    if (k > delta)
        throw std::invalid_argument("extend_forest: more precolored edges than the maximum degree");
    if (k == delta && delta >= 2) {
        ConditionReport report = tree_condition(f, c);
        if (report.fired())
            throw std::invalid_argument(std::string("extend_forest: obstruction condition ") +
                                        to_string(report.condition) + " holds");
    }

    ExtenderOutcome out;
    PartialEdgeColoring finished = oracle_extend_checked(c, "forest extension");
    TracedColoring diff(c, out.trace);
    diff.adopt(finished);
    out.status = ExtendStatus::Extended;
    out.coloring = finished;
    out.trace.note("forest extension within the degree palette");
    return out;
}

}  // namespace pex
