#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pex/chromatic.hpp"
#include "pex/coloring.hpp"
#include "pex/extend_bipartite.hpp"
#include "pex/extend_common.hpp"
#include "pex/extend_complete.hpp"
#include "pex/extend_cycle.hpp"
#include "pex/extend_regular.hpp"
#include "pex/extend_tree.hpp"
#include "pex/graph.hpp"
#include "pex/oracle.hpp"
#include "pex/trace.hpp"

namespace pex {

namespace detail {

// Recognizes the canonical prism labeling: copies of one base graph on
// vertices 0..n-1 and n..2n-1 joined by the matching v <-> n+v, exactly as
// the prism builder lays it out. Returns the base graph on recognition.
inline std::optional<Graph> prism_base_of(const Graph& g) {
    if (g.vertex_count < 2 || g.vertex_count % 2 != 0) return std::nullopt;
    const int n = g.vertex_count / 2;
    std::vector<std::pair<int, int>> lower;
    for (auto [u, v] : g.edges) {
        if (v < n) {
            lower.push_back({u, v});
        } else if (u < n && v != u + n) {
            return std::nullopt;
        }
    }
    Graph base(n, std::move(lower));
    if (!(prism(base).product == g)) return std::nullopt;
    return base;
}

}  // namespace detail

// Routes a precolored graph to the structural extender whose family and
// bounds it fits: the canonical prism over a tree, cycle, complete,
// balanced complete bipartite, or regular base. Anything else, and any
// instance outside every structural bound, goes to the exhaustive search
// backend. The trace names the route taken; out-of-bound instances are
// never rejected here, they are decided by the search instead.
inline ExtenderOutcome extend_auto(const Graph& g, const PartialEdgeColoring& c) {
    if (!(c.graph() == g))
        throw std::invalid_argument("extend_auto: coloring is not on the graph");

    auto finish = [&](ExtenderOutcome out, std::string route) {
        out.trace.notes.insert(out.trace.notes.begin(), "route: " + std::move(route));
        return out;
    };

    ExtenderOutcome out;
    if (!is_proper(c)) {
        out.status = ExtendStatus::NotExtendable;
        out.trace.note("route: precoloring is not proper, nothing extends it");
        return out;
    }
    if (c.palette() > detail::kMaxPalette) {
        out.trace.note("route: palette too large for the search backend");
        return out;
    }

    const int count = c.colored_count();
    const int palette = c.palette();
    std::optional<Graph> base = detail::prism_base_of(g);
    if (base && base->edge_count() > 0) {
        const Graph& b = *base;
        const int bn = b.vertex_count;
        const int bd = max_degree(b);
        try {
            if (is_tree(b) && palette == bd + 1 && count <= bd)
                return finish(extend_tree_prism(b, c), "extend_tree_prism on the tree base");
            if (bn >= 3 && is_connected(b) && is_regular(b) && bd == 2) {
                const bool even = bn % 2 == 0;
                if (even && palette == 3 && count <= 2)
                    return finish(extend_cycle_prism(b, c), "extend_cycle_prism on the cycle base");
                if (!even && palette == 4 && count <= 3)
                    return finish(extend_cycle_prism(b, c), "extend_cycle_prism on the cycle base");
            }
            if (bn >= 3 && b.edge_count() == bn * (bn - 1) / 2) {
                const bool even = bn % 2 == 0;
                if (even && palette == bn && count <= bn / 2)
                    return finish(extend_complete_prism(bn, c),
                                  "extend_complete_prism on the complete base");
                if (!even && palette == bn + 1 && count <= (bn + 1) / 2 + 1)
                    return finish(extend_complete_prism(bn, c),
                                  "extend_complete_prism on the complete base");
            }
            if (bn % 2 == 0 && b == build_complete_bipartite(bn / 2, bn / 2) &&
                palette == bn / 2 + 1 && count <= bn / 2)
                return finish(extend_knn_prism(bn / 2, c),
                              "extend_knn_prism on the balanced complete bipartite base");
            if (is_regular(b)) {
                bool independent = true;
                const std::vector<int> colored = c.colored_edges();
                for (std::size_t i = 0; i < colored.size() && independent; ++i)
                    for (std::size_t j = i + 1; j < colored.size(); ++j) {
                        auto [p, q] = g.endpoints(colored[i]);
                        auto [r, s] = g.endpoints(colored[j]);
                        if (p == r || p == s || q == r || q == s) {
                            independent = false;
                            break;
                        }
                    }
                const int k = count > 1 ? count - 1 : 0;
                const bool in_bound = is_triangle_free(b) ? k < bd : 2 * k < bd;
                if (independent && in_bound) {
                    ChromaticIndexResult ci = chromatic_index(b);
                    if (ci.cls != ChromaticClass::Unknown && palette == ci.chi + 1)
                        return finish(
                            extend_regular_independent_prism(b, c, oracle_base_extender(k)),
                            "extend_regular_independent_prism on the regular base");
                }
            }
        } catch (const std::invalid_argument&) {
            // A bound the quick gates missed; the search decides instead.
        }
    }

    out.trace.note("route: exhaustive search over the declared palette");
    ExtensionOutcome res = extend_exhaustive(c);
    out.status = res.status;
    if (res.status == ExtendStatus::Extended) {
        TracedColoring diff(c, out.trace);
        diff.adopt(*res.coloring);
        out.coloring = diff.coloring();
    }
    return out;
}

}  // namespace pex
