#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pex/graph.hpp"

namespace pex {

/// Bijection on the colors 1..t, stored 1-indexed.
struct ColorPermutation {
    std::vector<int> forward; // forward[c] for c in 1..t; forward[0] unused

    ColorPermutation() = default;

    explicit ColorPermutation(std::vector<int> fwd) : forward(std::move(fwd)) {
        int t = palette();
        std::vector<char> seen(t + 1, 0);
        for (int c = 1; c <= t; ++c) {
            int d = forward[c];
            if (d < 1 || d > t || seen[d]) throw std::invalid_argument("color permutation: not a bijection");
            seen[d] = 1;
        }
    }

    static ColorPermutation identity(int t) {
        std::vector<int> fwd(t + 1);
        for (int c = 1; c <= t; ++c) fwd[c] = c;
        return ColorPermutation(std::move(fwd));
    }

    int palette() const { return static_cast<int>(forward.size()) - 1; }

    int apply(int c) const { return forward.at(c); }

    ColorPermutation inverse() const {
        std::vector<int> inv(forward.size());
        for (int c = 1; c <= palette(); ++c) inv[forward[c]] = c;
        return ColorPermutation(std::move(inv));
    }

    bool is_identity() const {
        for (int c = 1; c <= palette(); ++c)
            if (forward[c] != c) return false;
        return true;
    }
};

/// Partial assignment of colors 1..palette to the edges of a graph.
///
/// An uncolored edge is simply absent from the assignment; color 0 never
/// appears in the public interface. The coloring keeps shared ownership of
/// an immutable snapshot of the graph, so it stays valid after the graph
/// expression it was built from goes away; copies of a coloring share that
/// snapshot.
struct PartialEdgeColoring {
    PartialEdgeColoring() = default;

    PartialEdgeColoring(const Graph& g, int palette)
        : graph_(std::make_shared<const Graph>(g)), palette_(palette), color_(g.edge_count(), 0) {
        if (palette < 0) throw std::invalid_argument("coloring: negative palette");
    }

    const Graph& graph() const { return *graph_; }
    int palette() const { return palette_; }

    bool is_colored(int e) const { return color_.at(e) != 0; }

    int color(int e) const {
        int c = color_.at(e);
        if (c == 0) throw std::invalid_argument("color: edge " + std::to_string(e) + " is uncolored");
        return c;
    }

    std::optional<int> color_if_any(int e) const {
        int c = color_.at(e);
        if (c == 0) return std::nullopt;
        return c;
    }

    void set(int e, int c) {
        if (c < 1 || c > palette_) throw std::invalid_argument("set: color out of palette");
        color_.at(e) = c;
    }

    void unset(int e) { color_.at(e) = 0; }

    int colored_count() const {
        int k = 0;
        for (int c : color_) k += (c != 0);
        return k;
    }

    std::vector<int> colored_edges() const {
        std::vector<int> out;
        for (int e = 0; e < static_cast<int>(color_.size()); ++e)
            if (color_[e]) out.push_back(e);
        return out;
    }

    bool is_total() const {
        for (int c : color_)
            if (!c) return false;
        return true;
    }

    /// Same assignment under a larger (or equal) palette; shares the graph.
    PartialEdgeColoring with_palette(int t) const {
        if (t < 0) throw std::invalid_argument("coloring: negative palette");
        PartialEdgeColoring out = *this;
        out.palette_ = t;
        for (int& c : out.color_)
            if (c > t) throw std::invalid_argument("with_palette: existing color exceeds new palette");
        return out;
    }

    /// Same graph (shared), empty assignment, given palette.
    PartialEdgeColoring blank(int t) const {
        if (t < 0) throw std::invalid_argument("coloring: negative palette");
        PartialEdgeColoring out = *this;
        out.palette_ = t;
        std::fill(out.color_.begin(), out.color_.end(), 0);
        return out;
    }

    bool operator==(const PartialEdgeColoring& o) const {
        return *graph_ == *o.graph_ && palette_ == o.palette_ && color_ == o.color_;
    }
    bool operator!=(const PartialEdgeColoring& o) const { return !(*this == o); }

private:
    std::shared_ptr<const Graph> graph_;
    int palette_ = 0;
    std::vector<int> color_;
};

inline bool is_proper(const PartialEdgeColoring& c) {
    const Graph& g = c.graph();
    for (int v = 0; v < g.vertex_count; ++v) {
        std::uint64_t seen = 0;
        for (int e : g.incident_edges[v]) {
            if (!c.is_colored(e)) continue;
            std::uint64_t bit = std::uint64_t(1) << c.color(e);
            if (seen & bit) return false;
            seen |= bit;
        }
    }
    return true;
}

/// First vertex at which two equal colors meet, if any. Used for diagnostics.
inline std::optional<int> properness_violation_vertex(const PartialEdgeColoring& c) {
    const Graph& g = c.graph();
    for (int v = 0; v < g.vertex_count; ++v) {
        std::uint64_t seen = 0;
        for (int e : g.incident_edges[v]) {
            if (!c.is_colored(e)) continue;
            std::uint64_t bit = std::uint64_t(1) << c.color(e);
            if (seen & bit) return v;
            seen |= bit;
        }
    }
    return std::nullopt;
}

/// Bitmask of colors on edges at v (bit c set when some edge at v has color c).
inline std::uint64_t color_mask_at(const PartialEdgeColoring& c, int v) {
    std::uint64_t mask = 0;
    for (int e : c.graph().incident_edges[v])
        if (c.is_colored(e)) mask |= std::uint64_t(1) << c.color(e);
    return mask;
}

inline std::vector<int> colors_at(const PartialEdgeColoring& c, int v) {
    std::uint64_t mask = color_mask_at(c, v);
    std::vector<int> out;
    for (int col = 1; col <= c.palette(); ++col)
        if (mask >> col & 1) out.push_back(col);
    return out;
}

inline std::vector<int> missing_colors(const PartialEdgeColoring& c, int v) {
    std::uint64_t mask = color_mask_at(c, v);
    std::vector<int> out;
    for (int col = 1; col <= c.palette(); ++col)
        if (!(mask >> col & 1)) out.push_back(col);
    return out;
}

/// True when the colored edges are pairwise nonadjacent.
inline bool is_independent(const PartialEdgeColoring& c) {
    const Graph& g = c.graph();
    for (int v = 0; v < g.vertex_count; ++v) {
        int colored_here = 0;
        for (int e : g.incident_edges[v]) colored_here += c.is_colored(e);
        if (colored_here > 1) return false;
    }
    return true;
}

/// True when `full` is a total proper coloring extending `pre`.
inline bool agrees_with(const PartialEdgeColoring& full, const PartialEdgeColoring& pre) {
    if (full.graph() != pre.graph())
        throw std::invalid_argument("agrees_with: colorings of different graphs");
    if (!full.is_total() || !is_proper(full)) return false;
    for (int e : pre.colored_edges())
        if (full.color(e) != pre.color(e)) return false;
    return true;
}

inline PartialEdgeColoring apply_permutation(const PartialEdgeColoring& c, const ColorPermutation& pi) {
    if (pi.palette() != c.palette())
        throw std::invalid_argument("apply_permutation: palette mismatch");
    PartialEdgeColoring out = c.blank(c.palette());
    for (int e : c.colored_edges()) out.set(e, pi.apply(c.color(e)));
    return out;
}

/// Rename colors so that, scanned in canonical edge order, the distinct used
/// colors become 1, 2, ... in order of first appearance. Unused colors fill
/// the remaining targets in increasing order, so the returned permutation is
/// a bijection on the whole palette. Fails if more than r distinct colors
/// are in use.
inline std::pair<PartialEdgeColoring, ColorPermutation>
normalize_colors(const PartialEdgeColoring& c, int r) {
    int t = c.palette();
    if (r < 0 || r > t) throw std::invalid_argument("normalize_colors: bad bound");
    std::vector<int> fwd(t + 1, 0);
    int next = 0;
    for (int e : c.colored_edges()) {
        int col = c.color(e);
        if (!fwd[col]) fwd[col] = ++next;
    }
    if (next > r)
        throw std::invalid_argument("normalize_colors: " + std::to_string(next) +
                                    " distinct colors exceed bound " + std::to_string(r));
    for (int col = 1; col <= t; ++col)
        if (!fwd[col]) fwd[col] = ++next;
    ColorPermutation pi(std::move(fwd));
    return {apply_permutation(c, pi), pi};
}

} // namespace pex
