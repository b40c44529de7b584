#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pex/coloring.hpp"

namespace pex {

// One replayable mutation of a working coloring. color == 0 clears the edge.
struct TraceOp {
    int edge = -1;
    int color = 0;
};

// Log of how an extension was produced: human-readable case notes plus the
// exact set/unset sequence. Replaying the ops over the original input must
// reproduce the final coloring. fallback is set when a structural step could
// not be completed and the search backend produced the answer instead.
struct ExtensionTrace {
    std::vector<std::string> notes;
    std::vector<TraceOp> ops;
    bool fallback = false;

    void note(std::string text) { notes.push_back(std::move(text)); }
};

// Applies the op log to `input` (palette widened to `palette` if needed).
inline PartialEdgeColoring replay_trace(const PartialEdgeColoring& input, int palette,
                                        const ExtensionTrace& trace) {
    PartialEdgeColoring c = palette > input.palette() ? input.with_palette(palette) : input;
    for (const TraceOp& op : trace.ops) {
        if (op.color == 0) {
            c.unset(op.edge);
        } else {
            if (c.is_colored(op.edge)) c.unset(op.edge);
            c.set(op.edge, op.color);
        }
    }
    return c;
}

// Rewrites the colors in the op log through a permutation. Used when an
// algorithm ran on a renamed palette and the log must speak the caller's
// colors again.
inline void map_trace_colors(ExtensionTrace& trace, const ColorPermutation& pi) {
    for (TraceOp& op : trace.ops) {
        if (op.color != 0) op.color = pi.apply(op.color);
    }
}

// Working coloring that records every mutation into a trace.
class TracedColoring {
public:
    TracedColoring(PartialEdgeColoring coloring, ExtensionTrace& trace)
        : coloring_(std::move(coloring)), trace_(&trace) {}

    const PartialEdgeColoring& coloring() const { return coloring_; }
    const Graph& graph() const { return coloring_.graph(); }
    int palette() const { return coloring_.palette(); }

    void set(int edge, int color) {
        if (coloring_.is_colored(edge)) {
            if (coloring_.color(edge) == color) return;
            unset(edge);
        }
        coloring_.set(edge, color);
        trace_->ops.push_back({edge, color});
    }

    void unset(int edge) {
        if (!coloring_.is_colored(edge)) return;
        coloring_.unset(edge);
        trace_->ops.push_back({edge, 0});
    }

    // Records the difference between the current state and `next` as ops, in
    // edge order, then becomes `next`. Both must live on the same graph.
    void adopt(const PartialEdgeColoring& next) {
        const Graph& g = coloring_.graph();
        if (!(g == next.graph()) || next.palette() != coloring_.palette())
            throw std::logic_error("TracedColoring::adopt: shape mismatch");
        for (int e = 0; e < g.edge_count(); ++e) {
            std::optional<int> a = coloring_.color_if_any(e);
            std::optional<int> b = next.color_if_any(e);
            if (a == b) continue;
            if (b) {
                set(e, *b);
            } else {
                unset(e);
            }
        }
    }

private:
    PartialEdgeColoring coloring_;
    ExtensionTrace* trace_;
};

}  // namespace pex
