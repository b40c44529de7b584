#pragma once

#include <optional>
#include <stdexcept>

#include "pex/coloring.hpp"
#include "pex/graph.hpp"
#include "pex/oracle.hpp"

namespace pex {

enum class ChromaticClass { Class1, Class2, Unknown };

inline const char* to_string(ChromaticClass c) {
    switch (c) {
        case ChromaticClass::Class1: return "class-1";
        case ChromaticClass::Class2: return "class-2";
        case ChromaticClass::Unknown: return "unknown";
    }
    return "?";
}

struct ChromaticIndexResult {
    ChromaticClass cls = ChromaticClass::Unknown;
    int chi = -1; // valid unless Unknown
    std::optional<PartialEdgeColoring> witness;
    std::uint64_t nodes_expanded = 0;
};

/// Exact chromatic index: chi' = max_degree (Class 1) or max_degree + 1
/// (Class 2), decided by exhaustive search. Never guesses: Unknown when the
/// budget runs out. The witness is an optimal proper coloring.
inline ChromaticIndexResult chromatic_index(const Graph& g, SearchBudget budget = {}) {
    ChromaticIndexResult r;
    int delta = max_degree(g);
    if (g.edge_count() == 0) {
        r.cls = ChromaticClass::Class1;
        r.chi = 0;
        r.witness = PartialEdgeColoring(g, 0);
        return r;
    }
    ExtensionOutcome at_delta = extend_exhaustive(PartialEdgeColoring(g, delta), budget);
    r.nodes_expanded = at_delta.nodes_expanded;
    if (at_delta.status == ExtendStatus::Extended) {
        r.cls = ChromaticClass::Class1;
        r.chi = delta;
        r.witness = std::move(at_delta.coloring);
        return r;
    }
    if (at_delta.status == ExtendStatus::Unknown) return r;
    // Class 2; a (delta+1)-coloring exists, find one for the witness.
    ExtensionOutcome above = extend_exhaustive(PartialEdgeColoring(g, delta + 1), budget);
    r.nodes_expanded += above.nodes_expanded;
    if (above.status != ExtendStatus::Extended) return r; // budget ran out mid-witness
    r.cls = ChromaticClass::Class2;
    r.chi = delta + 1;
    r.witness = std::move(above.coloring);
    return r;
}

/// True iff g is a star K_{1,n} (n >= 1) or an odd cycle: exactly the
/// connected graphs all of whose proper partial chi'-edge-colorings extend.
inline bool always_extendable_class(const Graph& g) {
    if (!is_connected(g)) throw std::invalid_argument("always_extendable_class: graph must be connected");
    int n = g.vertex_count;
    int m = g.edge_count();
    if (n >= 2 && m == n - 1) {
        for (int v = 0; v < n; ++v)
            if (g.degree(v) == m) return true; // star (includes K_2)
    }
    if (n >= 3 && n % 2 == 1 && m == n && max_degree(g) == 2) return true; // odd cycle
    return false;
}

} // namespace pex
