#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pex/coloring.hpp"
#include "pex/graph.hpp"

namespace pex {

enum class ExtendStatus { Extended, NotExtendable, Unknown };

inline const char* to_string(ExtendStatus s) {
    switch (s) {
        case ExtendStatus::Extended: return "extended";
        case ExtendStatus::NotExtendable: return "not-extendable";
        case ExtendStatus::Unknown: return "unknown";
    }
    return "?";
}

struct SearchBudget {
    std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
    double time_limit_seconds = 0; // <= 0 means unlimited

    bool limited() const {
        return max_nodes != std::numeric_limits<std::uint64_t>::max() || time_limit_seconds > 0;
    }
};

struct ExtensionOutcome {
    ExtendStatus status = ExtendStatus::Unknown;
    std::optional<PartialEdgeColoring> coloring; // present iff Extended
    std::uint64_t nodes_expanded = 0;
};

struct BudgetExhausted : std::runtime_error {
    std::uint64_t nodes_expanded;
    explicit BudgetExhausted(std::uint64_t nodes)
        : std::runtime_error("search budget exhausted after " + std::to_string(nodes) + " nodes"),
          nodes_expanded(nodes) {}
};

namespace detail {

constexpr int kMaxPalette = 30; // colors tracked in 32-bit masks

inline std::uint32_t palette_mask(int t) {
    if (t < 0 || t > kMaxPalette)
        throw std::invalid_argument("palette size " + std::to_string(t) + " unsupported (max 30)");
    return t == 0 ? 0u : ((std::uint32_t(1) << (t + 1)) - 2); // bits 1..t
}

/// Exhaustive backtracking over proper completions.
///
/// Variable order: uncolored edge with fewest admissible colors, ties broken
/// by canonical edge id. Value order: ascending color. The search is fully
/// deterministic; a node is counted each time the solver commits a color to
/// an edge.
struct EdgeColorSolver {
    const Graph& g;
    std::uint32_t allowed; // usable colors as a bitmask over bits 1..t
    std::vector<std::uint32_t> used_at;
    std::vector<int> assigned; // 0 = unset
    int unset_count = 0;

    std::uint64_t nodes = 0;
    std::uint64_t max_nodes;
    std::chrono::steady_clock::time_point deadline{};
    bool timed = false;
    bool aborted = false;

    // Count mode only.
    std::uint64_t found = 0;
    std::uint64_t cap = 1;

    EdgeColorSolver(const PartialEdgeColoring& c, std::uint32_t allowed_mask, SearchBudget budget)
        : g(c.graph()), allowed(allowed_mask), used_at(g.vertex_count, 0),
          assigned(g.edge_count(), 0), max_nodes(budget.max_nodes) {
        if (budget.time_limit_seconds > 0) {
            timed = true;
            deadline = std::chrono::steady_clock::now() +
                       std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(budget.time_limit_seconds));
        }
        for (int e = 0; e < g.edge_count(); ++e) {
            if (c.is_colored(e)) {
                int col = c.color(e);
                auto [u, v] = g.edges[e];
                std::uint32_t bit = std::uint32_t(1) << col;
                if ((used_at[u] | used_at[v]) & bit)
                    throw std::invalid_argument("oracle: input coloring is not proper");
                assigned[e] = col;
                used_at[u] |= bit;
                used_at[v] |= bit;
            } else {
                ++unset_count;
            }
        }
    }

    bool out_of_budget() {
        if (nodes >= max_nodes) return true;
        if (timed && (nodes & 1023) == 0 && std::chrono::steady_clock::now() >= deadline)
            return true;
        return false;
    }

    // Returns the uncolored edge with fewest admissible colors (smallest id on
    // ties), or -1 when everything is colored.
    int pick_edge() const {
        int best = -1, best_count = std::numeric_limits<int>::max();
        for (int e = 0; e < g.edge_count(); ++e) {
            if (assigned[e]) continue;
            auto [u, v] = g.edges[e];
            int k = std::popcount(allowed & ~(used_at[u] | used_at[v]));
            if (k < best_count) {
                best = e;
                best_count = k;
                if (k == 0) break;
            }
        }
        return best;
    }

    bool find_one() {
        int e = pick_edge();
        if (e < 0) return true;
        auto [u, v] = g.edges[e];
        std::uint32_t avail = allowed & ~(used_at[u] | used_at[v]);
        while (avail) {
            std::uint32_t bit = avail & -avail;
            avail &= avail - 1;
            if (out_of_budget()) {
                aborted = true;
                return false;
            }
            ++nodes;
            assigned[e] = std::countr_zero(bit);
            used_at[u] |= bit;
            used_at[v] |= bit;
            if (find_one()) return true;
            assigned[e] = 0;
            used_at[u] &= ~bit;
            used_at[v] &= ~bit;
            if (aborted) return false;
        }
        return false;
    }

    void count_all() {
        int e = pick_edge();
        if (e < 0) {
            ++found;
            return;
        }
        auto [u, v] = g.edges[e];
        std::uint32_t avail = allowed & ~(used_at[u] | used_at[v]);
        while (avail && found < cap) {
            std::uint32_t bit = avail & -avail;
            avail &= avail - 1;
            if (out_of_budget()) {
                aborted = true;
                return;
            }
            ++nodes;
            assigned[e] = std::countr_zero(bit);
            used_at[u] |= bit;
            used_at[v] |= bit;
            count_all();
            assigned[e] = 0;
            used_at[u] &= ~bit;
            used_at[v] &= ~bit;
            if (aborted) return;
        }
    }

    PartialEdgeColoring extract(const PartialEdgeColoring& input) const {
        PartialEdgeColoring out = input.blank(input.palette());
        for (int e = 0; e < g.edge_count(); ++e) out.set(e, assigned[e]);
        return out;
    }
};

inline ExtensionOutcome extend_with_mask(const PartialEdgeColoring& c, std::uint32_t mask,
                                         SearchBudget budget) {
    EdgeColorSolver solver(c, mask, budget);
    ExtensionOutcome out;
    bool ok = solver.find_one();
    out.nodes_expanded = solver.nodes;
    if (ok) {
        out.status = ExtendStatus::Extended;
        out.coloring = solver.extract(c);
    } else if (solver.aborted) {
        out.status = ExtendStatus::Unknown;
    } else {
        out.status = ExtendStatus::NotExtendable;
    }
    return out;
}

} // namespace detail

/// Decide extendability of c within its palette by exhaustive search.
inline ExtensionOutcome extend_exhaustive(const PartialEdgeColoring& c, SearchBudget budget = {}) {
    return detail::extend_with_mask(c, detail::palette_mask(c.palette()), budget);
}

/// Like extend_exhaustive, but the completion may only use colors from
/// `colors` (a subset of the palette). Every precolored edge must already
/// use a listed color.
inline ExtensionOutcome extend_exhaustive_colorset(const PartialEdgeColoring& c,
                                                   const std::vector<int>& colors,
                                                   SearchBudget budget = {}) {
    std::uint32_t mask = 0;
    for (int col : colors) {
        if (col < 1 || col > c.palette())
            throw std::invalid_argument("colorset: color out of palette");
        mask |= std::uint32_t(1) << col;
    }
    detail::palette_mask(c.palette()); // palette size guard
    for (int e : c.colored_edges())
        if (!(mask >> c.color(e) & 1))
            throw std::invalid_argument("colorset: precolored edge uses a color outside the set");
    return detail::extend_with_mask(c, mask, budget);
}

/// Exact number of total proper extensions of c, saturating at cap.
inline std::uint64_t count_extensions(const PartialEdgeColoring& c, std::uint64_t cap,
                                      SearchBudget budget = {}) {
    if (cap == 0) return 0;
    detail::EdgeColorSolver solver(c, detail::palette_mask(c.palette()), budget);
    solver.cap = cap;
    solver.count_all();
    if (solver.aborted) throw BudgetExhausted(solver.nodes);
    return solver.found;
}

// ---------------------------------------------------------------------------
// Instance enumeration for the harness.

using ColoringFilter = std::function<bool(const PartialEdgeColoring&)>;

inline bool filter_independent(const PartialEdgeColoring& c) { return is_independent(c); }

namespace detail {

constexpr std::uint64_t kUint64Max = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > kUint64Max / b) return kUint64Max;
    return a * b;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r holds C(n-k+i-1, i-1), so r*(n-k+i)/i is integral
        std::uint64_t num = n - k + i;
        if (r > kUint64Max / num) return kUint64Max;
        r = r * num / i;
    }
    return r;
}

inline std::uint64_t power(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r = sat_mul(r, base);
    return r;
}

/// Unbiased uniform draw from {0, ..., n-1}.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: empty range");
    std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
    for (;;) {
        std::uint64_t x = rng();
        if (x >= threshold) return x % n;
    }
}

/// Lexicographically rank-th k-subset of {0..m-1}.
inline std::vector<int> unrank_combination(int m, int k, std::uint64_t rank) {
    std::vector<int> out;
    out.reserve(k);
    int a = 0;
    for (int i = 0; i < k; ++i) {
        for (;; ++a) {
            if (a >= m) throw std::logic_error("unrank_combination: rank out of range");
            std::uint64_t block = binomial(m - 1 - a, k - 1 - i);
            if (rank < block) break;
            rank -= block;
        }
        out.push_back(a++);
    }
    return out;
}

} // namespace detail

/// Visit every proper precoloring of g with exactly k colored edges and
/// palette t, in canonical order: edge subsets lexicographically, then color
/// tuples lexicographically (first edge most significant, colors ascending).
/// `index` is the position among emitted (filter-passing) precolorings.
/// Return false from visit to stop early. Returns the number emitted.
inline std::uint64_t for_each_precoloring(
    const Graph& g, int t, int k, const ColoringFilter& filter,
    const std::function<bool(std::uint64_t index, const PartialEdgeColoring&)>& visit) {
    int m = g.edge_count();
    if (k < 0 || k > m) throw std::invalid_argument("enumerate: k out of range");
    detail::palette_mask(t);

    std::vector<int> subset(k);
    PartialEdgeColoring work(g, t);
    std::uint64_t emitted = 0;
    bool stop = false;

    // Assign colors to subset[pos..] in lex order, pruning improper prefixes.
    std::function<void(int)> colorize = [&](int pos) {
        if (stop) return;
        if (pos == k) {
            if (!filter || filter(work)) {
                if (!visit(emitted, work)) stop = true;
                ++emitted;
            }
            return;
        }
        int e = subset[pos];
        auto [u, v] = g.edges[e];
        for (int col = 1; col <= t && !stop; ++col) {
            std::uint64_t bit = std::uint64_t(1) << col;
            if ((color_mask_at(work, u) | color_mask_at(work, v)) & bit) continue;
            work.set(e, col);
            colorize(pos + 1);
            work.unset(e);
        }
    };

    std::function<void(int, int)> choose = [&](int pos, int next) {
        if (stop) return;
        if (pos == k) {
            colorize(0);
            return;
        }
        for (int e = next; e <= m - (k - pos) && !stop; ++e) {
            subset[pos] = e;
            choose(pos + 1, e + 1);
        }
    };

    choose(0, 0);
    return emitted;
}

/// Total size of the candidate space (all k-subsets times all color tuples,
/// properness not yet imposed), saturating.
inline std::uint64_t precoloring_candidate_count(const Graph& g, int t, int k) {
    return detail::sat_mul(detail::binomial(g.edge_count(), k), detail::power(t, k));
}

/// Draw `count` proper precolorings with exactly k colored edges, uniformly
/// over the exhaustive sequence (rejection sampling over the candidate
/// space), deterministically from seed. Draws are independent, so repeats
/// can occur.
inline std::vector<PartialEdgeColoring> sample_precolorings(const Graph& g, int t, int k,
                                                            std::uint64_t seed, std::uint64_t count,
                                                            const ColoringFilter& filter = {}) {
    int m = g.edge_count();
    if (k < 0 || k > m) throw std::invalid_argument("sample: k out of range");
    detail::palette_mask(t);
    std::uint64_t subsets = detail::binomial(m, k);
    std::uint64_t tuples = detail::power(t, k);
    if (subsets == detail::kUint64Max || tuples == detail::kUint64Max ||
        detail::sat_mul(subsets, tuples) == detail::kUint64Max)
        throw std::invalid_argument("sample: candidate space too large to index");

    std::mt19937_64 rng(seed);
    std::vector<PartialEdgeColoring> out;
    out.reserve(count);
    const std::uint64_t max_attempts = 1'000'000;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t attempts = 0;
        for (;;) {
            if (++attempts > max_attempts)
                throw std::runtime_error("sample: rejection rate too high (no proper instance found in " +
                                         std::to_string(max_attempts) + " attempts)");
            std::uint64_t sr = detail::uniform_below(rng, subsets);
            std::uint64_t cr = tuples == 1 ? 0 : detail::uniform_below(rng, tuples);
            std::vector<int> subset = detail::unrank_combination(m, k, sr);
            PartialEdgeColoring c(g, t);
            // Decode cr as base-t digits, first edge most significant.
            bool proper = true;
            std::uint64_t rem = cr;
            std::uint64_t place = tuples;
            for (int j = 0; j < k; ++j) {
                place /= t;
                int col = static_cast<int>(rem / place) + 1;
                rem %= place;
                auto [u, v] = g.edges[subset[j]];
                if ((color_mask_at(c, u) | color_mask_at(c, v)) >> col & 1) {
                    proper = false;
                    break;
                }
                c.set(subset[j], col);
            }
            if (!proper) continue;
            if (filter && !filter(c)) continue;
            out.push_back(std::move(c));
            break;
        }
    }
    return out;
}

} // namespace pex
