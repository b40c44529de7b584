#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "pex/chromatic.hpp"
#include "pex/coloring.hpp"
#include "pex/graph.hpp"
#include "pex/oracle.hpp"

using namespace pex;

TEST_CASE("forced single-edge completion") {
    Graph p3 = build_path(3);
    PartialEdgeColoring c(p3, 2);
    c.set(0, 1);
    ExtensionOutcome out = extend_exhaustive(c);
    REQUIRE(out.status == ExtendStatus::Extended);
    REQUIRE(out.coloring->color(1) == 2);
    REQUIRE(agrees_with(*out.coloring, c));
}

TEST_CASE("K4 with a 2-colored matching is not 3-extendable") {
    Graph k4 = build_complete(4);
    PartialEdgeColoring c(k4, 3);
    c.set(k4.edge_id(0, 1), 1);
    c.set(k4.edge_id(2, 3), 2);
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);
}

TEST_CASE("corresponding prism edges with different colors block a 3-coloring of C5 x K2") {
    PrismDecomposition d = prism(build_cycle(5));
    PartialEdgeColoring c(d.product, 3);
    int e1 = d.copy_edges[0][0];
    c.set(e1, 1);
    c.set(d.corresponding_edge(e1), 2);
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);
}

TEST_CASE("improper input is rejected") {
    Graph p3 = build_path(3);
    PartialEdgeColoring c(p3, 2);
    c.set(0, 1);
    c.set(1, 1);
    REQUIRE_THROWS_AS(extend_exhaustive(c), std::invalid_argument);
}

TEST_CASE("extension counts match known values") {
    Graph c4 = build_cycle(4);
    REQUIRE(count_extensions(PartialEdgeColoring(c4, 3), 1000) == 18);
    REQUIRE(count_extensions(PartialEdgeColoring(c4, 2), 1000) == 2);

    Graph p3 = build_path(3);
    PartialEdgeColoring one(p3, 2);
    one.set(0, 1);
    REQUIRE(count_extensions(one, 1000) == 1);
}

TEST_CASE("counts saturate at the cap") {
    Graph c4 = build_cycle(4);
    REQUIRE(count_extensions(PartialEdgeColoring(c4, 3), 5) == 5);
}

TEST_CASE("node budget produces Unknown, never a wrong verdict") {
    Graph k6 = build_complete(6);
    PartialEdgeColoring empty(k6, 5);
    SearchBudget tiny{.max_nodes = 3};
    ExtensionOutcome out = extend_exhaustive(empty, tiny);
    REQUIRE(out.status == ExtendStatus::Unknown);
    REQUIRE(out.nodes_expanded <= 3);
    REQUIRE_THROWS_AS(count_extensions(empty, 1000, tiny), BudgetExhausted);
}

TEST_CASE("witnesses are deterministic across repeated runs") {
    Graph q3 = build_hypercube(3);
    PartialEdgeColoring c(q3, 3);
    c.set(0, 1);
    ExtensionOutcome a = extend_exhaustive(c);
    ExtensionOutcome b = extend_exhaustive(c);
    REQUIRE(a.status == ExtendStatus::Extended);
    REQUIRE(*a.coloring == *b.coloring);
    REQUIRE(a.nodes_expanded == b.nodes_expanded);
}

TEST_CASE("colorset search restricts usable colors") {
    Graph p3 = build_path(3);
    PartialEdgeColoring c(p3, 4);
    c.set(0, 2);
    ExtensionOutcome out = extend_exhaustive_colorset(c, {2, 4});
    REQUIRE(out.status == ExtendStatus::Extended);
    REQUIRE(out.coloring->color(1) == 4);

    REQUIRE_THROWS_AS(extend_exhaustive_colorset(c, {1, 3}), std::invalid_argument);

    // Restricting a triangle to 2 of its 3 needed colors must fail.
    Graph k3 = build_complete(3);
    PartialEdgeColoring empty(k3, 3);
    REQUIRE(extend_exhaustive_colorset(empty, {1, 2}).status == ExtendStatus::NotExtendable);
}

TEST_CASE("extendability agrees with positive extension counts") {
    // Cross-check on assorted small instances.
    std::vector<Graph> graphs = {build_path(4), build_cycle(5), build_complete(4),
                                 build_star(3), build_complete_bipartite(2, 3)};
    for (const Graph& g : graphs) {
        for (int t = 1; t <= 3; ++t) {
            for_each_precoloring(g, t, std::min(2, g.edge_count()), {},
                                 [&](std::uint64_t, const PartialEdgeColoring& c) {
                                     bool ext = extend_exhaustive(c).status == ExtendStatus::Extended;
                                     bool pos = count_extensions(c, 1) > 0;
                                     REQUIRE(ext == pos);
                                     return true;
                                 });
        }
    }
}

TEST_CASE("verdicts are invariant under color permutations") {
    Graph k4 = build_complete(4);
    std::mt19937_64 rng(7);
    auto instances = sample_precolorings(k4, 3, 3, 11, 20);
    for (const PartialEdgeColoring& c : instances) {
        std::vector<int> fwd = {0, 1, 2, 3};
        std::shuffle(fwd.begin() + 1, fwd.end(), rng);
        PartialEdgeColoring pc = apply_permutation(c, ColorPermutation(fwd));
        REQUIRE(extend_exhaustive(c).status == extend_exhaustive(pc).status);
    }
}

TEST_CASE("removing precolored edges preserves extendability") {
    Graph k33 = build_complete_bipartite(3, 3);
    for (const PartialEdgeColoring& c : sample_precolorings(k33, 3, 3, 5, 25)) {
        if (extend_exhaustive(c).status != ExtendStatus::Extended) continue;
        for (int e : c.colored_edges()) {
            PartialEdgeColoring sub = c;
            sub.unset(e);
            REQUIRE(extend_exhaustive(sub).status == ExtendStatus::Extended);
        }
    }
}

TEST_CASE("exhaustive enumeration sizes and order") {
    Graph p3 = build_path(3);
    std::vector<PartialEdgeColoring> seen;
    std::uint64_t n = for_each_precoloring(p3, 2, 1, {},
                                           [&](std::uint64_t i, const PartialEdgeColoring& c) {
                                               REQUIRE(i == seen.size());
                                               seen.push_back(c);
                                               return true;
                                           });
    REQUIRE(n == 4);
    // Canonical order: edge 0 with colors 1,2; then edge 1 with colors 1,2.
    REQUIRE(seen[0].color(0) == 1);
    REQUIRE(seen[1].color(0) == 2);
    REQUIRE(seen[2].color(1) == 1);
    REQUIRE(seen[3].color(1) == 2);

    Graph c4 = build_cycle(4);
    std::uint64_t indep = for_each_precoloring(c4, 3, 2, filter_independent,
                                               [](std::uint64_t, const PartialEdgeColoring&) { return true; });
    REQUIRE(indep == 18); // 2 independent pairs x 9 color pairs

    std::uint64_t empties = for_each_precoloring(c4, 3, 0, {},
                                                 [](std::uint64_t, const PartialEdgeColoring&) { return true; });
    REQUIRE(empties == 1);
}

TEST_CASE("enumeration emits only proper colorings, each exactly once") {
    Graph k4 = build_complete(4);
    std::set<std::vector<int>> keys;
    std::uint64_t n = for_each_precoloring(k4, 2, 2, {},
                                           [&](std::uint64_t, const PartialEdgeColoring& c) {
                                               REQUIRE(is_proper(c));
                                               std::vector<int> key;
                                               for (int e = 0; e < 6; ++e)
                                                   key.push_back(c.is_colored(e) ? c.color(e) : 0);
                                               REQUIRE(keys.insert(key).second);
                                               return true;
                                           });
    REQUIRE(n == keys.size());
}

TEST_CASE("sampling is deterministic and respects the filter") {
    Graph k33 = build_complete_bipartite(3, 3);
    auto a = sample_precolorings(k33, 4, 3, 42, 5, filter_independent);
    auto b = sample_precolorings(k33, 4, 3, 42, 5, filter_independent);
    REQUIRE(a.size() == 5);
    for (int i = 0; i < 5; ++i) {
        REQUIRE(a[i] == b[i]);
        REQUIRE(is_proper(a[i]));
        REQUIRE(is_independent(a[i]));
        REQUIRE(a[i].colored_count() == 3);
    }
    auto c = sample_precolorings(k33, 4, 3, 43, 5, filter_independent);
    bool all_equal = true;
    for (int i = 0; i < 5; ++i) all_equal = all_equal && a[i] == c[i];
    REQUIRE_FALSE(all_equal);
}

TEST_CASE("chromatic index classification") {
    ChromaticIndexResult c4 = chromatic_index(build_cycle(4));
    REQUIRE(c4.cls == ChromaticClass::Class1);
    REQUIRE(c4.chi == 2);
    REQUIRE(is_proper(*c4.witness));
    REQUIRE(c4.witness->is_total());

    ChromaticIndexResult c5 = chromatic_index(build_cycle(5));
    REQUIRE(c5.cls == ChromaticClass::Class2);
    REQUIRE(c5.chi == 3);
    REQUIRE(c5.witness->palette() == 3);

    REQUIRE(chromatic_index(build_complete(4)).cls == ChromaticClass::Class1);
    REQUIRE(chromatic_index(build_complete(5)).chi == 5);
    REQUIRE(chromatic_index(build_complete_bipartite(3, 3)).chi == 3);
    REQUIRE(chromatic_index(build_hypercube(3)).chi == 3);
    REQUIRE(chromatic_index(build_path(1)).chi == 0);

    SearchBudget tiny{.max_nodes = 2};
    REQUIRE(chromatic_index(build_complete(6), tiny).cls == ChromaticClass::Unknown);
}

TEST_CASE("stars and odd cycles form the always-extendable class") {
    REQUIRE(always_extendable_class(build_star(5)));
    REQUIRE(always_extendable_class(build_star(1)));
    REQUIRE(always_extendable_class(build_cycle(7)));
    REQUIRE(always_extendable_class(build_path(3))); // P3 = K_{1,2}
    REQUIRE_FALSE(always_extendable_class(build_path(4)));
    REQUIRE_FALSE(always_extendable_class(build_cycle(6)));
    REQUIRE_FALSE(always_extendable_class(build_complete(4)));
    REQUIRE_FALSE(always_extendable_class(build_path(1)));
    REQUIRE_THROWS_AS(always_extendable_class(Graph(4, {{0, 1}, {2, 3}})), std::invalid_argument);
}
