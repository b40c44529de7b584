#include <catch2/catch_amalgamated.hpp>

#include "pex/characterizations.hpp"
#include "pex/coloring.hpp"
#include "pex/graph.hpp"
#include "pex/oracle.hpp"

using namespace pex;

namespace {

Graph spider3() {
    // Center 0 with three legs of length 2: 0-1-2, 0-3-4, 0-5-6.
    return Graph(7, {{0, 1}, {0, 3}, {0, 5}, {1, 2}, {3, 4}, {5, 6}});
}

} // namespace

TEST_CASE("blocked uncolored edge fires C1") {
    Graph p4 = build_path(4);
    PartialEdgeColoring c(p4, 2);
    c.set(p4.edge_id(0, 1), 1);
    c.set(p4.edge_id(2, 3), 2);
    ConditionReport r = tree_condition(p4, c);
    // Both C1 and C4 hold here; the fixed order reports C1 with the middle
    // edge as witness.
    REQUIRE(r.condition == Condition::C1);
    REQUIRE(*r.witness.edge == p4.edge_id(1, 2));
    REQUIRE(recheck_condition(r, c));
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);
}

TEST_CASE("saturating a max-degree vertex from outside fires C2") {
    // Star center 0 with one colored edge; both uncolored edges point at
    // vertices that see color 2 via pendant extensions.
    Graph g(6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}});
    PartialEdgeColoring c(g, 3);
    c.set(g.edge_id(0, 3), 1);
    c.set(g.edge_id(1, 4), 2);
    c.set(g.edge_id(2, 5), 2);
    ConditionReport r = tree_condition(g, c);
    REQUIRE(r.condition == Condition::C2);
    REQUIRE(*r.witness.vertex == 0);
    REQUIRE(*r.witness.color == 2);
    REQUIRE(recheck_condition(r, c));
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);
}

TEST_CASE("spider with all outer edges one color fires C3") {
    Graph g = spider3();
    PartialEdgeColoring c(g, 3);
    c.set(g.edge_id(1, 2), 1);
    c.set(g.edge_id(3, 4), 1);
    c.set(g.edge_id(5, 6), 1);
    ConditionReport r = tree_condition(g, c);
    REQUIRE(r.condition == Condition::C3);
    REQUIRE(*r.witness.vertex == 0);
    REQUIRE(*r.witness.color == 1);
    REQUIRE(recheck_condition(r, c));
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);
}

TEST_CASE("parity obstruction on paths fires C4") {
    // P6: end edges at distance 3 (odd) with different colors; too far apart
    // for C1, and no vertex configuration for C2/C3.
    Graph p6 = build_path(6);
    PartialEdgeColoring c(p6, 2);
    c.set(p6.edge_id(0, 1), 1);
    c.set(p6.edge_id(4, 5), 2);
    ConditionReport r = tree_condition(p6, c);
    REQUIRE(r.condition == Condition::C4);
    REQUIRE(r.witness.edge_pair == std::vector<int>{p6.edge_id(0, 1), p6.edge_id(4, 5)});
    REQUIRE(recheck_condition(r, c));
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);

    // Same color at distance 2: here C3 fires first (the middle vertex has
    // both edges uncolored, each next to a color-1 edge); still blocked.
    PartialEdgeColoring c2(p6, 2);
    c2.set(p6.edge_id(0, 1), 1);
    c2.set(p6.edge_id(3, 4), 1);
    REQUIRE(tree_condition(p6, c2).condition == Condition::C3);
    REQUIRE(extend_exhaustive(c2).status == ExtendStatus::NotExtendable);

    // Same color at odd distance extends fine.
    PartialEdgeColoring c3(p6, 2);
    c3.set(p6.edge_id(0, 1), 1);
    c3.set(p6.edge_id(2, 3), 1);
    REQUIRE(tree_condition(p6, c3).condition == Condition::None);
    REQUIRE(extend_exhaustive(c3).status == ExtendStatus::Extended);
}

TEST_CASE("single colored edge on P4 is unobstructed") {
    Graph p4 = build_path(4);
    PartialEdgeColoring c(p4, 2);
    c.set(1, 1);
    REQUIRE(tree_condition(p4, c).condition == Condition::None);
}

TEST_CASE("tree condition rejects out-of-precondition inputs") {
    Graph c4 = build_cycle(4);
    REQUIRE_THROWS_AS(tree_condition(c4, PartialEdgeColoring(c4, 2)), std::invalid_argument);

    Graph p4 = build_path(4);
    REQUIRE_THROWS_AS(tree_condition(p4, PartialEdgeColoring(p4, 3)), std::invalid_argument);

    Graph p2 = build_path(2);
    REQUIRE_THROWS_AS(tree_condition(p2, PartialEdgeColoring(p2, 1)), std::invalid_argument);

    PartialEdgeColoring over(p4, 2);
    over.set(0, 1);
    over.set(1, 2);
    over.set(2, 1);
    REQUIRE_THROWS_AS(tree_condition(p4, over), std::invalid_argument);
}

TEST_CASE("crossed colors in K22 fire condition a") {
    Graph k22 = build_complete_bipartite(2, 2);
    PartialEdgeColoring c(k22, 2);
    c.set(k22.edge_id(0, 3), 1);
    c.set(k22.edge_id(1, 2), 2);
    ConditionReport r = ah_bipartite_condition(2, c);
    REQUIRE(r.condition == Condition::AH_A);
    REQUIRE(recheck_condition(r, c));
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);
}

TEST_CASE("blocked color at a vertex of K33 fires condition b") {
    Graph k33 = build_complete_bipartite(3, 3);
    PartialEdgeColoring c(k33, 3);
    c.set(k33.edge_id(0, 3), 2);
    c.set(k33.edge_id(1, 4), 1);
    c.set(k33.edge_id(2, 5), 1);
    ConditionReport r = ah_bipartite_condition(3, c);
    REQUIRE(r.condition == Condition::AH_B);
    REQUIRE(*r.witness.vertex == 0);
    REQUIRE(*r.witness.color == 1);
    REQUIRE(recheck_condition(r, c));
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);
}

TEST_CASE("empty precoloring of Knn is unobstructed") {
    Graph k33 = build_complete_bipartite(3, 3);
    REQUIRE(ah_bipartite_condition(3, PartialEdgeColoring(k33, 3)).condition == Condition::None);
}

TEST_CASE("bipartite condition validates host and palette") {
    Graph k23 = build_complete_bipartite(2, 3);
    REQUIRE_THROWS_AS(ah_bipartite_condition(2, PartialEdgeColoring(k23, 2)), std::invalid_argument);
    Graph k22 = build_complete_bipartite(2, 2);
    REQUIRE_THROWS_AS(ah_bipartite_condition(2, PartialEdgeColoring(k22, 3)), std::invalid_argument);
    REQUIRE_THROWS_AS(ah_bipartite_condition(1, PartialEdgeColoring(k22, 2)), std::invalid_argument);
}

TEST_CASE("two-colored matching in K4 fires the even condition") {
    Graph k4 = build_complete(4);
    PartialEdgeColoring c(k4, 3);
    c.set(k4.edge_id(0, 1), 1);
    c.set(k4.edge_id(2, 3), 2);
    ConditionReport r = complete_even_condition(2, c);
    REQUIRE(r.condition == Condition::CompleteEvenMatching);
    REQUIRE(*r.witness.matching_color == 1);
    REQUIRE(*r.witness.special_edge == k4.edge_id(2, 3));
    REQUIRE(recheck_condition(r, c));
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);

    // Same color twice: extendable, no condition.
    PartialEdgeColoring same(k4, 3);
    same.set(k4.edge_id(0, 1), 1);
    same.set(k4.edge_id(2, 3), 1);
    REQUIRE(complete_even_condition(2, same).condition == Condition::None);
    REQUIRE(extend_exhaustive(same).status == ExtendStatus::Extended);
}

TEST_CASE("K6 with a monochromatic matching is unobstructed") {
    Graph k6 = build_complete(6);
    PartialEdgeColoring c(k6, 5);
    c.set(k6.edge_id(0, 1), 1);
    c.set(k6.edge_id(2, 3), 1);
    c.set(k6.edge_id(4, 5), 1);
    REQUIRE(complete_even_condition(3, c).condition == Condition::None);
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::Extended);

    // Flip one edge to a second color: the obstruction appears.
    c.set(k6.edge_id(4, 5), 2);
    ConditionReport r = complete_even_condition(3, c);
    REQUIRE(r.condition == Condition::CompleteEvenMatching);
    REQUIRE(r.witness.matching.size() == 2);
    REQUIRE(recheck_condition(r, c));
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);
}

TEST_CASE("rainbow triangle plus disjoint edge fires the odd condition") {
    Graph k5 = build_complete(5);
    PartialEdgeColoring c(k5, 5);
    c.set(k5.edge_id(0, 1), 1);
    c.set(k5.edge_id(0, 2), 2);
    c.set(k5.edge_id(1, 2), 3);
    c.set(k5.edge_id(3, 4), 4);
    ConditionReport r = complete_odd_condition(3, c);
    REQUIRE(r.condition == Condition::CompleteOddTriangle);
    REQUIRE(r.witness.triangle.size() == 3);
    REQUIRE(r.witness.matching == std::vector<int>{k5.edge_id(3, 4)});
    REQUIRE(*r.witness.matching_color == 4);
    REQUIRE(recheck_condition(r, c));
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);

    // Reusing a triangle color on the loose edge kills the obstruction.
    c.set(k5.edge_id(3, 4), 3);
    REQUIRE(complete_odd_condition(3, c).condition == Condition::None);
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::Extended);
}

TEST_CASE("K3 never satisfies the odd condition") {
    Graph k3 = build_complete(3);
    PartialEdgeColoring c(k3, 3);
    c.set(0, 1);
    c.set(1, 2);
    c.set(2, 3);
    REQUIRE(complete_odd_condition(2, c).condition == Condition::None);
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::Extended);
}

TEST_CASE("iff against the oracle on K4 up to 2 edges") {
    Graph k4 = build_complete(4);
    for (int k = 0; k <= 2; ++k) {
        for_each_precoloring(k4, 3, k, {}, [&](std::uint64_t, const PartialEdgeColoring& c) {
            bool fired = complete_even_condition(2, c).fired();
            bool blocked = extend_exhaustive(c).status == ExtendStatus::NotExtendable;
            REQUIRE(fired == blocked);
            return true;
        });
    }
}

TEST_CASE("iff against the oracle on K22 up to 2 edges") {
    Graph k22 = build_complete_bipartite(2, 2);
    for (int k = 0; k <= 2; ++k) {
        for_each_precoloring(k22, 2, k, {}, [&](std::uint64_t, const PartialEdgeColoring& c) {
            bool fired = ah_bipartite_condition(2, c).fired();
            bool blocked = extend_exhaustive(c).status == ExtendStatus::NotExtendable;
            REQUIRE(fired == blocked);
            return true;
        });
    }
}

TEST_CASE("twin classes missing the same vertex fire the odd condition") {
    Graph k5 = build_complete(5);
    PartialEdgeColoring c(k5, 5);
    c.set(k5.edge_id(0, 1), 1);
    c.set(k5.edge_id(2, 3), 1);
    c.set(k5.edge_id(0, 2), 2);
    c.set(k5.edge_id(1, 3), 2);
    ConditionReport r = complete_odd_condition(3, c);
    REQUIRE(r.condition == Condition::CompleteOddTwinClass);
    REQUIRE(*r.witness.matching_color == 1);
    REQUIRE(*r.witness.special_color == 2);
    REQUIRE(*r.witness.vertex == 4);
    REQUIRE(r.witness.matching.size() == 2);
    REQUIRE(r.witness.edge_pair.size() == 2);
    REQUIRE(recheck_condition(r, c));
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::NotExtendable);

    // Moving one edge so the classes miss different vertices clears it.
    c.unset(k5.edge_id(1, 3));
    c.set(k5.edge_id(1, 4), 2);
    REQUIRE(complete_odd_condition(3, c).condition == Condition::None);
    REQUIRE(extend_exhaustive(c).status == ExtendStatus::Extended);
}

TEST_CASE("iff against the oracle on K5 up to 4 edges") {
    Graph k5 = build_complete(5);
    for (int k = 0; k <= 4; ++k) {
        for_each_precoloring(k5, 5, k, {}, [&](std::uint64_t, const PartialEdgeColoring& c) {
            bool fired = complete_odd_condition(3, c).fired();
            bool blocked = extend_exhaustive(c).status == ExtendStatus::NotExtendable;
            REQUIRE(fired == blocked);
            return true;
        });
    }
}

TEST_CASE("iff against the oracle on K6 up to 3 edges") {
    Graph k6 = build_complete(6);
    for (int k = 0; k <= 3; ++k) {
        for_each_precoloring(k6, 5, k, {}, [&](std::uint64_t, const PartialEdgeColoring& c) {
            bool fired = complete_even_condition(3, c).fired();
            bool blocked = extend_exhaustive(c).status == ExtendStatus::NotExtendable;
            REQUIRE(fired == blocked);
            return true;
        });
    }
}
