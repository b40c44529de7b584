#include <catch2/catch_amalgamated.hpp>

#include "pex/coloring.hpp"
#include "pex/graph.hpp"

using namespace pex;

TEST_CASE("colors are set, read, and cleared") {
    Graph p4 = build_path(4);
    PartialEdgeColoring c(p4, 3);
    REQUIRE(c.colored_count() == 0);
    REQUIRE_FALSE(c.is_colored(0));

    c.set(0, 2);
    REQUIRE(c.is_colored(0));
    REQUIRE(c.color(0) == 2);
    REQUIRE(c.color_if_any(1) == std::nullopt);
    REQUIRE(c.colored_edges() == std::vector<int>{0});

    c.unset(0);
    REQUIRE_FALSE(c.is_colored(0));
    REQUIRE_THROWS_AS(c.color(0), std::invalid_argument);

    REQUIRE_THROWS_AS(c.set(0, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(c.set(0, 4), std::invalid_argument);
}

TEST_CASE("properness detects conflicts at shared endpoints") {
    Graph p3 = build_path(3);
    PartialEdgeColoring c(p3, 2);
    REQUIRE(is_proper(c));
    c.set(0, 1);
    c.set(1, 1);
    REQUIRE_FALSE(is_proper(c));
    REQUIRE(properness_violation_vertex(c) == 1);
    c.set(1, 2);
    REQUIRE(is_proper(c));
    REQUIRE_FALSE(properness_violation_vertex(c).has_value());
}

TEST_CASE("colors_at and missing_colors are sorted and complementary") {
    Graph s3 = build_star(3);
    PartialEdgeColoring c(s3, 4);
    c.set(0, 3);
    c.set(2, 1);
    REQUIRE(colors_at(c, 0) == std::vector<int>{1, 3});
    REQUIRE(missing_colors(c, 0) == std::vector<int>{2, 4});
    REQUIRE(colors_at(c, 2) == std::vector<int>{});
    REQUIRE(missing_colors(c, 2) == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("independence means pairwise nonadjacent colored edges") {
    Graph p4 = build_path(4);
    PartialEdgeColoring c(p4, 2);
    c.set(0, 1);
    c.set(2, 1);
    REQUIRE(is_independent(c));
    c.set(1, 2);
    REQUIRE_FALSE(is_independent(c));
}

TEST_CASE("agreement requires a total proper extension") {
    Graph p3 = build_path(3);
    PartialEdgeColoring pre(p3, 2);
    pre.set(0, 1);

    PartialEdgeColoring full(p3, 2);
    full.set(0, 1);
    REQUIRE_FALSE(agrees_with(full, pre)); // not total
    full.set(1, 2);
    REQUIRE(agrees_with(full, pre));

    PartialEdgeColoring other(p3, 2);
    other.set(0, 2);
    other.set(1, 1);
    REQUIRE_FALSE(agrees_with(other, pre)); // disagrees on edge 0

    PartialEdgeColoring improper(p3, 2);
    improper.set(0, 1);
    improper.set(1, 1);
    REQUIRE_FALSE(agrees_with(improper, pre));
}

TEST_CASE("with_palette widens without moving colors") {
    Graph p3 = build_path(3);
    PartialEdgeColoring c(p3, 2);
    c.set(1, 2);
    PartialEdgeColoring w = c.with_palette(5);
    REQUIRE(w.palette() == 5);
    REQUIRE(w.color(1) == 2);
    REQUIRE_FALSE(w.is_colored(0));
}

TEST_CASE("color permutations compose and invert") {
    ColorPermutation pi({0, 3, 1, 2});
    REQUIRE(pi.apply(1) == 3);
    REQUIRE(pi.inverse().apply(3) == 1);
    REQUIRE(pi.inverse().inverse().forward == pi.forward);
    REQUIRE(ColorPermutation::identity(4).is_identity());
    REQUIRE_THROWS_AS(ColorPermutation({0, 1, 1, 3}), std::invalid_argument);
}

TEST_CASE("applying a permutation renames every colored edge") {
    Graph p4 = build_path(4);
    PartialEdgeColoring c(p4, 3);
    c.set(0, 1);
    c.set(2, 3);
    PartialEdgeColoring r = apply_permutation(c, ColorPermutation({0, 2, 3, 1}));
    REQUIRE(r.color(0) == 2);
    REQUIRE(r.color(2) == 1);
    REQUIRE_FALSE(r.is_colored(1));
}

TEST_CASE("normalization renames by first appearance in edge order") {
    Graph p4 = build_path(4);
    PartialEdgeColoring c(p4, 4);
    c.set(0, 3);
    c.set(1, 1);
    c.set(2, 3);
    auto [n, pi] = normalize_colors(c, 2);
    REQUIRE(n.color(0) == 1);
    REQUIRE(n.color(1) == 2);
    REQUIRE(n.color(2) == 1);
    // 3 -> 1, 1 -> 2; unused colors 2, 4 fill the slots 3, 4 in order.
    REQUIRE(pi.apply(3) == 1);
    REQUIRE(pi.apply(1) == 2);
    REQUIRE(pi.apply(2) == 3);
    REQUIRE(pi.apply(4) == 4);
    // Pulling back recovers the original assignment.
    REQUIRE(apply_permutation(n, pi.inverse()) == c);

    REQUIRE_THROWS_AS(normalize_colors(c, 1), std::invalid_argument);
}
