#include <catch2/catch_amalgamated.hpp>

#include "pex/graph.hpp"

using namespace pex;

TEST_CASE("edges are normalized and sorted") {
    Graph g(4, {{2, 1}, {0, 3}, {0, 1}});
    REQUIRE(g.edge_count() == 3);
    REQUIRE(g.edges[0] == std::pair<int, int>(0, 1));
    REQUIRE(g.edges[1] == std::pair<int, int>(0, 3));
    REQUIRE(g.edges[2] == std::pair<int, int>(1, 2));
    REQUIRE(g.edge_id(1, 2) == 2);
    REQUIRE(g.edge_id(2, 1) == 2);
    REQUIRE(g.edge_id(0, 2) == -1);
}

TEST_CASE("invalid graphs are rejected") {
    REQUIRE_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Graph(3, {{-1, 2}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Graph(0, {}), std::invalid_argument);
}

TEST_CASE("incidence structures agree with edges") {
    Graph g = build_complete(4);
    REQUIRE(g.edge_count() == 6);
    for (int v = 0; v < 4; ++v) {
        REQUIRE(g.degree(v) == 3);
        REQUIRE(g.incident_edges[v].size() == 3);
        for (int e : g.incident_edges[v]) {
            auto [a, b] = g.edges[e];
            REQUIRE((a == v || b == v));
            REQUIRE(g.other_endpoint(e, v) != v);
        }
    }
}

TEST_CASE("builders produce the expected shapes") {
    Graph p1 = build_path(1);
    REQUIRE(p1.vertex_count == 1);
    REQUIRE(p1.edge_count() == 0);

    Graph p4 = build_path(4);
    REQUIRE(p4.edge_count() == 3);
    REQUIRE(is_tree(p4));

    Graph c5 = build_cycle(5);
    REQUIRE(c5.edge_count() == 5);
    REQUIRE(is_regular(c5));
    REQUIRE(max_degree(c5) == 2);
    REQUIRE_FALSE(is_forest(c5));

    Graph s3 = build_star(3);
    REQUIRE(s3.vertex_count == 4);
    REQUIRE(s3.degree(0) == 3);
    REQUIRE(is_tree(s3));

    Graph k5 = build_complete(5);
    REQUIRE(k5.edge_count() == 10);
    REQUIRE(is_regular(k5));
    REQUIRE_FALSE(is_triangle_free(k5));

    Graph k23 = build_complete_bipartite(2, 3);
    REQUIRE(k23.edge_count() == 6);
    REQUIRE(is_triangle_free(k23));
    auto parts = bipartition(k23);
    REQUIRE(parts.has_value());

    Graph q3 = build_hypercube(3);
    REQUIRE(q3.vertex_count == 8);
    REQUIRE(q3.edge_count() == 12);
    REQUIRE(is_regular(q3));
    REQUIRE(max_degree(q3) == 3);
    REQUIRE(is_triangle_free(q3));
}

TEST_CASE("pruefer decoding yields trees with the right degrees") {
    // Sequence (3, 3, 3, 4) decodes to a 6-vertex tree where vertex v has
    // degree 1 + (occurrences of v in the sequence).
    Graph t = build_tree_from_pruefer({3, 3, 3, 4});
    REQUIRE(is_tree(t));
    REQUIRE(t.degree(3) == 4);
    REQUIRE(t.degree(4) == 2);
    REQUIRE(t.degree(0) == 1);

    Graph t2 = build_tree_from_pruefer({});
    REQUIRE(t2.edge_count() == 1);
}

TEST_CASE("cartesian product has the product structure") {
    Graph k2 = build_complete(2);
    Graph c4 = cartesian_product(k2, k2);
    REQUIRE(c4.vertex_count == 4);
    REQUIRE(c4.edge_count() == 4);
    REQUIRE(is_regular(c4));
    REQUIRE(max_degree(c4) == 2);
    REQUIRE(is_connected(c4));
    REQUIRE(is_triangle_free(c4));

    Graph p3 = build_path(3);
    Graph grid = cartesian_product(p3, p3);
    REQUIRE(grid.vertex_count == 9);
    REQUIRE(grid.edge_count() == 12);
    REQUIRE(grid.degree(4) == 4); // center of the 3x3 grid
}

TEST_CASE("prism of a graph matches the cartesian product with K2") {
    Graph c5 = build_cycle(5);
    PrismDecomposition d = prism(c5);
    REQUIRE(d.product.vertex_count == 10);
    REQUIRE(d.product.edge_count() == 15);
    REQUIRE(d.copy_edges[0].size() == 5);
    REQUIRE(d.copy_edges[1].size() == 5);
    REQUIRE(d.matching_edges.size() == 5);

    // Copy structure mirrors the base graph.
    for (int be = 0; be < c5.edge_count(); ++be) {
        auto [u, v] = c5.edges[be];
        int e1 = d.copy_edges[0][be];
        int e2 = d.copy_edges[1][be];
        REQUIRE(d.product.edges[e1] == std::pair<int, int>(u, v));
        REQUIRE(d.product.edges[e2] == std::pair<int, int>(u + 5, v + 5));
        REQUIRE(d.corresponding_edge(e1) == e2);
        REQUIRE(d.corresponding_edge(e2) == e1);
    }
    for (int v = 0; v < 5; ++v) {
        int me = d.matching_edges[v];
        REQUIRE(d.product.edges[me] == std::pair<int, int>(v, v + 5));
        REQUIRE(d.is_matching_edge(me));
    }
}

TEST_CASE("prism of Q3 is exactly Q4") {
    PrismDecomposition d = prism(build_hypercube(3));
    REQUIRE(d.product == build_hypercube(4));
}

TEST_CASE("edge distance counts edges on a shortest connecting path") {
    Graph p5 = build_path(5); // edges 0-1, 1-2, 2-3, 3-4
    int a = p5.edge_id(0, 1);
    int b = p5.edge_id(1, 2);
    int c = p5.edge_id(3, 4);
    REQUIRE(edge_distance(p5, a, b) == 0);
    REQUIRE(edge_distance(p5, a, c) == 2);
    REQUIRE_THROWS_AS(edge_distance(p5, a, a), std::invalid_argument);

    Graph two = Graph(4, {{0, 1}, {2, 3}});
    REQUIRE_FALSE(edge_distance(two, 0, 1).has_value());

    Graph c6 = build_cycle(6);
    REQUIRE(edge_distance(c6, c6.edge_id(0, 1), c6.edge_id(3, 4)) == 2);
}

TEST_CASE("connectivity and forest predicates") {
    Graph two = Graph(4, {{0, 1}, {2, 3}});
    REQUIRE_FALSE(is_connected(two));
    REQUIRE(is_forest(two));
    REQUIRE_FALSE(is_tree(two));

    auto labels = component_labels(two);
    REQUIRE(labels[0] == labels[1]);
    REQUIRE(labels[2] == labels[3]);
    REQUIRE(labels[0] != labels[2]);

    REQUIRE(is_tree(build_star(4)));
    REQUIRE_FALSE(bipartition(build_cycle(5)).has_value());
    REQUIRE(bipartition(build_cycle(6)).has_value());
}

TEST_CASE("relabeling permutes endpoints") {
    Graph p3 = build_path(3);
    Graph r = relabel_graph(p3, {2, 0, 1}); // old v -> new perm[v]
    REQUIRE(r.has_edge(2, 0));
    REQUIRE(r.has_edge(0, 1));
    REQUIRE_FALSE(r.has_edge(1, 2));
}

TEST_CASE("edge subgraph keeps all vertices") {
    Graph k4 = build_complete(4);
    Graph sub = edge_subgraph(k4, {k4.edge_id(0, 1), k4.edge_id(2, 3)});
    REQUIRE(sub.vertex_count == 4);
    REQUIRE(sub.edge_count() == 2);
    REQUIRE(sub.has_edge(0, 1));
    REQUIRE(sub.has_edge(2, 3));
}
