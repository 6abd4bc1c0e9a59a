#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fvsmim/generators.hpp"
#include "fvsmim/oracle.hpp"

using namespace fvsmim;

TEST_CASE("largest induced forests") {
    Rng rng(1);
    Graph t = random_tree(9, rng);
    CHECK(oracle::max_induced_forest(t).value == 9);
    CHECK(oracle::max_induced_forest(complete_graph(5)).value == 2);
    auto pet = oracle::max_induced_forest(petersen_graph());
    CHECK(pet.value == 7);
    CHECK(oracle::induces_forest(petersen_graph(), pet.witness));
    CHECK(oracle::max_induced_forest(Graph(0)).value == 0);
}

TEST_CASE("lightest feedback vertex sets") {
    Graph tri = complete_graph(3);
    tri.set_weight(0, 5);
    auto a = oracle::min_weight_fvs(tri);
    CHECK(a.value == 1);
    CHECK(a.witness.size() == 1u);
    CHECK(a.witness[0] != 0);
    CHECK(oracle::min_weight_fvs(cycle_graph(4)).value == 1);

    Rng rng(2);
    for (int round = 0; round < 30; ++round) {
        Graph g = random_graph(9, 0.4, rng);
        CHECK(oracle::min_weight_fvs(g).value == 9 - oracle::max_induced_forest(g).value);
    }
}

TEST_CASE("minimal vertex covers") {
    Graph e(2);
    e.add_edge(0, 1);
    CHECK(oracle::minimal_vertex_covers(e).size() == 2u);
    Graph two(4);
    two.add_edge(0, 1);
    two.add_edge(2, 3);
    CHECK(oracle::minimal_vertex_covers(two).size() == 4u);
    CHECK(oracle::minimal_vertex_covers(complete_bipartite(3, 3)) ==
          std::vector<std::vector<int>>{{0, 1, 2}, {3, 4, 5}});
    CHECK(oracle::minimal_vertex_covers(Graph(3)) == std::vector<std::vector<int>>{{}});
}

TEST_CASE("induced matchings") {
    Graph e(2);
    e.add_edge(0, 1);
    CHECK(oracle::max_induced_matching(e) == 1);
    CHECK(oracle::max_induced_matching(path_graph(4)) == 1);
    Graph three(6);
    for (int i = 0; i < 3; ++i) three.add_edge(2 * i, 2 * i + 1);
    CHECK(oracle::max_induced_matching(three) == 3);
    CHECK(oracle::max_induced_matching(path_graph(5)) == 2);
}

TEST_CASE("limits refuse large instances") {
    CHECK_THROWS_AS(oracle::max_induced_forest(path_graph(17)), oracle::Refused);
    oracle::Limits wide;
    wide.forest_vertices = 18;
    CHECK(oracle::max_induced_forest(path_graph(17), wide).value == 17);
    CHECK_THROWS_AS(oracle::minimal_vertex_covers(path_graph(21)), oracle::Refused);
    CHECK_THROWS_AS(oracle::max_induced_matching(path_graph(22)), oracle::Refused);
}

TEST_CASE("reports") {
    auto r = oracle::compare("fvs_size", "c5", 1, 1);
    CHECK(r.agree);
    CHECK(r.line() == "fvs_size c5 oracle 1 subject 1 agree 1");
    CHECK_FALSE(oracle::compare("fvs_weight", "x", 1.0, 1.5).agree);
    CHECK(oracle::compare("fvs_weight", "x", 1.0, 1.0 + 1e-12, 1e-9).agree);
}
