#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fvsmim/branchdec.hpp"
#include "fvsmim/generators.hpp"
#include "fvsmim/mvc.hpp"
#include "fvsmim/oracle.hpp"

using namespace fvsmim;

namespace {

std::vector<std::vector<int>> as_lists(const std::vector<VertexSet>& covers) {
    std::vector<std::vector<int>> out;
    for (const auto& c : covers) out.push_back(c.to_vector());
    std::sort(out.begin(), out.end());
    return out;
}

// the crossing graph's edges as a plain graph for the oracle
Graph plain(const CrossingGraph& h) {
    Graph g(h.host().num_vertices());
    for (auto [u, v] : h.edges()) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("covers of a single edge") {
    Graph g(2);
    g.add_edge(0, 1);
    CrossingGraph h = crossing_graph(g, VertexSet(2, {0}), VertexSet(2, {1}));
    CHECK(as_lists(enumerate_minimal_vertex_covers(h, 1)) == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(is_minimal_vertex_cover(h, VertexSet(2, {0})));
    CHECK(is_vertex_cover(h, VertexSet(2, {0, 1})));
    CHECK_FALSE(is_minimal_vertex_cover(h, VertexSet(2, {0, 1})));
}

TEST_CASE("covers of two disjoint edges") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    CrossingGraph h = crossing_graph(g, VertexSet(4, {0, 2}), VertexSet(4, {1, 3}));
    const auto expect = std::vector<std::vector<int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    CHECK(as_lists(enumerate_minimal_vertex_covers(h, 2)) == expect);
    CHECK(oracle::minimal_vertex_covers(plain(h)) == expect);
}

TEST_CASE("covers of K_{2,3}") {
    Graph g = complete_bipartite(2, 3);
    VertexSet a(5, {0, 1});
    CrossingGraph h = crossing_graph(g, a, a.complement());
    auto covers = enumerate_minimal_vertex_covers(h, 1);
    CHECK(as_lists(covers) == std::vector<std::vector<int>>{{0, 1}, {2, 3, 4}});
    CHECK(covers.size() <= 5u);
    CHECK(is_minimal_vertex_cover(h, a));
    for (auto side : {CoverSide::A, CoverSide::B})
        CHECK(as_lists(enumerate_minimal_vertex_covers(h, 1, {side, 0})) == as_lists(covers));
}

TEST_CASE("edgeless graph has only the empty cover") {
    Graph g(3);
    CrossingGraph h = crossing_graph(g, VertexSet(3, {0}), VertexSet(3, {1, 2}));
    auto covers = enumerate_minimal_vertex_covers(h, 0);
    REQUIRE(covers.size() == 1);
    CHECK(covers[0].empty());
}

TEST_CASE("enumeration equals the subset scan once w reaches mim") {
    Rng rng(31);
    for (int round = 0; round < 150; ++round) {
        const int n = 4 + static_cast<int>(rng() % 9);
        Graph g = random_graph(n, 0.35, rng);
        VertexSet a(n);
        for (int v = 0; v < n; ++v)
            if (rng() & 1) a.insert(v);
        CrossingGraph h = crossing_graph(g, a, a.complement());
        const int w = max_induced_matching(h);
        const auto expect = oracle::minimal_vertex_covers(plain(h));
        for (auto side : {CoverSide::Auto, CoverSide::A, CoverSide::B}) {
            auto covers = enumerate_minimal_vertex_covers(h, w, {side, 0});
            CHECK(as_lists(covers) == expect);
            CHECK(static_cast<double>(covers.size()) <= std::max(1.0, std::pow(n, w)));
            for (const auto& c : covers) CHECK(is_minimal_vertex_cover(h, c));
        }
    }
}

TEST_CASE("a parameter below mim is caught by verification") {
    Graph g(6);
    VertexSet a(6, {0, 2, 4});
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    g.add_edge(4, 5);
    CrossingGraph h = crossing_graph(g, a, a.complement());
    CHECK(enumerate_minimal_vertex_covers(h, 1).size() < 8u);
    CHECK_THROWS_AS(enumerate_minimal_vertex_covers(h, 1, {CoverSide::Auto, 20}), ParameterTooSmall);
    CHECK(enumerate_minimal_vertex_covers(h, 3, {CoverSide::Auto, 20}).size() == 8u);
}
