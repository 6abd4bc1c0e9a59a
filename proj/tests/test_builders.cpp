#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "fvsmim/builders.hpp"
#include "fvsmim/generators.hpp"

using namespace fvsmim;

namespace {

const std::string kP5 =
    "j(2,1,u(r(1,3,j(1,2,u(r(2,3,j(2,1,u(r(1,3,j(1,2,u(v(1,a),v(2,b)))),v(1,c)))),v(2,d)))),v(1,e)))";

void check_binary(const BranchDecomposition& dec, int n) {
    CHECK(dec.num_graph_vertices() == n);
    std::set<int> seen;
    for (int t = 0; t < dec.num_nodes(); ++t) {
        if (dec.is_leaf(t))
            seen.insert(dec.leaf_vertex(t));
        else
            CHECK(dec.children(t).size() == 2);
    }
    CHECK(static_cast<int>(seen.size()) == n);
}

// At internal nodes, N(V_t) - V_t has at most w vertices and lies inside some bag
bool separated_by_some_bag(const Graph& g, const BranchDecomposition& dec,
                           const NiceTreeDecomposition& td, int w) {
    for (int t = 0; t < dec.num_nodes(); ++t) {
        if (t == dec.root() || dec.is_leaf(t)) continue;
        const VertexSet sep = g.open_neighborhood(dec.vertices_below(t));
        if (sep.size() > w) return false;
        bool found = false;
        for (const auto& node : td.nodes)
            if (sep.subset_of(VertexSet::of(g.num_vertices(), node.bag))) found = true;
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("path powers have mim-width one") {
    Graph p6 = path_graph(6);
    auto td = forest_nice_decomposition(p6);
    td.validate(p6);
    CHECK(td.width == 1);
    CHECK(td.max_join_bag() <= 1);
    auto conv = convert_nice_td(td);
    check_binary(conv.dec, 6);
    CHECK(separator_violations(p6, td, conv).empty());
    for (int k = 1; k <= 5; ++k) CHECK(mim_width(power_graph(p6, k), conv.dec) == 1);
}

TEST_CASE("star squared is a clique of mim-width one") {
    Graph star = star_graph(4);
    auto td = forest_nice_decomposition(star);
    auto dec = branchdec_from_nice_td(td);
    Graph sq = power_graph(star, 2);
    CHECK(sq.num_edges() == 10);
    CHECK(mim_width(sq, dec) <= 1);
    CHECK(separated_by_some_bag(star, dec, td, 1));
}

TEST_CASE("treewidth-two powers stay within width three") {
    Rng rng(10);
    for (int round = 0; round < 40; ++round) {
        const int n = 3 + static_cast<int>(rng() % 10);
        auto inst = random_partial_two_tree(n, 0.7, rng);
        auto td = make_nice(inst.graph, inst.td, 3);
        td.validate(inst.graph);
        auto conv = convert_nice_td(td);
        check_binary(conv.dec, n);
        CHECK(separator_violations(inst.graph, td, conv).empty());
        CHECK(separated_by_some_bag(inst.graph, conv.dec, td, 3));
        for (int k : {1, 2, 3}) CHECK(mim_width(power_graph(inst.graph, k), conv.dec) <= 3);
    }
}

TEST_CASE("nice decomposition checks") {
    Graph p3 = path_graph(3);
    TreeDecomposition bad{{{0, 1}, {2}}, {{0, 1}}};
    CHECK_THROWS_AS(make_nice(p3, bad), std::invalid_argument);
    TreeDecomposition ok{{{0, 1}, {1, 2}}, {{0, 1}}};
    auto td = make_nice(p3, ok);
    td.validate(p3);
    CHECK(td.width == 1);
    td.width = 0;
    CHECK_THROWS_AS(td.validate(p3), std::invalid_argument);
    CHECK_THROWS_AS(forest_nice_decomposition(complete_graph(3)), std::invalid_argument);
}

TEST_CASE("a join bag above the declared width is rejected") {
    Graph c4 = cycle_graph(4);
    TreeDecomposition td{{{0, 2}, {0, 1, 2}, {0, 2, 3}}, {{0, 1}, {0, 2}}};
    auto nice = make_nice(c4, td);
    nice.validate(c4);
    REQUIRE(nice.max_join_bag() == 2);
    nice.width = 1;
    CHECK_THROWS_AS(convert_nice_td(nice), std::invalid_argument);
}

TEST_CASE("nice decomposition text round trip") {
    Rng rng(3);
    auto inst = random_partial_two_tree(9, 0.8, rng);
    auto td = make_nice(inst.graph, inst.td);
    std::stringstream ss;
    td.write(ss);
    auto back = NiceTreeDecomposition::read(ss, 9);
    back.validate(inst.graph);
    std::stringstream again;
    back.write(again);
    CHECK(again.str() == ss.str());
    std::istringstream broken("td 2 1\nb 0 leaf : \nb 1 forget x : \n");
    CHECK_THROWS_AS(NiceTreeDecomposition::read(broken), ParseError);
}

TEST_CASE("plain tree decomposition format") {
    std::istringstream in("c path\ntd 2 1\nb 0 : 0 1\nb 1 : 1 2\ne 0 1\n");
    auto td = TreeDecomposition::read(in);
    CHECK(td.bags == std::vector<std::vector<int>>{{0, 1}, {1, 2}});
    CHECK(td.edges.size() == 1u);
}

TEST_CASE("clique-width: single edge") {
    auto expr = CwdExpression::parse("j(1,2,u(v(1,a),v(2,b)))");
    CHECK(expr.num_labels() == 2);
    auto conv = branchdec_from_cwd(expr);
    CHECK(conv.graph.num_vertices() == 2);
    CHECK(conv.graph.num_edges() == 1);
    CHECK(conv.dec.num_nodes() == 3);
    CHECK(conv.names == std::vector<std::string>{"a", "b"});
    CHECK(mim_width(conv.graph, conv.dec) == 1);
}

TEST_CASE("clique-width: path on five vertices") {
    auto expr = CwdExpression::parse(kP5);
    CHECK(expr.num_labels() == 3);
    auto conv = branchdec_from_cwd(expr);
    CHECK(conv.graph == path_graph(5));
    for (int k = 1; k <= 4; ++k) CHECK(mim_width(power_graph(conv.graph, k), conv.dec) <= 2);
    CHECK(label_class_violations(evaluate(expr)).empty());
}

TEST_CASE("clique-width: cograph") {
    auto expr = CwdExpression::parse(
        " j(1,2, u( u(v(1,a), j(1,2,u(v(1,b),v(2,c)))), u(v(2,d), v(2,e)) ) )");
    auto conv = branchdec_from_cwd(expr);
    CHECK(conv.graph.num_vertices() == 5);
    CHECK(mim_width(conv.graph, conv.dec) <= 2);
    CHECK(label_class_violations(evaluate(expr)).empty());
}

TEST_CASE("clique-width: random expressions") {
    Rng rng(5);
    for (int round = 0; round < 40; ++round) {
        const int w = 1 + static_cast<int>(rng() % 3);
        const int n = 1 + static_cast<int>(rng() % 14);
        auto expr = random_cwd_expression(n, w, rng);
        CHECK(expr.num_labels() <= w);
        auto round_trip = CwdExpression::parse(expr.to_string());
        CHECK(round_trip.to_string() == expr.to_string());
        auto ev = evaluate(expr);
        CHECK(label_class_violations(ev).empty());
        auto conv = branchdec_from_cwd(expr);
        check_binary(conv.dec, n);
        for (int k : {1, 2, 3}) CHECK(mim_width(power_graph(conv.graph, k), conv.dec) <= w);
    }
}

TEST_CASE("clique-width parse errors carry the offset") {
    auto offset = [](const std::string& text) {
        try {
            CwdExpression::parse(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        return -1;
    };
    CHECK(offset("j(1,2,u(v(1,a),v(2,b))") == 22);
    CHECK(offset("q(1,a)") == 0);
    CHECK(offset("v(0,a)") >= 0);
    CHECK(offset("u(v(1,a),v(1,a))") >= 0);
    CHECK(offset("j(1,1,v(1,a))") >= 0);
    CHECK(offset("v(1,a) x") == 7);
}

TEST_CASE("leaf powers") {
    Graph cat(7);
    for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 6}}) cat.add_edge(u, v);
    auto lp = leaf_power_instance(cat, 3);
    CHECK(lp.leaves == std::vector<int>{3, 4, 5, 6});
    CHECK(mim_width(lp.graph, lp.dec) <= 1);

    auto st = leaf_power_instance(star_graph(5), 2);
    CHECK(st.graph == complete_graph(5));
    CHECK(mim_width(st.graph, st.dec) == 1);

    CHECK_THROWS_AS(leaf_power_instance(cycle_graph(4), 2), std::invalid_argument);

    Rng rng(21);
    for (int round = 0; round < 30; ++round) {
        Graph t = random_tree(3 + static_cast<int>(rng() % 18), rng);
        for (int k : {2, 3, 4}) {
            auto inst = leaf_power_instance(t, k);
            CHECK(mim_width(inst.graph, inst.dec) <= 1);
        }
    }
}

TEST_CASE("hamiltonian-cycle instance from C4") {
    auto h = hamcyc_construct(cycle_graph(4));
    std::set<std::string> names(h.names.begin(), h.names.end());
    CHECK(names == std::set<std::string>{"X1", "X2", "Y1", "Y2", "A1_1", "A2_1", "A1_2", "A2_2"});
    CHECK(h.graph.num_vertices() == 8);
    std::vector<std::string> order;
    for (int v : h.order) order.push_back(h.names[v]);
    CHECK(order == std::vector<std::string>{"Y1", "A1_1", "A2_1", "Y2", "A1_2", "A2_2", "X2", "X1"});
    auto report = check_hamcyc(h);
    CHECK(report.all());
    CHECK(report.order_width == 1);
}

TEST_CASE("hamiltonian-cycle instances pass every property") {
    for (const Graph& g : {cycle_graph(6), complete_bipartite(3, 3)}) {
        auto h = hamcyc_construct(g);
        auto report = check_hamcyc(h);
        CHECK(report.independent_xyz);
        CHECK(report.a_clique);
        CHECK(report.yz_neighbors);
        CHECK(report.nesting);
        CHECK(report.no_late_uz);
        CHECK(report.order_width == 1);
    }
    auto k33 = hamcyc_construct(complete_bipartite(3, 3));
    for (int z : k33.z) CHECK(z >= 0);
    auto c6 = hamcyc_construct(cycle_graph(6));
    for (int z : c6.z) CHECK(z == -1);

    Rng rng(4);
    for (int round = 0; round < 20; ++round) {
        const int m = 2 + static_cast<int>(rng() % 5);
        auto h = hamcyc_construct(random_bipartite_subcubic(m, 0.4, rng));
        auto report = check_hamcyc(h);
        CHECK(report.all());
        CHECK(report.order_width == 1);
    }
}

TEST_CASE("hamiltonian-cycle preconditions") {
    CHECK_THROWS_AS(hamcyc_construct(path_graph(4)), std::invalid_argument);
    CHECK_THROWS_AS(hamcyc_construct(cycle_graph(5)), std::invalid_argument);
    CHECK_THROWS_AS(hamcyc_construct(complete_bipartite(2, 4)), std::invalid_argument);
    CHECK_THROWS_AS(hamcyc_construct(cycle_graph(4), {0, 1}, {2, 3}), std::invalid_argument);
}

TEST_CASE("interval graphs") {
    auto disjoint = interval_linear_order({{0, 1}, {2, 3}, {4, 5}});
    CHECK(disjoint.graph.num_edges() == 0);
    CHECK(cut_mim_values(disjoint.graph, from_linear_order(disjoint.order)) == std::vector<int>(5, 0));

    auto nested = interval_linear_order({{1, 10}, {2, 9}, {3, 8}});
    CHECK(nested.graph == complete_graph(3));
    CHECK(mim_width(nested.graph, from_linear_order(nested.order)) == 1);

    CHECK_THROWS_AS(interval_linear_order({{2, 1}}), std::invalid_argument);

    Rng rng(20);
    for (int round = 0; round < 20; ++round) {
        auto inst = interval_linear_order(random_intervals(20, 5.0, rng));
        if (inst.graph.num_edges() > 0) CHECK(mim_width(inst.graph, from_linear_order(inst.order)) == 1);
    }
}

TEST_CASE("catalog of connected graphs") {
    const size_t counts[] = {0, 1, 1, 2, 6, 21, 112, 853};
    for (int n = 1; n <= 7; ++n) {
        auto graphs = connected_graphs(n);
        CHECK(graphs.size() == counts[n]);
        std::set<std::string> forms;
        for (const auto& g : graphs) {
            CHECK(is_connected(g));
            forms.insert(canonical_form(g));
        }
        CHECK(forms.size() == graphs.size());
    }
}

TEST_CASE("canonical form ignores labels") {
    Rng rng(30);
    for (int round = 0; round < 50; ++round) {
        Graph g = random_graph(8, 0.4, rng);
        auto perm = random_order(8, rng);
        Graph h(8);
        for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
        CHECK(canonical_form(g) == canonical_form(h));
    }
    CHECK(canonical_form(path_graph(4)) != canonical_form(star_graph(3)));
}
