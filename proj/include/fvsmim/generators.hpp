#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fvsmim/branchdec.hpp"
#include "fvsmim/builders.hpp"
#include "fvsmim/graph.hpp"

namespace fvsmim {

using Rng = std::mt19937_64;

// Named graphs.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);  // sides 0..a-1 and a..a+b-1
Graph star_graph(int leaves);            // centre 0
Graph petersen_graph();

/// path<n>, cycle<n>, complete<n>, star<n>, petersen, k<a>,<b>, and the
/// short forms P<n>, C<n>, K<n>. nullopt for unknown names.
std::optional<Graph> named_graph(const std::string& name);

Graph random_graph(int n, double p, Rng& rng);
/// Random spanning tree plus each further pair with probability p.
Graph random_connected_graph(int n, double p, Rng& rng);
/// Uniform random labelled tree (Pruefer sequence).
Graph random_tree(int n, Rng& rng);
/// Random weights uniform in [lo, hi].
void assign_random_weights(Graph& g, double lo, double hi, Rng& rng);

/// Random partial 2-tree together with a tree decomposition of width at most 2.
struct TwoTreeInstance {
    Graph graph;
    TreeDecomposition td;
};
TwoTreeInstance random_partial_two_tree(int n, double keep, Rng& rng);

/// Random w-expression on n vertices named v0..v{n-1}.
CwdExpression random_cwd_expression(int n, int w, Rng& rng);

std::vector<Interval> random_intervals(int n, double max_length, Rng& rng);

/// Bipartite graph with sides 0..m-1 and m..2m-1, every degree 2 or 3: a
/// Hamiltonian cycle through both sides plus random extra edges. m >= 2.
Graph random_bipartite_subcubic(int m, double extra, Rng& rng);

/// Random rooted binary decomposition: leaves in random order, merged by
/// repeatedly joining two random subtrees.
BranchDecomposition random_decomposition(int n, Rng& rng);
LinearOrder random_order(int n, Rng& rng);

/// Canonical adjacency string: equal for two graphs iff they are isomorphic.
/// Exponential in the worst case; meant for n <= 10.
std::string canonical_form(const Graph& g);

/// Every connected graph on n vertices up to isomorphism, 1 <= n <= 7.
std::vector<Graph> connected_graphs(int n);

}  // namespace fvsmim
