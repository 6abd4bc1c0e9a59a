#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fvsmim/vertex_set.hpp"

namespace fvsmim {

/// Thrown by every text-format reader. Carries the 1-based line (or
/// character offset, for expressions) where parsing failed.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int position)
        : std::runtime_error(what + " (at " + std::to_string(position) + ")"), position_(position) {}
    int position() const { return position_; }

private:
    int position_;
};

/// Simple undirected graph on vertices 0..n-1 with optional vertex weights.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int num_vertices() const { return n_; }
    int num_edges() const { return m_; }

    /// Adds uv. Returns false if the edge was already present.
    bool add_edge(int u, int v);
    bool has_edge(int u, int v) const { return adj_set_[u].contains(v); }

    const VertexSet& neighbors(int v) const { return adj_set_[v]; }
    const std::vector<int>& adjacency(int v) const { return adj_list_[v]; }
    int degree(int v) const { return static_cast<int>(adj_list_[v].size()); }

    /// Edges as (u, v) with u < v, sorted.
    std::vector<std::pair<int, int>> edges() const;

    VertexSet all_vertices() const { return VertexSet::full(n_); }
    VertexSet empty_set() const { return VertexSet(n_); }

    /// N(S): vertices outside S with a neighbour in S.
    VertexSet open_neighborhood(const VertexSet& s) const;

    double weight(int v) const { return weights_.empty() ? 1.0 : weights_[v]; }
    bool has_weights() const { return !weights_.empty(); }
    void set_weight(int v, double w);
    void set_weight(int v, double w, std::string as_written);
    double weight_of(const VertexSet& s) const;

    /// Induced subgraph; vertex i of the result is members[i].
    Graph induced(const std::vector<int>& members) const;

    friend bool operator==(const Graph& a, const Graph& b);

    // Text format: "p n m", "e u v", "w v weight", "c ..." comments.
    static Graph read(std::istream& in);
    static Graph read_file(const std::string& path);
    void write(std::ostream& out) const;
    void write_file(const std::string& path) const;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<VertexSet> adj_set_;
    std::vector<std::vector<int>> adj_list_;
    std::vector<double> weights_;
    std::vector<std::string> weight_text_;
};

/// Bipartite graph G[side_a, side_b] of a host graph: only host edges with
/// one endpoint per side are present.
class CrossingGraph {
public:
    CrossingGraph(const Graph& host, VertexSet side_a, VertexSet side_b);

    const Graph& host() const { return *host_; }
    const VertexSet& side_a() const { return side_a_; }
    const VertexSet& side_b() const { return side_b_; }
    VertexSet vertices() const { return side_a_ | side_b_; }
    bool contains(int v) const { return side_a_.contains(v) || side_b_.contains(v); }

    /// Neighbours of v within the bipartite graph.
    VertexSet neighbors(int v) const;
    VertexSet neighbors(const VertexSet& s) const;
    std::vector<std::pair<int, int>> edges() const;  // (side_a vertex, side_b vertex)
    int num_edges() const;

    /// H - S. The result may contain isolated vertices.
    CrossingGraph without(const VertexSet& s) const;

private:
    const Graph* host_;
    VertexSet side_a_;
    VertexSet side_b_;
};

/// bd_B(A) = {v in A : N(v) meets B}.
VertexSet boundary(const Graph& g, const VertexSet& a, const VertexSet& b);

/// G_{A,B} = G[bd_B(A), bd_A(B)].
CrossingGraph crossing_graph(const Graph& g, const VertexSet& a, const VertexSet& b);

/// True iff G[S] is acyclic.
bool is_forest(const Graph& g, const VertexSet& s);

/// True iff H[S] is acyclic (crossing edges only).
bool is_forest(const CrossingGraph& h, const VertexSet& s);

/// Connected components of G[S], each as a vertex set, ordered by minimum vertex.
std::vector<VertexSet> components(const Graph& g, const VertexSet& s);
std::vector<VertexSet> components(const CrossingGraph& h, const VertexSet& s);

bool is_connected(const Graph& g);

/// BFS distances from source; -1 for unreachable vertices.
std::vector<int> bfs_distances(const Graph& g, int source);

/// k-th power: uv is an edge iff 1 <= dist(u, v) <= k.
Graph power_graph(const Graph& g, int k);

/// Two-colouring of a bipartite graph, or nullopt if g has an odd cycle.
std::optional<std::vector<int>> two_coloring(const Graph& g);

}  // namespace fvsmim
