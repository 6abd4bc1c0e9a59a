#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fvsmim/graph.hpp"

namespace fvsmim {

/// Permutation of V(G); the cuts of its caterpillar decomposition are the prefixes.
using LinearOrder = std::vector<int>;

/// A subcubic tree with leaves mapped bijectively onto the vertices of a
/// graph, before a root has been chosen.
struct UnrootedDecomposition {
    int num_vertices = 0;
    int num_nodes = 0;
    std::vector<std::pair<int, int>> tree_edges;
    std::vector<std::pair<int, int>> leaf_map;  // (node, vertex)
};

/// Rooted branch decomposition: every internal node has exactly two children.
/// Graphs with at most one vertex get a degenerate single-node tree.
class BranchDecomposition {
public:
    static constexpr int kNone = -1;

    BranchDecomposition() = default;

    /// Builds the rooted decomposition from parent links. Children lists must
    /// have size 0 (leaf, with leaf_vertex set) or 2. Throws
    /// std::invalid_argument when the structure is not a valid decomposition.
    static BranchDecomposition from_children(int num_vertices, int root,
                                             std::vector<std::vector<int>> children,
                                             std::vector<int> leaf_vertex);

    int num_graph_vertices() const { return num_vertices_; }
    int num_nodes() const { return static_cast<int>(children_.size()); }
    int root() const { return root_; }
    int parent(int t) const { return parent_[t]; }
    const std::vector<int>& children(int t) const { return children_[t]; }
    bool is_leaf(int t) const { return children_[t].empty(); }
    int leaf_vertex(int t) const { return leaf_vertex_[t]; }
    int leaf_of(int v) const { return leaf_of_[v]; }

    /// V_t: vertices mapped to leaves below t.
    const VertexSet& vertices_below(int t) const { return below_[t]; }

    /// Nodes in an order where children precede parents.
    const std::vector<int>& post_order() const { return post_order_; }

    /// V_t for every non-root node, in post order.
    std::vector<VertexSet> cuts() const;

    /// Forgets the root: tree edges plus leaf map, root smoothed away.
    UnrootedDecomposition unrooted() const;

    /// Text format: "bd <nodes>", "r <root>", "e <i> <j>", "l <node> <vertex>".
    /// A file holding "order v1 ... vn" is expanded with from_linear_order.
    static BranchDecomposition read(std::istream& in, int num_vertices);
    static BranchDecomposition read_file(const std::string& path, int num_vertices);
    void write(std::ostream& out) const;
    void write_file(const std::string& path) const;
    /// Graphviz rendering of the tree.
    void write_dot(std::ostream& out) const;

private:
    int num_vertices_ = 0;
    int root_ = kNone;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> leaf_vertex_;
    std::vector<int> leaf_of_;
    std::vector<VertexSet> below_;
    std::vector<int> post_order_;
};

/// Subdivides the tree edge at the leaf of the smallest vertex and roots there
/// (or at the given degree-2 node), smoothing any other degree-2 nodes.
BranchDecomposition root_decomposition(const UnrootedDecomposition& dec,
                                       std::optional<int> root_node = std::nullopt);

/// Caterpillar decomposition whose non-leaf cuts are the prefixes of the order.
BranchDecomposition from_linear_order(const LinearOrder& order);

/// Exact maximum induced matching of a bipartite crossing graph.
int max_induced_matching(const CrossingGraph& h);

/// mim_G(V_t) for every node t (0 at the root).
std::vector<int> cut_mim_values(const Graph& g, const BranchDecomposition& dec);

/// Maximum of mim_G(V_t) over all non-root nodes.
int mim_width(const Graph& g, const BranchDecomposition& dec);

/// Throws std::invalid_argument unless dec's leaves cover exactly V(g).
void check_matches(const Graph& g, const BranchDecomposition& dec);

}  // namespace fvsmim
