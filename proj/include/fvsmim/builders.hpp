#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fvsmim/branchdec.hpp"
#include "fvsmim/graph.hpp"

namespace fvsmim {

// ---- nice tree decompositions ----

enum class BagKind { Leaf, Introduce, Forget, Join };

/// Rooted nice tree decomposition of a graph on vertices 0..num_vertices-1.
/// `width` is the declared width: bags hold at most width+1 vertices.
struct NiceTreeDecomposition {
    struct Node {
        BagKind kind = BagKind::Leaf;
        int vertex = -1;            // introduced or forgotten vertex
        std::vector<int> bag;       // sorted
        std::vector<int> children;
    };

    int num_vertices = 0;
    int width = 0;
    int root = -1;
    std::vector<Node> nodes;

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int max_join_bag() const;

    /// Throws std::invalid_argument naming the first broken rule: node kinds
    /// and bags, tree shape, bag sizes against the width, an empty root bag,
    /// one forget node per vertex, and the three decomposition axioms for g.
    void validate(const Graph& g) const;

    /// Text format: "td <nodes> <width>", "b <id> <kind> [<v>] : <bag...>",
    /// "e <parent> <child>", "r <root>", "c ..." comments. The vertex count is
    /// the largest bag vertex plus one unless given.
    static NiceTreeDecomposition read(std::istream& in, int num_vertices = -1);
    static NiceTreeDecomposition read_file(const std::string& path, int num_vertices = -1);
    void write(std::ostream& out) const;
    void write_file(const std::string& path) const;
};

/// Plain tree decomposition: bags plus tree edges between bag indices.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;
    std::vector<std::pair<int, int>> edges;

    /// Same layout as the nice format without kinds: "td <bags> <width>",
    /// "b <id> : <bag...>", "e <i> <j>"; the width is ignored.
    static TreeDecomposition read(std::istream& in);
    static TreeDecomposition read_file(const std::string& path);
};

/// Nice form of a tree decomposition rooted at bag 0, with an empty root bag
/// reached through forget nodes. The declared width is the largest bag size
/// minus one unless `width` is larger. Throws std::invalid_argument when the
/// input is not a tree decomposition of g.
NiceTreeDecomposition make_nice(const Graph& g, const TreeDecomposition& td, int width = -1);

/// Nice decomposition of a forest whose join bags hold one vertex: each
/// vertex is introduced above its children's subtrees and the child is
/// forgotten right after. Width 1. Throws std::invalid_argument on a cycle.
NiceTreeDecomposition forest_nice_decomposition(const Graph& forest);

struct TdConversion {
    BranchDecomposition dec;
    std::vector<int> source;  // TD node behind each internal node, -1 at leaves
};

/// Leaf per forget node, unmapped branches dropped, unary nodes smoothed. If
/// the root is left with a single child the root moves down to the first
/// node with two children. Throws std::invalid_argument when a join bag is
/// larger than the declared width or the root bag is not empty.
TdConversion convert_nice_td(const NiceTreeDecomposition& td);
BranchDecomposition branchdec_from_nice_td(const NiceTreeDecomposition& td);

/// Internal nodes t whose separator N(V_t) - V_t is not inside the source bag
/// or has more than `width` vertices.
std::vector<int> separator_violations(const Graph& g, const NiceTreeDecomposition& td,
                                      const TdConversion& conv);

// ---- clique-width expressions ----

enum class CwdOp { Create, Union, Join, Rename };

/// Syntax: v(<label>,<name>), u(<e1>,<e2>), j(<i>,<j>,<e>) adds all edges
/// between labels i and j, r(<i>,<j>,<e>) renames label i to j. Whitespace
/// is ignored; names are [A-Za-z0-9_]+. Labels start at 1.
struct CwdExpression {
    struct Node {
        CwdOp op = CwdOp::Create;
        int a = 0;             // Create: label; Join/Rename: i
        int b = 0;             // Join/Rename: j
        std::string name;      // Create
        int left = -1;         // operand of Join/Rename, first operand of Union
        int right = -1;
    };

    std::vector<Node> nodes;
    int root = -1;

    /// Throws ParseError carrying the 0-based character offset.
    static CwdExpression parse(std::string_view text);
    static CwdExpression read_file(const std::string& path);
    std::string to_string() const;
    /// Largest label used.
    int num_labels() const;
};

struct CwdEvaluation {
    Graph graph;
    std::vector<std::string> names;              // vertex id -> name, in creation order
    std::vector<int> vertex_of;                  // expression node -> vertex for Create, else -1
    std::vector<VertexSet> below;                // vertices created under each node
    std::vector<std::vector<int>> label_at;      // per node: label of each vertex below (0 elsewhere)
};

/// Vertices are numbered by first occurrence in the text. Throws
/// std::invalid_argument on a repeated vertex name.
CwdEvaluation evaluate(const CwdExpression& expr);

/// Nodes where two vertices of one label class differ in their neighbours
/// outside the node's vertex set.
std::vector<int> label_class_violations(const CwdEvaluation& ev);

struct CwdConversion {
    Graph graph;
    BranchDecomposition dec;
    std::vector<std::string> names;
};

/// Leaves are the Create nodes; the root is the topmost Union, unary
/// operations are smoothed away.
CwdConversion branchdec_from_cwd(const CwdExpression& expr);

// ---- leaf powers ----

struct LeafPowerInstance {
    Graph graph;                 // k-power of the tree restricted to its leaves
    BranchDecomposition dec;
    std::vector<int> leaves;     // tree vertex of each graph vertex
};

/// Throws std::invalid_argument if `tree` is not a tree or k < 1.
LeafPowerInstance leaf_power_instance(const Graph& tree, int k);

/// Keeps the listed vertices (renumbered in increasing order, like
/// Graph::induced on a sorted list) and smooths the tree.
BranchDecomposition restrict_decomposition(const BranchDecomposition& dec,
                                           const std::vector<int>& keep);

// ---- Hamiltonian-cycle instances ----

struct HamCycInstance {
    Graph source;
    std::vector<int> v_side, w_side;   // v_1..v_m and w_1..w_m as source vertices
    Graph graph;
    std::vector<std::string> names;
    std::vector<int> x, y, z;          // z[j] = -1 when deg(w_j) < 3
    std::vector<std::vector<int>> a;   // a[i][j] = vertex A_{i,j} or -1
    LinearOrder order;
};

/// The sides are the two colour classes of `source` (colour 0 = v side)
/// unless given. Throws std::invalid_argument naming the offending vertex
/// when the sides differ in size, an edge stays inside a side, or a degree
/// is outside [2, 3].
HamCycInstance hamcyc_construct(const Graph& source);
HamCycInstance hamcyc_construct(const Graph& source, const std::vector<int>& v_side,
                                const std::vector<int>& w_side);

struct HamCycReport {
    bool independent_xyz = false;    // X + Y + Z independent
    bool a_clique = false;           // A a clique
    bool yz_neighbors = false;       // N(Y_j) = N(Z_j) = A_j
    bool nesting = false;            // N(X_i) grows with i, N(A_{i,.}) & X shrinks with i
    bool no_late_uz = false;         // A_j misses Y_{>j} and Z_{>j}
    int order_width = -1;            // evaluated mim-width of the order

    bool all() const {
        return independent_xyz && a_clique && yz_neighbors && nesting && no_late_uz;
    }
};

HamCycReport check_hamcyc(const HamCycInstance& inst);

// ---- interval graphs ----

struct Interval {
    double left = 0;
    double right = 0;
};

struct IntervalInstance {
    Graph graph;
    LinearOrder order;  // by left endpoint, then right endpoint, then index
};

/// Intersection graph of closed intervals. Throws std::invalid_argument if
/// some left > right.
IntervalInstance interval_linear_order(const std::vector<Interval>& intervals);

}  // namespace fvsmim
