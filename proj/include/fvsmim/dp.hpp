#pragma once

#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fvsmim/branchdec.hpp"
#include "fvsmim/forest.hpp"
#include "fvsmim/graph.hpp"

namespace fvsmim {

/// Table index (R, M, P) of one node.
struct IndexKey {
    VertexSet forest;             // R: reduced forest in the crossing graph
    VertexSet cover;              // M: minimal vertex cover of the crossing graph minus R
    ComponentPartition partition; // P: over the components of R

    friend bool operator==(const IndexKey&, const IndexKey&) = default;
    size_t hash() const;
};

}  // namespace fvsmim

template <>
struct std::hash<fvsmim::IndexKey> {
    size_t operator()(const fvsmim::IndexKey& k) const { return k.hash(); }
};

namespace fvsmim {

/// Back-pointer into the two child tables. At a leaf, key_a = -1 and
/// value_a = 1 iff the leaf's vertex is in the forest.
struct Witness {
    int key_a = -1;
    int value_a = 0;
    int key_b = -1;
    int value_b = 0;
};

/// Achievable forest sizes i for one key, each with one witness.
struct SizeCell {
    std::vector<std::optional<Witness>> by_size;

    void set(int i, const Witness& w);
    bool has(int i) const { return i >= 0 && i < static_cast<int>(by_size.size()) && by_size[i]; }
    std::vector<int> sizes() const;
};

/// Best forest weight within V_t for one key, with its witness.
struct WeightCell {
    double best = -std::numeric_limits<double>::infinity();
    Witness witness;
};

template <class Cell>
struct Table {
    std::vector<IndexKey> keys;
    std::vector<Cell> cells;
    std::unordered_map<IndexKey, int> index;

    int find(const IndexKey& k) const {
        auto it = index.find(k);
        return it == index.end() ? -1 : it->second;
    }
    /// Id of k, inserting an empty cell if needed.
    int intern(const IndexKey& k) {
        auto [it, fresh] = index.emplace(k, static_cast<int>(keys.size()));
        if (fresh) {
            keys.push_back(k);
            cells.emplace_back();
        }
        return it->second;
    }
    size_t size() const { return keys.size(); }
};

using SizeTable = Table<SizeCell>;
using WeightTable = Table<WeightCell>;

/// How parent forests R are proposed at an internal node.
enum class CandidateStrategy {
    /// Only forests assembled from child forests plus B vertices with two
    /// anchors; every other R has no witness.
    Derived,
    /// Every induced forest of the crossing graph with at most 6*m_t vertices
    /// and every partition of its components.
    Exhaustive,
};

/// How two child entries are checked for a union without cycles.
enum class MergeRule {
    /// Sibling consistency plus the exact star-graph union test.
    Exact,
    /// Only the component-overlap auxiliary graph; unsound on some inputs
    /// (a triangle already), kept for comparison.
    Literal,
};

struct SolveOptions {
    /// Replaces every per-cut mim value m_t by this global bound.
    std::optional<int> width_override;
    CandidateStrategy strategy = CandidateStrategy::Derived;
    MergeRule rule = MergeRule::Exact;
    /// Only with MergeRule::Literal: how blocks are linked in the auxiliary graph.
    BlockLinking linking = BlockLinking::Path;
    /// Worker threads per node; 0 or 1 runs sequentially.
    int threads = 1;
    /// Keep every node table in the solution (for inspection in tests).
    bool keep_tables = false;
};

struct NodeStats {
    int node = -1;
    int mim = 0;         // m_t used for this node
    int crossing = 0;    // vertices of the crossing graph
    size_t keys = 0;     // stored (R, M, P) keys
    long double key_bound = 0;  // 2 * n^{6m} * n^{m} * B_{6m}
};

struct Solution {
    VertexSet forest;
    VertexSet fvs;
    double objective = 0;             // forest size, or forest weight when weighted
    std::vector<int> root_sizes;      // achievable sizes at the root (unweighted)
    std::vector<NodeStats> stats;     // one per tree node, post order
    std::vector<SizeTable> size_tables;      // when keep_tables, indexed by node
    std::vector<WeightTable> weight_tables;  // when keep_tables, indexed by node
};

/// Upper bound 2 * n^{6m} * n^{m} * B_{6m} on the keys of a node with mim value m.
long double table_key_bound(int n, int m);

/// Table of leaf t. Throws std::invalid_argument if t is not a leaf.
SizeTable leaf_table(const Graph& g, const BranchDecomposition& dec, int t);

/// Table of internal node t from its children's tables (children(t)[0] gives
/// table_a). Per-cut bounds come from the cut mim values unless overridden.
SizeTable merge_node(const Graph& g, const BranchDecomposition& dec, int t, const SizeTable& table_a,
                     const SizeTable& table_b, const SolveOptions& opts = {});

/// Maximum induced forest. Throws std::invalid_argument when dec does not
/// match g.
Solution solve_mif(const Graph& g, const BranchDecomposition& dec, const SolveOptions& opts = {});

/// Maximum-weight induced forest (minimum-weight feedback vertex set).
Solution solve_weighted_mif(const Graph& g, const BranchDecomposition& dec,
                            const SolveOptions& opts = {});

}  // namespace fvsmim
