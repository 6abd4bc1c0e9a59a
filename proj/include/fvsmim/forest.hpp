#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fvsmim/graph.hpp"

namespace fvsmim {

/// Partition of the components of a forest, as a restricted growth string:
/// block_of[c] is the block of component c, components ordered by minimum
/// vertex, blocks numbered by first appearance.
struct ComponentPartition {
    std::vector<int> block_of;

    static ComponentPartition singletons(int count);
    static ComponentPartition from_blocks(const std::vector<std::vector<int>>& blocks, int count);

    int num_components() const { return static_cast<int>(block_of.size()); }
    int num_blocks() const;
    std::vector<std::vector<int>> blocks() const;
    bool same_block(int c1, int c2) const { return block_of[c1] == block_of[c2]; }

    friend bool operator==(const ComponentPartition&, const ComponentPartition&) = default;
    size_t hash() const;
};

/// Every partition of {0..count-1}, in restricted-growth-string order.
std::vector<ComponentPartition> all_partitions(int count);

/// Bell number B_k, exact for k <= 25.
unsigned long long bell_number(int k);

/// Induced forest of a crossing graph together with its components.
struct ReducedForest {
    VertexSet vertices;
    std::vector<VertexSet> components;  // ordered by minimum vertex

    ReducedForest() = default;
    ReducedForest(const CrossingGraph& host, VertexSet vs);

    int size() const { return vertices.size(); }
    bool empty() const { return vertices.empty(); }
    int component_of(int v) const;
};

/// Which endpoint of a single-edge component survives reduction.
enum class SingleEdgeRule { PreferSideA, PreferSideB, PreferSmallerId };

/// Reduced forest of the forest h[f]: isolated vertices dropped, one endpoint
/// of each single-edge component dropped (the survivor is `preferred` if
/// exactly one endpoint lies there, else per `rule`), leaves of larger
/// components dropped.
VertexSet reduce(const CrossingGraph& h, const VertexSet& f,
                 SingleEdgeRule rule = SingleEdgeRule::PreferSideA,
                 const VertexSet* preferred = nullptr);

/// Visits every vertex subset of h with at most `bound` vertices that induces
/// a forest, including the empty set, each exactly once.
void for_each_candidate_forest(const CrossingGraph& h, int bound,
                               const std::function<void(const VertexSet&)>& visit);
std::vector<VertexSet> enumerate_candidate_forests(const CrossingGraph& h, int bound);

/// N_H(x) minus N_H(R - x) minus (M + R). Throws if x is not in R.
VertexSet potential_leaves(const CrossingGraph& h, const VertexSet& r, const VertexSet& m, int x);

/// Every vertex of degree at most one in h[r] has a potential leaf.
bool is_valid_index(const CrossingGraph& h, const VertexSet& r, const VertexSet& m);

/// Vertex partition (A1, A2, B) of the host graph.
struct ThreePartition {
    VertexSet a1, a2, b;
};

/// Throws std::invalid_argument unless the parts are disjoint and cover V(g).
void check_partition(const Graph& g, const ThreePartition& parts);

/// (r1, m1) on G_{A1, A2+B} is a restriction of (r, m) on G_{A1+A2, B}.
bool is_restriction(const Graph& g, const VertexSet& r1, const VertexSet& m1, const VertexSet& r,
                    const VertexSet& m, const ThreePartition& parts);

/// Every vertex of (R - R1 - R2) in B has two neighbours in (R1 & A1) + (R2 & A2).
bool two_neighbor_condition(const Graph& g, const VertexSet& r, const VertexSet& r1,
                            const VertexSet& r2, const ThreePartition& parts);

/// How components sharing a block of P1 or P2 are linked in the auxiliary graph.
enum class BlockLinking {
    Path,    // consecutive members of a block, a spanning tree of the block
    Clique,  // every pair of members
};

struct CompatibilityResult {
    bool compatible = false;
    std::optional<ComponentPartition> merged;  // U(R, R1, R2, P1, P2), set when compatible
};

/// Builds the auxiliary graph Q on C(R) + C(R1) + C(R2) and tests it for cycles.
CompatibilityResult compatibility(const ReducedForest& r, const ReducedForest& r1,
                                  const ReducedForest& r2, const ComponentPartition& p1,
                                  const ComponentPartition& p2,
                                  BlockLinking linking = BlockLinking::Path);

/// R1 & A2 inside R2, R2 & A1 inside R1, M1 & A2 inside M2, M2 & A1 inside M1:
/// what one child assumes about the sibling's side agrees with the sibling.
bool siblings_consistent(const ThreePartition& parts, const VertexSet& r1, const VertexSet& m1,
                         const VertexSet& r2, const VertexSet& m2);

/// Exact union test for two child partial forests. Each child forest is
/// replaced by one star per block of its partition, centred on a fresh node
/// and spanning the block's reduced-forest vertices; edges of G between
/// known vertices that neither child sees are added explicitly. The union
/// is a forest iff the star graph has exactly as many independent cycles as
/// there are edges both children see (A1-A2 edges inside R1 & R2).
class ForestGluing {
public:
    ForestGluing(const Graph& g, const ThreePartition& parts, const ReducedForest& r,
                 const ReducedForest& r1, const ReducedForest& r2);

    /// compatible iff the union is a forest; merged is the connectivity
    /// partition of C(R).
    CompatibilityResult evaluate(const ComponentPartition& p1, const ComponentPartition& p2) const;

    int shared_edges() const { return shared_; }

private:
    int num_vertex_nodes_ = 0;
    int shared_ = 0;
    std::vector<std::pair<int, int>> fixed_edges_;
    std::vector<std::vector<int>> comp1_nodes_, comp2_nodes_;
    std::vector<int> parent_reps_;
};

}  // namespace fvsmim

template <>
struct std::hash<fvsmim::ComponentPartition> {
    size_t operator()(const fvsmim::ComponentPartition& p) const { return p.hash(); }
};
