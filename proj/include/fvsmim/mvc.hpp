#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fvsmim/graph.hpp"

namespace fvsmim {

/// Raised when an enumeration parameter is smaller than the mim value it
/// must dominate and a minimal vertex cover was found to be missing.
class ParameterTooSmall : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CoverSide { Auto, A, B };

struct CoverEnumOptions {
    /// Side R is drawn from; Auto picks the smaller side.
    CoverSide side = CoverSide::Auto;
    /// On graphs with at most this many vertices, cross-check completeness by
    /// a subset scan and throw ParameterTooSmall on a miss. 0 disables.
    int verify_up_to = 0;
};

/// All minimal vertex covers of the bipartite graph h, produced as
/// N(R) + X_R over subsets R of one side with |R| <= w, where X_R holds the
/// vertices of that side with a neighbour outside N(R). Complete whenever
/// w >= mim(h). Sorted and deduplicated. The edgeless graph yields {empty}.
std::vector<VertexSet> enumerate_minimal_vertex_covers(const CrossingGraph& h, int w,
                                                       const CoverEnumOptions& opts = {});

bool is_vertex_cover(const CrossingGraph& h, const VertexSet& s);
bool is_minimal_vertex_cover(const CrossingGraph& h, const VertexSet& s);

}  // namespace fvsmim
