#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fvsmim/graph.hpp"

// Brute-force baselines. They read graphs only through num_vertices, edges
// and weight, and reimplement every predicate they need.
namespace fvsmim::oracle {

/// Raised when an instance is above the configured size limit.
class Refused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Limits {
    int forest_vertices = 16;
    int cover_vertices = 20;
    int matching_edges = 20;
};

struct ForestAnswer {
    double value = 0;          // forest size, or FVS weight for min_weight_fvs
    std::vector<int> witness;  // the forest, or the FVS
};

/// Largest induced forest by scanning all vertex subsets.
ForestAnswer max_induced_forest(const Graph& g, const Limits& lim = {});

/// Lightest feedback vertex set by scanning all vertex subsets.
ForestAnswer min_weight_fvs(const Graph& g, const Limits& lim = {});

/// Every minimal vertex cover of g (read as a bipartite graph), each sorted,
/// the list sorted. Isolated vertices never appear in a minimal cover.
std::vector<std::vector<int>> minimal_vertex_covers(const Graph& g, const Limits& lim = {});

/// Largest induced matching by search over edge subsets.
int max_induced_matching(const Graph& g, const Limits& lim = {});

/// True iff the listed vertices induce no cycle.
bool induces_forest(const Graph& g, const std::vector<int>& vertices);

struct Report {
    std::string quantity;
    std::string instance;
    double oracle_value = 0;
    double subject_value = 0;
    bool agree = false;

    /// "<quantity> <instance> oracle <x> subject <y> agree <0|1>".
    std::string line() const;
};

Report compare(std::string quantity, std::string instance, double oracle_value, double subject_value,
               double tolerance = 0);

}  // namespace fvsmim::oracle
