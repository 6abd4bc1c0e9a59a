#include "fvsmim/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace fvsmim::oracle {

namespace {

void refuse_if(bool over, const std::string& what) {
    if (over) throw Refused("instance too large for brute force: " + what);
}

std::vector<uint32_t> masks(const Graph& g) {
    std::vector<uint32_t> adj(g.num_vertices(), 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= uint32_t{1} << v;
        adj[v] |= uint32_t{1} << u;
    }
    return adj;
}

int find(std::vector<int>& parent, int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

bool acyclic(const std::vector<std::pair<int, int>>& edges, int n, uint32_t keep) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (auto [u, v] : edges) {
        if (!(keep >> u & 1) || !(keep >> v & 1)) continue;
        const int a = find(parent, u), b = find(parent, v);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

std::vector<int> members(uint32_t s, int n) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (s >> v & 1) out.push_back(v);
    return out;
}

// Best subset by `score` among those inducing a forest.
template <class Score>
uint32_t best_forest(const Graph& g, Score score) {
    const int n = g.num_vertices();
    const auto edges = g.edges();
    uint32_t best = 0;
    double best_score = score(0u);
    for (uint32_t s = 1; s < (uint32_t{1} << n); ++s) {
        const double sc = score(s);
        if (sc > best_score && acyclic(edges, n, s)) {
            best = s;
            best_score = sc;
        }
    }
    return best;
}

}  // namespace

ForestAnswer max_induced_forest(const Graph& g, const Limits& lim) {
    const int n = g.num_vertices();
    refuse_if(n > lim.forest_vertices || n > 30, std::to_string(n) + " vertices");
    const uint32_t best = best_forest(g, [](uint32_t s) { return static_cast<double>(std::popcount(s)); });
    return {static_cast<double>(std::popcount(best)), members(best, n)};
}

ForestAnswer min_weight_fvs(const Graph& g, const Limits& lim) {
    const int n = g.num_vertices();
    refuse_if(n > lim.forest_vertices || n > 30, std::to_string(n) + " vertices");
    std::vector<double> w(n);
    for (int v = 0; v < n; ++v) w[v] = g.weight(v);
    const uint32_t best = best_forest(g, [&](uint32_t s) {
        double total = 0;
        for (int v = 0; v < n; ++v)
            if (s >> v & 1) total += w[v];
        return total;
    });
    const uint32_t all = (uint32_t{1} << n) - 1;
    const uint32_t fvs = all & ~best;
    double weight = 0;
    for (int v = 0; v < n; ++v)
        if (fvs >> v & 1) weight += w[v];
    return {weight, members(fvs, n)};
}

std::vector<std::vector<int>> minimal_vertex_covers(const Graph& g, const Limits& lim) {
    const int n = g.num_vertices();
    refuse_if(n > lim.cover_vertices || n > 30, std::to_string(n) + " vertices");
    const auto edges = g.edges();
    auto covers = [&](uint32_t s) {
        for (auto [u, v] : edges)
            if (!(s >> u & 1) && !(s >> v & 1)) return false;
        return true;
    };
    std::vector<std::vector<int>> out;
    for (uint32_t s = 0; s < (uint32_t{1} << n); ++s) {
        if (!covers(s)) continue;
        bool minimal = true;
        for (int v = 0; v < n && minimal; ++v)
            if ((s >> v & 1) && covers(s & ~(uint32_t{1} << v))) minimal = false;
        if (minimal) out.push_back(members(s, n));
    }
    std::sort(out.begin(), out.end());
    return out;
}

int max_induced_matching(const Graph& g, const Limits& lim) {
    const auto edges = g.edges();
    const int m = static_cast<int>(edges.size());
    refuse_if(m > lim.matching_edges, std::to_string(m) + " edges");
    const auto adj = masks(g);
    int best = 0;
    // Extend by edges in index order; an edge may join when it is disjoint
    // from and non-adjacent to every chosen endpoint.
    auto rec = [&](auto&& self, int next, uint32_t touched, int size) -> void {
        best = std::max(best, size);
        for (int e = next; e < m; ++e) {
            const auto [u, v] = edges[e];
            const uint32_t ends = (uint32_t{1} << u) | (uint32_t{1} << v);
            if (ends & touched) continue;
            self(self, e + 1, touched | ends | adj[u] | adj[v], size + 1);
        }
    };
    rec(rec, 0, 0, 0);
    return best;
}

bool induces_forest(const Graph& g, const std::vector<int>& vertices) {
    const int n = g.num_vertices();
    std::vector<char> in(n, 0);
    for (int v : vertices) in[v] = 1;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (auto [u, v] : g.edges()) {
        if (!in[u] || !in[v]) continue;
        const int a = find(parent, u), b = find(parent, v);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

std::string Report::line() const {
    std::ostringstream ss;
    ss.precision(17);
    ss << quantity << ' ' << instance << " oracle " << oracle_value << " subject " << subject_value
       << " agree " << (agree ? 1 : 0);
    return ss.str();
}

Report compare(std::string quantity, std::string instance, double oracle_value, double subject_value,
               double tolerance) {
    Report r{std::move(quantity), std::move(instance), oracle_value, subject_value, false};
    r.agree = std::abs(oracle_value - subject_value) <= tolerance;
    return r;
}

}  // namespace fvsmim::oracle
