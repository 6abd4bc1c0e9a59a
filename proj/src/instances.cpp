#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fvsmim/builders.hpp"

namespace fvsmim {

BranchDecomposition restrict_decomposition(const BranchDecomposition& dec,
                                           const std::vector<int>& keep) {
    const int n = dec.num_graph_vertices();
    std::vector<int> index(n, -1);
    for (size_t i = 0; i < keep.size(); ++i) {
        const int v = keep[i];
        if (v < 0 || v >= n || (i > 0 && keep[i - 1] >= v))
            throw std::invalid_argument("kept vertices must be increasing and in range");
        index[v] = static_cast<int>(i);
    }
    const int m = static_cast<int>(keep.size());
    if (m == 0) return BranchDecomposition::from_children(0, 0, {}, {});
    std::vector<std::vector<int>> children;
    std::vector<int> leaf_vertex;
    std::vector<int> result(dec.num_nodes(), -1);
    for (int t : dec.post_order()) {
        if (dec.is_leaf(t)) {
            const int v = index[dec.leaf_vertex(t)];
            if (v < 0) continue;
            children.emplace_back();
            leaf_vertex.push_back(v);
            result[t] = static_cast<int>(children.size()) - 1;
            continue;
        }
        const int a = result[dec.children(t)[0]], b = result[dec.children(t)[1]];
        if (a >= 0 && b >= 0) {
            children.push_back({a, b});
            leaf_vertex.push_back(BranchDecomposition::kNone);
            result[t] = static_cast<int>(children.size()) - 1;
        } else {
            result[t] = a >= 0 ? a : b;
        }
    }
    return BranchDecomposition::from_children(m, result[dec.root()], std::move(children),
                                              std::move(leaf_vertex));
}

LeafPowerInstance leaf_power_instance(const Graph& tree, int k) {
    if (k < 1) throw std::invalid_argument("power must be at least 1");
    if (tree.num_vertices() == 0 || tree.num_edges() != tree.num_vertices() - 1 || !is_connected(tree))
        throw std::invalid_argument("leaf root is not a tree");
    LeafPowerInstance out;
    for (int v = 0; v < tree.num_vertices(); ++v)
        if (tree.degree(v) <= 1) out.leaves.push_back(v);
    out.graph = power_graph(tree, k).induced(out.leaves);
    out.dec = restrict_decomposition(branchdec_from_nice_td(forest_nice_decomposition(tree)),
                                     out.leaves);
    return out;
}

HamCycInstance hamcyc_construct(const Graph& source) {
    const auto colour = two_coloring(source);
    if (!colour) throw std::invalid_argument("source graph is not bipartite");
    std::vector<int> vs, ws;
    for (int v = 0; v < source.num_vertices(); ++v) ((*colour)[v] == 0 ? vs : ws).push_back(v);
    return hamcyc_construct(source, vs, ws);
}

HamCycInstance hamcyc_construct(const Graph& source, const std::vector<int>& v_side,
                                const std::vector<int>& w_side) {
    const int n = source.num_vertices();
    const int m = static_cast<int>(v_side.size());
    if (m == 0) throw std::invalid_argument("source graph has no vertices");
    if (static_cast<int>(w_side.size()) != m)
        throw std::invalid_argument("sides have different sizes " + std::to_string(m) + " and " +
                                    std::to_string(w_side.size()));
    std::vector<int> side(n, -1), pos(n, -1);
    for (int s = 0; s < 2; ++s) {
        const auto& list = s == 0 ? v_side : w_side;
        for (int i = 0; i < m; ++i) {
            const int v = list[i];
            if (v < 0 || v >= n) throw std::invalid_argument("side vertex out of range");
            if (side[v] >= 0) throw std::invalid_argument("vertex " + std::to_string(v) + " is listed twice");
            side[v] = s;
            pos[v] = i;
        }
    }
    for (auto [u, v] : source.edges())
        if (side[u] == side[v])
            throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                        " lies inside one side");
    for (int v = 0; v < n; ++v) {
        if (source.degree(v) > 3)
            throw std::invalid_argument("vertex " + std::to_string(v) + " has degree " +
                                        std::to_string(source.degree(v)) + ", more than 3");
        if (source.degree(v) < 2)
            throw std::invalid_argument("vertex " + std::to_string(v) + " has degree " +
                                        std::to_string(source.degree(v)) + ", less than 2");
    }

    HamCycInstance h;
    h.source = source;
    h.v_side = v_side;
    h.w_side = w_side;
    auto add = [&](std::string name) {
        h.names.push_back(std::move(name));
        return static_cast<int>(h.names.size()) - 1;
    };
    for (int i = 0; i < m; ++i) h.x.push_back(add("X" + std::to_string(i + 1)));
    for (int j = 0; j < m; ++j) h.y.push_back(add("Y" + std::to_string(j + 1)));
    for (int j = 0; j < m; ++j)
        h.z.push_back(source.degree(w_side[j]) == 3 ? add("Z" + std::to_string(j + 1)) : -1);
    h.a.assign(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (source.has_edge(v_side[i], w_side[j]))
                h.a[i][j] = add("A" + std::to_string(i + 1) + "_" + std::to_string(j + 1));

    h.graph = Graph(static_cast<int>(h.names.size()));
    auto clique = [&](const std::vector<int>& members) {
        for (size_t p = 0; p < members.size(); ++p)
            for (size_t q = p + 1; q < members.size(); ++q) h.graph.add_edge(members[p], members[q]);
    };
    for (int i = 0; i < m; ++i) {
        std::vector<int> members{h.x[i]};
        for (int i2 = 0; i2 <= i; ++i2)
            for (int j = 0; j < m; ++j)
                if (h.a[i2][j] >= 0) members.push_back(h.a[i2][j]);
        clique(members);
    }
    for (int j = 0; j < m; ++j) {
        std::vector<int> aj;
        for (int i = 0; i < m; ++i)
            if (h.a[i][j] >= 0) aj.push_back(h.a[i][j]);
        auto with = [&](int u) {
            std::vector<int> members{u};
            members.insert(members.end(), aj.begin(), aj.end());
            return members;
        };
        clique(with(h.y[j]));
        if (h.z[j] >= 0) clique(with(h.z[j]));
    }

    for (int j = 0; j < m; ++j) {
        h.order.push_back(h.y[j]);
        if (h.z[j] >= 0) h.order.push_back(h.z[j]);
        for (int i = 0; i < m; ++i)
            if (h.a[i][j] >= 0) h.order.push_back(h.a[i][j]);
    }
    for (int i = m - 1; i >= 0; --i) h.order.push_back(h.x[i]);
    return h;
}

HamCycReport check_hamcyc(const HamCycInstance& inst) {
    const Graph& g = inst.graph;
    const int n = g.num_vertices();
    const int m = static_cast<int>(inst.x.size());
    VertexSet xs(n), xyz(n), all_a(n);
    std::vector<VertexSet> aj(m, VertexSet(n));
    for (int i = 0; i < m; ++i) {
        xs.insert(inst.x[i]);
        xyz.insert(inst.x[i]);
        xyz.insert(inst.y[i]);
        if (inst.z[i] >= 0) xyz.insert(inst.z[i]);
        for (int j = 0; j < m; ++j)
            if (inst.a[i][j] >= 0) {
                all_a.insert(inst.a[i][j]);
                aj[j].insert(inst.a[i][j]);
            }
    }
    HamCycReport r;
    r.independent_xyz = true;
    xyz.for_each([&](int v) { r.independent_xyz = r.independent_xyz && !g.neighbors(v).intersects(xyz); });
    r.a_clique = true;
    all_a.for_each([&](int v) {
        VertexSet others = all_a;
        others.erase(v);
        r.a_clique = r.a_clique && others.subset_of(g.neighbors(v));
    });
    r.yz_neighbors = true;
    for (int j = 0; j < m; ++j) {
        r.yz_neighbors = r.yz_neighbors && g.neighbors(inst.y[j]) == aj[j];
        if (inst.z[j] >= 0) r.yz_neighbors = r.yz_neighbors && g.neighbors(inst.z[j]) == aj[j];
    }
    r.nesting = true;
    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = i1 + 1; i2 < m; ++i2) {
            r.nesting = r.nesting && g.neighbors(inst.x[i1]).subset_of(g.neighbors(inst.x[i2]));
            for (int j1 = 0; j1 < m; ++j1)
                for (int j2 = 0; j2 < m; ++j2) {
                    const int a1 = inst.a[i1][j1], a2 = inst.a[i2][j2];
                    if (a1 < 0 || a2 < 0) continue;
                    r.nesting = r.nesting && (g.neighbors(a2) & xs).subset_of(g.neighbors(a1) & xs);
                }
        }
    r.no_late_uz = true;
    VertexSet late(n);
    for (int j = m - 1; j >= 0; --j) {
        aj[j].for_each([&](int v) { r.no_late_uz = r.no_late_uz && !g.neighbors(v).intersects(late); });
        late.insert(inst.y[j]);
        if (inst.z[j] >= 0) late.insert(inst.z[j]);
    }
    r.order_width = mim_width(g, from_linear_order(inst.order));
    return r;
}

IntervalInstance interval_linear_order(const std::vector<Interval>& intervals) {
    const int n = static_cast<int>(intervals.size());
    for (int i = 0; i < n; ++i)
        if (!(intervals[i].left <= intervals[i].right))
            throw std::invalid_argument("interval " + std::to_string(i) + " has left > right");
    IntervalInstance out;
    out.graph = Graph(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::max(intervals[i].left, intervals[j].left) <=
                std::min(intervals[i].right, intervals[j].right))
                out.graph.add_edge(i, j);
    out.order.resize(n);
    std::iota(out.order.begin(), out.order.end(), 0);
    std::sort(out.order.begin(), out.order.end(), [&](int p, int q) {
        const auto& a = intervals[p];
        const auto& b = intervals[q];
        if (a.left != b.left) return a.left < b.left;
        if (a.right != b.right) return a.right < b.right;
        return p < q;
    });
    return out;
}

}  // namespace fvsmim
