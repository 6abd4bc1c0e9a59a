#include "fvsmim/forest.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fvsmim {

ComponentPartition ComponentPartition::singletons(int count) {
    ComponentPartition p;
    p.block_of.resize(count);
    std::iota(p.block_of.begin(), p.block_of.end(), 0);
    return p;
}

ComponentPartition ComponentPartition::from_blocks(const std::vector<std::vector<int>>& blocks,
                                                   int count) {
    std::vector<int> raw(count, -1);
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int c : blocks[b]) {
            if (c < 0 || c >= count || raw[c] >= 0)
                throw std::invalid_argument("blocks do not partition the components");
            raw[c] = static_cast<int>(b);
        }
    ComponentPartition p;
    std::vector<int> relabel(blocks.size(), -1);
    int next = 0;
    for (int c = 0; c < count; ++c) {
        if (raw[c] < 0) throw std::invalid_argument("component missing from partition");
        if (relabel[raw[c]] < 0) relabel[raw[c]] = next++;
        p.block_of.push_back(relabel[raw[c]]);
    }
    return p;
}

int ComponentPartition::num_blocks() const {
    return block_of.empty() ? 0 : *std::max_element(block_of.begin(), block_of.end()) + 1;
}

std::vector<std::vector<int>> ComponentPartition::blocks() const {
    std::vector<std::vector<int>> out(num_blocks());
    for (int c = 0; c < num_components(); ++c) out[block_of[c]].push_back(c);
    return out;
}

size_t ComponentPartition::hash() const {
    size_t h = block_of.size();
    for (int b : block_of) hash_combine(h, static_cast<size_t>(b));
    return h;
}

std::vector<ComponentPartition> all_partitions(int count) {
    std::vector<ComponentPartition> out;
    ComponentPartition cur;
    cur.block_of.assign(count, 0);
    auto rec = [&](auto&& self, int i, int max_block) -> void {
        if (i == count) {
            out.push_back(cur);
            return;
        }
        for (int b = 0; b <= max_block + 1; ++b) {
            cur.block_of[i] = b;
            self(self, i + 1, std::max(max_block, b));
        }
    };
    if (count == 0)
        out.push_back(cur);
    else {
        cur.block_of[0] = 0;
        rec(rec, 1, 0);
    }
    return out;
}

unsigned long long bell_number(int k) {
    // Bell triangle.
    std::vector<unsigned long long> row{1};
    for (int i = 0; i < k; ++i) {
        std::vector<unsigned long long> next{row.back()};
        for (unsigned long long x : row) next.push_back(next.back() + x);
        row = std::move(next);
    }
    return row.front();
}

ReducedForest::ReducedForest(const CrossingGraph& host, VertexSet vs)
    : vertices(std::move(vs)), components(fvsmim::components(host, vertices)) {}

int ReducedForest::component_of(int v) const {
    for (size_t i = 0; i < components.size(); ++i)
        if (components[i].contains(v)) return static_cast<int>(i);
    return -1;
}

VertexSet reduce(const CrossingGraph& h, const VertexSet& f, SingleEdgeRule rule,
                 const VertexSet* preferred) {
    VertexSet out(h.host().num_vertices());
    for (const VertexSet& comp : components(h, f)) {
        const int size = comp.size();
        if (size == 1) continue;
        if (size == 2) {
            auto ends = comp.to_vector();
            int keep;
            if (preferred && preferred->contains(ends[0]) != preferred->contains(ends[1])) {
                keep = preferred->contains(ends[0]) ? ends[0] : ends[1];
            } else {
                switch (rule) {
                    case SingleEdgeRule::PreferSideA:
                        keep = h.side_a().contains(ends[0]) ? ends[0] : ends[1];
                        break;
                    case SingleEdgeRule::PreferSideB:
                        keep = h.side_b().contains(ends[0]) ? ends[0] : ends[1];
                        break;
                    default:
                        keep = ends[0];
                }
            }
            out.insert(keep);
            continue;
        }
        comp.for_each([&](int v) {
            if ((h.neighbors(v) & comp).size() >= 2) out.insert(v);
        });
    }
    return out;
}

void for_each_candidate_forest(const CrossingGraph& h, int bound,
                               const std::function<void(const VertexSet&)>& visit) {
    const auto verts = h.vertices().to_vector();
    const int n = h.host().num_vertices();
    VertexSet current(n);
    // label[v]: representative of v's tree among chosen vertices.
    std::vector<int> label(n, -1);
    auto rec = [&](auto&& self, size_t start, int size) -> void {
        visit(current);
        if (size == bound) return;
        for (size_t i = start; i < verts.size(); ++i) {
            int v = verts[i];
            // v closes a cycle iff two of its chosen neighbours share a tree.
            std::vector<int> seen_labels;
            bool cycle = false;
            (h.neighbors(v) & current).for_each([&](int u) {
                if (cycle) return;
                if (std::find(seen_labels.begin(), seen_labels.end(), label[u]) != seen_labels.end())
                    cycle = true;
                else
                    seen_labels.push_back(label[u]);
            });
            if (cycle) continue;
            std::vector<int> saved = label;
            current.for_each([&](int u) {
                if (std::find(seen_labels.begin(), seen_labels.end(), label[u]) != seen_labels.end())
                    label[u] = v;
            });
            label[v] = v;
            current.insert(v);
            self(self, i + 1, size + 1);
            current.erase(v);
            label = std::move(saved);
        }
    };
    rec(rec, 0, 0);
}

std::vector<VertexSet> enumerate_candidate_forests(const CrossingGraph& h, int bound) {
    std::vector<VertexSet> out;
    for_each_candidate_forest(h, bound, [&](const VertexSet& s) { out.push_back(s); });
    return out;
}

VertexSet potential_leaves(const CrossingGraph& h, const VertexSet& r, const VertexSet& m, int x) {
    if (!r.contains(x)) throw std::invalid_argument("potential_leaves: vertex not in forest");
    VertexSet others = r;
    others.erase(x);
    return h.neighbors(x) - h.neighbors(others) - m - r;
}

bool is_valid_index(const CrossingGraph& h, const VertexSet& r, const VertexSet& m) {
    bool ok = true;
    r.for_each([&](int x) {
        if (!ok) return;
        if ((h.neighbors(x) & r).size() <= 1 && potential_leaves(h, r, m, x).empty()) ok = false;
    });
    return ok;
}

void check_partition(const Graph& g, const ThreePartition& p) {
    if (p.a1.universe() != g.num_vertices() || p.a2.universe() != g.num_vertices() ||
        p.b.universe() != g.num_vertices())
        throw std::invalid_argument("partition sets have the wrong universe");
    if (p.a1.intersects(p.a2) || p.a1.intersects(p.b) || p.a2.intersects(p.b))
        throw std::invalid_argument("partition parts overlap");
    if ((p.a1 | p.a2 | p.b).size() != g.num_vertices())
        throw std::invalid_argument("partition does not cover the vertex set");
}

bool is_restriction(const Graph& g, const VertexSet& r1, const VertexSet& m1, const VertexSet& r,
                    const VertexSet& m, const ThreePartition& p) {
    check_partition(g, p);
    const VertexSet r_a1 = r & p.a1;
    const VertexSet r_b = r & p.b;

    // (1)
    if (!r_a1.subset_of(r1)) return false;
    bool ok = true;
    r_b.for_each([&](int v) {
        if (ok && (g.neighbors(v) & r_a1).size() >= 2 && !r1.contains(v)) ok = false;
    });
    if (!ok) return false;

    // (2)
    if ((r1 - r).intersects(p.b) || r1.intersects(m)) return false;

    // (3)
    ((r1 - r) & p.a1).for_each([&](int v) {
        if (ok && (g.neighbors(v) & r_b).size() > 1) ok = false;
    });
    if (!ok) return false;

    // (4)
    if (r.intersects(m1) || !(m & p.a1).subset_of(m1)) return false;

    // (5) edges vw of G_{A1,B} - V(R) with v in M & B, w outside R1, and vw
    // covered by no vertex of M other than v.
    ((m & p.b) - r).for_each([&](int v) {
        if (!ok) return;
        (g.neighbors(v) & p.a1).for_each([&](int w) {
            if (!ok || r.contains(w) || r1.contains(w) || m.contains(w)) return;
            if (!m1.contains(v) && !m1.contains(w)) ok = false;
        });
    });
    return ok;
}

bool two_neighbor_condition(const Graph& g, const VertexSet& r, const VertexSet& r1,
                            const VertexSet& r2, const ThreePartition& p) {
    const VertexSet anchors = (r1 & p.a1) | (r2 & p.a2);
    bool ok = true;
    ((r - r1 - r2) & p.b).for_each([&](int v) {
        if (ok && (g.neighbors(v) & anchors).size() < 2) ok = false;
    });
    return ok;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

CompatibilityResult compatibility(const ReducedForest& r, const ReducedForest& r1,
                                  const ReducedForest& r2, const ComponentPartition& p1,
                                  const ComponentPartition& p2, BlockLinking linking) {
    const int nr = static_cast<int>(r.components.size());
    const int n1 = static_cast<int>(r1.components.size());
    const int n2 = static_cast<int>(r2.components.size());
    if (p1.num_components() != n1 || p2.num_components() != n2)
        throw std::invalid_argument("partition does not match forest components");

    UnionFind q(nr + n1 + n2);
    bool acyclic = true;
    auto edge = [&](int x, int y) {
        if (!q.unite(x, y)) acyclic = false;
    };
    auto cross = [&](const std::vector<VertexSet>& xs, int xoff, const std::vector<VertexSet>& ys,
                     int yoff) {
        for (size_t i = 0; i < xs.size() && acyclic; ++i)
            for (size_t j = 0; j < ys.size() && acyclic; ++j)
                if (xs[i].intersects(ys[j])) edge(xoff + static_cast<int>(i), yoff + static_cast<int>(j));
    };
    auto blocks = [&](const ComponentPartition& p, int off) {
        for (const auto& block : p.blocks()) {
            if (linking == BlockLinking::Path) {
                for (size_t i = 1; i < block.size() && acyclic; ++i)
                    edge(off + block[i - 1], off + block[i]);
            } else {
                for (size_t i = 0; i < block.size() && acyclic; ++i)
                    for (size_t j = i + 1; j < block.size() && acyclic; ++j)
                        edge(off + block[i], off + block[j]);
            }
        }
    };
    cross(r.components, 0, r1.components, nr);
    cross(r.components, 0, r2.components, nr + n1);
    cross(r1.components, nr, r2.components, nr + n1);
    blocks(p1, nr);
    blocks(p2, nr + n1);

    CompatibilityResult out;
    if (!acyclic) return out;
    out.compatible = true;
    ComponentPartition merged;
    std::vector<int> relabel(nr + n1 + n2, -1);
    int next = 0;
    for (int c = 0; c < nr; ++c) {
        int root = q.find(c);
        if (relabel[root] < 0) relabel[root] = next++;
        merged.block_of.push_back(relabel[root]);
    }
    out.merged = std::move(merged);
    return out;
}

bool siblings_consistent(const ThreePartition& p, const VertexSet& r1, const VertexSet& m1,
                         const VertexSet& r2, const VertexSet& m2) {
    return (r1 & p.a2).subset_of(r2) && (r2 & p.a1).subset_of(r1) && (m1 & p.a2).subset_of(m2) &&
           (m2 & p.a1).subset_of(m1);
}

ForestGluing::ForestGluing(const Graph& g, const ThreePartition& p, const ReducedForest& r,
                           const ReducedForest& r1, const ReducedForest& r2) {
    const VertexSet& v1 = r1.vertices;
    const VertexSet& v2 = r2.vertices;
    const VertexSet s = r.vertices & p.b;
    const VertexSet known = r.vertices | v1 | v2;
    std::vector<int> id(g.num_vertices(), -1);
    known.for_each([&](int v) { id[v] = num_vertex_nodes_++; });

    auto link = [&](const VertexSet& from, const VertexSet& to) {
        from.for_each([&](int x) {
            (g.neighbors(x) & to).for_each([&](int y) { fixed_edges_.emplace_back(id[x], id[y]); });
        });
    };
    // Edges of the union that lie in neither child forest.
    link((v1 & p.a1) - v2, (v2 & p.a2) - v1);
    link(v1 & p.a1, s - v1);
    link(v2 & p.a2, s - v2);

    const VertexSet both = v1 & v2;
    (both & p.a1).for_each([&](int x) { shared_ += (g.neighbors(x) & both & p.a2).size(); });

    auto nodes_of = [&](const ReducedForest& f) {
        std::vector<std::vector<int>> out;
        for (const VertexSet& c : f.components) {
            out.emplace_back();
            c.for_each([&](int v) { out.back().push_back(id[v]); });
        }
        return out;
    };
    comp1_nodes_ = nodes_of(r1);
    comp2_nodes_ = nodes_of(r2);
    for (const VertexSet& c : r.components) parent_reps_.push_back(id[c.first()]);
}

CompatibilityResult ForestGluing::evaluate(const ComponentPartition& p1,
                                           const ComponentPartition& p2) const {
    if (p1.num_components() != static_cast<int>(comp1_nodes_.size()) ||
        p2.num_components() != static_cast<int>(comp2_nodes_.size()))
        throw std::invalid_argument("partition does not match forest components");
    const int b1 = p1.num_blocks();
    UnionFind q(num_vertex_nodes_ + b1 + p2.num_blocks());
    int cycles = 0;
    CompatibilityResult out;
    auto edge = [&](int x, int y) {
        if (!q.unite(x, y)) ++cycles;
        return cycles <= shared_;
    };
    for (auto [x, y] : fixed_edges_)
        if (!edge(x, y)) return out;
    auto stars = [&](const std::vector<std::vector<int>>& comps, const ComponentPartition& part,
                     int offset) {
        for (size_t c = 0; c < comps.size(); ++c)
            for (int v : comps[c])
                if (!edge(offset + part.block_of[c], v)) return false;
        return true;
    };
    if (!stars(comp1_nodes_, p1, num_vertex_nodes_)) return out;
    if (!stars(comp2_nodes_, p2, num_vertex_nodes_ + b1)) return out;
    if (cycles != shared_) return out;

    out.compatible = true;
    ComponentPartition merged;
    std::vector<int> relabel(num_vertex_nodes_ + b1 + p2.num_blocks(), -1);
    int next = 0;
    for (int rep : parent_reps_) {
        int root = q.find(rep);
        if (relabel[root] < 0) relabel[root] = next++;
        merged.block_of.push_back(relabel[root]);
    }
    out.merged = std::move(merged);
    return out;
}

}  // namespace fvsmim
