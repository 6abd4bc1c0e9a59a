#include "fvsmim/mvc.hpp"

#include <algorithm>
#include <unordered_set>

namespace fvsmim {

namespace {

// Subsets of `pool` with at most `limit` elements, in lexicographic order of index lists.
template <class F>
void for_each_small_subset(const std::vector<int>& pool, int limit, int universe, F&& f) {
    VertexSet current(universe);
    std::vector<int> stack;
    auto rec = [&](auto&& self, size_t start) -> void {
        f(current);
        if (static_cast<int>(stack.size()) == limit) return;
        for (size_t i = start; i < pool.size(); ++i) {
            current.insert(pool[i]);
            stack.push_back(pool[i]);
            self(self, i + 1);
            stack.pop_back();
            current.erase(pool[i]);
        }
    };
    rec(rec, 0);
}

}  // namespace

bool is_vertex_cover(const CrossingGraph& h, const VertexSet& s) {
    bool ok = true;
    (h.side_a() - s).for_each([&](int a) {
        if (ok && h.neighbors(a).intersects(h.side_b() - s)) ok = false;
    });
    return ok;
}

bool is_minimal_vertex_cover(const CrossingGraph& h, const VertexSet& s) {
    if (!s.subset_of(h.vertices()) || !is_vertex_cover(h, s)) return false;
    // Each member must own an edge whose other end is outside s.
    bool ok = true;
    s.for_each([&](int v) {
        if (ok && !h.neighbors(v).intersects(h.vertices() - s)) ok = false;
    });
    return ok;
}

std::vector<VertexSet> enumerate_minimal_vertex_covers(const CrossingGraph& h, int w,
                                                       const CoverEnumOptions& opts) {
    const int n = h.host().num_vertices();
    // Vertices without partners never belong to a minimal cover.
    VertexSet a(n), b(n);
    h.side_a().for_each([&](int v) {
        if (h.neighbors(v).intersects(h.side_b())) a.insert(v);
    });
    h.side_b().for_each([&](int v) {
        if (h.neighbors(v).intersects(h.side_a())) b.insert(v);
    });
    bool use_a = opts.side == CoverSide::A ||
                 (opts.side == CoverSide::Auto && a.size() <= b.size());
    const VertexSet& base = use_a ? a : b;
    const VertexSet& other = use_a ? b : a;

    std::unordered_set<VertexSet> seen;
    std::vector<VertexSet> out;
    for_each_small_subset(base.to_vector(), std::max(w, 0), n, [&](const VertexSet& r) {
        VertexSet nr = h.neighbors(r) & other;
        VertexSet uncovered = other - nr;
        VertexSet cover = nr;
        base.for_each([&](int v) {
            if (h.neighbors(v).intersects(uncovered)) cover.insert(v);
        });
        if (seen.insert(cover).second) out.push_back(std::move(cover));
    });
    std::sort(out.begin(), out.end());

    if (opts.verify_up_to > 0) {
        VertexSet all = a | b;
        if (all.size() <= opts.verify_up_to) {
            auto verts = all.to_vector();
            const int k = static_cast<int>(verts.size());
            for (uint32_t mask = 0; mask < (1u << k); ++mask) {
                VertexSet s(n);
                for (int i = 0; i < k; ++i)
                    if (mask >> i & 1) s.insert(verts[i]);
                if (is_minimal_vertex_cover(h, s) && !seen.count(s))
                    throw ParameterTooSmall("minimal vertex cover missed with w = " +
                                            std::to_string(w));
            }
        }
    }
    return out;
}

}  // namespace fvsmim
