#include "fvsmim/dp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <functional>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "fvsmim/mvc.hpp"

namespace fvsmim {

size_t IndexKey::hash() const {
    size_t h = forest.hash();
    hash_combine(h, cover.hash());
    hash_combine(h, partition.hash());
    return h;
}

void SizeCell::set(int i, const Witness& w) {
    if (i >= static_cast<int>(by_size.size())) by_size.resize(i + 1);
    if (!by_size[i]) by_size[i] = w;
}

std::vector<int> SizeCell::sizes() const {
    std::vector<int> out;
    for (size_t i = 0; i < by_size.size(); ++i)
        if (by_size[i]) out.push_back(static_cast<int>(i));
    return out;
}

long double table_key_bound(int n, int m) {
    const long double nn = n;
    return 2.0L * std::pow(nn, 6.0L * m) * std::pow(nn, static_cast<long double>(m)) *
           static_cast<long double>(bell_number(6 * m));
}

namespace {

// Cell policies: how two child cells combine into a parent cell, and how
// partial tables built by different workers are merged.
void combine(SizeCell& parent, const SizeCell& a, int ka, const SizeCell& b, int kb) {
    for (int ia = 0; ia < static_cast<int>(a.by_size.size()); ++ia) {
        if (!a.by_size[ia]) continue;
        for (int ib = 0; ib < static_cast<int>(b.by_size.size()); ++ib)
            if (b.by_size[ib]) parent.set(ia + ib, Witness{ka, ia, kb, ib});
    }
}

void combine(WeightCell& parent, const WeightCell& a, int ka, const WeightCell& b, int kb) {
    const double v = a.best + b.best;
    if (v > parent.best) {
        parent.best = v;
        parent.witness = Witness{ka, 0, kb, 0};
    }
}

void absorb(SizeCell& dst, const SizeCell& src) {
    for (int i = 0; i < static_cast<int>(src.by_size.size()); ++i)
        if (src.by_size[i]) dst.set(i, *src.by_size[i]);
}

void absorb(WeightCell& dst, const WeightCell& src) {
    if (src.best > dst.best) dst = src;
}

template <class Cell>
void absorb_table(Table<Cell>& dst, const Table<Cell>& src) {
    for (size_t k = 0; k < src.size(); ++k) {
        const int id = dst.intern(src.keys[k]);
        absorb(dst.cells[id], src.cells[k]);
    }
}

// Keys of a child table sharing the same (R, M).
struct Group {
    VertexSet forest;
    VertexSet cover;
    ReducedForest reduced;
    std::vector<int> keys;
};

template <class Cell>
std::vector<Group> group_keys(const Table<Cell>& table, const CrossingGraph& h) {
    std::vector<Group> out;
    std::unordered_map<IndexKey, int> where;
    for (size_t k = 0; k < table.size(); ++k) {
        const IndexKey& key = table.keys[k];
        IndexKey rm{key.forest, key.cover, {}};
        auto [it, fresh] = where.emplace(rm, static_cast<int>(out.size()));
        if (fresh) out.push_back(Group{key.forest, key.cover, ReducedForest(h, key.forest), {}});
        out[it->second].keys.push_back(static_cast<int>(k));
    }
    return out;
}

struct NodeCuts {
    VertexSet below_a, below_b, below, rest;
};

NodeCuts node_cuts(const Graph& g, const BranchDecomposition& dec, int t) {
    const auto& ch = dec.children(t);
    NodeCuts c;
    c.below_a = dec.vertices_below(ch[0]);
    c.below_b = dec.vertices_below(ch[1]);
    c.below = c.below_a | c.below_b;
    c.rest = g.all_vertices() - c.below;
    return c;
}

// Parent forests that can have a witness: R & V_a inside R_a, R & V_b inside
// R_b, the B-part of R_a + R_b forced, and further B vertices only with two
// anchors in (R_a & V_a) + (R_b & V_b).
std::vector<VertexSet> derived_forests(const CrossingGraph& h, const NodeCuts& c,
                                       const std::vector<Group>& ga, const std::vector<Group>& gb,
                                       int bound) {
    const Graph& g = h.host();
    auto distinct = [](const std::vector<Group>& gs) {
        std::vector<VertexSet> out;
        for (const auto& x : gs) out.push_back(x.forest);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    const auto fa = distinct(ga);
    const auto fb = distinct(gb);
    std::unordered_set<VertexSet> seen;
    std::vector<VertexSet> out;
    for (const VertexSet& ra : fa)
        for (const VertexSet& rb : fb) {
            const VertexSet anchors = (ra & c.below_a) | (rb & c.below_b);
            const VertexSet forced = (ra | rb) & c.rest;
            if (forced.size() > bound || !forced.subset_of(h.side_b()) || !is_forest(h, forced))
                continue;
            std::vector<int> pool = (anchors & h.side_a()).to_vector();
            (h.side_b() - ra - rb).for_each([&](int v) {
                if ((g.neighbors(v) & anchors).size() >= 2) pool.push_back(v);
            });
            VertexSet cur = forced;
            auto rec = [&](auto&& self, size_t start, int size) -> void {
                if (seen.insert(cur).second) out.push_back(cur);
                if (size == bound) return;
                for (size_t i = start; i < pool.size(); ++i) {
                    cur.insert(pool[i]);
                    if (is_forest(h, cur)) self(self, i + 1, size + 1);
                    cur.erase(pool[i]);
                }
            };
            rec(rec, 0, forced.size());
        }
    std::sort(out.begin(), out.end());
    return out;
}

template <class Cell>
Table<Cell> merge_impl(const Graph& g, const BranchDecomposition& dec, int t, const Table<Cell>& ta,
                       const Table<Cell>& tb, int m_t, const SolveOptions& opts) {
    const NodeCuts c = node_cuts(g, dec, t);
    const CrossingGraph h = crossing_graph(g, c.below, c.rest);
    const CrossingGraph ha = crossing_graph(g, c.below_a, g.all_vertices() - c.below_a);
    const CrossingGraph hb = crossing_graph(g, c.below_b, g.all_vertices() - c.below_b);

    const auto groups_a = group_keys(ta, ha);
    const auto groups_b = group_keys(tb, hb);
    const int bound = 6 * m_t;

    std::vector<VertexSet> forests;
    if (opts.strategy == CandidateStrategy::Exhaustive)
        forests = enumerate_candidate_forests(h, bound);
    else
        forests = derived_forests(h, c, groups_a, groups_b, bound);

    struct Job {
        VertexSet forest;
        VertexSet cover;
    };
    std::vector<Job> jobs;
    for (const VertexSet& r : forests)
        for (VertexSet& m : enumerate_minimal_vertex_covers(h.without(r), m_t))
            if (is_valid_index(h, r, m)) jobs.push_back({r, std::move(m)});

    const ThreePartition parts_a{c.below_a, c.below_b, c.rest};
    const ThreePartition parts_b{c.below_b, c.below_a, c.rest};

    auto run = [&](size_t lo, size_t hi, Table<Cell>& out) {
        for (size_t j = lo; j < hi; ++j) {
            const VertexSet& r = jobs[j].forest;
            const VertexSet& m = jobs[j].cover;
            const ReducedForest rf(h, r);
            std::vector<const Group*> pass_a, pass_b;
            for (const auto& x : groups_a)
                if (is_restriction(g, x.forest, x.cover, r, m, parts_a)) pass_a.push_back(&x);
            if (pass_a.empty()) continue;
            for (const auto& x : groups_b)
                if (is_restriction(g, x.forest, x.cover, r, m, parts_b)) pass_b.push_back(&x);
            for (const Group* xa : pass_a)
                for (const Group* xb : pass_b) {
                    if (!two_neighbor_condition(g, r, xa->forest, xb->forest, parts_a)) continue;
                    if (opts.rule == MergeRule::Literal) {
                        for (int ka : xa->keys)
                            for (int kb : xb->keys) {
                                auto res = compatibility(rf, xa->reduced, xb->reduced,
                                                         ta.keys[ka].partition,
                                                         tb.keys[kb].partition, opts.linking);
                                if (!res.compatible) continue;
                                const int id = out.intern(IndexKey{r, m, std::move(*res.merged)});
                                combine(out.cells[id], ta.cells[ka], ka, tb.cells[kb], kb);
                            }
                        continue;
                    }
                    if (!siblings_consistent(parts_a, xa->forest, xa->cover, xb->forest, xb->cover))
                        continue;
                    const ForestGluing glue(g, parts_a, rf, xa->reduced, xb->reduced);
                    for (int ka : xa->keys)
                        for (int kb : xb->keys) {
                            auto res = glue.evaluate(ta.keys[ka].partition, tb.keys[kb].partition);
                            if (!res.compatible) continue;
                            const int id = out.intern(IndexKey{r, m, std::move(*res.merged)});
                            combine(out.cells[id], ta.cells[ka], ka, tb.cells[kb], kb);
                        }
                }
        }
    };

    Table<Cell> table;
    const int workers = std::min<int>(std::max(opts.threads, 1), static_cast<int>(jobs.size()));
    if (workers <= 1) {
        run(0, jobs.size(), table);
        return table;
    }
    std::vector<Table<Cell>> partial(workers);
    std::vector<std::thread> pool;
    const size_t chunk = (jobs.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const size_t lo = std::min(jobs.size(), w * chunk);
        const size_t hi = std::min(jobs.size(), lo + chunk);
        pool.emplace_back(run, lo, hi, std::ref(partial[w]));
    }
    for (auto& th : pool) th.join();
    for (const auto& p : partial) absorb_table(table, p);
    return table;
}

int node_bound(const std::vector<int>& mims, int t, const SolveOptions& opts) {
    return opts.width_override ? *opts.width_override : mims[t];
}

WeightTable weighted_leaf(const Graph& g, const BranchDecomposition& dec, int t) {
    const SizeTable st = leaf_table(g, dec, t);
    const double wv = g.weight(dec.leaf_vertex(t));
    WeightTable out;
    for (size_t k = 0; k < st.size(); ++k) {
        const int id = out.intern(st.keys[k]);
        for (int i : st.cells[k].sizes()) {
            const double v = i == 1 ? wv : 0.0;
            if (v > out.cells[id].best) out.cells[id] = WeightCell{v, Witness{-1, i, -1, 0}};
        }
    }
    return out;
}

template <class Cell>
struct Run {
    std::vector<Table<Cell>> tables;
    std::vector<NodeStats> stats;
};

template <class Cell, class LeafFn>
Run<Cell> run_tables(const Graph& g, const BranchDecomposition& dec, const SolveOptions& opts,
                     LeafFn leaf) {
    const auto mims = cut_mim_values(g, dec);
    Run<Cell> run;
    run.tables.resize(dec.num_nodes());
    for (int t : dec.post_order()) {
        NodeStats st;
        st.node = t;
        st.mim = dec.is_leaf(t) ? mims[t] : node_bound(mims, t, opts);
        if (dec.is_leaf(t)) {
            run.tables[t] = leaf(t);
        } else {
            const auto& ch = dec.children(t);
            run.tables[t] = merge_impl(g, dec, t, run.tables[ch[0]], run.tables[ch[1]], st.mim, opts);
        }
        const VertexSet& below = dec.vertices_below(t);
        st.crossing = t == dec.root() ? 0
                                      : crossing_graph(g, below, g.all_vertices() - below).vertices().size();
        st.keys = run.tables[t].size();
        st.key_bound = table_key_bound(g.num_vertices(), mims[t]);
        run.stats.push_back(st);
    }
    return run;
}

IndexKey root_key(int n) { return IndexKey{VertexSet(n), VertexSet(n), ComponentPartition{}}; }

// Follows witnesses from (root key, value) down to the leaves.
template <class Cell, class Pick>
VertexSet reconstruct(const BranchDecomposition& dec, const std::vector<Table<Cell>>& tables,
                      int key, int value, Pick pick, int n) {
    VertexSet forest(n);
    std::vector<std::tuple<int, int, int>> todo{{dec.root(), key, value}};
    while (!todo.empty()) {
        auto [t, k, v] = todo.back();
        todo.pop_back();
        const Witness w = pick(tables[t].cells[k], v);
        if (dec.is_leaf(t)) {
            if (w.value_a == 1) forest.insert(dec.leaf_vertex(t));
            continue;
        }
        const auto& ch = dec.children(t);
        todo.emplace_back(ch[0], w.key_a, w.value_a);
        todo.emplace_back(ch[1], w.key_b, w.value_b);
    }
    return forest;
}

Solution trivial_solution(const Graph& g, bool weighted) {
    Solution s;
    s.forest = VertexSet(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!weighted || g.weight(v) >= 0) s.forest.insert(v);
    s.fvs = g.all_vertices() - s.forest;
    s.objective = weighted ? g.weight_of(s.forest) : s.forest.size();
    for (int i = 0; i <= s.forest.size(); ++i) s.root_sizes.push_back(i);
    return s;
}

void check_forest(const Graph& g, const Solution& s) {
    if (!is_forest(g, s.forest))
        throw std::logic_error("reconstructed vertex set is not a forest");
}

}  // namespace

SizeTable leaf_table(const Graph& g, const BranchDecomposition& dec, int t) {
    if (t < 0 || t >= dec.num_nodes() || !dec.is_leaf(t))
        throw std::invalid_argument("leaf_table: node is not a leaf");
    const int n = g.num_vertices();
    const int v = dec.leaf_vertex(t);
    VertexSet nv = g.neighbors(v);
    SizeTable out;
    auto put = [&](VertexSet r, VertexSet m, int i) {
        ComponentPartition p;
        if (!r.empty()) p.block_of = {0};
        const int id = out.intern(IndexKey{std::move(r), std::move(m), std::move(p)});
        out.cells[id].set(i, Witness{-1, i, -1, 0});
    };
    if (nv.empty()) {
        put(VertexSet(n), VertexSet(n), 0);
        put(VertexSet(n), VertexSet(n), 1);
        return out;
    }
    put(VertexSet(n), nv, 0);
    put(VertexSet(n), nv, 1);
    put(VertexSet(n), VertexSet(n, {v}), 0);
    put(VertexSet(n, {v}), VertexSet(n), 1);
    nv.for_each([&](int w) {
        VertexSet rest = nv;
        rest.erase(w);
        put(VertexSet(n, {w}), rest, 1);
    });
    return out;
}

SizeTable merge_node(const Graph& g, const BranchDecomposition& dec, int t, const SizeTable& table_a,
                     const SizeTable& table_b, const SolveOptions& opts) {
    if (t < 0 || t >= dec.num_nodes() || dec.is_leaf(t))
        throw std::invalid_argument("merge_node: node is not internal");
    int m_t;
    if (opts.width_override) {
        m_t = *opts.width_override;
    } else {
        const VertexSet& below = dec.vertices_below(t);
        m_t = max_induced_matching(crossing_graph(g, below, g.all_vertices() - below));
    }
    return merge_impl(g, dec, t, table_a, table_b, m_t, opts);
}

Solution solve_mif(const Graph& g, const BranchDecomposition& dec, const SolveOptions& opts) {
    check_matches(g, dec);
    const int n = g.num_vertices();
    if (n <= 1) return trivial_solution(g, false);

    auto run = run_tables<SizeCell>(g, dec, opts, [&](int t) { return leaf_table(g, dec, t); });
    const auto& root_table = run.tables[dec.root()];
    const int rk = root_table.find(root_key(n));
    if (rk < 0) throw std::logic_error("root table lacks the empty index");
    Solution s;
    s.root_sizes = root_table.cells[rk].sizes();
    const int best = s.root_sizes.back();
    s.forest = reconstruct(
        dec, run.tables, rk, best, [](const SizeCell& c, int i) { return *c.by_size.at(i); }, n);
    s.fvs = g.all_vertices() - s.forest;
    s.objective = best;
    s.stats = std::move(run.stats);
    check_forest(g, s);
    if (s.forest.size() != best) throw std::logic_error("reconstructed forest has the wrong size");
    if (opts.keep_tables) s.size_tables = std::move(run.tables);
    return s;
}

Solution solve_weighted_mif(const Graph& g, const BranchDecomposition& dec, const SolveOptions& opts) {
    check_matches(g, dec);
    const int n = g.num_vertices();
    if (n <= 1) return trivial_solution(g, true);

    auto run = run_tables<WeightCell>(g, dec, opts, [&](int t) { return weighted_leaf(g, dec, t); });
    const auto& root_table = run.tables[dec.root()];
    const int rk = root_table.find(root_key(n));
    if (rk < 0) throw std::logic_error("root table lacks the empty index");
    Solution s;
    s.forest = reconstruct(
        dec, run.tables, rk, 0, [](const WeightCell& c, int) { return c.witness; }, n);
    s.fvs = g.all_vertices() - s.forest;
    s.objective = root_table.cells[rk].best;
    s.stats = std::move(run.stats);
    check_forest(g, s);
    if (std::abs(g.weight_of(s.forest) - s.objective) > 1e-6 * (1 + std::abs(s.objective)))
        throw std::logic_error("reconstructed forest has the wrong weight");
    if (opts.keep_tables) s.weight_tables = std::move(run.tables);
    return s;
}

}  // namespace fvsmim
