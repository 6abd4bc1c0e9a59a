#include "fvsmim/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <stdexcept>

namespace fvsmim {

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

Graph star_graph(int leaves) {
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

Graph petersen_graph() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

std::optional<Graph> named_graph(const std::string& name) {
    if (name == "petersen") return petersen_graph();
    std::smatch m;
    static const std::regex bip(R"((?:k|K)(\d+),(\d+))");
    static const std::regex one(R"((path|cycle|complete|star|P|C|K)(\d+))");
    if (std::regex_match(name, m, bip)) return complete_bipartite(std::stoi(m[1]), std::stoi(m[2]));
    if (!std::regex_match(name, m, one) || m[2].length() > 6) return std::nullopt;
    const std::string kind = m[1];
    const int n = std::stoi(m[2]);
    if (kind == "path" || kind == "P") return path_graph(n);
    if (kind == "cycle" || kind == "C") {
        if (n < 3) return std::nullopt;
        return cycle_graph(n);
    }
    if (kind == "complete" || kind == "K") return complete_graph(n);
    return star_graph(n);
}

Graph random_graph(int n, double p, Rng& rng) {
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) g.add_edge(i, j);
    return g;
}

Graph random_tree(int n, Rng& rng) {
    Graph g(n);
    if (n < 2) return g;
    if (n == 2) {
        g.add_edge(0, 1);
        return g;
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> code(n - 2);
    for (int& c : code) c = pick(rng);
    std::vector<int> degree(n, 1);
    for (int c : code) ++degree[c];
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.insert(v);
    for (int c : code) {
        const int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        g.add_edge(leaf, c);
        if (--degree[c] == 1) leaves.insert(c);
    }
    const int u = *leaves.begin();
    const int v = *std::next(leaves.begin());
    g.add_edge(u, v);
    return g;
}

Graph random_connected_graph(int n, double p, Rng& rng) {
    Graph g = random_tree(n, rng);
    std::bernoulli_distribution coin(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j) && coin(rng)) g.add_edge(i, j);
    return g;
}

void assign_random_weights(Graph& g, double lo, double hi, Rng& rng) {
    std::uniform_real_distribution<double> w(lo, hi);
    for (int v = 0; v < g.num_vertices(); ++v) g.set_weight(v, w(rng));
}

TwoTreeInstance random_partial_two_tree(int n, double keep, Rng& rng) {
    if (n < 1) throw std::invalid_argument("need at least one vertex");
    TwoTreeInstance out;
    std::vector<std::pair<int, int>> edges;  // edges of the full 2-tree
    std::vector<int> home;                   // bag holding each of those edges
    auto& td = out.td;
    if (n == 1) {
        td.bags.push_back({0});
    } else {
        const int first = std::min(n, 3);
        td.bags.emplace_back();
        for (int v = 0; v < first; ++v) td.bags[0].push_back(v);
        for (int u = 0; u < first; ++u)
            for (int v = u + 1; v < first; ++v) {
                edges.emplace_back(u, v);
                home.push_back(0);
            }
        for (int x = first; x < n; ++x) {
            const int e = std::uniform_int_distribution<int>(0, static_cast<int>(edges.size()) - 1)(rng);
            const auto [u, v] = edges[e];
            td.bags.push_back({u, v, x});
            const int bag = static_cast<int>(td.bags.size()) - 1;
            td.edges.emplace_back(home[e], bag);
            edges.emplace_back(u, x);
            edges.emplace_back(v, x);
            home.push_back(bag);
            home.push_back(bag);
        }
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& b : td.bags) {
        for (int& v : b) v = perm[v];
        std::sort(b.begin(), b.end());
    }
    out.graph = Graph(n);
    std::bernoulli_distribution coin(keep);
    for (auto [u, v] : edges)
        if (coin(rng)) out.graph.add_edge(perm[u], perm[v]);
    return out;
}

CwdExpression random_cwd_expression(int n, int w, Rng& rng) {
    if (n < 1 || w < 1) throw std::invalid_argument("need n >= 1 and w >= 1");
    CwdExpression e;
    std::uniform_int_distribution<int> label(1, w);
    std::bernoulli_distribution join_coin(0.7), rename_coin(0.3);
    struct Part {
        int node;
        std::vector<int> labels;  // labels present, sorted
    };
    std::vector<Part> pool;
    auto push = [&](CwdExpression::Node nd) {
        e.nodes.push_back(std::move(nd));
        return static_cast<int>(e.nodes.size()) - 1;
    };
    for (int i = 0; i < n; ++i) {
        CwdExpression::Node nd;
        nd.op = CwdOp::Create;
        nd.a = label(rng);
        nd.name = "v" + std::to_string(i);
        pool.push_back({push(nd), {nd.a}});
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    while (pool.size() > 1) {
        const int i = std::uniform_int_distribution<int>(0, static_cast<int>(pool.size()) - 1)(rng);
        int j = std::uniform_int_distribution<int>(0, static_cast<int>(pool.size()) - 2)(rng);
        if (j >= i) ++j;
        CwdExpression::Node u;
        u.op = CwdOp::Union;
        u.left = pool[i].node;
        u.right = pool[j].node;
        Part merged{push(u), {}};
        std::set_union(pool[i].labels.begin(), pool[i].labels.end(), pool[j].labels.begin(),
                       pool[j].labels.end(), std::back_inserter(merged.labels));
        auto pick_two = [&](std::vector<int>& from) {
            std::shuffle(from.begin(), from.end(), rng);
            std::pair<int, int> out{from[0], from[1]};
            std::sort(from.begin(), from.end());
            return out;
        };
        if (merged.labels.size() >= 2 && join_coin(rng)) {
            auto [a, b] = pick_two(merged.labels);
            CwdExpression::Node jn;
            jn.op = CwdOp::Join;
            jn.a = a;
            jn.b = b;
            jn.left = merged.node;
            merged.node = push(jn);
        }
        if (w >= 2 && rename_coin(rng)) {
            const int a = merged.labels[std::uniform_int_distribution<int>(
                0, static_cast<int>(merged.labels.size()) - 1)(rng)];
            int b = std::uniform_int_distribution<int>(1, w - 1)(rng);
            if (b >= a) ++b;
            CwdExpression::Node rn;
            rn.op = CwdOp::Rename;
            rn.a = a;
            rn.b = b;
            rn.left = merged.node;
            merged.node = push(rn);
            std::replace(merged.labels.begin(), merged.labels.end(), a, b);
            std::sort(merged.labels.begin(), merged.labels.end());
            merged.labels.erase(std::unique(merged.labels.begin(), merged.labels.end()),
                                merged.labels.end());
        }
        const int hi = std::max(i, j), lo = std::min(i, j);
        pool.erase(pool.begin() + hi);
        pool.erase(pool.begin() + lo);
        pool.push_back(std::move(merged));
    }
    e.root = pool[0].node;
    return e;
}

std::vector<Interval> random_intervals(int n, double max_length, Rng& rng) {
    std::uniform_real_distribution<double> left(0.0, std::max(n, 1));
    std::uniform_real_distribution<double> length(0.0, max_length);
    std::vector<Interval> out(n);
    for (auto& iv : out) {
        iv.left = left(rng);
        iv.right = iv.left + length(rng);
    }
    return out;
}

Graph random_bipartite_subcubic(int m, double extra, Rng& rng) {
    if (m < 2) throw std::invalid_argument("need m >= 2");
    std::vector<int> pv(m), pw(m);
    std::iota(pv.begin(), pv.end(), 0);
    std::iota(pw.begin(), pw.end(), m);
    std::shuffle(pv.begin(), pv.end(), rng);
    std::shuffle(pw.begin(), pw.end(), rng);
    Graph g(2 * m);
    for (int i = 0; i < m; ++i) {
        g.add_edge(pv[i], pw[i]);
        g.add_edge(pw[i], pv[(i + 1) % m]);
    }
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v < m; ++v)
        for (int w = m; w < 2 * m; ++w) pairs.emplace_back(v, w);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::bernoulli_distribution coin(extra);
    for (auto [v, w] : pairs)
        if (g.degree(v) == 2 && g.degree(w) == 2 && !g.has_edge(v, w) && coin(rng)) g.add_edge(v, w);
    return g;
}

BranchDecomposition random_decomposition(int n, Rng& rng) {
    if (n == 0) return BranchDecomposition::from_children(0, 0, {}, {});
    std::vector<std::vector<int>> children(n);
    std::vector<int> leaf(n);
    std::iota(leaf.begin(), leaf.end(), 0);
    std::vector<int> pool = leaf;
    while (pool.size() > 1) {
        const int i = std::uniform_int_distribution<int>(0, static_cast<int>(pool.size()) - 1)(rng);
        int j = std::uniform_int_distribution<int>(0, static_cast<int>(pool.size()) - 2)(rng);
        if (j >= i) ++j;
        children.push_back({pool[i], pool[j]});
        leaf.push_back(BranchDecomposition::kNone);
        pool[std::min(i, j)] = static_cast<int>(children.size()) - 1;
        pool.erase(pool.begin() + std::max(i, j));
    }
    return BranchDecomposition::from_children(n, pool[0], std::move(children), std::move(leaf));
}

LinearOrder random_order(int n, Rng& rng) {
    LinearOrder order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

namespace {

// Stable colour refinement; colours are ranks of isomorphism-invariant
// signatures.
std::vector<int> refine(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<int> colour(n);
    for (int v = 0; v < n; ++v) colour[v] = g.degree(v);
    for (;;) {
        std::vector<std::pair<int, std::vector<int>>> sig(n);
        for (int v = 0; v < n; ++v) {
            sig[v].first = colour[v];
            for (int u : g.adjacency(v)) sig[v].second.push_back(colour[u]);
            std::sort(sig[v].second.begin(), sig[v].second.end());
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> next(n);
        for (int v = 0; v < n; ++v)
            next[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        std::vector<int> old = colour;
        std::sort(old.begin(), old.end());
        const long classes = std::unique(old.begin(), old.end()) - old.begin();
        colour = next;
        if (static_cast<long>(sorted.size()) == classes) return colour;
    }
}

}  // namespace

std::string canonical_form(const Graph& g) {
    const int n = g.num_vertices();
    if (n == 0) return "0:";
    const std::vector<int> colour = refine(g);
    // Cells in colour order; every canonical labelling lists cell 0 first.
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < n; ++v) cells[colour[v]].push_back(v);
    std::vector<std::vector<int>> cell_list;
    for (auto& [c, members] : cells) cell_list.push_back(members);

    std::string best;
    std::vector<int> labelling;
    auto emit = [&]() {
        std::string s;
        s.reserve(n * (n - 1) / 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s.push_back(g.has_edge(labelling[i], labelling[j]) ? '1' : '0');
        if (s > best) best = std::move(s);
    };
    auto rec = [&](auto&& self, size_t cell) -> void {
        if (cell == cell_list.size()) {
            emit();
            return;
        }
        std::vector<int> members = cell_list[cell];
        std::sort(members.begin(), members.end());
        do {
            labelling.insert(labelling.end(), members.begin(), members.end());
            self(self, cell + 1);
            labelling.resize(labelling.size() - members.size());
        } while (std::next_permutation(members.begin(), members.end()));
    };
    rec(rec, 0);
    std::string sizes;
    for (const auto& c : cell_list) sizes += std::to_string(c.size()) + ".";
    return std::to_string(n) + ":" + sizes + ":" + best;
}

std::vector<Graph> connected_graphs(int n) {
    if (n < 1 || n > 7) throw std::invalid_argument("connected_graphs supports 1 <= n <= 7");
    std::vector<Graph> level{Graph(1)};
    for (int size = 2; size <= n; ++size) {
        std::set<std::string> seen;
        std::vector<Graph> next;
        for (const Graph& base : level)
            for (int mask = 1; mask < (1 << (size - 1)); ++mask) {
                Graph g(size);
                for (auto [u, v] : base.edges()) g.add_edge(u, v);
                for (int u = 0; u < size - 1; ++u)
                    if (mask >> u & 1) g.add_edge(u, size - 1);
                if (seen.insert(canonical_form(g)).second) next.push_back(std::move(g));
            }
        level = std::move(next);
    }
    return level;
}

}  // namespace fvsmim
