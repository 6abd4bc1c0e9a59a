#include "fvsmim/branchdec.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fvsmim {

BranchDecomposition BranchDecomposition::from_children(int num_vertices, int root,
                                                       std::vector<std::vector<int>> children,
                                                       std::vector<int> leaf_vertex) {
    BranchDecomposition d;
    d.num_vertices_ = num_vertices;
    const int nodes = static_cast<int>(children.size());
    if (static_cast<int>(leaf_vertex.size()) != nodes)
        throw std::invalid_argument("leaf map size differs from node count");
    if (num_vertices == 0) {
        if (nodes != 0) throw std::invalid_argument("empty graph needs an empty decomposition");
        return d;
    }
    if (root < 0 || root >= nodes) throw std::invalid_argument("root out of range");

    d.root_ = root;
    d.children_ = std::move(children);
    d.leaf_vertex_ = std::move(leaf_vertex);
    d.parent_.assign(nodes, kNone);
    d.leaf_of_.assign(num_vertices, kNone);

    for (int t = 0; t < nodes; ++t) {
        const auto& ch = d.children_[t];
        if (!ch.empty() && ch.size() != 2)
            throw std::invalid_argument("node " + std::to_string(t) + " has " +
                                        std::to_string(ch.size()) + " children");
        if (ch.empty()) {
            int v = d.leaf_vertex_[t];
            if (v < 0 || v >= num_vertices)
                throw std::invalid_argument("leaf " + std::to_string(t) + " is not mapped");
            if (d.leaf_of_[v] != kNone)
                throw std::invalid_argument("vertex " + std::to_string(v) + " mapped twice");
            d.leaf_of_[v] = t;
        } else if (d.leaf_vertex_[t] != kNone) {
            throw std::invalid_argument("internal node " + std::to_string(t) + " is mapped");
        }
        for (int c : ch) {
            if (c < 0 || c >= nodes || c == root || d.parent_[c] != kNone)
                throw std::invalid_argument("malformed tree at node " + std::to_string(t));
            d.parent_[c] = t;
        }
    }
    for (int v = 0; v < num_vertices; ++v)
        if (d.leaf_of_[v] == kNone)
            throw std::invalid_argument("vertex " + std::to_string(v) + " has no leaf");

    // Iterative post order; also proves every node is reachable from the root.
    d.below_.assign(nodes, VertexSet(num_vertices));
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    while (!stack.empty()) {
        auto& [t, next] = stack.back();
        if (next < d.children_[t].size()) {
            int c = d.children_[t][next++];
            stack.emplace_back(c, 0);
        } else {
            if (d.is_leaf(t)) {
                d.below_[t].insert(d.leaf_vertex_[t]);
            } else {
                const auto& a = d.below_[d.children_[t][0]];
                const auto& b = d.below_[d.children_[t][1]];
                if (a.intersects(b)) throw std::invalid_argument("children share vertices");
                d.below_[t] = a | b;
            }
            d.post_order_.push_back(t);
            stack.pop_back();
        }
    }
    if (static_cast<int>(d.post_order_.size()) != nodes)
        throw std::invalid_argument("decomposition tree is disconnected");
    return d;
}

std::vector<VertexSet> BranchDecomposition::cuts() const {
    std::vector<VertexSet> out;
    for (int t : post_order_)
        if (t != root_) out.push_back(below_[t]);
    return out;
}

UnrootedDecomposition BranchDecomposition::unrooted() const {
    UnrootedDecomposition u;
    u.num_vertices = num_vertices_;
    if (num_nodes() == 0) return u;
    if (num_nodes() == 1) {
        u.num_nodes = 1;
        u.leaf_map.emplace_back(0, leaf_vertex_[0]);
        return u;
    }
    std::vector<int> id(num_nodes(), kNone);
    int next = 0;
    for (int t = 0; t < num_nodes(); ++t)
        if (t != root_) id[t] = next++;
    u.num_nodes = next;
    for (int t = 0; t < num_nodes(); ++t) {
        if (t == root_) continue;
        if (parent_[t] != root_) u.tree_edges.emplace_back(id[parent_[t]], id[t]);
        if (is_leaf(t)) u.leaf_map.emplace_back(id[t], leaf_vertex_[t]);
    }
    u.tree_edges.emplace_back(id[children_[root_][0]], id[children_[root_][1]]);
    return u;
}

BranchDecomposition root_decomposition(const UnrootedDecomposition& dec,
                                       std::optional<int> root_node) {
    const int n = dec.num_vertices;
    const int nodes = dec.num_nodes;
    if (n <= 1) {
        if (n == 0) return BranchDecomposition::from_children(0, 0, {}, {});
        if (nodes != 1 || dec.leaf_map.size() != 1 || dec.leaf_map[0].second != 0)
            throw std::invalid_argument("single-vertex graph needs a single-leaf decomposition");
        return BranchDecomposition::from_children(1, 0, {{}}, {0});
    }
    if (static_cast<int>(dec.tree_edges.size()) != nodes - 1)
        throw std::invalid_argument("decomposition is not a tree: wrong edge count");

    std::vector<std::vector<int>> adj(nodes + 1);
    for (auto [a, b] : dec.tree_edges) {
        if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b)
            throw std::invalid_argument("bad tree edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> mapped(nodes, BranchDecomposition::kNone);
    std::vector<int> leaf_of(n, BranchDecomposition::kNone);
    for (auto [t, v] : dec.leaf_map) {
        if (t < 0 || t >= nodes || v < 0 || v >= n) throw std::invalid_argument("bad leaf map");
        if (mapped[t] != BranchDecomposition::kNone || leaf_of[v] != BranchDecomposition::kNone)
            throw std::invalid_argument("leaf map is not a bijection");
        mapped[t] = v;
        leaf_of[v] = t;
    }
    for (int t = 0; t < nodes; ++t) {
        if (adj[t].size() > 3) throw std::invalid_argument("tree is not subcubic");
        bool leaf = adj[t].size() == 1;
        if (leaf != (mapped[t] != BranchDecomposition::kNone))
            throw std::invalid_argument("leaves and mapped nodes differ at node " +
                                        std::to_string(t));
    }

    int root;
    if (root_node) {
        root = *root_node;
        if (root < 0 || root >= nodes || adj[root].size() != 2)
            throw std::invalid_argument("root must be a degree-2 node");
    } else {
        // Subdivide the edge at the leaf of vertex 0.
        int leaf = leaf_of[0];
        int other = adj[leaf][0];
        root = nodes;
        adj[leaf] = {root};
        std::replace(adj[other].begin(), adj[other].end(), leaf, root);
        adj[root] = {leaf, other};
    }

    const int total = static_cast<int>(adj.size());
    std::vector<int> parent(total, BranchDecomposition::kNone);
    std::vector<std::vector<int>> children(total);
    std::vector<char> seen(total, 0);
    std::vector<int> order{root};
    seen[root] = 1;
    for (size_t i = 0; i < order.size(); ++i) {
        int t = order[i];
        for (int c : adj[t])
            if (!seen[c]) {
                seen[c] = 1;
                parent[c] = t;
                children[t].push_back(c);
                order.push_back(c);
            }
    }
    if (static_cast<int>(order.size()) != (root_node ? nodes : nodes + 1))
        throw std::invalid_argument("decomposition tree is disconnected");

    // Smooth single-child nodes: each node's child slot points past them.
    auto skip = [&](int c) {
        while (children[c].size() == 1) c = children[c][0];
        return c;
    };
    std::vector<int> id(total, BranchDecomposition::kNone);
    std::vector<std::vector<int>> out_children;
    std::vector<int> out_leaf;
    // Assign ids in BFS order over kept nodes.
    std::vector<int> kept{root};
    for (size_t i = 0; i < kept.size(); ++i) {
        int t = kept[i];
        id[t] = static_cast<int>(i);
        for (int c : children[t]) kept.push_back(skip(c));
    }
    out_children.resize(kept.size());
    out_leaf.assign(kept.size(), BranchDecomposition::kNone);
    for (int t : kept) {
        for (int c : children[t]) out_children[id[t]].push_back(id[skip(c)]);
        if (children[t].empty()) out_leaf[id[t]] = mapped[t];
    }
    return BranchDecomposition::from_children(n, 0, std::move(out_children), std::move(out_leaf));
}

BranchDecomposition from_linear_order(const LinearOrder& order) {
    const int n = static_cast<int>(order.size());
    std::vector<char> seen(n, 0);
    for (int v : order) {
        if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("order is not a permutation");
        seen[v] = 1;
    }
    if (n == 0) return BranchDecomposition::from_children(0, 0, {}, {});
    if (n == 1) return BranchDecomposition::from_children(1, 0, {{}}, {order[0]});
    // Nodes 0..n-1 are the leaves in order; node n+k-2 covers the prefix of length k.
    std::vector<std::vector<int>> children(2 * n - 1);
    std::vector<int> leaf(2 * n - 1, BranchDecomposition::kNone);
    for (int i = 0; i < n; ++i) leaf[i] = order[i];
    int prev = 0;
    for (int k = 2; k <= n; ++k) {
        int node = n + k - 2;
        children[node] = {prev, k - 1};
        prev = node;
    }
    return BranchDecomposition::from_children(n, prev, std::move(children), std::move(leaf));
}

namespace {

int parse_int(const std::string& tok, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("expected integer, got '" + tok + "'", line);
    return value;
}

// Keeps the node ids of a file whose root has two children and whose other
// nodes are leaves or have two children.
std::optional<BranchDecomposition> rooted_as_written(const UnrootedDecomposition& u, int root) {
    const int nodes = u.num_nodes;
    if (root < 0 || root >= nodes) return std::nullopt;
    std::vector<std::vector<int>> adj(nodes);
    for (auto [a, b] : u.tree_edges) {
        if (a < 0 || b < 0 || a >= nodes || b >= nodes) return std::nullopt;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> leaf_vertex(nodes, -1);
    for (auto [t, v] : u.leaf_map) {
        if (t < 0 || t >= nodes) return std::nullopt;
        leaf_vertex[t] = v;
    }
    std::vector<std::vector<int>> children(nodes);
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
        const int t = stack.back();
        stack.pop_back();
        for (int c : adj[t]) {
            if (seen[c]) continue;
            seen[c] = 1;
            children[t].push_back(c);
            stack.push_back(c);
        }
    }
    for (int t = 0; t < nodes; ++t) {
        if (!seen[t]) return std::nullopt;
        const auto k = children[t].size();
        if (k != 0 && k != 2) return std::nullopt;
        if ((k == 0) != (leaf_vertex[t] >= 0)) return std::nullopt;
    }
    try {
        return BranchDecomposition::from_children(u.num_vertices, root, std::move(children),
                                                  std::move(leaf_vertex));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

}  // namespace

BranchDecomposition BranchDecomposition::read(std::istream& in, int num_vertices) {
    std::string line;
    int lineno = 0;
    UnrootedDecomposition u;
    u.num_vertices = num_vertices;
    std::optional<int> root;
    bool header = false;
    std::optional<LinearOrder> order;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "order") {
            if (header || order) throw ParseError("'order' must be the only content", lineno);
            order.emplace();
            for (size_t i = 1; i < tok.size(); ++i) order->push_back(parse_int(tok[i], lineno));
            continue;
        }
        if (order) throw ParseError("'order' must be the only content", lineno);
        if (tok[0] == "bd") {
            if (header || tok.size() != 2) throw ParseError("bad 'bd' header", lineno);
            u.num_nodes = parse_int(tok[1], lineno);
            header = true;
            continue;
        }
        if (!header) throw ParseError("missing 'bd' header", lineno);
        if (tok[0] == "r" && tok.size() == 2) {
            if (root) throw ParseError("duplicate root", lineno);
            root = parse_int(tok[1], lineno);
        } else if (tok[0] == "e" && tok.size() == 3) {
            u.tree_edges.emplace_back(parse_int(tok[1], lineno), parse_int(tok[2], lineno));
        } else if (tok[0] == "l" && tok.size() == 3) {
            u.leaf_map.emplace_back(parse_int(tok[1], lineno), parse_int(tok[2], lineno));
        } else {
            throw ParseError("unknown line '" + line + "'", lineno);
        }
    }
    if (order) {
        if (static_cast<int>(order->size()) != num_vertices)
            throw std::invalid_argument("order length differs from vertex count");
        return from_linear_order(*order);
    }
    if (!header) throw ParseError("empty decomposition file", lineno);
    if (num_vertices <= 1) return root_decomposition(u);
    if (root) {
        if (auto direct = rooted_as_written(u, *root)) return *direct;
    }
    return root_decomposition(u, root);
}

BranchDecomposition BranchDecomposition::read_file(const std::string& path, int num_vertices) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return read(in, num_vertices);
}

void BranchDecomposition::write(std::ostream& out) const {
    out << "bd " << num_nodes() << '\n';
    if (root_ != kNone) out << "r " << root_ << '\n';
    for (int t = 0; t < num_nodes(); ++t)
        if (t != root_) out << "e " << parent_[t] << ' ' << t << '\n';
    for (int t = 0; t < num_nodes(); ++t)
        if (is_leaf(t)) out << "l " << t << ' ' << leaf_vertex_[t] << '\n';
}

void BranchDecomposition::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write(out);
}

void BranchDecomposition::write_dot(std::ostream& out) const {
    out << "graph bd {\n";
    for (int t = 0; t < num_nodes(); ++t) {
        out << "  n" << t;
        if (is_leaf(t))
            out << " [shape=box,label=\"v" << leaf_vertex_[t] << "\"]";
        else if (t == root_)
            out << " [label=\"root\"]";
        else
            out << " [label=\"\"]";
        out << ";\n";
    }
    for (int t = 0; t < num_nodes(); ++t)
        if (t != root_) out << "  n" << parent_[t] << " -- n" << t << ";\n";
    out << "}\n";
}

namespace {

/// Exact maximum induced matching by branching on a minimum-degree vertex of
/// one side, memoized on the remaining vertex sets.
class InducedMatchingSearch {
public:
    explicit InducedMatchingSearch(const CrossingGraph& h) : h_(h) {}

    int run() {
        VertexSet a = dedupe_twins(h_.side_a(), h_.side_b());
        VertexSet b = dedupe_twins(h_.side_b(), a);
        return solve(a, b);
    }

private:
    // Twins on one side cannot both be matched in an induced matching.
    VertexSet dedupe_twins(const VertexSet& side, const VertexSet& other) const {
        VertexSet kept(side.universe());
        std::unordered_map<VertexSet, int> seen;
        side.for_each([&](int v) {
            VertexSet nb = h_.host().neighbors(v) & other;
            if (nb.empty()) return;
            if (seen.emplace(std::move(nb), v).second) kept.insert(v);
        });
        return kept;
    }

    int solve(VertexSet a, VertexSet b) {
        // Drop vertices with no remaining partner.
        VertexSet a2(a.universe()), b2(b.universe());
        a.for_each([&](int v) {
            if (h_.host().neighbors(v).intersects(b)) a2.insert(v);
        });
        b.for_each([&](int v) {
            if (h_.host().neighbors(v).intersects(a2)) b2.insert(v);
        });
        if (a2.empty()) return 0;
        if (a2.size() == 1 || b2.size() == 1) return 1;

        Key key{a2, b2};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        int pick = -1, best_deg = 1 << 30;
        a2.for_each([&](int v) {
            int d = (h_.host().neighbors(v) & b2).size();
            if (d < best_deg) {
                best_deg = d;
                pick = v;
            }
        });
        const int cap = std::min(a2.size(), b2.size());
        VertexSet rest_a = a2;
        rest_a.erase(pick);
        int best = solve(rest_a, b2);
        VertexSet nbrs = h_.host().neighbors(pick) & b2;
        nbrs.for_each([&](int w) {
            if (best >= cap) return;
            VertexSet na = rest_a - h_.host().neighbors(w);
            VertexSet nb = b2 - nbrs;
            best = std::max(best, 1 + solve(std::move(na), std::move(nb)));
        });
        memo_.emplace(std::move(key), best);
        return best;
    }

    struct Key {
        VertexSet a, b;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            size_t h = k.a.hash();
            hash_combine(h, k.b.hash());
            return h;
        }
    };

    const CrossingGraph& h_;
    std::unordered_map<Key, int, KeyHash> memo_;
};

}  // namespace

int max_induced_matching(const CrossingGraph& h) { return InducedMatchingSearch(h).run(); }

std::vector<int> cut_mim_values(const Graph& g, const BranchDecomposition& dec) {
    check_matches(g, dec);
    std::vector<int> out(dec.num_nodes(), 0);
    for (int t = 0; t < dec.num_nodes(); ++t) {
        if (t == dec.root()) continue;
        const VertexSet& vt = dec.vertices_below(t);
        out[t] = max_induced_matching(crossing_graph(g, vt, vt.complement()));
    }
    return out;
}

int mim_width(const Graph& g, const BranchDecomposition& dec) {
    auto values = cut_mim_values(g, dec);
    return values.empty() ? 0 : *std::max_element(values.begin(), values.end());
}

void check_matches(const Graph& g, const BranchDecomposition& dec) {
    if (dec.num_graph_vertices() != g.num_vertices())
        throw std::invalid_argument("decomposition covers " +
                                    std::to_string(dec.num_graph_vertices()) +
                                    " vertices, graph has " + std::to_string(g.num_vertices()));
}

}  // namespace fvsmim
