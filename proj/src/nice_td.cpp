#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "fvsmim/builders.hpp"

namespace fvsmim {

namespace {

const char* kind_name(BagKind k) {
    switch (k) {
        case BagKind::Leaf: return "leaf";
        case BagKind::Introduce: return "introduce";
        case BagKind::Forget: return "forget";
        case BagKind::Join: return "join";
    }
    return "?";
}

std::string node_msg(int t, const std::string& what) {
    return "node " + std::to_string(t) + ": " + what;
}

// Nodes in an order where children precede parents. Throws unless the child
// lists form a tree rooted at td.root that reaches every node.
std::vector<int> post_order(const NiceTreeDecomposition& td) {
    const int nodes = td.num_nodes();
    if (td.root < 0 || td.root >= nodes) throw std::invalid_argument("root out of range");
    std::vector<int> parents(nodes, 0);
    for (int t = 0; t < nodes; ++t)
        for (int c : td.nodes[t].children) {
            if (c < 0 || c >= nodes) throw std::invalid_argument(node_msg(t, "child out of range"));
            ++parents[c];
        }
    for (int t = 0; t < nodes; ++t)
        if (parents[t] != (t == td.root ? 0 : 1))
            throw std::invalid_argument(node_msg(t, "tree edges do not form a rooted tree"));
    std::vector<int> order;
    std::vector<std::pair<int, bool>> stack{{td.root, false}};
    while (!stack.empty()) {
        auto [t, done] = stack.back();
        stack.pop_back();
        if (done) {
            order.push_back(t);
            continue;
        }
        stack.emplace_back(t, true);
        for (int c : td.nodes[t].children) stack.emplace_back(c, false);
    }
    if (static_cast<int>(order.size()) != nodes)
        throw std::invalid_argument("tree edges do not reach every node");
    return order;
}

// Kinds, bags and widths; everything that does not need the graph.
std::vector<int> check_shape(const NiceTreeDecomposition& td) {
    const std::vector<int> order = post_order(td);
    std::vector<int> forgets(td.num_vertices, 0);
    for (int t = 0; t < td.num_nodes(); ++t) {
        const auto& nd = td.nodes[t];
        for (size_t i = 0; i < nd.bag.size(); ++i) {
            if (nd.bag[i] < 0 || nd.bag[i] >= td.num_vertices)
                throw std::invalid_argument(node_msg(t, "bag vertex out of range"));
            if (i > 0 && nd.bag[i - 1] >= nd.bag[i])
                throw std::invalid_argument(node_msg(t, "bag not sorted or has duplicates"));
        }
        if (static_cast<int>(nd.bag.size()) > td.width + 1)
            throw std::invalid_argument(node_msg(t, "bag larger than width + 1"));
        const size_t arity = nd.kind == BagKind::Leaf ? 0 : nd.kind == BagKind::Join ? 2 : 1;
        if (nd.children.size() != arity)
            throw std::invalid_argument(node_msg(t, std::string(kind_name(nd.kind)) +
                                                        " node with wrong number of children"));
        auto with = [](std::vector<int> b, int v) {
            b.insert(std::lower_bound(b.begin(), b.end(), v), v);
            return b;
        };
        switch (nd.kind) {
            case BagKind::Leaf:
                if (!nd.bag.empty()) throw std::invalid_argument(node_msg(t, "leaf bag not empty"));
                break;
            case BagKind::Introduce: {
                const auto& cb = td.nodes[nd.children[0]].bag;
                if (std::binary_search(cb.begin(), cb.end(), nd.vertex) || with(cb, nd.vertex) != nd.bag)
                    throw std::invalid_argument(node_msg(t, "introduce bag is not child bag plus vertex"));
                break;
            }
            case BagKind::Forget: {
                const auto& cb = td.nodes[nd.children[0]].bag;
                if (nd.vertex < 0 || nd.vertex >= td.num_vertices ||
                    std::binary_search(nd.bag.begin(), nd.bag.end(), nd.vertex) ||
                    with(nd.bag, nd.vertex) != cb)
                    throw std::invalid_argument(node_msg(t, "forget bag is not child bag minus vertex"));
                ++forgets[nd.vertex];
                break;
            }
            case BagKind::Join:
                if (td.nodes[nd.children[0]].bag != nd.bag || td.nodes[nd.children[1]].bag != nd.bag)
                    throw std::invalid_argument(node_msg(t, "join bags differ"));
                break;
        }
    }
    if (!td.nodes[td.root].bag.empty()) throw std::invalid_argument("root bag is not empty");
    for (int v = 0; v < td.num_vertices; ++v)
        if (forgets[v] != 1)
            throw std::invalid_argument("vertex " + std::to_string(v) + " is forgotten " +
                                        std::to_string(forgets[v]) + " times");
    return order;
}

int parse_int(const std::string& tok, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("expected integer, got '" + tok + "'", line);
    return value;
}

}  // namespace

int NiceTreeDecomposition::max_join_bag() const {
    int best = 0;
    for (const auto& nd : nodes)
        if (nd.kind == BagKind::Join) best = std::max(best, static_cast<int>(nd.bag.size()));
    return best;
}

void NiceTreeDecomposition::validate(const Graph& g) const {
    if (g.num_vertices() != num_vertices)
        throw std::invalid_argument("decomposition covers " + std::to_string(num_vertices) +
                                    " vertices, graph has " + std::to_string(g.num_vertices()));
    if (nodes.empty()) {
        if (num_vertices != 0) throw std::invalid_argument("no nodes");
        return;
    }
    check_shape(*this);
    // Each vertex's nodes form a subtree: exactly one of them has a parent
    // outside the set.
    std::vector<int> parent(nodes.size(), -1);
    for (int t = 0; t < num_nodes(); ++t)
        for (int c : nodes[t].children) parent[c] = t;
    std::vector<int> tops(num_vertices, 0);
    std::vector<VertexSet> bagset;
    for (const auto& nd : nodes) bagset.push_back(VertexSet::of(num_vertices, nd.bag));
    for (int t = 0; t < num_nodes(); ++t)
        bagset[t].for_each([&](int v) {
            if (parent[t] < 0 || !bagset[parent[t]].contains(v)) ++tops[v];
        });
    for (int v = 0; v < num_vertices; ++v)
        if (tops[v] != 1)
            throw std::invalid_argument("bags containing vertex " + std::to_string(v) +
                                        " are not connected");
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (const auto& b : bagset)
            if (b.contains(u) && b.contains(v)) {
                found = true;
                break;
            }
        if (!found)
            throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                        " is in no bag");
    }
}

NiceTreeDecomposition NiceTreeDecomposition::read(std::istream& in, int num_vertices) {
    NiceTreeDecomposition td;
    std::string line;
    int lineno = 0;
    bool header = false;
    std::vector<char> defined;
    std::vector<std::pair<int, int>> edges;
    int max_vertex = -1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "td") {
            if (header) throw ParseError("duplicate header", lineno);
            if (tok.size() != 3) throw ParseError("header must be 'td <nodes> <width>'", lineno);
            const int nodes = parse_int(tok[1], lineno);
            td.width = parse_int(tok[2], lineno);
            if (nodes < 0 || td.width < 0) throw ParseError("negative count in header", lineno);
            td.nodes.resize(nodes);
            defined.assign(nodes, 0);
            header = true;
            continue;
        }
        if (!header) throw ParseError("missing 'td' header", lineno);
        auto node_id = [&](const std::string& s) {
            const int id = parse_int(s, lineno);
            if (id < 0 || id >= td.num_nodes()) throw ParseError("node id out of range", lineno);
            return id;
        };
        if (tok[0] == "b") {
            if (tok.size() < 4) throw ParseError("bag line must be 'b <id> <kind> [<v>] : <bag>'", lineno);
            const int id = node_id(tok[1]);
            if (defined[id]) throw ParseError("node defined twice", lineno);
            defined[id] = 1;
            auto& nd = td.nodes[id];
            const std::string& kind = tok[2];
            size_t pos = 3;
            if (kind == "leaf") {
                nd.kind = BagKind::Leaf;
            } else if (kind == "join") {
                nd.kind = BagKind::Join;
            } else if (kind == "introduce" || kind == "forget") {
                nd.kind = kind == "introduce" ? BagKind::Introduce : BagKind::Forget;
                nd.vertex = parse_int(tok[3], lineno);
                if (nd.vertex < 0) throw ParseError("negative vertex", lineno);
                max_vertex = std::max(max_vertex, nd.vertex);
                pos = 4;
            } else {
                throw ParseError("unknown node kind '" + kind + "'", lineno);
            }
            if (pos >= tok.size() || tok[pos] != ":") throw ParseError("expected ':'", lineno);
            for (size_t i = pos + 1; i < tok.size(); ++i) {
                const int v = parse_int(tok[i], lineno);
                if (v < 0) throw ParseError("negative vertex", lineno);
                nd.bag.push_back(v);
                max_vertex = std::max(max_vertex, v);
            }
            std::sort(nd.bag.begin(), nd.bag.end());
            if (std::adjacent_find(nd.bag.begin(), nd.bag.end()) != nd.bag.end())
                throw ParseError("repeated vertex in bag", lineno);
        } else if (tok[0] == "e") {
            if (tok.size() != 3) throw ParseError("edge line must be 'e <i> <j>'", lineno);
            edges.emplace_back(node_id(tok[1]), node_id(tok[2]));
        } else if (tok[0] == "r") {
            if (tok.size() != 2) throw ParseError("root line must be 'r <id>'", lineno);
            if (td.root >= 0) throw ParseError("duplicate root", lineno);
            td.root = node_id(tok[1]);
        } else {
            throw ParseError("unknown line type '" + tok[0] + "'", lineno);
        }
    }
    if (!header) throw ParseError("empty decomposition file", lineno);
    for (int t = 0; t < td.num_nodes(); ++t)
        if (!defined[t]) throw ParseError("node " + std::to_string(t) + " has no bag line", lineno);
    if (td.num_nodes() > 0 && td.root < 0) throw ParseError("missing root", lineno);
    if (static_cast<int>(edges.size()) != std::max(td.num_nodes() - 1, 0))
        throw ParseError("a tree on " + std::to_string(td.num_nodes()) + " nodes needs " +
                             std::to_string(std::max(td.num_nodes() - 1, 0)) + " edges",
                         lineno);
    // Orient the edges away from the root.
    std::vector<std::vector<int>> adj(td.num_nodes());
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    if (td.num_nodes() > 0) {
        std::vector<char> seen(td.num_nodes(), 0);
        std::vector<int> stack{td.root};
        seen[td.root] = 1;
        int reached = 1;
        while (!stack.empty()) {
            const int t = stack.back();
            stack.pop_back();
            for (int c : adj[t])
                if (!seen[c]) {
                    seen[c] = 1;
                    ++reached;
                    td.nodes[t].children.push_back(c);
                    stack.push_back(c);
                }
        }
        if (reached != td.num_nodes()) throw ParseError("tree edges are not connected", lineno);
    }
    td.num_vertices = num_vertices >= 0 ? num_vertices : max_vertex + 1;
    if (max_vertex >= td.num_vertices) throw ParseError("vertex out of range", lineno);
    return td;
}

NiceTreeDecomposition NiceTreeDecomposition::read_file(const std::string& path, int num_vertices) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return read(in, num_vertices);
}

void NiceTreeDecomposition::write(std::ostream& out) const {
    out << "td " << num_nodes() << ' ' << width << '\n';
    for (int t = 0; t < num_nodes(); ++t) {
        const auto& nd = nodes[t];
        out << "b " << t << ' ' << kind_name(nd.kind);
        if (nd.kind == BagKind::Introduce || nd.kind == BagKind::Forget) out << ' ' << nd.vertex;
        out << " :";
        for (int v : nd.bag) out << ' ' << v;
        out << '\n';
    }
    for (int t = 0; t < num_nodes(); ++t)
        for (int c : nodes[t].children) out << "e " << t << ' ' << c << '\n';
    if (root >= 0) out << "r " << root << '\n';
}

void NiceTreeDecomposition::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write(out);
}

namespace {

struct NiceBuilder {
    NiceTreeDecomposition td;

    int add(BagKind kind, int vertex, std::vector<int> bag, std::vector<int> children) {
        td.nodes.push_back({kind, vertex, std::move(bag), std::move(children)});
        return td.num_nodes() - 1;
    }
    int introduce(int child, int v) {
        auto bag = td.nodes[child].bag;
        bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
        return add(BagKind::Introduce, v, std::move(bag), {child});
    }
    int forget(int child, int v) {
        auto bag = td.nodes[child].bag;
        bag.erase(std::find(bag.begin(), bag.end(), v));
        return add(BagKind::Forget, v, std::move(bag), {child});
    }
    int join(int a, int b) { return add(BagKind::Join, -1, td.nodes[a].bag, {a, b}); }
    int leaf() { return add(BagKind::Leaf, -1, {}, {}); }
};

}  // namespace

NiceTreeDecomposition make_nice(const Graph& g, const TreeDecomposition& in, int width) {
    const int n = g.num_vertices();
    const int bags = static_cast<int>(in.bags.size());
    std::vector<VertexSet> bagset;
    int largest = 0;
    for (const auto& b : in.bags) {
        for (int v : b)
            if (v < 0 || v >= n) throw std::invalid_argument("bag vertex out of range");
        bagset.push_back(VertexSet::of(n, b));
        if (bagset.back().size() != static_cast<int>(b.size()))
            throw std::invalid_argument("repeated vertex in bag");
        largest = std::max(largest, static_cast<int>(b.size()));
    }
    if (static_cast<int>(in.edges.size()) != std::max(bags - 1, 0))
        throw std::invalid_argument("tree decomposition edges do not form a tree");
    std::vector<std::vector<int>> adj(bags);
    for (auto [a, b] : in.edges) {
        if (a < 0 || b < 0 || a >= bags || b >= bags || a == b)
            throw std::invalid_argument("bad tree decomposition edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    VertexSet covered(n);
    for (const auto& b : bagset) covered |= b;
    if (covered != g.all_vertices()) throw std::invalid_argument("some vertex is in no bag");
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (const auto& b : bagset) found = found || (b.contains(u) && b.contains(v));
        if (!found)
            throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                        " is in no bag");
    }
    for (int v = 0; v < n; ++v) {
        int nodes = 0, links = 0;
        for (int t = 0; t < bags; ++t) nodes += bagset[t].contains(v);
        for (auto [a, b] : in.edges) links += bagset[a].contains(v) && bagset[b].contains(v);
        if (links != nodes - 1)
            throw std::invalid_argument("bags containing vertex " + std::to_string(v) +
                                        " are not connected");
    }

    NiceBuilder nb;
    nb.td.num_vertices = n;
    nb.td.width = std::max(width, largest - 1);
    if (bags == 0) {
        nb.td.root = nb.leaf();
        return nb.td;
    }
    std::vector<char> seen(bags, 0);
    auto build = [&](auto&& self, int t) -> int {
        seen[t] = 1;
        std::vector<int> tops;
        for (int c : adj[t]) {
            if (seen[c]) continue;
            int cur = self(self, c);
            auto cb = nb.td.nodes[cur].bag;
            for (int v : cb)
                if (!bagset[t].contains(v)) cur = nb.forget(cur, v);
            for (int v : bagset[t].to_vector())
                if (!bagset[c].contains(v)) cur = nb.introduce(cur, v);
            tops.push_back(cur);
        }
        if (tops.empty()) {
            int cur = nb.leaf();
            for (int v : bagset[t].to_vector()) cur = nb.introduce(cur, v);
            return cur;
        }
        int cur = tops[0];
        for (size_t i = 1; i < tops.size(); ++i) cur = nb.join(cur, tops[i]);
        return cur;
    };
    int cur = build(build, 0);
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw std::invalid_argument("tree decomposition edges do not form a tree");
    for (int v : bagset[0].to_vector()) cur = nb.forget(cur, v);
    nb.td.root = cur;
    return nb.td;
}

NiceTreeDecomposition forest_nice_decomposition(const Graph& forest) {
    const int n = forest.num_vertices();
    if (!is_forest(forest, forest.all_vertices())) throw std::invalid_argument("graph has a cycle");
    NiceBuilder nb;
    nb.td.num_vertices = n;
    nb.td.width = 1;
    std::vector<char> seen(n, 0);
    // Subtree of v with top bag {v}.
    auto build = [&](auto&& self, int v) -> int {
        seen[v] = 1;
        std::vector<int> tops;
        for (int c : forest.adjacency(v)) {
            if (seen[c]) continue;
            const int sub = self(self, c);
            tops.push_back(nb.forget(nb.introduce(sub, v), c));
        }
        if (tops.empty()) return nb.introduce(nb.leaf(), v);
        int cur = tops[0];
        for (size_t i = 1; i < tops.size(); ++i) cur = nb.join(cur, tops[i]);
        return cur;
    };
    int top = -1;
    for (int v = 0; v < n; ++v) {
        if (seen[v]) continue;
        const int comp = nb.forget(build(build, v), v);
        top = top < 0 ? comp : nb.join(top, comp);
    }
    nb.td.root = top < 0 ? nb.leaf() : top;
    return nb.td;
}

TdConversion convert_nice_td(const NiceTreeDecomposition& td) {
    const std::vector<int> order = check_shape(td);
    for (int t = 0; t < td.num_nodes(); ++t)
        if (td.nodes[t].kind == BagKind::Join && static_cast<int>(td.nodes[t].bag.size()) > td.width)
            throw std::invalid_argument(node_msg(t, "join bag has " + std::to_string(td.nodes[t].bag.size()) +
                                                        " vertices, more than the width " +
                                                        std::to_string(td.width)));
    TdConversion out;
    if (td.num_vertices == 0) {
        out.dec = BranchDecomposition::from_children(0, 0, {}, {});
        return out;
    }
    std::vector<std::vector<int>> children;
    std::vector<int> leaf_vertex;
    auto add = [&](std::vector<int> ch, int v, int src) {
        children.push_back(std::move(ch));
        leaf_vertex.push_back(v);
        out.source.push_back(src);
        return static_cast<int>(children.size()) - 1;
    };
    std::vector<int> result(td.num_nodes(), -1);
    for (int t : order) {
        const auto& nd = td.nodes[t];
        switch (nd.kind) {
            case BagKind::Leaf:
                break;
            case BagKind::Introduce:
                result[t] = result[nd.children[0]];
                break;
            case BagKind::Forget: {
                const int leaf = add({}, nd.vertex, -1);
                const int below = result[nd.children[0]];
                result[t] = below < 0 ? leaf : add({below, leaf}, BranchDecomposition::kNone, t);
                break;
            }
            case BagKind::Join: {
                const int a = result[nd.children[0]], b = result[nd.children[1]];
                result[t] = a < 0 ? b : b < 0 ? a : add({a, b}, BranchDecomposition::kNone, t);
                break;
            }
        }
    }
    out.dec = BranchDecomposition::from_children(td.num_vertices, result[td.root], std::move(children),
                                                 std::move(leaf_vertex));
    return out;
}

BranchDecomposition branchdec_from_nice_td(const NiceTreeDecomposition& td) {
    return convert_nice_td(td).dec;
}

std::vector<int> separator_violations(const Graph& g, const NiceTreeDecomposition& td,
                                      const TdConversion& conv) {
    std::vector<int> bad;
    for (int t = 0; t < conv.dec.num_nodes(); ++t) {
        if (conv.dec.is_leaf(t)) continue;
        const VertexSet sep = g.open_neighborhood(conv.dec.vertices_below(t));
        const auto& bag = td.nodes[conv.source[t]].bag;
        if (sep.size() > td.width || !sep.subset_of(VertexSet::of(g.num_vertices(), bag)))
            bad.push_back(t);
    }
    return bad;
}

}  // namespace fvsmim

namespace fvsmim {

TreeDecomposition TreeDecomposition::read(std::istream& in) {
    TreeDecomposition td;
    std::string line;
    int lineno = 0;
    bool header = false;
    std::vector<char> defined;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "td") {
            if (header) throw ParseError("duplicate header", lineno);
            if (tok.size() != 3) throw ParseError("header must be 'td <bags> <width>'", lineno);
            const int bags = parse_int(tok[1], lineno);
            if (bags < 0) throw ParseError("negative count in header", lineno);
            td.bags.resize(bags);
            defined.assign(bags, 0);
            header = true;
            continue;
        }
        if (!header) throw ParseError("missing 'td' header", lineno);
        auto bag_id = [&](const std::string& s) {
            const int id = parse_int(s, lineno);
            if (id < 0 || id >= static_cast<int>(td.bags.size())) throw ParseError("bag id out of range", lineno);
            return id;
        };
        if (tok[0] == "b") {
            if (tok.size() < 3 || tok[2] != ":") throw ParseError("bag line must be 'b <id> : <bag>'", lineno);
            const int id = bag_id(tok[1]);
            if (defined[id]) throw ParseError("bag defined twice", lineno);
            defined[id] = 1;
            for (size_t i = 3; i < tok.size(); ++i) td.bags[id].push_back(parse_int(tok[i], lineno));
        } else if (tok[0] == "e") {
            if (tok.size() != 3) throw ParseError("edge line must be 'e <i> <j>'", lineno);
            td.edges.emplace_back(bag_id(tok[1]), bag_id(tok[2]));
        } else {
            throw ParseError("unknown line type '" + tok[0] + "'", lineno);
        }
    }
    if (!header) throw ParseError("empty decomposition file", lineno);
    return td;
}

TreeDecomposition TreeDecomposition::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return read(in);
}

}  // namespace fvsmim
