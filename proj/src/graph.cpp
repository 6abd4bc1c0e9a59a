#include "fvsmim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace fvsmim {

Graph::Graph(int n) : n_(n), adj_set_(n, VertexSet(n)), adj_list_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
}

bool Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) + " " +
                                    std::to_string(v));
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (adj_set_[u].contains(v)) return false;
    adj_set_[u].insert(v);
    adj_set_[v].insert(u);
    adj_list_[u].insert(std::lower_bound(adj_list_[u].begin(), adj_list_[u].end(), v), v);
    adj_list_[v].insert(std::lower_bound(adj_list_[v].begin(), adj_list_[v].end(), u), u);
    ++m_;
    return true;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_list_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

VertexSet Graph::open_neighborhood(const VertexSet& s) const {
    VertexSet out(n_);
    s.for_each([&](int v) { out |= adj_set_[v]; });
    return out - s;
}

void Graph::set_weight(int v, double w) {
    if (weights_.empty()) {
        weights_.assign(n_, 1.0);
        weight_text_.assign(n_, std::string());
    }
    weights_[v] = w;
    weight_text_[v].clear();
}

void Graph::set_weight(int v, double w, std::string as_written) {
    set_weight(v, w);
    weight_text_[v] = std::move(as_written);
}

double Graph::weight_of(const VertexSet& s) const {
    double total = 0.0;
    s.for_each([&](int v) { total += weight(v); });
    return total;
}

Graph Graph::induced(const std::vector<int>& members) const {
    std::vector<int> pos(n_, -1);
    for (size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<int>(i);
    Graph out(static_cast<int>(members.size()));
    for (size_t i = 0; i < members.size(); ++i) {
        for (int w : adj_list_[members[i]])
            if (pos[w] > static_cast<int>(i)) out.add_edge(static_cast<int>(i), pos[w]);
        if (has_weights()) {
            out.set_weight(static_cast<int>(i), weights_[members[i]]);
            out.weight_text_[i] = weight_text_[members[i]];
        }
    }
    return out;
}

bool operator==(const Graph& a, const Graph& b) {
    if (a.n_ != b.n_ || a.m_ != b.m_ || a.adj_list_ != b.adj_list_) return false;
    for (int v = 0; v < a.n_; ++v)
        if (a.weight(v) != b.weight(v)) return false;
    return true;
}

namespace {

int parse_int(const std::string& tok, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("expected integer, got '" + tok + "'", line);
    return value;
}

double parse_double(const std::string& tok, int line) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("expected number, got '" + tok + "'", line);
    return value;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

}  // namespace

Graph Graph::read(std::istream& in) {
    std::string line;
    int lineno = 0;
    std::optional<Graph> g;
    int declared_edges = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (g) throw ParseError("duplicate header", lineno);
            if (tok.size() != 3) throw ParseError("header must be 'p <n> <m>'", lineno);
            int n = parse_int(tok[1], lineno);
            declared_edges = parse_int(tok[2], lineno);
            if (n < 0 || declared_edges < 0) throw ParseError("negative count in header", lineno);
            g.emplace(n);
            continue;
        }
        if (!g) throw ParseError("missing 'p' header", lineno);
        if (tok[0] == "e") {
            if (tok.size() != 3) throw ParseError("edge line must be 'e <u> <v>'", lineno);
            int u = parse_int(tok[1], lineno), v = parse_int(tok[2], lineno);
            if (u < 0 || v < 0 || u >= g->n_ || v >= g->n_)
                throw ParseError("edge endpoint out of range", lineno);
            if (u == v) throw ParseError("self-loop", lineno);
            if (!g->add_edge(u, v)) throw ParseError("parallel edge", lineno);
        } else if (tok[0] == "w") {
            if (tok.size() != 3) throw ParseError("weight line must be 'w <v> <weight>'", lineno);
            int v = parse_int(tok[1], lineno);
            if (v < 0 || v >= g->n_) throw ParseError("weight vertex out of range", lineno);
            g->set_weight(v, parse_double(tok[2], lineno), tok[2]);
        } else {
            throw ParseError("unknown line type '" + tok[0] + "'", lineno);
        }
    }
    if (!g) throw ParseError("empty graph file", lineno);
    if (g->m_ != declared_edges)
        throw ParseError("header declares " + std::to_string(declared_edges) + " edges, found " +
                             std::to_string(g->m_),
                         lineno);
    return std::move(*g);
}

Graph Graph::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return read(in);
}

void Graph::write(std::ostream& out) const {
    out << "p " << n_ << ' ' << m_ << '\n';
    for (auto [u, v] : edges()) out << "e " << u << ' ' << v << '\n';
    if (has_weights())
        for (int v = 0; v < n_; ++v)
            out << "w " << v << ' '
                << (weight_text_[v].empty() ? format_double(weights_[v]) : weight_text_[v]) << '\n';
}

void Graph::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write(out);
}

CrossingGraph::CrossingGraph(const Graph& host, VertexSet side_a, VertexSet side_b)
    : host_(&host), side_a_(std::move(side_a)), side_b_(std::move(side_b)) {
    if (side_a_.intersects(side_b_)) throw std::invalid_argument("crossing graph sides overlap");
}

VertexSet CrossingGraph::neighbors(int v) const {
    if (side_a_.contains(v)) return host_->neighbors(v) & side_b_;
    if (side_b_.contains(v)) return host_->neighbors(v) & side_a_;
    return VertexSet(host_->num_vertices());
}

VertexSet CrossingGraph::neighbors(const VertexSet& s) const {
    VertexSet out(host_->num_vertices());
    s.for_each([&](int v) { out |= neighbors(v); });
    return out - s;
}

std::vector<std::pair<int, int>> CrossingGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    side_a_.for_each([&](int a) {
        for (int b : host_->adjacency(a))
            if (side_b_.contains(b)) out.emplace_back(a, b);
    });
    return out;
}

int CrossingGraph::num_edges() const {
    int m = 0;
    side_a_.for_each([&](int a) { m += (host_->neighbors(a) & side_b_).size(); });
    return m;
}

CrossingGraph CrossingGraph::without(const VertexSet& s) const {
    return CrossingGraph(*host_, side_a_ - s, side_b_ - s);
}

VertexSet boundary(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.intersects(b)) throw std::invalid_argument("boundary: sets overlap");
    VertexSet out(g.num_vertices());
    a.for_each([&](int v) {
        if (g.neighbors(v).intersects(b)) out.insert(v);
    });
    return out;
}

CrossingGraph crossing_graph(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.intersects(b)) throw std::invalid_argument("crossing_graph: sets overlap");
    return CrossingGraph(g, boundary(g, a, b), boundary(g, b, a));
}

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
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

template <class NeighborFn>
bool acyclic(int n, const VertexSet& s, NeighborFn&& nbrs) {
    DisjointSets ds(n);
    bool ok = true;
    s.for_each([&](int u) {
        if (!ok) return;
        (nbrs(u) & s).for_each([&](int v) {
            if (ok && u < v && !ds.unite(u, v)) ok = false;
        });
    });
    return ok;
}

template <class NeighborFn>
std::vector<VertexSet> components_of(int n, const VertexSet& s, NeighborFn&& nbrs) {
    std::vector<VertexSet> out;
    VertexSet seen(n);
    s.for_each([&](int root) {
        if (seen.contains(root)) return;
        VertexSet comp(n);
        std::vector<int> stack{root};
        seen.insert(root);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.insert(u);
            (nbrs(u) & s).for_each([&](int v) {
                if (!seen.contains(v)) {
                    seen.insert(v);
                    stack.push_back(v);
                }
            });
        }
        out.push_back(std::move(comp));
    });
    return out;
}

}  // namespace

bool is_forest(const Graph& g, const VertexSet& s) {
    return acyclic(g.num_vertices(), s, [&](int v) -> const VertexSet& { return g.neighbors(v); });
}

bool is_forest(const CrossingGraph& h, const VertexSet& s) {
    return acyclic(h.host().num_vertices(), s, [&](int v) { return h.neighbors(v); });
}

std::vector<VertexSet> components(const Graph& g, const VertexSet& s) {
    return components_of(g.num_vertices(), s,
                         [&](int v) -> const VertexSet& { return g.neighbors(v); });
}

std::vector<VertexSet> components(const CrossingGraph& h, const VertexSet& s) {
    return components_of(h.host().num_vertices(), s, [&](int v) { return h.neighbors(v); });
}

bool is_connected(const Graph& g) {
    return g.num_vertices() <= 1 || components(g, g.all_vertices()).size() == 1;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    std::vector<int> dist(g.num_vertices(), -1);
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : g.adjacency(u))
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

Graph power_graph(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("power_graph: k must be positive");
    Graph out(g.num_vertices());
    for (int u = 0; u < g.num_vertices(); ++u) {
        auto dist = bfs_distances(g, u);
        for (int v = u + 1; v < g.num_vertices(); ++v)
            if (dist[v] >= 1 && dist[v] <= k) out.add_edge(u, v);
    }
    if (g.has_weights())
        for (int v = 0; v < g.num_vertices(); ++v) out.set_weight(v, g.weight(v));
    return out;
}

std::optional<std::vector<int>> two_coloring(const Graph& g) {
    std::vector<int> color(g.num_vertices(), -1);
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : g.adjacency(u)) {
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

}  // namespace fvsmim
