#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "fvsmim/builders.hpp"

namespace fvsmim {

namespace {

class CwdParser {
public:
    explicit CwdParser(std::string_view text) : text_(text) {}

    CwdExpression run() {
        expr_.root = parse_expr();
        skip();
        if (pos_ != text_.size()) fail("trailing input");
        return std::move(expr_);
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("clique-width expression: " + what, static_cast<int>(pos_));
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    int label() {
        skip();
        const size_t start = pos_;
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1000000) fail("label too large");
            ++pos_;
        }
        if (pos_ == start) fail("expected a label");
        if (value < 1) {
            pos_ = start;
            fail("labels start at 1");
        }
        return static_cast<int>(value);
    }

    std::string name() {
        skip();
        const size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) fail("expected a vertex name");
        std::string s(text_.substr(start, pos_ - start));
        if (!names_.emplace(s, start).second) {
            pos_ = start;
            fail("vertex '" + s + "' created twice");
        }
        return s;
    }

    int parse_expr() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const size_t start = pos_;
        const char op = text_[pos_++];
        CwdExpression::Node nd;
        switch (op) {
            case 'v':
                expect('(');
                nd.op = CwdOp::Create;
                nd.a = label();
                expect(',');
                nd.name = name();
                expect(')');
                break;
            case 'u':
                expect('(');
                nd.op = CwdOp::Union;
                nd.left = parse_expr();
                expect(',');
                nd.right = parse_expr();
                expect(')');
                break;
            case 'j':
            case 'r':
                expect('(');
                nd.op = op == 'j' ? CwdOp::Join : CwdOp::Rename;
                nd.a = label();
                expect(',');
                nd.b = label();
                if (op == 'j' && nd.a == nd.b) {
                    pos_ = start;
                    fail("join needs two different labels");
                }
                expect(',');
                nd.left = parse_expr();
                expect(')');
                break;
            default:
                pos_ = start;
                fail(std::string("unknown operation '") + op + "'");
        }
        expr_.nodes.push_back(std::move(nd));
        return static_cast<int>(expr_.nodes.size()) - 1;
    }

    std::string_view text_;
    size_t pos_ = 0;
    CwdExpression expr_;
    std::unordered_map<std::string, size_t> names_;
};

// Children before parents; throws unless the nodes form a tree under root.
std::vector<int> expr_post_order(const CwdExpression& e) {
    const int nodes = static_cast<int>(e.nodes.size());
    if (e.root < 0 || e.root >= nodes) throw std::invalid_argument("expression root out of range");
    std::vector<char> seen(nodes, 0);
    std::vector<int> order;
    std::vector<std::pair<int, bool>> stack{{e.root, false}};
    while (!stack.empty()) {
        auto [t, done] = stack.back();
        stack.pop_back();
        if (done) {
            order.push_back(t);
            continue;
        }
        if (t < 0 || t >= nodes) throw std::invalid_argument("expression operand out of range");
        if (seen[t]) throw std::invalid_argument("expression node used twice");
        seen[t] = 1;
        const auto& nd = e.nodes[t];
        stack.emplace_back(t, true);
        switch (nd.op) {
            case CwdOp::Create:
                if (nd.a < 1) throw std::invalid_argument("labels start at 1");
                break;
            case CwdOp::Union:
                stack.emplace_back(nd.right, false);
                stack.emplace_back(nd.left, false);
                break;
            case CwdOp::Join:
            case CwdOp::Rename:
                if (nd.a < 1 || nd.b < 1) throw std::invalid_argument("labels start at 1");
                if (nd.op == CwdOp::Join && nd.a == nd.b)
                    throw std::invalid_argument("join needs two different labels");
                stack.emplace_back(nd.left, false);
                break;
        }
    }
    return order;
}

void print(const CwdExpression& e, int t, std::string& out) {
    const auto& nd = e.nodes[t];
    switch (nd.op) {
        case CwdOp::Create:
            out += "v(" + std::to_string(nd.a) + "," + nd.name + ")";
            return;
        case CwdOp::Union:
            out += "u(";
            print(e, nd.left, out);
            out += ",";
            print(e, nd.right, out);
            out += ")";
            return;
        case CwdOp::Join:
        case CwdOp::Rename:
            out += nd.op == CwdOp::Join ? "j(" : "r(";
            out += std::to_string(nd.a) + "," + std::to_string(nd.b) + ",";
            print(e, nd.left, out);
            out += ")";
            return;
    }
}

}  // namespace

CwdExpression CwdExpression::parse(std::string_view text) { return CwdParser(text).run(); }

CwdExpression CwdExpression::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string CwdExpression::to_string() const {
    std::string out;
    if (root >= 0) print(*this, root, out);
    return out;
}

int CwdExpression::num_labels() const {
    int w = 0;
    for (const auto& nd : nodes) w = std::max({w, nd.a, nd.b});
    return w;
}

CwdEvaluation evaluate(const CwdExpression& expr) {
    const std::vector<int> order = expr_post_order(expr);
    const int nodes = static_cast<int>(expr.nodes.size());
    CwdEvaluation ev;
    ev.vertex_of.assign(nodes, -1);
    // Left-to-right numbering of the created vertices.
    std::unordered_map<std::string, int> by_name;
    std::vector<int> stack{expr.root};
    while (!stack.empty()) {
        const int t = stack.back();
        stack.pop_back();
        const auto& nd = expr.nodes[t];
        if (nd.op == CwdOp::Create) {
            if (!by_name.emplace(nd.name, static_cast<int>(ev.names.size())).second)
                throw std::invalid_argument("vertex '" + nd.name + "' created twice");
            ev.vertex_of[t] = static_cast<int>(ev.names.size());
            ev.names.push_back(nd.name);
        } else {
            if (nd.op == CwdOp::Union) stack.push_back(nd.right);
            stack.push_back(nd.left);
        }
    }
    const int n = static_cast<int>(ev.names.size());
    ev.graph = Graph(n);
    ev.below.assign(nodes, VertexSet(n));
    ev.label_at.assign(nodes, std::vector<int>(n, 0));
    for (int t : order) {
        const auto& nd = expr.nodes[t];
        auto& lab = ev.label_at[t];
        switch (nd.op) {
            case CwdOp::Create:
                ev.below[t].insert(ev.vertex_of[t]);
                lab[ev.vertex_of[t]] = nd.a;
                break;
            case CwdOp::Union:
                ev.below[t] = ev.below[nd.left] | ev.below[nd.right];
                for (int v = 0; v < n; ++v)
                    lab[v] = std::max(ev.label_at[nd.left][v], ev.label_at[nd.right][v]);
                break;
            case CwdOp::Join: {
                ev.below[t] = ev.below[nd.left];
                lab = ev.label_at[nd.left];
                std::vector<int> li, lj;
                ev.below[t].for_each([&](int v) {
                    if (lab[v] == nd.a) li.push_back(v);
                    if (lab[v] == nd.b) lj.push_back(v);
                });
                for (int x : li)
                    for (int y : lj) ev.graph.add_edge(x, y);
                break;
            }
            case CwdOp::Rename:
                ev.below[t] = ev.below[nd.left];
                lab = ev.label_at[nd.left];
                for (int& l : lab)
                    if (l == nd.a) l = nd.b;
                break;
        }
    }
    return ev;
}

std::vector<int> label_class_violations(const CwdEvaluation& ev) {
    std::vector<int> bad;
    for (int t = 0; t < static_cast<int>(ev.below.size()); ++t) {
        const VertexSet outside = ev.below[t].complement();
        std::unordered_map<int, VertexSet> seen;
        bool ok = true;
        ev.below[t].for_each([&](int v) {
            const VertexSet nb = ev.graph.neighbors(v) & outside;
            auto [it, fresh] = seen.emplace(ev.label_at[t][v], nb);
            if (!fresh && it->second != nb) ok = false;
        });
        if (!ok) bad.push_back(t);
    }
    return bad;
}

CwdConversion branchdec_from_cwd(const CwdExpression& expr) {
    CwdEvaluation ev = evaluate(expr);
    const int n = ev.graph.num_vertices();
    std::vector<std::vector<int>> children;
    std::vector<int> leaf_vertex;
    std::vector<int> result(expr.nodes.size(), -1);
    for (int t : expr_post_order(expr)) {
        const auto& nd = expr.nodes[t];
        if (nd.op == CwdOp::Create) {
            children.emplace_back();
            leaf_vertex.push_back(ev.vertex_of[t]);
            result[t] = static_cast<int>(children.size()) - 1;
        } else if (nd.op == CwdOp::Union) {
            children.push_back({result[nd.left], result[nd.right]});
            leaf_vertex.push_back(BranchDecomposition::kNone);
            result[t] = static_cast<int>(children.size()) - 1;
        } else {
            result[t] = result[nd.left];
        }
    }
    CwdConversion out;
    out.dec = BranchDecomposition::from_children(n, result[expr.root], std::move(children),
                                                 std::move(leaf_vertex));
    out.graph = std::move(ev.graph);
    out.names = std::move(ev.names);
    return out;
}

}  // namespace fvsmim
