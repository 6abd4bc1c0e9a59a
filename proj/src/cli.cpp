#include "fvsmim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fvsmim/builders.hpp"
#include "fvsmim/dp.hpp"
#include "fvsmim/generators.hpp"
#include "fvsmim/oracle.hpp"

namespace fvsmim {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Report {
public:
    template <class T>
    void add(const std::string& key, const T& value) {
        std::ostringstream ss;
        ss << std::setprecision(15) << value;
        rows_.emplace_back(key, ss.str());
    }
    void add_list(const std::string& key, const std::vector<int>& xs) {
        std::string s;
        for (int x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
        rows_.emplace_back(key, s.empty() ? "-" : s);
    }
    void print(std::ostream& out, bool pretty) const {
        size_t width = 0;
        for (const auto& [k, v] : rows_) width = std::max(width, k.size());
        for (const auto& [k, v] : rows_) {
            if (pretty)
                out << std::left << std::setw(static_cast<int>(width) + 2) << (k + ":") << v << '\n';
            else
                out << k << ' ' << v << '\n';
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

struct Common {
    bool pretty = false;
    int threads = 1;
};

Graph load_graph(const std::string& path) {
    try {
        return Graph::read_file(path);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

BranchDecomposition load_decomposition(const Graph& g, const std::string& path, bool identity) {
    BranchDecomposition dec;
    if (identity) {
        LinearOrder order(g.num_vertices());
        for (int v = 0; v < g.num_vertices(); ++v) order[v] = v;
        dec = from_linear_order(order);
    } else {
        if (path.empty()) throw InputError("give a decomposition with --dec or use --order");
        try {
            dec = BranchDecomposition::read_file(path, g.num_vertices());
        } catch (const ParseError& e) {
            throw InputError(path + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw MismatchError(path + ": " + e.what());
        }
    }
    try {
        check_matches(g, dec);
    } catch (const std::invalid_argument& e) {
        throw MismatchError(e.what());
    }
    return dec;
}

void write_order(const std::string& path, const LinearOrder& order) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << "order";
    for (int v : order) out << ' ' << v;
    out << '\n';
}

void write_names(const std::string& path, const std::vector<std::string>& names) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    for (size_t i = 0; i < names.size(); ++i) out << i << ' ' << names[i] << '\n';
}

template <class F>
void write_with(const std::string& path, F write, Report& rep) {
    try {
        write(path);
    } catch (const std::runtime_error& e) {
        throw InputError(e.what());
    }
    rep.add("wrote", path);
}

// Named graph, or a graph file.
Graph graph_arg(const std::string& name) {
    if (auto g = named_graph(name)) return *g;
    return load_graph(name);
}

// ---- solve / verify ----

struct SolveArgs {
    std::string graph;
    std::string dec;
    bool order = false;
    bool weighted = false;
    std::optional<int> param;
    bool verify = false;
};

int cmd_solve(const SolveArgs& a, const Common& c, bool verify_only, std::ostream& out) {
    const Graph g = load_graph(a.graph);
    const BranchDecomposition dec = load_decomposition(g, a.dec, a.order);
    SolveOptions opts;
    opts.width_override = a.param;
    opts.threads = c.threads;
    const int width = mim_width(g, dec);
    const auto start = std::chrono::steady_clock::now();
    Solution s;
    try {
        s = a.weighted ? solve_weighted_mif(g, dec, opts) : solve_mif(g, dec, opts);
    } catch (const std::logic_error& e) {
        throw MismatchError(std::string("solver failed: ") + e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    Report rep;
    int code = kExitOk;
    const double fvs_value = a.weighted ? g.weight_of(s.fvs) : s.fvs.size();
    if (!verify_only) {
        rep.add("n", g.num_vertices());
        rep.add("m", g.num_edges());
        rep.add(a.weighted ? "fvs_weight" : "fvs_size", fvs_value);
        rep.add(a.weighted ? "forest_weight" : "forest_size", s.objective);
        rep.add_list("fvs", s.fvs.to_vector());
        rep.add("mim_width", width);
        if (a.param) rep.add("param", *a.param);
        size_t keys = 0;
        for (const auto& st : s.stats) keys = std::max(keys, st.keys);
        rep.add("max_table_keys", keys);
        rep.add("time_ms", ms);
    }
    if (a.verify || verify_only) {
        try {
            const double truth = a.weighted ? oracle::min_weight_fvs(g).value
                                            : g.num_vertices() - oracle::max_induced_forest(g).value;
            const auto r = oracle::compare(a.weighted ? "fvs_weight" : "fvs_size", a.graph, truth,
                                           fvs_value, a.weighted ? 1e-9 * (1 + std::abs(truth)) : 0);
            rep.add("oracle_value", truth);
            rep.add("oracle_agree", r.agree ? 1 : 0);
            if (!r.agree) code = kExitOracle;
        } catch (const oracle::Refused& e) {
            if (verify_only) throw InputError(e.what());
            rep.add("oracle", "skipped");
        }
    }
    rep.print(out, c.pretty);
    return code;
}

// ---- mimw ----

int cmd_mimw(const SolveArgs& a, const Common& c, std::ostream& out) {
    const Graph g = load_graph(a.graph);
    const BranchDecomposition dec = load_decomposition(g, a.dec, a.order);
    const auto mims = cut_mim_values(g, dec);
    Report rep;
    int best = 0;
    for (int t : dec.post_order()) {
        if (t == dec.root()) continue;
        rep.add("cut", std::to_string(t) + " " + std::to_string(dec.vertices_below(t).size()) + " " +
                           std::to_string(mims[t]));
        best = std::max(best, mims[t]);
    }
    rep.add("mim_width", best);
    rep.print(out, c.pretty);
    return kExitOk;
}

// ---- convert ----

struct ConvertArgs {
    std::string graph;
    std::string td;
    bool plain = false;
    std::string cwd;
    int k = 1;
    std::string out;
};

int cmd_convert(const ConvertArgs& a, const Common& c, std::ostream& out) {
    if (a.k < 1) throw InputError("--k must be at least 1");
    if (a.td.empty() == a.cwd.empty()) throw InputError("give exactly one of --td and --cwd");
    Report rep;
    Graph base;
    BranchDecomposition dec;
    int bound = 0;
    std::vector<std::string> names;
    if (!a.td.empty()) {
        if (a.graph.empty()) throw InputError("--td needs --graph");
        base = load_graph(a.graph);
        NiceTreeDecomposition td;
        try {
            td = a.plain ? make_nice(base, TreeDecomposition::read_file(a.td))
                         : NiceTreeDecomposition::read_file(a.td, base.num_vertices());
            td.validate(base);
        } catch (const ParseError& e) {
            throw InputError(a.td + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw InputError(a.td + ": " + e.what());
        }
        TdConversion conv;
        try {
            conv = convert_nice_td(td);
        } catch (const std::invalid_argument& e) {
            throw InputError(a.td + ": " + e.what());
        }
        if (!separator_violations(base, td, conv).empty())
            throw MismatchError("a cut separator is not inside its bag");
        dec = std::move(conv.dec);
        bound = td.width;
    } else {
        CwdExpression expr;
        try {
            expr = CwdExpression::read_file(a.cwd);
        } catch (const ParseError& e) {
            throw InputError(a.cwd + ": " + e.what());
        }
        CwdConversion conv = branchdec_from_cwd(expr);
        base = std::move(conv.graph);
        dec = std::move(conv.dec);
        names = std::move(conv.names);
        bound = expr.num_labels();
    }
    const Graph power = power_graph(base, a.k);
    const int width = mim_width(power, dec);
    rep.add("n", power.num_vertices());
    rep.add("m", power.num_edges());
    rep.add("k", a.k);
    rep.add("bound", bound);
    rep.add("mim_width", width);
    rep.add("within_bound", width <= bound ? 1 : 0);
    if (!a.out.empty()) {
        write_with(a.out + ".graph", [&](const std::string& p) { power.write_file(p); }, rep);
        write_with(a.out + ".dec", [&](const std::string& p) { dec.write_file(p); }, rep);
        if (!names.empty())
            write_with(a.out + ".names", [&](const std::string& p) { write_names(p, names); }, rep);
    }
    rep.print(out, c.pretty);
    return width <= bound ? kExitOk : kExitMismatch;
}

// ---- gen ----

struct GenArgs {
    std::string kind;
    int n = 20;
    int m = 4;
    int k = 2;
    int w = 2;
    double p = 0.3;
    double length = 3.0;
    uint64_t seed = 1;
    std::string from;
    std::string tree;
    bool weighted = false;
    std::string out;
};

int cmd_gen(const GenArgs& a, const Common& c, std::ostream& out) {
    Rng rng(a.seed);
    Report rep;
    const std::string& pre = a.out;
    auto put_graph = [&](const std::string& path, const Graph& g) {
        write_with(path, [&](const std::string& p) { g.write_file(p); }, rep);
    };
    auto tree_arg = [&]() {
        if (a.tree.empty() || a.tree == "random") return random_tree(a.n, rng);
        return graph_arg(a.tree);
    };
    if (a.kind == "hamcyc") {
        const Graph src = a.from.empty() ? random_bipartite_subcubic(a.m, 0.5, rng) : graph_arg(a.from);
        HamCycInstance h;
        try {
            h = hamcyc_construct(src);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        const HamCycReport r = check_hamcyc(h);
        rep.add("n", h.graph.num_vertices());
        rep.add("m", h.graph.num_edges());
        rep.add("properties", r.all() ? 1 : 0);
        rep.add("order_width", r.order_width);
        put_graph(pre + ".graph", h.graph);
        write_with(pre + ".dec", [&](const std::string& p) { write_order(p, h.order); }, rep);
        write_with(pre + ".names", [&](const std::string& p) { write_names(p, h.names); }, rep);
    } else if (a.kind == "interval") {
        const IntervalInstance inst = interval_linear_order(random_intervals(a.n, a.length, rng));
        rep.add("n", inst.graph.num_vertices());
        rep.add("m", inst.graph.num_edges());
        put_graph(pre + ".graph", inst.graph);
        write_with(pre + ".dec", [&](const std::string& p) { write_order(p, inst.order); }, rep);
    } else if (a.kind == "power" || a.kind == "leafpower") {
        const Graph t = tree_arg();
        if (t.num_vertices() == 0 || t.num_edges() != t.num_vertices() - 1 || !is_connected(t))
            throw InputError("--tree is not a tree");
        if (a.k < 1) throw InputError("--k must be at least 1");
        Graph g;
        BranchDecomposition dec;
        if (a.kind == "power") {
            const NiceTreeDecomposition td = forest_nice_decomposition(t);
            g = power_graph(t, a.k);
            dec = branchdec_from_nice_td(td);
            write_with(pre + ".td", [&](const std::string& p) { td.write_file(p); }, rep);
            put_graph(pre + ".base.graph", t);
        } else {
            LeafPowerInstance lp = leaf_power_instance(t, a.k);
            g = std::move(lp.graph);
            dec = std::move(lp.dec);
        }
        rep.add("n", g.num_vertices());
        rep.add("m", g.num_edges());
        rep.add("mim_width", mim_width(g, dec));
        put_graph(pre + ".graph", g);
        write_with(pre + ".dec", [&](const std::string& p) { dec.write_file(p); }, rep);
    } else if (a.kind == "tw2") {
        if (a.n < 1) throw InputError("--n must be positive");
        const TwoTreeInstance inst = random_partial_two_tree(a.n, 0.8, rng);
        const NiceTreeDecomposition td = make_nice(inst.graph, inst.td, 3);
        rep.add("n", inst.graph.num_vertices());
        rep.add("m", inst.graph.num_edges());
        put_graph(pre + ".graph", inst.graph);
        write_with(pre + ".td", [&](const std::string& p) { td.write_file(p); }, rep);
    } else if (a.kind == "cwd") {
        if (a.n < 1 || a.w < 1) throw InputError("--n and --w must be positive");
        const CwdExpression e = random_cwd_expression(a.n, a.w, rng);
        rep.add("labels", e.num_labels());
        write_with(pre + ".cwd", [&](const std::string& p) {
            std::ofstream f(p);
            if (!f) throw std::runtime_error("cannot write " + p);
            f << e.to_string() << '\n';
        }, rep);
    } else if (a.kind == "random") {
        if (a.n < 0) throw InputError("--n must not be negative");
        Graph g = random_graph(a.n, a.p, rng);
        if (a.weighted) assign_random_weights(g, 0.0, 10.0, rng);
        const BranchDecomposition dec = random_decomposition(a.n, rng);
        rep.add("n", g.num_vertices());
        rep.add("m", g.num_edges());
        put_graph(pre + ".graph", g);
        write_with(pre + ".dec", [&](const std::string& p) { dec.write_file(p); }, rep);
    } else if (a.kind == "bipartite") {
        if (a.m < 2) throw InputError("--m must be at least 2");
        const Graph g = random_bipartite_subcubic(a.m, 0.5, rng);
        rep.add("n", g.num_vertices());
        rep.add("m", g.num_edges());
        put_graph(pre + ".graph", g);
    } else {
        throw InputError("unknown generator '" + a.kind + "'");
    }
    rep.print(out, c.pretty);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact feedback vertex set on branch decompositions of bounded mim-width", "fvsmim"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_flag("--pretty", common.pretty, "Aligned human-readable report");
    app.add_option("--threads", common.threads, "Worker threads per decomposition node")
        ->check(CLI::PositiveNumber);

    SolveArgs solve_args, verify_args, mimw_args;
    auto add_instance = [](CLI::App* sub, SolveArgs& a) {
        sub->add_option("graph", a.graph, "Graph file")->required();
        auto* dec = sub->add_option("--dec", a.dec, "Branch decomposition or order file");
        sub->add_flag("--order", a.order, "Use the order 0..n-1")->excludes(dec);
    };
    auto* solve = app.add_subcommand("solve", "Minimum (weighted) feedback vertex set");
    add_instance(solve, solve_args);
    solve->add_flag("--weighted", solve_args.weighted, "Minimise total weight");
    solve->add_option("--param", solve_args.param, "Use this bound instead of each cut's mim value");
    solve->add_flag("--verify", solve_args.verify, "Cross-check with brute force on small graphs");

    auto* verify = app.add_subcommand("verify", "Compare the solver with brute force");
    add_instance(verify, verify_args);
    verify->add_flag("--weighted", verify_args.weighted, "Minimise total weight");

    auto* mimw = app.add_subcommand("mimw", "Evaluate the mim-width of a decomposition");
    add_instance(mimw, mimw_args);

    ConvertArgs conv_args;
    auto* convert = app.add_subcommand("convert", "Decomposition of a graph power");
    convert->add_option("--graph", conv_args.graph, "Base graph (with --td)");
    convert->add_option("--td", conv_args.td, "Nice tree decomposition file");
    convert->add_flag("--plain", conv_args.plain, "The --td file is a plain tree decomposition");
    convert->add_option("--cwd", conv_args.cwd, "Clique-width expression file");
    convert->add_option("--k", conv_args.k, "Power");
    convert->add_option("--out", conv_args.out, "Write <out>.graph and <out>.dec");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate instances");
    gen->add_option("kind", gen_args.kind,
                    "hamcyc, interval, power, leafpower, tw2, cwd, random or bipartite")
        ->required();
    gen->add_option("--n", gen_args.n, "Vertices");
    gen->add_option("--m", gen_args.m, "Side size (hamcyc, bipartite)");
    gen->add_option("--k", gen_args.k, "Power");
    gen->add_option("--w", gen_args.w, "Labels (cwd)");
    gen->add_option("--p", gen_args.p, "Edge probability (random)");
    gen->add_option("--length", gen_args.length, "Largest interval length (interval)");
    gen->add_option("--seed", gen_args.seed, "Random seed");
    gen->add_option("--from", gen_args.from, "Source graph name or file (hamcyc)");
    gen->add_option("--tree", gen_args.tree, "Tree name, file or 'random' (power, leafpower)");
    gen->add_flag("--weighted", gen_args.weighted, "Random weights in [0,10] (random)");
    gen->add_option("--out", gen_args.out, "Output prefix")->required();

    std::vector<std::string> storage{"fvsmim"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_args, common, false, out);
        if (verify->parsed()) return cmd_solve(verify_args, common, true, out);
        if (mimw->parsed()) return cmd_mimw(mimw_args, common, out);
        if (convert->parsed()) return cmd_convert(conv_args, common, out);
        if (gen->parsed()) return cmd_gen(gen_args, common, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const MismatchError& e) {
        err << "mismatch: " << e.what() << '\n';
        return kExitMismatch;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace fvsmim
