#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "fvsmim/cli.hpp"
#include "fvsmim/generators.hpp"
#include "fvsmim/oracle.hpp"

using namespace fvsmim;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
    std::multimap<std::string, std::string> keys;

    std::string get(const std::string& k) const {
        auto it = keys.find(k);
        return it == keys.end() ? "<missing>" : it->second;
    }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    std::istringstream lines(r.out);
    for (std::string line; std::getline(lines, line);) {
        const auto sp = line.find(' ');
        if (sp == std::string::npos)
            r.keys.emplace(line, "");
        else
            r.keys.emplace(line.substr(0, sp), line.substr(sp + 1));
    }
    return r;
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("fvsmim_cli_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(file(name)) << text;
        return file(name);
    }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("solve a five-cycle along the identity order") {
    TempDir dir;
    const auto g = dir.write("c5.graph", "p 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n");
    auto r = run({"solve", g, "--order", "--verify"});
    CHECK(r.code == kExitOk);
    CHECK(r.get("fvs_size") == "1");
    CHECK(r.get("forest_size") == "4");
    CHECK(r.get("mim_width") == "2");
    CHECK(r.get("oracle_agree") == "1");
    CHECK(r.keys.count("time_ms") == 1);
}

TEST_CASE("verification only appends lines") {
    TempDir dir;
    const auto g = dir.write("c5.graph", "p 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n");
    auto plain = run({"solve", g, "--order"});
    auto checked = run({"solve", g, "--order", "--verify"});
    for (const char* k : {"n", "m", "fvs_size", "forest_size", "fvs", "mim_width", "max_table_keys"})
        CHECK(plain.get(k) == checked.get(k));
    CHECK(plain.keys.count("oracle_agree") == 0);
}

TEST_CASE("weighted triangle") {
    TempDir dir;
    const auto g = dir.write("tri.graph", "p 3 3\ne 0 1\ne 1 2\ne 0 2\nw 0 5\n");
    const auto d = dir.write("tri.dec", "order 2 0 1\n");
    auto r = run({"solve", g, "--dec", d, "--weighted", "--verify"});
    CHECK(r.code == kExitOk);
    CHECK(r.get("fvs_weight") == "1");
    CHECK(r.get("forest_weight") == "6");
    CHECK(r.get("oracle_agree") == "1");
    auto v = run({"verify", g, "--dec", d, "--weighted"});
    CHECK(v.code == kExitOk);
    CHECK(v.get("oracle_agree") == "1");
}

TEST_CASE("generated interval graph against the oracle") {
    TempDir dir;
    const auto pre = dir.file("iv");
    REQUIRE(run({"gen", "interval", "--n", "30", "--seed", "3", "--out", pre}).code == kExitOk);
    auto r = run({"solve", pre + ".graph", "--dec", pre + ".dec"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.get("mim_width") == "1");
    // compare on a 16-vertex induced subgraph with its induced order
    const Graph g = Graph::read_file(pre + ".graph");
    std::istringstream order_text(slurp(pre + ".dec"));
    std::string word;
    order_text >> word;
    std::vector<int> order;
    for (int v; order_text >> v;) order.push_back(v);
    std::vector<int> keep(order.begin(), order.begin() + 16);
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    Graph sub = g.induced(sorted);
    sub.write_file(dir.file("sub.graph"));
    std::ofstream sub_order(dir.file("sub.dec"));
    sub_order << "order";
    for (int v : keep) sub_order << ' ' << (std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
    sub_order << '\n';
    sub_order.close();
    auto s = run({"solve", dir.file("sub.graph"), "--dec", dir.file("sub.dec"), "--verify"});
    CHECK(s.code == kExitOk);
    CHECK(s.get("oracle_agree") == "1");
    CHECK(s.get("fvs_size") == std::to_string(16 - static_cast<int>(oracle::max_induced_forest(sub).value)));
}

TEST_CASE("mim-width reports") {
    TempDir dir;
    const auto g = dir.write("e.graph", "p 2 1\ne 0 1\n");
    auto r = run({"mimw", g, "--order"});
    CHECK(r.code == kExitOk);
    CHECK(r.get("mim_width") == "1");
    CHECK(r.keys.count("cut") == 2);

    const auto pre = dir.file("h");
    REQUIRE(run({"gen", "hamcyc", "--from", "C4", "--out", pre}).code == kExitOk);
    auto h = run({"mimw", pre + ".graph", "--dec", pre + ".dec"});
    CHECK(h.get("mim_width") == "1");
}

TEST_CASE("hamiltonian-cycle generator") {
    TempDir dir;
    const auto pre = dir.file("h");
    auto r = run({"gen", "hamcyc", "--from", "C4", "--out", pre});
    CHECK(r.code == kExitOk);
    CHECK(r.get("n") == "8");
    CHECK(r.get("properties") == "1");
    CHECK(r.get("order_width") == "1");
    CHECK(Graph::read_file(pre + ".graph").num_vertices() == 8);
    CHECK(slurp(pre + ".names").find("A2_2") != std::string::npos);
    CHECK(run({"gen", "hamcyc", "--from", "C5", "--out", pre}).code == kExitInput);
}

TEST_CASE("generators are deterministic") {
    TempDir dir;
    for (const std::string kind : {"interval", "random", "tw2", "cwd", "bipartite", "leafpower"}) {
        const auto a = dir.file(kind + "_a"), b = dir.file(kind + "_b");
        REQUIRE(run({"gen", kind, "--n", "20", "--seed", "7", "--out", a}).code == kExitOk);
        REQUIRE(run({"gen", kind, "--n", "20", "--seed", "7", "--out", b}).code == kExitOk);
        for (const char* ext : {".graph", ".dec", ".td", ".cwd"}) {
            if (!fs::exists(a + ext)) continue;
            CHECK(slurp(a + ext) == slurp(b + ext));
            CHECK(!slurp(a + ext).empty());
        }
    }
}

TEST_CASE("power generator output parses back") {
    TempDir dir;
    const auto pre = dir.file("pw");
    auto r = run({"gen", "power", "--tree", "path6", "--k", "3", "--out", pre});
    REQUIRE(r.code == kExitOk);
    CHECK(r.get("mim_width") == "1");
    const Graph g = Graph::read_file(pre + ".graph");
    CHECK(g == power_graph(path_graph(6), 3));
    const auto dec = BranchDecomposition::read_file(pre + ".dec", 6);
    CHECK(mim_width(g, dec) == 1);
    auto s = run({"solve", pre + ".graph", "--dec", pre + ".dec", "--verify"});
    CHECK(s.code == kExitOk);
    CHECK(s.get("oracle_agree") == "1");

    auto c = run({"convert", "--graph", pre + ".base.graph", "--td", pre + ".td", "--k", "3",
                  "--out", dir.file("conv")});
    CHECK(c.code == kExitOk);
    CHECK(c.get("within_bound") == "1");
    CHECK(Graph::read_file(dir.file("conv.graph")) == g);
}

TEST_CASE("convert from a tree decomposition and an expression") {
    TempDir dir;
    const auto pre = dir.file("t");
    REQUIRE(run({"gen", "tw2", "--n", "12", "--seed", "5", "--out", pre}).code == kExitOk);
    for (const char* k : {"1", "2", "3"}) {
        auto r = run({"convert", "--graph", pre + ".graph", "--td", pre + ".td", "--k", k});
        CHECK(r.code == kExitOk);
        CHECK(r.get("within_bound") == "1");
        CHECK(r.get("bound") == "3");
    }
    const auto e = dir.write("edge.cwd", "j(1,2,u(v(1,a),v(2,b)))\n");
    auto r = run({"convert", "--cwd", e, "--k", "1", "--out", dir.file("edge")});
    CHECK(r.code == kExitOk);
    CHECK(r.get("mim_width") == "1");
    CHECK(slurp(dir.file("edge.names")) == "0 a\n1 b\n");
    const auto plain = dir.write("p3.td", "td 2 1\nb 0 : 0 1\nb 1 : 1 2\ne 0 1\n");
    const auto p3 = dir.write("p3.graph", "p 3 2\ne 0 1\ne 1 2\n");
    auto q = run({"convert", "--graph", p3, "--td", plain, "--plain", "--k", "2"});
    CHECK(q.code == kExitOk);
    CHECK(q.get("m") == "3");
}

TEST_CASE("exit codes") {
    TempDir dir;
    const auto g = dir.write("p3.graph", "p 3 2\ne 0 1\ne 1 2\n");
    CHECK(run({"solve", dir.file("missing.graph"), "--order"}).code == kExitInput);
    CHECK(run({"solve", dir.write("bad.graph", "p 2 1\ne 0 5\n"), "--order"}).code == kExitInput);
    CHECK(run({"solve", g, "--dec", dir.write("short.dec", "order 0 1\n")}).code == kExitMismatch);
    CHECK(run({"solve", g, "--dec", dir.write("junk.dec", "bd x\n")}).code == kExitInput);
    CHECK(run({"gen", "nonsense", "--out", dir.file("x")}).code == kExitInput);
    CHECK(run({"convert", "--cwd", dir.write("bad.cwd", "j(1,2,u(v(1,a)")}).code == kExitInput);
    CHECK(run({"frobnicate"}).code == kExitInput);
    CHECK(run({}).code == kExitInput);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("pretty output and global options") {
    TempDir dir;
    const auto g = dir.write("p3.graph", "p 3 2\ne 0 1\ne 1 2\n");
    auto r = run({"solve", g, "--order", "--pretty", "--threads", "2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("fvs_size:") != std::string::npos);
    auto s = run({"--pretty", "mimw", g, "--order"});
    CHECK(s.out.find("mim_width:") != std::string::npos);
}
