#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <hps/expression_io.hpp>
#include <hps/graph_io.hpp>
#include <hps/induced_product.hpp>
#include <hps/tree_decomposition.hpp>

#include "fixtures.hpp"

using namespace hps;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

class Cli : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("hps_cli_") + info->name());
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    Result run(const std::string& args, const std::string& env = "") const {
        std::string cmd = "cd '" + dir.string() + "' && " + env + " '" HPS_CLI_PATH "' " + args + " 2>/dev/null";
        Result r;
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) return r;
        char buf[4096];
        while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
        int status = pclose(pipe);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        return r;
    }

    void write(const std::string& name, const auto& writer) const {
        std::ofstream o(path(name));
        writer(o);
    }

    std::string slurp(const std::string& name) const {
        std::ifstream in(path(name));
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_instance(const fixture::ProductInstance& inst) const {
        write("g.psub", [&](std::ostream& o) { write_product_subgraph(o, inst.sub); });
        write("q.graph", [&](std::ostream& o) { write_graph(o, inst.q); });
        write("m.graph", [&](std::ostream& o) { write_graph(o, inst.m); });
        write("m.td", [&](std::ostream& o) { write_decomposition(o, inst.td, inst.m.n()); });
    }
};

TEST_F(Cli, GridExpressionEvaluatesToGrid) {
    ASSERT_EQ(run("grid-expr 3 4 -o grid34.expr").code, 0);
    EXPECT_TRUE(fs::exists(path("grid34.param.graph")));
    auto r = run("eval grid34.expr -o grid34.graph");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("vertices 12"), std::string::npos);
    EXPECT_EQ(read_graph_file(path("grid34.graph")), grid_graph(3, 4));
}

TEST_F(Cli, PlanarBuildPassesVerifyNice) {
    ASSERT_EQ(run("gen-planar --seed 11 -n 60 -o t.eg").code, 0);
    auto built = run("planar-build t.eg --out t");
    ASSERT_EQ(built.code, 0);
    for (auto ext : {".tri.eg", ".g.graph", ".left.graph", ".right.graph", ".emb", ".input.emb", ".nice", ".td"})
        EXPECT_TRUE(fs::exists(path(std::string("t") + ext))) << ext;
    auto v = run("verify-nice t");
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out.rfind("accept", 0), 0u) << v.out;
    EXPECT_EQ(run("verify-embedding t.g.graph t.left.graph t.right.graph t.emb").code, 0);
    EXPECT_EQ(run("verify-td t.right.graph t.td").code, 0);
}

TEST_F(Cli, TamperedNiceStructureIsRejected) {
    ASSERT_EQ(run("gen-planar --seed 5 -n 30 -o t.eg").code, 0);
    ASSERT_EQ(run("planar-build t.eg --out t").code, 0);
    // remove factor vertex 0 from every bag
    std::istringstream in(slurp("t.td"));
    std::ostringstream out;
    for (std::string line; std::getline(in, line);) {
        std::istringstream ls(line);
        std::vector<std::string> words;
        for (std::string w; ls >> w;) words.push_back(w);
        out << words[0] << " " << words[1];
        for (std::size_t i = 2; i < words.size(); ++i)
            if (words[0] != "b" || words[i] != "0") out << " " << words[i];
        out << "\n";
    }
    write("t.td", [&](std::ostream& o) { o << out.str(); });
    auto v = run("verify-nice t");
    EXPECT_EQ(v.code, 1);
    EXPECT_EQ(v.out.rfind("reject", 0), 0u) << v.out;
}

TEST_F(Cli, TamperedEmbeddingGivesWitness) {
    ASSERT_EQ(run("grid-expr 2 3 -o g.expr").code, 0);
    ASSERT_EQ(run("eval g.expr -o g.graph").code, 0);
    ASSERT_EQ(run("star-subdiv g.graph --out s").code, 0);
    EXPECT_EQ(run("verify-embedding s.g.graph s.left.graph s.right.graph s.emb").code, 0);
    auto lines = slurp("s.emb");
    auto first = lines.find("emb 1 ");
    ASSERT_NE(first, std::string::npos);
    auto end = lines.find('\n', first);
    lines.replace(first, end - first, "emb 1 1 0");
    write("s.emb", [&](std::ostream& o) { o << lines; });
    auto r = run("verify-embedding s.g.graph s.left.graph s.right.graph s.emb");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "reject non-injective 0 1\n");
}

TEST_F(Cli, FromProductCertificates) {
    std::mt19937_64 rng(17);
    for (int shape = 0; shape < 3; ++shape) {
        auto inst = fixture::random_product_instance(rng, shape);
        write_instance(inst);
        auto r = run("from-product g.psub --left q.graph --right m.graph --td m.td --out c");
        ASSERT_EQ(r.code, 0);
        EXPECT_NE(r.out.find("cw_general "), std::string::npos);
        EXPECT_EQ(run("verify-embedding c.g.graph c.left.graph c.right.graph c.emb").code, 0);
        EXPECT_EQ(run("verify-td c.right.graph c.td2").code, 0);
        ASSERT_EQ(run("eval c.expr -o value.graph").code, 0);
        EXPECT_EQ(read_graph_file(path("value.graph")).n(), inst.sub.graph.n());
    }
}

TEST_F(Cli, RefinedBoundsOnRequest) {
    std::mt19937_64 rng(3);
    auto inst = fixture::random_product_instance(rng, 0);
    write_instance(inst);
    auto r = run("from-product g.psub --left q.graph --right m.graph --td m.td --out c --refined-d 3");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find(" d 3\n"), std::string::npos) << r.out;
    auto p = run("path-case g.psub --left q.graph --right m.graph --td m.td --out p");
    ASSERT_EQ(p.code, 0);
    EXPECT_NE(p.out.find("delta 2 "), std::string::npos) << p.out;
    EXPECT_EQ(run("verify-embedding p.g.graph p.left.graph p.right.graph p.emb").code, 0);
}

TEST_F(Cli, ContractionSequenceFromGridExpression) {
    ASSERT_EQ(run("grid-expr 4 4 -o g.expr").code, 0);
    auto t = run("tww-from-expr g.expr -o g.seq");
    ASSERT_EQ(t.code, 0);
    EXPECT_NE(t.out.find("bound 23"), std::string::npos);
    ASSERT_EQ(run("eval g.expr -o g.graph").code, 0);
    auto v = run("verify-contractions g.graph g.seq --max-red 23");
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out.rfind("maxred ", 0), 0u);
    EXPECT_EQ(run("verify-contractions g.graph g.seq --max-red 0").code, 1);
}

TEST_F(Cli, ExactTreewidthAndCap) {
    write("c5.graph", [](std::ostream& o) { write_graph(o, cycle_graph(5)); });
    auto r = run("tw-exact c5.graph -o c5.td");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "treewidth 2\n");
    EXPECT_EQ(run("verify-td c5.graph c5.td").code, 0);
    EXPECT_EQ(run("tw-exact c5.graph --cap 4").code, 2);
    EXPECT_EQ(run("tw-exact c5.graph", "HPS_TW_CAP=4").code, 2);
    EXPECT_EQ(run("tw-exact c5.graph --cap 5", "HPS_TW_CAP=4").code, 0);
}

TEST_F(Cli, ExportFormats) {
    write("p.graph", [](std::ostream& o) { write_graph(o, path_graph(3)); });
    auto dot = run("export-dot p.graph");
    ASSERT_EQ(dot.code, 0);
    EXPECT_EQ(dot.out.rfind("graph ", 0), 0u);
    EXPECT_NE(dot.out.find("--"), std::string::npos);
    auto text = run("export-dot p.graph --format text");
    ASSERT_EQ(text.code, 0);
    std::istringstream in(text.out);
    EXPECT_EQ(read_graph(in), path_graph(3));
    EXPECT_EQ(run("export-dot p.graph --format xml").code, 2);
}

TEST_F(Cli, GenPlanarIsDeterministic) {
    auto a = run("gen-planar --seed 42 -n 25");
    auto b = run("gen-planar --seed 42 -n 25");
    auto c = run("gen-planar --seed 43 -n 25");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
}

TEST_F(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(run("no-such-command").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("eval missing.expr").code, 2);
    write("bad.graph", [](std::ostream& o) { o << "graph 2\ne 0 5\n"; });
    EXPECT_EQ(run("export-dot bad.graph").code, 2);
    EXPECT_EQ(run("grid-expr 0 3 -o x.expr").code, 2);
    EXPECT_EQ(run("verify-nice absent").code, 2);
}

}  // namespace
