#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <hps/tree_decomposition.hpp>
#include <hps/treewidth.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hps;

namespace {

TreeDecomposition make_td(std::vector<std::vector<int>> bags, std::vector<int> parent) {
    TreeDecomposition td;
    for (std::size_t i = 0; i < bags.size(); ++i) td.add_node(bags[i], parent[i]);
    return td;
}

// Axioms evaluated literally from their statement.
bool axioms_hold(const LoopGraph& g, const TreeDecomposition& td) {
    for (int v = 0; v < g.n(); ++v) {
        bool in = false;
        for (const auto& b : td.bags) in = in || std::count(b.begin(), b.end(), v);
        if (!in) return false;
    }
    for (auto [u, v] : g.edges()) {
        bool in = false;
        for (const auto& b : td.bags) in = in || (std::count(b.begin(), b.end(), u) && std::count(b.begin(), b.end(), v));
        if (!in) return false;
    }
    for (int v = 0; v < g.n(); ++v) {
        // nodes holding v, connected via tree edges among themselves
        std::vector<int> holds;
        for (int t = 0; t < td.nodes(); ++t)
            if (std::count(td.bags[t].begin(), td.bags[t].end(), v)) holds.push_back(t);
        std::vector<int> reach{holds[0]};
        for (std::size_t i = 0; i < reach.size(); ++i)
            for (int t : holds)
                if (std::find(reach.begin(), reach.end(), t) == reach.end() && (td.parent[t] == reach[i] || td.parent[reach[i]] == t))
                    reach.push_back(t);
        if (reach.size() != holds.size()) return false;
    }
    return true;
}

}  // namespace

TEST(ValidateTd, Examples) {
    auto td = make_td({{0, 1}, {1, 2}}, {-1, 0});
    auto p3 = path_graph(3);
    EXPECT_TRUE(validate_decomposition(p3, td).ok());
    EXPECT_EQ(td.width(), 1);
    auto g = p3;
    g.add_edge(0, 2);
    auto rep = validate_decomposition(g, td);
    EXPECT_EQ(rep.axiom, TdAxiom::Edge);
    EXPECT_EQ(rep.u, 0);
    EXPECT_EQ(rep.v, 2);
    auto gap = make_td({{0, 1}, {2}, {1, 2}}, {-1, 0, 1});
    EXPECT_EQ(validate_decomposition(p3, gap).axiom, TdAxiom::Connected);
    auto miss = make_td({{0, 1}}, {-1});
    EXPECT_EQ(validate_decomposition(p3, miss).axiom, TdAxiom::Cover);
}

TEST(ValidateTd, RandomAgainstAxioms) {
    std::mt19937_64 rng(41);
    auto k4 = complete_graph(4);
    int accepted = 0;
    for (int it = 0; it < 400; ++it) {
        int nodes = std::uniform_int_distribution<int>(1, 5)(rng);
        TreeDecomposition td;
        for (int t = 0; t < nodes; ++t) {
            std::vector<int> bag;
            for (int v = 0; v < 4; ++v)
                if (std::bernoulli_distribution(0.6)(rng)) bag.push_back(v);
            td.add_node(bag, t == 0 ? -1 : std::uniform_int_distribution<int>(0, t - 1)(rng));
        }
        bool ok = validate_decomposition(k4, td).ok();
        EXPECT_EQ(ok, axioms_hold(k4, td));
        accepted += ok;
    }
    EXPECT_GT(accepted, 0);
}

TEST(Binarize, StarOfChildren) {
    auto td = make_td({{0, 1, 2, 3, 4}, {0, 1}, {1, 2}, {2, 3}, {3, 4}}, {-1, 0, 0, 0, 0});
    auto g = complete_graph(5);
    auto b = binarize(td);
    EXPECT_TRUE(validate_decomposition(g, b).ok());
    EXPECT_EQ(b.width(), td.width());
    for (const auto& ch : b.children()) EXPECT_LE(ch.size(), 2u);
    auto already = make_td({{0, 1}, {1, 2}}, {-1, 0});
    auto same = binarize(already);
    EXPECT_EQ(same.bags, already.bags);
    EXPECT_EQ(same.parent, already.parent);
}

TEST(Binarize, RandomWidthPreserved) {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 30; ++it) {
        auto inst = fixture::random_partial_ktree(rng, 14, 3, 0.7);
        ASSERT_TRUE(validate_decomposition(inst.graph, inst.td).ok());
        auto b = binarize(inst.td);
        EXPECT_TRUE(validate_decomposition(inst.graph, b).ok());
        EXPECT_EQ(b.width(), inst.td.width());
        for (const auto& ch : b.children()) EXPECT_LE(ch.size(), 2u);
    }
}

TEST(Context, PathDecomposition) {
    auto td = make_td({{0, 1}, {1, 2}, {2, 3}}, {-1, 0, 1});
    auto ctx = derive_context(td, 4, 1);
    EXPECT_EQ(ctx.y[2], std::vector<int>{3});
    EXPECT_EQ(ctx.y[1], (std::vector<int>{2, 3}));
    EXPECT_EQ(ctx.y[0], (std::vector<int>{0, 1, 2, 3}));
    EXPECT_EQ(ctx.fresh[1], std::vector<int>{2});
    EXPECT_EQ(ctx.p, (std::vector<int>{0, 1, 0, 1}));
    auto single = derive_context(trivial_decomposition(4), 4, 3);
    EXPECT_EQ(single.y[0], (std::vector<int>{0, 1, 2, 3}));
    EXPECT_EQ(single.p, (std::vector<int>{0, 1, 2, 3}));
    EXPECT_THROW(derive_context(trivial_decomposition(4), 4, 2), InputError);
}

TEST(Context, RandomInvariants) {
    std::mt19937_64 rng(47);
    for (int it = 0; it < 50; ++it) {
        auto inst = fixture::random_partial_ktree(rng, 12, 2, 0.8);
        auto td = binarize(inst.td);
        auto ctx = derive_context(td, 12, 2);
        for (int t = 0; t < td.nodes(); ++t) {
            std::set<int> seen;
            for (int m : td.bags[t]) EXPECT_TRUE(seen.insert(ctx.p[m]).second);
            // neighbours of Y_t outside Y_t lie in X_t \ Y_t
            for (int m : ctx.y[t])
                for (int w : inst.graph.neighbors(m))
                    if (!std::binary_search(ctx.y[t].begin(), ctx.y[t].end(), w)) {
                        EXPECT_TRUE(td.bag_contains(t, w));
                    }
        }
        // siblings' Y sets are disjoint; Y of a child is contained in Y of the parent
        auto ch = td.children();
        for (int t = 0; t < td.nodes(); ++t) {
            if (ch[t].size() == 2) {
                std::vector<int> both;
                std::set_intersection(ctx.y[ch[t][0]].begin(), ctx.y[ch[t][0]].end(), ctx.y[ch[t][1]].begin(), ctx.y[ch[t][1]].end(),
                                      std::back_inserter(both));
                EXPECT_TRUE(both.empty());
            }
            for (int c : ch[t]) EXPECT_TRUE(std::includes(ctx.y[t].begin(), ctx.y[t].end(), ctx.y[c].begin(), ctx.y[c].end()));
        }
    }
}

TEST(Treewidth, Examples) {
    EXPECT_EQ(exact_treewidth(star_graph(5)).width, 1);
    EXPECT_EQ(exact_treewidth(path_graph(6)).width, 1);
    EXPECT_EQ(exact_treewidth(complete_graph(5)).width, 4);
    EXPECT_EQ(exact_treewidth(grid_graph(3, 3)).width, 3);
    EXPECT_EQ(exact_treewidth(cycle_graph(7)).width, 2);
    EXPECT_EQ(exact_treewidth(LoopGraph(1)).width, 0);
    EXPECT_THROW(exact_treewidth(LoopGraph(15)), InputError);
    for (const auto& g : {grid_graph(3, 3), complete_graph(5), grid_graph(3, 4)}) {
        auto r = exact_treewidth(g);
        EXPECT_TRUE(validate_decomposition(g, r.witness).ok());
        EXPECT_EQ(r.witness.width(), r.width);
    }
}

TEST(Treewidth, AgreesWithPermutationSearch) {
    std::mt19937_64 rng(53);
    for (int it = 0; it < 150; ++it) {
        int n = std::uniform_int_distribution<int>(1, 7)(rng);
        auto g = oracle::random_graph(rng, n, std::uniform_real_distribution<double>(0.1, 0.8)(rng));
        auto r = exact_treewidth(g);
        EXPECT_EQ(r.width, oracle::treewidth_by_permutation(g));
        EXPECT_TRUE(validate_decomposition(g, r.witness).ok());
        EXPECT_EQ(r.witness.width(), r.width);
    }
}

TEST(TdIo, RoundTrip) {
    std::mt19937_64 rng(59);
    auto inst = fixture::random_partial_ktree(rng, 9, 2, 1.0);
    std::ostringstream out;
    write_decomposition(out, inst.td, 9);
    std::istringstream in(out.str());
    auto [td, n] = read_decomposition(in);
    EXPECT_EQ(n, 9);
    EXPECT_TRUE(validate_decomposition(inst.graph, td).ok());
    EXPECT_EQ(td.width(), inst.td.width());
    std::istringstream bad("td 2 2 3\nb 0 0 1\nb 1 1 2\nt 1 0\n");
    EXPECT_THROW(read_decomposition(bad), InputError);
}
