#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <hps/graph.hpp>
#include <hps/graph_io.hpp>
#include <hps/graph_ops.hpp>
#include <hps/product.hpp>

#include "oracles.hpp"

using namespace hps;

TEST(StrongProduct, KingGraph3x3) {
    auto g = strong_product(path_graph(3), path_graph(3));
    EXPECT_EQ(g.n(), 9);
    auto want = oracle::strong_product(oracle::adjacency(path_graph(3)), oracle::adjacency(path_graph(3)));
    EXPECT_EQ(oracle::edge_count(want), 20u);
    EXPECT_EQ(g.edge_count(), 20u);
    EXPECT_EQ(oracle::adjacency(g), want);
}

TEST(StrongProduct, P2TimesP2IsK4) { EXPECT_EQ(strong_product(path_graph(2), path_graph(2)), complete_graph(4)); }

TEST(StrongProduct, TrivialFactor) {
    auto c = cycle_graph(5);
    EXPECT_EQ(strong_product(LoopGraph(1), c), c);
    EXPECT_EQ(strong_product(c, LoopGraph(1)), c);
}

TEST(StrongProduct, RejectsLoops) { EXPECT_THROW(strong_product(reflexive_closure(path_graph(2)), path_graph(2)), InputError); }

TEST(StrongProduct, RandomAgainstDefinition) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 60; ++it) {
        int na = std::uniform_int_distribution<int>(1, 8)(rng), nb = std::uniform_int_distribution<int>(1, 8)(rng);
        auto a = oracle::random_graph(rng, na, 0.4), b = oracle::random_graph(rng, nb, 0.4);
        auto p = strong_product(a, b);
        EXPECT_EQ(p.n(), na * nb);
        EXPECT_EQ(oracle::adjacency(p), oracle::strong_product(oracle::adjacency(a), oracle::adjacency(b)));
        // coordinate swap is an isomorphism A⊠B -> B⊠A
        ProductEmbedding swap{b, a, {}};
        for (int u = 0; u < na; ++u)
            for (int x = 0; x < nb; ++x) swap.image.push_back({x, u});
        EXPECT_TRUE(check_induced_embedding(p, swap).accepted());
    }
}

TEST(Square, Examples) {
    auto p4 = square(path_graph(4));
    EXPECT_EQ(p4.edge_count(), 5u);
    EXPECT_TRUE(p4.adjacent(0, 2));
    EXPECT_TRUE(p4.adjacent(1, 3));
    EXPECT_FALSE(p4.adjacent(0, 3));
    EXPECT_EQ(square(complete_graph(3)), complete_graph(3));
    EXPECT_EQ(square(cycle_graph(6)).edge_count(), 12u);
}

TEST(Square, RandomAgainstDistances) {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 40; ++it) {
        auto g = oracle::random_graph(rng, 9, 0.25);
        auto d = oracle::all_pairs(oracle::adjacency(g));
        auto s = square(g);
        for (int u = 0; u < 9; ++u)
            for (int v = u + 1; v < 9; ++v) EXPECT_EQ(s.adjacent(u, v), d[u][v] == 1 || d[u][v] == 2);
        for (auto [u, v] : g.edges()) EXPECT_TRUE(s.adjacent(u, v));
    }
    auto k = complete_graph(4);
    EXPECT_EQ(square(square(star_graph(4))), square(star_graph(4)));
    EXPECT_EQ(square(k), k);
}

TEST(Reflexive, RoundTrip) {
    auto p3 = path_graph(3);
    auto r = reflexive_closure(p3);
    EXPECT_EQ(r.loop_count(), 3u);
    EXPECT_EQ(r.edge_count(), 2u);
    EXPECT_EQ(strip_loops(r), p3);
    EXPECT_EQ(strip_loops(p3), p3);
}

TEST(GreedySquareColouring, Path) {
    EXPECT_EQ(greedy_square_coloring(path_graph(5)), (std::vector<int>{1, 2, 3, 1, 2}));
    EXPECT_EQ(greedy_square_coloring(LoopGraph(1)), (std::vector<int>{1}));
}

TEST(GreedySquareColouring, ProperOnSquare) {
    auto check = [](const LoopGraph& q) {
        auto s = greedy_square_coloring(q);
        auto sq = square(q);
        for (auto [u, v] : sq.edges()) EXPECT_NE(s[u], s[v]);
        int d = q.max_degree();
        EXPECT_LE(colour_count(s), d * d + 1);
    };
    check(cycle_graph(5));
    EXPECT_LE(colour_count(greedy_square_coloring(cycle_graph(5))), 5);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 30; ++it) check(oracle::random_graph(rng, 12, 0.2));
    for (int n = 1; n < 30; ++n) EXPECT_LE(colour_count(greedy_square_coloring(path_graph(n))), 3);
}

TEST(InducedEmbedding, Examples) {
    auto p2 = path_graph(2);
    ProductEmbedding emb{p2, LoopGraph(1), {{0, 0}, {1, 0}}};
    EXPECT_TRUE(check_induced_embedding(p2, emb).accepted());
    emb.image = {{0, 0}, {0, 0}};
    EXPECT_EQ(check_induced_embedding(p2, emb).verdict, EmbeddingVerdict::NonInjective);
    emb.image = {{0, 0}, {2, 0}};
    EXPECT_EQ(check_induced_embedding(p2, emb).verdict, EmbeddingVerdict::OutOfRange);

    // P3 minus its middle edge, identity into P3 ⊠ K1
    auto g = LoopGraph::from_edges(3, {{0, 1}});
    ProductEmbedding id{path_graph(3), LoopGraph(1), {{0, 0}, {1, 0}, {2, 0}}};
    auto rep = check_induced_embedding(g, id);
    EXPECT_EQ(rep.verdict, EmbeddingVerdict::AdjacencyMismatch);
    EXPECT_EQ(rep.x, 1);
    EXPECT_EQ(rep.y, 2);
}

TEST(InducedEmbedding, AgreesWithExhaustiveSearch) {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 150; ++it) {
        int na = std::uniform_int_distribution<int>(1, 3)(rng), nb = std::uniform_int_distribution<int>(1, 3)(rng);
        auto a = oracle::random_graph(rng, na, 0.5), b = oracle::random_graph(rng, nb, 0.5);
        int h = na * nb;
        int n = std::uniform_int_distribution<int>(1, std::min(h, 5))(rng);
        auto g = oracle::random_graph(rng, n, 0.5);
        auto host = oracle::strong_product(oracle::adjacency(a), oracle::adjacency(b));
        auto gm = oracle::adjacency(g);
        if (auto found = oracle::find_induced_embedding(gm, host)) {
            ProductEmbedding emb{a, b, {}};
            for (int x : *found) emb.image.push_back({x / nb, x % nb});
            EXPECT_TRUE(check_induced_embedding(g, emb).accepted());
        }
        // random maps: checker verdict equals the direct predicate
        for (int t = 0; t < 10; ++t) {
            std::vector<int> map(n);
            for (int& x : map) x = std::uniform_int_distribution<int>(0, h - 1)(rng);
            ProductEmbedding emb{a, b, {}};
            for (int x : map) emb.image.push_back({x / nb, x % nb});
            EXPECT_EQ(check_induced_embedding(g, emb).accepted(), oracle::is_induced_map(gm, host, map));
        }
    }
}

TEST(Bfs, Levels) {
    auto t = bfs_tree(cycle_graph(4), 0);
    EXPECT_EQ(t.level, (std::vector<int>{0, 1, 2, 1}));
    EXPECT_EQ(bfs_tree(LoopGraph(1)).level, std::vector<int>{0});
    EXPECT_EQ(bfs_tree(path_graph(5), 0).level, (std::vector<int>{0, 1, 2, 3, 4}));
    EXPECT_THROW(bfs_tree(LoopGraph(2)), InputError);
    std::mt19937_64 rng(1);
    for (int it = 0; it < 20; ++it) {
        auto g = oracle::random_connected_graph(rng, 10, 0.15);
        auto d = oracle::all_pairs(oracle::adjacency(g));
        auto b = bfs_tree(g, 0);
        for (int v = 0; v < 10; ++v) {
            EXPECT_EQ(b.level[v], d[0][v]);
            if (v != 0) {
                EXPECT_TRUE(g.adjacent(v, b.parent[v]));
                EXPECT_EQ(b.level[b.parent[v]], b.level[v] - 1);
            }
        }
    }
}

TEST(Subdivide, Counts) {
    auto c = subdivide(complete_graph(3), 3);
    EXPECT_EQ(c.n(), 12);
    EXPECT_EQ(c.edge_count(), 12u);
    for (int v = 0; v < 12; ++v) EXPECT_EQ(c.degree(v), 2);
    EXPECT_TRUE(is_connected(c));
    EXPECT_EQ(subdivide(cycle_graph(5), 0), cycle_graph(5));
    EXPECT_EQ(subdivide(complete_graph(4), 3).n(), 22);
}

TEST(GraphIo, RoundTripAndErrors) {
    auto g = reflexive_closure(cycle_graph(4));
    std::istringstream in(graph_to_string(g));
    EXPECT_EQ(read_graph(in), g);
    std::istringstream bad("graph 3\ne 0 5\n");
    EXPECT_THROW(read_graph(bad), InputError);
    std::istringstream junk("graph 2\n# comment\nx 1\n");
    EXPECT_THROW(read_graph(junk), InputError);
    std::ostringstream dot;
    write_dot(dot, reflexive_closure(path_graph(2)));
    EXPECT_NE(dot.str().find("0 -- 0"), std::string::npos);
}
