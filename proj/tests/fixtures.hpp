#pragma once
// Random instance generators and a naive reference evaluator for expressions.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <hps/expression.hpp>
#include <hps/induced_product.hpp>
#include <hps/tree_decomposition.hpp>

namespace fixture {

/// Random well-formed postfix expression with `vertices` creates.
inline std::vector<hps::ExprOp> random_ops(std::mt19937_64& rng, int vertices, int ell, int param_n, double op_rate = 0.8) {
    std::vector<hps::ExprOp> ops;
    std::uniform_int_distribution<int> colour(1, ell), pv(0, std::max(0, param_n - 1));
    std::uniform_real_distribution<double> unit(0, 1);
    auto decorate = [&] {
        while (ell >= 2 && unit(rng) < op_rate) {
            int i = colour(rng), j = colour(rng);
            if (i == j) continue;
            ops.push_back(unit(rng) < 0.6 ? hps::ExprOp::add_edges(i, j) : hps::ExprOp::recolor(i, j));
        }
    };
    auto rec = [&](auto&& self, int n) -> void {
        if (n == 1) {
            ops.push_back(hps::ExprOp::create(colour(rng), pv(rng)));
            return;
        }
        int left = std::uniform_int_distribution<int>(1, n - 1)(rng);
        self(self, left);
        decorate();
        self(self, n - left);
        decorate();
        ops.push_back(hps::ExprOp::join());
        decorate();
    };
    if (vertices > 0) rec(rec, vertices);
    return ops;
}

/// Straight-line evaluator: every frame is a plain vertex list, AddEdges scans all pairs.
inline hps::LabeledGraph naive_evaluate(const std::vector<hps::ExprOp>& ops, const hps::LoopGraph* param) {
    std::vector<std::vector<int>> frames;
    std::vector<int> colour, pvertex;
    std::set<hps::Edge> edges;
    for (const auto& op : ops) {
        if (op.kind == hps::OpKind::Create) {
            frames.push_back({static_cast<int>(colour.size())});
            colour.push_back(op.a);
            pvertex.push_back(param ? op.b : 0);
        } else if (op.kind == hps::OpKind::Union) {
            auto r = frames.back();
            frames.pop_back();
            frames.back().insert(frames.back().end(), r.begin(), r.end());
        } else if (op.kind == hps::OpKind::AddEdges) {
            for (int x : frames.back())
                for (int y : frames.back()) {
                    if (colour[x] != op.a || colour[y] != op.b) continue;
                    bool ok = param ? param->adjacent(pvertex[x], pvertex[y]) : true;
                    if (ok && x != y) edges.insert({std::min(x, y), std::max(x, y)});
                }
        } else {
            for (int x : frames.back())
                if (colour[x] == op.a) colour[x] = op.b;
        }
    }
    hps::LabeledGraph out;
    out.graph = hps::LoopGraph::from_edges(static_cast<int>(colour.size()), std::vector<hps::Edge>(edges.begin(), edges.end()));
    for (std::size_t x = 0; x < colour.size(); ++x) out.labels.push_back({colour[x], pvertex[x]});
    return out;
}

struct PartialKTree {
    hps::LoopGraph graph;
    hps::TreeDecomposition td;
};

/// Random k-tree on n vertices (n >= 1) with each edge kept with probability `keep`,
/// together with the decomposition its construction yields.
inline PartialKTree random_partial_ktree(std::mt19937_64& rng, int n, int k, double keep) {
    PartialKTree out;
    std::vector<hps::Edge> edges;
    int base = std::min(n, k + 1);
    std::vector<int> first;
    for (int v = 0; v < base; ++v) {
        first.push_back(v);
        for (int w = 0; w < v; ++w) edges.emplace_back(w, v);
    }
    out.td.add_node(first, -1);
    for (int v = base; v < n; ++v) {
        int t = std::uniform_int_distribution<int>(0, out.td.nodes() - 1)(rng);
        auto bag = out.td.bags[t];
        if (static_cast<int>(bag.size()) > k) bag.erase(bag.begin() + std::uniform_int_distribution<int>(0, static_cast<int>(bag.size()) - 1)(rng));
        for (int w : bag) edges.emplace_back(w, v);
        bag.push_back(v);
        out.td.add_node(bag, t);
    }
    std::bernoulli_distribution coin(keep);
    std::vector<hps::Edge> kept;
    for (auto e : edges)
        if (coin(rng)) kept.push_back(e);
    out.graph = hps::LoopGraph::from_edges(n, kept);
    return out;
}

struct ProductInstance {
    hps::LoopGraph q;
    hps::LoopGraph m;
    hps::TreeDecomposition td;
    hps::ProductSubgraph sub;
};

/// Random G inside q ⊠ m: each position kept with probability `occupy`, each product edge
/// between kept positions with probability `keep`.
inline hps::ProductSubgraph random_product_subgraph(std::mt19937_64& rng, const hps::LoopGraph& q, const hps::LoopGraph& m, double occupy, double keep) {
    std::bernoulli_distribution take(occupy), edge(keep);
    hps::ProductSubgraph out;
    for (int a = 0; a < q.n(); ++a)
        for (int b = 0; b < m.n(); ++b)
            if (take(rng)) out.position.push_back({a, b});
    std::shuffle(out.position.begin(), out.position.end(), rng);
    const int n = static_cast<int>(out.position.size());
    out.graph = hps::LoopGraph(n);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (hps::product_adjacent(q, m, out.position[x], out.position[y]) && edge(rng)) out.graph.add_edge(x, y);
    return out;
}

/// Left factor a path, a cycle or the 3x3 grid (max degree 2..4); right factor a random
/// partial 2-tree on at most 8 vertices with its construction decomposition.
inline ProductInstance random_product_instance(std::mt19937_64& rng, int shape) {
    ProductInstance inst;
    std::uniform_int_distribution<int> len(3, 6);
    if (shape == 0) inst.q = hps::path_graph(len(rng));
    else if (shape == 1) inst.q = hps::cycle_graph(len(rng));
    else inst.q = hps::grid_graph(3, 3);
    auto mk = random_partial_ktree(rng, std::uniform_int_distribution<int>(1, 8)(rng), 2, 0.7);
    inst.m = mk.graph;
    inst.td = mk.td;
    inst.sub = random_product_subgraph(rng, inst.q, inst.m, 0.75, 0.6);
    return inst;
}

}  // namespace fixture
