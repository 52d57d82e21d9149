#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "graph.hpp"

namespace hps {

inline LoopGraph reflexive_closure(const LoopGraph& g) {
    LoopGraph out = g;
    for (int v = 0; v < g.n(); ++v) out.set_loop(v);
    return out;
}

inline LoopGraph strip_loops(const LoopGraph& g) {
    LoopGraph out = g;
    for (int v = 0; v < g.n(); ++v) out.set_loop(v, false);
    return out;
}

/// Vertices at distance 1 or 2 become adjacent.
inline LoopGraph square(const LoopGraph& g) {
    if (!g.loop_free()) throw InputError("square expects a loop-free graph");
    std::vector<Edge> e;
    for (int u = 0; u < g.n(); ++u) {
        for (int v : g.neighbors(u)) {
            if (u < v) e.emplace_back(u, v);
            for (int w : g.neighbors(v))
                if (u < w) e.emplace_back(u, w);
        }
    }
    return LoopGraph::from_edges(g.n(), std::move(e));
}

struct BfsStructure {
    static constexpr int kNoParent = -1;
    int root = 0;
    std::vector<int> parent;
    std::vector<int> level;
    std::vector<int> order;  // visiting order
};

inline BfsStructure bfs_tree(const LoopGraph& g, int root = 0) {
    g.check_vertex(root);
    BfsStructure t;
    t.root = root;
    t.parent.assign(static_cast<std::size_t>(g.n()), BfsStructure::kNoParent);
    t.level.assign(static_cast<std::size_t>(g.n()), -1);
    t.level[root] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        t.order.push_back(v);
        for (int w : g.neighbors(v))
            if (t.level[w] < 0) {
                t.level[w] = t.level[v] + 1;
                t.parent[w] = v;
                q.push(w);
            }
    }
    if (static_cast<int>(t.order.size()) != g.n()) throw InputError("bfs_tree: graph is disconnected");
    return t;
}

/// Proper colouring of square(q) with colours 1..d, greedy in BFS order from vertex 0
/// (each component restarted from its smallest vertex).
inline std::vector<int> greedy_square_coloring(const LoopGraph& q) {
    const int n = q.n();
    std::vector<int> colour(static_cast<std::size_t>(n), 0);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> order;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::queue<int> bq;
        bq.push(s);
        seen[s] = 1;
        while (!bq.empty()) {
            int v = bq.front();
            bq.pop();
            order.push_back(v);
            for (int w : q.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    bq.push(w);
                }
        }
    }
    std::vector<int> stamp(static_cast<std::size_t>(n) + 2, -1);
    for (int v : order) {
        auto block = [&](int w) {
            if (w != v && colour[w] > 0) stamp[colour[w]] = v;
        };
        for (int u : q.neighbors(v)) {
            block(u);
            for (int w : q.neighbors(u)) block(w);
        }
        int c = 1;
        while (stamp[c] == v) ++c;
        colour[v] = c;
    }
    return colour;
}

inline int colour_count(const std::vector<int>& colouring) {
    int d = 0;
    for (int c : colouring) d = std::max(d, c);
    return d;
}

/// Each edge uv becomes a path of k + 1 edges. Original ids stay 0..n-1; the k new vertices
/// of the i-th edge (u < v, lexicographic) get ids n + i*k .. n + i*k + k - 1, ordered from u to v.
inline LoopGraph subdivide(const LoopGraph& g, int k) {
    if (!g.loop_free()) throw InputError("subdivide expects a loop-free graph");
    if (k < 0) throw InputError("subdivide: negative k");
    if (k == 0) return g;
    auto edges = g.edges();
    const int n = g.n() + k * static_cast<int>(edges.size());
    std::vector<Edge> e;
    int next = g.n();
    for (auto [u, v] : edges) {
        int prev = u;
        for (int i = 0; i < k; ++i) {
            e.emplace_back(prev, next);
            prev = next++;
        }
        e.emplace_back(prev, v);
    }
    return LoopGraph::from_edges(n, std::move(e));
}

/// Distances from `source` (-1 where unreachable).
inline std::vector<int> bfs_distances(const LoopGraph& g, int source) {
    std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.neighbors(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

}  // namespace hps
