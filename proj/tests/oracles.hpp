#pragma once
// Independent brute-force oracles; deliberately share nothing with the library beyond LoopGraph.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include <hps/graph.hpp>

namespace oracle {

using Matrix = std::vector<std::vector<char>>;

inline Matrix adjacency(const hps::LoopGraph& g) {
    Matrix m(g.n(), std::vector<char>(g.n(), 0));
    for (auto [u, v] : g.edges()) m[u][v] = m[v][u] = 1;
    for (int v : g.loops()) m[v][v] = 1;
    return m;
}

/// Three-clause strong product definition over adjacency matrices.
inline Matrix strong_product(const Matrix& a, const Matrix& b) {
    int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    Matrix m(na * nb, std::vector<char>(na * nb, 0));
    for (int u = 0; u < na; ++u)
        for (int x = 0; x < nb; ++x)
            for (int v = 0; v < na; ++v)
                for (int y = 0; y < nb; ++y) {
                    if (u == v && x == y) continue;
                    bool e = (a[u][v] && b[x][y]) || (u == v && b[x][y]) || (a[u][v] && x == y);
                    m[u * nb + x][v * nb + y] = e;
                }
    return m;
}

inline std::size_t edge_count(const Matrix& m) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) c += m[i][j];
    return c;
}

/// Floyd–Warshall distances (large value when unreachable).
inline std::vector<std::vector<int>> all_pairs(const Matrix& m) {
    int n = static_cast<int>(m.size());
    const int inf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i == j) d[i][j] = 0;
            else if (m[i][j]) d[i][j] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

/// Does `map` send g onto an induced (loop-ignoring) subgraph of host?
inline bool is_induced_map(const Matrix& g, const Matrix& host, const std::vector<int>& map) {
    std::set<int> used(map.begin(), map.end());
    if (used.size() != map.size()) return false;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (g[i][j] != host[map[i]][map[j]]) return false;
    return true;
}

/// Exhaustive search for an induced embedding of g into host.
inline std::optional<std::vector<int>> find_induced_embedding(const Matrix& g, const Matrix& host) {
    int n = static_cast<int>(g.size()), h = static_cast<int>(host.size());
    std::vector<int> map(n, -1);
    std::vector<char> used(h, 0);
    std::function<bool(int)> rec = [&](int i) {
        if (i == n) return true;
        for (int c = 0; c < h; ++c) {
            if (used[c]) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) ok = g[i][j] == host[c][map[j]];
            if (!ok) continue;
            used[c] = 1;
            map[i] = c;
            if (rec(i + 1)) return true;
            used[c] = 0;
        }
        return false;
    };
    if (rec(0)) return map;
    return std::nullopt;
}

/// Backtracking isomorphism test with degree-based refinement; loops must match too.
inline bool isomorphic(const Matrix& a, const Matrix& b) {
    int n = static_cast<int>(a.size());
    if (static_cast<int>(b.size()) != n) return false;
    auto invariants = [n](const Matrix& m) {
        // iterated degree refinement, a few rounds
        std::vector<long long> c(n, 0);
        for (int i = 0; i < n; ++i) c[i] = m[i][i] * 1000 + std::count(m[i].begin(), m[i].end(), 1);
        for (int round = 0; round < 3; ++round) {
            std::vector<long long> next(n);
            for (int i = 0; i < n; ++i) {
                std::vector<long long> nb;
                for (int j = 0; j < n; ++j)
                    if (m[i][j] && i != j) nb.push_back(c[j]);
                std::sort(nb.begin(), nb.end());
                long long hsh = c[i] * 1000003;
                for (auto x : nb) hsh = hsh * 31 + x;
                next[i] = hsh;
            }
            c = next;
        }
        return c;
    };
    auto ca = invariants(a), cb = invariants(b);
    {
        auto sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    std::function<bool(int)> rec = [&](int i) {
        if (i == n) return true;
        for (int c = 0; c < n; ++c) {
            if (used[c] || ca[i] != cb[c] || a[i][i] != b[c][c]) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) ok = a[i][j] == b[c][map[j]];
            if (!ok) continue;
            used[c] = 1;
            map[i] = c;
            if (rec(i + 1)) return true;
            used[c] = 0;
        }
        return false;
    };
    return rec(0);
}

inline hps::LoopGraph random_graph(std::mt19937_64& rng, int n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<hps::Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) e.emplace_back(i, j);
    return hps::LoopGraph::from_edges(n, std::move(e));
}

inline hps::LoopGraph random_connected_graph(std::mt19937_64& rng, int n, double p) {
    std::vector<hps::Edge> e;
    for (int i = 1; i < n; ++i) e.emplace_back(std::uniform_int_distribution<int>(0, i - 1)(rng), i);
    std::bernoulli_distribution coin(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) e.emplace_back(i, j);
    return hps::LoopGraph::from_edges(n, std::move(e));
}

/// Tree-width by trying every elimination order.
inline int treewidth_by_permutation(const hps::LoopGraph& g) {
    int n = g.n();
    if (n == 0) return -1;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    int best = n - 1;
    auto base = adjacency(g);
    do {
        auto m = base;
        std::vector<char> gone(n, 0);
        int width = 0;
        for (int v : order) {
            std::vector<int> nb;
            for (int w = 0; w < n; ++w)
                if (!gone[w] && w != v && m[v][w]) nb.push_back(w);
            width = std::max(width, static_cast<int>(nb.size()));
            for (int x : nb)
                for (int y : nb)
                    if (x != y) m[x][y] = 1;
            gone[v] = 1;
        }
        best = std::min(best, width);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

}  // namespace oracle
