#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "graph.hpp"
#include "tree_decomposition.hpp"

namespace hps {

inline constexpr int kTreewidthCap = 14;

struct TreewidthResult {
    int width = -1;
    std::vector<int> elimination_order;
    TreeDecomposition witness;
};

/// Decomposition read off an elimination order: bag of v = v plus its later neighbours
/// in the fill-in graph; the last eliminated vertex is the root.
inline TreeDecomposition decomposition_from_order(const LoopGraph& g, const std::vector<int>& order) {
    const int n = g.n();
    TreeDecomposition td;
    if (n == 0) return td;
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
    std::vector<std::vector<int>> later(n);
    for (int v : order) {
        for (int w = 0; w < n; ++w)
            if (adj[v][w] && pos[w] > pos[v]) later[v].push_back(w);
        for (int x : later[v])
            for (int y : later[v])
                if (x != y) adj[x][y] = 1;
    }
    // node i holds vertex order[n-1-i], so parents get smaller ids and the root is node 0
    td.bags.assign(n, {});
    td.parent.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        int v = order[n - 1 - i];
        auto bag = later[v];
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags[i] = bag;
        if (i == 0) continue;
        int parent_vertex = -1;
        for (int w : later[v])
            if (parent_vertex < 0 || pos[w] < pos[parent_vertex]) parent_vertex = w;
        td.parent[i] = parent_vertex < 0 ? 0 : n - 1 - pos[parent_vertex];
    }
    td.root = 0;
    return td;
}

/// Exact tree-width by dynamic programming over vertex subsets: TW(S) is the best width of
/// eliminating S first, and eliminating v after S costs |Q(S, v)|, the vertices outside S ∪ {v}
/// reachable from v through S.
inline TreewidthResult exact_treewidth(const LoopGraph& g, int cap = kTreewidthCap) {
    const int n = g.n();
    if (n > cap) throw InputError("exact_treewidth: " + std::to_string(n) + " vertices exceed the cap of " + std::to_string(cap));
    if (n > 25) throw InputError("exact_treewidth: subset table too large");
    TreewidthResult res;
    if (n == 0) return res;
    std::vector<std::uint32_t> nb(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : g.edges()) {
        nb[u] |= 1u << v;
        nb[v] |= 1u << u;
    }
    auto q_size = [&](std::uint32_t s, int v) {
        std::uint32_t seen = 1u << v, frontier = 1u << v, out = 0;
        while (frontier) {
            int x = __builtin_ctz(frontier);
            frontier &= frontier - 1;
            std::uint32_t next = nb[x] & ~seen;
            seen |= next;
            out |= next & ~s;
            frontier |= next & s;
        }
        return __builtin_popcount(out);
    };
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<std::int8_t> tw(static_cast<std::size_t>(full) + 1, 127);
    std::vector<std::int8_t> last(static_cast<std::size_t>(full) + 1, -1);
    tw[0] = -1;
    for (std::uint32_t s = 1; s <= full; ++s) {
        for (std::uint32_t rest = s; rest; rest &= rest - 1) {
            int v = __builtin_ctz(rest);
            std::uint32_t before = s & ~(1u << v);
            int cost = std::max<int>(tw[before], q_size(before, v));
            if (cost < tw[s]) {
                tw[s] = static_cast<std::int8_t>(cost);
                last[s] = static_cast<std::int8_t>(v);
            }
        }
    }
    res.width = tw[full];
    std::vector<int> rev;
    for (std::uint32_t s = full; s; s &= ~(1u << last[s])) rev.push_back(last[s]);
    res.elimination_order.assign(rev.rbegin(), rev.rend());
    res.witness = decomposition_from_order(g, res.elimination_order);
    return res;
}

}  // namespace hps
