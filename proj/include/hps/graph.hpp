#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hps {

/// Raised for malformed inputs (bad ids, contract violations, unparsable files).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Edge = std::pair<int, int>;

/// Simple graph with optional self-loops. Vertices are dense ids 0..n-1,
/// neighbour lists are kept sorted and never contain the vertex itself.
class LoopGraph {
public:
    LoopGraph() = default;
    explicit LoopGraph(int n) : adj_(static_cast<std::size_t>(n)), loop_(static_cast<std::size_t>(n), 0) {
        if (n < 0) throw InputError("negative vertex count");
    }

    static LoopGraph from_edges(int n, std::vector<Edge> edges, const std::vector<int>& loops = {}) {
        LoopGraph g(n);
        for (auto& [u, v] : edges) {
            g.check_vertex(u);
            g.check_vertex(v);
            if (u == v) throw InputError("edge endpoints must differ; use a loop instead");
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (auto& list : g.adj_) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
        for (int v : loops) {
            g.check_vertex(v);
            g.loop_[v] = 1;
        }
        return g;
    }

    int n() const { return static_cast<int>(adj_.size()); }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& list : adj_) twice += list.size();
        return twice / 2;
    }

    std::size_t loop_count() const { return static_cast<std::size_t>(std::count(loop_.begin(), loop_.end(), 1)); }

    bool loop_free() const { return loop_count() == 0; }

    /// Adjacency including loops: adjacent(v, v) is true iff v carries a loop.
    bool adjacent(int u, int v) const {
        if (u == v) return loop_[u] != 0;
        const auto& list = adj_[u];
        return std::binary_search(list.begin(), list.end(), v);
    }

    bool has_loop(int v) const { return loop_[v] != 0; }

    std::span<const int> neighbors(int v) const { return adj_[v]; }

    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    int max_degree() const {
        int d = 0;
        for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
        return d;
    }

    /// Edges as (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int u = 0; u < n(); ++u)
            for (int v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    std::vector<int> loops() const {
        std::vector<int> out;
        for (int v = 0; v < n(); ++v)
            if (loop_[v]) out.push_back(v);
        return out;
    }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw InputError("edge endpoints must differ; use a loop instead");
        insert_sorted(adj_[u], v);
        insert_sorted(adj_[v], u);
    }

    void set_loop(int v, bool on = true) {
        check_vertex(v);
        loop_[v] = on ? 1 : 0;
    }

    int add_vertex() {
        adj_.emplace_back();
        loop_.push_back(0);
        if (!names_.empty()) names_.emplace_back();
        return n() - 1;
    }

    const std::vector<std::string>& names() const { return names_; }
    void set_name(int v, std::string name) {
        check_vertex(v);
        if (names_.empty()) names_.resize(adj_.size());
        names_[v] = std::move(name);
    }
    std::string name(int v) const {
        if (!names_.empty() && !names_[v].empty()) return names_[v];
        return std::to_string(v);
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= n()) throw InputError("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n()) + ")");
    }

    /// Structural equality; names are a view concern and are ignored.
    friend bool operator==(const LoopGraph& a, const LoopGraph& b) { return a.adj_ == b.adj_ && a.loop_ == b.loop_; }

private:
    static void insert_sorted(std::vector<int>& list, int v) {
        auto it = std::lower_bound(list.begin(), list.end(), v);
        if (it == list.end() || *it != v) list.insert(it, v);
    }

    std::vector<std::vector<int>> adj_;
    std::vector<std::uint8_t> loop_;
    std::vector<std::string> names_;
};

inline LoopGraph empty_graph(int n) { return LoopGraph(n); }

inline LoopGraph path_graph(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return LoopGraph::from_edges(n, std::move(e));
}

inline LoopGraph cycle_graph(int n) {
    if (n < 3) throw InputError("cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return LoopGraph::from_edges(n, std::move(e));
}

inline LoopGraph complete_graph(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return LoopGraph::from_edges(n, std::move(e));
}

/// rows x cols square grid, vertex (r, c) has id r * cols + c.
inline LoopGraph grid_graph(int rows, int cols) {
    std::vector<Edge> e;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = r * cols + c;
            if (c + 1 < cols) e.emplace_back(v, v + 1);
            if (r + 1 < rows) e.emplace_back(v, v + cols);
        }
    return LoopGraph::from_edges(rows * cols, std::move(e));
}

/// Star with centre 0 and leaves 1..leaves.
inline LoopGraph star_graph(int leaves) {
    std::vector<Edge> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return LoopGraph::from_edges(leaves + 1, std::move(e));
}

/// Subgraph induced on `keep` (in the given order); vertex i of the result is keep[i].
inline LoopGraph induced_subgraph(const LoopGraph& g, const std::vector<int>& keep) {
    std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        g.check_vertex(keep[i]);
        if (pos[keep[i]] != -1) throw InputError("duplicate vertex in induced_subgraph");
        pos[keep[i]] = static_cast<int>(i);
    }
    LoopGraph out(static_cast<int>(keep.size()));
    std::vector<Edge> e;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (int w : g.neighbors(keep[i]))
            if (pos[w] > static_cast<int>(i)) e.emplace_back(static_cast<int>(i), pos[w]);
    }
    std::vector<int> loops;
    for (std::size_t i = 0; i < keep.size(); ++i)
        if (g.has_loop(keep[i])) loops.push_back(static_cast<int>(i));
    return LoopGraph::from_edges(static_cast<int>(keep.size()), std::move(e), loops);
}

/// Connected components as a component id per vertex; returns the number of components.
inline int connected_components(const LoopGraph& g, std::vector<int>& comp) {
    comp.assign(static_cast<std::size_t>(g.n()), -1);
    int count = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] != -1) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v))
                if (comp[w] == -1) {
                    comp[w] = count;
                    stack.push_back(w);
                }
        }
        ++count;
    }
    return count;
}

inline bool is_connected(const LoopGraph& g) {
    std::vector<int> comp;
    return connected_components(g, comp) <= 1;
}

/// Vertex order along a path graph, starting from the lower-id end. Empty if g is not a path.
inline std::vector<int> path_order(const LoopGraph& g) {
    if (g.n() == 0) return {};
    if (g.edge_count() != static_cast<std::size_t>(g.n() - 1) || !is_connected(g)) return {};
    int start = -1;
    for (int v = 0; v < g.n(); ++v) {
        if (g.degree(v) > 2) return {};
        if (g.degree(v) <= 1 && start == -1) start = v;
    }
    std::vector<int> order{start};
    int prev = -1, cur = start;
    while (static_cast<int>(order.size()) < g.n()) {
        int next = -1;
        for (int w : g.neighbors(cur))
            if (w != prev) next = w;
        prev = cur;
        cur = next;
        order.push_back(cur);
    }
    return order;
}

}  // namespace hps
