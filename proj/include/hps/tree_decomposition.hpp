#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "graph.hpp"
#include "graph_io.hpp"

namespace hps {

/// Rooted tree of bags. Node ids are dense; `parent[root] == -1`. Bags are kept sorted.
struct TreeDecomposition {
    int root = 0;
    std::vector<int> parent;
    std::vector<std::vector<int>> bags;

    int nodes() const { return static_cast<int>(bags.size()); }

    int width() const {
        int w = -1;
        for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
        return w;
    }

    int add_node(std::vector<int> bag, int parent_node) {
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        bags.push_back(std::move(bag));
        parent.push_back(parent_node);
        return nodes() - 1;
    }

    std::vector<std::vector<int>> children() const {
        std::vector<std::vector<int>> out(bags.size());
        for (int t = 0; t < nodes(); ++t)
            if (parent[t] >= 0) out[parent[t]].push_back(t);
        return out;
    }

    /// Nodes with every parent before its children.
    std::vector<int> preorder() const {
        std::vector<int> out;
        if (bags.empty()) return out;
        auto ch = children();
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            out.push_back(t);
            for (auto it = ch[t].rbegin(); it != ch[t].rend(); ++it) stack.push_back(*it);
        }
        return out;
    }

    bool bag_contains(int t, int v) const { return std::binary_search(bags[t].begin(), bags[t].end(), v); }
};

enum class TdAxiom { Ok, Shape, Range, Cover, Edge, Connected };

inline const char* to_string(TdAxiom a) {
    switch (a) {
        case TdAxiom::Ok: return "ok";
        case TdAxiom::Shape: return "not a rooted tree";
        case TdAxiom::Range: return "bag vertex out of range";
        case TdAxiom::Cover: return "axiom (i): vertex in no bag";
        case TdAxiom::Edge: return "axiom (ii): edge in no bag";
        case TdAxiom::Connected: return "axiom (iii): bags of a vertex not connected";
    }
    return "?";
}

struct TdReport {
    TdAxiom axiom = TdAxiom::Ok;
    int u = -1;  // witness vertex / node
    int v = -1;  // second endpoint for edge witnesses
    bool ok() const { return axiom == TdAxiom::Ok; }
    std::string describe() const {
        std::string s = to_string(axiom);
        if (u >= 0) s += " " + std::to_string(u);
        if (v >= 0) s += " " + std::to_string(v);
        return s;
    }
};

/// First violated axiom with a witness.
inline TdReport validate_decomposition(const LoopGraph& g, const TreeDecomposition& td) {
    const int nt = td.nodes();
    if (nt == 0) return g.n() == 0 ? TdReport{} : TdReport{TdAxiom::Cover, 0};
    if (static_cast<int>(td.parent.size()) != nt || td.root < 0 || td.root >= nt || td.parent[td.root] != -1) return {TdAxiom::Shape, td.root};
    for (int t = 0; t < nt; ++t) {
        if (t != td.root && (td.parent[t] < 0 || td.parent[t] >= nt)) return {TdAxiom::Shape, t};
    }
    if (static_cast<int>(td.preorder().size()) != nt) return {TdAxiom::Shape};
    for (int t = 0; t < nt; ++t)
        for (int v : td.bags[t])
            if (v < 0 || v >= g.n()) return {TdAxiom::Range, t, v};
    std::vector<int> count(static_cast<std::size_t>(g.n()), 0);
    for (const auto& b : td.bags)
        for (int v : b) ++count[v];
    for (int v = 0; v < g.n(); ++v)
        if (count[v] == 0) return {TdAxiom::Cover, v};
    // each edge is looked up among the nodes of its rarer endpoint
    std::vector<std::vector<int>> nodes_of(static_cast<std::size_t>(g.n()));
    for (int t = 0; t < nt; ++t)
        for (int v : td.bags[t]) nodes_of[v].push_back(t);
    for (auto [u, v] : g.edges()) {
        const auto& a = nodes_of[u].size() <= nodes_of[v].size() ? nodes_of[u] : nodes_of[v];
        int other = nodes_of[u].size() <= nodes_of[v].size() ? v : u;
        bool found = std::any_of(a.begin(), a.end(), [&](int t) { return td.bag_contains(t, other); });
        if (!found) return {TdAxiom::Edge, u, v};
    }
    // a vertex's nodes form a subtree iff exactly one of them has a parent outside the set
    for (int v = 0; v < g.n(); ++v) {
        int tops = 0;
        for (int t : nodes_of[v])
            if (td.parent[t] < 0 || !td.bag_contains(td.parent[t], v)) ++tops;
        if (tops != 1) return {TdAxiom::Connected, v};
    }
    return {};
}

/// Same width, every node at most two children; extra children hang off a chain of bag copies.
inline TreeDecomposition binarize(const TreeDecomposition& td) {
    TreeDecomposition out;
    out.root = td.root;
    out.bags = td.bags;
    out.parent = td.parent;
    auto ch = td.children();
    for (int t = 0; t < td.nodes(); ++t) {
        if (ch[t].size() <= 2) continue;
        int holder = t;
        for (std::size_t i = 1; i < ch[t].size(); ++i) {
            if (i + 1 == ch[t].size()) {
                out.parent[ch[t][i]] = holder;
                break;
            }
            // t -> {c0, copy1}, copy1 -> {c1, copy2}, ..., last copy -> {c_{m-2}, c_{m-1}}
            int copy = out.add_node(td.bags[t], holder);
            out.parent[ch[t][i]] = copy;
            holder = copy;
        }
    }
    return out;
}

struct DecompositionContext {
    std::vector<std::vector<int>> xplus;  // X+_t, sorted
    std::vector<std::vector<int>> y;      // Y_t, sorted
    std::vector<std::vector<int>> fresh;  // Y_t ∩ X_t: vertices whose topmost bag is t
    std::vector<int> top;                 // topmost node of each vertex
    std::vector<int> depth;               // node depth, root 0
    std::vector<int> p;                   // bag-injective labelling into 0..k
    int k = 0;
};

/// Derived sets plus a top-down greedy labelling p: each vertex gets, at its topmost bag,
/// the least value not taken by the already-labelled vertices of that bag.
inline DecompositionContext derive_context(const TreeDecomposition& td, int n, int k) {
    DecompositionContext ctx;
    ctx.k = k;
    const int nt = td.nodes();
    for (const auto& b : td.bags)
        if (static_cast<int>(b.size()) > k + 1) throw InputError("bag of size " + std::to_string(b.size()) + " exceeds k+1=" + std::to_string(k + 1));
    ctx.xplus.assign(nt, {});
    ctx.y.assign(nt, {});
    ctx.fresh.assign(nt, {});
    ctx.depth.assign(nt, 0);
    ctx.top.assign(static_cast<std::size_t>(n), -1);
    ctx.p.assign(static_cast<std::size_t>(n), -1);
    auto order = td.preorder();
    for (int t : order)
        if (td.parent[t] >= 0) ctx.depth[t] = ctx.depth[td.parent[t]] + 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int t = *it;
        auto& xp = ctx.xplus[t];
        xp.insert(xp.end(), td.bags[t].begin(), td.bags[t].end());
        std::sort(xp.begin(), xp.end());
        xp.erase(std::unique(xp.begin(), xp.end()), xp.end());
        if (td.parent[t] >= 0) {
            auto& pp = ctx.xplus[td.parent[t]];
            pp.insert(pp.end(), xp.begin(), xp.end());
        }
    }
    for (int t = 0; t < nt; ++t) {
        const std::vector<int> none;
        const auto& up = td.parent[t] >= 0 ? td.bags[td.parent[t]] : none;
        std::set_difference(ctx.xplus[t].begin(), ctx.xplus[t].end(), up.begin(), up.end(), std::back_inserter(ctx.y[t]));
        std::set_difference(td.bags[t].begin(), td.bags[t].end(), up.begin(), up.end(), std::back_inserter(ctx.fresh[t]));
    }
    std::vector<char> used(static_cast<std::size_t>(k) + 1, 0);
    for (int t : order) {
        std::fill(used.begin(), used.end(), 0);
        for (int m : td.bags[t])
            if (ctx.p[m] >= 0) used[ctx.p[m]] = 1;
        for (int m : td.bags[t]) {
            if (ctx.p[m] >= 0) continue;
            if (m < 0 || m >= n) throw InputError("bag vertex out of range");
            int c = 0;
            while (used[c]) ++c;
            ctx.p[m] = c;
            used[c] = 1;
            ctx.top[m] = t;
        }
    }
    return ctx;
}

/// Single node holding every vertex.
inline TreeDecomposition trivial_decomposition(int n) {
    TreeDecomposition td;
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) all[v] = v;
    td.add_node(std::move(all), -1);
    return td;
}

inline void write_decomposition(std::ostream& out, const TreeDecomposition& td, int n) {
    // node ids are renumbered so that the root is node 0
    std::vector<int> id(static_cast<std::size_t>(td.nodes()), -1);
    auto order = td.preorder();
    for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = static_cast<int>(i);
    out << "td " << td.nodes() << " " << td.width() + 1 << " " << n << "\n";
    for (int t : order) {
        out << "b " << id[t];
        for (int v : td.bags[t]) out << " " << v;
        out << "\n";
    }
    for (int t : order)
        if (td.parent[t] >= 0) out << "t " << id[td.parent[t]] << " " << id[t] << "\n";
}

/// Returns the decomposition and the declared vertex count.
inline std::pair<TreeDecomposition, int> read_decomposition(std::istream& in, const std::string& what = "decomposition") {
    LineReader r(in, what);
    if (!r.next() || r.keyword() != "td") r.fail("expected 'td <nodes> <width+1> <n>' header");
    r.expect_size(4);
    int nodes = r.integer(1), bagsize = r.integer(2), n = r.integer(3);
    if (nodes < 0 || n < 0) r.fail("negative count");
    TreeDecomposition td;
    td.bags.assign(nodes, {});
    td.parent.assign(nodes, -1);
    std::vector<char> has_bag(nodes, 0), has_parent(nodes, 0);
    while (r.next()) {
        if (r.keyword() == "b") {
            int t = r.integer(1);
            if (t < 0 || t >= nodes) r.fail("node out of range");
            if (has_bag[t]) r.fail("bag given twice");
            has_bag[t] = 1;
            for (std::size_t i = 2; i < r.size(); ++i) td.bags[t].push_back(r.integer(i));
            if (static_cast<int>(td.bags[t].size()) > bagsize) r.fail("bag larger than declared width+1");
            std::sort(td.bags[t].begin(), td.bags[t].end());
            td.bags[t].erase(std::unique(td.bags[t].begin(), td.bags[t].end()), td.bags[t].end());
        } else if (r.keyword() == "t") {
            r.expect_size(3);
            int a = r.integer(1), b = r.integer(2);
            if (a < 0 || a >= nodes || b < 0 || b >= nodes) r.fail("tree node out of range");
            if (has_parent[b] || b == 0) r.fail("node " + std::to_string(b) + " given a second parent");
            has_parent[b] = 1;
            td.parent[b] = a;
        } else {
            r.fail("unknown keyword '" + r.keyword() + "'");
        }
    }
    td.root = 0;
    return {td, n};
}

inline std::pair<TreeDecomposition, int> read_decomposition_file(const std::string& path) {
    auto in = open_input(path);
    return read_decomposition(in, path);
}

}  // namespace hps
