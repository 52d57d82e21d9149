#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "expression.hpp"
#include "graph_io.hpp"
#include "graph_ops.hpp"
#include "product.hpp"
#include "tree_decomposition.hpp"

namespace hps {

/// A graph whose vertices sit at distinct positions (q, m) of a product Q ⊠ M.
struct ProductSubgraph {
    LoopGraph graph;
    std::vector<ProductVertex> position;
};

/// For each slot j = 0..k, the sorted square colours α with b_j(α) = 1.
struct BaseColour {
    std::vector<std::vector<int>> rows;
    friend bool operator==(const BaseColour&, const BaseColour&) = default;
    friend auto operator<=>(const BaseColour&, const BaseColour&) = default;

    bool has(int j, int alpha) const { return std::binary_search(rows[j].begin(), rows[j].end(), alpha); }
    int max_support() const {
        std::size_t s = 0;
        for (const auto& r : rows) s = std::max(s, r.size());
        return static_cast<int>(s);
    }
};

/// alpha == 0 marks a running colour; otherwise the square colour of an initial one.
struct FullColour {
    int alpha = 0;
    BaseColour base;
    bool running() const { return alpha == 0; }
    friend bool operator==(const FullColour&, const FullColour&) = default;
    friend auto operator<=>(const FullColour&, const FullColour&) = default;
};

/// Dense ids 1..size() for the colours that actually occur.
template <class Colour>
class Interner {
public:
    int id(const Colour& c) {
        auto [it, inserted] = ids_.try_emplace(c, static_cast<int>(values_.size()) + 1);
        if (inserted) values_.push_back(c);
        return it->second;
    }
    const Colour& at(int id) const { return values_.at(static_cast<std::size_t>(id) - 1); }
    int size() const { return static_cast<int>(values_.size()); }

private:
    std::map<Colour, int> ids_;
    std::vector<Colour> values_;
};

using ColourInterner = Interner<FullColour>;

/// Everything the constructions share: the checked input, the binarized decomposition,
/// its derived sets and the bag labelling p, and the square colouring s (values 1..d).
class ColourContext {
public:
    ColourContext(ProductSubgraph sub, LoopGraph q, LoopGraph m, const TreeDecomposition& td, std::vector<int> square_colouring = {})
        : sub_(std::move(sub)), q_(std::move(q)), m_(std::move(m)), td_(binarize(td)) {
        if (!q_.loop_free() || !m_.loop_free()) throw InputError("product factors must be loop-free");
        if (static_cast<int>(sub_.position.size()) != sub_.graph.n()) throw InputError("product subgraph: position count differs from vertex count");
        if (!sub_.graph.loop_free()) throw InputError("product subgraph must be loop-free");
        std::map<ProductVertex, int> seen;
        for (int x = 0; x < sub_.graph.n(); ++x) {
            auto p = sub_.position[x];
            if (p.a < 0 || p.a >= q_.n() || p.b < 0 || p.b >= m_.n())
                throw InputError("vertex " + std::to_string(x) + " at (" + std::to_string(p.a) + "," + std::to_string(p.b) + ") is outside V(Q)xV(M)");
            if (!seen.emplace(p, x).second) throw InputError("vertices " + std::to_string(seen[p]) + " and " + std::to_string(x) + " share a product position");
        }
        for (auto [x, y] : sub_.graph.edges())
            if (!product_adjacent(q_, m_, sub_.position[x], sub_.position[y]))
                throw InputError("edge " + std::to_string(x) + "-" + std::to_string(y) + " is not an edge of Q x M");
        auto report = validate_decomposition(m_, td_);
        if (!report.ok()) throw InputError("tree decomposition of M invalid: " + report.describe());
        k_ = std::max(0, td_.width());
        ctx_ = derive_context(td_, m_.n(), k_);
        s_ = square_colouring.empty() ? greedy_square_coloring(q_) : std::move(square_colouring);
        if (static_cast<int>(s_.size()) != q_.n()) throw InputError("square colouring has wrong length");
        for (int v = 0; v < q_.n(); ++v) {
            if (s_[v] < 1) throw InputError("square colours must be positive");
            for (int u : q_.neighbors(v))
                for (int w : q_.neighbors(u))
                    if ((w != v && s_[w] == s_[v]) || s_[u] == s_[v]) throw InputError("colouring is not proper on the square of Q");
        }
        d_ = colour_count(s_);
        by_m_.assign(static_cast<std::size_t>(m_.n()), {});
        for (int x = 0; x < sub_.graph.n(); ++x) by_m_[sub_.position[x].b].push_back(x);
        for (auto& batch : by_m_)
            std::sort(batch.begin(), batch.end(), [&](int x, int y) { return sub_.position[x].a < sub_.position[y].a; });
    }

    const ProductSubgraph& sub() const { return sub_; }
    const LoopGraph& q() const { return q_; }
    const LoopGraph& m() const { return m_; }
    const TreeDecomposition& td() const { return td_; }
    const DecompositionContext& derived() const { return ctx_; }
    const std::vector<int>& square_colours() const { return s_; }
    int k() const { return k_; }
    int d() const { return d_; }
    int delta() const { return q_.max_degree(); }

    /// Vertices of G in column m, ordered by their Q coordinate.
    const std::vector<int>& column(int m) const { return by_m_[m]; }

    /// Y'_t in batch order (ascending vertex id).
    const std::vector<int>& batch_order(int t) const { return ctx_.fresh[t]; }

    bool in_y(int t, int m) const {
        if (t == td_.root) return true;
        return std::binary_search(ctx_.y[t].begin(), ctx_.y[t].end(), m);
    }

    /// Adjacency pattern of x into the G-vertices sitting over the bag of t.
    BaseColour base_colour(int x, int t) const {
        int m = sub_.position.at(x).b;
        if (t < 0 || t >= td_.nodes()) throw InputError("base_colour: no node " + std::to_string(t));
        if (!in_y(t, m)) throw InputError("base_colour: column " + std::to_string(m) + " is not below node " + std::to_string(t));
        BaseColour c;
        c.rows.assign(static_cast<std::size_t>(k_) + 1, {});
        for (int y : sub_.graph.neighbors(x)) {
            auto pos = sub_.position[y];
            if (td_.bag_contains(t, pos.b)) c.rows[ctx_.p[pos.b]].push_back(s_[pos.a]);
        }
        for (auto& r : c.rows) std::sort(r.begin(), r.end());
        return c;
    }

    /// Node whose bag last holds column m going upward.
    int home(int m) const { return ctx_.top[m]; }

    FullColour initial_colour(int x) const {
        auto pos = sub_.position[x];
        return {s_[pos.a], base_colour(x, home(pos.b))};
    }

private:
    ProductSubgraph sub_;
    LoopGraph q_;
    LoopGraph m_;
    TreeDecomposition td_;
    DecompositionContext ctx_;
    std::vector<int> s_;
    std::vector<std::vector<int>> by_m_;
    int k_ = 0;
    int d_ = 0;
};

struct InducedExpression {
    HcwExpression expr;           // over reflexive_closure(Q)
    std::vector<int> value_to_g;  // value vertex id -> vertex of G
    int colours_used = 0;
    int max_support = 0;          // largest per-slot support of any base colour used
};

/// Bottom-up along the decomposition: union the children, add each column batch with its
/// initial colours, wire it by colour pairs, retire initial colours, then clear departing slots.
inline InducedExpression build_expression(const ColourContext& cc) {
    InducedExpression out;
    out.expr.param = reflexive_closure(cc.q());
    ColourInterner colours;
    std::vector<int> current(static_cast<std::size_t>(cc.sub().graph.n()), 0);
    auto& ops = out.expr.ops;
    const auto& td = cc.td();
    auto children = td.children();

    auto present = [&](const std::vector<int>& xs) {
        std::vector<int> ids;
        for (int x : xs) ids.push_back(current[x]);
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    };
    auto recolour_all = [&](std::vector<int>& xs, int from, int to) {
        ops.push_back(ExprOp::recolor(from, to));
        for (int x : xs)
            if (current[x] == from) current[x] = to;
    };

    // returns the G-vertices produced by the subexpression at t (empty: nothing emitted)
    std::function<std::vector<int>(int)> visit = [&](int t) -> std::vector<int> {
        std::vector<int> have;
        for (int c : children[t]) {
            auto part = visit(c);
            if (part.empty()) continue;
            if (!have.empty()) ops.push_back(ExprOp::join());
            have.insert(have.end(), part.begin(), part.end());
        }
        for (int mi : cc.batch_order(t)) {
            const auto& batch = cc.column(mi);
            if (batch.empty()) continue;
            const int j = cc.derived().p[mi];
            for (std::size_t i = 0; i < batch.size(); ++i) {
                int x = batch[i];
                auto pos = cc.sub().position[x];
                current[x] = colours.id({cc.square_colours()[pos.a], cc.base_colour(x, t)});
                ops.push_back(ExprOp::create(current[x], pos.a));
                out.value_to_g.push_back(x);
                out.max_support = std::max(out.max_support, colours.at(current[x]).base.max_support());
                if (i > 0) ops.push_back(ExprOp::join());
            }
            if (!have.empty()) ops.push_back(ExprOp::join());
            auto initial = present(batch);
            // earlier vertices (running colours) to the new batch
            for (int r : present(have))
                for (int c : initial)
                    if (colours.at(r).base.has(j, colours.at(c).alpha)) ops.push_back(ExprOp::add_edges(r, c));
            // inside the batch
            for (std::size_t a = 0; a < initial.size(); ++a)
                for (std::size_t b = a + 1; b < initial.size(); ++b) {
                    const auto& ca = colours.at(initial[a]);
                    const auto& cb = colours.at(initial[b]);
                    if (ca.base.has(j, cb.alpha) || cb.base.has(j, ca.alpha)) ops.push_back(ExprOp::add_edges(initial[a], initial[b]));
                }
            have.insert(have.end(), batch.begin(), batch.end());
            for (int c : initial) recolour_all(have, c, colours.id({0, colours.at(c).base}));
        }
        if (t != td.root && !have.empty()) {
            for (int mi : cc.batch_order(t)) {
                const int j = cc.derived().p[mi];
                for (int c : present(have)) {
                    const auto& col = colours.at(c);
                    if (col.base.rows[j].empty()) continue;
                    FullColour cleared = col;
                    cleared.base.rows[j].clear();
                    recolour_all(have, c, colours.id(cleared));
                }
            }
        }
        return have;
    };
    if (td.nodes() > 0) visit(td.root);
    out.colours_used = colours.size();
    out.expr.ell = std::max(1, colours.size());
    return out;
}

struct InducedFactorCertificate {
    LoopGraph m2;                 // vertex m * gamma_count + γ
    TreeDecomposition td2;
    ProductEmbedding embedding;   // G into Q ⊠ m2
    int gamma_count = 0;          // distinct initial colours used
    std::vector<FullColour> gammas;
};

/// Column order: a column whose home node is deeper comes first; within a node, batch order.
inline bool column_precedes(const ColourContext& cc, int m, int m2) {
    int t = cc.home(m), s = cc.home(m2);
    if (t != s) return cc.derived().depth[t] > cc.derived().depth[s];
    return m <= m2;
}

inline InducedFactorCertificate build_induced_factor(const ColourContext& cc) {
    InducedFactorCertificate cert;
    const auto& g = cc.sub();
    Interner<FullColour> gammas;
    std::vector<int> gamma_of(static_cast<std::size_t>(g.graph.n()));
    for (int x = 0; x < g.graph.n(); ++x) gamma_of[x] = gammas.id(cc.initial_colour(x)) - 1;
    const int gc = gammas.size();
    cert.gamma_count = gc;
    for (int i = 1; i <= gc; ++i) cert.gammas.push_back(gammas.at(i));
    const auto& m = cc.m();
    const auto& p = cc.derived().p;
    cert.m2 = LoopGraph(m.n() * gc);
    // (m,γ)(m',γ') with m ⪯ m' is an edge iff γ's slot p(m') contains α'
    auto linked = [&](int ga, int b, int gb) { return cert.gammas[ga].base.has(p[b], cert.gammas[gb].alpha); };
    for (int a = 0; a < m.n(); ++a) {
        for (int ga = 0; ga < gc; ++ga)
            for (int gb = ga + 1; gb < gc; ++gb)
                if (linked(ga, a, gb) || linked(gb, a, ga)) cert.m2.add_edge(a * gc + ga, a * gc + gb);
        for (int b : m.neighbors(a)) {
            if (!column_precedes(cc, a, b)) continue;
            for (int ga = 0; ga < gc; ++ga)
                for (int gb = 0; gb < gc; ++gb)
                    if (linked(ga, b, gb)) cert.m2.add_edge(a * gc + ga, b * gc + gb);
        }
    }
    const auto& td = cc.td();
    cert.td2.root = td.root;
    for (int t = 0; t < td.nodes(); ++t) {
        std::vector<int> bag;
        for (int v : td.bags[t])
            for (int ga = 0; ga < gc; ++ga) bag.push_back(v * gc + ga);
        cert.td2.add_node(std::move(bag), td.parent[t]);
    }
    cert.embedding = {cc.q(), cert.m2, {}};
    for (int x = 0; x < g.graph.n(); ++x) cert.embedding.image.push_back({g.position[x].a, g.position[x].b * gc + gamma_of[x]});
    return cert;
}

using BigInt = boost::multiprecision::cpp_int;

struct BoundReport {
    int delta = 0;
    int k = 0;
    int d = 0;
    BigInt general_cw;  // (Δ²+2)·Δ^{2(Δ+1)(k+1)}
    BigInt general_tw;  // (k+1)(Δ²+1)·Δ^{2(Δ+1)(k+1)}
    BigInt refined_cw;  // (d+1)·min((d-1)^{Δ+1}, 2^d)^{k+1}
    BigInt refined_tw;  // (k+1)·d·min((d-1)^{Δ+1}, 2^d)^{k+1}
};

inline BigInt big_pow(BigInt base, long long e) {
    BigInt r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

/// Exact values of the published bounds. Without `d` the refined pair uses d = Δ²+1.
inline BoundReport bound_report(int delta, int k, std::optional<int> d = std::nullopt) {
    if (delta < 2) throw InputError("bound_report needs max degree at least 2");
    if (k < 0) throw InputError("bound_report needs k >= 0");
    BoundReport r;
    r.delta = delta;
    r.k = k;
    r.d = d.value_or(delta * delta + 1);
    if (r.d < 1) throw InputError("bound_report needs d >= 1");
    BigInt D = delta;
    auto base_count = big_pow(D, 2LL * (delta + 1) * (k + 1));
    r.general_cw = (D * D + 2) * base_count;
    r.general_tw = BigInt(k + 1) * (D * D + 1) * base_count;
    BigInt per_slot = std::min(big_pow(BigInt(r.d - 1), delta + 1), big_pow(BigInt(2), r.d));
    auto slots = big_pow(per_slot, k + 1);
    r.refined_cw = BigInt(r.d + 1) * slots;
    r.refined_tw = BigInt(k + 1) * r.d * slots;
    return r;
}

/// Bounds for an instance; degree and square-colour count are raised to 2 and 3 when smaller
/// (a smaller factor is a subgraph of a path on three vertices, and the counts only grow with Δ, d).
inline BoundReport instance_bounds(const ColourContext& cc) {
    return bound_report(std::max(2, cc.delta()), cc.k(), std::max(3, cc.d()));
}

/// Colouring 1,2,3,1,2,3,... along a path.
inline std::vector<int> path_square_colouring(const LoopGraph& path) {
    auto order = path_order(path);
    if (order.empty() && path.n() > 0) throw InputError("left factor is not a path");
    std::vector<int> s(static_cast<std::size_t>(path.n()));
    for (std::size_t i = 0; i < order.size(); ++i) s[order[i]] = static_cast<int>(i % 3) + 1;
    return s;
}

struct PathCaseResult {
    InducedExpression expression;
    InducedFactorCertificate certificate;
    BoundReport bounds;
};

inline PathCaseResult path_case(const ProductSubgraph& sub, const LoopGraph& path, const LoopGraph& m, const TreeDecomposition& td) {
    ColourContext cc(sub, path, m, td, path_square_colouring(path));
    return {build_expression(cc), build_induced_factor(cc), bound_report(2, cc.k(), 3)};
}

inline std::string describe(const BoundReport& r) {
    std::ostringstream os;
    os << "delta " << r.delta << " k " << r.k << " d " << r.d << "\n"
       << "cw_general " << r.general_cw << "\n"
       << "tw_general " << r.general_tw << "\n"
       << "cw_refined " << r.refined_cw << "\n"
       << "tw_refined " << r.refined_tw << "\n";
    return os.str();
}

/// `psub n`, then `v a b` lines (the i-th one places vertex i), then `e u v` lines.
inline ProductSubgraph read_product_subgraph(std::istream& in, const std::string& what = "product subgraph") {
    LineReader r(in, what);
    if (!r.next() || r.keyword() != "psub") r.fail("expected 'psub <n>' header");
    r.expect_size(2);
    int n = r.integer(1);
    if (n < 0) r.fail("negative vertex count");
    ProductSubgraph out;
    out.graph = LoopGraph(n);
    while (r.next()) {
        if (r.keyword() == "v") {
            r.expect_size(3);
            if (static_cast<int>(out.position.size()) >= n) r.fail("more 'v' lines than vertices");
            out.position.push_back({r.integer(1), r.integer(2)});
        } else if (r.keyword() == "e") {
            r.expect_size(3);
            int u = r.integer(1), v = r.integer(2);
            if (u < 0 || v < 0 || u >= n || v >= n || u == v) r.fail("bad edge");
            out.graph.add_edge(u, v);
        } else {
            r.fail("unknown keyword '" + r.keyword() + "'");
        }
    }
    if (static_cast<int>(out.position.size()) != n) throw InputError(what + ": " + std::to_string(out.position.size()) + " 'v' lines for " + std::to_string(n) + " vertices");
    return out;
}

inline ProductSubgraph read_product_subgraph_file(const std::string& path) {
    auto in = open_input(path);
    return read_product_subgraph(in, path);
}

inline void write_product_subgraph(std::ostream& out, const ProductSubgraph& sub) {
    out << "psub " << sub.graph.n() << "\n";
    for (auto p : sub.position) out << "v " << p.a << " " << p.b << "\n";
    for (auto [u, v] : sub.graph.edges()) out << "e " << u << " " << v << "\n";
}

}  // namespace hps
