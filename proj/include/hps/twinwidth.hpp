#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "expression.hpp"
#include "graph.hpp"
#include "graph_io.hpp"
#include "graph_ops.hpp"
#include "product.hpp"

namespace hps {

/// Merges of live vertices; step i creates vertex n + i from the pair it names.
struct ContractionSequence {
    int n = 0;
    std::vector<std::pair<int, int>> steps;
};

/// Black and red adjacency over live vertices; ids grow as merges create new vertices.
class Trigraph {
public:
    explicit Trigraph(const LoopGraph& g) : black_(static_cast<std::size_t>(g.n())), red_(static_cast<std::size_t>(g.n())), live_(static_cast<std::size_t>(g.n()), 1) {
        if (!g.loop_free()) throw InputError("contraction sequences need a loop-free graph");
        for (int v = 0; v < g.n(); ++v) black_[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
        live_count_ = g.n();
    }

    bool live(int v) const { return v >= 0 && v < static_cast<int>(live_.size()) && live_[v]; }
    int live_count() const { return live_count_; }
    int id_limit() const { return static_cast<int>(live_.size()); }
    const std::set<int>& red(int v) const { return red_[v]; }
    const std::set<int>& black(int v) const { return black_[v]; }
    int red_degree(int v) const { return static_cast<int>(red_[v].size()); }

    int max_red_degree() const {
        int m = 0;
        for (int v = 0; v < id_limit(); ++v)
            if (live_[v]) m = std::max(m, red_degree(v));
        return m;
    }

    /// New vertex: black where both were black neighbours, red everywhere else they reached.
    int contract(int x1, int x2) {
        if (!live(x1) || !live(x2)) throw InputError("contraction of dead or unknown vertex " + std::to_string(live(x1) ? x2 : x1));
        if (x1 == x2) throw InputError("contraction of vertex " + std::to_string(x1) + " with itself");
        const int x0 = id_limit();
        black_.emplace_back();
        red_.emplace_back();
        live_.push_back(1);
        std::set<int> all;
        for (int v : {x1, x2}) {
            all.insert(black_[v].begin(), black_[v].end());
            all.insert(red_[v].begin(), red_[v].end());
        }
        all.erase(x1);
        all.erase(x2);
        for (int w : all) {
            bool b = black_[x1].count(w) && black_[x2].count(w);
            (b ? black_[x0] : red_[x0]).insert(w);
            (b ? black_[w] : red_[w]).insert(x0);
        }
        for (int v : {x1, x2}) {
            for (int w : black_[v]) black_[w].erase(v);
            for (int w : red_[v]) red_[w].erase(v);
            black_[v].clear();
            red_[v].clear();
            live_[v] = 0;
        }
        --live_count_;
        return x0;
    }

private:
    std::vector<std::set<int>> black_;
    std::vector<std::set<int>> red_;
    std::vector<char> live_;
    int live_count_ = 0;
};

struct ContractionReport {
    int max_red = 0;
    int at_step = 0;       // trigraph index attaining max_red; 0 is the input graph
    bool complete = false; // one vertex left (or the graph was empty)
};

inline ContractionReport verify_contraction_sequence(const LoopGraph& g, const ContractionSequence& seq) {
    if (seq.n != g.n()) throw InputError("sequence is for " + std::to_string(seq.n) + " vertices, graph has " + std::to_string(g.n()));
    if (g.n() > 0 && seq.steps.size() > static_cast<std::size_t>(g.n() - 1)) throw InputError("more than n-1 contractions");
    Trigraph tg(g);
    ContractionReport rep;
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        int x0 = tg.contract(seq.steps[i].first, seq.steps[i].second);
        // only the new vertex and its red neighbours can have gained red degree
        int m = tg.red_degree(x0);
        for (int w : tg.red(x0)) m = std::max(m, tg.red_degree(w));
        if (m > rep.max_red) {
            rep.max_red = m;
            rep.at_step = static_cast<int>(i) + 1;
        }
    }
    rep.complete = tg.live_count() <= 1;
    return rep;
}

/// Red-degree ceiling for sequences built from reflexive-path expressions with ell colours.
inline int red_degree_bound(int ell) { return 5 * std::max(1, ell) - 2; }

/// Contraction sequence of the value of an expression over a reflexive path: each subexpression
/// keeps one vertex per label; union merges label by label along the path, recolouring merges
/// the two classes per parameter vertex, and the root's classes are merged column by column.
inline ContractionSequence contraction_from_path_expression(const HcwExpression& expr) {
    require_valid(validate_ops(expr.ops, expr.ell, expr.param.n()));
    auto path = path_order(strip_loops(expr.param));
    if (expr.param.n() == 0 || path.empty()) throw InputError("parameter graph is not a path");
    for (int v = 0; v < expr.param.n(); ++v)
        if (!expr.param.has_loop(v)) throw InputError("parameter path is not reflexive at vertex " + std::to_string(v));
    int n = 0;
    for (const auto& op : expr.ops)
        if (op.kind == OpKind::Create) ++n;
    ContractionSequence seq;
    seq.n = n;
    int next_id = n;
    auto merge = [&](int a, int b) {
        seq.steps.emplace_back(a, b);
        return next_id++;
    };
    using Frame = std::map<Label, int>;  // (colour, pvertex) -> representative
    std::vector<Frame> frames;
    int created = 0;
    for (const auto& op : expr.ops) {
        switch (op.kind) {
            case OpKind::Create:
                frames.push_back({{Label{op.a, op.b}, created++}});
                break;
            case OpKind::AddEdges:
                break;
            case OpKind::Recolor: {
                auto& f = frames.back();
                for (int v : path) {
                    auto from = f.find({op.a, v});
                    if (from == f.end()) continue;
                    int rep = from->second;
                    f.erase(from);
                    auto [to, fresh] = f.try_emplace({op.b, v}, rep);
                    if (!fresh) to->second = merge(to->second, rep);
                }
                break;
            }
            case OpKind::Union: {
                auto right = std::move(frames.back());
                frames.pop_back();
                auto& left = frames.back();
                for (int v : path)
                    for (int c = 1; c <= expr.ell; ++c) {
                        auto r = right.find({c, v});
                        if (r == right.end()) continue;
                        auto [l, fresh] = left.try_emplace({c, v}, r->second);
                        if (!fresh) l->second = merge(l->second, r->second);
                    }
                break;
            }
        }
    }
    if (frames.empty()) return seq;
    int last = -1;
    for (int v : path) {
        int column = -1;
        for (int c = 1; c <= expr.ell; ++c) {
            auto it = frames.back().find({c, v});
            if (it == frames.back().end()) continue;
            column = column < 0 ? it->second : merge(column, it->second);
        }
        if (column < 0) continue;
        last = last < 0 ? column : merge(last, column);
    }
    return seq;
}

inline void write_contraction_sequence(std::ostream& out, const ContractionSequence& seq) {
    out << "contractions " << seq.n << "\n";
    for (std::size_t i = 0; i < seq.steps.size(); ++i)
        out << "c " << seq.steps[i].first << " " << seq.steps[i].second << " -> " << seq.n + static_cast<int>(i) << "\n";
}

/// `contractions n` then `c u v -> new` lines; new ids must run n, n+1, ...
inline ContractionSequence read_contraction_sequence(std::istream& in, const std::string& what = "contraction sequence") {
    LineReader r(in, what);
    if (!r.next() || r.keyword() != "contractions") r.fail("expected 'contractions <n>' header");
    r.expect_size(2);
    ContractionSequence seq;
    seq.n = r.integer(1);
    if (seq.n < 0) r.fail("negative vertex count");
    while (r.next()) {
        if (r.keyword() != "c") r.fail("unknown keyword '" + r.keyword() + "'");
        r.expect_size(5);
        if (r.tokens()[3] != "->") r.fail("expected 'c <u> <v> -> <new>'");
        int expect = seq.n + static_cast<int>(seq.steps.size());
        if (r.integer(4) != expect) r.fail("new vertex should be " + std::to_string(expect));
        seq.steps.emplace_back(r.integer(1), r.integer(2));
    }
    return seq;
}

inline ContractionSequence read_contraction_sequence_file(const std::string& path) {
    auto in = open_input(path);
    return read_contraction_sequence(in, path);
}

/// 3-subdivision of g placed inside S_n ⊠ S_n (star centre 0, leaf i+1 for index i).
struct StarSubdivision {
    int n = 0;
    LoopGraph subdivided;     // subdivide(g, 3)
    LoopGraph induced_image;  // subgraph of S_n ⊠ S_n induced on the image, in subdivided's ids
    ProductEmbedding embedding;
    std::vector<int> a1;      // original vertices
    std::vector<int> a2;      // middle subdivision vertices
    std::vector<int> b;       // subdivision vertices next to an original vertex
};

inline StarSubdivision star_subdivision_embedding(const LoopGraph& g) {
    if (!g.loop_free()) throw InputError("star_subdivision_embedding expects a simple graph");
    StarSubdivision out;
    const int m = g.n();
    auto edges = g.edges();
    out.n = std::max({1, m, static_cast<int>(edges.size())});
    out.subdivided = subdivide(g, 3);
    auto star = star_graph(out.n);
    out.embedding = {star, star, std::vector<ProductVertex>(static_cast<std::size_t>(out.subdivided.n()))};
    auto& image = out.embedding.image;
    for (int u = 0; u < m; ++u) {
        image[u] = {u + 1, 0};
        out.a1.push_back(u);
    }
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [u, v] = edges[k];
        int leaf = static_cast<int>(k) + 1;
        int first = m + 3 * static_cast<int>(k);
        image[first] = {u + 1, leaf};
        image[first + 1] = {0, leaf};
        image[first + 2] = {v + 1, leaf};
        out.b.push_back(first);
        out.a2.push_back(first + 1);
        out.b.push_back(first + 2);
    }
    out.induced_image = LoopGraph(out.subdivided.n());
    for (int x = 0; x < out.subdivided.n(); ++x)
        for (int y = x + 1; y < out.subdivided.n(); ++y)
            if (product_adjacent(star, star, image[x], image[y])) out.induced_image.add_edge(x, y);
    return out;
}

/// Edges of g with one end in `side_a` and the other in `side_b`.
inline LoopGraph bipartite_part(const LoopGraph& g, const std::vector<int>& side_a, const std::vector<int>& side_b) {
    std::vector<char> in_b(static_cast<std::size_t>(g.n()), 0);
    for (int v : side_b) in_b[v] = 1;
    LoopGraph out(g.n());
    for (int u : side_a)
        for (int w : g.neighbors(u))
            if (in_b[w]) out.add_edge(u, w);
    return out;
}

}  // namespace hps
