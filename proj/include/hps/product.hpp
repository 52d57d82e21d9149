#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "graph.hpp"

namespace hps {

/// Vertex (a, b) of a strong product; flat id is a * n(right) + b.
struct ProductVertex {
    int a = 0;
    int b = 0;
    friend bool operator==(const ProductVertex&, const ProductVertex&) = default;
    friend auto operator<=>(const ProductVertex&, const ProductVertex&) = default;
};

inline int product_id(ProductVertex v, int right_n) { return v.a * right_n + v.b; }

inline LoopGraph strong_product(const LoopGraph& g1, const LoopGraph& g2) {
    if (!g1.loop_free() || !g2.loop_free()) throw InputError("strong_product expects loop-free factors");
    const int n2 = g2.n();
    std::vector<Edge> e;
    for (int u = 0; u < g1.n(); ++u) {
        for (int x = 0; x < n2; ++x) {
            int id = u * n2 + x;
            for (int y : g2.neighbors(x))
                if (x < y) e.emplace_back(id, u * n2 + y);
            for (int v : g1.neighbors(u)) {
                if (v < u) continue;
                e.emplace_back(id, v * n2 + x);
                for (int y : g2.neighbors(x)) e.emplace_back(id, v * n2 + y);
            }
        }
    }
    return LoopGraph::from_edges(g1.n() * n2, std::move(e));
}

/// Adjacency in A ⊠ B without materializing it.
inline bool product_adjacent(const LoopGraph& left, const LoopGraph& right, ProductVertex x, ProductVertex y) {
    if (x == y) return false;
    bool ea = x.a == y.a || left.adjacent(x.a, y.a);
    bool eb = x.b == y.b || right.adjacent(x.b, y.b);
    return ea && eb;
}

struct ProductEmbedding {
    LoopGraph left;
    LoopGraph right;
    std::vector<ProductVertex> image;
};

enum class EmbeddingVerdict { Accept, SizeMismatch, OutOfRange, NonInjective, AdjacencyMismatch, LoopyFactor };

inline const char* to_string(EmbeddingVerdict v) {
    switch (v) {
        case EmbeddingVerdict::Accept: return "accept";
        case EmbeddingVerdict::SizeMismatch: return "size-mismatch";
        case EmbeddingVerdict::OutOfRange: return "out-of-range";
        case EmbeddingVerdict::NonInjective: return "non-injective";
        case EmbeddingVerdict::AdjacencyMismatch: return "adjacency-mismatch";
        case EmbeddingVerdict::LoopyFactor: return "loopy-factor";
    }
    return "?";
}

struct EmbeddingReport {
    EmbeddingVerdict verdict = EmbeddingVerdict::Accept;
    int x = -1;  // witness vertex (or pair x, y)
    int y = -1;
    bool accepted() const { return verdict == EmbeddingVerdict::Accept; }
    std::string describe() const {
        std::ostringstream os;
        os << to_string(verdict);
        if (x >= 0) os << " " << x;
        if (y >= 0) os << " " << y;
        return os.str();
    }
};

/// Checks that `emb.image` is an isomorphism of g onto an induced subgraph of left ⊠ right.
inline EmbeddingReport check_induced_embedding(const LoopGraph& g, const ProductEmbedding& emb) {
    if (!emb.left.loop_free() || !emb.right.loop_free()) return {EmbeddingVerdict::LoopyFactor};
    if (static_cast<int>(emb.image.size()) != g.n()) return {EmbeddingVerdict::SizeMismatch};
    const long long rn = emb.right.n();
    std::vector<long long> flat(emb.image.size());
    for (int x = 0; x < g.n(); ++x) {
        auto p = emb.image[x];
        if (p.a < 0 || p.a >= emb.left.n() || p.b < 0 || p.b >= emb.right.n()) return {EmbeddingVerdict::OutOfRange, x};
        flat[x] = p.a * rn + p.b;
    }
    std::vector<std::pair<long long, int>> sorted;
    sorted.reserve(flat.size());
    for (int x = 0; x < g.n(); ++x) sorted.emplace_back(flat[x], x);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].first == sorted[i - 1].first) return {EmbeddingVerdict::NonInjective, sorted[i - 1].second, sorted[i].second};

    // Only pairs landing within distance one in both coordinates can be product-adjacent.
    // Bucket images by left coordinate so each vertex only inspects its closed left neighbourhood.
    std::vector<std::vector<int>> by_left(static_cast<std::size_t>(emb.left.n()));
    for (int x = 0; x < g.n(); ++x) by_left[emb.image[x].a].push_back(x);
    std::vector<std::size_t> product_degree(static_cast<std::size_t>(g.n()), 0);
    for (int x = 0; x < g.n(); ++x) {
        auto px = emb.image[x];
        auto scan = [&](int a) {
            for (int y : by_left[a]) {
                if (y == x) continue;
                if (product_adjacent(emb.left, emb.right, px, emb.image[y])) {
                    if (!g.adjacent(x, y)) return std::optional<int>(y);
                    ++product_degree[x];
                }
            }
            return std::optional<int>();
        };
        if (auto w = scan(px.a)) return {EmbeddingVerdict::AdjacencyMismatch, std::min(x, *w), std::max(x, *w)};
        for (int a : emb.left.neighbors(px.a))
            if (auto w = scan(a)) return {EmbeddingVerdict::AdjacencyMismatch, std::min(x, *w), std::max(x, *w)};
    }
    // Every product edge inside the image is a g-edge; g-edges mapping to non-edges remain.
    for (int x = 0; x < g.n(); ++x) {
        if (product_degree[x] == static_cast<std::size_t>(g.degree(x))) continue;
        for (int y : g.neighbors(x))
            if (!product_adjacent(emb.left, emb.right, emb.image[x], emb.image[y]))
                return {EmbeddingVerdict::AdjacencyMismatch, std::min(x, y), std::max(x, y)};
    }
    return {};
}

/// Identity-like embedding of A ⊠ B into itself under the row-major encoding.
inline ProductEmbedding identity_product_embedding(const LoopGraph& left, const LoopGraph& right) {
    ProductEmbedding emb{left, right, {}};
    for (int a = 0; a < left.n(); ++a)
        for (int b = 0; b < right.n(); ++b) emb.image.push_back({a, b});
    return emb;
}

}  // namespace hps
