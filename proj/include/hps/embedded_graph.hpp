#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "graph.hpp"
#include "graph_io.hpp"

namespace hps {

/// Plane graph as a rotation system. rotation[v] lists the neighbours of v counter-clockwise.
/// The face left of dart u->v continues with v->w where w precedes u in rotation[v].
/// `outer` holds three consecutive vertices of the outer face, traversed with the face on its left.
struct EmbeddedGraph {
    LoopGraph graph;
    std::vector<std::vector<int>> rotation;
    std::array<int, 3> outer{0, 0, 0};

    int n() const { return graph.n(); }

    int position(int v, int w) const {
        const auto& r = rotation[v];
        auto it = std::find(r.begin(), r.end(), w);
        if (it == r.end()) throw InputError("vertex " + std::to_string(w) + " is not in the rotation of " + std::to_string(v));
        return static_cast<int>(it - r.begin());
    }

    /// Neighbour of v just counter-clockwise after w.
    int succ(int v, int w) const {
        const auto& r = rotation[v];
        return r[(position(v, w) + 1) % r.size()];
    }

    /// Neighbour of v just clockwise after w.
    int pred(int v, int w) const {
        const auto& r = rotation[v];
        return r[(position(v, w) + r.size() - 1) % r.size()];
    }

    /// Vertex following v on the face left of u->v.
    int face_next(int u, int v) const { return pred(v, u); }

    /// Vertices of the face left of u->v in traversal order, starting with u.
    std::vector<int> face(int u, int v) const {
        std::vector<int> walk;
        int a = u, b = v;
        do {
            walk.push_back(a);
            int c = face_next(a, b);
            a = b;
            b = c;
        } while (a != u || b != v);
        return walk;
    }

    /// Every face once, each as its traversal starting at its first dart in (u, rotation) order.
    std::vector<std::vector<int>> faces() const {
        std::vector<std::vector<char>> used(static_cast<std::size_t>(n()));
        for (int v = 0; v < n(); ++v) used[v].assign(rotation[v].size(), 0);
        std::vector<std::vector<int>> out;
        for (int u = 0; u < n(); ++u)
            for (std::size_t i = 0; i < rotation[u].size(); ++i) {
                if (used[u][i]) continue;
                auto walk = face(u, rotation[u][i]);
                for (std::size_t k = 0; k < walk.size(); ++k) {
                    int a = walk[k], b = walk[(k + 1) % walk.size()];
                    used[a][position(a, b)] = 1;
                }
                out.push_back(std::move(walk));
            }
        return out;
    }

    bool is_triangulation() const {
        if (n() < 3) return false;
        for (const auto& f : faces())
            if (f.size() != 3) return false;
        return true;
    }
};

/// Throws InputError unless the rotations match the graph, the graph is connected and
/// simple, Euler's formula holds and `outer` is three consecutive vertices of a face.
inline void validate_embedding(const EmbeddedGraph& eg) {
    const auto& g = eg.graph;
    if (!g.loop_free()) throw InputError("embedded graph has loops");
    if (g.n() < 3) throw InputError("embedded graph needs at least 3 vertices");
    if (!is_connected(g)) throw InputError("embedded graph is disconnected");
    if (static_cast<int>(eg.rotation.size()) != g.n()) throw InputError("rotation count differs from vertex count");
    for (int v = 0; v < g.n(); ++v) {
        auto r = eg.rotation[v];
        std::sort(r.begin(), r.end());
        if (!std::ranges::equal(r, g.neighbors(v))) throw InputError("rotation of vertex " + std::to_string(v) + " is not a permutation of its neighbours");
    }
    long long f = static_cast<long long>(eg.faces().size());
    long long euler = g.n() - static_cast<long long>(g.edge_count()) + f;
    if (euler != 2) throw InputError("rotation system is not planar (Euler characteristic " + std::to_string(euler) + ")");
    auto [a, b, c] = eg.outer;
    for (int v : {a, b, c})
        if (v < 0 || v >= g.n()) throw InputError("outer face vertex out of range");
    if (!g.adjacent(a, b) || !g.adjacent(b, c) || eg.face_next(a, b) != c) throw InputError("outer vertices are not consecutive on a face");
}

/// Accepts the outer triple in either direction and stores it face-left.
inline void normalize_outer(EmbeddedGraph& eg) {
    auto [a, b, c] = eg.outer;
    const auto& g = eg.graph;
    bool forward = g.adjacent(a, b) && g.adjacent(b, c) && eg.face_next(a, b) == c;
    if (!forward && g.adjacent(c, b) && g.adjacent(b, a) && eg.face_next(c, b) == a) eg.outer = {c, b, a};
}

/// Rotation system from a straight-line drawing.
inline EmbeddedGraph embedding_from_coordinates(const LoopGraph& g, const std::vector<double>& x, const std::vector<double>& y, std::array<int, 3> outer) {
    EmbeddedGraph eg{g, std::vector<std::vector<int>>(static_cast<std::size_t>(g.n())), outer};
    for (int v = 0; v < g.n(); ++v) {
        auto& r = eg.rotation[v];
        r.assign(g.neighbors(v).begin(), g.neighbors(v).end());
        auto angle = [&](int w) { return std::atan2(y[w] - y[v], x[w] - x[v]); };
        std::sort(r.begin(), r.end(), [&](int p, int q) { return angle(p) < angle(q); });
    }
    normalize_outer(eg);
    validate_embedding(eg);
    return eg;
}

namespace detail {

inline void insert_after(std::vector<int>& r, int anchor, std::initializer_list<int> items) {
    auto it = std::find(r.begin(), r.end(), anchor);
    r.insert(it + 1, items.begin(), items.end());
}

inline int add_vertex(EmbeddedGraph& eg) {
    eg.rotation.emplace_back();
    return eg.graph.add_vertex();
}

}  // namespace detail

struct Triangulation {
    EmbeddedGraph embedded;
    int original_n = 0;  // vertices below this id are the input's
};

/// Adds vertices only: an apex inside each face bounded by a cycle of length >= 4, and a ring
/// plus apex inside faces whose walk repeats a vertex. The input stays induced.
inline Triangulation triangulate(const EmbeddedGraph& input) {
    validate_embedding(input);
    Triangulation out{input, input.n()};
    auto& eg = out.embedded;
    auto faces = input.faces();
    for (const auto& f : faces) {
        const int len = static_cast<int>(f.size());
        if (len == 3) continue;
        auto sorted = f;
        std::sort(sorted.begin(), sorted.end());
        bool simple = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        // the face angle at f[i] runs counter-clockwise from f[i+1] to f[i-1]
        if (simple) {
            int z = detail::add_vertex(eg);
            for (int i = 0; i < len; ++i) {
                int v = f[i];
                detail::insert_after(eg.rotation[v], f[(i + 1) % len], {z});
                eg.graph.add_edge(v, z);
            }
            eg.rotation[z] = f;
            continue;
        }
        std::vector<int> ring(static_cast<std::size_t>(len));
        for (auto& r : ring) r = detail::add_vertex(eg);
        int z = detail::add_vertex(eg);
        for (int i = 0; i < len; ++i) {
            int v = f[(i + 1) % len];
            int next = f[(i + 2) % len];
            detail::insert_after(eg.rotation[v], next, {ring[(i + 1) % len], ring[i]});
        }
        for (int i = 0; i < len; ++i) {
            int r = ring[i], rn = ring[(i + 1) % len], rp = ring[(i + len - 1) % len];
            eg.rotation[r] = {rn, z, rp, f[i], f[(i + 1) % len]};
            eg.graph.add_edge(r, f[i]);
            eg.graph.add_edge(r, f[(i + 1) % len]);
            eg.graph.add_edge(r, rn);
            eg.graph.add_edge(r, z);
        }
        eg.rotation[z] = ring;
    }
    auto [a, b, c] = input.outer;
    (void)c;
    auto walk = eg.face(a, b);
    eg.outer = {walk[0], walk[1], walk[2]};
    validate_embedding(eg);
    if (!eg.is_triangulation()) throw std::logic_error("triangulate left a non-triangular face");
    return out;
}

/// Random triangulation on n >= 3 vertices: stacked insertions into random faces followed by
/// random edge flips. Deterministic for a given seed.
inline EmbeddedGraph random_triangulation(int n, std::uint64_t seed) {
    if (n < 3) throw InputError("random_triangulation needs n >= 3");
    std::mt19937_64 rng(seed);
    EmbeddedGraph eg{LoopGraph(3), {{1, 2}, {2, 0}, {0, 1}}, {0, 2, 1}};
    eg.graph.add_edge(0, 1);
    eg.graph.add_edge(1, 2);
    eg.graph.add_edge(0, 2);
    auto random_dart = [&] {
        std::vector<std::pair<int, int>> darts;
        for (int u = 0; u < eg.n(); ++u)
            for (int v : eg.rotation[u]) darts.emplace_back(u, v);
        return darts[std::uniform_int_distribution<std::size_t>(0, darts.size() - 1)(rng)];
    };
    for (int x = 3; x < n; ++x) {
        auto [a, b] = random_dart();
        int c = eg.face_next(a, b);
        detail::add_vertex(eg);
        detail::insert_after(eg.rotation[a], b, {x});
        detail::insert_after(eg.rotation[b], c, {x});
        detail::insert_after(eg.rotation[c], a, {x});
        eg.rotation[x] = {a, b, c};
        for (int v : {a, b, c}) eg.graph.add_edge(v, x);
    }
    // flips rebuild the graph at the end; adjacency is tracked through the rotations
    auto adjacent = [&](int u, int v) { return std::find(eg.rotation[u].begin(), eg.rotation[u].end(), v) != eg.rotation[u].end(); };
    const int flips = n >= 4 ? 2 * n : 0;
    for (int i = 0; i < flips; ++i) {
        auto [u, v] = random_dart();
        int w = eg.face_next(u, v);
        int x = eg.face_next(v, u);
        if (w == x || adjacent(w, x) || eg.rotation[u].size() < 4 || eg.rotation[v].size() < 4) continue;
        detail::insert_after(eg.rotation[w], u, {x});
        detail::insert_after(eg.rotation[x], v, {w});
        auto& ru = eg.rotation[u];
        ru.erase(std::find(ru.begin(), ru.end(), v));
        auto& rv = eg.rotation[v];
        rv.erase(std::find(rv.begin(), rv.end(), u));
    }
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v : eg.rotation[u])
            if (u < v) edges.emplace_back(u, v);
    eg.graph = LoopGraph::from_edges(n, std::move(edges));
    auto walk = eg.face(0, eg.rotation[0][0]);
    eg.outer = {walk[0], walk[1], walk[2]};
    validate_embedding(eg);
    return eg;
}

/// Graph format plus `rot v w1 w2 ...` (counter-clockwise) and `outer a b c` lines.
inline void write_embedded_graph(std::ostream& out, const EmbeddedGraph& eg) {
    write_graph(out, eg.graph);
    for (int v = 0; v < eg.n(); ++v) {
        out << "rot " << v;
        for (int w : eg.rotation[v]) out << " " << w;
        out << "\n";
    }
    out << "outer " << eg.outer[0] << " " << eg.outer[1] << " " << eg.outer[2] << "\n";
}

inline EmbeddedGraph read_embedded_graph(std::istream& in, const std::string& what = "embedded graph") {
    LineReader r(in, what);
    if (!r.next() || r.keyword() != "graph") r.fail("expected 'graph <n>' header");
    r.expect_size(2);
    int n = r.integer(1);
    if (n < 0) r.fail("negative vertex count");
    EmbeddedGraph eg;
    eg.rotation.assign(static_cast<std::size_t>(n), {});
    std::vector<char> has_rot(static_cast<std::size_t>(n), 0);
    bool has_outer = false;
    eg.graph = read_graph_body(r, n, [&](LineReader& line) {
        if (line.keyword() == "rot") {
            int v = line.integer(1);
            if (v < 0 || v >= n) line.fail("rotation vertex out of range");
            if (has_rot[v]) line.fail("rotation given twice");
            has_rot[v] = 1;
            for (std::size_t i = 2; i < line.size(); ++i) eg.rotation[v].push_back(line.integer(i));
            return true;
        }
        if (line.keyword() == "outer") {
            line.expect_size(4);
            eg.outer = {line.integer(1), line.integer(2), line.integer(3)};
            has_outer = true;
            return true;
        }
        return false;
    });
    if (!has_outer) throw InputError(what + ": missing 'outer' line");
    for (int v = 0; v < n; ++v)
        if (!has_rot[v]) throw InputError(what + ": missing rotation for vertex " + std::to_string(v));
    for (int v : eg.outer)
        if (v < 0 || v >= n) throw InputError(what + ": outer vertex out of range");
    normalize_outer(eg);
    validate_embedding(eg);
    return eg;
}

inline EmbeddedGraph read_embedded_graph_file(const std::string& path) {
    auto in = open_input(path);
    return read_embedded_graph(in, path);
}

}  // namespace hps
