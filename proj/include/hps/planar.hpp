#pragma once

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "embedded_graph.hpp"
#include "graph.hpp"
#include "graph_io.hpp"
#include "graph_ops.hpp"
#include "product.hpp"
#include "tree_decomposition.hpp"

namespace hps {

/// Cycle of processed vertices together with the unprocessed vertices it encloses.
struct CycleFrame {
    std::vector<int> cycle;
    std::vector<int> interior;  // sorted
};

/// Outcome of splitting one frame: up to three new vertical paths (top end first), the
/// frames left over, and the enclosing path the second extra bag may omit (-1 if unused).
struct CycleSplit {
    bool degenerate = false;
    std::array<std::vector<int>, 3> paths;
    std::vector<CycleFrame> children;
    int dropped_path = -1;
};

namespace detail {

/// Maximal runs of one path id around the cycle (a path may give several), split until there
/// are at least three.
struct Arc {
    int path;
    std::vector<int> verts;
};

inline std::vector<Arc> cycle_arcs(const std::vector<int>& cycle, const std::vector<int>& path_of) {
    const int len = static_cast<int>(cycle.size());
    int start = 0;
    for (int i = 0; i < len; ++i)
        if (path_of[cycle[(i + len - 1) % len]] != path_of[cycle[i]]) {
            start = i;
            break;
        }
    std::vector<Arc> arcs;
    for (int k = 0; k < len; ++k) {
        int v = cycle[(start + k) % len];
        if (path_of[v] < 0) throw std::logic_error("cycle vertex " + std::to_string(v) + " lies on no path");
        if (arcs.empty() || arcs.back().path != path_of[v]) arcs.push_back({path_of[v], {}});
        arcs.back().verts.push_back(v);
    }
    if (arcs.size() > 6) throw std::logic_error("cycle covered by " + std::to_string(arcs.size()) + " path pieces");
    while (arcs.size() < 3) {
        auto it = std::find_if(arcs.begin(), arcs.end(), [](const Arc& a) { return a.verts.size() >= 2; });
        std::size_t half = (it->verts.size() + 1) / 2;
        Arc tail{it->path, std::vector<int>(it->verts.begin() + static_cast<std::ptrdiff_t>(half), it->verts.end())};
        it->verts.resize(half);
        arcs.insert(it + 1, std::move(tail));
    }
    return arcs;
}

/// Is y strictly inside the angle at v that runs counter-clockwise from `next` to `prev`?
inline bool in_wedge(const EmbeddedGraph& eg, int v, int prev, int next, int y) {
    const int deg = static_cast<int>(eg.rotation[v].size());
    int pn = eg.position(v, next);
    int dy = (eg.position(v, y) - pn + deg) % deg;
    int dp = (eg.position(v, prev) - pn + deg) % deg;
    return dy > 0 && dy < dp;
}

/// Faces of G[W] holding the components of G[region \ W], one frame per component.
inline std::vector<CycleFrame> enclosed_frames(const EmbeddedGraph& eg, const std::vector<char>& in_w, const std::vector<int>& region) {
    const auto& g = eg.graph;
    std::vector<char> free(static_cast<std::size_t>(g.n()), 0);
    for (int v : region)
        if (!in_w[v]) free[v] = 1;
    auto pred_w = [&](int v, int u) {
        int w = u;
        do w = eg.pred(v, w);
        while (!in_w[w]);
        return w;
    };
    std::vector<CycleFrame> out;
    std::vector<char> done(free.size(), 0);
    for (int s : region) {
        if (!free[s] || done[s]) continue;
        CycleFrame f;
        std::vector<int> stack{s};
        done[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            f.interior.push_back(v);
            for (int w : g.neighbors(v))
                if (free[w] && !done[w]) {
                    done[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(f.interior.begin(), f.interior.end());
        int l = -1, w = -1;
        for (int v : f.interior) {
            for (int x : g.neighbors(v))
                if (in_w[x]) {
                    l = v;
                    w = x;
                    break;
                }
            if (w >= 0) break;
        }
        if (w < 0) throw std::logic_error("component without attachment");
        int b = l;
        do b = eg.succ(w, b);
        while (!in_w[b]);
        int pu = b, pv = w;
        do {
            f.cycle.push_back(pv);
            int nx = pred_w(pv, pu);
            pu = pv;
            pv = nx;
            if (f.cycle.size() > in_w.size()) throw std::logic_error("face walk does not close");
        } while (pu != b || pv != w);
        auto cyc = f.cycle;
        std::sort(cyc.begin(), cyc.end());
        if (std::adjacent_find(cyc.begin(), cyc.end()) != cyc.end() || cyc.size() < 3) throw std::logic_error("enclosing face is not a cycle");
        std::vector<int> attach;
        for (int v : f.interior)
            for (int x : g.neighbors(v))
                if (in_w[x]) attach.push_back(x);
        std::sort(attach.begin(), attach.end());
        attach.erase(std::unique(attach.begin(), attach.end()), attach.end());
        if (attach != cyc) throw std::logic_error("enclosing cycle differs from the component's neighbourhood");
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace detail

/// One step of the recursive decomposition. `path_of` maps processed vertices to their path
/// (-1 elsewhere); the frame's cycle must consist of processed vertices only.
inline CycleSplit decompose_cycle(const EmbeddedGraph& eg, const BfsStructure& bfs, CycleFrame frame, const std::vector<int>& path_of) {
    const auto& g = eg.graph;
    const int n = g.n();
    std::vector<char> in_k(static_cast<std::size_t>(n), 0), on_c(static_cast<std::size_t>(n), 0);
    for (int v : frame.interior) in_k[v] = 1;
    for (int v : frame.cycle) on_c[v] = 1;
    if (frame.interior.empty()) throw std::logic_error("frame with empty interior");

    auto& cyc = frame.cycle;
    const int len = static_cast<int>(cyc.size());
    auto prev_of = [&](int i) { return cyc[(i + len - 1) % len]; };
    auto next_of = [&](int i) { return cyc[(i + 1) % len]; };
    // orient so that the interior lies counter-clockwise from next to prev
    for (int i = 0; i < len; ++i) {
        int inner = -1;
        for (int y : g.neighbors(cyc[i]))
            if (in_k[y]) inner = y;
        if (inner < 0) continue;
        if (!detail::in_wedge(eg, cyc[i], prev_of(i), next_of(i), inner)) std::reverse(cyc.begin(), cyc.end());
        break;
    }

    CycleSplit split;
    bool chord = false;
    for (int i = 0; i < len && !chord; ++i)
        for (int y : g.neighbors(cyc[i]))
            if (on_c[y] && y != prev_of(i) && y != next_of(i) && detail::in_wedge(eg, cyc[i], prev_of(i), next_of(i), y)) {
                chord = true;
                break;
            }
    if (chord) {
        split.degenerate = true;
        split.children = detail::enclosed_frames(eg, on_c, frame.interior);
        return split;
    }

    auto arcs = detail::cycle_arcs(cyc, path_of);
    const int m = static_cast<int>(arcs.size());
    std::vector<int> arc_of(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < m; ++i)
        for (int v : arcs[i].verts) arc_of[v] = i;

    // upward path of each interior vertex, ending at the first vertex adjacent to the cycle
    std::vector<int> top(static_cast<std::size_t>(n), -1), colour(static_cast<std::size_t>(n), -1), rlen(static_cast<std::size_t>(n), 0);
    std::vector<int> anchor(static_cast<std::size_t>(n), -1);
    auto touches_c = [&](int v) {
        for (int y : g.neighbors(v))
            if (on_c[y]) return true;
        return false;
    };
    for (int u : frame.interior) {
        int r = u, count = 1;
        while (!touches_c(r)) {
            r = bfs.parent[r];
            if (r < 0 || !in_k[r]) throw std::logic_error("upward path leaves the interior before reaching the cycle");
            ++count;
        }
        top[u] = r;
        rlen[u] = count;
    }
    for (int u : frame.interior) {
        int best = -1;
        for (int y : g.neighbors(top[u]))
            if (on_c[y] && (best < 0 || arc_of[y] < arc_of[best] || (arc_of[y] == arc_of[best] && y < best))) best = y;
        colour[u] = arc_of[best];
        anchor[u] = best;
    }
    for (int v : cyc) colour[v] = arc_of[v];
    auto rplus_size = [&](int u) { return in_k[u] ? rlen[u] + 1 : 1; };
    auto upward = [&](int u) {  // R[u], bottom first
        std::vector<int> out;
        if (!in_k[u]) return out;
        for (int r = u;; r = bfs.parent[r]) {
            out.push_back(r);
            if (r == top[u]) break;
        }
        return out;
    };
    auto upward_plus = [&](int u) {
        auto out = upward(u);
        out.push_back(in_k[u] ? anchor[u] : u);
        return out;
    };

    // edges between colour classes through the interior
    std::set<std::pair<int, int>> realized;
    for (int a : frame.interior)
        for (int b : g.neighbors(a))
            if ((in_k[b] || on_c[b]) && colour[a] != colour[b]) realized.insert({std::min(colour[a], colour[b]), std::max(colour[a], colour[b])});
    auto cyclic_neighbours = [&](int i, int j) { return (j - i + m) % m == 1 || (i - j + m) % m == 1; };
    auto contracted_edge = [&](int i, int j) { return cyclic_neighbours(i, j) || realized.count({std::min(i, j), std::max(i, j)}) > 0; };

    std::vector<int> q7, q8, q9;
    if (m <= 5) {
        std::pair<int, int> pick{-1, -1};
        for (auto pr : realized)
            if (m == 3 || !cyclic_neighbours(pr.first, pr.second)) {
                pick = pr;
                break;
            }
        if (pick.first < 0) throw std::logic_error("no chord in the contracted cycle");
        std::tuple<int, int, int> best{1 << 30, -1, -1};
        for (int a : frame.interior)
            for (int b : g.neighbors(a)) {
                if (!in_k[b] && !on_c[b]) continue;
                int u7 = a, u8 = b;
                if (colour[u7] != pick.first) std::swap(u7, u8);
                if (colour[u7] != pick.first || colour[u8] != pick.second) continue;
                best = std::min(best, std::tuple<int, int, int>{rplus_size(u7) + rplus_size(u8), u7, u8});
            }
        auto [size, u7, u8] = best;
        (void)size;
        if (u7 < 0) throw std::logic_error("chord realized by no edge");
        q7 = upward(u7);
        q8 = upward(u8);
    } else {
        // a triangle of the contracted graph sharing at most one edge with its outer cycle
        std::array<int, 3> tri{-1, -1, -1};
        for (int a = 0; a < m && tri[0] < 0; ++a)
            for (int b = a + 1; b < m && tri[0] < 0; ++b)
                for (int c = b + 1; c < m; ++c) {
                    if (!contracted_edge(a, b) || !contracted_edge(b, c) || !contracted_edge(a, c)) continue;
                    int outer = cyclic_neighbours(a, b) + cyclic_neighbours(b, c) + cyclic_neighbours(a, c);
                    if (outer > 1) continue;
                    tri = {a, b, c};
                    if (cyclic_neighbours(a, b)) tri = {c, a, b};
                    else if (cyclic_neighbours(a, c)) tri = {b, a, c};
                    break;
                }
        if (tri[0] < 0) throw std::logic_error("no inner triangle in the contracted hexagon");
        auto dist = [&](int i, int j) { return std::min((i - j + m) % m, (j - i + m) % m); };
        if (dist(tri[0], tri[2]) != 2) std::swap(tri[1], tri[2]);
        const int x7 = tri[0], x8 = tri[1], x9 = tri[2];
        // a facial triangle of G carrying the three colours
        std::array<int, 3> face{-1, -1, -1};
        for (int a : frame.interior)
            for (int b : g.neighbors(a)) {
                int c = eg.face_next(a, b);
                std::array<int, 3> t{-1, -1, -1};
                for (int v : {a, b, c}) {
                    if (!in_k[v] && !on_c[v]) continue;
                    if (colour[v] == x7) t[0] = v;
                    else if (colour[v] == x8) t[1] = v;
                    else if (colour[v] == x9) t[2] = v;
                }
                if (t[0] < 0 || t[1] < 0 || t[2] < 0) continue;
                if (face[0] < 0 || t < face) face = t;
            }
        if (face[0] < 0) throw std::logic_error("no facial triangle over the inner triangle");
        auto r7 = upward_plus(face[0]);
        auto r7_strict = upward(face[0]);
        auto lowest_neighbour = [&](const std::vector<int>& list, int v) {
            // two cycle vertices are never joined inside the frame here
            for (int x : list)
                if (g.adjacent(x, v) && !(on_c[x] && on_c[v])) return x;
            return -1;
        };
        std::tuple<int, int, int, int> best{1 << 30, 1 << 30, -1, -1};
        for (int u8 : upward_plus(face[1])) {
            if (lowest_neighbour(r7, u8) < 0) continue;
            auto r8 = upward(u8);
            for (int u9 : upward_plus(face[2])) {
                if (lowest_neighbour(r7_strict, u9) < 0 && lowest_neighbour(r8, u9) < 0) continue;
                best = std::min(best, std::tuple<int, int, int, int>{rplus_size(u8), rplus_size(u9), u8, u9});
            }
        }
        auto [s8, s9, u8, u9] = best;
        (void)s8;
        (void)s9;
        if (u8 < 0) throw std::logic_error("no admissible attachment for the second and third paths");
        int v8 = lowest_neighbour(r7, u8);
        int v9 = lowest_neighbour(r7_strict, u9);
        int u7 = v8;
        if (v9 >= 0 && std::find(r7.begin(), r7.end(), v9) < std::find(r7.begin(), r7.end(), v8)) u7 = v9;
        q7 = upward(u7);
        q8 = upward(u8);
        q9 = upward(u9);
    }

    std::vector<char> in_w = on_c;
    for (const auto* q : {&q7, &q8, &q9})
        for (int v : *q) {
            if (in_w[v]) throw std::logic_error("new paths overlap");
            in_w[v] = 1;
        }
    split.children = detail::enclosed_frames(eg, in_w, frame.interior);
    if (!q9.empty()) {
        std::vector<char> in_q9(static_cast<std::size_t>(n), 0);
        for (int v : q9) in_q9[v] = 1;
        for (const auto& arc : arcs) {
            bool clash = false;
            for (int v : cyc)
                for (int y : g.neighbors(v))
                    if (path_of[v] == arc.path && in_q9[y]) clash = true;
            for (const auto& child : split.children) {
                bool has9 = false, hasp = false;
                for (int v : child.cycle) {
                    has9 |= in_q9[v] != 0;
                    hasp |= path_of[v] == arc.path;
                }
                if (has9 && hasp) clash = true;
            }
            if (!clash) {
                split.dropped_path = arc.path;
                break;
            }
        }
        if (split.dropped_path < 0) throw std::logic_error("no enclosing path can leave the second bag");
    }
    for (auto* q : {&q7, &q8, &q9}) std::reverse(q->begin(), q->end());
    split.paths = {q7, q8, q9};
    return split;
}

/// Paths of a BFS tree partitioning V(G), slots 1..5 per path vertex, the factor M with one
/// 5-clique per path, and a decomposition of M whose bags are unions of at most eight cliques.
struct NiceProductStructure {
    int root = 0;
    int levels = 0;                       // vertex count of the path factor
    std::vector<std::vector<int>> paths;  // top (closest to the root) first
    std::vector<int> slot;                // 1..5
    LoopGraph m;
    TreeDecomposition td;
};

/// One recursion step: the cycle, the paths covering it, the decomposition node exposing
/// them, and what the split produced.
struct FrameRecord {
    std::vector<int> cycle;
    std::vector<int> paths;
    int node = -1;
    bool degenerate = false;
    std::array<std::vector<int>, 3> new_paths;
    std::vector<std::vector<int>> child_cycles;
    int dropped_path = -1;
};

struct PlanarResult {
    EmbeddedGraph triangulated;
    int original_n = 0;
    NiceProductStructure structure;
    ProductEmbedding embedding;   // all vertices of the triangulation
    ProductEmbedding restricted;  // the input's vertices only
    std::vector<FrameRecord> frames;
};

inline int path_vertex_slot(const std::vector<int>& path, std::size_t i, int level) {
    if (i == 0) return 1;
    if (i + 1 == path.size()) return 5;
    return 2 + level % 3;
}

inline ProductEmbedding nice_embedding(const NiceProductStructure& nps, const std::vector<int>& level) {
    ProductEmbedding emb{path_graph(nps.levels), nps.m, std::vector<ProductVertex>(nps.slot.size())};
    for (std::size_t p = 0; p < nps.paths.size(); ++p)
        for (int v : nps.paths[p]) emb.image[v] = {level[v], 5 * static_cast<int>(p) + nps.slot[v] - 1};
    return emb;
}

enum class NiceCondition { Ok, Partition, Vertical, FactorSize, Slots, Placement, Alignment, Thickness, Decomposition, Embedding };

inline const char* to_string(NiceCondition c) {
    switch (c) {
        case NiceCondition::Ok: return "ok";
        case NiceCondition::Partition: return "paths do not partition the vertices";
        case NiceCondition::Vertical: return "path is not vertical";
        case NiceCondition::FactorSize: return "(i) factor size is not 5 per path";
        case NiceCondition::Slots: return "(iii) slots repeat within three consecutive path vertices";
        case NiceCondition::Placement: return "(ii) image is not (level, path slot)";
        case NiceCondition::Alignment: return "bag is not a union of path cliques";
        case NiceCondition::Thickness: return "bag covers more than 8 paths";
        case NiceCondition::Decomposition: return "decomposition of the factor is invalid";
        case NiceCondition::Embedding: return "embedding is not induced";
    }
    return "?";
}

struct NiceReport {
    NiceCondition condition = NiceCondition::Ok;
    int witness = -1;
    std::string detail;
    bool ok() const { return condition == NiceCondition::Ok; }
    std::string describe() const {
        std::string s = to_string(condition);
        if (witness >= 0) s += " at " + std::to_string(witness);
        if (!detail.empty()) s += ": " + detail;
        return s;
    }
};

inline NiceReport verify_nice_structure(const LoopGraph& g, const NiceProductStructure& nps, const ProductEmbedding& emb) {
    const int n = g.n();
    if (static_cast<int>(nps.slot.size()) != n) return {NiceCondition::Partition, -1, "slot count differs from vertex count"};
    std::vector<int> path_of(static_cast<std::size_t>(n), -1);
    for (std::size_t p = 0; p < nps.paths.size(); ++p) {
        if (nps.paths[p].empty()) return {NiceCondition::Partition, static_cast<int>(p), "empty path"};
        for (int v : nps.paths[p]) {
            if (v < 0 || v >= n || path_of[v] >= 0) return {NiceCondition::Partition, v, {}};
            path_of[v] = static_cast<int>(p);
        }
    }
    for (int v = 0; v < n; ++v)
        if (path_of[v] < 0) return {NiceCondition::Partition, v, "vertex on no path"};
    if (nps.root < 0 || nps.root >= n) return {NiceCondition::Vertical, nps.root, "root out of range"};
    auto level = bfs_distances(g, nps.root);
    for (int v = 0; v < n; ++v)
        if (level[v] < 0) return {NiceCondition::Vertical, v, "unreachable from the root"};
    for (std::size_t p = 0; p < nps.paths.size(); ++p) {
        const auto& path = nps.paths[p];
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (!g.adjacent(path[i], path[i + 1]) || level[path[i + 1]] != level[path[i]] + 1) return {NiceCondition::Vertical, static_cast<int>(p), {}};
    }
    if (nps.m.n() != 5 * static_cast<int>(nps.paths.size())) return {NiceCondition::FactorSize, nps.m.n(), {}};
    for (const auto& path : nps.paths)
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (nps.slot[path[i]] < 1 || nps.slot[path[i]] > 5) return {NiceCondition::Slots, path[i], "slot out of range"};
            for (std::size_t j = i + 1; j < std::min(path.size(), i + 3); ++j)
                if (nps.slot[path[i]] == nps.slot[path[j]]) return {NiceCondition::Slots, path[i], {}};
        }
    int max_level = *std::max_element(level.begin(), level.end());
    if (emb.left.n() <= max_level || emb.left.edge_count() != static_cast<std::size_t>(emb.left.n() - 1)) return {NiceCondition::Placement, -1, "path factor too short"};
    for (int i = 0; i + 1 < emb.left.n(); ++i)
        if (!emb.left.adjacent(i, i + 1)) return {NiceCondition::Placement, -1, "left factor is not the path in id order"};
    if (static_cast<int>(emb.image.size()) != n || emb.right.n() != nps.m.n()) return {NiceCondition::Placement, -1, "embedding size mismatch"};
    for (int v = 0; v < n; ++v)
        if (emb.image[v] != ProductVertex{level[v], 5 * path_of[v] + nps.slot[v] - 1}) return {NiceCondition::Placement, v, {}};
    for (int t = 0; t < nps.td.nodes(); ++t) {
        const auto& bag = nps.td.bags[t];
        std::set<int> blocks;
        for (int x : bag) blocks.insert(x / 5);
        if (bag.size() != 5 * blocks.size()) return {NiceCondition::Alignment, t, {}};
        if (blocks.size() > 8) return {NiceCondition::Thickness, t, std::to_string(blocks.size()) + " paths"};
    }
    if (auto r = validate_decomposition(nps.m, nps.td); !r.ok()) return {NiceCondition::Decomposition, -1, r.describe()};
    if (auto r = check_induced_embedding(g, emb); !r.accepted()) return {NiceCondition::Embedding, -1, r.describe()};
    return {};
}

/// Runs the recursive decomposition on the triangulation of `input`.
inline PlanarResult build_planar_structure(const EmbeddedGraph& input) {
    auto tri = triangulate(input);
    PlanarResult out;
    out.triangulated = tri.embedded;
    out.original_n = tri.original_n;
    const auto& eg = out.triangulated;
    const auto& g = eg.graph;
    const int n = g.n();
    auto& nps = out.structure;
    nps.root = eg.outer[0];
    auto bfs = bfs_tree(g, nps.root);
    nps.slot.assign(static_cast<std::size_t>(n), 0);
    std::vector<int> path_of(static_cast<std::size_t>(n), -1);
    std::vector<Edge> medges;

    auto add_path = [&](const std::vector<int>& path) {
        const int id = static_cast<int>(nps.paths.size());
        nps.paths.push_back(path);
        for (std::size_t i = 0; i < path.size(); ++i) {
            path_of[path[i]] = id;
            nps.slot[path[i]] = path_vertex_slot(path, i, bfs.level[path[i]]);
        }
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b) medges.emplace_back(5 * id + a, 5 * id + b);
        for (std::size_t i = 0; i < path.size(); ++i) {
            int v = path[i];
            bool end = i == 0 || i + 1 == path.size();
            for (int y : g.neighbors(v)) {
                if (path_of[y] < 0 || path_of[y] == id) continue;
                if (!end) throw std::logic_error("inner path vertex " + std::to_string(v) + " touches an earlier path");
                medges.emplace_back(5 * id + nps.slot[v] - 1, 5 * path_of[y] + nps.slot[y] - 1);
            }
        }
        return id;
    };
    auto block = [](const std::vector<int>& ids) {
        std::vector<int> bag;
        for (int p : ids)
            for (int j = 0; j < 5; ++j) bag.push_back(5 * p + j);
        return bag;
    };

    const auto [v1, v2, v3] = eg.outer;
    std::vector<int> first;
    for (int v : {v1, v2, v3}) first.push_back(add_path({v}));
    int root_node = nps.td.add_node(block(first), -1);
    std::vector<std::pair<CycleFrame, int>> stack;
    CycleFrame start{{v1, v3, v2}, {}};
    for (int v = 0; v < n; ++v)
        if (v != v1 && v != v2 && v != v3) start.interior.push_back(v);
    if (!start.interior.empty()) stack.push_back({start, root_node});
    while (!stack.empty()) {
        auto [frame, node] = std::move(stack.back());
        stack.pop_back();
        FrameRecord rec{frame.cycle, {}, node, false, {}, {}, -1};
        for (int v : frame.cycle) rec.paths.push_back(path_of[v]);
        std::sort(rec.paths.begin(), rec.paths.end());
        rec.paths.erase(std::unique(rec.paths.begin(), rec.paths.end()), rec.paths.end());
        if (rec.paths.size() > 6) throw std::logic_error("cycle meets " + std::to_string(rec.paths.size()) + " paths");
        auto split = decompose_cycle(eg, bfs, frame, path_of);
        rec.degenerate = split.degenerate;
        rec.new_paths = split.paths;
        rec.dropped_path = split.dropped_path;
        for (const auto& c : split.children) rec.child_cycles.push_back(c.cycle);
        if (split.degenerate) {
            for (auto& c : split.children) stack.push_back({std::move(c), node});
            out.frames.push_back(std::move(rec));
            continue;
        }
        std::vector<int> fresh;
        for (const auto& q : split.paths)
            fresh.push_back(q.empty() ? -1 : add_path(q));
        std::vector<int> z1 = rec.paths;
        for (int i : {0, 1})
            if (fresh[i] >= 0) z1.push_back(fresh[i]);
        int z1_node = nps.td.add_node(block(z1), node);
        int z2_node = -1;
        if (fresh[2] >= 0) {
            std::vector<int> z2;
            for (int p : rec.paths)
                if (p != split.dropped_path) z2.push_back(p);
            for (int f : fresh)
                if (f >= 0) z2.push_back(f);
            z2_node = nps.td.add_node(block(z2), z1_node);
        }
        for (auto& c : split.children) {
            bool uses_third = false;
            for (int v : c.cycle) uses_third |= fresh[2] >= 0 && path_of[v] == fresh[2];
            stack.push_back({std::move(c), uses_third ? z2_node : z1_node});
        }
        out.frames.push_back(std::move(rec));
    }
    nps.m = LoopGraph::from_edges(5 * static_cast<int>(nps.paths.size()), std::move(medges));
    nps.levels = *std::max_element(bfs.level.begin(), bfs.level.end()) + 1;
    out.embedding = nice_embedding(nps, bfs.level);
    if (auto r = verify_nice_structure(g, nps, out.embedding); !r.ok()) throw std::logic_error("planar construction failed its own check: " + r.describe());
    out.restricted = out.embedding;
    out.restricted.image.resize(static_cast<std::size_t>(out.original_n));
    return out;
}

/// `nice <n> <paths> <root> <levels>`, then `path <id> <v...>` (top first) and `slot <v> <path> <j>`.
inline void write_nice_structure(std::ostream& out, const NiceProductStructure& nps) {
    out << "nice " << nps.slot.size() << " " << nps.paths.size() << " " << nps.root << " " << nps.levels << "\n";
    for (std::size_t p = 0; p < nps.paths.size(); ++p) {
        out << "path " << p;
        for (int v : nps.paths[p]) out << " " << v;
        out << "\n";
    }
    for (std::size_t p = 0; p < nps.paths.size(); ++p)
        for (int v : nps.paths[p]) out << "slot " << v << " " << p << " " << nps.slot[v] << "\n";
}

/// Reads paths and slots; the factor and its decomposition come from their own files.
inline NiceProductStructure read_nice_structure(std::istream& in, const std::string& what = "nice structure") {
    LineReader r(in, what);
    if (!r.next() || r.keyword() != "nice") r.fail("expected 'nice <n> <paths> <root> <levels>' header");
    r.expect_size(5);
    int n = r.integer(1), count = r.integer(2);
    if (n < 0 || count < 0) r.fail("negative count");
    NiceProductStructure nps;
    nps.root = r.integer(3);
    nps.levels = r.integer(4);
    nps.paths.assign(static_cast<std::size_t>(count), {});
    nps.slot.assign(static_cast<std::size_t>(n), 0);
    std::vector<int> slot_path(static_cast<std::size_t>(n), -1);
    while (r.next()) {
        if (r.keyword() == "path") {
            int p = r.integer(1);
            if (p < 0 || p >= count) r.fail("path id out of range");
            for (std::size_t i = 2; i < r.size(); ++i) nps.paths[p].push_back(r.integer(i));
        } else if (r.keyword() == "slot") {
            r.expect_size(4);
            int v = r.integer(1), p = r.integer(2);
            if (v < 0 || v >= n) r.fail("slot vertex out of range");
            if (p < 0 || p >= count) r.fail("slot path out of range");
            slot_path[v] = p;
            nps.slot[v] = r.integer(3);
        } else {
            r.fail("unknown keyword '" + r.keyword() + "'");
        }
    }
    for (int p = 0; p < count; ++p)
        for (int v : nps.paths[p]) {
            if (v < 0 || v >= n) throw InputError(what + ": path vertex out of range");
            if (slot_path[v] != p) throw InputError(what + ": slot of vertex " + std::to_string(v) + " names another path");
        }
    return nps;
}

inline NiceProductStructure read_nice_structure_file(const std::string& path) {
    auto in = open_input(path);
    return read_nice_structure(in, path);
}

}  // namespace hps
