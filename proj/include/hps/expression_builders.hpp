#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "expression.hpp"
#include "graph_ops.hpp"

namespace hps {

/// Appends ops building a loopless copy of `vertices` (in that order) over the parameter
/// graph: each new vertex enters with colour `temp`, is joined to every final colour in
/// `finals`, then takes its own final colour `colour_of(v)`.
template <class ColourOf>
void append_copy_builder(std::vector<ExprOp>& ops, const std::vector<int>& vertices, int temp, const std::vector<int>& finals,
                         ColourOf&& colour_of) {
    bool first = true;
    for (int v : vertices) {
        if (first) {
            ops.push_back(ExprOp::create(colour_of(v), v));
            first = false;
            continue;
        }
        ops.push_back(ExprOp::create(temp, v));
        ops.push_back(ExprOp::join());
        for (int c : finals) ops.push_back(ExprOp::add_edges(c, temp));
        ops.push_back(ExprOp::recolor(temp, colour_of(v)));
    }
}

struct GridExpression {
    HcwExpression expr;  // parameter graph: reflexive path on `cols` vertices
    int rows = 0;
    int cols = 0;
};

/// Five-colour expression for the rows x cols grid over a reflexive path.
/// Row r is a copy of the path; value vertex (r, c) gets id r * cols + c.
inline GridExpression grid_expression(int rows, int cols) {
    if (rows < 1 || cols < 1) throw InputError("grid_expression needs rows, cols >= 1");
    GridExpression out;
    out.rows = rows;
    out.cols = cols;
    out.expr.ell = 5;
    out.expr.param = reflexive_closure(path_graph(cols));
    constexpr int kRetired = 5;
    auto row_ops = [&](int lo) {
        // alternating colours lo, lo+1 along the row; colour 5 holds the vertex being attached
        std::vector<ExprOp> ops;
        ops.push_back(ExprOp::create(lo, 0));
        for (int c = 1; c < cols; ++c) {
            int prev = lo + ((c - 1) & 1), mine = lo + (c & 1);
            ops.push_back(ExprOp::create(kRetired, c));
            ops.push_back(ExprOp::join());
            ops.push_back(ExprOp::add_edges(prev, kRetired));
            ops.push_back(ExprOp::recolor(kRetired, mine));
        }
        return ops;
    };
    auto& ops = out.expr.ops;
    auto first = row_ops(1);
    ops.insert(ops.end(), first.begin(), first.end());
    for (int r = 1; r < rows; ++r) {
        int older = (r & 1) ? 1 : 3, newer = (r & 1) ? 3 : 1;
        if (r >= 2) {
            ops.push_back(ExprOp::recolor(newer, kRetired));
            if (cols > 1) ops.push_back(ExprOp::recolor(newer + 1, kRetired));
        }
        auto next = row_ops(newer);
        ops.insert(ops.end(), next.begin(), next.end());
        ops.push_back(ExprOp::join());
        ops.push_back(ExprOp::add_edges(older, newer));
        if (cols > 1) ops.push_back(ExprOp::add_edges(older + 1, newer + 1));
    }
    return out;
}

struct LocalizeResult {
    ClassicExpression expr;
    std::vector<int> ball;  // value vertex i of expr is ball[i] of the source value
    int colours_used = 0;
    int pvertices_used = 0;
    long long degree_bound = 0;     // ell * (Delta+1)^r
    long long bandwidth_bound = 0;  // ell * (2*b*r + 1), b = bandwidth of the parameter graph (identity order)
};

/// Bandwidth of the identity vertex order of g.
inline int identity_bandwidth(const LoopGraph& g) {
    int b = 0;
    for (auto [u, v] : g.edges()) b = std::max(b, v - u);
    return b;
}

/// Classic expression for the subgraph induced by the closed r-ball around x in the value of expr.
/// Every label (colour, pvertex) occurring inside the ball gets its own classic colour.
inline LocalizeResult localize(const HcwExpression& expr, int x, int r) {
    auto value = evaluate(expr);
    if (x < 0 || x >= value.graph.n()) throw InputError("localize: vertex " + std::to_string(x) + " absent from the value");
    if (r < 0) throw InputError("localize: negative radius");
    auto dist = bfs_distances(value.graph, x);
    std::vector<int> local(static_cast<std::size_t>(value.graph.n()), -1);
    LocalizeResult out;
    for (int v = 0; v < value.graph.n(); ++v)
        if (dist[v] >= 0 && dist[v] <= r) {
            local[v] = static_cast<int>(out.ball.size());
            out.ball.push_back(v);
        }

    std::set<int> pvs;
    for (int v : out.ball) pvs.insert(value.labels[v].pvertex);
    out.pvertices_used = static_cast<int>(pvs.size());

    std::map<Label, int> dense;
    auto colour_of = [&](int c, int pv) {
        auto [it, fresh] = dense.try_emplace(Label{c, pv}, static_cast<int>(dense.size()) + 1);
        return it->second;
    };

    // Replay with empty frames for pruned vertices; track which labels each frame holds.
    struct Frame {
        std::vector<ExprOp> ops;
        std::set<Label> labels;
    };
    std::vector<Frame> stack;
    int created = 0;
    for (const auto& op : expr.ops) {
        switch (op.kind) {
            case OpKind::Create: {
                Frame f;
                if (local[created] >= 0) {
                    f.ops.push_back(ExprOp::create(colour_of(op.a, op.b), 0));
                    f.labels.insert({op.a, op.b});
                }
                ++created;
                stack.push_back(std::move(f));
                break;
            }
            case OpKind::Union: {
                Frame right = std::move(stack.back());
                stack.pop_back();
                Frame& left = stack.back();
                if (left.ops.empty()) left = std::move(right);
                else if (!right.ops.empty()) {
                    left.ops.insert(left.ops.end(), right.ops.begin(), right.ops.end());
                    left.ops.push_back(ExprOp::join());
                    left.labels.insert(right.labels.begin(), right.labels.end());
                }
                break;
            }
            case OpKind::AddEdges: {
                Frame& f = stack.back();
                for (const auto& li : f.labels) {
                    if (li.colour != op.a) continue;
                    for (const auto& lj : f.labels)
                        if (lj.colour == op.b && expr.param.adjacent(li.pvertex, lj.pvertex))
                            f.ops.push_back(ExprOp::add_edges(colour_of(li.colour, li.pvertex), colour_of(lj.colour, lj.pvertex)));
                }
                break;
            }
            case OpKind::Recolor: {
                Frame& f = stack.back();
                std::set<Label> next;
                for (const auto& l : f.labels) {
                    if (l.colour == op.a) {
                        f.ops.push_back(ExprOp::recolor(colour_of(l.colour, l.pvertex), colour_of(op.b, l.pvertex)));
                        next.insert({op.b, l.pvertex});
                    } else {
                        next.insert(l);
                    }
                }
                f.labels = std::move(next);
                break;
            }
        }
    }
    if (!stack.empty()) out.expr.ops = std::move(stack.back().ops);
    out.colours_used = static_cast<int>(dense.size());
    out.expr.ell = std::max(1, out.colours_used);

    long long pow = 1;
    const long long delta = expr.param.max_degree();
    for (int i = 0; i < r; ++i) pow *= delta + 1;
    out.degree_bound = expr.ell * pow;
    out.bandwidth_bound = static_cast<long long>(expr.ell) * (2LL * identity_bandwidth(expr.param) * r + 1);
    return out;
}

enum class PatternCondition { Less, Equal, NotEqual };

inline bool pattern_holds(PatternCondition c, int i, int j) {
    switch (c) {
        case PatternCondition::Less: return i < j;
        case PatternCondition::Equal: return i == j;
        case PatternCondition::NotEqual: return i != j;
    }
    return false;
}

struct HighCwFamily {
    HcwExpression expr;
    LoopGraph direct;  // the same graph built straight from its column/row description
};

/// Violations of the pattern precondition, one message per offending pair.
inline std::vector<std::string> highcw_violations(const LoopGraph& h1, const std::vector<int>& a, const std::vector<int>& b,
                                                   PatternCondition cond) {
    std::vector<std::string> out;
    if (!is_connected(h1)) out.push_back("parameter graph is disconnected");
    if (a.size() != b.size() || a.empty()) out.push_back("A and B must be non-empty and of equal size");
    std::set<int> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    if (sa.size() != a.size() || sb.size() != b.size()) out.push_back("A or B repeats a vertex");
    for (int v : a)
        if (v < 0 || v >= h1.n()) out.push_back("vertex " + std::to_string(v) + " out of range");
    for (int v : b)
        if (v < 0 || v >= h1.n()) out.push_back("vertex " + std::to_string(v) + " out of range");
    if (!out.empty()) return out;
    bool same = a == b;
    bool disjoint = true;
    for (int v : a) disjoint = disjoint && !sb.count(v);
    if (!same && !disjoint) out.push_back("A and B must be equal (same order) or disjoint");
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            bool edge = h1.adjacent(a[i], b[j]);
            bool want = !pattern_holds(cond, static_cast<int>(i), static_cast<int>(j));
            if (edge != want)
                out.push_back("pair (" + std::to_string(a[i]) + "," + std::to_string(b[j]) + ") at indices (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + "): adjacency " + (edge ? "present" : "absent") + " but pattern requires " +
                              (want ? "present" : "absent"));
        }
    return out;
}

/// Chain of `copies` loopless copies of h1; consecutive copies joined from B of the older
/// copy to A of the newer one exactly where h1 has the edge. Five colours.
inline HighCwFamily highcw_family(const LoopGraph& h1, const std::vector<int>& a, const std::vector<int>& b, PatternCondition cond,
                                  int copies) {
    if (copies < 1) throw InputError("highcw_family needs at least one copy");
    if (auto v = highcw_violations(h1, a, b, cond); !v.empty()) {
        std::string msg = "highcw_family precondition violated:";
        for (const auto& s : v) msg += "\n  " + s;
        throw InputError(msg);
    }
    const bool same = a == b;
    const int n = h1.n();
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[v] = v;
    std::vector<char> in_a(static_cast<std::size_t>(n), 0), in_b(static_cast<std::size_t>(n), 0);
    for (int v : a) in_a[v] = 1;
    for (int v : b) in_b[v] = 1;

    // Colours: 1 rest, 2 older A, 3 older B (the live end), 4 newest A, 5 newest B.
    HighCwFamily out;
    out.expr.ell = 5;
    out.expr.param = h1;
    auto& ops = out.expr.ops;
    append_copy_builder(ops, order, 4, {1, 2, 3}, [&](int v) {
        if (in_b[v]) return 3;
        if (in_a[v]) return 2;
        return 1;
    });
    for (int k = 1; k < copies; ++k) {
        append_copy_builder(ops, order, 2, {1, 4, 5}, [&](int v) {
            if (in_a[v]) return 4;
            if (in_b[v]) return 5;
            return 1;
        });
        ops.push_back(ExprOp::join());
        ops.push_back(ExprOp::add_edges(3, 4));
        if (same) {
            ops.push_back(ExprOp::recolor(3, 2));
            ops.push_back(ExprOp::recolor(4, 3));
        } else {
            ops.push_back(ExprOp::recolor(3, 2));
            ops.push_back(ExprOp::recolor(4, 2));
            ops.push_back(ExprOp::recolor(5, 3));
        }
    }

    std::vector<Edge> e;
    for (int k = 0; k < copies; ++k) {
        for (auto [u, v] : h1.edges()) e.emplace_back(k * n + u, k * n + v);
        if (k + 1 == copies) continue;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                if (!pattern_holds(cond, static_cast<int>(i), static_cast<int>(j))) e.emplace_back(k * n + b[j], (k + 1) * n + a[i]);
    }
    out.direct = LoopGraph::from_edges(copies * n, std::move(e));
    return out;
}

}  // namespace hps
