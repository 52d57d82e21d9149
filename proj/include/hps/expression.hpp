#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "graph_ops.hpp"

namespace hps {

enum class OpKind { Create, Union, AddEdges, Recolor };

/// One postfix operation. Create: (colour, pvertex); AddEdges / Recolor: (i, j); Union: unused.
struct ExprOp {
    OpKind kind = OpKind::Create;
    int a = 0;
    int b = 0;

    static ExprOp create(int colour, int pvertex) { return {OpKind::Create, colour, pvertex}; }
    static ExprOp join() { return {OpKind::Union, 0, 0}; }
    static ExprOp add_edges(int i, int j) { return {OpKind::AddEdges, i, j}; }
    static ExprOp recolor(int i, int j) { return {OpKind::Recolor, i, j}; }

    friend bool operator==(const ExprOp&, const ExprOp&) = default;
};

/// Expression over labels (colour, parameter vertex), stored in postfix order.
/// Vertex ids of the value follow creation order, which is also "left block, then right block".
struct HcwExpression {
    int ell = 1;
    LoopGraph param;
    std::vector<ExprOp> ops;

    void create(int colour, int pvertex) { ops.push_back(ExprOp::create(colour, pvertex)); }
    void join() { ops.push_back(ExprOp::join()); }
    void add_edges(int i, int j) { ops.push_back(ExprOp::add_edges(i, j)); }
    void recolor(int i, int j) { ops.push_back(ExprOp::recolor(i, j)); }
    void append(const std::vector<ExprOp>& more) { ops.insert(ops.end(), more.begin(), more.end()); }
};

/// Ordinary clique-width expression; Create's pvertex field is ignored.
struct ClassicExpression {
    int ell = 1;
    std::vector<ExprOp> ops;

    void create(int colour) { ops.push_back(ExprOp::create(colour, 0)); }
    void join() { ops.push_back(ExprOp::join()); }
    void add_edges(int i, int j) { ops.push_back(ExprOp::add_edges(i, j)); }
    void recolor(int i, int j) { ops.push_back(ExprOp::recolor(i, j)); }
};

struct Label {
    int colour = 0;
    int pvertex = 0;
    friend bool operator==(const Label&, const Label&) = default;
    friend auto operator<=>(const Label&, const Label&) = default;
};

struct LabeledGraph {
    LoopGraph graph;
    std::vector<Label> labels;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    int op_index = -1;  // -1: whole expression
    std::string message;

    std::string describe() const {
        std::ostringstream os;
        os << (severity == Severity::Error ? "error" : "warning");
        if (op_index >= 0) os << " at op " << op_index;
        os << ": " << message;
        return os.str();
    }
};

inline bool has_errors(const std::vector<Diagnostic>& d) {
    return std::any_of(d.begin(), d.end(), [](const Diagnostic& x) { return x.severity == Diagnostic::Severity::Error; });
}

namespace detail {

/// Vertices of one stack frame bucketed as colour -> pvertex -> vertex list.
struct Frame {
    using PBuckets = std::unordered_map<int, std::vector<int>>;
    std::unordered_map<int, PBuckets> by_colour;
    std::size_t size = 0;
};

inline void merge_lists(std::vector<int>& into, std::vector<int>& from) {
    if (into.size() < from.size()) std::swap(into, from);
    into.insert(into.end(), from.begin(), from.end());
    from.clear();
}

inline void merge_pbuckets(Frame::PBuckets& into, Frame::PBuckets& from) {
    if (into.size() < from.size()) std::swap(into, from);
    for (auto& [pv, list] : from) merge_lists(into[pv], list);
    from.clear();
}

/// Shared postfix interpreter. `adjacent(v, w)` decides whether AddEdges joins pvertex v to w.
template <class Adjacent>
LabeledGraph run(const std::vector<ExprOp>& ops, Adjacent&& adjacent, const std::vector<std::vector<int>>& pneighbours) {
    std::vector<Frame> stack;
    std::vector<int> pvertex_of;
    std::vector<Edge> edges;
    for (const auto& op : ops) {
        switch (op.kind) {
            case OpKind::Create: {
                Frame f;
                f.by_colour[op.a][op.b].push_back(static_cast<int>(pvertex_of.size()));
                f.size = 1;
                pvertex_of.push_back(op.b);
                stack.push_back(std::move(f));
                break;
            }
            case OpKind::Union: {
                Frame right = std::move(stack.back());
                stack.pop_back();
                Frame& left = stack.back();
                if (left.by_colour.size() < right.by_colour.size()) std::swap(left.by_colour, right.by_colour);
                for (auto& [c, pb] : right.by_colour) merge_pbuckets(left.by_colour[c], pb);
                left.size += right.size;
                break;
            }
            case OpKind::AddEdges: {
                Frame& f = stack.back();
                auto ii = f.by_colour.find(op.a);
                auto jj = f.by_colour.find(op.b);
                if (ii == f.by_colour.end() || jj == f.by_colour.end()) break;
                for (const auto& [v, xs] : ii->second) {
                    auto link = [&](int w) {
                        auto it = jj->second.find(w);
                        if (it == jj->second.end()) return;
                        for (int x : xs)
                            for (int y : it->second) edges.emplace_back(std::min(x, y), std::max(x, y));
                    };
                    if (adjacent(v, v)) link(v);
                    if (v < static_cast<int>(pneighbours.size()))
                        for (int w : pneighbours[v]) link(w);
                }
                break;
            }
            case OpKind::Recolor: {
                Frame& f = stack.back();
                auto ii = f.by_colour.find(op.a);
                if (ii == f.by_colour.end()) break;
                auto moved = std::move(ii->second);
                f.by_colour.erase(ii);
                merge_pbuckets(f.by_colour[op.b], moved);
                break;
            }
        }
    }
    LabeledGraph out;
    const int n = static_cast<int>(pvertex_of.size());
    out.graph = LoopGraph::from_edges(n, std::move(edges));
    out.labels.resize(static_cast<std::size_t>(n));
    for (const auto& f : stack)
        for (const auto& [c, pb] : f.by_colour)
            for (const auto& [pv, xs] : pb)
                for (int x : xs) out.labels[x] = {c, pv};
    return out;
}

inline std::vector<std::vector<int>> neighbour_lists(const LoopGraph& g) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) out[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    return out;
}

}  // namespace detail

/// Structural checks on a postfix op list. Colours must lie in 1..ell, pvertices in
/// 0..param_n-1 (skipped when param_n < 0), and the stack must end with at most one frame.
inline std::vector<Diagnostic> validate_ops(const std::vector<ExprOp>& ops, int ell, int param_n) {
    std::vector<Diagnostic> out;
    auto error = [&](int at, std::string msg) { out.push_back({Diagnostic::Severity::Error, at, std::move(msg)}); };
    if (ell < 1) error(-1, "colour budget ell=" + std::to_string(ell) + " must be positive");
    auto colour_ok = [&](int at, int c) {
        if (c < 1 || c > ell) error(at, "colour " + std::to_string(c) + " outside budget 1.." + std::to_string(ell));
    };
    int depth = 0;
    for (int at = 0; at < static_cast<int>(ops.size()); ++at) {
        const auto& op = ops[at];
        switch (op.kind) {
            case OpKind::Create:
                colour_ok(at, op.a);
                if (param_n >= 0 && (op.b < 0 || op.b >= param_n))
                    error(at, "pvertex " + std::to_string(op.b) + " outside parameter graph of " + std::to_string(param_n) + " vertices");
                ++depth;
                break;
            case OpKind::Union:
                if (depth < 2) error(at, "union needs two operands");
                else --depth;
                break;
            case OpKind::AddEdges:
            case OpKind::Recolor: {
                const char* name = op.kind == OpKind::AddEdges ? "addedges" : "recolour";
                colour_ok(at, op.a);
                colour_ok(at, op.b);
                if (op.a == op.b) error(at, std::string(name) + " i=j");
                if (depth < 1) error(at, std::string(name) + " without operand");
                break;
            }
        }
    }
    if (depth > 1) error(-1, std::to_string(depth) + " operands left on the stack; missing union");
    return out;
}

/// Evaluates without validation; callers guarantee well-formedness.
inline LabeledGraph evaluate_unchecked(const HcwExpression& expr) {
    auto nb = detail::neighbour_lists(expr.param);
    return detail::run(expr.ops, [&](int v, int w) { return expr.param.adjacent(v, w); }, nb);
}

/// Besides the structural checks, warns when AddEdges acts on a subexpression whose
/// pvertices lie in several components of the parameter graph: such a value can never be connected.
inline std::vector<Diagnostic> validate(const HcwExpression& expr) {
    auto out = validate_ops(expr.ops, expr.ell, expr.param.n());
    if (has_errors(out)) return out;
    std::vector<int> comp;
    if (connected_components(expr.param, comp) <= 1) return out;
    std::vector<std::vector<int>> frames;  // sorted component ids per frame
    for (int at = 0; at < static_cast<int>(expr.ops.size()); ++at) {
        const auto& op = expr.ops[at];
        if (op.kind == OpKind::Create) {
            frames.push_back({comp[op.b]});
        } else if (op.kind == OpKind::Union) {
            auto right = std::move(frames.back());
            frames.pop_back();
            auto& left = frames.back();
            left.insert(left.end(), right.begin(), right.end());
            std::sort(left.begin(), left.end());
            left.erase(std::unique(left.begin(), left.end()), left.end());
        } else if (op.kind == OpKind::AddEdges && frames.back().size() > 1) {
            out.push_back({Diagnostic::Severity::Warning, at,
                           "addedges on a subexpression mixing parameter vertices from " + std::to_string(frames.back().size()) +
                               " components of the parameter graph; its value cannot be connected"});
        }
    }
    return out;
}

inline std::vector<Diagnostic> validate(const ClassicExpression& expr) { return validate_ops(expr.ops, expr.ell, -1); }

inline void require_valid(const std::vector<Diagnostic>& d) {
    for (const auto& x : d)
        if (x.severity == Diagnostic::Severity::Error) throw InputError("invalid expression: " + x.describe());
}

inline LabeledGraph evaluate(const HcwExpression& expr) {
    require_valid(validate_ops(expr.ops, expr.ell, expr.param.n()));
    return evaluate_unchecked(expr);
}

/// Value of a classic expression; labels carry pvertex 0.
inline LabeledGraph evaluate(const ClassicExpression& expr) {
    require_valid(validate(expr));
    std::vector<ExprOp> ops = expr.ops;
    for (auto& op : ops)
        if (op.kind == OpKind::Create) op.b = 0;
    return detail::run(ops, [](int, int) { return true; }, {});
}

/// Largest colour actually used.
inline int expression_ell(const std::vector<ExprOp>& ops) {
    int m = 0;
    for (const auto& op : ops) {
        if (op.kind == OpKind::Union) continue;
        m = std::max(m, op.a);
        if (op.kind != OpKind::Create) m = std::max(m, op.b);
    }
    return m;
}
inline int expression_ell(const HcwExpression& e) { return expression_ell(e.ops); }
inline int expression_ell(const ClassicExpression& e) { return expression_ell(e.ops); }

inline LoopGraph reflexive_k1() { return reflexive_closure(LoopGraph(1)); }

/// Classic expression as an expression over the single looped vertex.
inline HcwExpression cw_expression_bridge(const ClassicExpression& classic) {
    HcwExpression out{classic.ell, reflexive_k1(), classic.ops};
    for (auto& op : out.ops)
        if (op.kind == OpKind::Create) op.b = 0;
    return out;
}

/// Drops parameter vertices: AddEdges(i, j) then joins every colour-i vertex to every colour-j vertex.
inline ClassicExpression discard_parameters(const HcwExpression& expr) {
    ClassicExpression out{expr.ell, expr.ops};
    for (auto& op : out.ops)
        if (op.kind == OpKind::Create) op.b = 0;
    return out;
}

}  // namespace hps
