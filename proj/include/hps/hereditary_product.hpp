#pragma once

#include <string>
#include <vector>

#include "expression.hpp"
#include "expression_builders.hpp"
#include "graph_io.hpp"
#include "graph_ops.hpp"
#include "product.hpp"

namespace hps {

/// Expression over reflexive_closure(hprime) whose value is hprime ⊠ M, where M is the value of
/// `mexpr`. Value vertex m * n(hprime) + v corresponds to the product vertex (v, m).
inline HcwExpression expression_from_factor(const ClassicExpression& mexpr, const LoopGraph& hprime) {
    if (mexpr.ell < 2) throw InputError("expression_from_factor needs a colour budget of at least 2");
    if (!hprime.loop_free()) throw InputError("expression_from_factor expects a loop-free factor");
    require_valid(validate(mexpr));
    HcwExpression out{mexpr.ell, reflexive_closure(hprime), {}};
    std::vector<int> order(static_cast<std::size_t>(hprime.n()));
    for (int v = 0; v < hprime.n(); ++v) order[v] = v;
    for (const auto& op : mexpr.ops) {
        if (op.kind != OpKind::Create) {
            out.ops.push_back(op);
            continue;
        }
        if (hprime.n() == 0) throw InputError("expression_from_factor: empty factor");
        append_copy_builder(out.ops, order, 2, {1}, [](int) { return 1; });
        if (op.a != 1) out.ops.push_back(ExprOp::recolor(1, op.a));
    }
    return out;
}

/// Inverse image of the value ids used by expression_from_factor.
inline ProductEmbedding factor_value_embedding(const LoopGraph& hprime, const LoopGraph& m) {
    ProductEmbedding emb{hprime, m, {}};
    for (int y = 0; y < m.n(); ++y)
        for (int v = 0; v < hprime.n(); ++v) emb.image.push_back({v, y});
    return emb;
}

struct FactorCertificate {
    LoopGraph g;       // value of the source expression
    LoopGraph hprime;  // loop-stripped parameter graph
    LoopGraph m;
    ClassicExpression m_expression;  // witnesses cw(M) <= ell
    ProductEmbedding embedding;      // g into hprime ⊠ m
};

/// M is the value of the expression with parameter vertices discarded; x maps to (pvertex(x), x).
inline FactorCertificate factor_from_expression(const HcwExpression& expr) {
    require_valid(validate(expr));
    for (int v = 0; v < expr.param.n(); ++v)
        if (!expr.param.has_loop(v)) throw InputError("factor_from_expression needs a reflexive parameter graph; vertex " + std::to_string(v) + " has no loop");
    FactorCertificate cert;
    auto value = evaluate_unchecked(expr);
    cert.g = value.graph;
    cert.hprime = strip_loops(expr.param);
    cert.m_expression = discard_parameters(expr);
    cert.m = evaluate(cert.m_expression).graph;
    cert.embedding = {cert.hprime, cert.m, {}};
    for (int x = 0; x < value.graph.n(); ++x) cert.embedding.image.push_back({value.labels[x].pvertex, x});
    return cert;
}

/// Writes `<prefix>.left.graph`, `<prefix>.right.graph` (the two factors), `<prefix>.g.graph` and the map `<prefix>.emb`.
inline void write_certificate_files(const std::string& prefix, const LoopGraph& g, const ProductEmbedding& emb) {
    auto left = open_output(prefix + ".left.graph");
    write_graph(left, emb.left);
    auto right = open_output(prefix + ".right.graph");
    write_graph(right, emb.right);
    auto gout = open_output(prefix + ".g.graph");
    write_graph(gout, g);
    auto map = open_output(prefix + ".emb");
    write_embedding_map(map, emb.image);
}

}  // namespace hps
