#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

#include "expression.hpp"
#include "graph_io.hpp"

namespace hps {

/// `param=` value denoting the single looped vertex, i.e. a classic clique-width expression.
inline constexpr const char* kClassicParam = "builtin:k1-loop";

struct ExpressionHeader {
    int ell = 1;
    std::string param;
};

inline std::vector<ExprOp> read_ops(LineReader& r, ExpressionHeader& header) {
    if (!r.next() || r.keyword() != "expr") r.fail("expected 'expr ell=<l> param=<file>' header");
    bool have_ell = false;
    for (std::size_t i = 1; i < r.size(); ++i) {
        const auto& tok = r.tokens()[i];
        if (tok.rfind("ell=", 0) == 0) {
            try {
                header.ell = std::stoi(tok.substr(4));
            } catch (const std::logic_error&) {
                r.fail("bad ell value");
            }
            have_ell = true;
        } else if (tok.rfind("param=", 0) == 0) {
            header.param = tok.substr(6);
        } else {
            r.fail("unknown header field '" + tok + "'");
        }
    }
    if (!have_ell) r.fail("header lacks ell=");
    std::vector<ExprOp> ops;
    while (r.next()) {
        const auto& k = r.keyword();
        if (k == "create") {
            r.expect_size(3);
            ops.push_back(ExprOp::create(r.integer(1), r.integer(2)));
        } else if (k == "union") {
            r.expect_size(1);
            ops.push_back(ExprOp::join());
        } else if (k == "addedges") {
            r.expect_size(3);
            ops.push_back(ExprOp::add_edges(r.integer(1), r.integer(2)));
        } else if (k == "recolor") {
            r.expect_size(3);
            ops.push_back(ExprOp::recolor(r.integer(1), r.integer(2)));
        } else {
            r.fail("unknown operation '" + k + "'");
        }
    }
    return ops;
}

inline void write_ops(std::ostream& out, const std::vector<ExprOp>& ops) {
    for (const auto& op : ops) {
        switch (op.kind) {
            case OpKind::Create: out << "create " << op.a << " " << op.b << "\n"; break;
            case OpKind::Union: out << "union\n"; break;
            case OpKind::AddEdges: out << "addedges " << op.a << " " << op.b << "\n"; break;
            case OpKind::Recolor: out << "recolor " << op.a << " " << op.b << "\n"; break;
        }
    }
}

/// Reads an expression; the parameter graph path is resolved relative to `base_dir`.
inline HcwExpression read_expression(std::istream& in, const std::filesystem::path& base_dir, const std::string& what = "expression") {
    LineReader r(in, what);
    ExpressionHeader h;
    auto ops = read_ops(r, h);
    HcwExpression e;
    e.ell = h.ell;
    e.ops = std::move(ops);
    if (h.param.empty()) throw InputError(what + ": header lacks param=");
    if (h.param == kClassicParam) e.param = reflexive_k1();
    else {
        auto p = std::filesystem::path(h.param);
        e.param = read_graph_file((p.is_absolute() ? p : base_dir / p).string());
    }
    return e;
}

inline HcwExpression read_expression_file(const std::string& path) {
    auto in = open_input(path);
    return read_expression(in, std::filesystem::path(path).parent_path(), path);
}

inline void write_expression(std::ostream& out, const HcwExpression& e, const std::string& param_ref) {
    out << "expr ell=" << e.ell << " param=" << param_ref << "\n";
    write_ops(out, e.ops);
}

inline void write_classic_expression(std::ostream& out, const ClassicExpression& e) {
    out << "expr ell=" << e.ell << " param=" << kClassicParam << "\n";
    write_ops(out, e.ops);
}

/// Writes `<stem>.expr` and, unless classic, `<stem>.param.graph` next to it.
inline void write_expression_files(const std::string& expr_path, const HcwExpression& e) {
    std::filesystem::path p(expr_path);
    std::string ref = p.stem().string() + ".param.graph";
    auto gout = open_output((p.parent_path() / ref).string());
    write_graph(gout, e.param);
    auto out = open_output(expr_path);
    write_expression(out, e, ref);
}

}  // namespace hps
