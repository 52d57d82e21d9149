#pragma once

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "embedded_graph.hpp"
#include "expression.hpp"
#include "expression_builders.hpp"
#include "expression_io.hpp"
#include "graph_io.hpp"
#include "hereditary_product.hpp"
#include "induced_product.hpp"
#include "planar.hpp"
#include "product.hpp"
#include "tree_decomposition.hpp"
#include "treewidth.hpp"
#include "twinwidth.hpp"

namespace hps::cli {

enum Exit : int { kOk = 0, kReject = 1, kInputError = 2, kInternal = 3 };

/// Oracle size cap: flag beats the HPS_TW_CAP environment variable beats the default.
inline int treewidth_cap(std::optional<int> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("HPS_TW_CAP")) {
        try {
            return std::stoi(env);
        } catch (const std::logic_error&) {
            throw InputError("HPS_TW_CAP is not an integer");
        }
    }
    return kTreewidthCap;
}

inline void write_file(const std::string& path, const auto& writer) {
    auto out = open_output(path);
    writer(out);
}

inline ProductEmbedding read_certificate(const std::string& g_path, const std::string& left, const std::string& right, const std::string& emb_path, LoopGraph& g) {
    g = read_graph_file(g_path);
    ProductEmbedding emb{read_graph_file(left), read_graph_file(right), {}};
    auto in = open_input(emb_path);
    emb.image = read_embedding_map(in, g.n(), emb_path);
    return emb;
}

inline void write_td(const std::string& path, const TreeDecomposition& td, int n) {
    write_file(path, [&](std::ostream& o) { write_decomposition(o, td, n); });
}

/// Shared output of the two product pipelines.
inline void write_induced_outputs(const std::string& prefix, const ProductSubgraph& sub, const InducedExpression& ie, const InducedFactorCertificate& cert) {
    write_expression_files(prefix + ".expr", ie.expr);
    write_file(prefix + ".value_map", [&](std::ostream& o) {
        for (std::size_t x = 0; x < ie.value_to_g.size(); ++x) o << "val " << x << " " << ie.value_to_g[x] << "\n";
    });
    write_certificate_files(prefix, sub.graph, cert.embedding);
    write_td(prefix + ".td2", cert.td2, cert.m2.n());
}

struct Runner {
    std::ostream& out;
    std::ostream& err;

    int eval(const std::string& expr_path, const std::string& output) {
        auto value = evaluate(read_expression_file(expr_path));
        if (output.empty()) write_graph(out, value.graph);
        else write_file(output, [&](std::ostream& o) { write_graph(o, value.graph); });
        out << "# vertices " << value.graph.n() << " edges " << value.graph.edge_count() << "\n";
        return kOk;
    }

    int grid_expr(int a, int b, const std::string& output) {
        auto ge = grid_expression(a, b);
        write_expression_files(output, ge.expr);
        out << "grid " << a << "x" << b << " ell " << ge.expr.ell << " ops " << ge.expr.ops.size() << "\n";
        return kOk;
    }

    int from_product(const std::string& psub, const std::string& left, const std::string& right, const std::string& td_path, const std::string& prefix, std::optional<int> refined_d) {
        auto sub = read_product_subgraph_file(psub);
        auto [td, tdn] = read_decomposition_file(td_path);
        auto m = read_graph_file(right);
        if (tdn != m.n()) throw InputError("decomposition is for " + std::to_string(tdn) + " vertices, right factor has " + std::to_string(m.n()));
        ColourContext cc(sub, read_graph_file(left), m, td);
        auto ie = build_expression(cc);
        auto cert = build_induced_factor(cc);
        write_induced_outputs(prefix, sub, ie, cert);
        auto bounds = refined_d ? bound_report(std::max(2, cc.delta()), cc.k(), *refined_d) : instance_bounds(cc);
        out << describe(bounds);
        out << "colours_used " << ie.colours_used << "\n"
            << "td2_width " << cert.td2.width() << "\n";
        return kOk;
    }

    int path_case_cmd(const std::string& psub, const std::string& left, const std::string& right, const std::string& td_path, const std::string& prefix) {
        auto sub = read_product_subgraph_file(psub);
        auto [td, tdn] = read_decomposition_file(td_path);
        auto m = read_graph_file(right);
        if (tdn != m.n()) throw InputError("decomposition is for " + std::to_string(tdn) + " vertices, right factor has " + std::to_string(m.n()));
        auto res = path_case(sub, read_graph_file(left), m, td);
        write_induced_outputs(prefix, sub, res.expression, res.certificate);
        out << describe(res.bounds);
        out << "colours_used " << res.expression.colours_used << "\n"
            << "td2_width " << res.certificate.td2.width() << "\n";
        return kOk;
    }

    int planar_build(const std::string& input, const std::string& prefix) {
        auto eg = read_embedded_graph_file(input);
        auto r = build_planar_structure(eg);
        write_file(prefix + ".tri.eg", [&](std::ostream& o) { write_embedded_graph(o, r.triangulated); });
        write_certificate_files(prefix, r.triangulated.graph, r.embedding);
        write_file(prefix + ".input.emb", [&](std::ostream& o) { write_embedding_map(o, r.restricted.image); });
        write_file(prefix + ".nice", [&](std::ostream& o) { write_nice_structure(o, r.structure); });
        write_td(prefix + ".td", r.structure.td, r.structure.m.n());
        out << "vertices " << r.original_n << " triangulated " << r.triangulated.n() << "\n"
            << "paths " << r.structure.paths.size() << " levels " << r.structure.levels << "\n"
            << "max_bag " << r.structure.td.width() + 1 << " width " << r.structure.td.width() << "\n";
        return kOk;
    }

    int verify_embedding(const std::string& g_path, const std::string& left, const std::string& right, const std::string& emb_path) {
        LoopGraph g;
        auto emb = read_certificate(g_path, left, right, emb_path, g);
        auto rep = check_induced_embedding(g, emb);
        if (!rep.accepted()) {
            out << "reject " << rep.describe() << "\n";
            return kReject;
        }
        out << "accept\n";
        return kOk;
    }

    int verify_td(const std::string& g_path, const std::string& td_path) {
        auto g = read_graph_file(g_path);
        auto [td, n] = read_decomposition_file(td_path);
        if (n != g.n()) throw InputError("decomposition is for " + std::to_string(n) + " vertices, graph has " + std::to_string(g.n()));
        auto rep = validate_decomposition(g, td);
        if (!rep.ok()) {
            out << "reject " << rep.describe() << "\n";
            return kReject;
        }
        out << "accept width " << td.width() << "\n";
        return kOk;
    }

    int verify_nice(const std::string& prefix) {
        LoopGraph g;
        auto emb = read_certificate(prefix + ".g.graph", prefix + ".left.graph", prefix + ".right.graph", prefix + ".emb", g);
        auto nps = read_nice_structure_file(prefix + ".nice");
        nps.m = emb.right;
        auto [td, n] = read_decomposition_file(prefix + ".td");
        if (n != nps.m.n()) throw InputError("decomposition is for " + std::to_string(n) + " vertices, factor has " + std::to_string(nps.m.n()));
        nps.td = td;
        auto rep = verify_nice_structure(g, nps, emb);
        if (!rep.ok()) {
            out << "reject " << rep.describe() << "\n";
            return kReject;
        }
        std::size_t thickness = 0;
        for (const auto& bag : nps.td.bags) {
            std::set<int> blocks;
            for (int x : bag) blocks.insert(x / 5);
            thickness = std::max(thickness, blocks.size());
        }
        out << "accept paths " << nps.paths.size() << " max_bag " << nps.td.width() + 1 << " width " << nps.td.width() << " thickness " << thickness << "\n";
        return kOk;
    }

    int verify_contractions(const std::string& g_path, const std::string& seq_path, std::optional<int> max_red) {
        auto g = read_graph_file(g_path);
        auto seq = read_contraction_sequence_file(seq_path);
        if (seq.n != g.n()) throw InputError("sequence is for " + std::to_string(seq.n) + " vertices, graph has " + std::to_string(g.n()));
        ContractionReport rep;
        try {
            rep = verify_contraction_sequence(g, seq);
        } catch (const InputError& e) {
            out << "reject " << e.what() << "\n";
            return kReject;
        }
        out << "maxred " << rep.max_red << " at step " << rep.at_step << "\n";
        if (!rep.complete) {
            out << "reject sequence leaves more than one vertex\n";
            return kReject;
        }
        if (max_red && rep.max_red > *max_red) {
            out << "reject red degree " << rep.max_red << " exceeds " << *max_red << "\n";
            return kReject;
        }
        return kOk;
    }

    int tww_from_expr(const std::string& expr_path, const std::string& output) {
        auto expr = read_expression_file(expr_path);
        auto seq = contraction_from_path_expression(expr);
        write_file(output, [&](std::ostream& o) { write_contraction_sequence(o, seq); });
        auto rep = verify_contraction_sequence(evaluate(expr).graph, seq);
        out << "maxred " << rep.max_red << " at step " << rep.at_step << "\n"
            << "bound " << red_degree_bound(expr.ell) << "\n";
        return kOk;
    }

    int tw_exact(const std::string& g_path, std::optional<int> cap, const std::string& output) {
        auto g = read_graph_file(g_path);
        auto res = exact_treewidth(g, treewidth_cap(cap));
        if (!output.empty()) write_td(output, res.witness, g.n());
        out << "treewidth " << res.width << "\n";
        return kOk;
    }

    int star_subdiv(const std::string& g_path, const std::string& prefix) {
        auto s = star_subdivision_embedding(read_graph_file(g_path));
        write_certificate_files(prefix, s.induced_image, s.embedding);
        write_file(prefix + ".subdivided.graph", [&](std::ostream& o) { write_graph(o, s.subdivided); });
        out << "star_leaves " << s.n << " vertices " << s.subdivided.n() << "\n"
            << "subdivision_edges " << s.subdivided.edge_count() << " induced_edges " << s.induced_image.edge_count() << "\n";
        return kOk;
    }

    int export_dot(const std::string& g_path, const std::string& format) {
        auto g = read_graph_file(g_path);
        if (format == "dot") write_dot(out, g);
        else write_graph(out, g);
        return kOk;
    }

    int gen_planar(std::uint64_t seed, int n, const std::string& output) {
        auto eg = random_triangulation(n, seed);
        if (output.empty()) write_embedded_graph(out, eg);
        else write_file(output, [&](std::ostream& o) { write_embedded_graph(o, eg); });
        return kOk;
    }
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Graph product structure toolkit"};
    app.require_subcommand(1);
    Runner run{out, err};
    std::function<int()> action;

    std::string a1, a2, a3, a4, outp;
    std::optional<int> opt_int;
    int i1 = 0, i2 = 0;
    std::uint64_t seed = 0;
    std::string format = "dot";

    auto* eval = app.add_subcommand("eval", "evaluate an expression to a graph");
    eval->add_option("expr", a1)->required();
    eval->add_option("-o,--output", outp);
    eval->callback([&] { action = [&] { return run.eval(a1, outp); }; });

    auto* grid = app.add_subcommand("grid-expr", "expression for the a x b grid over a reflexive path");
    grid->add_option("a", i1)->required()->check(CLI::PositiveNumber);
    grid->add_option("b", i2)->required()->check(CLI::PositiveNumber);
    grid->add_option("-o,--output", outp)->required();
    grid->callback([&] { action = [&] { return run.grid_expr(i1, i2, outp); }; });

    auto* fp = app.add_subcommand("from-product", "expression and factor certificate for G inside Q x M");
    fp->add_option("psub", a1)->required();
    fp->add_option("--left", a2, "left factor Q")->required();
    fp->add_option("--right", a3, "right factor M")->required();
    fp->add_option("--td", a4, "decomposition of M")->required();
    fp->add_option("--out", outp, "output prefix")->required();
    fp->add_option("--refined-d", opt_int, "square-colour count for the refined bounds");
    fp->callback([&] { action = [&] { return run.from_product(a1, a2, a3, a4, outp, opt_int); }; });

    auto* pc = app.add_subcommand("path-case", "as from-product with a path as left factor");
    pc->add_option("psub", a1)->required();
    pc->add_option("--left", a2, "left factor, a path")->required();
    pc->add_option("--right", a3, "right factor M")->required();
    pc->add_option("--td", a4, "decomposition of M")->required();
    pc->add_option("--out", outp, "output prefix")->required();
    pc->callback([&] { action = [&] { return run.path_case_cmd(a1, a2, a3, a4, outp); }; });

    auto* pb = app.add_subcommand("planar-build", "product structure of a plane graph");
    pb->add_option("embedded", a1)->required();
    pb->add_option("--out", outp, "output prefix")->required();
    pb->callback([&] { action = [&] { return run.planar_build(a1, outp); }; });

    auto* ve = app.add_subcommand("verify-embedding", "check an induced embedding into a strong product");
    ve->add_option("graph", a1)->required();
    ve->add_option("left", a2)->required();
    ve->add_option("right", a3)->required();
    ve->add_option("map", a4)->required();
    ve->callback([&] { action = [&] { return run.verify_embedding(a1, a2, a3, a4); }; });

    auto* vt = app.add_subcommand("verify-td", "check a tree decomposition");
    vt->add_option("graph", a1)->required();
    vt->add_option("td", a2)->required();
    vt->callback([&] { action = [&] { return run.verify_td(a1, a2); }; });

    auto* vn = app.add_subcommand("verify-nice", "check the files written by planar-build");
    vn->add_option("prefix", a1)->required();
    vn->callback([&] { action = [&] { return run.verify_nice(a1); }; });

    auto* vc = app.add_subcommand("verify-contractions", "replay a contraction sequence");
    vc->add_option("graph", a1)->required();
    vc->add_option("sequence", a2)->required();
    vc->add_option("--max-red", opt_int, "reject above this red degree");
    vc->callback([&] { action = [&] { return run.verify_contractions(a1, a2, opt_int); }; });

    auto* tw = app.add_subcommand("tww-from-expr", "contraction sequence from a reflexive-path expression");
    tw->add_option("expr", a1)->required();
    tw->add_option("-o,--output", outp)->required();
    tw->callback([&] { action = [&] { return run.tww_from_expr(a1, outp); }; });

    auto* te = app.add_subcommand("tw-exact", "exact tree-width of a small graph");
    te->add_option("graph", a1)->required();
    te->add_option("--cap", opt_int, "largest vertex count accepted (default HPS_TW_CAP or 14)");
    te->add_option("-o,--output", outp, "write the witness decomposition");
    te->callback([&] { action = [&] { return run.tw_exact(a1, opt_int, outp); }; });

    auto* ss = app.add_subcommand("star-subdiv", "3-subdivision placed in a product of two stars");
    ss->add_option("graph", a1)->required();
    ss->add_option("--out", outp, "output prefix")->required();
    ss->callback([&] { action = [&] { return run.star_subdiv(a1, outp); }; });

    auto* ed = app.add_subcommand("export-dot", "print a graph as DOT or in the text format");
    ed->add_option("graph", a1)->required();
    ed->add_option("--format", format)->check(CLI::IsMember({"dot", "text"}));
    ed->callback([&] { action = [&] { return run.export_dot(a1, format); }; });

    auto* gp = app.add_subcommand("gen-planar", "seeded random triangulation");
    gp->add_option("--seed", seed)->required();
    gp->add_option("-n,--vertices", i1, "vertex count")->default_val(50)->check(CLI::Range(3, 1000000));
    gp->add_option("-o,--output", outp);
    gp->callback([&] { action = [&] { return run.gen_planar(seed, i1, outp); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }
    try {
        return action();
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace hps::cli
