#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "graph.hpp"
#include "product.hpp"

namespace hps {

/// Line-oriented reader shared by all text formats: skips blanks and `#` comments,
/// hands out whitespace-separated tokens, reports the line number on errors.
class LineReader {
public:
    explicit LineReader(std::istream& in, std::string what) : in_(in), what_(std::move(what)) {}

    bool next() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            tokens_.clear();
            std::istringstream ss(line);
            std::string tok;
            while (ss >> tok) tokens_.push_back(tok);
            if (!tokens_.empty()) return true;
        }
        return false;
    }

    const std::vector<std::string>& tokens() const { return tokens_; }
    const std::string& keyword() const { return tokens_.front(); }
    std::size_t size() const { return tokens_.size(); }

    int integer(std::size_t i) const {
        if (i >= tokens_.size()) fail("missing field " + std::to_string(i));
        try {
            std::size_t used = 0;
            long long v = std::stoll(tokens_[i], &used);
            if (used != tokens_[i].size() || v < -2147483647LL || v > 2147483647LL) throw std::invalid_argument("");
            return static_cast<int>(v);
        } catch (const std::logic_error&) {
            fail("expected integer, got '" + tokens_[i] + "'");
        }
    }

    void expect_size(std::size_t n) const {
        if (tokens_.size() != n) fail("expected " + std::to_string(n) + " fields in '" + keyword() + "' line");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError(what_ + " line " + std::to_string(line_no_) + ": " + msg);
    }

private:
    std::istream& in_;
    std::string what_;
    int line_no_ = 0;
    std::vector<std::string> tokens_;
};

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    return out;
}

/// Reads the body of a graph file after its `graph <n>` header; unknown keywords are
/// handed to `extra` (returns false to reject).
template <class Extra>
LoopGraph read_graph_body(LineReader& r, int n, Extra&& extra) {
    std::vector<Edge> edges;
    std::vector<int> loops;
    while (r.next()) {
        const auto& k = r.keyword();
        if (k == "e") {
            r.expect_size(3);
            int u = r.integer(1), v = r.integer(2);
            if (u < 0 || u >= n || v < 0 || v >= n) r.fail("edge endpoint out of range");
            if (u == v) r.fail("edge with equal endpoints; use 'l'");
            edges.emplace_back(u, v);
        } else if (k == "l") {
            r.expect_size(2);
            int v = r.integer(1);
            if (v < 0 || v >= n) r.fail("loop vertex out of range");
            loops.push_back(v);
        } else if (!extra(r)) {
            r.fail("unknown keyword '" + k + "'");
        }
    }
    return LoopGraph::from_edges(n, std::move(edges), loops);
}

inline LoopGraph read_graph(std::istream& in, const std::string& what = "graph") {
    LineReader r(in, what);
    if (!r.next() || r.keyword() != "graph") r.fail("expected 'graph <n>' header");
    r.expect_size(2);
    int n = r.integer(1);
    if (n < 0) r.fail("negative vertex count");
    return read_graph_body(r, n, [](LineReader&) { return false; });
}

inline LoopGraph read_graph_file(const std::string& path) {
    auto in = open_input(path);
    return read_graph(in, path);
}

inline void write_graph(std::ostream& out, const LoopGraph& g) {
    out << "graph " << g.n() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
    for (int v : g.loops()) out << "l " << v << "\n";
}

inline std::string graph_to_string(const LoopGraph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

inline void write_dot(std::ostream& out, const LoopGraph& g, const std::string& name = "G") {
    out << "graph " << name << " {\n";
    for (int v = 0; v < g.n(); ++v) {
        out << "  " << v;
        if (!g.names().empty() && !g.names()[v].empty()) out << " [label=\"" << g.names()[v] << "\"]";
        out << ";\n";
    }
    for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    for (int v : g.loops()) out << "  " << v << " -- " << v << ";\n";
    out << "}\n";
}

/// Embedding map file: one `emb <x> <a> <b>` line per vertex of the embedded graph.
inline void write_embedding_map(std::ostream& out, const std::vector<ProductVertex>& image) {
    for (std::size_t x = 0; x < image.size(); ++x) out << "emb " << x << " " << image[x].a << " " << image[x].b << "\n";
}

inline std::vector<ProductVertex> read_embedding_map(std::istream& in, int n, const std::string& what = "embedding") {
    LineReader r(in, what);
    std::vector<ProductVertex> image(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    while (r.next()) {
        if (r.keyword() != "emb") r.fail("expected 'emb <x> <a> <b>'");
        r.expect_size(4);
        int x = r.integer(1);
        if (x < 0 || x >= n) r.fail("vertex out of range");
        if (seen[x]) r.fail("vertex mapped twice");
        seen[x] = 1;
        image[x] = {r.integer(2), r.integer(3)};
    }
    for (int x = 0; x < n; ++x)
        if (!seen[x]) throw InputError(what + ": vertex " + std::to_string(x) + " has no image");
    return image;
}

}  // namespace hps
