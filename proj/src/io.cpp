#include "lgs/io.hpp"

#include "line_reader.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace lgs {

std::vector<Token> tokenize_line(const std::string& line) {
    std::vector<Token> toks;
    size_t k = 0;
    const size_t end = line.find('#') == std::string::npos ? line.size() : line.find('#');
    while (k < end) {
        while (k < end && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        if (k >= end) break;
        size_t start = k;
        while (k < end && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        toks.push_back({line.substr(start, k - start), static_cast<int>(start) + 1});
    }
    return toks;
}

using detail::LineReader;

LambdaGraphSystem parse_lgs(const std::string& text, const std::string& file) {
    LineReader r(text, file);
    if (!r.next()) r.fail(1, "empty input");
    if (r.toks[0].text != "lgs") r.fail(r.toks[0], "expected 'lgs <name>'");
    r.arity(2);
    std::string name = r.toks[1].text;
    std::optional<Alphabet> alpha;
    int depth = -1;
    std::vector<int> sizes;
    std::vector<std::vector<Edge>> edges;
    std::vector<std::vector<int>> iota;
    std::vector<std::set<Edge>> seen;
    bool ended = false;
    while (r.next()) {
        const auto& kw = r.toks[0];
        if (ended) r.fail(kw, "content after 'end'");
        if (kw.text == "alphabet") {
            if (alpha) r.fail(kw, "duplicate alphabet");
            if (r.toks.size() < 2) r.fail(kw, "alphabet needs at least one symbol");
            std::vector<std::string> names;
            for (size_t k = 1; k < r.toks.size(); ++k) names.push_back(r.toks[k].text);
            try {
                alpha.emplace(names);
            } catch (const Error& e) {
                r.fail(r.toks[1], e.what());
            }
        } else if (kw.text == "depth") {
            if (depth >= 0) r.fail(kw, "duplicate depth");
            r.arity(2);
            depth = r.integer(1, 1, 1 << 20, "depth");
            sizes.assign(static_cast<size_t>(depth + 1), 0);
            edges.assign(static_cast<size_t>(depth), {});
            iota.assign(static_cast<size_t>(depth), {});
            seen.assign(static_cast<size_t>(depth), {});
        } else if (kw.text == "vertices") {
            if (depth < 0) r.fail(kw, "'depth' must precede 'vertices'");
            r.arity(3);
            int l = r.integer(1, 0, depth, "level");
            if (sizes[static_cast<size_t>(l)]) r.fail(r.toks[1], "duplicate vertices line for level " + std::to_string(l));
            sizes[static_cast<size_t>(l)] = r.integer(2, 1, 1 << 24, "vertex count");
        } else if (kw.text == "edge") {
            if (!alpha) r.fail(kw, "'alphabet' must precede edges");
            if (depth < 0) r.fail(kw, "'depth' must precede edges");
            r.arity(5);
            int l = r.integer(1, 0, depth - 1, "level");
            if (!sizes[static_cast<size_t>(l)] || !sizes[static_cast<size_t>(l + 1)])
                r.fail(r.toks[1], "vertices of levels " + std::to_string(l) + " and " + std::to_string(l + 1) + " must be declared first");
            int i = r.integer(2, 1, sizes[static_cast<size_t>(l)], "source index");
            int a = alpha->find(r.toks[3].text);
            if (a < 0) r.fail(r.toks[3], "unknown symbol '" + r.toks[3].text + "'");
            int j = r.integer(4, 1, sizes[static_cast<size_t>(l + 1)], "target index");
            Edge e{i, a, j};
            if (!seen[static_cast<size_t>(l)].insert(e).second) r.fail(kw, "duplicate edge (same source, label and target)");
            edges[static_cast<size_t>(l)].push_back(e);
        } else if (kw.text == "iota") {
            if (depth < 0) r.fail(kw, "'depth' must precede iota");
            r.arity(4);
            int l = r.integer(1, 0, depth - 1, "level");
            if (!sizes[static_cast<size_t>(l)] || !sizes[static_cast<size_t>(l + 1)])
                r.fail(r.toks[1], "vertices of levels " + std::to_string(l) + " and " + std::to_string(l + 1) + " must be declared first");
            int j = r.integer(2, 1, sizes[static_cast<size_t>(l + 1)], "upper index");
            int i = r.integer(3, 1, sizes[static_cast<size_t>(l)], "lower index");
            auto& m = iota[static_cast<size_t>(l)];
            if (m.empty()) m.assign(static_cast<size_t>(sizes[static_cast<size_t>(l + 1)]), 0);
            if (m[static_cast<size_t>(j - 1)]) r.fail(r.toks[2], "iota already defined for this vertex");
            m[static_cast<size_t>(j - 1)] = i;
        } else if (kw.text == "end") {
            r.arity(1);
            ended = true;
        } else {
            r.fail(kw, "unknown keyword '" + kw.text + "'");
        }
    }
    if (!ended) throw ParseError(file, r.lineno, 1, "missing 'end'");
    if (!alpha) throw ParseError(file, r.lineno, 1, "missing 'alphabet'");
    if (depth < 0) throw ParseError(file, r.lineno, 1, "missing 'depth'");
    for (int l = 0; l <= depth; ++l)
        if (!sizes[static_cast<size_t>(l)])
            throw ParseError(file, r.lineno, 1, "missing 'vertices' for level " + std::to_string(l));
    for (int l = 0; l < depth; ++l) {
        auto& m = iota[static_cast<size_t>(l)];
        if (m.empty()) m.assign(static_cast<size_t>(sizes[static_cast<size_t>(l + 1)]), 0);
        for (size_t j = 0; j < m.size(); ++j)
            if (!m[j])
                throw ParseError(file, r.lineno, 1, "iota " + std::to_string(l) + " undefined for v_" + std::to_string(j + 1) +
                                                        "^" + std::to_string(l + 1));
    }
    try {
        return LambdaGraphSystem(name, *alpha, sizes, edges, iota);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(file, r.lineno, 1, e.what());
    }
}

LabeledGraph parse_graph(const std::string& text, const std::string& file) {
    LineReader r(text, file);
    if (!r.next()) r.fail(1, "empty input");
    if (r.toks[0].text != "graph") r.fail(r.toks[0], "expected 'graph <name>'");
    r.arity(2);
    LabeledGraph g;
    g.name = r.toks[1].text;
    std::map<std::string, int> state_ix;
    std::vector<std::string> symbols;
    std::map<std::string, int> sym_ix;
    std::set<LabeledGraph::GEdge> seen;
    bool ended = false;
    // symbols are taken from an explicit alphabet line or in order of first use
    bool explicit_alpha = false;
    while (r.next()) {
        const auto& kw = r.toks[0];
        if (ended) r.fail(kw, "content after 'end'");
        if (kw.text == "alphabet") {
            if (explicit_alpha || !symbols.empty()) r.fail(kw, "alphabet must come first and only once");
            explicit_alpha = true;
            for (size_t k = 1; k < r.toks.size(); ++k) {
                if (!sym_ix.emplace(r.toks[k].text, static_cast<int>(symbols.size())).second)
                    r.fail(r.toks[k], "duplicate symbol");
                symbols.push_back(r.toks[k].text);
            }
        } else if (kw.text == "state") {
            r.arity(2);
            if (!state_ix.emplace(r.toks[1].text, static_cast<int>(g.states.size())).second)
                r.fail(r.toks[1], "duplicate state");
            g.states.push_back(r.toks[1].text);
        } else if (kw.text == "edge") {
            r.arity(4);
            auto s = state_ix.find(r.toks[1].text);
            if (s == state_ix.end()) r.fail(r.toks[1], "unknown state '" + r.toks[1].text + "'");
            auto t = state_ix.find(r.toks[3].text);
            if (t == state_ix.end()) r.fail(r.toks[3], "unknown state '" + r.toks[3].text + "'");
            auto a = sym_ix.find(r.toks[2].text);
            if (a == sym_ix.end()) {
                if (explicit_alpha) r.fail(r.toks[2], "unknown symbol '" + r.toks[2].text + "'");
                a = sym_ix.emplace(r.toks[2].text, static_cast<int>(symbols.size())).first;
                symbols.push_back(r.toks[2].text);
            }
            LabeledGraph::GEdge e{s->second, a->second, t->second};
            if (!seen.insert(e).second) r.fail(kw, "duplicate edge (same source, label and target)");
            g.edges.push_back(e);
        } else if (kw.text == "end") {
            r.arity(1);
            ended = true;
        } else {
            r.fail(kw, "unknown keyword '" + kw.text + "'");
        }
    }
    if (!ended) throw ParseError(file, r.lineno, 1, "missing 'end'");
    try {
        g.alphabet = Alphabet(symbols);
    } catch (const Error& e) {
        throw ParseError(file, r.lineno, 1, e.what());
    }
    return g;
}

std::string write_lgs(const LambdaGraphSystem& s) {
    std::ostringstream o;
    o << "lgs " << (s.name().empty() ? "unnamed" : s.name()) << "\n";
    o << "alphabet " << join(s.alphabet().names(), " ") << "\n";
    o << "depth " << s.depth() << "\n";
    for (int l = 0; l <= s.depth(); ++l) o << "vertices " << l << " " << s.size(l) << "\n";
    for (int l = 0; l < s.depth(); ++l) {
        for (const auto& e : s.edges(l))
            o << "edge " << l << " " << e.src << " " << s.alphabet().name(e.label) << " " << e.tgt << "\n";
        for (int j = 1; j <= s.size(l + 1); ++j) o << "iota " << l << " " << j << " " << s.iota(l, j) << "\n";
    }
    o << "end\n";
    return o.str();
}

std::string write_graph(const LabeledGraph& g) {
    std::ostringstream o;
    o << "graph " << g.name << "\n";
    o << "alphabet " << join(g.alphabet.names(), " ") << "\n";
    for (const auto& st : g.states) o << "state " << st << "\n";
    for (const auto& e : g.edges)
        o << "edge " << g.states[static_cast<size_t>(e.src)] << " " << g.alphabet.name(e.label) << " "
          << g.states[static_cast<size_t>(e.tgt)] << "\n";
    o << "end\n";
    return o.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LambdaGraphSystem load_system(const std::string& path, int graph_depth) {
    std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto toks = tokenize_line(line);
        if (toks.empty()) continue;
        if (toks[0].text == "graph") return from_labeled_graph(parse_graph(text, path), graph_depth);
        break;
    }
    return parse_lgs(text, path);
}

}  // namespace lgs
