#include "support.hpp"

#include <functional>

#ifndef LGS_DATA_DIR
#define LGS_DATA_DIR "data"
#endif

namespace lgs::test {

std::string data_path(const std::string& name) { return std::string(LGS_DATA_DIR) + "/" + name; }

LambdaGraphSystem load(const std::string& name, int graph_depth) { return load_system(data_path(name), graph_depth); }

Certificate load_cert(const std::string& name, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2) {
    const std::string path = data_path(name);
    return parse_certificate(read_file(path), s1, s2, path);
}

LabeledGraph random_graph(std::mt19937_64& rng, int states, int symbols, int extra_edges) {
    LabeledGraph g;
    g.name = "fuzz";
    std::vector<std::string> names;
    for (int a = 0; a < symbols; ++a) names.push_back(std::string(1, static_cast<char>('a' + a)));
    g.alphabet = Alphabet(names);
    for (int i = 0; i < states; ++i) g.states.push_back("q" + std::to_string(i));
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    auto fits = [&](const LabeledGraph::GEdge& e) {
        for (const auto& f : g.edges)
            if (f.tgt == e.tgt && f.label == e.label) return false;
        return true;
    };
    // a Hamiltonian cycle keeps the graph strongly connected
    for (int i = 0; i < states; ++i) g.edges.push_back({i, pick(symbols), (i + 1) % states});
    for (int t = 0; t < extra_edges; ++t) {
        const LabeledGraph::GEdge e{pick(states), pick(symbols), pick(states)};
        if (fits(e)) g.edges.push_back(e);
    }
    return g;
}

std::vector<LabeledGraph> fuzz_graphs(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<LabeledGraph> out;
    for (int i = 0; i < count; ++i) {
        const int states = std::uniform_int_distribution<int>(1, 4)(rng);
        const int symbols = std::uniform_int_distribution<int>(1, 3)(rng);
        const int extra = std::uniform_int_distribution<int>(0, 2 * states)(rng);
        out.push_back(random_graph(rng, states, symbols, extra));
    }
    return out;
}

std::set<Word> graph_words(const LabeledGraph& g, int k) {
    std::set<Word> out;
    Word w;
    std::function<void(int)> walk = [&](int state) {
        if (static_cast<int>(w.size()) == k) {
            out.insert(w);
            return;
        }
        for (const auto& e : g.edges)
            if (e.src == state) {
                w.push_back(e.label);
                walk(e.tgt);
                w.pop_back();
            }
    };
    for (int i = 0; i < static_cast<int>(g.states.size()); ++i) walk(i);
    return out;
}

std::set<Word> path_words(const LambdaGraphSystem& s, int k) {
    std::set<Word> out;
    Word w;
    std::function<void(int, int)> walk = [&](int level, int v) {
        if (static_cast<int>(w.size()) == k) {
            out.insert(w);
            return;
        }
        for (const auto& e : s.edges(level))
            if (e.src == v) {
                w.push_back(e.label);
                walk(level + 1, e.tgt);
                w.pop_back();
            }
    };
    for (int i = 1; i <= s.size(0); ++i) walk(0, i);
    return out;
}

LambdaGraphSystem with_edges(const LambdaGraphSystem& s, int l, std::vector<Edge> edges) {
    std::vector<std::vector<Edge>> all;
    for (int k = 0; k < s.depth(); ++k) all.push_back(k == l ? edges : s.edges(k));
    return {s.name(), s.alphabet(), s.sizes(), all, s.iota_maps()};
}

LambdaGraphSystem with_iota(const LambdaGraphSystem& s, int l, int j, int to) {
    auto iota = s.iota_maps();
    iota[static_cast<size_t>(l)][static_cast<size_t>(j - 1)] = to;
    std::vector<std::vector<Edge>> all;
    for (int k = 0; k < s.depth(); ++k) all.push_back(s.edges(k));
    return {s.name(), s.alphabet(), s.sizes(), all, iota};
}

LabeledGraph relabel(const LabeledGraph& g, const std::vector<int>& perm) {
    LabeledGraph h = g;
    for (auto& e : h.edges) e.label = perm[static_cast<size_t>(e.label)];
    return h;
}

OneSidedCode relabel_code(const LambdaGraphSystem& s1, const std::vector<int>& perm) {
    OneSidedCode c;
    c.d = 1;
    for (const auto& cyl : cylinders(s1, 1, 1)) {
        const int a = cyl.word[0], pa = perm[static_cast<size_t>(a)];
        c.forward.map[cyl] = {pa, cyl.vertex.index};
        c.inverse.map[{{pa}, cyl.vertex}] = {a, cyl.vertex.index};
    }
    return c;
}

OneSidedCode random_code(std::mt19937_64& rng, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2) {
    auto fill = [&](const LambdaGraphSystem& a, const LambdaGraphSystem& b, CodeTable& t) {
        std::uniform_int_distribution<int> sym(0, b.alphabet().size() - 1), sel(1, b.size(1));
        for (const auto& cyl : cylinders(a, 1, 1)) t.map[cyl] = {sym(rng), sel(rng)};
    };
    OneSidedCode c;
    fill(s1, s2, c.forward);
    fill(s2, s1, c.inverse);
    return c;
}

std::vector<Monomial> monomials(const LambdaGraphSystem& s, int d) {
    std::set<Monomial> out;
    for (const auto& e : enumerate_elements(s, d)) out.insert(to_monomial(e.bisection()));
    return {out.begin(), out.end()};
}

}  // namespace lgs::test
