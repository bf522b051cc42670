#include <map>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace lgs;
using namespace lgs::test;

namespace {

LabeledGraph graph(const std::vector<std::string>& symbols, int states,
                   const std::vector<LabeledGraph::GEdge>& edges) {
    LabeledGraph g;
    g.alphabet = Alphabet(symbols);
    for (int i = 0; i < states; ++i) g.states.push_back(std::to_string(i + 1));
    g.edges = edges;
    return g;
}

std::vector<Edge> without(const std::vector<Edge>& es, const Edge& drop) {
    std::vector<Edge> out;
    for (const auto& e : es)
        if (e != drop) out.push_back(e);
    return out;
}

}  // namespace

TEST_CASE("example systems satisfy every axiom", "[system]") {
    for (const char* f : {"full2.lgs", "golden.lgs", "even.lgs"}) {
        const auto s = load(f);
        INFO(f);
        CHECK(validate(s).ok);
        CHECK(validate(s, Exec::Serial).ok);
        CHECK(is_left_resolving(s).ok);
    }
}

TEST_CASE("deleting the level-2 b edge of the full shift breaks the local property", "[system]") {
    const auto s = load("full2.lgs");
    const auto b = s.alphabet().find("b");
    const auto t = with_edges(s, 2, without(s.edges(2), Edge{1, b, 1}));
    const auto r = validate(t);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.has("local-property"));
    bool located = false;
    for (const auto& v : r.violations)
        if (v.rule == "local-property" && v.level == 2 && v.location.find("u=v_1^1") != std::string::npos &&
            v.location.find("v=v_1^3") != std::string::npos)
            located = true;
    CHECK(located);
}

TEST_CASE("a non-surjective iota is reported at its level", "[system]") {
    const auto s = with_iota(load("golden.lgs"), 0, 2, 1);
    const auto r = validate(s);
    REQUIRE(r.has("iota-surjective"));
    for (const auto& v : r.violations)
        if (v.rule == "iota-surjective") CHECK(v.level == 0);
    CHECK(validate(load("corrupt-iota.lgs")).has("iota-surjective"));
}

TEST_CASE("a vertex without outgoing edges violates the successor rule", "[system]") {
    const auto s = load("golden.lgs");
    const auto t = with_edges(s, 3, without(s.edges(3), Edge{2, s.alphabet().find("c"), 1}));
    CHECK(validate(t).has("successor"));
}

TEST_CASE("left-resolving detection", "[system]") {
    CHECK(is_left_resolving(load("full2.lgs")).ok);
    const auto even = graph({"a", "b"}, 2, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    CHECK(is_left_resolving(from_labeled_graph(even, 3)).ok);
    const auto bad = graph({"a"}, 2, {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}});
    const auto r = is_left_resolving(from_labeled_graph(bad, 2));
    REQUIRE_FALSE(r.ok);
    CHECK(r.first.tgt == r.second.tgt);
    CHECK(r.first.label == r.second.label);
    CHECK(r.first.src != r.second.src);
}

TEST_CASE("from_labeled_graph copies the graph at every level", "[system]") {
    const auto full = from_labeled_graph(graph({"a", "b"}, 1, {{0, 0, 0}, {0, 1, 0}}), 4);
    for (int l = 0; l <= 4; ++l) CHECK(full.size(l) == 1);
    const auto golden = from_labeled_graph(graph({"a", "b", "c"}, 2, {{0, 0, 0}, {0, 1, 1}, {1, 2, 0}}), 4);
    for (int l = 0; l < 4; ++l) {
        CHECK(golden.size(l) == 2);
        CHECK(golden.edges(l).size() == 3);
    }
    CHECK_THROWS_AS(from_labeled_graph(graph({"a"}, 2, {{0, 0, 0}, {0, 0, 1}}), 3), Error);
}

TEST_CASE("transition matrices of the example systems", "[system]") {
    const auto full = transition_matrices(load("full2.lgs"), 2);
    CHECK(full.A(1, 0, 1) == 1);
    CHECK(full.A(1, 1, 1) == 1);
    CHECK(full.I(1, 1) == 1);
    const auto g = transition_matrices(load("golden.lgs"), 1);
    int ones = 0;
    for (int r = 1; r <= 2; ++r)
        for (int a = 0; a < 3; ++a)
            for (int c = 1; c <= 2; ++c) ones += g.A(r, a, c);
    CHECK(ones == 3);
    CHECK(g.A(1, 0, 1) == 1);
    CHECK(g.A(1, 1, 2) == 1);
    CHECK(g.A(2, 2, 1) == 1);
    CHECK((g.I(1, 1) == 1 && g.I(2, 2) == 1 && g.I(1, 2) == 0 && g.I(2, 1) == 0));
    const auto e = transition_matrices(load("even.lgs"), 3);
    const int a = 0, b = 1;
    CHECK((e.A(1, b, 1) == 1 && e.A(1, a, 2) == 1 && e.A(2, a, 1) == 1));
    CHECK((e.A(1, a, 1) == 0 && e.A(2, b, 1) == 0 && e.A(2, a, 2) == 0));
}

TEST_CASE("truncation keeps validity and the language", "[system]") {
    const auto s = load("full2.lgs");
    CHECK(validate(truncate(s, 2)).ok);
    CHECK(truncate(s, s.depth()) == s);
    const auto even = load("even.lgs");
    CHECK(words(truncate(even, 3), 3) == words(even, 3));
}

TEST_CASE("fuzzed graph systems validate", "[system][fuzz]") {
    int n = 0;
    for (const auto& g : fuzz_graphs(11, 200)) {
        const auto s = from_labeled_graph(g, 4);
        const auto r = validate(s);
        INFO(write_graph(g));
        REQUIRE(r.ok);
        CHECK(validate(s, Exec::Serial).ok);
        CHECK(local_property_swapped(s) == r.ok);
        for (int l = 0; l < s.depth(); ++l) {
            const auto t = transition_matrices(s, l);
            for (int j = 1; j <= t.cols; ++j) {
                int col = 0;
                for (int i = 1; i <= t.rows; ++i) col += t.I(i, j);
                CHECK(col == 1);
            }
            for (int i = 1; i <= t.rows; ++i) {
                int row = 0;
                for (int j = 1; j <= t.cols; ++j) row += t.I(i, j);
                CHECK(row >= 1);
            }
        }
        ++n;
    }
    CHECK(n == 200);
}

TEST_CASE("terminal consistency agrees with the local property on fuzzed systems", "[system][fuzz]") {
    std::mt19937_64 rng(5);
    for (const auto& g : fuzz_graphs(12, 100)) {
        auto s = from_labeled_graph(g, 3);
        // drop one random edge to get a mix of valid and invalid systems
        const int l = std::uniform_int_distribution<int>(0, 2)(rng);
        auto es = s.edges(l);
        if (es.size() > 1) es.erase(es.begin() + std::uniform_int_distribution<long>(0, static_cast<long>(es.size()) - 1)(rng));
        const auto t = with_edges(s, l, es);
        const auto r = validate(t);
        if (!r.has("local-property")) CHECK_FALSE(r.has("terminal-consistency"));
    }
}

TEST_CASE("canonical presentation of the full shift has one vertex per level", "[system]") {
    const auto s = canonical_lgs(graph({"a", "b"}, 1, {{0, 0, 0}, {0, 1, 0}}), 3, 3);
    for (int l = 0; l <= 3; ++l) CHECK(s.size(l) == 1);
    CHECK_THROWS_AS(canonical_lgs(graph({"a", "b"}, 1, {{0, 0, 0}, {0, 1, 0}}), 3, 2), Error);
}

TEST_CASE("canonical presentation level sizes match brute-force past classes", "[system]") {
    const auto g = graph({"a", "b"}, 2, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    const int depth = 3, win = 8;
    const auto s = canonical_lgs(g, depth, win);
    CHECK(validate(s).ok);
    for (int l = 0; l <= depth; ++l) {
        std::set<std::set<Word>> classes;
        const int from = win + depth - l;
        for (int n = from; n <= from + 6; ++n) {
            std::map<Word, std::set<Word>> past;
            for (const auto& u : graph_words(g, l + n))
                past[Word(u.begin() + l, u.end())].insert(Word(u.begin(), u.begin() + l));
            for (auto& [y, ws] : past) classes.insert(ws);
        }
        INFO("level " << l);
        CHECK(s.size(l) == static_cast<int>(classes.size()));
    }
}

TEST_CASE("canonical presentation of the golden mean graph presents its language", "[system]") {
    const auto g = graph({"a", "b", "c"}, 2, {{0, 0, 0}, {0, 1, 1}, {1, 2, 0}});
    const auto s = canonical_lgs(g, 3, 8);
    for (int k = 1; k <= 3; ++k) {
        const auto w = words(s, k);
        CHECK(std::set<Word>(w.begin(), w.end()) == graph_words(g, k));
    }
}
