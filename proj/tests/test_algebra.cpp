#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace lgs;
using namespace lgs::test;

namespace {

Word W(const LambdaGraphSystem& s, const std::string& t) { return s.alphabet().parse_word(t); }

Element sum(Element a, const Element& b, const mpq_class& k = 1) {
    a.add(b, k);
    return a;
}

template <class F>
void random_triples(const LambdaGraphSystem& s, int d, int want, std::uint64_t seed, F&& f) {
    const auto ms = monomials(s, d);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, ms.size() - 1);
    int done = 0;
    for (int tries = 0; done < want && tries < 20 * want; ++tries) {
        try {
            if (f(ms[pick(rng)], ms[pick(rng)], ms[pick(rng)])) ++done;
        } catch (const DepthError&) {
        }
    }
    CHECK(done == want);
}

}  // namespace

TEST_CASE("rewriting on the full shift", "[algebra]") {
    const auto s = load("full2.lgs");
    const Algebra alg(s);
    const Monomial pa{W(s, "a"), 1, 1, W(s, "a")}, pb{W(s, "b"), 1, 1, W(s, "b")};
    CHECK(alg.multiply(alg.monomial(pa), alg.monomial(pb)).is_zero());
    CHECK(alg.equal(alg.multiply(alg.S_star(W(s, "a")), alg.S(W(s, "a"))), alg.one()));
    const Element cuntz = sum(alg.multiply(alg.S(W(s, "a")), alg.S_star(W(s, "a"))),
                              alg.multiply(alg.S(W(s, "b")), alg.S_star(W(s, "b"))));
    CHECK(alg.equal(cuntz, alg.one()));
}

TEST_CASE("projections move along the unique edge", "[algebra]") {
    const auto s = load("golden.lgs");
    const Algebra alg(s);
    const Element lhs = alg.multiply(alg.E(1, 1), alg.S(W(s, "a")));
    CHECK(alg.equal(lhs, alg.monomial({W(s, "a"), 2, 1, {}})));
    CHECK(alg.equal(alg.multiply(alg.multiply(alg.S_star(W(s, "a")), alg.E(1, 1)), alg.S(W(s, "a"))), alg.E(2, 1)));
    CHECK(alg.equal(alg.multiply(alg.multiply(alg.S_star(W(s, "b")), alg.E(1, 1)), alg.S(W(s, "b"))), alg.E(2, 2)));
}

TEST_CASE("adjoint and level raising", "[algebra]") {
    const auto s = load("full2.lgs");
    const Algebra alg(s);
    const Monomial m{W(s, "ab"), 2, 1, {}};
    CHECK(Algebra::adjoint(m) == Monomial{{}, 2, 1, W(s, "ab")});
    CHECK(Algebra::adjoint(Algebra::adjoint(m)) == m);
    CHECK(alg.equal(alg.raise_level({{}, 1, 1, {}}, 3), alg.E(3, 1)));
    const auto g = load("golden.lgs");
    const Algebra ag(g);
    CHECK(alg.equal(ag.raise_level({{}, 1, 1, {}}, 2), ag.E(2, 1)));
}

TEST_CASE("relations hold on the example systems", "[algebra]") {
    for (const char* f : {"full2.lgs", "golden.lgs", "even.lgs"}) {
        const auto sys = load(f);
        const Algebra alg(sys);
        for (int l = 1; l <= 4; ++l) {
            const auto r = alg.verify_relations(l);
            INFO(f << " level " << l);
            CHECK(r.ok());
            CHECK_FALSE(r.checks.empty());
        }
    }
}

TEST_CASE("relations hold on fuzzed systems", "[algebra][fuzz]") {
    for (const auto& g : fuzz_graphs(41, 40)) {
        const auto sys = from_labeled_graph(g, 3);
        const Algebra alg(sys);
        for (int l = 1; l <= 2; ++l) CHECK(alg.verify_relations(l).ok());
    }
}

TEST_CASE("non-left-resolving systems are rejected", "[algebra]") {
    LabeledGraph g;
    g.alphabet = Alphabet({"a"});
    g.states = {"1", "2"};
    g.edges = {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}};
    const auto s = from_labeled_graph(g, 3);
    CHECK_THROWS_AS(Algebra(s), Error);
}

TEST_CASE("degrees", "[algebra]") {
    const auto s = load("full2.lgs");
    const Algebra alg(s);
    const auto ones = SymbolWeights::ones(2);
    CHECK(alg.degree(ones, alg.monomial({W(s, "ab"), 2, 1, W(s, "a")})) == 1);
    CHECK(alg.degree(ones, alg.E(2, 1)) == 0);
    const SymbolWeights w{{2, 0}};
    CHECK(alg.degree(w, alg.monomial({W(s, "ab"), 2, 1, W(s, "a")})) == 0);
}

TEST_CASE("stabilized products use matrix units", "[algebra]") {
    const auto s = load("full2.lgs");
    const Algebra alg(s);
    const auto r = alg.stable_multiply({alg.one(), 0, 1}, {alg.one(), 1, 2});
    CHECK(alg.equal(r.a, alg.one()));
    CHECK((r.p == 0 && r.q == 2));
    const Element x = alg.S(W(s, "a")), y = alg.S(W(s, "b"));
    CHECK(alg.stable_multiply({x, 0, 1}, {y, 2, 1}).a.is_zero());
}

TEST_CASE("expression language", "[algebra]") {
    const auto s = load("full2.lgs");
    const Algebra alg(s);
    CHECK(alg.format(parse_expression(alg, "S(a) S(a)^* + S(b) S(b)^* - 1")) == "0\n");
    CHECK(alg.equal(parse_expression(alg, "S(a)*"), alg.monomial({{}, 1, 1, W(s, "a")})));
    const auto gsys = load("golden.lgs");
    const Algebra ag(gsys);
    CHECK_THROWS_AS(parse_expression(ag, "E(1,3)"), Error);
    CHECK_THROWS_AS(parse_expression(ag, "S(a"), Error);
}

TEST_CASE("associativity on random monomial triples", "[algebra][fuzz]") {
    for (const char* f : {"full2.lgs", "golden.lgs", "even.lgs"}) {
        const auto sys = load(f);
        const Algebra alg(sys);
        random_triples(alg.system(), 2, 300, 7, [&](const Monomial& a, const Monomial& b, const Monomial& c) {
            const Element A = alg.monomial(a), B = alg.monomial(b), C = alg.monomial(c);
            const Element left = alg.multiply(alg.multiply(A, B), C), right = alg.multiply(A, alg.multiply(B, C));
            CHECK(alg.equal(left, right));
            return true;
        });
    }
}

TEST_CASE("adjoint reverses products and projections are self-adjoint idempotents", "[algebra][fuzz]") {
    for (const char* f : {"full2.lgs", "golden.lgs", "even.lgs"}) {
        const auto sys = load(f);
        const Algebra alg(sys);
        random_triples(alg.system(), 2, 300, 8, [&](const Monomial& a, const Monomial& b, const Monomial&) {
            const Element A = alg.monomial(a), B = alg.monomial(b);
            const Element left = alg.adjoint(alg.multiply(A, B)), right = alg.multiply(alg.adjoint(B), alg.adjoint(A));
            CHECK(alg.equal(left, right));
            CHECK(alg.equal(alg.adjoint(alg.adjoint(A)), A));
            return true;
        });
        for (int l = 1; l <= 3; ++l)
            for (int i = 1; i <= alg.system().size(l); ++i) {
                const Element e = alg.E(l, i);
                CHECK(alg.equal(alg.adjoint(e), e));
                CHECK(alg.equal(alg.multiply(e, e), e));
            }
    }
}

TEST_CASE("raising commutes with multiplication", "[algebra][fuzz]") {
    const auto sys = load("golden.lgs");
    const Algebra alg(sys);
    random_triples(alg.system(), 2, 200, 9, [&](const Monomial& a, const Monomial& b, const Monomial&) {
        const Element raised = alg.multiply(alg.raise_level(a, 3), alg.raise_level(b, 3));
        const Element direct = alg.multiply(alg.monomial(a), alg.monomial(b));
        CHECK(alg.equal(raised, direct));
        return true;
    });
}

TEST_CASE("diagonal subalgebras commute", "[algebra]") {
    for (const char* f : {"full2.lgs", "golden.lgs", "even.lgs"}) {
        const auto sys = load(f);
        const Algebra alg(sys);
        std::vector<Element> dl, dlam;
        for (const auto& m : monomials(alg.system(), 2))
            if (m.mu == m.nu) dl.push_back(alg.monomial(m));
        for (const auto& w : words(alg.system(), 2)) dlam.push_back(alg.multiply(alg.S(w), alg.S_star(w)));
        for (const auto* family : {&dl, &dlam})
            for (const auto& x : *family)
                for (const auto& y : *family) CHECK(alg.equal(alg.multiply(x, y), alg.multiply(y, x)));
    }
}

TEST_CASE("degree is additive on nonzero products", "[algebra]") {
    for (const char* f : {"full2.lgs", "golden.lgs"}) {
        const auto sys = load(f);
        const Algebra alg(sys);
        const auto ms = monomials(alg.system(), 2);
        const std::vector<SymbolWeights> ws{SymbolWeights::ones(alg.system().alphabet().size()),
                                            SymbolWeights{std::vector<int>{3, -1, 2}}};
        for (const auto& w0 : ws) {
            SymbolWeights w{std::vector<int>(w0.w.begin(), w0.w.begin() + alg.system().alphabet().size())};
            for (const auto& a : ms)
                for (const auto& b : ms) {
                    const Element p = alg.multiply(alg.monomial(a), alg.monomial(b));
                    if (p.is_zero()) continue;
                    const auto d = alg.degree(w, p);
                    REQUIRE(d);
                    CHECK(*d == w.sum(a.mu) - w.sum(a.nu) + w.sum(b.mu) - w.sum(b.nu));
                }
        }
    }
}
