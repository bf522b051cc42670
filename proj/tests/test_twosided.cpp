#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace lgs;
using namespace lgs::test;

namespace {

struct Two {
    LambdaGraphSystem s1, s2;
    TwoSidedCertificate cert;
};

Two two(const std::string& a, const std::string& b, const std::string& cert, int depth = 5) {
    Two t{load(a, depth), load(b, depth), {}};
    t.cert = two_sided_view(load_cert(cert, t.s1, t.s2));
    return t;
}

}  // namespace

TEST_CASE("identity certificates are two-sided conjugacies", "[twosided]") {
    for (const auto& [sys, cert] : std::vector<std::pair<std::string, std::string>>{
             {"full2.lgs", "id-full2.cert"}, {"golden.lgs", "id-golden.cert"}, {"even.lgs", "id-even.cert"}}) {
        const auto t = two(sys, sys, cert);
        const auto r = check_two_sided(t.s1, t.s2, t.cert, 3);
        INFO(format_report(r));
        CHECK(r.ok());
        const auto pc = past_equivalence_classes(t.s1, t.cert, 3);
        CHECK(pc.transitive);
        for (const auto& [v, cls] : pc.classes)
            for (const auto& c : cls) CHECK(c.size() == 1);
    }
}

TEST_CASE("the 2-block recoding is a two-sided conjugacy", "[twosided]") {
    const auto t = two("golden.graph", "golden2.graph", "golden2.cert", 9);
    const auto r = check_two_sided(t.s1, t.s2, t.cert, 4);
    INFO(format_report(r));
    CHECK(r.ok());
    CHECK(check_two_sided(t.s1, t.s2, t.cert, 4, Exec::Serial).ok());
    CHECK(past_equivalence_classes(t.s1, t.cert, 4).transitive);
}

TEST_CASE("a collapsing code merges pasts", "[twosided]") {
    const auto t = two("golden.graph", "gm-vertex.graph", "collapse.cert", 9);
    const auto r = check_two_sided(t.s1, t.s2, t.cert, 4);
    INFO(format_report(r));
    REQUIRE(r.ok());
    const auto pc = past_equivalence_classes(t.s1, t.cert, 4);
    CHECK(pc.transitive);
    size_t largest = 0;
    for (const auto& [v, cls] : pc.classes)
        for (const auto& c : cls) largest = std::max(largest, c.size());
    CHECK(largest == 2);
}

TEST_CASE("injectivity from a too small index fails with a witness pair", "[twosided]") {
    const auto t = two("golden.lgs", "gm-vertex.graph", "collapse-bad.cert");
    const auto r = check_two_sided(t.s1, t.s2, t.cert, 4);
    REQUIRE_FALSE(r.ok());
    const auto* c = r.find("injective from l");
    REQUIRE(c);
    CHECK_FALSE(c->ok);
    CHECK_FALSE(c->witness.empty());
}

TEST_CASE("residue interleaving decomposes the nonnegative integers", "[twosided]") {
    const auto t = two("golden.graph", "gm-vertex.graph", "collapse.cert", 9);
    const auto pc = past_equivalence_classes(t.s1, t.cert, 4);
    for (const auto& [v, cls] : pc.classes)
        for (const auto& c : cls) {
            std::set<std::int64_t> hit;
            const int N = 1000;
            for (const auto& nu : c)
                for (int n = 0; n < N; ++n) CHECK(hit.insert(pc.g(nu, v, n)).second);
            CHECK(*hit.rbegin() == static_cast<std::int64_t>(c.size()) * N - 1);
            CHECK(*hit.begin() == 0);
        }
}

TEST_CASE("shifting a code reads the later window", "[twosided]") {
    const auto s = load("golden.lgs");
    const auto id = load_cert("id-golden.cert", s, s).code;
    const auto shifted = shift_code(s, id.forward, 1, 1);
    for (const auto& [cyl, out] : shifted.map) {
        CHECK(cyl.word.size() == 2);
        CHECK(out.sym == cyl.word[1]);
    }
    CHECK_THROWS_AS(shift_code(s, id.forward, 1, 5), DepthError);
}

TEST_CASE("a shifted certificate still passes the two-sided check", "[twosided]") {
    const auto t = two("golden.lgs", "golden.lgs", "id-golden.cert");
    for (int M = 1; M <= 2; ++M) {
        const auto c = shift_certificate(t.s1, t.cert, M);
        CHECK((c.l == std::max(t.cert.l, 1) + M && c.L >= c.l && c.code.d == t.cert.code.d + M));
        const auto r = check_two_sided(t.s1, t.s2, c, 4);
        INFO(format_report(r));
        CHECK(r.ok());
    }
    // keeping the old injectivity index is refuted by a pair that differs only in the forgotten prefix
    auto c = shift_certificate(t.s1, t.cert, 1);
    c.l = t.cert.l;
    CHECK_FALSE(check_two_sided(t.s1, t.s2, c, 4).find("injective from l")->ok);
}

TEST_CASE("stabilized map of the identity certificate", "[twosided]") {
    const auto t = two("golden.lgs", "golden.lgs", "id-golden.cert");
    const StableIso iso(t.s1, t.s2, t.cert, 3);
    for (const auto& e : enumerate_elements(t.s1, 1))
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q) {
                const StableBisection b{e.bisection(), p, q};
                std::vector<BasicBisection> bases;
                for (const auto& x : iso(b)) {
                    CHECK((x.p == p && x.q == q));
                    bases.push_back(x.base);
                }
                CHECK(same_subset(t.s2, bases, {b.base}));
            }
    const auto r = build_stable_iso(t.s1, t.s2, t.cert, 3, 200, 0);
    INFO(format_report(r.report));
    CHECK(r.report.ok());
}

TEST_CASE("stabilized map of the 2-block recoding", "[twosided]") {
    const auto t = two("golden.graph", "golden2.graph", "golden2.cert", 9);
    const auto r = build_stable_iso(t.s1, t.s2, t.cert, 4, 500, 0);
    INFO(format_report(r.report));
    CHECK(r.samples >= 500);
    CHECK(r.report.ok());
    CHECK(r.report.find("stable cocycle")->ok);
    CHECK(r.report.find("xi injective")->ok);
    // same seed, same report
    CHECK(format_report(build_stable_iso(t.s1, t.s2, t.cert, 4, 500, 0).report) == format_report(r.report));
}

TEST_CASE("stabilized map of the collapsing code", "[twosided]") {
    const auto t = two("golden.graph", "gm-vertex.graph", "collapse.cert", 9);
    const auto r = build_stable_iso(t.s1, t.s2, t.cert, 4, 300, 1);
    INFO(format_report(r.report));
    CHECK(r.report.ok());
    const StableIso iso(t.s1, t.s2, t.cert, 4);
    std::set<std::pair<OutPrefix, std::int64_t>, bool (*)(const std::pair<OutPrefix, std::int64_t>&,
                                                          const std::pair<OutPrefix, std::int64_t>&)>
        seen([](const auto& a, const auto& b) {
            return std::tie(a.first.labels, a.first.sel, a.second) < std::tie(b.first.labels, b.first.sel, b.second);
        });
    for (const auto& c : cylinders(t.s1, 4, 4))
        for (int p = 0; p <= 6; ++p) CHECK(seen.insert(iso.xi(c, p)).second);
}

TEST_CASE("relabeling certificates on fuzzed systems give transitive singleton pasts", "[twosided][fuzz]") {
    std::mt19937_64 rng(61);
    for (const auto& g : fuzz_graphs(62, 40)) {
        std::vector<int> perm(static_cast<size_t>(g.alphabet.size()));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto s1 = from_labeled_graph(g, 4), s2 = from_labeled_graph(relabel(g, perm), 4);
        const TwoSidedCertificate cert{relabel_code(s1, perm), 0, 0};
        REQUIRE(check_two_sided(s1, s2, cert, 3).ok());
        const auto pc = past_equivalence_classes(s1, cert, 3);
        CHECK(pc.transitive);
    }
}
