#include <algorithm>
#include <set>

#include "lgs/equivalence.hpp"
#include "parallel.hpp"

namespace lgs {

CoeGroupoidMap::CoeGroupoidMap(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2, CoeCertificate cert)
    : s1_(&s1), s2_(&s2), cert_(std::move(cert)) {}

CoeGroupoidMap CoeGroupoidMap::reversed() const {
    CoeCertificate c = cert_;
    std::swap(c.code.forward, c.code.inverse);
    std::swap(c.k1, c.k2);
    std::swap(c.l1, c.l2);
    return CoeGroupoidMap(*s2_, *s1_, std::move(c));
}

GroupoidMap CoeGroupoidMap::as_function() const {
    return [self = *this](const BasicBisection& b) { return self(b); };
}

std::vector<BasicBisection> CoeGroupoidMap::operator()(const BasicBisection& b) const {
    if (!admissible(*s1_, b))
        throw Error(ErrorKind::Domain, "bisection " + format_bisection(s1_->alphabet(), b) + " is not admissible");
    std::vector<BasicBisection> found;
    transport(b, b, found);
    std::sort(found.begin(), found.end(), [](const BasicBisection& x, const BasicBisection& y) {
        return std::pair(x.mu.size(), x) < std::pair(y.mu.size(), y);
    });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    // images of sibling pieces may nest; keep the outermost ones
    std::vector<BasicBisection> out;
    for (const auto& img : found) {
        std::vector<BasicBisection> with = out;
        with.push_back(img);
        if (out.empty() || !same_subset(*s2_, with, out)) out.push_back(img);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void CoeGroupoidMap::transport(const BasicBisection& root, const BasicBisection& piece,
                               std::vector<BasicBisection>& out) const {
    const auto& s1 = *s1_;
    const auto& s2 = *s2_;
    const int d = cert_.code.d;
    const int X = static_cast<int>(piece.mu.size()), Z = static_cast<int>(piece.nu.size());
    const int w = std::max(cert_.k1.window, cert_.l1.window);
    const int p = static_cast<int>(root.mu.size()), q = static_cast<int>(root.nu.size());

    auto resolved = [&]() -> std::optional<BasicBisection> {
        if (X < d || Z < d) return std::nullopt;
        if ((p > 0 && p - 1 + w > X) || (q > 0 && q - 1 + w > Z)) return std::nullopt;
        const PointPrefix px = point_from_cylinder(s1, piece.mu, piece.v);
        const PointPrefix pz = point_from_cylinder(s1, piece.nu, piece.v);
        int kp = 0, lp = 0, kq = 0, lq = 0;
        for (int i = 0; i < p; ++i) {
            kp += cert_.k1.eval(s1, px, i);
            lp += cert_.l1.eval(s1, px, i);
        }
        for (int i = 0; i < q; ++i) {
            kq += cert_.k1.eval(s1, pz, i);
            lq += cert_.l1.eval(s1, pz, i);
        }
        const int n = (lp - kp) - (lq - kq);
        const OutPrefix hx = apply(s1, cert_.code.forward, d, px);
        const OutPrefix hz = apply(s1, cert_.code.forward, d, pz);
        // past l^p(x) + k^q(z) the images of x and z have equal tails
        const int m = std::min(hx.length(), hz.length() + n);
        if (m < 1 || m - n < 1 || m < lp + kq) return std::nullopt;
        const int sel = hx.sel[static_cast<size_t>(m - 1)];
        if (sel != hz.sel[static_cast<size_t>(m - n - 1)]) return std::nullopt;
        const int L = std::max(m, m - n);
        if (L > s2.depth()) throw DepthError(L, s2.depth(), "image of a bisection");
        BasicBisection img{Word(hx.labels.begin(), hx.labels.begin() + m), {L, sel},
                           Word(hz.labels.begin(), hz.labels.begin() + (m - n))};
        if (!admissible(s2, img))
            throw Error(ErrorKind::Domain, "image " + format_bisection(s2.alphabet(), img) + " is not admissible");
        if (!exact(root, img)) return std::nullopt;
        return img;
    };

    if (auto img = resolved()) {
        out.push_back(std::move(*img));
        return;
    }
    const int l = piece.v.level;
    if (l + 1 > s1.depth()) throw DepthError(l + 1, s1.depth(), "resolving the image of a bisection");
    for (int id : s1.out(l, piece.v.index)) {
        const auto& e = s1.edges(l)[static_cast<size_t>(id)];
        BasicBisection child{piece.mu, {l + 1, e.tgt}, piece.nu};
        child.mu.push_back(e.label);
        child.nu.push_back(e.label);
        if (admissible(s1, child)) transport(root, child, out);
    }
}

namespace {

void forward_paths(const LambdaGraphSystem& s, int l, int i, int len, Word& w, std::vector<VertexRef>& vs,
                   const std::function<void(const Word&, const std::vector<VertexRef>&)>& visit) {
    if (len == 0) {
        visit(w, vs);
        return;
    }
    for (int id : s.out(l, i)) {
        const auto& e = s.edges(l)[static_cast<size_t>(id)];
        w.push_back(e.label);
        vs.push_back({l + 1, e.tgt});
        forward_paths(s, l + 1, e.tgt, len - 1, w, vs, visit);
        w.pop_back();
        vs.pop_back();
    }
}

PointPrefix extended(const LambdaGraphSystem& s, const Word& head, const std::vector<int>& sels, const Word& tail,
                     const std::vector<VertexRef>& tail_vs) {
    PointPrefix p;
    p.labels = head;
    p.labels.insert(p.labels.end(), tail.begin(), tail.end());
    p.vert.push_back({-1, 0});
    for (int x : sels) p.vert.push_back({s.depth(), x});
    p.vert.insert(p.vert.end(), tail_vs.begin(), tail_vs.end());
    return p;
}

}  // namespace

bool CoeGroupoidMap::exact(const BasicBisection& piece, const BasicBisection& image) const {
    const auto& s2 = *s2_;
    const int d = cert_.code.d;
    const int X = static_cast<int>(piece.mu.size()), Z = static_cast<int>(piece.nu.size());
    const int mx = static_cast<int>(image.mu.size()), mz = static_cast<int>(image.nu.size());
    const int E = std::max({X + d - 1 - mx, Z + d - 1 - mz, 0});
    const int L = image.v.level;
    if (L + E > s2.depth()) throw DepthError(L + E, s2.depth(), "pulling back an image bisection");
    // selectors of the image prefixes: every position names a constant orbit
    const PointPrefix ix = point_from_cylinder(s2, image.mu, image.v);
    const PointPrefix iz = point_from_cylinder(s2, image.nu, image.v);
    std::vector<int> sx, sz;
    for (int j = 1; j <= mx; ++j) sx.push_back(ix.vert[static_cast<size_t>(j)].index);
    for (int j = 1; j <= mz; ++j) sz.push_back(iz.vert[static_cast<size_t>(j)].index);
    bool ok = true;
    Word w;
    std::vector<VertexRef> vs;
    forward_paths(s2, L, image.v.index, E, w, vs, [&](const Word& tail, const std::vector<VertexRef>& tv) {
        if (!ok) return;
        const OutPrefix a = apply(s2, cert_.code.inverse, d, extended(s2, image.mu, sx, tail, tv));
        const OutPrefix b = apply(s2, cert_.code.inverse, d, extended(s2, image.nu, sz, tail, tv));
        if (a.length() < X || b.length() < Z) {
            ok = false;
            return;
        }
        if (!std::equal(piece.mu.begin(), piece.mu.end(), a.labels.begin()) ||
            !std::equal(piece.nu.begin(), piece.nu.end(), b.labels.begin())) {
            ok = false;
            return;
        }
        if ((X > 0 && a.sel[static_cast<size_t>(X - 1)] != piece.v.index) ||
            (Z > 0 && b.sel[static_cast<size_t>(Z - 1)] != piece.v.index)) {
            ok = false;
            return;
        }
        const int c = std::min(a.length() - X, b.length() - Z);
        if (slice(a, X, c) != slice(b, Z, c)) ok = false;
    });
    return ok;
}

CoeGroupoidMap coe_to_groupoid_iso(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2,
                                   const CoeCertificate& cert, int D) {
    const CheckReport r = check_coe(s1, s2, cert, D);
    if (!r.ok()) throw Error(ErrorKind::Domain, "certificate fails the orbit equivalence check: " + r.first_failure()->name);
    return CoeGroupoidMap(s1, s2, cert);
}

namespace {

std::vector<BasicBisection> concat_images(const GroupoidMap& phi, const std::vector<BasicBisection>& bs) {
    std::vector<BasicBisection> out;
    for (const auto& b : bs) {
        auto img = phi(b);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

bool disjoint(const LambdaGraphSystem& s, const std::vector<BasicBisection>& a, const std::vector<BasicBisection>& b) {
    std::vector<BasicBisection> all = a;
    all.insert(all.end(), b.begin(), b.end());
    const auto target = refine(s, all).target;
    const auto ra = refine(s, a, target), rb = refine(s, b, target);
    for (const auto& x : ra.pieces)
        if (rb.pieces.count(x)) return false;
    return true;
}

template <class Pred>
Clause per_element(const std::string& name, const std::vector<BasicBisection>& U, const Alphabet& alpha, Exec exec,
                   Pred pred) {
    std::vector<std::optional<std::string>> fail(U.size());
    detail::parallel_for(static_cast<long>(U.size()), exec,
                         [&](long k) { fail[static_cast<size_t>(k)] = pred(static_cast<size_t>(k)); });
    Clause c{name};
    c.tested = U.size();
    for (size_t k = 0; k < U.size(); ++k)
        if (fail[k]) {
            c.ok = false;
            c.witness = format_bisection(alpha, U[k]) + (fail[k]->empty() ? "" : ": " + *fail[k]);
            break;
        }
    return c;
}

std::vector<BasicBisection> universe(const LambdaGraphSystem& s, int D) {
    std::vector<BasicBisection> U;
    for (const auto& e : enumerate_elements(s, D)) U.push_back(e.bisection());
    std::sort(U.begin(), U.end());
    return U;
}

}  // namespace

CheckReport check_groupoid_iso(const GroupoidMap& phi, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2,
                               int D, const std::optional<WeightPair>& preserve, const GroupoidMap& inverse_map,
                               Exec exec) {
    CheckReport rep;
    rep.kind = "groupoid-iso";
    rep.depth = D;
    const auto U = universe(s1, D);
    const auto& a1 = s1.alphabet();
    std::vector<std::vector<BasicBisection>> img(U.size());
    detail::parallel_for(static_cast<long>(U.size()), exec,
                         [&](long k) { img[static_cast<size_t>(k)] = phi(U[static_cast<size_t>(k)]); });

    // phi(b1 b2) = phi(b1) phi(b2) on every ordered pair, including disjoint ones
    rep.clauses.push_back(per_element("functorial", U, a1, exec, [&](size_t i) -> std::optional<std::string> {
        for (size_t j = 0; j < U.size(); ++j) {
            const auto lhs = concat_images(phi, compose(s1, U[i], U[j]));
            std::vector<BasicBisection> rhs;
            for (const auto& x : img[i])
                for (const auto& y : img[j]) {
                    auto c = compose(s2, x, y);
                    rhs.insert(rhs.end(), c.begin(), c.end());
                }
            if (!same_subset(s2, lhs, rhs)) return "composed with " + format_bisection(a1, U[j]);
        }
        return std::nullopt;
    }));
    rep.clauses.back().tested = U.size() * U.size();

    rep.clauses.push_back(per_element("units", U, a1, exec, [&](size_t i) -> std::optional<std::string> {
        if (U[i].mu != U[i].nu) return std::nullopt;
        for (const auto& b : img[i])
            if (b.mu != b.nu) return "maps to " + format_bisection(s2.alphabet(), b);
        return std::nullopt;
    }));

    rep.clauses.push_back(per_element("inverse", U, a1, exec, [&](size_t i) -> std::optional<std::string> {
        std::vector<BasicBisection> inv;
        for (const auto& b : img[i]) inv.push_back(inverse(b));
        if (same_subset(s2, phi(inverse(U[i])), inv)) return std::nullopt;
        return std::string();
    }));

    // bisections with the same word lengths at one level are pairwise disjoint
    rep.clauses.push_back(per_element("injective", U, a1, exec, [&](size_t i) -> std::optional<std::string> {
        for (size_t j = i + 1; j < U.size(); ++j) {
            if (U[j].mu.size() != U[i].mu.size() || U[j].nu.size() != U[i].nu.size()) continue;
            if (!disjoint(s2, img[i], img[j])) return "image meets that of " + format_bisection(a1, U[j]);
        }
        return std::nullopt;
    }));

    if (inverse_map) {
        rep.clauses.push_back(per_element("left inverse", U, a1, exec, [&](size_t i) -> std::optional<std::string> {
            if (same_subset(s1, concat_images(inverse_map, img[i]), {U[i]})) return std::nullopt;
            return std::string();
        }));
        const auto U2 = universe(s2, D);
        rep.clauses.push_back(per_element("surjective", U2, s2.alphabet(), exec, [&](size_t i) -> std::optional<std::string> {
            if (same_subset(s2, concat_images(phi, inverse_map(U2[i])), {U2[i]})) return std::nullopt;
            return std::string();
        }));
    } else {
        Clause c{"surjective"};
        c.checked = false;
        rep.clauses.push_back(c);
    }

    if (preserve) {
        rep.clauses.push_back(per_element("cocycle", U, a1, exec, [&](size_t i) -> std::optional<std::string> {
            const int want = cocycle_value(preserve->w1, U[i]);
            for (const auto& b : img[i]) {
                const int got = cocycle_value(preserve->w2, b);
                if (got != want)
                    return "c1 = " + std::to_string(want) + " but c2 = " + std::to_string(got) + " on " +
                           format_bisection(s2.alphabet(), b);
            }
            return std::nullopt;
        }));
    }
    return rep;
}

}  // namespace lgs
