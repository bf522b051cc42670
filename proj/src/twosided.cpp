#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "check_detail.hpp"

namespace lgs {

using detail::Failure;

namespace {

void check_budget(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2, const TwoSidedCertificate& cert, int D) {
    if (cert.l < 0 || cert.l > cert.L) throw Error(ErrorKind::Domain, "injectivity window must satisfy 0 <= l <= L");
    const int depth = std::min(s1.depth(), s2.depth());
    if (cert.L > depth) throw DepthError(cert.L, depth, "recoding bound");
    if (D < cert.L) throw DepthError(cert.L, D, "two-sided check below the recoding bound");
    if (D < cert.code.d || D > depth) throw DepthError(std::max(D, cert.code.d), depth, "two-sided check");
}

/// labels and known vertices agree on positions [from, to]
bool agree(const PointPrefix& a, const PointPrefix& b, int from, int to) {
    for (int j = from; j <= to; ++j) {
        const auto jj = static_cast<size_t>(j);
        if (a.labels[jj - 1] != b.labels[jj - 1] || a.vert[jj] != b.vert[jj]) return false;
    }
    return true;
}

}  // namespace

CheckReport check_two_sided(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2, const TwoSidedCertificate& cert,
                            int D, Exec exec) {
    check_budget(s1, s2, cert, D);
    CheckReport rep;
    rep.kind = "two-sided";
    rep.depth = D;
    const int d = cert.code.d;
    const detail::Side side{s1, s2, cert.code.forward, cert.code.inverse, d, 1};
    detail::well_defined(side, D, exec, rep);
    if (!rep.ok()) return rep;

    const auto cyls = cylinders(s1, D, D);
    const auto& a1 = s1.alphabet();
    std::vector<OutPrefix> img(cyls.size());
    detail::parallel_for(static_cast<long>(cyls.size()), exec,
                         [&](long k) { img[static_cast<size_t>(k)] = forward_image(s1, cert.code, cyls[static_cast<size_t>(k)]); });

    rep.clauses.push_back(detail::scan("shift commuting", cyls, a1, exec, [&](const Cylinder& x) -> Failure {
        const PointPrefix px = point_from_cylinder(s1, x.word, x.vertex);
        const OutPrefix ys = apply(s1, cert.code.forward, d, shift(px, 1));
        const OutPrefix y = apply(s1, cert.code.forward, d, px);
        if (ys == slice(y, 1)) return std::nullopt;
        return "psi(sigma x) = " + detail::describe(s2.alphabet(), ys);
    }));

    // surjectivity onto cylinders of the target, at the resolution the images reach
    {
        const int M = std::min(D - cert.L, D - d + 1);
        Clause c{"surjective"};
        std::set<Cylinder> hit;
        for (const auto& y : img)
            hit.insert({Word(y.labels.begin(), y.labels.begin() + M), {M, M ? y.sel[static_cast<size_t>(M - 1)] : 1}});
        const auto target = cylinders(s2, M, M);
        c.tested = target.size();
        for (const auto& t : target)
            if (!hit.count(t)) {
                c.ok = false;
                c.witness = format_cylinder(s2.alphabet(), t) + ": not an image";
                break;
            }
        rep.clauses.push_back(c);
    }

    // equal images force agreement from index l on
    {
        Clause c{"injective from l"};
        const int top = D - d + 1;
        const int from = std::max(cert.l, 1);
        std::map<OutPrefix, std::vector<size_t>, decltype([](const OutPrefix& a, const OutPrefix& b) {
                     return std::tie(a.labels, a.sel) < std::tie(b.labels, b.sel);
                 })>
            groups;
        for (size_t k = 0; k < cyls.size(); ++k) groups[img[k]].push_back(k);
        std::optional<std::pair<size_t, size_t>> worst;
        for (const auto& [y, ks] : groups)
            for (size_t i = 0; i < ks.size(); ++i) {
                const PointPrefix pi = point_from_cylinder(s1, cyls[ks[i]].word, cyls[ks[i]].vertex);
                for (size_t j = i + 1; j < ks.size(); ++j) {
                    ++c.tested;
                    const PointPrefix pj = point_from_cylinder(s1, cyls[ks[j]].word, cyls[ks[j]].vertex);
                    if (from <= top && !agree(pi, pj, from, top)) {
                        const std::pair<size_t, size_t> cand{ks[i], ks[j]};
                        if (!worst || cand < *worst) worst = cand;
                    }
                }
            }
        if (worst) {
            c.ok = false;
            c.cylinder = cyls[worst->first];
            c.witness = format_cylinder(a1, cyls[worst->first]) + " / " + format_cylinder(a1, cyls[worst->second]) +
                        ": equal images, differ before position " + std::to_string(top + 1);
        }
        rep.clauses.push_back(c);
    }

    Clause ra{"right asymptotic M=0 N=" + std::to_string(d - 1)};
    ra.tested = 1;
    rep.clauses.push_back(ra);
    return rep;
}

std::pair<int, int> PastClasses::position(const Word& nu, int vertex) const {
    auto it = classes.find(vertex);
    if (it == classes.end()) throw Error(ErrorKind::Range, "no classes at vertex " + std::to_string(vertex));
    for (const auto& cls : it->second) {
        auto w = std::find(cls.begin(), cls.end(), nu);
        if (w != cls.end()) return {static_cast<int>(w - cls.begin()), static_cast<int>(cls.size())};
    }
    throw Error(ErrorKind::Range, "word is not in any class at vertex " + std::to_string(vertex));
}

std::int64_t PastClasses::g(const Word& nu, int vertex, std::int64_t n) const {
    const auto [t, r] = position(nu, vertex);
    return t + static_cast<std::int64_t>(r) * n;
}

PastClasses past_equivalence_classes(const LambdaGraphSystem& s1, const TwoSidedCertificate& cert, int D) {
    const int L = cert.L;
    if (D < L) throw DepthError(L, D, "past classes");
    if (D > s1.depth()) throw DepthError(D, s1.depth(), "past classes");
    PastClasses pc;
    pc.L = L;
    std::map<int, std::vector<Word>> members;
    for (const auto& c : cylinders(s1, L, L)) members[c.vertex.index].push_back(c.word);

    // points sharing the tail after position L: same vertex at L, same tail labels, same end vertex
    std::map<std::tuple<int, Word, int>, std::vector<std::pair<Word, OutPrefix>>> groups;
    for (const auto& x : cylinders(s1, D, D)) {
        const PointPrefix p = point_from_cylinder(s1, x.word, x.vertex);
        const int v = p.vert[static_cast<size_t>(L)].index;
        groups[{v, Word(x.word.begin() + L, x.word.end()), x.vertex.index}].push_back(
            {Word(x.word.begin(), x.word.begin() + L), forward_image(s1, cert.code, x)});
    }
    std::map<int, std::set<std::pair<Word, Word>>> rel;
    for (const auto& [key, items] : groups)
        for (const auto& [w1, y1] : items)
            for (const auto& [w2, y2] : items)
                if (y1 == y2) rel[std::get<0>(key)].insert({w1, w2});

    for (auto& [v, ws] : members) {
        const size_t n = ws.size();
        std::vector<std::vector<char>> R(n, std::vector<char>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) R[i][j] = i == j || rel[v].count({ws[i], ws[j]});
        auto C = R;
        for (size_t k = 0; k < n; ++k)
            for (size_t i = 0; i < n; ++i)
                if (C[i][k])
                    for (size_t j = 0; j < n; ++j)
                        if (C[k][j]) C[i][j] = 1;
        if (C != R) pc.transitive = false;
        std::vector<char> done(n, 0);
        auto& out = pc.classes[v];
        for (size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            std::vector<Word> cls;
            for (size_t j = 0; j < n; ++j)
                if (C[i][j] && C[j][i]) {
                    cls.push_back(ws[j]);
                    done[j] = 1;
                }
            std::sort(cls.begin(), cls.end());
            out.push_back(std::move(cls));
        }
    }
    return pc;
}

StableIso::StableIso(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2, TwoSidedCertificate cert, int D)
    : s1_(&s1), s2_(&s2), cert_(std::move(cert)), D_(D), classes_(past_equivalence_classes(s1, cert_, D)) {}

std::pair<OutPrefix, std::int64_t> StableIso::xi(const Cylinder& x, std::int64_t p) const {
    const PointPrefix px = point_from_cylinder(*s1_, x.word, x.vertex);
    const int L = cert_.L;
    const int v = s1_->project(px.vert[static_cast<size_t>(L)].level, px.vert[static_cast<size_t>(L)].index, L);
    return {forward_image(*s1_, cert_.code, x), classes_.g(Word(x.word.begin(), x.word.begin() + L), v, p)};
}

std::pair<Word, int> StableIso::head_class(const BasicBisection& piece, bool range) const {
    const Word& w = range ? piece.mu : piece.nu;
    const PointPrefix p = point_from_cylinder(*s1_, w, piece.v);
    const int L = cert_.L;
    const VertexRef u = p.vert[static_cast<size_t>(L)];
    return {Word(w.begin(), w.begin() + L), s1_->project(u.level, u.index, L)};
}

void StableIso::transport(const BasicBisection& piece, int p, int q, std::vector<BasicBisection>& out) const {
    const auto& s1 = *s1_;
    const auto& s2 = *s2_;
    const int d = cert_.code.d;
    const int X = static_cast<int>(piece.mu.size()), Z = static_cast<int>(piece.nu.size());
    const int need = std::max(cert_.L, d);
    if (X >= need && Z >= need) {
        const OutPrefix hx = apply(s1, cert_.code.forward, d, point_from_cylinder(s1, piece.mu, piece.v));
        const OutPrefix hz = apply(s1, cert_.code.forward, d, point_from_cylinder(s1, piece.nu, piece.v));
        const int n = X - Z;
        const int m = std::min(hx.length(), hz.length() + n);
        // the code commutes with the shift, so the images have equal tails past |mu| and |nu|
        if (m >= std::max(p, 1) && m - n >= std::max(q, 1)) {
            const int sel = hx.sel[static_cast<size_t>(m - 1)];
            if (sel != hz.sel[static_cast<size_t>(m - n - 1)])
                throw Error(ErrorKind::Domain, "code images disagree on a shared tail");
            const int L = std::max(m, m - n);
            if (L > s2.depth()) throw DepthError(L, s2.depth(), "image of a stable bisection");
            out.push_back({Word(hx.labels.begin(), hx.labels.begin() + m), {L, sel},
                           Word(hz.labels.begin(), hz.labels.begin() + (m - n))});
            out.push_back(piece);
            return;
        }
    }
    const int l = piece.v.level;
    if (l + 1 > s1.depth()) throw DepthError(l + 1, s1.depth(), "resolving the image of a stable bisection");
    for (int id : s1.out(l, piece.v.index)) {
        const auto& e = s1.edges(l)[static_cast<size_t>(id)];
        BasicBisection child{piece.mu, {l + 1, e.tgt}, piece.nu};
        child.mu.push_back(e.label);
        child.nu.push_back(e.label);
        if (admissible(s1, child)) transport(child, p, q, out);
    }
}

std::vector<StableBisection> StableIso::operator()(const StableBisection& b) const {
    if (!admissible(*s1_, b.base))
        throw Error(ErrorKind::Domain, "bisection " + format_bisection(s1_->alphabet(), b.base) + " is not admissible");
    if (b.p < 0 || b.q < 0) throw Error(ErrorKind::Range, "stable coordinates must be nonnegative");
    // transport emits (image, source piece) pairs
    std::vector<BasicBisection> pairs;
    transport(b.base, static_cast<int>(b.base.mu.size()), static_cast<int>(b.base.nu.size()), pairs);
    std::vector<StableBisection> out;
    for (size_t k = 0; k < pairs.size(); k += 2) {
        const auto [wx, vx] = head_class(pairs[k + 1], true);
        const auto [wz, vz] = head_class(pairs[k + 1], false);
        out.push_back({pairs[k], static_cast<int>(classes_.g(wx, vx, b.p)), static_cast<int>(classes_.g(wz, vz, b.q))});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

/// true when the two families of stable bisections cover the same set
bool same_stable(const LambdaGraphSystem& s, const std::vector<StableBisection>& a, const std::vector<StableBisection>& b) {
    std::map<std::pair<int, int>, std::pair<std::vector<BasicBisection>, std::vector<BasicBisection>>> by_head;
    for (const auto& x : a) by_head[{x.p, x.q}].first.push_back(x.base);
    for (const auto& x : b) by_head[{x.p, x.q}].second.push_back(x.base);
    for (const auto& [head, fam] : by_head)
        if (!same_subset(s, fam.first, fam.second)) return false;
    return true;
}

bool disjoint_bases(const LambdaGraphSystem& s, const std::vector<BasicBisection>& a, const std::vector<BasicBisection>& b) {
    std::vector<BasicBisection> all = a;
    all.insert(all.end(), b.begin(), b.end());
    const auto target = refine(s, all).target;
    const auto ra = refine(s, a, target), rb = refine(s, b, target);
    for (const auto& x : ra.pieces)
        if (rb.pieces.count(x)) return false;
    return true;
}

std::string format_stable(const Alphabet& alpha, const StableBisection& b) {
    return format_bisection(alpha, b.base) + " x (" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
}

}  // namespace

StableIsoReport build_stable_iso(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2,
                                 const TwoSidedCertificate& cert, int D, size_t samples, std::uint64_t seed, Exec exec) {
    const CheckReport pre = check_two_sided(s1, s2, cert, D, exec);
    if (!pre.ok()) throw Error(ErrorKind::Domain, "two-sided certificate fails: " + pre.first_failure()->name);
    const StableIso iso(s1, s2, cert, D);
    StableIsoReport out;
    auto& rep = out.report;
    rep.kind = "stable-iso";
    rep.depth = D;
    const auto& a1 = s1.alphabet();

    Clause trans{"past relation transitive"};
    trans.tested = iso.classes().classes.size();
    trans.ok = iso.classes().transitive;
    rep.clauses.push_back(trans);

    // residue classes t + r n over one class partition [0, 1000]
    Clause dec{"decomposition"};
    bool singletons = true;
    for (const auto& [v, classes] : iso.classes().classes)
        for (const auto& cls : classes) {
            singletons = singletons && cls.size() == 1;
            std::vector<int> hits(1001, 0);
            for (const auto& w : cls)
                for (std::int64_t n = 0;; ++n) {
                    const auto g = iso.classes().g(w, v, n);
                    if (g > 1000) break;
                    ++hits[static_cast<size_t>(g)];
                }
            ++dec.tested;
            if (dec.ok && std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) {
                dec.ok = false;
                dec.witness = "class of " + a1.format(cls.front()) + " at vertex " + std::to_string(v);
            }
        }
    rep.clauses.push_back(dec);

    // sampled stable universe: fine bisections at a small resolution with heads p, q <= 4
    const int base_depth = std::min({2, s1.depth(), D});
    std::vector<StableBisection> universe;
    for (const auto& e : enumerate_elements(s1, base_depth))
        for (int p = 0; p <= 4; ++p)
            for (int q = 0; q <= 4; ++q) universe.push_back({e.bisection(), p, q});
    std::mt19937_64 rng(seed);
    std::shuffle(universe.begin(), universe.end(), rng);
    if (universe.size() > samples) universe.resize(samples);
    std::sort(universe.begin(), universe.end());
    out.samples = universe.size();

    std::vector<std::vector<StableBisection>> img(universe.size());
    detail::parallel_for(static_cast<long>(universe.size()), exec,
                         [&](long k) { img[static_cast<size_t>(k)] = iso(universe[static_cast<size_t>(k)]); });

    const auto w1 = SymbolWeights::ones(s1.alphabet().size());
    const auto w2 = SymbolWeights::ones(s2.alphabet().size());
    for (const auto mode : {StableMode::Lift, StableMode::CanonicalStable}) {
        Clause c{mode == StableMode::Lift ? "stable cocycle" : "canonical stable cocycle"};
        // with nontrivial classes the head shift changes q - p; recorded but not required
        c.checked = mode == StableMode::Lift || singletons;
        c.tested = universe.size();
        for (size_t k = 0; k < universe.size() && c.ok; ++k) {
            const int want = stable_cocycle(w1, universe[k], mode);
            for (const auto& b : img[k])
                if (stable_cocycle(w2, b, mode) != want) {
                    c.ok = false;
                    c.witness = format_stable(a1, universe[k]) + " -> " + format_stable(s2.alphabet(), b);
                    break;
                }
        }
        rep.clauses.push_back(c);
    }

    Clause fun{"functorial"};
    for (size_t i = 0; i < universe.size() && fun.ok; ++i) {
        int partners = 0;
        for (size_t j = 0; j < universe.size() && partners < 8; ++j) {
            if (universe[i].q != universe[j].p) continue;
            const auto comp = stable_compose(s1, universe[i], universe[j]);
            if (comp.empty()) continue;
            ++partners;
            ++fun.tested;
            std::vector<StableBisection> lhs, rhs;
            for (const auto& c : comp) {
                auto im = iso(c);
                lhs.insert(lhs.end(), im.begin(), im.end());
            }
            for (const auto& x : img[i])
                for (const auto& y : img[j]) {
                    auto c = stable_compose(s2, x, y);
                    rhs.insert(rhs.end(), c.begin(), c.end());
                }
            if (!same_stable(s2, lhs, rhs)) {
                fun.ok = false;
                fun.witness = format_stable(a1, universe[i]) + " ; " + format_stable(a1, universe[j]);
                break;
            }
        }
    }
    rep.clauses.push_back(fun);

    // sampled elements with equal word lengths are equal or disjoint; so must their images be
    Clause inj{"injective"};
    for (size_t i = 0; i < universe.size() && inj.ok; ++i)
        for (size_t j = i + 1; j < universe.size(); ++j) {
            const auto &a = universe[i].base, &b = universe[j].base;
            if (a.mu.size() != b.mu.size() || a.nu.size() != b.nu.size()) continue;
            std::map<std::pair<int, int>, std::pair<std::vector<BasicBisection>, std::vector<BasicBisection>>> heads;
            for (const auto& x : img[i]) heads[{x.p, x.q}].first.push_back(x.base);
            for (const auto& x : img[j]) heads[{x.p, x.q}].second.push_back(x.base);
            ++inj.tested;
            for (const auto& [h, fam] : heads)
                if (!fam.first.empty() && !fam.second.empty() && !disjoint_bases(s2, fam.first, fam.second)) {
                    inj.ok = false;
                    inj.witness = format_stable(a1, universe[i]) + " / " + format_stable(a1, universe[j]);
                    break;
                }
            if (!inj.ok) break;
        }
    rep.clauses.push_back(inj);

    // xi on (cylinder, p <= 6): equal values force equal p and agreement where images are defined
    Clause xi{"xi injective"};
    const int top = D - cert.code.d + 1;
    std::map<std::pair<Word, std::vector<int>>, std::vector<std::pair<Cylinder, std::int64_t>>> seen;
    for (const auto& x : cylinders(s1, D, D))
        for (std::int64_t p = 0; p <= 6; ++p) {
            auto [y, g] = iso.xi(x, p);
            Word key = y.labels;
            key.push_back(static_cast<int>(g));
            seen[{key, y.sel}].push_back({x, p});
            ++xi.tested;
        }
    for (const auto& [key, xs] : seen) {
        for (size_t k = 1; k < xs.size() && xi.ok; ++k) {
            const auto& [x0, p0] = xs.front();
            const auto& [x1, p1] = xs[k];
            const PointPrefix a = point_from_cylinder(s1, x0.word, x0.vertex);
            const PointPrefix b = point_from_cylinder(s1, x1.word, x1.vertex);
            if (p0 != p1 || !agree(a, b, 1, top)) {
                xi.ok = false;
                xi.witness = format_cylinder(a1, x0) + "," + std::to_string(p0) + " / " + format_cylinder(a1, x1) + "," +
                             std::to_string(p1);
            }
        }
        if (!xi.ok) break;
    }
    rep.clauses.push_back(xi);
    return out;
}

}  // namespace lgs
