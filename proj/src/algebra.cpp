#include "lgs/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace lgs {

void Element::add(const Monomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

void Element::add(const Element& o, const mpq_class& scale) {
    for (const auto& [m, c] : o.terms) add(m, c * scale);
}

int SymbolWeights::sum(const Word& x) const {
    int t = 0;
    for (int a : x) t += w.at(static_cast<size_t>(a));
    return t;
}

bool RelationsReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.ok; });
}

Algebra::Algebra(const LambdaGraphSystem& s) : s_(&s) {
    if (!is_left_resolving(s).ok) throw Error(ErrorKind::Domain, "the algebra needs a left-resolving system");
}

bool Algebra::admissible(const Monomial& m) const {
    if (m.level < 0 || m.level > s_->depth() || m.index < 1 || m.index > s_->size(m.level)) return false;
    return s_->admissible(m.mu, m.level, m.index) && s_->admissible(m.nu, m.level, m.index);
}

Element Algebra::one() const {
    Element e;
    for (int i = 1; i <= s_->size(0); ++i) e.add(Monomial{{}, 0, i, {}}, 1);
    return e;
}

Element Algebra::E(int l, int i) const {
    if (l < 0 || l > s_->depth()) throw DepthError(l, s_->depth(), "E(" + std::to_string(l) + "," + std::to_string(i) + ")");
    if (i < 1 || i > s_->size(l))
        throw Error(ErrorKind::Range, "E(" + std::to_string(l) + "," + std::to_string(i) + "): index out of range (m(" +
                                          std::to_string(l) + ") = " + std::to_string(s_->size(l)) + ")");
    Element e;
    e.add(Monomial{{}, l, i, {}}, 1);
    return e;
}

Element Algebra::S(const Word& w) const {
    const int l = static_cast<int>(w.size());
    if (l > s_->depth()) throw DepthError(l, s_->depth(), "S(" + s_->alphabet().format(w) + ")");
    Element e;
    for (int t = 1; t <= s_->size(l); ++t)
        if (s_->admissible(w, l, t)) e.add(Monomial{w, l, t, {}}, 1);
    if (e.is_zero()) throw Error(ErrorKind::Domain, "S(" + s_->alphabet().format(w) + ") is not admissible");
    return e;
}

Element Algebra::monomial(const Monomial& m) const {
    if (m.level > s_->depth()) throw DepthError(m.level, s_->depth(), "monomial " + format(m));
    Element e;
    if (admissible(m)) e.add(m, 1);
    return e;
}

Element Algebra::multiply(const Monomial& a, const Monomial& b) const {
    Element out;
    const size_t nl = a.nu.size(), kl = b.mu.size();
    if (kl < nl) {
        // nu longer than kappa: reduce to the other case through the adjoint
        if (!std::equal(b.mu.begin(), b.mu.end(), a.nu.begin())) return out;
        return adjoint(multiply(adjoint(b), adjoint(a)));
    }
    if (!std::equal(a.nu.begin(), a.nu.end(), b.mu.begin())) return out;  // S_nu^* S_kappa = 0
    Word rest(b.mu.begin() + static_cast<std::ptrdiff_t>(nl), b.mu.end());
    const int lt = a.level + static_cast<int>(rest.size());
    const int L = std::max(lt, b.level);
    if (L > s_->depth()) throw DepthError(L, s_->depth(), "product " + format(a) + " * " + format(b));
    // E_i^l S_rest = S_rest sum_{t} E_t^{l+|rest|}
    std::vector<int> cur{a.index};
    int lev = a.level;
    for (int x : rest) {
        cur = s_->targets(lev, cur, x);
        ++lev;
        if (cur.empty()) return out;
    }
    std::vector<int> up;
    for (int t : cur) {
        auto d = s_->descendants(lt, t, L);
        up.insert(up.end(), d.begin(), d.end());
    }
    std::sort(up.begin(), up.end());
    auto other = s_->descendants(b.level, b.index, L);
    std::vector<int> both;
    std::set_intersection(up.begin(), up.end(), other.begin(), other.end(), std::back_inserter(both));
    Word mu = a.mu;
    mu.insert(mu.end(), rest.begin(), rest.end());
    for (int v : both) {
        Monomial m{mu, L, v, b.nu};
        if (admissible(m)) out.add(m, 1);
    }
    return out;
}

Element Algebra::multiply(const Element& a, const Element& b) const {
    Element out;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) out.add(multiply(ma, mb), ca * cb);
    return normalize(out);
}

Element Algebra::adjoint(const Element& a) const {
    Element out;
    for (const auto& [m, c] : a.terms) out.add(adjoint(m), c);
    return out;
}

Element Algebra::raise_level(const Monomial& m, int l2) const {
    if (l2 < m.level) throw Error(ErrorKind::Domain, "raise_level target below the monomial level");
    if (l2 > s_->depth()) throw DepthError(l2, s_->depth(), "raising " + format(m));
    Element out;
    for (int t : s_->descendants(m.level, m.index, l2)) {
        Monomial r{m.mu, l2, t, m.nu};
        if (admissible(r)) out.add(r, 1);
    }
    return out;
}

void Algebra::extend_into(const Monomial& m, int letters, const mpq_class& c, Element& out) const {
    if (letters == 0) {
        out.add(m, c);
        return;
    }
    if (m.level + 1 > s_->depth()) throw DepthError(m.level + 1, s_->depth(), "refining " + format(m));
    for (int id : s_->out(m.level, m.index)) {
        const auto& e = s_->edges(m.level)[static_cast<size_t>(id)];
        Monomial x{m.mu, m.level + 1, e.tgt, m.nu};
        x.mu.push_back(e.label);
        x.nu.push_back(e.label);
        extend_into(x, letters - 1, c, out);
    }
}

std::map<int, Algebra::Target> Algebra::targets(const Element& a) const {
    std::map<int, Target> t;
    for (const auto& [m, c] : a.terms) {
        auto& g = t[m.n()];
        g.B = std::max(g.B, static_cast<int>(m.nu.size()));
    }
    for (const auto& [m, c] : a.terms) {
        auto& g = t[m.n()];
        g.L = std::max(g.L, m.level + g.B - static_cast<int>(m.nu.size()));
    }
    return t;
}

Element Algebra::refine(const Element& a, const std::map<int, Target>& t) const {
    Element ext;
    for (const auto& [m, c] : a.terms) {
        const auto& g = t.at(m.n());
        extend_into(m, g.B - static_cast<int>(m.nu.size()), c, ext);
    }
    Element out;
    for (const auto& [m, c] : ext.terms) out.add(raise_level(m, t.at(m.n()).L), c);
    return out;
}

Element Algebra::normalize(const Element& a) const {
    Element clean;
    for (const auto& [m, c] : a.terms)
        if (admissible(m)) clean.add(m, c);
    return refine(clean, targets(clean));
}

bool Algebra::equal(const Element& a, const Element& b) const {
    auto ta = targets(a);
    for (const auto& [n, g] : targets(b)) {
        auto& x = ta[n];
        x.B = std::max(x.B, g.B);
        x.L = std::max(x.L, g.L);
    }
    // the shared target may exceed either element's own; recompute levels for the larger B
    for (const Element* e : {&a, &b})
        for (const auto& [m, c] : e->terms) {
            auto& g = ta[m.n()];
            g.L = std::max(g.L, m.level + g.B - static_cast<int>(m.nu.size()));
        }
    Element diff = a;
    diff.add(b, -1);
    return refine(diff, ta).is_zero();
}

std::optional<int> Algebra::degree(const SymbolWeights& w, const Element& a) const {
    std::optional<int> d;
    for (const auto& [m, c] : a.terms) {
        int x = w.sum(m.mu) - w.sum(m.nu);
        if (d && *d != x) return std::nullopt;
        d = x;
    }
    return d;
}

StableElement Algebra::stable_multiply(const StableElement& x, const StableElement& y) const {
    StableElement r;
    r.p = x.p;
    r.q = y.q;
    if (x.q == y.p) r.a = multiply(x.a, y.a);
    return r;
}

std::string Algebra::format(const Monomial& m) const {
    auto w = [&](const Word& x) { return x.empty() ? std::string() : s_->alphabet().format(x); };
    return "S(" + w(m.mu) + ") E(" + std::to_string(m.level) + "," + std::to_string(m.index) + ") S(" + w(m.nu) + ")^*";
}

std::string Algebra::format(const Element& a) const {
    if (a.is_zero()) return "0\n";
    std::ostringstream o;
    for (const auto& [m, c] : a.terms) o << c.get_str() << " * " << format(m) << "\n";
    return o.str();
}

RelationsReport Algebra::verify_relations(int l) const {
    if (l < 0 || l + 1 > s_->depth()) throw DepthError(l + 1, s_->depth(), "relations at level " + std::to_string(l));
    RelationsReport rep;
    rep.level = l;
    const auto& A = s_->alphabet();
    const Element I1 = one();
    auto check = [&](const std::string& rel, const std::string& inst, const Element& lhs, const Element& rhs) {
        rep.checks.push_back({rel, inst, equal(lhs, rhs)});
    };
    auto word = [](int a) { return Word{a}; };

    Element sum;
    for (int b = 0; b < A.size(); ++b) {
        Element sb;
        try {
            sb = S(word(b));
        } catch (const Error&) {
            continue;  // symbol never used
        }
        sum.add(multiply(sb, adjoint(sb)));
    }
    check("sum_b S_b S_b^* = 1", "", sum, I1);

    Element es;
    for (int i = 1; i <= s_->size(l); ++i) es.add(E(l, i));
    check("sum_i E_i^l = 1", "", es, I1);

    for (int a = 0; a < A.size(); ++a) {
        Element sa;
        try {
            sa = S(word(a));
        } catch (const Error&) {
            continue;
        }
        const Element proj = multiply(sa, adjoint(sa));
        for (int i = 1; i <= s_->size(l); ++i) {
            const Element e = E(l, i);
            const std::string inst = "a=" + A.name(a) + " i=" + std::to_string(i);
            check("S_a S_a^* E_i^l = E_i^l S_a S_a^*", inst, multiply(proj, e), multiply(e, proj));
            Element rhs;
            for (int id : s_->out(l, i)) {
                const auto& ed = s_->edges(l)[static_cast<size_t>(id)];
                if (ed.label == a) rhs.add(E(l + 1, ed.tgt));
            }
            check("S_a^* E_i^l S_a = sum_j A(i,a,j) E_j^{l+1}", inst, multiply(multiply(adjoint(sa), e), sa), rhs);
        }
        // S_a^* S_a is the sum of level-1 projections that receive an a-edge
        Element r2;
        for (int j = 1; j <= s_->size(1); ++j)
            if (s_->admissible(word(a), 1, j)) r2.add(E(1, j));
        check("S_a^* S_a = sum_j [a into v_j^1] E_j^1", "a=" + A.name(a), multiply(adjoint(sa), sa), r2);
    }

    for (int i = 1; i <= s_->size(l); ++i) {
        Element rhs;
        for (int j : s_->children(l, i)) rhs.add(E(l + 1, j));
        check("E_i^l = sum_j I(i,j) E_j^{l+1}", "i=" + std::to_string(i), E(l, i), rhs);
    }
    return rep;
}

}  // namespace lgs
