#include "lgs/equivalence.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "check_detail.hpp"

namespace lgs {

bool CheckReport::ok() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return !c.checked || c.ok; });
}

const Clause* CheckReport::first_failure() const {
    for (const auto& c : clauses)
        if (c.checked && !c.ok) return &c;
    return nullptr;
}

const Clause* CheckReport::find(const std::string& name) const {
    for (const auto& c : clauses)
        if (c.name == name) return &c;
    return nullptr;
}

std::string format_report(const CheckReport& r) {
    std::ostringstream o;
    o << r.kind << " depth " << r.depth << ": " << (r.ok() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : r.clauses) {
        o << "  " << c.name << ": " << (!c.checked ? "SKIP" : c.ok ? "PASS" : "FAIL") << " (" << c.tested << " tested)";
        if (!c.witness.empty()) o << " witness " << c.witness;
        o << "\n";
    }
    return o.str();
}

namespace detail {

/// Edges (from, a, to) present between the same constant orbits at every level.
std::set<std::tuple<int, int, int>> constant_edges(const LambdaGraphSystem& s) {
    std::set<std::tuple<int, int, int>> out;
    if (s.depth() < 1) return out;
    for (const auto& e : s.edges(0)) {
        if (!constant_orbit(s, e.src) || !constant_orbit(s, e.tgt)) continue;
        bool all = true;
        for (int l = 1; l < s.depth() && all; ++l) {
            const auto& es = s.edges(l);
            all = std::find(es.begin(), es.end(), Edge{e.src, e.label, e.tgt}) != es.end();
        }
        if (all) out.emplace(e.src, e.label, e.tgt);
    }
    return out;
}

std::string describe(const Alphabet& alpha, const OutPrefix& y) {
    std::string s = alpha.format(y.labels) + " [";
    for (size_t k = 0; k < y.sel.size(); ++k) s += (k ? " " : "") + std::to_string(y.sel[k]);
    return s + "]";
}

void well_defined(const Side& sd, int D, Exec exec, CheckReport& rep) {
    const auto edges = constant_edges(sd.dst);
    const auto& alpha = sd.src.alphabet();
    const std::string tag = " " + std::to_string(sd.index);

    Clause total{"code total" + tag};
    const auto base = cylinders(sd.src, sd.d, sd.d);
    total.tested = base.size();
    for (const auto& c : base)
        if (!sd.fwd.map.count(c)) {
            total.ok = false;
            total.cylinder = c;
            total.witness = format_cylinder(alpha, c) + ": no code entry";
            break;
        }
    for (const auto& [c, out] : sd.fwd.map)
        if (total.ok && !sd.src.admissible(c.word, c.vertex.level, c.vertex.index)) {
            total.ok = false;
            total.witness = format_cylinder(alpha, c) + ": entry on an inadmissible cylinder";
        }
    rep.clauses.push_back(total);

    Clause factor{"label factor" + tag};
    std::map<Word, int> sym;
    factor.tested = sd.fwd.map.size();
    for (const auto& [c, out] : sd.fwd.map) {
        auto [it, fresh] = sym.emplace(c.word, out.sym);
        if (!fresh && it->second != out.sym && factor.ok) {
            factor.ok = false;
            factor.cylinder = c;
            factor.witness = format_cylinder(alpha, c) + ": label depends on the vertex";
        }
    }
    rep.clauses.push_back(factor);
    if (!total.ok) return;

    rep.clauses.push_back(scan("image admissible" + tag, cylinders(sd.src, D, D), alpha, exec, [&](const Cylinder& x) -> Failure {
        const OutPrefix y = apply(sd.src, sd.fwd, sd.d, point_from_cylinder(sd.src, x.word, x.vertex));
        for (int k = 0; k < y.length(); ++k) {
            const auto kk = static_cast<size_t>(k);
            if (k == 0) {
                for (int l = 1; l <= sd.dst.depth(); ++l)
                    if (!sd.dst.admissible({y.labels[0]}, l, y.sel[0]))
                        return "image " + describe(sd.dst.alphabet(), y) + " starts outside the target";
            } else if (!edges.count({y.sel[kk - 1], y.labels[kk], y.sel[kk]})) {
                return "image " + describe(sd.dst.alphabet(), y) + " has no edge at position " + std::to_string(k + 1);
            }
        }
        return std::nullopt;
    }));
}

}  // namespace detail

namespace {

using namespace detail;

/// h^{-1}(h(x)) agrees with x on every position the truncation determines.
Clause inverse_clause(const Side& sd, int D, Exec exec) {
    const int keep = D - 2 * sd.d + 2;
    if (keep < 1) throw DepthError(2 * sd.d - 1, D, "inverse composition of the code");
    return scan("inverse " + std::to_string(sd.index), cylinders(sd.src, D, D), sd.src.alphabet(), exec,
                [&](const Cylinder& x) -> Failure {
                    const PointPrefix px = point_from_cylinder(sd.src, x.word, x.vertex);
                    const OutPrefix y = apply(sd.src, sd.fwd, sd.d, px);
                    const OutPrefix back = apply(sd.dst, sd.back, sd.d, as_point(sd.dst, y));
                    for (int j = 1; j <= back.length(); ++j) {
                        const auto jj = static_cast<size_t>(j);
                        if (back.labels[jj - 1] != px.labels[jj - 1] || back.sel[jj - 1] != px.vert[jj].index)
                            return "round trip gives " + describe(sd.src.alphabet(), back);
                    }
                    return std::nullopt;
                });
}

Failure compare_shifted(const Alphabet& alpha, const OutPrefix& shifted, int k, const OutPrefix& whole, int l, int D) {
    const int c = std::min(shifted.length() - k, whole.length() - l);
    if (c < 1) throw DepthError(D + 1 - c, D, "orbit equations have no comparable positions");
    const OutPrefix a = slice(shifted, k, c), b = slice(whole, l, c);
    if (a == b) return std::nullopt;
    return "sigma^" + std::to_string(k) + " h(sigma x) = " + describe(alpha, a) + " but sigma^" + std::to_string(l) +
           " h(x) = " + describe(alpha, b);
}

Clause orbit_clause(const Side& sd, const CylinderFunction& kf, const CylinderFunction& lf, int D, Exec exec) {
    return scan("orbit equation " + std::to_string(sd.index), cylinders(sd.src, D, D), sd.src.alphabet(), exec,
                [&](const Cylinder& x) -> Failure {
                    const PointPrefix px = point_from_cylinder(sd.src, x.word, x.vertex);
                    const OutPrefix y = apply(sd.src, sd.fwd, sd.d, px);
                    const OutPrefix ys = apply(sd.src, sd.fwd, sd.d, shift(px, 1));
                    return compare_shifted(sd.dst.alphabet(), ys, kf.eval(sd.src, px, 0), y, lf.eval(sd.src, px, 0), D);
                });
}

void check_inputs(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2, const OneSidedCode& code, int D) {
    const int depth = std::min(s1.depth(), s2.depth());
    if (D < code.d || D > depth) throw DepthError(std::max(D, code.d), depth, "checking a certificate at depth " + std::to_string(D));
}

}  // namespace

CheckReport check_coe(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2, const CoeCertificate& cert, int D,
                      Exec exec) {
    check_inputs(s1, s2, cert.code, D);
    for (const auto* f : {&cert.k1, &cert.l1, &cert.k2, &cert.l2})
        if (f->window > D) throw DepthError(f->window, D, "transfer function window");
    CheckReport rep;
    rep.kind = "coe";
    rep.depth = D;
    const Side a{s1, s2, cert.code.forward, cert.code.inverse, cert.code.d, 1};
    const Side b{s2, s1, cert.code.inverse, cert.code.forward, cert.code.d, 2};
    well_defined(a, D, exec, rep);
    well_defined(b, D, exec, rep);
    if (!rep.ok()) return rep;
    rep.clauses.push_back(inverse_clause(a, D, exec));
    rep.clauses.push_back(inverse_clause(b, D, exec));
    rep.clauses.push_back(orbit_clause(a, cert.k1, cert.l1, D, exec));
    rep.clauses.push_back(orbit_clause(b, cert.k2, cert.l2, D, exec));
    return rep;
}

CheckReport check_eventual_conjugacy(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2,
                                     const EcCertificate& cert, int D, Exec exec) {
    check_inputs(s1, s2, cert.code, D);
    CheckReport rep;
    rep.kind = "ec";
    rep.depth = D;
    const Side a{s1, s2, cert.code.forward, cert.code.inverse, cert.code.d, 1};
    const Side b{s2, s1, cert.code.inverse, cert.code.forward, cert.code.d, 2};
    well_defined(a, D, exec, rep);
    well_defined(b, D, exec, rep);
    if (!rep.ok()) return rep;
    rep.clauses.push_back(inverse_clause(a, D, exec));
    rep.clauses.push_back(inverse_clause(b, D, exec));
    for (const auto& [sd, K] : {std::pair{a, cert.K1}, std::pair{b, cert.K2}}) {
        rep.clauses.push_back(scan("constant equation " + std::to_string(sd.index), cylinders(sd.src, D, D),
                                   sd.src.alphabet(), exec, [&](const Cylinder& x) -> Failure {
                                       const PointPrefix px = point_from_cylinder(sd.src, x.word, x.vertex);
                                       const OutPrefix y = apply(sd.src, sd.fwd, sd.d, px);
                                       const OutPrefix ys = apply(sd.src, sd.fwd, sd.d, shift(px, 1));
                                       return compare_shifted(sd.dst.alphabet(), ys, K, y, K + 1, D);
                                   }));
    }
    if (rep.ok()) {
        // the l = K + 1 specialization must pass the general checker as well
        Clause impl{"implies coe"};
        const CheckReport coe = check_coe(s1, s2, as_coe(cert), D, exec);
        impl.tested = 1;
        impl.ok = coe.ok();
        if (!impl.ok) impl.witness = coe.first_failure()->name + ": " + coe.first_failure()->witness;
        rep.clauses.push_back(impl);
    }
    return rep;
}

OutPrefix forward_image(const LambdaGraphSystem& s1, const OneSidedCode& code, const Cylinder& x) {
    return apply(s1, code.forward, code.d, point_from_cylinder(s1, x.word, x.vertex));
}

}  // namespace lgs
