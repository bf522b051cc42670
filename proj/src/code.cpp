#include "lgs/code.hpp"

#include <algorithm>

namespace lgs {

PointPrefix point_from_cylinder(const LambdaGraphSystem& s, const Word& w, VertexRef v) {
    const int n = static_cast<int>(w.size());
    if (v.level < n) throw Error(ErrorKind::Domain, "cylinder word longer than its level");
    PointPrefix p;
    p.labels = w;
    p.vert.resize(static_cast<size_t>(n) + 1);
    int cur = v.index;
    const int base = v.level - n;
    p.vert[static_cast<size_t>(n)] = v;
    for (int j = n; j >= 1; --j) {
        const int l = base + j;
        int src = 0;
        for (int id : s.in(l, cur))
            if (s.edges(l - 1)[static_cast<size_t>(id)].label == w[static_cast<size_t>(j - 1)]) {
                src = s.edges(l - 1)[static_cast<size_t>(id)].src;
                break;
            }
        if (src == 0) throw Error(ErrorKind::Domain, "cylinder is not admissible");
        cur = src;
        p.vert[static_cast<size_t>(j - 1)] = {l - 1, cur};
    }
    return p;
}

PointPrefix shift(const PointPrefix& p, int k) {
    PointPrefix q;
    k = std::min(k, p.length());
    q.labels.assign(p.labels.begin() + k, p.labels.end());
    q.vert.assign(p.vert.begin() + k, p.vert.end());
    return q;
}

Cylinder window(const LambdaGraphSystem& s, const PointPrefix& p, int i, int d) {
    const int last = i + d - 1;
    if (i < 1 || last > p.length()) throw Error(ErrorKind::Range, "window outside the known prefix");
    const VertexRef u = p.vert[static_cast<size_t>(last)];
    if (u.level < d) throw Error(ErrorKind::Domain, "vertex of the prefix is not known at the window level");
    Cylinder c;
    c.word.assign(p.labels.begin() + (i - 1), p.labels.begin() + last);
    c.vertex = {d, s.project(u.level, u.index, d)};
    return c;
}

PointPrefix as_point(const LambdaGraphSystem& target, const OutPrefix& y) {
    PointPrefix p;
    p.labels = y.labels;
    p.vert.assign(1, VertexRef{-1, 0});
    for (int s : y.sel) p.vert.push_back({target.depth(), s});
    return p;
}

OutPrefix slice(const OutPrefix& y, int k, int len) {
    OutPrefix r;
    const int n = y.length();
    const int a = std::min(k, n);
    const int b = len < 0 ? n : std::min(n, a + len);
    r.labels.assign(y.labels.begin() + a, y.labels.begin() + b);
    r.sel.assign(y.sel.begin() + a, y.sel.begin() + b);
    return r;
}

bool constant_orbit(const LambdaGraphSystem& s, int j) {
    for (int l = 0; l <= s.depth(); ++l)
        if (j < 1 || j > s.size(l)) return false;
    for (int l = 0; l < s.depth(); ++l)
        if (s.iota(l, j) != j) return false;
    return true;
}

const CodeOutput& CodeTable::at(const Alphabet& alpha, const Cylinder& c) const {
    auto it = map.find(c);
    if (it == map.end())
        throw Error(ErrorKind::Domain, "code is undefined on cylinder " + format_cylinder(alpha, c));
    return it->second;
}

OutPrefix apply(const LambdaGraphSystem& src, const CodeTable& t, int d, const PointPrefix& p) {
    OutPrefix y;
    for (int i = 1; i + d - 1 <= p.length(); ++i) {
        const auto& o = t.at(src.alphabet(), window(src, p, i, d));
        y.labels.push_back(o.sym);
        y.sel.push_back(o.sel);
    }
    return y;
}

int CylinderFunction::eval(const LambdaGraphSystem& s, const PointPrefix& x, int i) const {
    if (constant) return *constant;
    const Cylinder c = lgs::window(s, x, i + 1, window);
    auto it = table.find(c);
    if (it == table.end())
        throw Error(ErrorKind::Domain, "transfer function undefined on cylinder " + format_cylinder(s.alphabet(), c));
    return it->second;
}

int CylinderFunction::max_value() const {
    if (constant) return *constant;
    int m = 0;
    for (const auto& [c, v] : table) m = std::max(m, v);
    return m;
}

namespace {

[[noreturn]] void missing(const Certificate& c, const std::string& part) {
    throw Error(ErrorKind::Parse, "certificate '" + c.name + "' has no " + part);
}

}  // namespace

CoeCertificate coe_view(const Certificate& c) {
    if (!c.k1) missing(c, "kfun 1");
    if (!c.l1) missing(c, "lfun 1");
    if (!c.k2) missing(c, "kfun 2");
    if (!c.l2) missing(c, "lfun 2");
    return {c.code, *c.k1, *c.l1, *c.k2, *c.l2};
}

EcCertificate ec_view(const Certificate& c) {
    if (!c.K1) missing(c, "const K1");
    if (!c.K2) missing(c, "const K2");
    return {c.code, *c.K1, *c.K2};
}

TwoSidedCertificate two_sided_view(const Certificate& c) {
    if (!c.inj_window) missing(c, "inj-window");
    if (!c.recode_bound) missing(c, "recode-bound");
    return {c.code, *c.inj_window, *c.recode_bound};
}

CoeCertificate as_coe(const EcCertificate& ec) {
    return {ec.code, CylinderFunction::constant_fn(ec.K1), CylinderFunction::constant_fn(ec.K1 + 1),
            CylinderFunction::constant_fn(ec.K2), CylinderFunction::constant_fn(ec.K2 + 1)};
}

CodeTable shift_code(const LambdaGraphSystem& src, const CodeTable& t, int d, int M) {
    if (M < 0) throw Error(ErrorKind::Range, "shift must be nonnegative");
    if (d + M > src.depth()) throw DepthError(d + M, src.depth(), "shifting a code");
    CodeTable r;
    for (const auto& c : cylinders(src, d + M, d + M)) {
        const PointPrefix p = point_from_cylinder(src, c.word, c.vertex);
        r.map[c] = t.at(src.alphabet(), window(src, p, M + 1, d));
    }
    return r;
}

TwoSidedCertificate shift_certificate(const LambdaGraphSystem& src, TwoSidedCertificate cert, int M) {
    cert.code.forward = shift_code(src, cert.code.forward, cert.code.d, M);
    cert.code.d += M;
    cert.l = std::max(cert.l, 1) + M;
    cert.L = std::max(cert.L + M, cert.l);
    return cert;
}

Cylinder parse_cylinder_spec(const LambdaGraphSystem& s, const std::string& spec) {
    const auto at = spec.rfind('@');
    if (at == std::string::npos) throw Error(ErrorKind::Parse, "cylinder '" + spec + "' is not of the form word@index");
    Cylinder c;
    c.word = s.alphabet().parse_word(spec.substr(0, at));
    const std::string idx = spec.substr(at + 1);
    if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw Error(ErrorKind::Parse, "cylinder '" + spec + "' has a bad vertex index");
    const int l = static_cast<int>(c.word.size());
    if (l > s.depth()) throw DepthError(l, s.depth(), "cylinder '" + spec + "'");
    c.vertex = {l, std::stoi(idx)};
    if (c.vertex.index < 1 || c.vertex.index > s.size(l))
        throw Error(ErrorKind::Range, "cylinder '" + spec + "': vertex index out of range");
    return c;
}

std::string format_cylinder(const Alphabet& alpha, const Cylinder& c) {
    return alpha.format(c.word) + "@" + std::to_string(c.vertex.index);
}

}  // namespace lgs
