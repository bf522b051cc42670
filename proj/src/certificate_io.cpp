#include "lgs/code.hpp"

#include <algorithm>
#include <sstream>

#include "line_reader.hpp"

namespace lgs {

using detail::LineReader;

namespace {

Cylinder cylinder_token(const LineReader& r, size_t k, const LambdaGraphSystem& s) {
    try {
        Cylinder c = parse_cylinder_spec(s, r.toks[k].text);
        if (!s.admissible(c.word, c.vertex.level, c.vertex.index))
            r.fail(r.toks[k], "cylinder '" + r.toks[k].text + "' is not admissible");
        return c;
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        r.fail(r.toks[k], e.what());
    }
}

void read_code_line(LineReader& r, OneSidedCode& code, bool window_seen, const LambdaGraphSystem& src,
                    const LambdaGraphSystem& dst) {
    r.arity(6);
    if (!window_seen) r.fail(r.toks[0], "'window' must precede code lines");
    CodeTable& t = r.toks[1].text == "forward" ? code.forward : code.inverse;
    const Cylinder c = cylinder_token(r, 2, src);
    if (static_cast<int>(c.word.size()) != code.d)
        r.fail(r.toks[2], "code cylinders must have length " + std::to_string(code.d));
    if (r.toks[3].text != "->") r.fail(r.toks[3], "expected '->'");
    const int sym = dst.alphabet().find(r.toks[4].text);
    if (sym < 0) r.fail(r.toks[4], "unknown symbol '" + r.toks[4].text + "'");
    const int sel = r.integer(5, 1, 1 << 24, "selector");
    if (!constant_orbit(dst, sel)) r.fail(r.toks[5], "selector " + r.toks[5].text + " is not a level-constant vertex orbit");
    if (!t.map.emplace(c, CodeOutput{sym, sel}).second) r.fail(r.toks[2], "duplicate code entry");
}

void read_function_line(LineReader& r, std::optional<CylinderFunction>& f, const LambdaGraphSystem& s) {
    r.arity(4);
    const int v = r.integer(3, 0, 1 << 20, "function value");
    if (r.toks[2].text == "*") {
        if (f) r.fail(r.toks[2], "constant function given after other entries");
        f = CylinderFunction::constant_fn(v);
        return;
    }
    if (f && f->constant) r.fail(r.toks[2], "function already declared constant");
    const Cylinder c = cylinder_token(r, 2, s);
    if (!f) f = CylinderFunction{static_cast<int>(c.word.size()), std::nullopt, {}};
    if (static_cast<int>(c.word.size()) != f->window) r.fail(r.toks[2], "all cylinders of a function need the same length");
    if (!f->table.emplace(c, v).second) r.fail(r.toks[2], "duplicate function entry");
}

}  // namespace

Certificate parse_certificate(const std::string& text, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2,
                              const std::string& file) {
    LineReader r(text, file);
    if (!r.next()) r.fail(1, "empty input");
    if (r.toks[0].text != "certificate") r.fail(r.toks[0], "expected 'certificate <name>'");
    r.arity(2);
    Certificate c;
    c.name = r.toks[1].text;
    bool window_seen = false, ended = false;
    auto single = [&](std::optional<int>& slot, int lo) {
        if (slot) r.fail(r.toks[0], "duplicate '" + r.toks[0].text + "'");
        slot = r.integer(r.toks.size() - 1, lo, 1 << 20, r.toks[0].text);
    };
    while (r.next()) {
        const auto& kw = r.toks[0].text;
        if (ended) r.fail(r.toks[0], "content after 'end'");
        if (kw == "window") {
            if (window_seen) r.fail(r.toks[0], "duplicate window");
            r.arity(2);
            c.code.d = r.integer(1, 1, std::min(s1.depth(), s2.depth()), "window");
            window_seen = true;
        } else if (kw == "code") {
            if (r.toks.size() < 2 || (r.toks[1].text != "forward" && r.toks[1].text != "inverse"))
                r.fail(r.toks[0], "expected 'code forward|inverse <cyl> -> <sym> <sel>'");
            const bool fwd = r.toks[1].text == "forward";
            read_code_line(r, c.code, window_seen, fwd ? s1 : s2, fwd ? s2 : s1);
        } else if (kw == "kfun" || kw == "lfun") {
            if (r.toks.size() < 2) r.fail(r.toks[0], "expected '" + kw + " 1|2 <cyl|*> <value>'");
            const int side = r.integer(1, 1, 2, "side");
            auto& slot = kw == "kfun" ? (side == 1 ? c.k1 : c.k2) : (side == 1 ? c.l1 : c.l2);
            read_function_line(r, slot, side == 1 ? s1 : s2);
        } else if (kw == "const") {
            r.arity(3);
            if (r.toks[1].text == "K1") single(c.K1, 0);
            else if (r.toks[1].text == "K2") single(c.K2, 0);
            else r.fail(r.toks[1], "expected K1 or K2");
        } else if (kw == "inj-window") {
            r.arity(2);
            single(c.inj_window, 0);
        } else if (kw == "recode-bound") {
            r.arity(2);
            single(c.recode_bound, 0);
        } else if (kw == "end") {
            r.arity(1);
            ended = true;
        } else {
            r.fail(r.toks[0], "unknown keyword '" + kw + "'");
        }
    }
    if (!ended) throw ParseError(file, r.lineno, 1, "missing 'end'");
    if (!window_seen) throw ParseError(file, r.lineno, 1, "missing 'window'");
    return c;
}

std::string write_certificate(const Certificate& c, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2) {
    std::ostringstream o;
    o << "certificate " << c.name << "\nwindow " << c.code.d << "\n";
    auto table = [&](const char* dir, const CodeTable& t, const LambdaGraphSystem& a, const LambdaGraphSystem& b) {
        for (const auto& [cyl, out] : t.map)
            o << "code " << dir << " " << format_cylinder(a.alphabet(), cyl) << " -> " << b.alphabet().name(out.sym)
              << " " << out.sel << "\n";
    };
    table("forward", c.code.forward, s1, s2);
    table("inverse", c.code.inverse, s2, s1);
    auto fn = [&](const char* kw, int side, const std::optional<CylinderFunction>& f) {
        if (!f) return;
        const auto& alpha = side == 1 ? s1.alphabet() : s2.alphabet();
        if (f->constant) o << kw << " " << side << " * " << *f->constant << "\n";
        for (const auto& [cyl, v] : f->table) o << kw << " " << side << " " << format_cylinder(alpha, cyl) << " " << v << "\n";
    };
    fn("kfun", 1, c.k1);
    fn("lfun", 1, c.l1);
    fn("kfun", 2, c.k2);
    fn("lfun", 2, c.l2);
    if (c.K1) o << "const K1 " << *c.K1 << "\n";
    if (c.K2) o << "const K2 " << *c.K2 << "\n";
    if (c.inj_window) o << "inj-window " << *c.inj_window << "\n";
    if (c.recode_bound) o << "recode-bound " << *c.recode_bound << "\n";
    o << "end\n";
    return o.str();
}

}  // namespace lgs
