#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lgs/algebra.hpp"
#include "lgs/equivalence.hpp"
#include "lgs/io.hpp"
#include "lgs/language.hpp"
#include "lgs/sms.hpp"

namespace {

using namespace lgs;

/// Plain lines for people, key<TAB>value records for scripts.
class Out {
public:
    explicit Out(bool records) : records_(records) {}
    void text(const std::string& line) const {
        if (!records_) std::cout << line << "\n";
    }
    void rec(const std::string& key, const std::string& value) const {
        if (records_) std::cout << key << "\t" << value << "\n";
    }
    /// same content in both modes
    void both(const std::string& key, const std::string& value) const {
        if (records_) rec(key, value);
        else text(value);
    }

private:
    bool records_;
};

std::string vertex_text(VertexRef v) { return "v(" + std::to_string(v.level) + "," + std::to_string(v.index) + ")"; }

int verdict(const Out& out, bool ok) {
    out.rec("verdict", ok ? "pass" : "fail");
    return ok ? 0 : 1;
}

int print_report(const Out& out, const CheckReport& r) {
    std::istringstream lines(format_report(r));
    for (std::string l; std::getline(lines, l);) out.text(l);
    for (const auto& c : r.clauses) {
        out.rec("clause", c.name + "\t" + (!c.checked ? "skip" : c.ok ? "pass" : "fail") + "\t" + std::to_string(c.tested));
        if (!c.witness.empty()) out.rec("witness", c.name + "\t" + c.witness);
    }
    return verdict(out, r.ok());
}

struct Options {
    std::string format = "plain";
    int graph_depth = 5;
    std::string file, file2, cert;
    int k = 1, level = -1, d = 1, m = 1, n = 0, D = 3, shift = 0;
    std::string expr, b1, b2, bisection;
    bool check_cocycle = false, classes = false;
    size_t samples = 500;
    std::uint64_t seed = 0;
};

LambdaGraphSystem load(const Options& o, const std::string& path) { return load_system(path, o.graph_depth); }

Certificate load_cert(const Options& o, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2) {
    return parse_certificate(read_file(o.cert), s1, s2, o.cert);
}

int cmd_validate(const Options& o, const Out& out) {
    const auto s = load(o, o.file);
    const auto r = validate(s);
    const auto lr = is_left_resolving(s);
    for (const auto& v : r.violations) {
        out.text(v.rule + " " + v.location + ": " + v.detail);
        out.rec("violation", v.rule + "\t" + v.location + "\t" + v.detail);
    }
    out.rec("left-resolving", lr.ok ? "yes" : "no");
    out.text(r.ok ? "ok" : "FAIL (" + std::to_string(r.violations.size()) + " violations)");
    return verdict(out, r.ok);
}

int cmd_words(const Options& o, const Out& out) {
    const auto s = load(o, o.file);
    const auto ws = words(s, o.k);
    for (const auto& w : ws) out.both("word", s.alphabet().format(w));
    out.rec("count", std::to_string(ws.size()));
    return 0;
}

int cmd_matrices(const Options& o, const Out& out) {
    const auto s = load(o, o.file);
    const auto sms = from_lgs(s);
    const int lo = o.level >= 0 ? o.level : 0, hi = o.level >= 0 ? o.level : sms.depth() - 1;
    if (lo < 0 || hi >= sms.depth()) throw DepthError(hi + 1, sms.depth(), "matrices");
    for (int l = lo; l <= hi; ++l) {
        const auto& M = sms.M[static_cast<size_t>(l)];
        const auto& I = sms.I[static_cast<size_t>(l)];
        out.text("M " + std::to_string(l) + " " + std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
        for (int r = 1; r <= M.rows(); ++r) {
            std::vector<std::string> row;
            for (int c = 1; c <= M.cols(); ++c) row.push_back(format_entry(s.alphabet(), M.entry(r, c)));
            out.text("  " + join(row, " "));
            out.rec("M", std::to_string(l) + "\t" + std::to_string(r) + "\t" + join(row, " "));
        }
        out.text("I " + std::to_string(l) + " " + std::to_string(I.rows) + "x" + std::to_string(I.cols));
        for (int r = 1; r <= I.rows; ++r) {
            std::vector<std::string> row;
            for (int c = 1; c <= I.cols; ++c) row.push_back(std::to_string(I.at(r, c)));
            out.text("  " + join(row, " "));
            out.rec("I", std::to_string(l) + "\t" + std::to_string(r) + "\t" + join(row, " "));
        }
    }
    return 0;
}

SymbolicMatrixSystem load_sms(const Options& o) {
    const std::string text = read_file(o.file);
    for (const auto& line : {text.substr(0, text.find('\n'))}) {
        const auto toks = tokenize_line(line);
        if (!toks.empty() && toks[0].text == "sms") return parse_sms(text, o.file);
    }
    return from_lgs(load(o, o.file));
}

int cmd_sms_check(const Options& o, const Out& out) {
    const auto sms = load_sms(o);
    const auto r = verify_compatibility(sms);
    for (const auto& c : r.levels) {
        std::string line = "level " + std::to_string(c.level) + ": " + (c.ok ? "ok" : "mismatch");
        if (!c.ok)
            line += " at (" + std::to_string(c.row) + "," + std::to_string(c.col) + ") " +
                    format_entry(sms.alphabet, c.left) + " vs " + format_entry(sms.alphabet, c.right);
        out.both("level", line);
    }
    return verdict(out, r.ok());
}

int cmd_sms_dump(const Options& o, const Out&) {
    std::cout << dump_sms(load_sms(o));
    return 0;
}

int cmd_cond_i(const Options& o, const Out& out) {
    const auto s = load(o, o.file);
    const auto r = check_condition_I(s, o.d);
    for (const auto& e : r.entries)
        out.both("vertex", vertex_text(e.vertex) + " " + (e.sequences >= 2 ? ">=2" : std::to_string(e.sequences)) + " " +
                               (e.pass ? "pass" : "fail"));
    return verdict(out, r.all_pass());
}

int cmd_ess_free(const Options& o, const Out& out) {
    const auto s = load(o, o.file);
    const auto r = check_essential_freeness(s, o.m, o.n, o.d);
    for (const auto& e : r.entries) {
        const std::string cyl = s.alphabet().format(e.cylinder.word) + "@" + std::to_string(e.cylinder.vertex.index);
        out.both("cylinder", cyl + " " + (e.witnessed ? "leaves via " + s.alphabet().format(e.extension) : "no witness"));
    }
    return verdict(out, r.certified());
}

int cmd_algebra(const Options& o, const Out& out) {
    const auto s = load(o, o.file);
    const Algebra alg(s);
    std::istringstream lines(alg.format(parse_expression(alg, o.expr)));
    for (std::string l; std::getline(lines, l);) out.both("term", l);
    return 0;
}

int cmd_relations(const Options& o, const Out& out) {
    const auto s = load(o, o.file);
    const Algebra alg(s);
    bool ok = true;
    const int lo = o.level >= 0 ? o.level : 1, hi = o.level >= 0 ? o.level : s.depth() - 1;
    for (int l = lo; l <= hi; ++l) {
        const auto r = alg.verify_relations(l);
        ok = ok && r.ok();
        for (const auto& c : r.checks)
            out.both("relation", "level " + std::to_string(l) + " " + c.relation + (c.instance.empty() ? "" : " [" + c.instance + "]") +
                                     ": " + (c.ok ? "ok" : "FAIL"));
    }
    return verdict(out, ok);
}

int cmd_compose(const Options& o, const Out& out) {
    const auto s = load(o, o.file);
    const auto a = parse_bisection(s.alphabet(), o.b1), b = parse_bisection(s.alphabet(), o.b2);
    for (const auto* x : {&a, &b})
        if (!admissible(s, *x)) throw Error(ErrorKind::Domain, format_bisection(s.alphabet(), *x) + " is not admissible");
    const auto pieces = compose(s, a, b);
    if (pieces.empty()) out.text("empty");
    for (const auto& p : pieces) out.both("piece", format_bisection(s.alphabet(), p));
    out.rec("count", std::to_string(pieces.size()));
    return 0;
}

int cmd_enumerate(const Options& o, const Out& out) {
    const auto s = load(o, o.file);
    const auto es = enumerate_elements(s, o.d);
    for (const auto& e : es)
        out.both("element", format_bisection(s.alphabet(), e.bisection()) + " n=" + std::to_string(e.n));
    out.rec("count", std::to_string(es.size()));
    return 0;
}

int cmd_coe(const Options& o, const Out& out) {
    const auto s1 = load(o, o.file), s2 = load(o, o.file2);
    return print_report(out, check_coe(s1, s2, coe_view(load_cert(o, s1, s2)), o.D));
}

int cmd_ec(const Options& o, const Out& out) {
    const auto s1 = load(o, o.file), s2 = load(o, o.file2);
    return print_report(out, check_eventual_conjugacy(s1, s2, ec_view(load_cert(o, s1, s2)), o.D));
}

TwoSidedCertificate two_sided(const Options& o, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2) {
    const auto cert = two_sided_view(load_cert(o, s1, s2));
    return o.shift > 0 ? shift_certificate(s1, cert, o.shift) : cert;
}

int cmd_conj(const Options& o, const Out& out) {
    const auto s1 = load(o, o.file), s2 = load(o, o.file2);
    const auto cert = two_sided(o, s1, s2);
    const int status = print_report(out, check_two_sided(s1, s2, cert, o.D));
    if (o.classes && status == 0) {
        const auto pc = past_equivalence_classes(s1, cert, o.D);
        for (const auto& [v, cls] : pc.classes)
            for (const auto& c : cls) {
                std::vector<std::string> ws;
                for (const auto& w : c) ws.push_back(s1.alphabet().format(w));
                out.both("class", vertex_text({pc.L, v}) + " {" + join(ws, ",") + "}");
            }
        out.both("transitive", pc.transitive ? "transitive" : "NOT transitive");
    }
    return status;
}

int cmd_coe_iso(const Options& o, const Out& out) {
    const auto s1 = load(o, o.file), s2 = load(o, o.file2);
    const auto phi = coe_to_groupoid_iso(s1, s2, coe_view(load_cert(o, s1, s2)), o.D);
    if (!o.bisection.empty()) {
        const auto b = parse_bisection(s1.alphabet(), o.bisection);
        for (const auto& p : phi(b)) out.both("image", format_bisection(s2.alphabet(), p));
    }
    std::optional<WeightPair> w;
    if (o.check_cocycle) w = WeightPair{SymbolWeights::ones(s1.alphabet().size()), SymbolWeights::ones(s2.alphabet().size())};
    return print_report(out, check_groupoid_iso(phi.as_function(), s1, s2, o.D, w, phi.reversed().as_function()));
}

int cmd_stable(const Options& o, const Out& out) {
    const auto s1 = load(o, o.file), s2 = load(o, o.file2);
    const auto r = build_stable_iso(s1, s2, two_sided(o, s1, s2), o.D, o.samples, o.seed);
    out.both("samples", std::to_string(r.samples) + (o.format == "plain" ? " sampled stable elements" : ""));
    return print_report(out, r.report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lambda-graph systems: languages, algebras, groupoids and equivalence certificates", "lgs"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "output style")->check(CLI::IsMember({"plain", "records"}));
    app.add_option("--graph-depth", o.graph_depth, "depth used when a labeled graph file is loaded")->check(CLI::Range(1, 1 << 16));

    std::vector<std::pair<CLI::App*, int (*)(const Options&, const Out&)>> cmds;
    auto sys = [&](const char* name, const char* help, int (*fn)(const Options&, const Out&)) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("system", o.file, "system file (.lgs or labeled graph)")->required();
        cmds.emplace_back(c, fn);
        return c;
    };
    auto pair = [&](const char* name, const char* help, int (*fn)(const Options&, const Out&)) {
        auto* c = sys(name, help, fn);
        c->add_option("system2", o.file2, "second system")->required();
        c->add_option("certificate", o.cert, "certificate file")->required();
        c->add_option("-d,--depth", o.D, "checking depth")->required();
        return c;
    };

    sys("validate", "check the axioms", cmd_validate);
    sys("words", "admissible words of length k", cmd_words)->add_option("-k", o.k, "word length")->required();
    sys("matrices", "symbolic and inclusion matrices", cmd_matrices)->add_option("-l,--level", o.level, "single level");
    sys("sms-check", "matrix compatibility identity", cmd_sms_check);
    sys("sms-dump", "write the symbolic matrix system", cmd_sms_dump);
    sys("cond-i", "condition (I) at finite depth", cmd_cond_i)->add_option("-d", o.d, "sequence length")->required();
    {
        auto* c = sys("ess-free", "search witnesses of essential freeness", cmd_ess_free);
        c->add_option("-m", o.m)->required();
        c->add_option("-n", o.n)->required();
        c->add_option("-d", o.d, "cylinder depth")->required();
    }
    sys("algebra", "evaluate an expression in the generators", cmd_algebra)->add_option("-e,--expr", o.expr)->required();
    sys("relations", "verify the generator relations", cmd_relations)->add_option("-l,--level", o.level, "single level");
    {
        auto* c = sys("groupoid-compose", "compose two basic bisections mu,v(l,i),nu", cmd_compose);
        c->add_option("b1", o.b1)->required();
        c->add_option("b2", o.b2)->required();
    }
    sys("groupoid-enumerate", "fine groupoid samples at a resolution", cmd_enumerate)->add_option("-d", o.d)->required();
    pair("coe-check", "continuous orbit equivalence certificate", cmd_coe);
    pair("ec-check", "eventual conjugacy certificate", cmd_ec);
    {
        auto* c = pair("conj-check", "two-sided conjugacy certificate", cmd_conj);
        c->add_option("--shift", o.shift, "precompose the code with this shift power")->check(CLI::NonNegativeNumber);
        c->add_flag("--classes", o.classes, "print the past classes");
    }
    {
        auto* c = pair("coe-iso", "groupoid map of an orbit equivalence certificate", cmd_coe_iso);
        c->add_flag("--check-cocycle", o.check_cocycle, "require c2(phi(b)) = c1(b)");
        c->add_option("--bisection", o.bisection, "print the image of one bisection");
    }
    {
        auto* c = pair("stable-iso", "stabilized groupoid map of a two-sided certificate", cmd_stable);
        c->add_option("--samples", o.samples, "sampled stable elements");
        c->add_option("--seed", o.seed, "sampling seed");
        c->add_option("--shift", o.shift, "precompose the code with this shift power")->check(CLI::NonNegativeNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const Out out(o.format == "records");
    try {
        for (const auto& [c, fn] : cmds)
            if (c->parsed()) return fn(o, out);
    } catch (const DepthError& e) {
        std::cerr << "depth budget: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
