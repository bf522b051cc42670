#include "lgs/sms.hpp"

#include <algorithm>
#include <sstream>

#include "line_reader.hpp"

namespace lgs {

std::vector<int> SymbolicMatrix::entry(int i, int j) const {
    auto b = counts_.begin() + static_cast<std::ptrdiff_t>(offset(i, j));
    return {b, b + symbols_};
}

bool SymbolicMatrix::entry_empty(int i, int j) const {
    for (int a = 0; a < symbols_; ++a)
        if (count(i, j, a)) return false;
    return true;
}

SymbolicMatrixSystem from_lgs(const LambdaGraphSystem& s) {
    SymbolicMatrixSystem out;
    out.name = s.name();
    out.alphabet = s.alphabet();
    for (int l = 0; l < s.depth(); ++l) {
        SymbolicMatrix m(s.size(l), s.size(l + 1), s.alphabet().size());
        for (const auto& e : s.edges(l)) m.add(e.src, e.tgt, e.label);
        ZeroOneMatrix I(s.size(l), s.size(l + 1));
        for (int j = 1; j <= s.size(l + 1); ++j) I.set(s.iota(l, j), j, 1);
        out.M.push_back(std::move(m));
        out.I.push_back(std::move(I));
    }
    return out;
}

bool CompatibilityReport::ok() const {
    return std::all_of(levels.begin(), levels.end(), [](const CompatibilityLevel& c) { return c.ok; });
}

int CompatibilityReport::first_failure() const {
    for (const auto& c : levels)
        if (!c.ok) return c.level;
    return -1;
}

namespace {

void check_dims(const SymbolicMatrixSystem& sms) {
    if (sms.M.size() != sms.I.size()) throw Error(ErrorKind::Structural, "M and I sequences differ in length");
    for (size_t l = 0; l < sms.M.size(); ++l) {
        const auto& m = sms.M[l];
        const auto& I = sms.I[l];
        if (m.rows() != I.rows || m.cols() != I.cols)
            throw Error(ErrorKind::Structural, "M and I differ in shape at level " + std::to_string(l));
        if (m.symbols() != sms.alphabet.size())
            throw Error(ErrorKind::Structural, "M at level " + std::to_string(l) + " has the wrong symbol count");
        if (l + 1 < sms.M.size() && m.cols() != sms.M[l + 1].rows())
            throw Error(ErrorKind::Structural, "dimension chain broken between levels " + std::to_string(l) + " and " +
                                                   std::to_string(l + 1));
    }
}

}  // namespace

CompatibilityReport verify_compatibility(const SymbolicMatrixSystem& sms, Exec exec) {
    check_dims(sms);
    const int levels = std::max(0, sms.depth() - 1);
    const int S = sms.alphabet.size();
    CompatibilityReport rep;
    rep.levels.resize(static_cast<size_t>(levels));
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (int l = 0; l < levels; ++l) {
        const auto& M0 = sms.M[static_cast<size_t>(l)];
        const auto& M1 = sms.M[static_cast<size_t>(l + 1)];
        const auto& I0 = sms.I[static_cast<size_t>(l)];
        const auto& I1 = sms.I[static_cast<size_t>(l + 1)];
        auto& res = rep.levels[static_cast<size_t>(l)];
        res.level = l;
        std::vector<int> left(static_cast<size_t>(S)), right(static_cast<size_t>(S));
        for (int i = 1; i <= M0.rows() && res.ok; ++i)
            for (int k = 1; k <= M1.cols() && res.ok; ++k) {
                std::fill(left.begin(), left.end(), 0);
                std::fill(right.begin(), right.end(), 0);
                for (int j = 1; j <= M0.cols(); ++j) {
                    if (I1.at(j, k))
                        for (int a = 0; a < S; ++a) left[static_cast<size_t>(a)] += M0.count(i, j, a);
                    if (I0.at(i, j))
                        for (int a = 0; a < S; ++a) right[static_cast<size_t>(a)] += M1.count(j, k, a);
                }
                if (left != right) {
                    res.ok = false;
                    res.row = i;
                    res.col = k;
                    res.left = left;
                    res.right = right;
                }
            }
    }
    return rep;
}

LambdaGraphSystem to_lgs(const SymbolicMatrixSystem& sms) {
    check_dims(sms);
    if (sms.depth() < 1) throw Error(ErrorKind::Structural, "symbolic matrix system has no levels");
    auto comp = verify_compatibility(sms);
    if (!comp.ok()) {
        const auto& c = comp.levels[static_cast<size_t>(comp.first_failure())];
        throw Error(ErrorKind::Structural, "compatibility fails at level " + std::to_string(c.level) + " entry (" +
                                               std::to_string(c.row) + "," + std::to_string(c.col) + ")");
    }
    std::vector<int> sizes;
    std::vector<std::vector<Edge>> edges;
    std::vector<std::vector<int>> iota;
    sizes.push_back(sms.M[0].rows());
    for (int l = 0; l < sms.depth(); ++l) {
        const auto& m = sms.M[static_cast<size_t>(l)];
        const auto& I = sms.I[static_cast<size_t>(l)];
        sizes.push_back(m.cols());
        std::vector<Edge> es;
        for (int i = 1; i <= m.rows(); ++i)
            for (int j = 1; j <= m.cols(); ++j)
                for (int a = 0; a < m.symbols(); ++a) {
                    int c = m.count(i, j, a);
                    if (c > 1)
                        throw Error(ErrorKind::Structural, "repeated symbol in entry (" + std::to_string(i) + "," +
                                                               std::to_string(j) + ") at level " + std::to_string(l));
                    if (c == 1) es.push_back({i, a, j});
                }
        edges.push_back(std::move(es));
        std::vector<int> io(static_cast<size_t>(m.cols()), 0);
        for (int j = 1; j <= I.cols; ++j) {
            int ones = 0;
            for (int i = 1; i <= I.rows; ++i)
                if (I.at(i, j)) {
                    ++ones;
                    io[static_cast<size_t>(j - 1)] = i;
                }
            if (ones != 1)
                throw Error(ErrorKind::Structural, "I at level " + std::to_string(l) + " column " + std::to_string(j) +
                                                       " does not have exactly one 1");
        }
        iota.push_back(std::move(io));
    }
    LambdaGraphSystem out(sms.name, sms.alphabet, sizes, edges, iota);
    auto rep = validate(out);
    if (!rep.ok) {
        const auto& v = rep.violations.front();
        throw Error(ErrorKind::Structural, "resulting system violates " + v.rule + " at " + v.location);
    }
    return out;
}

std::string format_entry(const Alphabet& alpha, const std::vector<int>& counts) {
    std::vector<std::string> parts;
    for (size_t a = 0; a < counts.size(); ++a)
        for (int k = 0; k < counts[a]; ++k) parts.push_back(alpha.name(static_cast<int>(a)));
    return parts.empty() ? "0" : join(parts, "+");
}

std::string dump_sms(const SymbolicMatrixSystem& sms) {
    std::ostringstream o;
    o << "sms " << sms.name << "\nalphabet " << join(sms.alphabet.names(), " ") << "\ndepth " << sms.depth() << "\n";
    for (int l = 0; l < sms.depth(); ++l) {
        const auto& m = sms.M[static_cast<size_t>(l)];
        const auto& I = sms.I[static_cast<size_t>(l)];
        o << "level " << l << " " << m.rows() << " " << m.cols() << "\n";
        for (int i = 1; i <= m.rows(); ++i) {
            o << "M";
            for (int j = 1; j <= m.cols(); ++j) o << " " << format_entry(sms.alphabet, m.entry(i, j));
            o << "\n";
        }
        for (int i = 1; i <= I.rows; ++i) {
            o << "I";
            for (int j = 1; j <= I.cols; ++j) o << " " << I.at(i, j);
            o << "\n";
        }
    }
    o << "end\n";
    return o.str();
}

SymbolicMatrixSystem parse_sms(const std::string& text, const std::string& file) {
    detail::LineReader r(text, file);
    auto expect = [&](const char* kw, size_t n) {
        if (!r.next()) throw ParseError(file, r.lineno, 1, std::string("expected '") + kw + "'");
        if (r.toks[0].text != kw) r.fail(r.toks[0], std::string("expected '") + kw + "'");
        r.arity(n);
    };
    if (!r.next()) r.fail(1, "empty input");
    if (r.toks[0].text != "sms") r.fail(r.toks[0], "expected 'sms <name>'");
    r.arity(2);
    SymbolicMatrixSystem out;
    out.name = r.toks[1].text;
    if (!r.next() || r.toks[0].text != "alphabet" || r.toks.size() < 2) r.fail(1, "expected 'alphabet <symbols>'");
    {
        std::vector<std::string> names;
        for (size_t k = 1; k < r.toks.size(); ++k) names.push_back(r.toks[k].text);
        try {
            out.alphabet = Alphabet(names);
        } catch (const Error& e) {
            r.fail(r.toks[1], e.what());
        }
    }
    expect("depth", 2);
    const int depth = r.integer(1, 1, 1 << 20, "depth");
    int prev_cols = -1;
    for (int l = 0; l < depth; ++l) {
        expect("level", 4);
        r.integer(1, l, l, "level");
        const int rows = r.integer(2, 1, 1 << 20, "rows");
        const int cols = r.integer(3, 1, 1 << 20, "cols");
        if (prev_cols >= 0 && rows != prev_cols) r.fail(r.toks[2], "rows must equal the previous level's cols");
        prev_cols = cols;
        SymbolicMatrix m(rows, cols, out.alphabet.size());
        ZeroOneMatrix I(rows, cols);
        for (int i = 1; i <= rows; ++i) {
            expect("M", static_cast<size_t>(cols) + 1);
            for (int j = 1; j <= cols; ++j) {
                const auto& t = r.toks[static_cast<size_t>(j)];
                if (t.text == "0") continue;
                size_t pos = 0;
                while (pos <= t.text.size()) {
                    size_t plus = t.text.find('+', pos);
                    if (plus == std::string::npos) plus = t.text.size();
                    std::string sym = t.text.substr(pos, plus - pos);
                    int a = out.alphabet.find(sym);
                    if (a < 0) r.fail(t.col + static_cast<int>(pos), "unknown symbol '" + sym + "'");
                    m.add(i, j, a);
                    pos = plus + 1;
                }
            }
        }
        for (int i = 1; i <= rows; ++i) {
            expect("I", static_cast<size_t>(cols) + 1);
            for (int j = 1; j <= cols; ++j) I.set(i, j, r.integer(static_cast<size_t>(j), 0, 1, "I entry"));
        }
        out.M.push_back(std::move(m));
        out.I.push_back(std::move(I));
    }
    expect("end", 1);
    if (r.next()) r.fail(r.toks[0], "content after 'end'");
    return out;
}

}  // namespace lgs
