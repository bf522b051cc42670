#include "lgs/language.hpp"

#include <algorithm>
#include <numeric>

namespace lgs {

namespace {

/// Depth-first enumeration of label sequences of forward paths; states are vertex sets.
void forward_words(const LambdaGraphSystem& s, int level, std::vector<int> cur, int remaining, Word& w,
                   std::vector<Word>& out) {
    if (remaining == 0) {
        out.push_back(w);
        return;
    }
    for (int a = 0; a < s.alphabet().size(); ++a) {
        auto next = s.targets(level, cur, a);
        if (next.empty()) continue;
        w.push_back(a);
        forward_words(s, level + 1, std::move(next), remaining - 1, w, out);
        w.pop_back();
    }
}

std::vector<int> all_vertices(const LambdaGraphSystem& s, int l) {
    std::vector<int> v(static_cast<size_t>(s.size(l)));
    std::iota(v.begin(), v.end(), 1);
    return v;
}

}  // namespace

std::vector<Word> words_from_level(const LambdaGraphSystem& s, int k, int level) {
    if (k < 0 || level < 0 || level + k > s.depth())
        throw DepthError(level + k, s.depth(), "enumerating words of length " + std::to_string(k));
    std::vector<Word> out;
    Word w;
    forward_words(s, level, all_vertices(s, level), k, w, out);
    // symbol-major DFS already yields lexicographic order
    return out;
}

std::vector<Word> words(const LambdaGraphSystem& s, int k) { return words_from_level(s, k, 0); }

std::vector<Cylinder> cylinders(const LambdaGraphSystem& s, int k, int l) {
    if (k < 0 || k > l) throw Error(ErrorKind::Domain, "cylinders need 0 <= k <= l");
    if (l > s.depth()) throw DepthError(l, s.depth(), "enumerating cylinders");
    std::vector<Cylinder> out;
    for (int i = 1; i <= s.size(l); ++i) {
        // backward enumeration from v_i^l, filling the word right to left
        Word w(static_cast<size_t>(k));
        auto rec = [&](auto&& self, int pos, int level, const std::vector<int>& cur) -> void {
            if (pos < 0) {
                out.push_back({w, {l, i}});
                return;
            }
            for (int a = 0; a < s.alphabet().size(); ++a) {
                auto prev = s.sources(level, cur, a);
                if (prev.empty()) continue;
                w[static_cast<size_t>(pos)] = a;
                self(self, pos - 1, level - 1, prev);
            }
        };
        rec(rec, k - 1, l, {i});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Word> gamma_plus(const LambdaGraphSystem& s, VertexRef v, int d) {
    if (v.level < 0 || v.level > s.depth() || v.index < 1 || v.index > s.size(v.level))
        throw Error(ErrorKind::Range, "vertex out of range");
    if (d < 0 || v.level + d > s.depth())
        throw DepthError(v.level + d, s.depth(), "gamma_plus of v_" + std::to_string(v.index) + "^" + std::to_string(v.level));
    std::vector<Word> out;
    Word w;
    forward_words(s, v.level, {v.index}, d, w, out);
    return out;
}

bool ConditionIReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.pass; });
}

ConditionIReport check_condition_I(const LambdaGraphSystem& s, int d) {
    if (d < 1) throw Error(ErrorKind::Domain, "condition (I) needs d >= 1");
    ConditionIReport rep;
    rep.d = d;
    for (int l = 0; l + d <= s.depth(); ++l)
        for (int i = 1; i <= s.size(l); ++i) {
            auto g = gamma_plus(s, {l, i}, d);
            int c = static_cast<int>(std::min<size_t>(g.size(), 2));
            rep.entries.push_back({{l, i}, c, c >= 2});
        }
    return rep;
}

bool EssFreeReport::certified() const {
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.witnessed; });
}

namespace {

/// true when labels break x_{m+j} = x_{n+j} somewhere inside w (1-based positions)
bool breaks_period(const Word& w, int m, int n) {
    for (size_t j = 1; static_cast<size_t>(m) + j <= w.size(); ++j)
        if (w[static_cast<size_t>(m) + j - 1] != w[static_cast<size_t>(n) + j - 1]) return true;
    return false;
}

bool search_extension(const LambdaGraphSystem& s, int level, const std::vector<int>& cur, int remaining, Word& x,
                      int m, int n) {
    if (remaining == 0) return breaks_period(x, m, n);
    for (int a = 0; a < s.alphabet().size(); ++a) {
        auto next = s.targets(level, cur, a);
        if (next.empty()) continue;
        x.push_back(a);
        if (search_extension(s, level + 1, next, remaining - 1, x, m, n)) return true;
        x.pop_back();
    }
    return false;
}

}  // namespace

EssFreeReport check_essential_freeness(const LambdaGraphSystem& s, int m, int n, int d, Exec exec) {
    if (!(m > n && n >= 0)) throw Error(ErrorKind::Domain, "essential freeness needs m > n >= 0");
    if (d < 0) throw Error(ErrorKind::Domain, "cylinder depth must be non-negative");
    if (d + m > s.depth()) throw DepthError(d + m, s.depth(), "essential freeness witnesses");
    EssFreeReport rep;
    rep.m = m;
    rep.n = n;
    rep.d = d;
    auto cyls = cylinders(s, d, d);
    rep.entries.resize(cyls.size());
    const long total = static_cast<long>(cyls.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::Parallel)
    for (long k = 0; k < total; ++k) {
        const auto& c = cyls[static_cast<size_t>(k)];
        auto& e = rep.entries[static_cast<size_t>(k)];
        e.cylinder = c;
        // iterative deepening gives the shortest witness, lexicographically least among those
        for (int len = 0; d + len <= s.depth() && !e.witnessed; ++len) {
            Word x = c.word;
            if (search_extension(s, d, {c.vertex.index}, len, x, m, n)) {
                e.witnessed = true;
                e.extension.assign(x.begin() + d, x.end());
            }
        }
    }
    return rep;
}

}  // namespace lgs
