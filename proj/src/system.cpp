#include "lgs/system.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include <omp.h>

namespace lgs {

namespace {

std::string vname(int l, int i) { return "v_" + std::to_string(i) + "^" + std::to_string(l); }

}  // namespace

bool ValidationReport::has(const std::string& rule) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.rule == rule; });
}

LambdaGraphSystem::LambdaGraphSystem(std::string name, Alphabet alphabet, std::vector<int> sizes,
                                     std::vector<std::vector<Edge>> edges,
                                     std::vector<std::vector<int>> iota)
    : name_(std::move(name)), alphabet_(std::move(alphabet)), sizes_(std::move(sizes)),
      edges_(std::move(edges)), iota_(std::move(iota)) {
    if (sizes_.size() < 2) throw Error(ErrorKind::Structural, "depth must be at least 1");
    const size_t d = sizes_.size() - 1;
    for (size_t l = 0; l < sizes_.size(); ++l)
        if (sizes_[l] < 1)
            throw Error(ErrorKind::Structural, "level " + std::to_string(l) + " has no vertices");
    if (edges_.size() != d) throw Error(ErrorKind::Structural, "edge levels do not match depth");
    if (iota_.size() != d) throw Error(ErrorKind::Structural, "iota levels do not match depth");
    for (size_t l = 0; l < d; ++l) {
        for (const auto& e : edges_[l]) {
            if (e.src < 1 || e.src > sizes_[l] || e.tgt < 1 || e.tgt > sizes_[l + 1] || e.label < 0 ||
                e.label >= alphabet_.size())
                throw Error(ErrorKind::Structural, "edge reference out of range at level " + std::to_string(l));
        }
        std::sort(edges_[l].begin(), edges_[l].end());
        if (std::adjacent_find(edges_[l].begin(), edges_[l].end()) != edges_[l].end())
            throw Error(ErrorKind::Structural, "duplicate edge at level " + std::to_string(l));
        if (static_cast<int>(iota_[l].size()) != sizes_[l + 1])
            throw Error(ErrorKind::Structural, "iota " + std::to_string(l) + " is not total on level " +
                                                   std::to_string(l + 1));
        for (int v : iota_[l])
            if (v < 1 || v > sizes_[l])
                throw Error(ErrorKind::Structural, "iota value out of range at level " + std::to_string(l));
    }
    build_index();
}

void LambdaGraphSystem::build_index() {
    const int d = depth();
    out_.assign(static_cast<size_t>(d + 1), {});
    in_.assign(static_cast<size_t>(d + 1), {});
    children_.assign(static_cast<size_t>(d + 1), {});
    for (int l = 0; l <= d; ++l) {
        out_[static_cast<size_t>(l)].assign(static_cast<size_t>(size(l)), {});
        in_[static_cast<size_t>(l)].assign(static_cast<size_t>(size(l)), {});
        children_[static_cast<size_t>(l)].assign(static_cast<size_t>(size(l)), {});
    }
    for (int l = 0; l < d; ++l) {
        const auto& es = edges(l);
        for (size_t k = 0; k < es.size(); ++k) {
            out_[static_cast<size_t>(l)][static_cast<size_t>(es[k].src - 1)].push_back(static_cast<int>(k));
            in_[static_cast<size_t>(l + 1)][static_cast<size_t>(es[k].tgt - 1)].push_back(static_cast<int>(k));
        }
        for (int j = 1; j <= size(l + 1); ++j)
            children_[static_cast<size_t>(l)][static_cast<size_t>(iota(l, j) - 1)].push_back(j);
    }
}

int LambdaGraphSystem::project(int from, int i, int to) const {
    if (to > from || to < 0 || from > depth()) throw Error(ErrorKind::Range, "bad projection levels");
    for (int l = from; l > to; --l) i = iota(l - 1, i);
    return i;
}

std::vector<int> LambdaGraphSystem::descendants(int from, int i, int to) const {
    if (to < from || to > depth()) throw DepthError(to, depth(), "raising a vertex");
    std::vector<int> cur{i};
    for (int l = from; l < to; ++l) {
        std::vector<int> next;
        for (int v : cur) {
            const auto& ch = children(l, v);
            next.insert(next.end(), ch.begin(), ch.end());
        }
        std::sort(next.begin(), next.end());
        cur = std::move(next);
    }
    return cur;
}

std::vector<int> LambdaGraphSystem::sources(int l, const std::vector<int>& tgts, int a) const {
    std::vector<int> res;
    for (int j : tgts)
        for (int k : in(l, j)) {
            const auto& e = edges(l - 1)[static_cast<size_t>(k)];
            if (e.label == a) res.push_back(e.src);
        }
    std::sort(res.begin(), res.end());
    res.erase(std::unique(res.begin(), res.end()), res.end());
    return res;
}

std::vector<int> LambdaGraphSystem::targets(int l, const std::vector<int>& from, int a) const {
    std::vector<int> res;
    for (int i : from)
        for (int k : out(l, i)) {
            const auto& e = edges(l)[static_cast<size_t>(k)];
            if (e.label == a) res.push_back(e.tgt);
        }
    std::sort(res.begin(), res.end());
    res.erase(std::unique(res.begin(), res.end()), res.end());
    return res;
}

std::vector<int> LambdaGraphSystem::backtrace(const Word& w, int l, int i) const {
    if (static_cast<int>(w.size()) > l) return {};
    std::vector<int> cur{i};
    int level = l;
    for (auto it = w.rbegin(); it != w.rend() && !cur.empty(); ++it, --level) cur = sources(level, cur, *it);
    return cur;
}

bool LambdaGraphSystem::admissible(const Word& w, int l, int i) const {
    if (l < 0 || l > depth() || i < 1 || i > size(l)) return false;
    return !backtrace(w, l, i).empty();
}

bool LambdaGraphSystem::operator==(const LambdaGraphSystem& o) const {
    return alphabet_ == o.alphabet_ && sizes_ == o.sizes_ && edges_ == o.edges_ && iota_ == o.iota_;
}

// ---------------------------------------------------------------------------
// validation

namespace {

/// label counts of E^iota(u, v) for every u at level l-1, v fixed at level l+1
std::vector<int> upper_counts(const LambdaGraphSystem& s, int l, int v) {
    const int n = s.alphabet().size();
    std::vector<int> c(static_cast<size_t>(s.size(l - 1) * n), 0);
    for (int k : s.in(l + 1, v)) {
        const auto& e = s.edges(l)[static_cast<size_t>(k)];
        int u = s.iota(l - 1, e.src);
        ++c[static_cast<size_t>((u - 1) * n + e.label)];
    }
    return c;
}

/// label counts of E_iota(u, v) for every u at level l-1, v fixed at level l+1
std::vector<int> lower_counts(const LambdaGraphSystem& s, int l, int v) {
    const int n = s.alphabet().size();
    std::vector<int> c(static_cast<size_t>(s.size(l - 1) * n), 0);
    int w = s.iota(l, v);
    for (int k : s.in(l, w)) {
        const auto& e = s.edges(l - 1)[static_cast<size_t>(k)];
        ++c[static_cast<size_t>((e.src - 1) * n + e.label)];
    }
    return c;
}

std::string multiset_text(const LambdaGraphSystem& s, const std::vector<int>& c, int u) {
    const int n = s.alphabet().size();
    std::vector<std::string> parts;
    for (int a = 0; a < n; ++a)
        for (int t = 0; t < c[static_cast<size_t>((u - 1) * n + a)]; ++t) parts.push_back(s.alphabet().name(a));
    return parts.empty() ? "{}" : "{" + join(parts, ",") + "}";
}

std::vector<Violation> local_property_at(const LambdaGraphSystem& s, int l, int v) {
    std::vector<Violation> res;
    auto up = upper_counts(s, l, v);
    auto lo = lower_counts(s, l, v);
    const int n = s.alphabet().size();
    for (int u = 1; u <= s.size(l - 1); ++u) {
        bool same = std::equal(up.begin() + (u - 1) * n, up.begin() + u * n, lo.begin() + (u - 1) * n);
        if (!same)
            res.push_back({"local-property", l, "l=" + std::to_string(l) + " u=" + vname(l - 1, u) + " v=" + vname(l + 1, v),
                           "E^iota labels " + multiset_text(s, up, u) + " vs E_iota labels " + multiset_text(s, lo, u)});
    }
    return res;
}

std::vector<Violation> terminal_at(const LambdaGraphSystem& s, int l, int v) {
    // v at level l+1, l >= 1
    std::vector<Violation> res;
    const int n = s.alphabet().size();
    std::vector<char> into_v(static_cast<size_t>(n), 0), into_w(static_cast<size_t>(n), 0);
    for (int k : s.in(l + 1, v)) into_v[static_cast<size_t>(s.edges(l)[static_cast<size_t>(k)].label)] = 1;
    int w = s.iota(l, v);
    for (int k : s.in(l, w)) into_w[static_cast<size_t>(s.edges(l - 1)[static_cast<size_t>(k)].label)] = 1;
    for (int a = 0; a < n; ++a)
        if (into_v[static_cast<size_t>(a)] != into_w[static_cast<size_t>(a)])
            res.push_back({"terminal-consistency", l + 1,
                           "l=" + std::to_string(l + 1) + " v=" + vname(l + 1, v) + " label=" + s.alphabet().name(a),
                           std::string("edge labeled ") + s.alphabet().name(a) + (into_v[static_cast<size_t>(a)] ? " enters " : " does not enter ") +
                               vname(l + 1, v) + " but " + (into_w[static_cast<size_t>(a)] ? "enters " : "does not enter ") + vname(l, w)});
    return res;
}

}  // namespace

ValidationReport validate(const LambdaGraphSystem& s, Exec exec) {
    ValidationReport rep;
    auto& vs = rep.violations;
    const int d = s.depth();
    for (int l = 0; l < d; ++l) {
        std::vector<char> hit(static_cast<size_t>(s.size(l)), 0);
        for (int v : s.iota_maps()[static_cast<size_t>(l)]) hit[static_cast<size_t>(v - 1)] = 1;
        for (int i = 1; i <= s.size(l); ++i)
            if (!hit[static_cast<size_t>(i - 1)])
                vs.push_back({"iota-surjective", l, "l=" + std::to_string(l) + " " + vname(l, i),
                              vname(l, i) + " is not in the image of iota"});
    }
    for (int l = 0; l <= d; ++l)
        for (int i = 1; i <= s.size(l); ++i) {
            if (l < d && s.out(l, i).empty())
                vs.push_back({"successor", l, vname(l, i), vname(l, i) + " has no outgoing edge"});
            if (l >= 1 && s.in(l, i).empty())
                vs.push_back({"predecessor", l, vname(l, i), vname(l, i) + " has no incoming edge"});
        }

    // (l, v) work items; per-item results are concatenated in item order
    std::vector<std::pair<int, int>> items;
    for (int l = 1; l < d; ++l)
        for (int v = 1; v <= s.size(l + 1); ++v) items.emplace_back(l, v);
    std::vector<std::vector<Violation>> local(items.size()), term(items.size());
    const long n = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::Parallel)
    for (long k = 0; k < n; ++k) {
        auto [l, v] = items[static_cast<size_t>(k)];
        local[static_cast<size_t>(k)] = local_property_at(s, l, v);
        term[static_cast<size_t>(k)] = terminal_at(s, l, v);
    }
    for (auto& part : local) vs.insert(vs.end(), part.begin(), part.end());
    for (auto& part : term) vs.insert(vs.end(), part.begin(), part.end());
    rep.ok = vs.empty();
    return rep;
}

bool local_property_swapped(const LambdaGraphSystem& s) {
    const int n = s.alphabet().size();
    for (int l = 1; l < s.depth(); ++l) {
        for (int u = 1; u <= s.size(l - 1); ++u) {
            // counts indexed by v at level l+1
            std::vector<int> lower(static_cast<size_t>(s.size(l + 1) * n), 0), upper(lower.size(), 0);
            for (int k : s.out(l - 1, u)) {
                const auto& e = s.edges(l - 1)[static_cast<size_t>(k)];
                for (int v : s.children(l, e.tgt)) ++lower[static_cast<size_t>((v - 1) * n + e.label)];
            }
            for (int c : s.children(l - 1, u))
                for (int k : s.out(l, c)) {
                    const auto& e = s.edges(l)[static_cast<size_t>(k)];
                    ++upper[static_cast<size_t>((e.tgt - 1) * n + e.label)];
                }
            if (lower != upper) return false;
        }
    }
    return true;
}

LeftResolvingResult is_left_resolving(const LambdaGraphSystem& s) {
    for (int l = 0; l < s.depth(); ++l) {
        std::map<std::pair<int, int>, Edge> seen;
        for (const auto& e : s.edges(l)) {
            auto [it, fresh] = seen.emplace(std::make_pair(e.tgt, e.label), e);
            if (!fresh) return {false, l, it->second, e};
        }
    }
    return {};
}

bool is_left_resolving(const LabeledGraph& g) {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : g.edges)
        if (!seen.emplace(e.tgt, e.label).second) return false;
    return true;
}

namespace {

void require_essential(const LabeledGraph& g) {
    const size_t n = g.states.size();
    if (n == 0) throw Error(ErrorKind::Domain, "graph has no states");
    std::vector<int> outdeg(n, 0), indeg(n, 0);
    for (const auto& e : g.edges) {
        if (e.src < 0 || static_cast<size_t>(e.src) >= n || e.tgt < 0 || static_cast<size_t>(e.tgt) >= n)
            throw Error(ErrorKind::Structural, "graph edge references an unknown state");
        ++outdeg[static_cast<size_t>(e.src)];
        ++indeg[static_cast<size_t>(e.tgt)];
    }
    for (size_t k = 0; k < n; ++k) {
        if (!outdeg[k]) throw Error(ErrorKind::Domain, "state " + g.states[k] + " has no outgoing edge");
        if (!indeg[k]) throw Error(ErrorKind::Domain, "state " + g.states[k] + " has no incoming edge");
    }
}

}  // namespace

LambdaGraphSystem from_labeled_graph(const LabeledGraph& g, int depth) {
    if (depth < 1) throw Error(ErrorKind::Domain, "depth must be at least 1");
    require_essential(g);
    const int n = static_cast<int>(g.states.size());
    std::vector<Edge> level;
    for (const auto& e : g.edges) level.push_back({e.src + 1, e.label, e.tgt + 1});
    std::vector<int> id(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) id[static_cast<size_t>(k)] = k + 1;
    return LambdaGraphSystem(g.name, g.alphabet, std::vector<int>(static_cast<size_t>(depth + 1), n),
                             std::vector<std::vector<Edge>>(static_cast<size_t>(depth), level),
                             std::vector<std::vector<int>>(static_cast<size_t>(depth), id));
}

// ---------------------------------------------------------------------------
// past-set construction

namespace {

using StateSet = std::uint64_t;

struct Presentation {
    int states = 0;
    int symbols = 0;
    /// pre[a][t] : states with an a-edge into t
    std::vector<std::vector<StateSet>> pre;

    StateSet preimage(StateSet f, int a) const {
        StateSet r = 0;
        for (int t = 0; t < states; ++t)
            if (f >> t & 1U) r |= pre[static_cast<size_t>(a)][static_cast<size_t>(t)];
        return r;
    }
};

using Family = std::vector<StateSet>;  // sorted, unique

Family step(const Presentation& p, const Family& f) {
    std::set<StateSet> out;
    for (StateSet s : f)
        for (int a = 0; a < p.symbols; ++a)
            if (StateSet r = p.preimage(s, a)) out.insert(r);
    return {out.begin(), out.end()};
}

/// union of S_n over n >= from, where S_n are the start-state sets of words of length n
Family tail_union(const Presentation& p, int from) {
    std::vector<Family> seq;
    std::map<Family, int> first;
    StateSet all = p.states == 64 ? ~StateSet{0} : ((StateSet{1} << p.states) - 1);
    seq.push_back({all});
    int a = -1, b = -1;
    for (int n = 0;; ++n) {
        auto [it, fresh] = first.emplace(seq.back(), n);
        if (!fresh) {
            a = it->second;
            b = n;
            break;
        }
        seq.push_back(step(p, seq.back()));
    }
    const int period = b - a;
    auto at = [&](int n) -> const Family& {
        if (n < b) return seq[static_cast<size_t>(n)];
        return seq[static_cast<size_t>(a + (n - a) % period)];
    };
    std::set<StateSet> u;
    const int start = std::max(from, 0);
    const int stop = std::max(start, a) + period;
    for (int n = start; n < stop; ++n)
        for (StateSet s : at(n)) u.insert(s);
    return {u.begin(), u.end()};
}

using PastSet = std::vector<Word>;  // sorted

/// words of length l that can be read along a path ending in f
PastSet past_set(const Presentation& p, StateSet f, int l) {
    PastSet res;
    Word w(static_cast<size_t>(l));
    // fill positions right to left
    auto rec = [&](auto&& self, int pos, StateSet cur) -> void {
        if (pos < 0) {
            res.push_back(w);
            return;
        }
        for (int a = 0; a < p.symbols; ++a) {
            StateSet r = p.preimage(cur, a);
            if (!r) continue;
            w[static_cast<size_t>(pos)] = a;
            self(self, pos - 1, r);
        }
    };
    rec(rec, l - 1, f);
    std::sort(res.begin(), res.end());
    return res;
}

}  // namespace

LambdaGraphSystem canonical_lgs(const LabeledGraph& g, int depth, int window) {
    if (depth < 1) throw Error(ErrorKind::Domain, "depth must be at least 1");
    if (window < depth) throw Error(ErrorKind::Domain, "window must be at least the depth");
    require_essential(g);
    if (g.states.size() > 64) throw Error(ErrorKind::Domain, "past-set construction supports at most 64 states");
    Presentation p;
    p.states = static_cast<int>(g.states.size());
    p.symbols = g.alphabet.size();
    p.pre.assign(static_cast<size_t>(p.symbols), std::vector<StateSet>(static_cast<size_t>(p.states), 0));
    for (const auto& e : g.edges)
        p.pre[static_cast<size_t>(e.label)][static_cast<size_t>(e.tgt)] |= StateSet{1} << e.src;

    std::vector<std::vector<PastSet>> verts(static_cast<size_t>(depth + 1));
    std::vector<std::map<PastSet, int>> index(static_cast<size_t>(depth + 1));
    for (int l = 0; l <= depth; ++l) {
        std::set<PastSet> classes;
        for (StateSet f : tail_union(p, window + depth - l)) classes.insert(past_set(p, f, l));
        verts[static_cast<size_t>(l)].assign(classes.begin(), classes.end());
        for (size_t k = 0; k < verts[static_cast<size_t>(l)].size(); ++k)
            index[static_cast<size_t>(l)][verts[static_cast<size_t>(l)][k]] = static_cast<int>(k) + 1;
    }

    std::vector<int> sizes;
    for (auto& v : verts) sizes.push_back(static_cast<int>(v.size()));
    std::vector<std::vector<Edge>> edges(static_cast<size_t>(depth));
    std::vector<std::vector<int>> iota(static_cast<size_t>(depth));
    auto lookup = [&](int l, const PastSet& ps) {
        auto it = index[static_cast<size_t>(l)].find(ps);
        if (it == index[static_cast<size_t>(l)].end())
            throw Error(ErrorKind::Domain, "past-set construction did not close at level " + std::to_string(l));
        return it->second;
    };
    for (int l = 0; l < depth; ++l) {
        for (size_t k = 0; k < verts[static_cast<size_t>(l + 1)].size(); ++k) {
            const auto& v = verts[static_cast<size_t>(l + 1)][k];
            const int j = static_cast<int>(k) + 1;
            for (int a = 0; a < p.symbols; ++a) {
                std::set<Word> src;
                for (const auto& w : v)
                    if (w.back() == a) src.insert(Word(w.begin(), w.end() - 1));
                if (!src.empty()) edges[static_cast<size_t>(l)].push_back({lookup(l, {src.begin(), src.end()}), a, j});
            }
            std::set<Word> suf;
            for (const auto& w : v) suf.insert(Word(w.begin() + 1, w.end()));
            iota[static_cast<size_t>(l)].push_back(lookup(l, {suf.begin(), suf.end()}));
        }
    }
    return LambdaGraphSystem(g.name + "-past-w" + std::to_string(window), g.alphabet, sizes, edges, iota);
}

TransitionMatrices transition_matrices(const LambdaGraphSystem& s, int l) {
    if (l < 0 || l >= s.depth()) throw Error(ErrorKind::Range, "level " + std::to_string(l) + " out of range");
    TransitionMatrices t;
    t.rows = s.size(l);
    t.symbols = s.alphabet().size();
    t.cols = s.size(l + 1);
    t.a.assign(static_cast<size_t>(t.rows * t.symbols * t.cols), 0);
    t.i.assign(static_cast<size_t>(t.rows * t.cols), 0);
    for (const auto& e : s.edges(l))
        t.a[static_cast<size_t>(((e.src - 1) * t.symbols + e.label) * t.cols + (e.tgt - 1))] = 1;
    for (int j = 1; j <= t.cols; ++j) t.i[static_cast<size_t>((s.iota(l, j) - 1) * t.cols + (j - 1))] = 1;
    return t;
}

LambdaGraphSystem truncate(const LambdaGraphSystem& s, int d) {
    if (d < 1 || d > s.depth()) throw Error(ErrorKind::Range, "truncation depth " + std::to_string(d) + " out of range");
    std::vector<int> sizes(s.sizes().begin(), s.sizes().begin() + d + 1);
    std::vector<std::vector<Edge>> edges;
    std::vector<std::vector<int>> iota;
    for (int l = 0; l < d; ++l) {
        edges.push_back(s.edges(l));
        iota.push_back(s.iota_maps()[static_cast<size_t>(l)]);
    }
    return LambdaGraphSystem(s.name(), s.alphabet(), sizes, edges, iota);
}

}  // namespace lgs
