#include "lgs/groupoid.hpp"

#include <algorithm>
#include <regex>

namespace lgs {

bool admissible(const LambdaGraphSystem& s, const BasicBisection& b) {
    const auto& v = b.v;
    if (v.level < 0 || v.level > s.depth() || v.index < 1 || v.index > s.size(v.level)) return false;
    return s.admissible(b.mu, v.level, v.index) && s.admissible(b.nu, v.level, v.index);
}

std::vector<BasicBisection> compose(const LambdaGraphSystem& s, const BasicBisection& b1, const BasicBisection& b2) {
    std::vector<BasicBisection> out;
    const size_t k1 = b1.nu.size(), k2 = b2.mu.size();
    if (k1 > k2) {
        if (!std::equal(b2.mu.begin(), b2.mu.end(), b1.nu.begin())) return out;
        for (const auto& p : compose(s, inverse(b2), inverse(b1))) out.push_back(inverse(p));
        std::sort(out.begin(), out.end());
        return out;
    }
    if (!std::equal(b1.nu.begin(), b1.nu.end(), b2.mu.begin())) return out;
    // mu2 = nu1 kappa: the middle point reads nu1 kappa, so the range side gains kappa
    const Word kappa(b2.mu.begin() + static_cast<std::ptrdiff_t>(k1), b2.mu.end());
    const int kl = static_cast<int>(kappa.size());
    const int L = std::max(b1.v.level + kl, b2.v.level);
    if (L > s.depth()) throw DepthError(L, s.depth(), "composing bisections");
    Word mu = b1.mu;
    mu.insert(mu.end(), kappa.begin(), kappa.end());
    for (int t : s.descendants(b2.v.level, b2.v.index, L)) {
        bool hit = false;
        for (int src : s.backtrace(kappa, L, t))
            if (s.project(L - kl, src, b1.v.level) == b1.v.index) hit = true;
        if (!hit) continue;
        BasicBisection piece{mu, {L, t}, b2.nu};
        if (admissible(s, piece)) out.push_back(std::move(piece));
    }
    std::sort(out.begin(), out.end());
    return out;
}

int cocycle_value(const SymbolWeights& w, const BasicBisection& b) { return w.sum(b.mu) - w.sum(b.nu); }

std::vector<GroupoidElementSample> enumerate_elements(const LambdaGraphSystem& s, int d) {
    if (d < 0 || d > s.depth()) throw DepthError(d, s.depth(), "enumerating groupoid elements");
    std::vector<std::vector<Cylinder>> by_vertex(static_cast<size_t>(s.size(d)));
    for (int k = 0; k <= d; ++k)
        for (auto& c : cylinders(s, k, d)) by_vertex[static_cast<size_t>(c.vertex.index - 1)].push_back(c);
    std::vector<GroupoidElementSample> out;
    for (const auto& cs : by_vertex)
        for (const auto& x : cs)
            for (const auto& z : cs)
                out.push_back({x, static_cast<int>(x.word.size()) - static_cast<int>(z.word.size()), z});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<StableBisection> stable_compose(const LambdaGraphSystem& s, const StableBisection& a,
                                            const StableBisection& b) {
    std::vector<StableBisection> out;
    if (a.q != b.p) return out;
    for (auto& piece : compose(s, a.base, b.base)) out.push_back({std::move(piece), a.p, b.q});
    return out;
}

int stable_cocycle(const SymbolWeights& w, const StableBisection& b, StableMode mode) {
    switch (mode) {
        case StableMode::Lift:
            return cocycle_value(w, b.base);
        case StableMode::CanonicalStable:
            return b.base.n() + b.q - b.p;
    }
    throw Error(ErrorKind::Domain, "unknown stable cocycle mode");
}

namespace {

void extend(const LambdaGraphSystem& s, const BasicBisection& b, int letters, std::vector<BasicBisection>& out) {
    if (letters == 0) {
        out.push_back(b);
        return;
    }
    if (b.v.level + 1 > s.depth()) throw DepthError(b.v.level + 1, s.depth(), "refining a bisection");
    for (int id : s.out(b.v.level, b.v.index)) {
        const auto& e = s.edges(b.v.level)[static_cast<size_t>(id)];
        BasicBisection x{b.mu, {b.v.level + 1, e.tgt}, b.nu};
        x.mu.push_back(e.label);
        x.nu.push_back(e.label);
        extend(s, x, letters - 1, out);
    }
}

}  // namespace

Refinement refine(const LambdaGraphSystem& s, const std::vector<BasicBisection>& family,
                  const std::map<int, std::pair<int, int>>& floor) {
    Refinement r;
    r.target = floor;
    for (const auto& b : family) {
        auto& t = r.target.try_emplace(b.n(), 0, 0).first->second;
        t.first = std::max(t.first, static_cast<int>(b.nu.size()));
    }
    for (const auto& b : family) {
        auto& t = r.target[b.n()];
        t.second = std::max(t.second, b.v.level + t.first - static_cast<int>(b.nu.size()));
    }
    for (const auto& b : family) {
        if (!admissible(s, b)) continue;
        const auto [B, L] = r.target[b.n()];
        std::vector<BasicBisection> ext;
        extend(s, b, B - static_cast<int>(b.nu.size()), ext);
        for (const auto& x : ext)
            for (int t : s.descendants(x.v.level, x.v.index, L)) {
                BasicBisection y{x.mu, {L, t}, x.nu};
                if (admissible(s, y)) r.pieces.insert(std::move(y));
            }
    }
    return r;
}

bool same_subset(const LambdaGraphSystem& s, const std::vector<BasicBisection>& a,
                 const std::vector<BasicBisection>& b) {
    auto ra = refine(s, a);
    auto rb = refine(s, b, ra.target);
    if (rb.target == ra.target) return ra.pieces == rb.pieces;
    // b needed a finer target; refine a again to match
    auto ra2 = refine(s, a, rb.target);
    return ra2.pieces == rb.pieces;
}

std::string format_bisection(const Alphabet& alpha, const BasicBisection& b) {
    auto w = [&](const Word& x) { return x.empty() ? std::string() : alpha.format(x); };
    return w(b.mu) + ",v(" + std::to_string(b.v.level) + "," + std::to_string(b.v.index) + ")," + w(b.nu);
}

BasicBisection parse_bisection(const Alphabet& alpha, const std::string& text) {
    static const std::regex re(R"(^\s*([^,]*?)\s*,\s*v\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*,\s*([^,]*?)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw Error(ErrorKind::Parse, "bisection '" + text + "' is not of the form mu,v(l,i),nu");
    BasicBisection b;
    b.mu = alpha.parse_word(m[1].str());
    b.v = {std::stoi(m[2].str()), std::stoi(m[3].str())};
    b.nu = alpha.parse_word(m[4].str());
    return b;
}

}  // namespace lgs
