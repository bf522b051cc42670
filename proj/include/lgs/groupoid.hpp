#pragma once

#include <set>
#include <string>
#include <vector>

#include "lgs/algebra.hpp"
#include "lgs/language.hpp"

namespace lgs {

/// U(mu, v_i^l, nu): pairs whose range reads mu, whose source reads nu, meeting at v_i^l.
struct BasicBisection {
    Word mu;
    VertexRef v;
    Word nu;
    auto operator<=>(const BasicBisection&) const = default;
    int n() const { return static_cast<int>(mu.size()) - static_cast<int>(nu.size()); }
};

/// Element of the stabilized groupoid: base (x) (p, q).
struct StableBisection {
    BasicBisection base;
    int p = 0;
    int q = 0;
    auto operator<=>(const StableBisection&) const = default;
};

/// Fine sample U(alpha, w^d, beta) of the groupoid at resolution d.
struct GroupoidElementSample {
    Cylinder x;
    int n = 0;
    Cylinder z;
    auto operator<=>(const GroupoidElementSample&) const = default;
    BasicBisection bisection() const { return {x.word, x.vertex, z.word}; }
};

enum class StableMode { Lift, CanonicalStable };

bool admissible(const LambdaGraphSystem& s, const BasicBisection& b);

/// Pieces covering the composition b1 b2, sorted; empty when the composition is empty.
std::vector<BasicBisection> compose(const LambdaGraphSystem& s, const BasicBisection& b1, const BasicBisection& b2);

inline BasicBisection inverse(const BasicBisection& b) { return {b.nu, b.v, b.mu}; }

/// sum w(mu) - sum w(nu)
int cocycle_value(const SymbolWeights& w, const BasicBisection& b);

/// All U(alpha, w^d, beta) with |alpha|, |beta| <= d and both sides admissible, sorted.
std::vector<GroupoidElementSample> enumerate_elements(const LambdaGraphSystem& s, int d);

std::vector<StableBisection> stable_compose(const LambdaGraphSystem& s, const StableBisection& a,
                                            const StableBisection& b);
int stable_cocycle(const SymbolWeights& w, const StableBisection& b, StableMode mode);

/// Indicator of U(mu, v, nu) as an algebra element.
inline Monomial to_monomial(const BasicBisection& b) { return {b.mu, b.v.level, b.v.index, b.nu}; }
inline BasicBisection to_bisection(const Monomial& m) { return {m.mu, {m.level, m.index}, m.nu}; }

/**
 * @brief Canonical refinement of a union of basic bisections: per n, pieces are extended to a common
 * |nu| and raised to a common level. `floor` raises the targets further so that two families can share one.
 */
struct Refinement {
    std::map<int, std::pair<int, int>> target;  ///< n -> (|nu|, level)
    std::set<BasicBisection> pieces;
};
Refinement refine(const LambdaGraphSystem& s, const std::vector<BasicBisection>& family,
                  const std::map<int, std::pair<int, int>>& floor = {});

/// True when both families cover the same groupoid subset.
bool same_subset(const LambdaGraphSystem& s, const std::vector<BasicBisection>& a,
                 const std::vector<BasicBisection>& b);

std::string format_bisection(const Alphabet& alpha, const BasicBisection& b);
/// Reads `mu,v(l,i),nu`; empty words are written as nothing or ε.
BasicBisection parse_bisection(const Alphabet& alpha, const std::string& text);

}  // namespace lgs
