#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgs/system.hpp"

namespace lgs {

/// S_mu E_i^l S_nu^*, with |mu|, |nu| <= l.
struct Monomial {
    Word mu;
    int level = 0;
    int index = 1;
    Word nu;
    auto operator<=>(const Monomial&) const = default;
    /// |mu| - |nu|
    int n() const { return static_cast<int>(mu.size()) - static_cast<int>(nu.size()); }
};

/// Finite rational combination of monomials. Zero coefficients are never stored.
struct Element {
    std::map<Monomial, mpq_class> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const Monomial& m, const mpq_class& c);
    void add(const Element& o, const mpq_class& scale = 1);
};

/// Symbol weights defining the degree deg_w(S_mu E S_nu^*) = sum w(mu) - sum w(nu).
struct SymbolWeights {
    std::vector<int> w;
    static SymbolWeights ones(int symbols) { return {std::vector<int>(static_cast<size_t>(symbols), 1)}; }
    int sum(const Word& x) const;
};

struct RelationCheck {
    std::string relation;  ///< e.g. "sum S_b S_b^* = 1"
    std::string instance;  ///< instantiated generators, empty when the relation has none
    bool ok = false;
};

struct RelationsReport {
    int level = 0;
    std::vector<RelationCheck> checks;
    bool ok() const;
};

/// A stabilized element a (x) theta_{p,q}.
struct StableElement {
    Element a;
    int p = 0;
    int q = 0;
};

/**
 * @brief Exact *-algebra of a left-resolving truncated system. Products follow the rewriting rules
 * on S_alpha, E_i^l; levels beyond the truncation raise DepthError.
 */
class Algebra {
public:
    /// Throws Error(Domain) when the system is not left-resolving.
    explicit Algebra(const LambdaGraphSystem& s);
    /// The system is referenced, not copied.
    explicit Algebra(LambdaGraphSystem&&) = delete;

    const LambdaGraphSystem& system() const { return *s_; }

    bool admissible(const Monomial& m) const;

    Element one() const;
    /// E_i^l, range-checked.
    Element E(int l, int i) const;
    /// S_w = sum_t S_w E_t^{|w|}; throws when w is not admissible anywhere.
    Element S(const Word& w) const;
    Element S_star(const Word& w) const { return adjoint(S(w)); }
    /// The monomial as an element; zero when inadmissible.
    Element monomial(const Monomial& m) const;

    Element multiply(const Element& a, const Element& b) const;
    /// Product of two monomials, before normalization.
    Element multiply(const Monomial& a, const Monomial& b) const;
    Element adjoint(const Element& a) const;
    static Monomial adjoint(const Monomial& m) { return {m.nu, m.level, m.index, m.mu}; }

    /// Replace E_i^l by its descendants at level l2.
    Element raise_level(const Monomial& m, int l2) const;

    /**
     * @brief Refined form: within each n = |mu|-|nu| class, every monomial is extended letter by
     * letter to a common |nu| and raised to a common level. Two elements are equal iff their refined
     * forms at a shared target coincide.
     */
    Element normalize(const Element& a) const;
    bool equal(const Element& a, const Element& b) const;

    std::optional<int> degree(const SymbolWeights& w, const Element& a) const;

    StableElement stable_multiply(const StableElement& x, const StableElement& y) const;

    RelationsReport verify_relations(int l) const;

    /// One `q * S(mu) E(l,i) S(nu)^*` line per monomial, or "0".
    std::string format(const Element& a) const;
    std::string format(const Monomial& m) const;

private:
    struct Target {
        int B = 0;  ///< common |nu|
        int L = 0;  ///< common level
    };
    std::map<int, Target> targets(const Element& a) const;
    Element refine(const Element& a, const std::map<int, Target>& t) const;
    void extend_into(const Monomial& m, int letters, const mpq_class& c, Element& out) const;

    const LambdaGraphSystem* s_;
};

/// Parses the expression language against an algebra; errors carry 1-based column positions.
Element parse_expression(const Algebra& alg, const std::string& text);

}  // namespace lgs
