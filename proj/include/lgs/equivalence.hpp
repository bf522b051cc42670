#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgs/code.hpp"
#include "lgs/groupoid.hpp"

namespace lgs {

/// One verified condition of a checker report.
struct Clause {
    explicit Clause(std::string n = {}) : name(std::move(n)) {}
    std::string name;
    bool ok = true;
    bool checked = true;  ///< false when skipped (informational)
    size_t tested = 0;
    std::string witness;                ///< human-readable, empty on pass
    std::optional<Cylinder> cylinder;   ///< least failing cylinder when the clause scans cylinders
};

struct CheckReport {
    std::string kind;
    int depth = 0;
    std::vector<Clause> clauses;
    bool ok() const;
    const Clause* first_failure() const;
    const Clause* find(const std::string& name) const;
};

/**
 * @brief Checks the orbit equations of a certificate on every depth-D cylinder of both systems, plus
 * well-definedness, the label factor condition and both inverse compositions. Throws DepthError
 * when some cylinder leaves no comparable positions.
 */
CheckReport check_coe(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2, const CoeCertificate& cert, int D,
                      Exec exec = Exec::Parallel);

/// Constant-K version; a pass is re-checked through check_coe with l = K + 1.
CheckReport check_eventual_conjugacy(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2,
                                     const EcCertificate& cert, int D, Exec exec = Exec::Parallel);

using GroupoidMap = std::function<std::vector<BasicBisection>(const BasicBisection&)>;

/**
 * @brief phi(x, p - q, z) = (h(x), c^p(x) - c^q(z), h(z)) with c = l1 - k1, evaluated piecewise.
 * A bisection is refined until each piece has an image that is again a basic bisection whose
 * pullback lies inside the original bisection; nested images are dropped.
 */
class CoeGroupoidMap {
public:
    CoeGroupoidMap(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2, CoeCertificate cert);
    CoeGroupoidMap(LambdaGraphSystem&&, const LambdaGraphSystem&, CoeCertificate) = delete;
    CoeGroupoidMap(const LambdaGraphSystem&, LambdaGraphSystem&&, CoeCertificate) = delete;

    std::vector<BasicBisection> operator()(const BasicBisection& b) const;
    /// Same construction with the roles of the systems exchanged.
    CoeGroupoidMap reversed() const;
    GroupoidMap as_function() const;

private:
    void transport(const BasicBisection& root, const BasicBisection& piece, std::vector<BasicBisection>& out) const;
    /// The pullback of `image` lies inside `root` and relates partners as the root does.
    bool exact(const BasicBisection& root, const BasicBisection& image) const;

    const LambdaGraphSystem* s1_;
    const LambdaGraphSystem* s2_;
    CoeCertificate cert_;
};

/// Throws Error(Domain) when the certificate fails check_coe at depth D.
CoeGroupoidMap coe_to_groupoid_iso(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2,
                                   const CoeCertificate& cert, int D);

struct WeightPair {
    SymbolWeights w1, w2;
};

/**
 * @brief Functoriality, unit and inverse preservation, injectivity on fixed-length families and,
 * when an inverse map is given, bijectivity by round trips, over the depth-D universe.
 */
CheckReport check_groupoid_iso(const GroupoidMap& phi, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2,
                               int D, const std::optional<WeightPair>& preserve = std::nullopt,
                               const GroupoidMap& inverse = {}, Exec exec = Exec::Parallel);

/// Image of a depth-D cylinder-point under the forward code.
OutPrefix forward_image(const LambdaGraphSystem& s1, const OneSidedCode& code, const Cylinder& x);

/// Shift-commuting, well-definedness, surjectivity and the injectivity-from-index-l clause.
CheckReport check_two_sided(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2,
                            const TwoSidedCertificate& cert, int D, Exec exec = Exec::Parallel);

struct PastClasses {
    int L = 0;
    /// per vertex index at level L: classes, each sorted, ordered by least member
    std::map<int, std::vector<std::vector<Word>>> classes;
    bool transitive = true;
    /// g_{(nu, v)}(n) = t + r n where nu is the t-th member of a class of size r
    std::int64_t g(const Word& nu, int vertex, std::int64_t n) const;
    /// (t, r) of nu in its class at vertex
    std::pair<int, int> position(const Word& nu, int vertex) const;
};

/// Classes of the relation on length-L words at each v_i^L, decided on depth-D extensions.
PastClasses past_equivalence_classes(const LambdaGraphSystem& s1, const TwoSidedCertificate& cert, int D);

struct StableIsoReport {
    CheckReport report;
    size_t samples = 0;
};

/**
 * @brief phi~((x,p), n, (z,q)) in product coordinates: the base is transported along the sliding code
 * and the heads through g. Verification runs on `samples` stable elements with p, q <= 4.
 */
class StableIso {
public:
    StableIso(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2, TwoSidedCertificate cert, int D);
    StableIso(LambdaGraphSystem&&, const LambdaGraphSystem&, TwoSidedCertificate, int) = delete;
    StableIso(const LambdaGraphSystem&, LambdaGraphSystem&&, TwoSidedCertificate, int) = delete;

    std::vector<StableBisection> operator()(const StableBisection& b) const;
    const PastClasses& classes() const { return classes_; }
    /// xi(x, p) for a depth-D cylinder point
    std::pair<OutPrefix, std::int64_t> xi(const Cylinder& x, std::int64_t p) const;

private:
    void transport(const BasicBisection& piece, int p, int q, std::vector<BasicBisection>& out) const;
    std::pair<Word, int> head_class(const BasicBisection& piece, bool range) const;

    const LambdaGraphSystem* s1_;
    const LambdaGraphSystem* s2_;
    TwoSidedCertificate cert_;
    int D_;
    PastClasses classes_;
};

StableIsoReport build_stable_iso(const LambdaGraphSystem& s1, const LambdaGraphSystem& s2,
                                 const TwoSidedCertificate& cert, int D, size_t samples, std::uint64_t seed,
                                 Exec exec = Exec::Parallel);

std::string format_report(const CheckReport& r);

}  // namespace lgs
