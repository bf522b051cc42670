#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgs/language.hpp"

namespace lgs {

/**
 * @brief Finite prefix of a point: labels x_1..x_n and, per position j = 0..n, the vertex u_j
 * known at some level (level -1 when unknown).
 */
struct PointPrefix {
    Word labels;
    std::vector<VertexRef> vert;
    int length() const { return static_cast<int>(labels.size()); }
};

/// Prefix read off an admissible cylinder U(w, v); the backward path fixes u_j at level v.level - |w| + j.
PointPrefix point_from_cylinder(const LambdaGraphSystem& s, const Word& w, VertexRef v);
/// sigma^k of a prefix.
PointPrefix shift(const PointPrefix& p, int k);
/// Depth-d cylinder of sigma^{i-1} x, i >= 1.
Cylinder window(const LambdaGraphSystem& s, const PointPrefix& p, int i, int d);

/// Image under a code: labels y_j and selectors naming level-constant vertex orbits.
struct OutPrefix {
    Word labels;
    std::vector<int> sel;
    int length() const { return static_cast<int>(labels.size()); }
    bool operator==(const OutPrefix&) const = default;
};

/// As a point prefix of the target system (selectors are known at every level).
PointPrefix as_point(const LambdaGraphSystem& target, const OutPrefix& y);
/// sigma^k, keeping at most `len` positions (-1 for all).
OutPrefix slice(const OutPrefix& y, int k, int len = -1);

/// True when iota(v_j^{l+1}) = v_j^l at every level.
bool constant_orbit(const LambdaGraphSystem& s, int j);

struct CodeOutput {
    int sym = 0;
    int sel = 1;
    auto operator<=>(const CodeOutput&) const = default;
};

/// Window map on depth-d cylinders.
struct CodeTable {
    std::map<Cylinder, CodeOutput> map;
    const CodeOutput& at(const Alphabet& alpha, const Cylinder& c) const;
};

struct OneSidedCode {
    int d = 1;
    CodeTable forward;  ///< first system -> second
    CodeTable inverse;  ///< second system -> first
};

/// Slides a code table over every complete window of p.
OutPrefix apply(const LambdaGraphSystem& src, const CodeTable& t, int d, const PointPrefix& p);

/// Transfer function given on depth-`window` cylinders, or constant.
struct CylinderFunction {
    int window = 0;
    std::optional<int> constant;
    std::map<Cylinder, int> table;

    static CylinderFunction constant_fn(int v) { return {0, v, {}}; }
    /// value at sigma^i x
    int eval(const LambdaGraphSystem& s, const PointPrefix& x, int i) const;
    /// positions of x needed to evaluate at sigma^i x
    int reach(int i) const { return i + window; }
    int max_value() const;
};

/// Everything a certificate file may carry; each checker picks the parts it needs.
struct Certificate {
    std::string name;
    OneSidedCode code;
    std::optional<CylinderFunction> k1, l1, k2, l2;
    std::optional<int> K1, K2;
    std::optional<int> inj_window, recode_bound;
};

struct CoeCertificate {
    OneSidedCode code;
    CylinderFunction k1, l1, k2, l2;
};

struct EcCertificate {
    OneSidedCode code;
    int K1 = 0, K2 = 0;
};

struct TwoSidedCertificate {
    OneSidedCode code;
    int l = 0;  ///< injectivity window
    int L = 0;  ///< recoding bound
};

/// Throws Error(Parse) naming the first missing part.
CoeCertificate coe_view(const Certificate& c);
EcCertificate ec_view(const Certificate& c);
TwoSidedCertificate two_sided_view(const Certificate& c);

/// The constant-K instance of the orbit equations: k = K, l = K + 1.
CoeCertificate as_coe(const EcCertificate& ec);

/// sigma^M after a code: the window grows by M and reads the shifted window.
CodeTable shift_code(const LambdaGraphSystem& src, const CodeTable& t, int d, int M);
/// sigma^M after the forward code; tails agree M positions later, so l (read as at least 1) grows by M
/// and L is raised to cover it.
TwoSidedCertificate shift_certificate(const LambdaGraphSystem& src, TwoSidedCertificate cert, int M);

/// `<word>@<i>` cylinder specs, with the vertex at level |word|.
Cylinder parse_cylinder_spec(const LambdaGraphSystem& s, const std::string& spec);
std::string format_cylinder(const Alphabet& alpha, const Cylinder& c);

Certificate parse_certificate(const std::string& text, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2,
                              const std::string& file = "<input>");
std::string write_certificate(const Certificate& c, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2);

}  // namespace lgs
